#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "mclex/matrix.hpp"

namespace mclex {

/// True iff some selection of two rows (i <= j, repetition allowed) is not
/// anti-trivial; equivalent to the source implying the Mal'tsev matrix.
bool implies_mal_lex(const Matrix& m);

/// First pair of rows (0-based, i <= j) whose selection is not anti-trivial.
std::optional<std::pair<std::size_t, std::size_t>> non_anti_trivial_pair(const Matrix& m);

enum class TwoRowClass { Trivial, AntiTrivial, MalEquivalent };

std::string to_string(TwoRowClass c);

/// Throws ShapeError unless the matrix has exactly two rows.
TwoRowClass two_row_class(const Matrix& m);

enum class MalOrMn { MalSide, MnSide };

std::string to_string(MalOrMn side);

/// For n >= 3 rows: MalSide when the matrix implies Mal, MnSide when M_n implies
/// it. Throws ShapeError for fewer than three rows.
MalOrMn mal_or_mn_alternative(const Matrix& m);

enum class RegularTag { Trivial, AntiTrivial, ImpliesMalReg, ImpliedByMajReg };

std::string to_string(RegularTag tag);

struct RegularClassification {
  RegularTag tag = RegularTag::Trivial;
  /// ImpliesMalReg with n >= 3: rows of a two-row selection that is not anti-trivial.
  std::optional<std::pair<std::size_t, std::size_t>> witness_rows;
  /// ImpliedByMajReg: number of row pairs checked, all anti-trivial.
  std::size_t pairs_checked = 0;
};

/// Regular-context position relative to Mal and Maj, derived from the
/// degeneracy class, the two-row collapse, and the Mal/M_n alternative.
RegularClassification classify_regular(const Matrix& m);

/// Whether Ari implies the matrix in the regular context: exactly the
/// non-trivial matrices.
bool ari_implies_reg(const Matrix& m);

}  // namespace mclex
