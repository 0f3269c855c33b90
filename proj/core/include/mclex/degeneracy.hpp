#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mclex/matrix.hpp"

namespace mclex {

/// An m-ary Boolean function. Input vectors are indexed by the integer whose
/// bit j is the value fed to argument j (argument 0 is the least significant).
struct TruthTable {
  std::size_t arity = 0;
  std::vector<std::uint8_t> values;  // one bit per input vector
  std::vector<bool> constrained;     // cells forced by some constraint

  std::uint8_t operator()(std::uint64_t input) const { return values.at(input); }

  /// Big-endian hex of sum(values[i] << i), ceil(2^arity / 4) digits.
  std::string hex() const;
};

/// One instance of "p(sigma(row left part)) = sigma(y_row)".
struct TermConstraint {
  std::size_t row = 0;          // 0-based
  std::uint64_t assignment = 0;  // bit v-1 is sigma(x_v)
  std::uint64_t input = 0;
  std::uint8_t output = 0;
};

struct BooleanTermResult {
  std::optional<TruthTable> witness;
  std::optional<std::pair<TermConstraint, TermConstraint>> conflict;
};

/// Collects p(sigma(x_i1), ..., sigma(x_im)) = sigma(y_i) over every row i and
/// every sigma: {x_1..x_k} -> {0,1}. Either a total table satisfying all of
/// them (unconstrained cells set to 0) or the first pair of constraints that
/// disagree on one input. Throws ResourceLimit when m or k exceeds 24.
BooleanTermResult solve_boolean_term(const Matrix& m);

std::optional<TruthTable> boolean_term_witness(const Matrix& m);

/// Right column equal to some left column.
bool is_anti_trivial(const Matrix& m);

/// No Boolean term witness exists.
bool is_trivial(const Matrix& m);

enum class DegeneracyTag { Trivial, AntiTrivial, NonDegenerate };

std::string to_string(DegeneracyTag tag);

struct DegeneracyVerdict {
  DegeneracyTag tag = DegeneracyTag::NonDegenerate;
  std::optional<TruthTable> witness;
  std::optional<std::pair<TermConstraint, TermConstraint>> conflict;
};

DegeneracyVerdict degeneracy_class(const Matrix& m);

inline bool is_degenerate(const Matrix& m) {
  return degeneracy_class(m).tag != DegeneracyTag::NonDegenerate;
}

}  // namespace mclex
