#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mclex {

/// 1-based index of the variable x_i.
using VarIndex = std::uint16_t;

/// One column of a matrix, top to bottom.
using Column = std::vector<VarIndex>;

/// Extended matrix of variables: `n` rows, `m` left columns and one right
/// column, entries drawn from {x_1, ..., x_k}.
///
/// Construction checks the shape only; `validate` additionally re-indexes the
/// variables to a contiguous range.
class Matrix {
 public:
  Matrix() = default;

  /// Throws ShapeError when the right column is empty or a left column has a
  /// different height, VariableError when an entry is 0.
  Matrix(std::vector<Column> left, Column right);

  /// Builds a matrix from rows, each row listing its left entries followed by
  /// its right entry.
  static Matrix from_rows(const std::vector<std::vector<VarIndex>>& rows);

  std::size_t rows() const noexcept { return right_.size(); }
  std::size_t left_count() const noexcept { return left_.size(); }
  /// Largest variable index occurring in the matrix.
  VarIndex variables() const noexcept { return k_; }

  const std::vector<Column>& left() const noexcept { return left_; }
  const Column& left(std::size_t l) const { return left_.at(l); }
  const Column& right() const noexcept { return right_; }

  VarIndex entry(std::size_t row, std::size_t l) const {
    return left_[l][row];
  }
  /// Left entries of a row followed by its right entry.
  std::vector<VarIndex> row(std::size_t i) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b);

 private:
  std::vector<Column> left_;
  Column right_;
  VarIndex k_ = 0;
};

/// Raw integer rows as read from user input; last entry of each row is the
/// right entry.
using RawRows = std::vector<std::vector<long long>>;

/// Checks shape and re-indexes variables to {1, ..., k} preserving their
/// relative order. Throws ShapeError or VariableError.
Matrix validate(const RawRows& rows);
Matrix validate(const Matrix& m);

enum class NamedMatrix { Mal, Maj, Ari };

Matrix gen_named(NamedMatrix name);

/// The n-row matrix with one left column per pair i < j (lexicographic order)
/// carrying x_1 at rows i and j, the remaining slots of every row filled with
/// x_2, x_3, ... left to right, and an all-x_1 right column.
/// Throws DomainError for n < 3.
Matrix gen_mn(int n);

/// Rows idx[0], idx[1], ... of `m` (0-based, repetition allowed). Variables are
/// not re-indexed. Throws IndexError.
Matrix select_rows(const Matrix& m, const std::vector<std::size_t>& idx);

/// Text format: one row per line, space-separated integers, a `|` before the
/// right entry. Blank lines and `#` comments are skipped. The result is
/// validated. Throws ParseError.
Matrix parse_matrix(std::string_view text);

/// Parses the JSON rendering {"n", "k", "left", "right"}. Throws ParseError.
Matrix parse_matrix_json(std::string_view text);

enum class RenderFormat { Text, Json };

std::string render_matrix(const Matrix& m, RenderFormat format = RenderFormat::Text);

/// Matrix in canonical form: left columns and rows deduplicated and sorted,
/// variables named by first occurrence. Two matrices that differ by a row
/// permutation, a left-column permutation, duplicated rows or left columns, or
/// a bijective renaming of variables share the same canonical form.
class CanonicalMatrix {
 public:
  CanonicalMatrix() = default;

  const Matrix& matrix() const noexcept { return m_; }
  /// False when the matrix was too large for the exhaustive minimisation and
  /// the rename/sort fixpoint was used instead.
  bool exact() const noexcept { return exact_; }

  friend bool operator==(const CanonicalMatrix& a, const CanonicalMatrix& b) {
    return a.m_ == b.m_;
  }
  friend std::strong_ordering operator<=>(const CanonicalMatrix& a,
                                          const CanonicalMatrix& b) {
    return a.m_ <=> b.m_;
  }

 private:
  friend CanonicalMatrix canonicalize(const Matrix& m);
  CanonicalMatrix(Matrix m, bool exact) : m_(std::move(m)), exact_(exact) {}

  Matrix m_;
  bool exact_ = true;
};

CanonicalMatrix canonicalize(const Matrix& m);

/// Removes duplicated left columns (keeping first occurrences) and duplicated
/// rows, then re-indexes variables. Lex-equivalent to the input.
Matrix deduplicate(const Matrix& m);

}  // namespace mclex
