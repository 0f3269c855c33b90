#include <algorithm>
#include <numeric>
#include <set>

#include "mclex/matrix.hpp"

namespace mclex {

namespace {

// Row permutations times variable bijections tried by the exact search.
constexpr double kExactBudget = 2.0e6;

using Flat = std::vector<VarIndex>;

Matrix from_flat(const Flat& flat, std::size_t n, std::size_t m) {
  std::vector<std::vector<VarIndex>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * (m + 1)),
                   flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * (m + 1)));
  }
  return Matrix::from_rows(rows);
}

Matrix rename_by_first_occurrence(const Matrix& m) {
  std::vector<VarIndex> rename(m.variables() + 1u, 0);
  VarIndex next = 1;
  std::vector<std::vector<VarIndex>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (auto& v : r) {
      if (rename[v] == 0) rename[v] = next++;
      v = rename[v];
    }
    rows.push_back(std::move(r));
  }
  return Matrix::from_rows(rows);
}

Matrix sort_columns_and_rows(const Matrix& m) {
  auto left = m.left();
  std::sort(left.begin(), left.end());
  Matrix sorted_cols(std::move(left), m.right());
  std::vector<std::vector<VarIndex>> rows;
  for (std::size_t i = 0; i < sorted_cols.rows(); ++i) rows.push_back(sorted_cols.row(i));
  std::sort(rows.begin(), rows.end());
  return Matrix::from_rows(rows);
}

Matrix fixpoint_form(const Matrix& m) {
  Matrix cur = rename_by_first_occurrence(m);
  for (int iter = 0; iter < 256; ++iter) {
    Matrix next = rename_by_first_occurrence(sort_columns_and_rows(cur));
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

// Lexicographically least row-major reading of the column-sorted matrix over
// all row orders and variable bijections.
Matrix exact_form(const Matrix& m) {
  const std::size_t n = m.rows();
  const std::size_t cols = m.left_count();
  const std::size_t k = m.variables();

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<VarIndex> tau(k + 1);

  Flat best;
  Flat flat(n * (cols + 1));
  std::vector<Column> left(cols, Column(n));
  do {
    std::iota(tau.begin(), tau.end(), VarIndex{0});
    do {
      for (std::size_t l = 0; l < cols; ++l) {
        for (std::size_t i = 0; i < n; ++i) left[l][i] = tau[m.entry(perm[i], l)];
      }
      std::sort(left.begin(), left.end());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < cols; ++l) flat[i * (cols + 1) + l] = left[l][i];
        flat[i * (cols + 1) + cols] = tau[m.right()[perm[i]]];
      }
      if (best.empty() || flat < best) best = flat;
    } while (std::next_permutation(tau.begin() + 1, tau.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return from_flat(best, n, cols);
}

}  // namespace

Matrix deduplicate(const Matrix& m) {
  std::vector<Column> left;
  std::set<Column> seen;
  for (const auto& c : m.left()) {
    if (seen.insert(c).second) left.push_back(c);
  }
  Matrix cols(std::move(left), m.right());

  std::vector<std::vector<VarIndex>> rows;
  std::set<std::vector<VarIndex>> seen_rows;
  for (std::size_t i = 0; i < cols.rows(); ++i) {
    auto r = cols.row(i);
    if (seen_rows.insert(r).second) rows.push_back(std::move(r));
  }
  return validate(Matrix::from_rows(rows));
}

CanonicalMatrix canonicalize(const Matrix& m) {
  Matrix d = deduplicate(m);
  const double work = factorial(d.rows()) * factorial(d.variables());
  if (work <= kExactBudget) return CanonicalMatrix(exact_form(d), true);
  return CanonicalMatrix(fixpoint_form(d), false);
}

}  // namespace mclex
