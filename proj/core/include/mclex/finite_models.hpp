#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mclex/matrix.hpp"

namespace mclex {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// R subset of X_1 x ... x X_n with X_i = {0, ..., carriers[i] - 1}.
class FiniteRelation {
 public:
  /// Throws ShapeError when a tuple has the wrong arity or leaves its carrier.
  FiniteRelation(std::vector<Element> carriers, std::set<Tuple> tuples);

  std::size_t arity() const noexcept { return carriers_.size(); }
  const std::vector<Element>& carriers() const noexcept { return carriers_; }
  const std::set<Tuple>& tuples() const noexcept { return tuples_; }
  bool contains(const Tuple& t) const { return tuples_.count(t) > 0; }

  friend bool operator==(const FiniteRelation&, const FiniteRelation&) = default;

 private:
  std::vector<Element> carriers_;
  std::set<Tuple> tuples_;
};

struct Counterexample {
  /// interps[i][v - 1] = f_i(x_v) in carrier i.
  std::vector<std::vector<Element>> interps;
  std::vector<Tuple> left;  // interpreted left columns, all in R
  Tuple right;              // interpreted right column, not in R
};

struct ClosednessReport {
  bool closed = true;
  std::optional<Counterexample> counterexample;
};

/// Scans every row-wise interpretation (f_i: {x_1..x_k} -> X_i) in
/// lexicographic order and reports the first one whose left columns lie in R
/// but whose right column does not. Throws ShapeError on arity mismatch and
/// ResourceLimit when prod |X_i|^k exceeds `scan_cap`.
ClosednessReport interp_closed(const FiniteRelation& r, const Matrix& m,
                               std::uint64_t scan_cap = 50'000'000);

/// Replays a counterexample independently of the scan.
bool counterexample_replays(const FiniteRelation& r, const Matrix& m, const Counterexample& c);

/// Subuniverses of the n-th power of the Boolean algebra 2^power: carriers of
/// size 2^power, tuples closed under coordinatewise meet, join and complement
/// (and containing the bottom and top tuples). Sorted by tuple set. Throws
/// ShapeError when n * power > 8.
std::vector<FiniteRelation> enumerate_bool_relations(std::size_t n, std::size_t power = 1);

struct BoolFailure {
  FiniteRelation relation;
  Counterexample counterexample;
};

/// First compatible relation over powers of the two-element Boolean algebra
/// that is not closed under the matrix. Throws ShapeError when the matrix has
/// more than `arity_cap` rows or `arity_cap` > 3.
std::optional<BoolFailure> find_bool_failure(const Matrix& m, std::size_t arity_cap = 3,
                                             std::size_t power = 2,
                                             std::uint64_t scan_cap = 50'000'000);

/// Every compatible relation of arity n over (2^power)^n is closed under M.
bool bool_has_closed_relations(const Matrix& m, std::size_t arity_cap = 3,
                               std::size_t power = 2,
                               std::uint64_t scan_cap = 50'000'000);

/// First line "arity c_1 ... c_n", then one whitespace-separated tuple per line.
/// Throws ParseError or ShapeError.
FiniteRelation parse_relation(std::string_view text);
std::string render_relation(const FiniteRelation& r);

}  // namespace mclex
