#pragma once

// Brute-force oracles used only by the test suites. None of them shares code
// paths with the search routines they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "mclex/finite_models.hpp"
#include "mclex/matrix.hpp"

namespace oracle {

using mclex::Column;
using mclex::Matrix;
using mclex::VarIndex;

/// Conclusions of every (rho, f_1..f_n) whose premises all lie in `s`, by
/// enumerating all n_src^n row maps and all (k^k_src)^n interpretations.
inline std::set<Column> one_step(const Matrix& src, const std::set<Column>& s, VarIndex k,
                                 std::size_t n) {
  std::set<Column> out;
  const std::size_t ks = src.variables();
  std::vector<std::size_t> rho(n, 0);
  while (true) {
    // Odometer over interpretations: digit (i, v) in 1..k.
    std::vector<VarIndex> f(n * ks, 1);
    while (true) {
      bool ok = true;
      for (std::size_t l = 0; l < src.left_count() && ok; ++l) {
        Column c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = f[i * ks + src.entry(rho[i], l) - 1];
        ok = s.count(c) > 0;
      }
      if (ok) {
        Column y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = f[i * ks + src.right()[rho[i]] - 1];
        out.insert(y);
      }
      std::size_t d = 0;
      while (d < f.size() && f[d] == k) f[d++] = 1;
      if (d == f.size()) break;
      ++f[d];
    }
    std::size_t d = 0;
    while (d < n && rho[d] + 1 == src.rows()) rho[d++] = 0;
    if (d == n) break;
    ++rho[d];
  }
  return out;
}

inline std::set<Column> closure(const Matrix& src, const Matrix& dst) {
  std::set<Column> s(dst.left().begin(), dst.left().end());
  while (true) {
    auto next = one_step(src, s, dst.variables(), dst.rows());
    const auto before = s.size();
    s.insert(next.begin(), next.end());
    if (s.size() == before) return s;
  }
}

inline bool implies(const Matrix& src, const Matrix& dst) {
  return closure(src, dst).count(dst.right()) > 0;
}

/// Number of distinct canonical forms over all k^(n(m+1)) raw matrices.
inline std::size_t canonical_count(std::size_t n, std::size_t m, std::size_t k) {
  std::set<mclex::CanonicalMatrix> seen;
  std::vector<VarIndex> e(n * (m + 1), 1);
  while (true) {
    std::vector<std::vector<VarIndex>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i].assign(e.begin() + static_cast<long>(i * (m + 1)),
                     e.begin() + static_cast<long>((i + 1) * (m + 1)));
    }
    seen.insert(mclex::canonicalize(Matrix::from_rows(rows)));
    std::size_t d = 0;
    while (d < e.size() && e[d] == k) e[d++] = 1;
    if (d == e.size()) break;
    ++e[d];
  }
  return seen.size();
}

/// Subsets of {0,1}^n that contain the constant tuples and are closed under
/// meet, join and complement, found by testing all 2^(2^n) subsets.
inline std::vector<std::set<mclex::Tuple>> bool_subalgebras(std::size_t n) {
  const std::uint32_t points = 1u << n;
  const std::uint32_t top = points - 1;
  std::vector<std::set<mclex::Tuple>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << points); ++mask) {
    auto in = [&](std::uint32_t x) { return (mask >> x) & 1u; };
    if (!in(0) || !in(top)) continue;
    bool closed = true;
    for (std::uint32_t a = 0; a < points && closed; ++a) {
      if (!in(a)) continue;
      if (!in(top & ~a)) closed = false;
      for (std::uint32_t b = 0; b < points && closed; ++b) {
        if (in(b) && (!in(a & b) || !in(a | b))) closed = false;
      }
    }
    if (!closed) continue;
    std::set<mclex::Tuple> tuples;
    for (std::uint32_t x = 0; x < points; ++x) {
      if (!in(x)) continue;
      mclex::Tuple t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = (x >> i) & 1u;
      tuples.insert(t);
    }
    out.push_back(tuples);
  }
  return out;
}

/// Some m-ary Boolean function satisfies every row identity, found by trying
/// all 2^(2^m) functions (m <= 4).
inline bool term_exists(const Matrix& m) {
  const std::size_t arity = m.left_count();
  const std::uint64_t cells = std::uint64_t{1} << arity;
  const std::size_t k = m.variables();
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << cells); ++p) {
    bool ok = true;
    for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << k) && ok; ++sigma) {
      for (std::size_t i = 0; i < m.rows() && ok; ++i) {
        std::uint64_t input = 0;
        for (std::size_t l = 0; l < arity; ++l) {
          input |= ((sigma >> (m.entry(i, l) - 1)) & 1u) << l;
        }
        ok = ((p >> input) & 1u) == ((sigma >> (m.right()[i] - 1)) & 1u);
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Strict closedness by recursion over row interpretations.
inline bool closed(const mclex::FiniteRelation& r, const Matrix& m) {
  const std::size_t n = m.rows(), k = m.variables();
  std::vector<std::vector<mclex::Element>> f(n, std::vector<mclex::Element>(k, 0));
  auto check = [&] {
    for (std::size_t l = 0; l < m.left_count(); ++l) {
      mclex::Tuple t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = f[i][m.entry(i, l) - 1];
      if (!r.contains(t)) return true;
    }
    mclex::Tuple y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = f[i][m.right()[i] - 1];
    return r.contains(y);
  };
  auto rec = [&](auto&& self, std::size_t slot) -> bool {
    if (slot == n * k) return check();
    auto& cell = f[slot / k][slot % k];
    for (mclex::Element e = 0; e < r.carriers()[slot / k]; ++e) {
      cell = e;
      if (!self(self, slot + 1)) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

// ---- Symmetry actions and random matrices for property tests.

inline Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& perm) {
  return mclex::select_rows(m, perm);
}

inline Matrix permute_left(const Matrix& m, const std::vector<std::size_t>& perm) {
  std::vector<Column> left;
  for (auto p : perm) left.push_back(m.left(p));
  return Matrix(left, m.right());
}

inline Matrix rename(const Matrix& m, const std::vector<VarIndex>& tau) {
  std::vector<Column> left = m.left();
  for (auto& c : left) {
    for (auto& v : c) v = tau[v];
  }
  Column right = m.right();
  for (auto& v : right) v = tau[v];
  return Matrix(left, right);
}

inline Matrix duplicate_row(const Matrix& m, std::size_t i) {
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), 0);
  idx.push_back(i);
  return mclex::select_rows(m, idx);
}

inline Matrix duplicate_left(const Matrix& m, std::size_t l) {
  auto left = m.left();
  left.push_back(m.left(l));
  return Matrix(left, m.right());
}

inline std::vector<std::size_t> random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Bijection on 1..k, with tau[0] unused.
inline std::vector<VarIndex> random_renaming(std::size_t k, std::mt19937& rng) {
  std::vector<VarIndex> t(k + 1);
  std::iota(t.begin(), t.end(), VarIndex{0});
  std::shuffle(t.begin() + 1, t.end(), rng);
  return t;
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t max_rows, std::size_t max_left,
                            std::size_t max_vars, std::size_t min_left = 0) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = pick(1, max_rows);
  const std::size_t m = pick(min_left, max_left);
  const std::size_t k = pick(1, max_vars);
  std::vector<std::vector<VarIndex>> rows(n, std::vector<VarIndex>(m + 1));
  for (auto& r : rows) {
    for (auto& v : r) v = static_cast<VarIndex>(pick(1, k));
  }
  return mclex::validate(Matrix::from_rows(rows));
}

}  // namespace oracle
