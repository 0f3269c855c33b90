#include "property_suite.hpp"

#include <random>
#include <sstream>

#include "mclex/finite_models.hpp"
#include "mclex/implication.hpp"
#include "oracles.hpp"

namespace mclex::properties {

namespace {

std::string show(const Matrix& m) {
  std::string s = render_matrix(m);
  for (auto& ch : s) {
    if (ch == '\n') ch = ';';
  }
  return s;
}

class Recorder {
 public:
  explicit Recorder(std::string name) { report_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    ++report_.cases;
    if (!ok && report_.failures.size() < 5) report_.failures.push_back(what);
  }

  PropertyReport take() { return std::move(report_); }

 private:
  PropertyReport report_;
};

/// Applies a random element of the symmetry group plus an optional duplication.
Matrix scramble(const Matrix& m, std::mt19937& rng) {
  Matrix t = oracle::permute_rows(m, oracle::random_perm(m.rows(), rng));
  t = oracle::permute_left(t, oracle::random_perm(t.left_count(), rng));
  t = oracle::rename(t, oracle::random_renaming(t.variables(), rng));
  if (rng() % 2) t = oracle::duplicate_row(t, rng() % t.rows());
  if (t.left_count() > 0 && rng() % 2) t = oracle::duplicate_left(t, rng() % t.left_count());
  return t;
}

bool certified(const Matrix& a, const Matrix& b, const ImplicationVerdict& v) {
  return v.holds ? replay_proof(a, b, v.proof) : audit_closure(a, b, v.closure);
}

PropertyReport reflexivity(std::mt19937& rng) {
  Recorder r("engine reflexivity");
  for (int i = 0; i < 500; ++i) {
    const Matrix m = oracle::random_matrix(rng, 4, 4, 3);
    r.expect(implies_lex(m, m).holds, show(m));
  }
  return r.take();
}

PropertyReport transitivity(std::mt19937& rng) {
  Recorder r("engine transitivity on samples");
  std::vector<Matrix> pool{gen_named(NamedMatrix::Mal), gen_named(NamedMatrix::Maj),
                           gen_named(NamedMatrix::Ari)};
  while (pool.size() < 24) pool.push_back(oracle::random_matrix(rng, 3, 3, 2, 1));
  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> holds(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) holds[a][b] = implies_lex(pool[a], pool[b]).holds;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!holds[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!holds[b][c]) continue;
        r.expect(holds[a][c], show(pool[a]) + " => " + show(pool[b]) + " => " + show(pool[c]));
      }
    }
  }
  return r.take();
}

PropertyReport symmetry(std::mt19937& rng) {
  Recorder r("engine symmetry invariance");
  for (int i = 0; i < 500; ++i) {
    const Matrix a = oracle::random_matrix(rng, 3, 3, 3);
    const Matrix b = oracle::random_matrix(rng, 3, 3, 3);
    const bool base = implies_lex(a, b).holds;
    const Matrix sa = scramble(a, rng), sb = scramble(b, rng);
    r.expect(implies_lex(sa, sb).holds == base, show(a) + " vs " + show(b));
  }
  return r.take();
}

PropertyReport monotonicity(std::mt19937& rng) {
  Recorder r("engine premise monotonicity");
  for (int i = 0; i < 500; ++i) {
    const Matrix a = oracle::random_matrix(rng, 3, 3, 2);
    const Matrix b = oracle::random_matrix(rng, 3, 3, 3, 1);
    // Extra premise on the target: closure can only grow.
    auto left = b.left();
    Column extra(b.rows());
    for (auto& v : extra) v = static_cast<VarIndex>(1 + rng() % b.variables());
    left.push_back(extra);
    const Matrix stronger(left, b.right());
    const auto small = derive_closure(a, b);
    const auto large = derive_closure(a, stronger);
    bool subset = true;
    for (const auto& c : small.columns) subset = subset && large.contains(c);
    r.expect(subset, show(a) + " in " + show(b));
    if (implies_lex(a, b).holds) r.expect(implies_lex(a, stronger).holds, show(a) + " => " + show(b));
  }
  return r.take();
}

PropertyReport canonical_forms(std::mt19937& rng) {
  Recorder r("canonicalize idempotence and symmetry");
  for (int i = 0; i < 400; ++i) {
    const Matrix m = oracle::random_matrix(rng, 4, 4, 3);
    const CanonicalMatrix c = canonicalize(m);
    r.expect(canonicalize(c.matrix()) == c, "idempotence " + show(m));
    r.expect(canonicalize(scramble(m, rng)) == c, "symmetry " + show(m));
  }
  return r.take();
}

PropertyReport certificates(std::mt19937& rng) {
  Recorder r("certificate replay and closure audit");
  std::size_t positive = 0, negative = 0;
  for (int i = 0; i < 800; ++i) {
    const Matrix a = oracle::random_matrix(rng, 3, 3, 3);
    const Matrix b = oracle::random_matrix(rng, 3, 3, 3);
    const auto v = implies_lex(a, b);
    (v.holds ? positive : negative) += 1;
    r.expect(certified(a, b, v), show(a) + " => " + show(b));
  }
  for (auto [a, b] : std::vector<std::pair<Matrix, Matrix>>{
           {gen_named(NamedMatrix::Ari), gen_named(NamedMatrix::Maj)},
           {gen_mn(4), gen_mn(3)},
           {gen_mn(3), gen_mn(4)}}) {
    r.expect(certified(a, b, implies_lex(a, b)), show(a) + " => " + show(b));
  }
  // Both kinds of certificate must actually have been exercised.
  r.expect(positive > 10 && negative > 10, "unbalanced sample");
  return r.take();
}

PropertyReport relation_scans(std::mt19937& rng) {
  Recorder r("interp_closed counterexample replay");
  for (int i = 0; i < 1000; ++i) {
    const Matrix m = oracle::random_matrix(rng, 3, 3, 3, 1);
    std::vector<Element> carriers(m.rows());
    for (auto& c : carriers) c = 2 + rng() % 2;
    std::set<Tuple> tuples;
    std::size_t total = 1;
    for (auto c : carriers) total *= c;
    for (std::size_t code = 0; code < total; ++code) {
      if (rng() % 3 == 0) continue;
      Tuple t(carriers.size());
      std::size_t rest = code;
      for (std::size_t j = 0; j < carriers.size(); ++j) {
        t[j] = static_cast<Element>(rest % carriers[j]);
        rest /= carriers[j];
      }
      tuples.insert(t);
    }
    const FiniteRelation rel(carriers, tuples);
    const auto report = interp_closed(rel, m);
    r.expect(report.closed == oracle::closed(rel, m), "verdict " + show(m));
    if (report.counterexample) {
      r.expect(counterexample_replays(rel, m, *report.counterexample), "replay " + show(m));
    }
  }
  return r.take();
}

}  // namespace

std::vector<PropertyReport> run_property_suite(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<PropertyReport> out;
  out.push_back(reflexivity(rng));
  out.push_back(transitivity(rng));
  out.push_back(symmetry(rng));
  out.push_back(monotonicity(rng));
  out.push_back(canonical_forms(rng));
  out.push_back(certificates(rng));
  out.push_back(relation_scans(rng));
  return out;
}

}  // namespace mclex::properties
