#include <random>

#include "doctest.h"
#include "mclex/errors.hpp"
#include "mclex/implication.hpp"
#include "oracles.hpp"

using namespace mclex;

namespace {

const Matrix kMal = gen_named(NamedMatrix::Mal);
const Matrix kMaj = gen_named(NamedMatrix::Maj);
const Matrix kAri = gen_named(NamedMatrix::Ari);

std::set<Column> as_set(const std::vector<Column>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("one step of Mal on Maj's left columns adds nothing") {
  const ClosureState seed = seed_state(kMaj);
  CHECK(seed.columns.size() == 3);
  CHECK(one_step(kMal, seed).empty());
  const std::set<Column> expected{{1, 1, 2}, {1, 2, 1}, {2, 1, 1}};
  CHECK(oracle::one_step(kMal, as_set(seed.columns), 2, 3) == expected);
}

TEST_CASE("identity step derives the right column") {
  const auto step = one_step(kMal, seed_state(kMal));
  CHECK(std::find(step.begin(), step.end(), kMal.right()) != step.end());
}

TEST_CASE("no premises: every expressible column in one step") {
  const Matrix free = Matrix::from_rows({{1}, {2}});
  const Matrix target = Matrix::from_rows({{1, 2, 1}, {2, 1, 2}});
  ClosureState seed = seed_state(target);
  const auto step = as_set(one_step(free, seed));
  const auto brute = oracle::one_step(free, as_set(seed.columns), 2, 2);
  std::set<Column> fresh;
  for (const auto& c : brute) {
    if (!seed.contains(c)) fresh.insert(c);
  }
  CHECK(step == fresh);
  CHECK(brute.size() == 4);
}

TEST_CASE("closures of the generated family") {
  const auto m3_in_m4 = derive_closure(gen_mn(3), gen_mn(4));
  CHECK(m3_in_m4.saturated);
  CHECK(as_set(m3_in_m4.columns) == as_set(gen_mn(4).left()));
  CHECK(m3_in_m4.columns.size() == 6);

  const auto m4_in_m3 = derive_closure(gen_mn(4), gen_mn(3));
  CHECK(m4_in_m3.contains(Column{1, 1, 1}));

  CHECK(derive_closure(kAri, kAri).contains(kAri.right()));
}

TEST_CASE("golden implications with certificates") {
  struct Case {
    Matrix source, target;
    bool holds;
  };
  const std::vector<Case> cases{
      {kAri, kMal, true},          {kAri, kMaj, true},          {gen_mn(4), gen_mn(3), true},
      {gen_mn(5), gen_mn(4), true}, {kMaj, kMal, false},         {kMal, kMaj, false},
      {gen_mn(3), gen_mn(4), false}, {gen_mn(4), gen_mn(5), false}};
  for (const auto& c : cases) {
    const auto v = implies_lex(c.source, c.target);
    CHECK(v.holds == c.holds);
    if (v.holds) {
      CHECK(replay_proof(c.source, c.target, v.proof));
    } else {
      CHECK(audit_closure(c.source, c.target, v.closure));
    }
  }
}

TEST_CASE("engine agrees with blind enumeration on small pairs") {
  const Matrix copy = Matrix::from_rows({{1, 1}});
  const Matrix swap = Matrix::from_rows({{1, 2}});
  CHECK(oracle::implies(kAri, kMal));
  CHECK_FALSE(oracle::implies(kMal, kMaj));
  CHECK_FALSE(oracle::implies(kMaj, kMal));
  CHECK(implies_lex(swap, kMal).holds);
  CHECK(implies_lex(kMal, copy).holds);
  CHECK_FALSE(implies_lex(copy, kMal).holds);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const Matrix a = oracle::random_matrix(rng, 2, 3, 2);
    const Matrix b = oracle::random_matrix(rng, 3, 3, 2);
    const auto v = implies_lex(a, b);
    CHECK(v.holds == oracle::implies(a, b));
    const auto closure = derive_closure(a, b);
    CHECK(as_set(closure.columns) == oracle::closure(a, b));
  }
}

TEST_CASE("equivalence up to duplication") {
  CHECK(equivalent_lex(kMal, kMal));
  CHECK(equivalent_lex(kMal, oracle::duplicate_row(kMal, 1)));
  CHECK(equivalent_lex(kMaj, oracle::duplicate_left(kMaj, 2)));
  CHECK_FALSE(equivalent_lex(kMal, kMaj));
}

TEST_CASE("certificates reject tampering") {
  auto v = implies_lex(kAri, kMal);
  REQUIRE(v.holds);
  REQUIRE_FALSE(v.proof.empty());
  auto broken = v.proof;
  broken.back().conclusion[0] = broken.back().conclusion[0] == 1 ? 2 : 1;
  CHECK_FALSE(replay_proof(kAri, kMal, broken));

  auto n = implies_lex(kMaj, kMal);
  REQUIRE_FALSE(n.holds);
  auto closure = n.closure;
  closure.pop_back();
  CHECK_FALSE(audit_closure(kMaj, kMal, closure));
  closure = n.closure;
  closure.push_back(kMal.right());
  CHECK_FALSE(audit_closure(kMaj, kMal, closure));
}

TEST_CASE("node budget and worker independence") {
  EngineOptions tight;
  tight.max_csp_nodes = 10;
  CHECK_THROWS_AS(implies_lex(gen_mn(5), gen_mn(4), tight), ResourceLimit);

  EngineOptions one, many;
  many.workers = 4;
  const auto a = derive_closure(gen_mn(4), gen_mn(5), one);
  const auto b = derive_closure(gen_mn(4), gen_mn(5), many);
  CHECK(a.columns == b.columns);
  CHECK(a.rounds == b.rounds);
}
