#include <random>

#include "doctest.h"
#include "mclex/degeneracy.hpp"
#include "mclex/errors.hpp"
#include "oracles.hpp"

using namespace mclex;

namespace {

const Matrix kMal = gen_named(NamedMatrix::Mal);
const Matrix kMaj = gen_named(NamedMatrix::Maj);
const Matrix kAri = gen_named(NamedMatrix::Ari);
const Matrix kCopy = Matrix::from_rows({{1, 1}});
const Matrix kSwap = Matrix::from_rows({{1, 2}});

bool all_constrained(const TruthTable& t) {
  return std::all_of(t.constrained.begin(), t.constrained.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("anti-triviality is a column scan") {
  CHECK(is_anti_trivial(kCopy));
  CHECK_FALSE(is_anti_trivial(kSwap));
  CHECK_FALSE(is_anti_trivial(kMal));
  CHECK_FALSE(is_anti_trivial(kMaj));
  for (int n = 3; n <= 6; ++n) CHECK_FALSE(is_anti_trivial(gen_mn(n)));
  CHECK(is_anti_trivial(Matrix::from_rows({{1, 1, 1}, {1, 2, 2}})));
}

TEST_CASE("boolean term witnesses") {
  const auto maj = boolean_term_witness(kMaj);
  REQUIRE(maj);
  CHECK(maj->arity == 3);
  CHECK(maj->hex() == "e8");
  CHECK(all_constrained(*maj));
  for (std::uint64_t in = 0; in < 8; ++in) {
    CHECK((*maj)(in) == (std::popcount(in) >= 2 ? 1 : 0));
  }

  const auto ari = boolean_term_witness(kAri);
  REQUIRE(ari);
  CHECK(ari->hex() == "b2");
  CHECK(all_constrained(*ari));

  const BooleanTermResult swap = solve_boolean_term(kSwap);
  CHECK_FALSE(swap.witness);
  REQUIRE(swap.conflict);
  const auto& [a, b] = *swap.conflict;
  CHECK(a.row == 0);
  CHECK(a.assignment == 0);
  CHECK(a.input == 0);
  CHECK(a.output == 0);
  CHECK(b.row == 0);
  CHECK(b.assignment == 2);
  CHECK(b.input == 0);
  CHECK(b.output == 1);
}

TEST_CASE("triviality") {
  CHECK(is_trivial(kSwap));
  CHECK_FALSE(is_trivial(kCopy));
  for (const auto& m : {kMal, kMaj, kAri}) CHECK_FALSE(is_trivial(m));
  for (int n = 3; n <= 5; ++n) CHECK_FALSE(is_trivial(gen_mn(n)));
}

TEST_CASE("degeneracy tags") {
  CHECK(degeneracy_class(kCopy).tag == DegeneracyTag::AntiTrivial);
  CHECK(degeneracy_class(kSwap).tag == DegeneracyTag::Trivial);
  CHECK(degeneracy_class(kSwap).conflict);
  const auto ari = degeneracy_class(kAri);
  CHECK(ari.tag == DegeneracyTag::NonDegenerate);
  CHECK(ari.witness);
  CHECK(to_string(DegeneracyTag::NonDegenerate) == "NonDegenerate");
  CHECK(is_degenerate(kCopy));
  CHECK_FALSE(is_degenerate(kMal));
}

TEST_CASE("term search agrees with exhaustive function search") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const Matrix m = oracle::random_matrix(rng, 4, 4, 4);
    const auto r = solve_boolean_term(m);
    CHECK(r.witness.has_value() != r.conflict.has_value());
    CHECK(r.witness.has_value() == oracle::term_exists(m));
    if (!r.witness) continue;
    // The witness must satisfy every constraint it claims to.
    for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << m.variables()); ++sigma) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint64_t in = 0;
        for (std::size_t l = 0; l < m.left_count(); ++l) {
          in |= ((sigma >> (m.entry(i, l) - 1)) & 1u) << l;
        }
        CHECK((*r.witness)(in) == ((sigma >> (m.right()[i] - 1)) & 1u));
      }
    }
  }
}
