#include "mclex/degeneracy.hpp"

#include <algorithm>

#include "mclex/errors.hpp"

namespace mclex {

namespace {
constexpr std::size_t kMaxBits = 24;
}

std::string TruthTable::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t cells = values.size();
  const std::size_t nibbles = std::max<std::size_t>(1, (cells + 3) / 4);
  std::string out(nibbles, '0');
  for (std::size_t q = 0; q < nibbles; ++q) {
    unsigned d = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t cell = q * 4 + b;
      if (cell < cells && values[cell]) d |= 1u << b;
    }
    out[nibbles - 1 - q] = digits[d];
  }
  return out;
}

BooleanTermResult solve_boolean_term(const Matrix& m) {
  const std::size_t arity = m.left_count();
  const std::size_t k = m.variables();
  if (arity > kMaxBits || k > kMaxBits) {
    throw ResourceLimit("Boolean term search limited to 24 left columns and 24 variables");
  }
  const std::uint64_t cells = std::uint64_t{1} << arity;
  const std::uint64_t assignments = std::uint64_t{1} << k;

  TruthTable table{arity, std::vector<std::uint8_t>(cells, 0), std::vector<bool>(cells, false)};
  // Constraint that first fixed each cell, to report conflicts.
  std::vector<TermConstraint> origin(cells);

  for (std::uint64_t sigma = 0; sigma < assignments; ++sigma) {
    auto value = [sigma](VarIndex v) -> std::uint8_t { return (sigma >> (v - 1)) & 1u; };
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::uint64_t input = 0;
      for (std::size_t l = 0; l < arity; ++l) {
        input |= std::uint64_t{value(m.entry(i, l))} << l;
      }
      TermConstraint c{i, sigma, input, value(m.right()[i])};
      if (!table.constrained[input]) {
        table.constrained[input] = true;
        table.values[input] = c.output;
        origin[input] = c;
      } else if (table.values[input] != c.output) {
        return {std::nullopt, std::make_pair(origin[input], c)};
      }
    }
  }
  return {std::move(table), std::nullopt};
}

std::optional<TruthTable> boolean_term_witness(const Matrix& m) {
  return solve_boolean_term(m).witness;
}

bool is_anti_trivial(const Matrix& m) {
  const auto& left = m.left();
  return std::find(left.begin(), left.end(), m.right()) != left.end();
}

bool is_trivial(const Matrix& m) { return !boolean_term_witness(m).has_value(); }

std::string to_string(DegeneracyTag tag) {
  switch (tag) {
    case DegeneracyTag::Trivial:
      return "Trivial";
    case DegeneracyTag::AntiTrivial:
      return "AntiTrivial";
    case DegeneracyTag::NonDegenerate:
      return "NonDegenerate";
  }
  return "?";
}

DegeneracyVerdict degeneracy_class(const Matrix& m) {
  if (is_anti_trivial(m)) {
    // The projection onto a left column equal to the right column.
    std::optional<TruthTable> projection;
    const auto& left = m.left();
    const auto l = static_cast<std::size_t>(
        std::find(left.begin(), left.end(), m.right()) - left.begin());
    if (m.left_count() <= kMaxBits) {
      const std::uint64_t cells = std::uint64_t{1} << m.left_count();
      TruthTable t{m.left_count(), std::vector<std::uint8_t>(cells),
                   std::vector<bool>(cells, true)};
      for (std::uint64_t x = 0; x < cells; ++x) t.values[x] = (x >> l) & 1u;
      projection = std::move(t);
    }
    return {DegeneracyTag::AntiTrivial, std::move(projection), std::nullopt};
  }
  auto result = solve_boolean_term(m);
  if (!result.witness) return {DegeneracyTag::Trivial, std::nullopt, result.conflict};
  return {DegeneracyTag::NonDegenerate, std::move(result.witness), std::nullopt};
}

}  // namespace mclex
