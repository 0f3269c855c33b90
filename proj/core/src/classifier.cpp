#include "mclex/classifier.hpp"

#include "mclex/degeneracy.hpp"
#include "mclex/errors.hpp"

namespace mclex {

std::optional<std::pair<std::size_t, std::size_t>> non_anti_trivial_pair(const Matrix& m) {
  // A pair (i, i) is anti-trivial iff row i alone is, which any pair (i, j)
  // already requires; scanning it anyway keeps the criterion literal.
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.rows(); ++j) {
      if (!is_anti_trivial(select_rows(m, {i, j}))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

bool implies_mal_lex(const Matrix& m) { return non_anti_trivial_pair(m).has_value(); }

std::string to_string(TwoRowClass c) {
  switch (c) {
    case TwoRowClass::Trivial:
      return "Trivial";
    case TwoRowClass::AntiTrivial:
      return "AntiTrivial";
    case TwoRowClass::MalEquivalent:
      return "MalEquivalent";
  }
  return "?";
}

TwoRowClass two_row_class(const Matrix& m) {
  if (m.rows() != 2) {
    throw ShapeError("two_row_class needs 2 rows, got " + std::to_string(m.rows()));
  }
  switch (degeneracy_class(m).tag) {
    case DegeneracyTag::Trivial:
      return TwoRowClass::Trivial;
    case DegeneracyTag::AntiTrivial:
      return TwoRowClass::AntiTrivial;
    case DegeneracyTag::NonDegenerate:
      break;
  }
  return TwoRowClass::MalEquivalent;
}

std::string to_string(MalOrMn side) {
  return side == MalOrMn::MalSide ? "MalSide" : "MnSide";
}

MalOrMn mal_or_mn_alternative(const Matrix& m) {
  if (m.rows() < 3) {
    throw ShapeError("the Mal/M_n alternative needs at least 3 rows, got " +
                     std::to_string(m.rows()));
  }
  return implies_mal_lex(m) ? MalOrMn::MalSide : MalOrMn::MnSide;
}

std::string to_string(RegularTag tag) {
  switch (tag) {
    case RegularTag::Trivial:
      return "Trivial";
    case RegularTag::AntiTrivial:
      return "AntiTrivial";
    case RegularTag::ImpliesMalReg:
      return "ImpliesMalReg";
    case RegularTag::ImpliedByMajReg:
      return "ImpliedByMajReg";
  }
  return "?";
}

RegularClassification classify_regular(const Matrix& m) {
  RegularClassification out;
  switch (degeneracy_class(m).tag) {
    case DegeneracyTag::Trivial:
      out.tag = RegularTag::Trivial;
      return out;
    case DegeneracyTag::AntiTrivial:
      out.tag = RegularTag::AntiTrivial;
      return out;
    case DegeneracyTag::NonDegenerate:
      break;
  }
  if (m.rows() <= 2) {
    out.tag = RegularTag::ImpliesMalReg;
    out.witness_rows = non_anti_trivial_pair(m);
    return out;
  }
  out.witness_rows = non_anti_trivial_pair(m);
  if (out.witness_rows) {
    out.tag = RegularTag::ImpliesMalReg;
  } else {
    out.tag = RegularTag::ImpliedByMajReg;
    out.pairs_checked = m.rows() * (m.rows() + 1) / 2;
  }
  return out;
}

bool ari_implies_reg(const Matrix& m) { return !is_trivial(m); }

}  // namespace mclex
