#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mclex/degeneracy.hpp"
#include "mclex/implication.hpp"
#include "mclex/matrix.hpp"

namespace mclex {

/// Canonical forms of every matrix in matr(n, m, k), sorted. Left columns
/// only matter as a set, so the enumeration runs over non-empty column sets of
/// size <= m (the empty set when m = 0) and right columns. Throws DomainError
/// for n = 0 or k = 0, ResourceLimit above `ceiling` candidate matrices.
std::vector<CanonicalMatrix> enumerate_canonical(std::size_t n, std::size_t m, std::size_t k,
                                                 std::uint64_t ceiling = 10'000'000);

/// Memoised implication verdicts keyed by the text rendering of canonical
/// source and target.
class VerdictCache {
 public:
  std::optional<bool> lookup(const Matrix& source, const Matrix& target) const;
  void store(const Matrix& source, const Matrix& target, bool holds);
  std::size_t size() const noexcept { return verdicts_.size(); }

  /// Missing file loads as empty. Throws ParseError on malformed content.
  void load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<std::pair<std::string, std::string>, bool> verdicts_;
};

struct PosetClass {
  CanonicalMatrix representative;
  std::vector<std::size_t> members;  // indices into the input list
  DegeneracyTag tag = DegeneracyTag::NonDegenerate;
};

struct PosetStats {
  std::size_t engine_queries = 0;
  std::size_t entailed = 0;
  std::size_t cached = 0;
  std::uint64_t csp_nodes = 0;
};

/// Classes ordered by representative. leq[a][b] means the class of a is
/// included in the class of b, i.e. a implies b. Hasse edges are (lower, upper).
struct Poset {
  std::vector<PosetClass> classes;
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<std::size_t, std::size_t>> hasse;
  PosetStats stats;
};

/// Pairwise implication with memoisation and two entailment rules
/// (a => b, b => c give a => c; c => a, c =/=> b give a =/=> b), quotient by
/// mutual implication, induced order and Hasse diagram. ResourceLimit from a
/// query is rethrown with the offending pair in the message.
Poset build_poset(const std::vector<CanonicalMatrix>& ms, const EngineOptions& options = {},
                  VerdictCache* cache = nullptr);

/// Covering pairs of `leq`, sorted.
std::vector<std::pair<std::size_t, std::size_t>> hasse(const std::vector<std::vector<bool>>& leq);
std::vector<std::pair<std::size_t, std::size_t>> hasse(const Poset& p);

/// Induced sub-poset on the non-degenerate classes.
Poset nondegenerate_part(const Poset& p);

struct DotOptions {
  bool nondegenerate_only = false;
};

std::string emit_dot(const Poset& p, const DotOptions& options = {});
std::string emit_json(const Poset& p);

/// Rows of the representative (after deduplication, which canonical forms
/// already have).
inline std::size_t effective_rows(const PosetClass& c) {
  return c.representative.matrix().rows();
}

}  // namespace mclex
