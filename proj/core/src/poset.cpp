#include "mclex/poset.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mclex/errors.hpp"

namespace mclex {

std::vector<CanonicalMatrix> enumerate_canonical(std::size_t n, std::size_t m, std::size_t k,
                                                 std::uint64_t ceiling) {
  if (n == 0 || k == 0) throw DomainError("matr(n, m, k) needs n > 0 and k > 0");
  // All k^n possible columns.
  std::uint64_t universe = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (universe > ceiling / k) throw ResourceLimit("column universe exceeds enumeration ceiling");
    universe *= k;
  }
  std::vector<Column> columns;
  for (std::uint64_t code = 0; code < universe; ++code) {
    Column c(n);
    std::uint64_t x = code;
    for (std::size_t i = n; i-- > 0;) {
      c[i] = static_cast<VarIndex>(x % k + 1);
      x /= k;
    }
    columns.push_back(std::move(c));
  }

  // Count candidate matrices before doing any work.
  const std::size_t max_size = std::min<std::uint64_t>(m, universe);
  std::uint64_t subsets = m == 0 ? 1 : 0;
  {
    std::uint64_t binom = 1;
    for (std::size_t s = 1; s <= max_size; ++s) {
      binom = binom * (universe - s + 1) / s;
      subsets += binom;
      if (subsets > ceiling) break;
    }
  }
  if (subsets > ceiling || subsets * universe > ceiling) {
    throw ResourceLimit("matr(" + std::to_string(n) + "," + std::to_string(m) + "," +
                        std::to_string(k) + ") exceeds enumeration ceiling " +
                        std::to_string(ceiling));
  }

  std::set<CanonicalMatrix> out;
  std::vector<Column> chosen;
  auto emit = [&] {
    for (const auto& right : columns) out.insert(canonicalize(Matrix(chosen, right)));
  };
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (!chosen.empty()) emit();
    if (chosen.size() == max_size) return;
    for (std::size_t c = from; c < columns.size(); ++c) {
      chosen.push_back(columns[c]);
      extend(c + 1);
      chosen.pop_back();
    }
  };
  if (m == 0) {
    emit();
  } else {
    extend(0);
  }
  return {out.begin(), out.end()};
}

std::optional<bool> VerdictCache::lookup(const Matrix& source, const Matrix& target) const {
  auto it = verdicts_.find({render_matrix(source), render_matrix(target)});
  if (it == verdicts_.end()) return std::nullopt;
  return it->second;
}

void VerdictCache::store(const Matrix& source, const Matrix& target, bool holds) {
  verdicts_[{render_matrix(source), render_matrix(target)}] = holds;
}

void VerdictCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  try {
    auto j = nlohmann::json::parse(in);
    for (const auto& v : j.at("verdicts")) {
      verdicts_[{v.at("source").get<std::string>(), v.at("target").get<std::string>()}] =
          v.at("holds").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verdict cache: ") + e.what(), 1, 1);
  }
}

void VerdictCache::save(const std::string& path) const {
  nlohmann::json j;
  j["version"] = 1;
  j["verdicts"] = nlohmann::json::array();
  for (const auto& [key, holds] : verdicts_) {
    j["verdicts"].push_back({{"source", key.first}, {"target", key.second}, {"holds", holds}});
  }
  std::ofstream out(path);
  out << j.dump(1) << '\n';
}

namespace {

enum class Known : std::uint8_t { Unknown, Holds, Fails };

// Tarjan's strongly connected components; component ids in reverse
// topological order of discovery.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<Known>>& rel,
                                            std::size_t& count) {
  const std::size_t n = rel.size();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  count = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v || rel[v][w] != Known::Holds) continue;
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == SIZE_MAX) visit(v);
  }
  return comp;
}

bool representative_less(const Matrix& a, const Matrix& b) {
  return std::tuple(a.rows(), a.left_count(), a.variables()) <
             std::tuple(b.rows(), b.left_count(), b.variables()) ||
         (std::tuple(a.rows(), a.left_count(), a.variables()) ==
              std::tuple(b.rows(), b.left_count(), b.variables()) &&
          a < b);
}

}  // namespace

Poset build_poset(const std::vector<CanonicalMatrix>& ms, const EngineOptions& options,
                  VerdictCache* cache) {
  const std::size_t n = ms.size();
  Poset p;
  std::vector<std::vector<Known>> rel(n, std::vector<Known>(n, Known::Unknown));
  for (std::size_t a = 0; a < n; ++a) rel[a][a] = Known::Holds;

  auto entailed = [&](std::size_t a, std::size_t b) -> Known {
    for (std::size_t c = 0; c < n; ++c) {
      if (rel[a][c] == Known::Holds && rel[c][b] == Known::Holds) return Known::Holds;
      if (rel[c][a] == Known::Holds && rel[c][b] == Known::Fails) return Known::Fails;
    }
    return Known::Unknown;
  };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (rel[a][b] != Known::Unknown) continue;
      if (Known e = entailed(a, b); e != Known::Unknown) {
        rel[a][b] = e;
        ++p.stats.entailed;
        continue;
      }
      const Matrix& src = ms[a].matrix();
      const Matrix& dst = ms[b].matrix();
      if (cache) {
        if (auto hit = cache->lookup(src, dst)) {
          rel[a][b] = *hit ? Known::Holds : Known::Fails;
          ++p.stats.cached;
          continue;
        }
      }
      bool holds;
      try {
        auto v = implies_lex(src, dst, options);
        holds = v.holds;
        p.stats.csp_nodes += v.stats.csp_nodes;
      } catch (const ResourceLimit& e) {
        throw ResourceLimit(std::string(e.what()) + " while deciding\n" + render_matrix(src) +
                            "=>\n" + render_matrix(dst));
      }
      ++p.stats.engine_queries;
      rel[a][b] = holds ? Known::Holds : Known::Fails;
      if (cache) cache->store(src, dst, holds);
    }
  }

  std::size_t count = 0;
  auto comp = strongly_connected(rel, count);
  std::vector<PosetClass> classes(count);
  for (std::size_t a = 0; a < n; ++a) {
    auto& c = classes[comp[a]];
    if (c.members.empty() ||
        representative_less(ms[a].matrix(), c.representative.matrix())) {
      c.representative = ms[a];
    }
    c.members.push_back(a);
  }
  // Deterministic class order.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return representative_less(classes[x].representative.matrix(),
                               classes[y].representative.matrix());
  });
  std::vector<std::size_t> position(count);
  for (std::size_t i = 0; i < count; ++i) position[order[i]] = i;

  p.classes.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    p.classes[i] = std::move(classes[order[i]]);
    p.classes[i].tag = degeneracy_class(p.classes[i].representative.matrix()).tag;
  }
  p.leq.assign(count, std::vector<bool>(count, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (rel[a][b] == Known::Holds) p.leq[position[comp[a]]][position[comp[b]]] = true;
    }
  }
  // Transitive closure, in case verdicts were not already transitive.
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t a = 0; a < count; ++a) {
      if (!p.leq[a][c]) continue;
      for (std::size_t b = 0; b < count; ++b) {
        if (p.leq[c][b]) p.leq[a][b] = true;
      }
    }
  }
  p.hasse = hasse(p.leq);
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq[a][b] || leq[b][a]) continue;
      bool covers = true;
      for (std::size_t c = 0; c < n && covers; ++c) {
        if (c == a || c == b) continue;
        if (leq[a][c] && !leq[c][a] && leq[c][b] && !leq[b][c]) covers = false;
      }
      if (covers) edges.emplace_back(a, b);
    }
  }
  return edges;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const Poset& p) { return hasse(p.leq); }

Poset nondegenerate_part(const Poset& p) {
  Poset out;
  out.stats = p.stats;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    if (p.classes[i].tag == DegeneracyTag::NonDegenerate) keep.push_back(i);
  }
  for (std::size_t i : keep) out.classes.push_back(p.classes[i]);
  out.leq.assign(keep.size(), std::vector<bool>(keep.size(), false));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) out.leq[a][b] = p.leq[keep[a]][keep[b]];
  }
  out.hasse = hasse(out.leq);
  return out;
}

namespace {

std::string dot_label(const Matrix& m) {
  std::string text = render_matrix(m);
  std::string out;
  for (char ch : text) {
    if (ch == '\n') {
      out += "\\l";
    } else {
      out += ch;
    }
  }
  return out;
}

}  // namespace

std::string emit_dot(const Poset& p, const DotOptions& options) {
  Poset filtered;
  const Poset* src = &p;
  if (options.nondegenerate_only) {
    filtered = nondegenerate_part(p);
    src = &filtered;
  }
  std::ostringstream out;
  out << "digraph mclex {\n";
  if (!src->classes.empty()) {
    out << "  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  }
  for (std::size_t i = 0; i < src->classes.size(); ++i) {
    const auto& c = src->classes[i];
    out << "  c" << i << " [label=\"" << dot_label(c.representative.matrix()) << "\"";
    if (c.tag != DegeneracyTag::NonDegenerate) out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& [a, b] : src->hasse) out << "  c" << a << " -> c" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string emit_json(const Poset& p) {
  nlohmann::json j;
  j["classes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    const auto& c = p.classes[i];
    const Matrix& m = c.representative.matrix();
    j["classes"].push_back({{"id", i},
                            {"tag", to_string(c.tag)},
                            {"members", c.members.size()},
                            {"representative",
                             {{"n", m.rows()}, {"k", m.variables()}, {"left", m.left()},
                              {"right", m.right()}}},
                            {"text", render_matrix(m)}});
  }
  j["leq"] = nlohmann::json::array();
  for (std::size_t a = 0; a < p.leq.size(); ++a) {
    for (std::size_t b = 0; b < p.leq.size(); ++b) {
      if (p.leq[a][b]) j["leq"].push_back({a, b});
    }
  }
  j["hasse"] = nlohmann::json::array();
  for (const auto& [a, b] : p.hasse) j["hasse"].push_back({a, b});
  j["stats"] = {{"engine_queries", p.stats.engine_queries},
                {"entailed", p.stats.entailed},
                {"cached", p.stats.cached},
                {"csp_nodes", p.stats.csp_nodes}};
  return j.dump(1) + "\n";
}

}  // namespace mclex
