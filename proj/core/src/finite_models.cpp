#include "mclex/finite_models.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <sstream>

#include "mclex/errors.hpp"

namespace mclex {

FiniteRelation::FiniteRelation(std::vector<Element> carriers, std::set<Tuple> tuples)
    : carriers_(std::move(carriers)), tuples_(std::move(tuples)) {
  if (carriers_.empty()) throw ShapeError("relation of arity 0");
  for (const auto& t : tuples_) {
    if (t.size() != carriers_.size()) throw ShapeError("tuple of wrong arity");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= carriers_[i]) {
        throw ShapeError("tuple entry " + std::to_string(t[i]) + " outside carrier " +
                         std::to_string(i + 1));
      }
    }
  }
}

namespace {

// Membership by mixed-radix index when the product is small.
class MembershipTable {
 public:
  explicit MembershipTable(const FiniteRelation& r) : r_(r) {
    std::uint64_t size = 1;
    for (Element c : r.carriers()) {
      if (size > (std::uint64_t{1} << 26) / std::max<Element>(c, 1)) {
        size = 0;
        break;
      }
      size *= c;
    }
    if (size > 0) {
      bits_.assign(size, false);
      for (const auto& t : r.tuples()) bits_[key(t)] = true;
    }
  }

  bool contains(const Tuple& t) const { return bits_.empty() ? r_.contains(t) : bits_[key(t)]; }

 private:
  std::uint64_t key(const Tuple& t) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < t.size(); ++i) k = k * r_.carriers()[i] + t[i];
    return k;
  }
  const FiniteRelation& r_;
  std::vector<bool> bits_;
};

}  // namespace

ClosednessReport interp_closed(const FiniteRelation& r, const Matrix& m, std::uint64_t scan_cap) {
  if (r.arity() != m.rows()) {
    throw ShapeError("relation arity " + std::to_string(r.arity()) + " but matrix has " +
                     std::to_string(m.rows()) + " rows");
  }
  const std::size_t n = m.rows();
  const std::size_t k = m.variables();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < k; ++v) {
      if (r.carriers()[i] == 0) return {};
      if (total > scan_cap / r.carriers()[i]) {
        throw ResourceLimit("interpretation scan exceeds cap of " + std::to_string(scan_cap));
      }
      total *= r.carriers()[i];
    }
  }

  MembershipTable member(r);
  // Odometer over (f_1(x_1), ..., f_1(x_k), f_2(x_1), ...), last digit fastest.
  std::vector<std::vector<Element>> f(n, std::vector<Element>(k, 0));
  std::vector<Tuple> left(m.left_count(), Tuple(n));
  Tuple right(n);
  while (true) {
    bool premises = true;
    for (std::size_t l = 0; l < m.left_count() && premises; ++l) {
      for (std::size_t i = 0; i < n; ++i) left[l][i] = f[i][m.entry(i, l) - 1];
      premises = member.contains(left[l]);
    }
    if (premises) {
      for (std::size_t i = 0; i < n; ++i) right[i] = f[i][m.right()[i] - 1];
      if (!member.contains(right)) {
        return {false, Counterexample{f, left, right}};
      }
    }
    std::size_t i = n;
    std::size_t v = 0;
    bool carry = true;
    while (carry && i > 0) {
      --i;
      v = k;
      while (carry && v > 0) {
        --v;
        if (++f[i][v] < r.carriers()[i]) {
          carry = false;
        } else {
          f[i][v] = 0;
        }
      }
    }
    if (carry) break;
  }
  return {};
}

bool counterexample_replays(const FiniteRelation& r, const Matrix& m, const Counterexample& c) {
  const std::size_t n = m.rows();
  if (c.interps.size() != n || c.left.size() != m.left_count() || c.right.size() != n) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (c.interps[i].size() != m.variables()) return false;
    for (Element e : c.interps[i]) {
      if (e >= r.carriers()[i]) return false;
    }
  }
  for (std::size_t l = 0; l < m.left_count(); ++l) {
    Tuple t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = c.interps[i][m.entry(i, l) - 1];
    if (t != c.left[l] || !r.contains(t)) return false;
  }
  Tuple y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = c.interps[i][m.right()[i] - 1];
  return y == c.right && !r.contains(y);
}

std::vector<FiniteRelation> enumerate_bool_relations(std::size_t n, std::size_t power) {
  if (n == 0 || power == 0) throw ShapeError("arity and power must be positive");
  const std::size_t bits = n * power;
  if (bits > 8) throw ShapeError("Boolean relation enumeration limited to n * power <= 8");
  const std::uint32_t elements = 1u << bits;
  const std::uint32_t top = elements - 1;

  using Subset = std::vector<bool>;
  auto close = [&](Subset s) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t x = 0; x < elements; ++x) {
      if (s[x]) members.push_back(x);
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      auto add = [&](std::uint32_t y) {
        if (!s[y]) {
          s[y] = true;
          members.push_back(y);
        }
      };
      const std::uint32_t x = members[a];
      add(top & ~x);
      for (std::size_t b = 0; b <= a; ++b) {
        add(x & members[b]);
        add(x | members[b]);
      }
    }
    return s;
  };

  Subset bottom(elements, false);
  bottom[0] = true;
  bottom[top] = true;
  std::set<Subset> found{close(bottom)};
  std::vector<Subset> queue(found.begin(), found.end());
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::uint32_t x = 0; x < elements; ++x) {
      if (queue[q][x]) continue;
      Subset grown = queue[q];
      grown[x] = true;
      grown = close(std::move(grown));
      if (found.insert(grown).second) queue.push_back(std::move(grown));
    }
  }

  const Element carrier = Element{1} << power;
  std::vector<FiniteRelation> out;
  for (const auto& s : found) {
    std::set<Tuple> tuples;
    for (std::uint32_t x = 0; x < elements; ++x) {
      if (!s[x]) continue;
      Tuple t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = (x >> (i * power)) & (carrier - 1);
      tuples.insert(std::move(t));
    }
    out.emplace_back(std::vector<Element>(n, carrier), std::move(tuples));
  }
  std::sort(out.begin(), out.end(), [](const FiniteRelation& a, const FiniteRelation& b) {
    if (a.tuples().size() != b.tuples().size()) return a.tuples().size() < b.tuples().size();
    return a.tuples() < b.tuples();
  });
  return out;
}

std::optional<BoolFailure> find_bool_failure(const Matrix& m, std::size_t arity_cap,
                                             std::size_t power, std::uint64_t scan_cap) {
  if (arity_cap > 3) throw ShapeError("exhaustive Boolean check supports arity <= 3");
  if (m.rows() > arity_cap) {
    throw ShapeError("matrix has " + std::to_string(m.rows()) +
                     " rows; exhaustive Boolean check unchecked above " +
                     std::to_string(arity_cap));
  }
  for (auto& r : enumerate_bool_relations(m.rows(), power)) {
    auto report = interp_closed(r, m, scan_cap);
    if (!report.closed) return BoolFailure{std::move(r), std::move(*report.counterexample)};
  }
  return std::nullopt;
}

bool bool_has_closed_relations(const Matrix& m, std::size_t arity_cap, std::size_t power,
                               std::uint64_t scan_cap) {
  return !find_bool_failure(m, arity_cap, power, scan_cap).has_value();
}

namespace {

std::vector<long long> parse_ints(std::string_view line, std::size_t line_no) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, v);
    if (ec != std::errc{} || ptr != line.data() + end || v < 0) {
      throw ParseError("expected a non-negative integer", line_no, pos + 1);
    }
    out.push_back(v);
    pos = end;
  }
  return out;
}

}  // namespace

FiniteRelation parse_relation(std::string_view text) {
  std::vector<Element> carriers;
  std::set<Tuple> tuples;
  bool header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto ints = parse_ints(line, line_no);
    if (ints.empty()) continue;
    if (!header) {
      const auto arity = static_cast<std::size_t>(ints.front());
      if (arity == 0 || ints.size() != arity + 1) {
        throw ParseError("header must be 'arity c_1 ... c_arity'", line_no, 1);
      }
      for (std::size_t i = 1; i < ints.size(); ++i) {
        carriers.push_back(static_cast<Element>(ints[i]));
      }
      header = true;
      continue;
    }
    if (ints.size() != carriers.size()) {
      throw ParseError("tuple has " + std::to_string(ints.size()) + " entries, expected " +
                           std::to_string(carriers.size()),
                       line_no, 1);
    }
    Tuple t;
    for (std::size_t i = 0; i < ints.size(); ++i) {
      if (static_cast<unsigned long long>(ints[i]) >= carriers[i]) {
        throw ParseError("entry outside carrier " + std::to_string(i + 1), line_no, 1);
      }
      t.push_back(static_cast<Element>(ints[i]));
    }
    tuples.insert(std::move(t));
  }
  if (!header) throw ParseError("missing header line", line_no == 0 ? 1 : line_no, 1);
  return FiniteRelation(std::move(carriers), std::move(tuples));
}

std::string render_relation(const FiniteRelation& r) {
  std::ostringstream out;
  out << r.arity();
  for (Element c : r.carriers()) out << ' ' << c;
  out << '\n';
  for (const auto& t : r.tuples()) {
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace mclex
