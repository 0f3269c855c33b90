#include "mclex/implication.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

#include "mclex/errors.hpp"

namespace mclex {

bool ClosureState::contains(const Column& c) const {
  return std::find(columns.begin(), columns.end(), c) != columns.end();
}

namespace {

// Columns as base-`universe` integers.
class Packer {
 public:
  Packer(VarIndex universe, std::size_t height) : universe_(universe) {
    std::uint64_t limit = 1;
    for (std::size_t i = 0; i < height; ++i) {
      if (limit > std::numeric_limits<std::uint64_t>::max() / universe) {
        throw ResourceLimit("column universe exceeds 2^64 columns");
      }
      limit *= universe;
    }
  }

  std::uint64_t pack(const Column& c) const {
    std::uint64_t key = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) key = key * universe_ + (*it - 1u);
    return key;
  }

 private:
  std::uint64_t universe_;
};

enum class Mode { Full, SemiNaive };

// Immutable view of the closure during one round, indexed for the
// column-by-column membership test.
struct Snapshot {
  std::size_t height = 0;
  VarIndex universe = 0;
  std::size_t words = 0;
  std::vector<Column> members;
  // Bitset over members with entry `value` at row `row`:
  // index[((row * universe) + value - 1) * words + w].
  std::vector<std::uint64_t> index;
  std::vector<std::uint64_t> old_mask;
  std::vector<std::uint64_t> delta_mask;
  std::vector<std::uint64_t> all_mask;
  bool has_old = false;
  Packer packer;
  std::unordered_set<std::uint64_t> packed;

  Snapshot(const std::vector<Column>& cols, std::size_t old_end, VarIndex k, std::size_t n)
      : height(n), universe(k), members(cols), packer(k, n) {
    words = std::max<std::size_t>(1, (members.size() + 63) / 64);
    index.assign(height * universe * words, 0);
    old_mask.assign(words, 0);
    delta_mask.assign(words, 0);
    all_mask.assign(words, 0);
    for (std::size_t s = 0; s < members.size(); ++s) {
      const std::uint64_t bit = std::uint64_t{1} << (s % 64);
      const std::size_t w = s / 64;
      for (std::size_t i = 0; i < height; ++i) {
        index[((i * universe) + members[s][i] - 1) * words + w] |= bit;
      }
      (s < old_end ? old_mask : delta_mask)[w] |= bit;
      all_mask[w] |= bit;
      packed.insert(packer.pack(members[s]));
    }
    has_old = old_end > 0;
  }

  const std::uint64_t* bits(std::size_t row, VarIndex value) const {
    return &index[((row * universe) + value - 1) * words];
  }
};

struct Found {
  Column column;
  DerivationStep step;
};

class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t cap) : cap_(cap) {}

  void charge(std::uint64_t nodes, std::uint64_t backtracks) {
    const auto total = used_.fetch_add(nodes) + nodes;
    backtracks_.fetch_add(backtracks);
    if (total > cap_) {
      throw ResourceLimit("CSP node limit of " + std::to_string(cap_) + " exceeded");
    }
  }
  std::uint64_t used() const { return used_.load(); }
  std::uint64_t backtracks() const { return backtracks_.load(); }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<std::uint64_t> backtracks_{0};
};

// Backtracking search over the interpretations f_i(x_v) for one fixed row
// selection rho. CSP variable (i, v) has id i * k_source + v - 1 and domain
// 1..universe; left column l constrains the vector (f_i(M[rho(i), l]))_i to
// lie in the allowed part of the snapshot.
class RhoSearch {
 public:
  RhoSearch(const Matrix& source, const Snapshot& snap, std::vector<std::size_t> rho,
            NodeBudget& budget)
      : m_(source), snap_(snap), rho_(std::move(rho)), budget_(budget) {
    n_ = snap_.height;
    ks_ = m_.variables();
    const std::size_t nvars = n_ * ks_;
    value_.assign(nvars, 0);
    touches_.assign(nvars, {});
    constrained_.assign(nvars, false);

    const std::size_t cols = m_.left_count();
    entries_.assign(cols, std::vector<std::size_t>(n_));
    for (std::size_t l = 0; l < cols; ++l) {
      for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t id = var(i, m_.entry(rho_[i], l));
        entries_[l][i] = id;
        constrained_[id] = true;
        auto& t = touches_[id];
        if (t.empty() || t.back() != l) t.push_back(l);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t id = var(i, m_.right()[rho_[i]]);
      if (constrained_[id]) {
        order_a_.push_back(id);
      } else {
        free_rows_.push_back(i);
      }
    }
    std::vector<bool> placed(nvars, false);
    for (auto id : order_a_) placed[id] = true;
    for (std::size_t l = 0; l < cols; ++l) {
      for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t id = entries_[l][i];
        if (!placed[id]) {
          placed[id] = true;
          order_b_.push_back(id);
        }
      }
    }
    masks_.assign(cols, nullptr);
    acc_.assign(snap_.words, 0);
  }

  // Conclusions not yet known, with one derivation each.
  std::vector<Found> run(Mode mode, bool first_round) {
    const std::size_t cols = m_.left_count();
    if (cols == 0) {
      if (mode == Mode::Full || first_round) search_a(0);
    } else if (mode == Mode::Full) {
      std::fill(masks_.begin(), masks_.end(), snap_.all_mask.data());
      search_a(0);
    } else {
      for (std::size_t star = 0; star < cols; ++star) {
        if (star > 0 && !snap_.has_old) break;
        for (std::size_t l = 0; l < cols; ++l) {
          masks_[l] = l < star    ? snap_.old_mask.data()
                      : l == star ? snap_.delta_mask.data()
                                  : snap_.all_mask.data();
        }
        search_a(0);
      }
    }
    flush();
    return std::move(found_);
  }

 private:
  std::size_t var(std::size_t row, VarIndex v) const { return row * ks_ + v - 1; }

  // Some allowed member agrees with every assigned entry of column l.
  bool supported(std::size_t l) {
    const std::uint64_t* mask = masks_[l];
    std::copy(mask, mask + snap_.words, acc_.begin());
    for (std::size_t i = 0; i < n_; ++i) {
      const VarIndex val = value_[entries_[l][i]];
      if (val == 0) continue;
      const std::uint64_t* b = snap_.bits(i, val);
      for (std::size_t w = 0; w < snap_.words; ++w) acc_[w] &= b[w];
    }
    return std::any_of(acc_.begin(), acc_.end(), [](std::uint64_t x) { return x != 0; });
  }

  bool consistent(std::size_t id) {
    for (std::size_t l : touches_[id]) {
      if (!supported(l)) return false;
    }
    return true;
  }

  void tick() {
    if (++nodes_ >= 4096) flush();
  }
  void flush() {
    budget_.charge(nodes_, backtracks_);
    nodes_ = 0;
    backtracks_ = 0;
  }

  void search_a(std::size_t depth) {
    if (depth == order_a_.size()) {
      leaf();
      return;
    }
    const std::size_t id = order_a_[depth];
    for (VarIndex v = 1; v <= snap_.universe; ++v) {
      tick();
      value_[id] = v;
      if (consistent(id)) {
        search_a(depth + 1);
      } else {
        ++backtracks_;
      }
    }
    value_[id] = 0;
  }

  bool search_b(std::size_t depth) {
    if (depth == order_b_.size()) return true;
    const std::size_t id = order_b_[depth];
    for (VarIndex v = 1; v <= snap_.universe; ++v) {
      tick();
      value_[id] = v;
      if (consistent(id) && search_b(depth + 1)) return true;
      ++backtracks_;
    }
    value_[id] = 0;
    return false;
  }

  void leaf() {
    Column base(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t id = var(i, m_.right()[rho_[i]]);
      base[i] = value_[id];
    }
    // Every combination of values on rows whose conclusion variable is free.
    std::vector<Column> fresh;
    Column c = base;
    std::vector<VarIndex> digits(free_rows_.size(), 1);
    while (true) {
      for (std::size_t f = 0; f < free_rows_.size(); ++f) c[free_rows_[f]] = digits[f];
      const auto key = snap_.packer.pack(c);
      if (!snap_.packed.count(key) && !local_.count(key)) fresh.push_back(c);
      std::size_t f = 0;
      while (f < digits.size() && digits[f] == snap_.universe) digits[f++] = 1;
      if (f == digits.size()) break;
      ++digits[f];
    }
    if (fresh.empty()) return;

    std::vector<VarIndex> saved = value_;
    const bool ok = search_b(0);
    if (ok) {
      for (const auto& col : fresh) {
        local_.insert(snap_.packer.pack(col));
        found_.push_back({col, make_step(col)});
      }
    }
    value_ = std::move(saved);
  }

  DerivationStep make_step(const Column& conclusion) const {
    DerivationStep s;
    s.rho = rho_;
    s.interps.assign(n_, std::vector<VarIndex>(ks_, 1));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t v = 0; v < ks_; ++v) {
        if (value_[i * ks_ + v] != 0) s.interps[i][v] = value_[i * ks_ + v];
      }
    }
    for (std::size_t i : free_rows_) {
      s.interps[i][m_.right()[rho_[i]] - 1] = conclusion[i];
    }
    for (std::size_t l = 0; l < m_.left_count(); ++l) {
      Column p(n_);
      for (std::size_t i = 0; i < n_; ++i) p[i] = s.interps[i][m_.entry(rho_[i], l) - 1];
      s.premises.push_back(std::move(p));
    }
    s.conclusion = conclusion;
    return s;
  }

  const Matrix& m_;
  const Snapshot& snap_;
  std::vector<std::size_t> rho_;
  NodeBudget& budget_;
  std::size_t n_ = 0;
  std::size_t ks_ = 0;
  std::vector<VarIndex> value_;
  std::vector<std::vector<std::size_t>> touches_;
  std::vector<bool> constrained_;
  std::vector<std::vector<std::size_t>> entries_;
  std::vector<std::size_t> order_a_;
  std::vector<std::size_t> order_b_;
  std::vector<std::size_t> free_rows_;
  std::vector<const std::uint64_t*> masks_;
  std::vector<std::uint64_t> acc_;
  std::unordered_set<std::uint64_t> local_;
  std::vector<Found> found_;
  std::uint64_t nodes_ = 0;
  std::uint64_t backtracks_ = 0;
};

std::vector<std::size_t> decode_rho(std::uint64_t index, std::size_t source_rows,
                                    std::size_t height) {
  std::vector<std::size_t> rho(height);
  for (std::size_t i = height; i-- > 0;) {
    rho[i] = static_cast<std::size_t>(index % source_rows);
    index /= source_rows;
  }
  return rho;
}

// One round: every rho against the same snapshot, merged in rho order.
std::vector<Found> run_round(const Matrix& source, const Snapshot& snap, Mode mode,
                             bool first_round, NodeBudget& budget, unsigned workers) {
  const std::size_t height = snap.height;
  std::uint64_t tasks = 1;
  for (std::size_t i = 0; i < height; ++i) {
    if (tasks > budget.cap() / source.rows()) {
      throw ResourceLimit("number of row selections exceeds the CSP node limit");
    }
    tasks *= source.rows();
  }
  budget.charge(tasks, 0);

  std::vector<std::vector<Found>> results(tasks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    while (!abort.load()) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        RhoSearch search(source, snap, decode_rho(t, source.rows(), height), budget);
        results[t] = search.run(mode, first_round);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        abort = true;
        return;
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), tasks));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<Found> merged;
  std::unordered_set<std::uint64_t> seen;
  for (auto& r : results) {
    for (auto& f : r) {
      if (seen.insert(snap.packer.pack(f.column)).second) merged.push_back(std::move(f));
    }
  }
  return merged;
}

void check_shapes(const Matrix& source, const ClosureState& state) {
  if (source.rows() == 0 || state.height == 0 || state.universe == 0) {
    throw ShapeError("empty matrix in implication query");
  }
}

}  // namespace

ClosureState seed_state(const Matrix& target) {
  ClosureState s;
  s.universe = target.variables();
  s.height = target.rows();
  std::set<Column> seen;
  for (const auto& c : target.left()) {
    if (seen.insert(c).second) s.columns.push_back(c);
  }
  s.seed_count = s.columns.size();
  s.frontier = s.columns;
  return s;
}

std::vector<Column> one_step(const Matrix& source, const ClosureState& state,
                             const EngineOptions& options, EngineStats* stats) {
  check_shapes(source, state);
  const auto start = std::chrono::steady_clock::now();
  NodeBudget budget(options.max_csp_nodes);
  Snapshot snap(state.columns, state.columns.size(), state.universe, state.height);
  auto found = run_round(source, snap, Mode::Full, true, budget, options.workers);
  std::vector<Column> out;
  for (auto& f : found) out.push_back(std::move(f.column));
  if (stats) {
    stats->rounds += 1;
    stats->csp_nodes += budget.used();
    stats->backtracks += budget.backtracks();
    stats->wall_ms += std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

ClosureState derive_closure(const Matrix& source, const Matrix& target,
                            const EngineOptions& options, EngineStats* stats,
                            const std::optional<Column>& stop_at) {
  const auto start = std::chrono::steady_clock::now();
  ClosureState state = seed_state(target);
  check_shapes(source, state);
  NodeBudget budget(options.max_csp_nodes);

  auto finish = [&] {
    if (stats) {
      stats->rounds += state.rounds;
      stats->csp_nodes += budget.used();
      stats->backtracks += budget.backtracks();
      stats->wall_ms += std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start).count();
    }
  };

  if (stop_at && state.contains(*stop_at)) {
    finish();
    return state;
  }
  std::size_t old_end = 0;
  while (true) {
    Snapshot snap(state.columns, old_end, state.universe, state.height);
    auto found = run_round(source, snap, Mode::SemiNaive, state.rounds == 0, budget,
                           options.workers);
    ++state.rounds;
    old_end = state.columns.size();
    state.frontier.clear();
    bool hit = false;
    for (auto& f : found) {
      if (stop_at && f.column == *stop_at) hit = true;
      state.columns.push_back(f.column);
      state.frontier.push_back(f.column);
      state.trace.emplace(std::move(f.column), std::move(f.step));
    }
    if (found.empty()) {
      state.saturated = true;
      break;
    }
    if (hit) break;
  }
  finish();
  return state;
}

std::vector<DerivationStep> extract_proof(const ClosureState& state, const Column& goal) {
  std::vector<DerivationStep> proof;
  std::set<Column> done;
  // Iterative post-order over the derivation DAG.
  std::vector<std::pair<Column, bool>> stack{{goal, false}};
  while (!stack.empty()) {
    auto [col, expanded] = stack.back();
    stack.pop_back();
    if (done.count(col)) continue;
    auto it = state.trace.find(col);
    if (it == state.trace.end()) {
      done.insert(col);
      continue;
    }
    if (expanded) {
      done.insert(col);
      proof.push_back(it->second);
      continue;
    }
    stack.push_back({col, true});
    for (auto p = it->second.premises.rbegin(); p != it->second.premises.rend(); ++p) {
      if (!done.count(*p)) stack.push_back({*p, false});
    }
  }
  return proof;
}

ImplicationVerdict implies_lex(const Matrix& source, const Matrix& target,
                               const EngineOptions& options) {
  ImplicationVerdict v;
  ClosureState state = derive_closure(source, target, options, &v.stats, target.right());
  v.holds = state.contains(target.right());
  if (v.holds) {
    v.proof = extract_proof(state, target.right());
  } else {
    v.closure = state.columns;
  }
  return v;
}

bool equivalent_lex(const Matrix& a, const Matrix& b, const EngineOptions& options) {
  return implies_lex(a, b, options).holds && implies_lex(b, a, options).holds;
}

bool step_is_valid(const Matrix& source, const DerivationStep& step, VarIndex universe) {
  const std::size_t n = step.conclusion.size();
  if (n == 0 || step.rho.size() != n || step.interps.size() != n) return false;
  if (step.premises.size() != source.left_count()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (step.rho[i] >= source.rows()) return false;
    const auto& f = step.interps[i];
    if (f.size() != source.variables()) return false;
    for (VarIndex x : f) {
      if (x < 1 || x > universe) return false;
    }
    if (step.conclusion[i] != f[source.right()[step.rho[i]] - 1]) return false;
    for (std::size_t l = 0; l < source.left_count(); ++l) {
      if (step.premises[l].size() != n) return false;
      if (step.premises[l][i] != f[source.entry(step.rho[i], l) - 1]) return false;
    }
  }
  return true;
}

bool replay_proof(const Matrix& source, const Matrix& target,
                  const std::vector<DerivationStep>& proof) {
  std::set<Column> known(target.left().begin(), target.left().end());
  if (proof.empty()) return known.count(target.right()) > 0;
  for (const auto& step : proof) {
    if (step.conclusion.size() != target.rows()) return false;
    if (!step_is_valid(source, step, target.variables())) return false;
    for (const auto& p : step.premises) {
      if (!known.count(p)) return false;
    }
    known.insert(step.conclusion);
  }
  return proof.back().conclusion == target.right();
}

bool audit_closure(const Matrix& source, const Matrix& target,
                   const std::vector<Column>& closure, const EngineOptions& options) {
  ClosureState s;
  s.universe = target.variables();
  s.height = target.rows();
  for (const auto& c : closure) {
    if (c.size() != s.height) return false;
    for (VarIndex x : c) {
      if (x < 1 || x > s.universe) return false;
    }
  }
  s.columns = closure;
  for (const auto& c : target.left()) {
    if (!s.contains(c)) return false;
  }
  if (s.contains(target.right())) return false;
  return one_step(source, s, options).empty();
}

}  // namespace mclex
