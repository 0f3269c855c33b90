#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mclex/matrix.hpp"

namespace mclex {

/// One application of the source matrix M inside the target's column space.
///
/// Target row i reads source row `rho[i]` through its own interpretation
/// `interps[i]`, where `interps[i][v - 1]` is the image of x_v. Then
/// premises[l][i] = f_i(M[rho[i], l]) and conclusion[i] = f_i(M[rho[i], right]).
struct DerivationStep {
  std::vector<std::size_t> rho;                // 0-based source rows
  std::vector<std::vector<VarIndex>> interps;  // per target row, indexed by v - 1
  std::vector<Column> premises;
  Column conclusion;
};

/// Saturated (or partially saturated) set of columns derivable from the
/// target's left columns.
struct ClosureState {
  VarIndex universe = 0;  // k of the target
  std::size_t height = 0; // rows of the target
  std::vector<Column> columns;  // seed first, then in derivation order
  std::size_t seed_count = 0;
  std::map<Column, DerivationStep> trace;  // non-seed members only
  std::vector<Column> frontier;  // added in the last completed round
  std::size_t rounds = 0;
  bool saturated = false;

  bool contains(const Column& c) const;
};

struct EngineOptions {
  /// Cap on CSP nodes (variable assignments tried) per query.
  std::uint64_t max_csp_nodes = 100'000'000;
  /// Worker threads used within one saturation round; results do not depend on it.
  unsigned workers = 1;
};

struct EngineStats {
  std::size_t rounds = 0;
  std::uint64_t csp_nodes = 0;
  std::uint64_t backtracks = 0;
  double wall_ms = 0;
};

/// All conclusions of derivation steps whose premises lie in `state.columns`,
/// minus `state.columns`, in deterministic order. Throws ResourceLimit.
std::vector<Column> one_step(const Matrix& source, const ClosureState& state,
                             const EngineOptions& options = {},
                             EngineStats* stats = nullptr);

/// The closure state seeded with the target's distinct left columns.
ClosureState seed_state(const Matrix& target);

/// Least fixpoint of one_step containing the left columns of `target`.
/// With `stop_at`, stops after the round that derives that column.
/// Throws ResourceLimit.
ClosureState derive_closure(const Matrix& source, const Matrix& target,
                            const EngineOptions& options = {},
                            EngineStats* stats = nullptr,
                            const std::optional<Column>& stop_at = std::nullopt);

struct ImplicationVerdict {
  bool holds = false;
  /// Derivation of the target's right column, premises before conclusions.
  /// Empty when the right column is already a left column of the target.
  std::vector<DerivationStep> proof;
  /// Saturated closure excluding the right column, when the implication fails.
  std::vector<Column> closure;
  EngineStats stats;
};

/// Decides whether every category with source-closed relations has
/// target-closed relations. Throws ResourceLimit.
ImplicationVerdict implies_lex(const Matrix& source, const Matrix& target,
                               const EngineOptions& options = {});

bool equivalent_lex(const Matrix& a, const Matrix& b, const EngineOptions& options = {});

/// Steps needed to derive `goal` from the seed of `state`, in derivation order.
std::vector<DerivationStep> extract_proof(const ClosureState& state, const Column& goal);

/// Checks a single step against the source matrix (shapes and equations only).
bool step_is_valid(const Matrix& source, const DerivationStep& step, VarIndex universe);

/// Replays a proof: every step valid, premises among the target's left columns
/// or earlier conclusions, last conclusion equal to the target's right column.
bool replay_proof(const Matrix& source, const Matrix& target,
                  const std::vector<DerivationStep>& proof);

/// Checks a negative certificate: contains the target's left columns, misses
/// its right column, and one_step adds nothing.
bool audit_closure(const Matrix& source, const Matrix& target,
                   const std::vector<Column>& closure, const EngineOptions& options = {});

}  // namespace mclex
