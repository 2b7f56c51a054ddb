#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wcp/metrics.hpp"
#include "wcp/model.hpp"
#include "wcp/parallel.hpp"
#include "wcp/reachability.hpp"
#include "wcp/rejection_graph.hpp"

namespace wcp {

/// Per-process 0/1 rows; 0 marks a rejected (invalid) state.
struct ValidMatrix {
  std::vector<std::vector<std::uint8_t>> rows;

  bool valid(StateRef s) const { return rows[s.process][s.index - 1] != 0; }

  /// Invalid entries form a (possibly empty) prefix of every row.
  bool prefix_property() const {
    for (const auto& row : rows) {
      const auto first_valid = std::find(row.begin(), row.end(), std::uint8_t{1});
      if (std::find(first_valid, row.end(), std::uint8_t{0}) != row.end()) return false;
    }
    return true;
  }
};

/**
 * Invalidates every state at or below the highest reachable state of its
 * process. Reachability over max-edges only touches the largest implied
 * state per process; the states before it on the same process are implied
 * too, and marking them keeps the invalid bits a prefix.
 */
inline ValidMatrix mark_valid(const FilteredComputation& fc, const ReachSet& rr, WorkerPool& pool) {
  ValidMatrix valid;
  valid.rows.resize(fc.n());
  pool.for_each_index(0, fc.n(), [&](std::size_t i) {
    const std::size_t m = fc.length(i);
    std::size_t highest = 0;
    for (std::size_t j = m; j >= 1 && highest == 0; --j) {
      if (rr.contains(fc.node(i, static_cast<Counter>(j)))) highest = j;
    }
    auto& row = valid.rows[i];
    row.assign(m, 1);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(highest), std::uint8_t{0});
  });
  return valid;
}

inline ValidMatrix mark_valid(const FilteredComputation& fc, const ReachSet& rr) {
  WorkerPool pool;
  return mark_valid(fc, rr, pool);
}

/// Largest 1-based index holding 0, or 0 if there is none. Pairwise max tree, one barrier per level.
inline std::size_t flis(std::span<const std::uint8_t> row, WorkerPool& pool) {
  if (row.empty()) throw ModelError("flis on an empty row");
  std::vector<std::size_t> level(row.size());
  pool.for_each_index(0, row.size(), [&](std::size_t k) { level[k] = row[k] == 0 ? k + 1 : 0; });
  while (level.size() > 1) {
    std::vector<std::size_t> next((level.size() + 1) / 2);
    pool.for_each_index(0, next.size(), [&](std::size_t k) {
      const std::size_t left = level[2 * k];
      next[k] = 2 * k + 1 < level.size() ? std::max(left, level[2 * k + 1]) : left;
    });
    level = std::move(next);
  }
  return level.front();
}

inline std::size_t flis(std::span<const std::uint8_t> row) {
  WorkerPool pool;
  return flis(row, pool);
}

/// cut[i] = flis(row_i) + 1; nullopt when some process has every state invalid.
inline std::optional<Cut> extract_cut(const FilteredComputation& fc, const ValidMatrix& valid,
                                      WorkerPool& pool) {
  if (!valid.prefix_property()) throw InvariantError("invalid states do not form a per-process prefix");
  Cut cut{std::vector<Counter>(fc.n(), 0)};
  for (std::size_t i = 0; i < fc.n(); ++i) {
    const std::size_t last_invalid = flis(valid.rows[i], pool);
    if (last_invalid == fc.length(i)) return std::nullopt;
    cut.indices[i] = static_cast<Counter>(last_invalid + 1);
  }
  return cut;
}

inline std::optional<Cut> extract_cut(const FilteredComputation& fc, const ValidMatrix& valid) {
  WorkerPool pool;
  return extract_cut(fc, valid, pool);
}

/// Every intermediate of one rejection-graph detector run.
struct JlsRun {
  InitialRejects rejects;
  StateMaxIncidence graph;
  ReachSet reachable;
  ValidMatrix valid;
  DetectResult result;
};

inline JlsRun jls_run(const FilteredComputation& fc, WorkerPool& pool) {
  Stopwatch clock;
  JlsRun run;
  Metrics& metrics = run.result.metrics;
  if (fc.has_empty_process()) {
    metrics.wall_nanos = clock.elapsed_nanos();
    return run;
  }
  run.rejects = build_F(fc, pool, metrics);
  run.graph = build_R(fc, pool);
  run.reachable = reach(run.graph, run.rejects, pool);
  metrics.rounds = run.reachable.levels;
  metrics.edges_relaxed = run.reachable.edges_relaxed;
  run.valid = mark_valid(fc, run.reachable, pool);
  for (const auto& row : run.valid.rows) {
    metrics.states_advanced += static_cast<std::uint64_t>(std::count(row.begin(), row.end(), 0));
  }
  run.result.cut = extract_cut(fc, run.valid, pool);
  metrics.wall_nanos = clock.elapsed_nanos();
  return run;
}

/// Rejection-graph detector: F, R, reachability, valid-marking, cut extraction.
inline DetectResult jls_detect(const FilteredComputation& fc, WorkerPool& pool) {
  return jls_run(fc, pool).result;
}

inline DetectResult jls_detect(const FilteredComputation& fc) {
  WorkerPool pool;
  return jls_detect(fc, pool);
}

}  // namespace wcp
