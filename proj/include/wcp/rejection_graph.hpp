#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "wcp/metrics.hpp"
#include "wcp/model.hpp"
#include "wcp/parallel.hpp"

namespace wcp {

/**
 * @brief States rejected before any rejection propagates.
 *
 * f[i] is true iff the first filtered state of process i precedes some other
 * first state. bound[i] is the highest filtered index on i preceding some
 * first state (0 if none); every state up to it can never be part of a
 * consistent cut. f[i] == (bound[i] >= 1), since anything before a first
 * state is preceded by (i,1) as well. With filtered traces bound[i] can
 * exceed 1, so reachability starts from (i, bound[i]).
 */
struct InitialRejects {
  std::vector<std::uint8_t> f;
  std::vector<Counter> bound;

  bool operator[](std::size_t i) const { return f[i] != 0; }
  bool any() const {
    for (auto b : f) if (b) return true;
    return false;
  }
};

/**
 * @brief State rejection graph in state-max incidence form.
 *
 * One row of n filtered indices per filtered state. For state (i,j), entry
 * i is j itself; entry i' != i is the largest filtered index on i' that
 * happened-before (i,j+1), or 0 if none or if (i,j) is last on its process.
 * Rejecting (i,j) rejects every state before (i,j+1), so the largest one per
 * process is the only edge that needs storing.
 */
class StateMaxIncidence {
 public:
  StateMaxIncidence() = default;
  StateMaxIncidence(std::size_t n, std::vector<std::size_t> offsets, std::vector<Counter> entries)
      : n_(n), offsets_(std::move(offsets)), entries_(std::move(entries)) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }
  /// Total stored entries; always nodes() * n().
  std::size_t storage() const noexcept { return entries_.size(); }

  std::size_t node(StateRef s) const { return offsets_[s.process] + s.index - 1; }
  std::size_t process_length(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  std::span<const Counter> row(std::size_t node_id) const {
    return std::span<const Counter>(entries_).subspan(node_id * n_, n_);
  }
  std::span<const Counter> row(StateRef s) const { return row(node(s)); }

  /// Calls visit(StateRef) for each out-neighbor of `s`; returns the edge count.
  template <class Visit>
  std::size_t for_each_neighbor(StateRef s, Visit&& visit) const {
    const auto r = row(s);
    std::size_t edges = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == s.process || r[k] == 0) continue;
      ++edges;
      visit(StateRef{k, r[k]});
    }
    return edges;
  }

  std::size_t edge_count() const {
    std::size_t edges = 0;
    for (std::size_t node_id = 0; node_id < nodes(); ++node_id) {
      const auto r = row(node_id);
      const std::size_t i = owner(node_id);
      for (std::size_t k = 0; k < n_; ++k) edges += (k != i && r[k] != 0) ? 1 : 0;
    }
    return edges;
  }

 private:
  std::size_t owner(std::size_t node_id) const {
    std::size_t i = 0;
    while (offsets_[i + 1] <= node_id) ++i;
    return i;
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Counter> entries_;
};

inline InitialRejects build_F(const FilteredComputation& fc, WorkerPool& pool, Metrics& metrics) {
  if (fc.has_empty_process()) throw ModelError("build_F requires every process to have a filtered state");
  const std::size_t n = fc.n();
  InitialRejects rejects{std::vector<std::uint8_t>(n, 0), std::vector<Counter>(n, 0)};
  pool.for_each_index(0, n, [&](std::size_t i) {
    Counter bound = 0;
    for (std::size_t j = 0; j < n; ++j) {
      // fclock(j,1)[i] >= 1 iff (i,1) -> (j,1)
      if (j != i) bound = std::max(bound, fc.fclock({j, 1})[i]);
    }
    rejects.bound[i] = bound;
    rejects.f[i] = bound >= 1 ? 1 : 0;
  });
  // every ordered pair is evaluated once in the parallel model
  metrics.comparisons += n * (n - 1);
  return rejects;
}

inline InitialRejects build_F(const FilteredComputation& fc) {
  WorkerPool pool;
  Metrics m;
  return build_F(fc, pool, m);
}

inline StateMaxIncidence build_R(const FilteredComputation& fc, WorkerPool& pool) {
  const std::size_t n = fc.n();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + fc.length(i);
  std::vector<Counter> entries(offsets[n] * n, 0);

  pool.for_each_index(0, offsets[n], [&](std::size_t node_id) {
    const StateRef s = fc.ref(node_id);
    Counter* row = entries.data() + node_id * n;
    row[s.process] = s.index;
    if (s.index == fc.length(s.process)) return;
    const auto succ = fc.fclock({s.process, s.index + 1});
    for (std::size_t k = 0; k < n; ++k) {
      if (k != s.process) row[k] = succ[k];
    }
  });
  return StateMaxIncidence(n, std::move(offsets), std::move(entries));
}

inline StateMaxIncidence build_R(const FilteredComputation& fc) {
  WorkerPool pool;
  return build_R(fc, pool);
}

inline std::vector<StateRef> neighbors(const StateMaxIncidence& graph, StateRef s) {
  std::vector<StateRef> out;
  graph.for_each_neighbor(s, [&](StateRef t) { out.push_back(t); });
  return out;
}

}  // namespace wcp
