#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "wcp/metrics.hpp"
#include "wcp/model.hpp"
#include "wcp/parallel.hpp"

namespace wcp {

enum class Color : std::uint8_t { Green, Red };

/// The working cut of the round-synchronous detector.
struct Frontier {
  std::vector<Counter> current;
  std::vector<Color> color;

  bool any_red() const {
    return std::find(color.begin(), color.end(), Color::Red) != color.end();
  }
  Cut cut() const { return Cut{current}; }

  friend bool operator==(const Frontier&, const Frontier&) = default;
};

namespace detail {

/// Is state (i, current[i]) before any of the states (j, current[j]) for j in `targets`?
template <class Targets>
bool points_into(const FilteredComputation& fc, const std::vector<Counter>& current, std::size_t i,
                 const Targets& targets, std::uint64_t& comparisons) {
  const StateRef s{i, current[i]};
  for (std::size_t j : targets) {
    if (j == i) continue;
    ++comparisons;
    if (fc.happened_before(s, {j, current[j]})) return true;
  }
  return false;
}

struct AllProcesses {
  std::size_t n;
  struct iterator {
    std::size_t v;
    std::size_t operator*() const { return v; }
    iterator& operator++() { ++v; return *this; }
    bool operator!=(const iterator& o) const { return v != o.v; }
  };
  iterator begin() const { return {0}; }
  iterator end() const { return {n}; }
};

inline std::uint64_t sum(const std::vector<std::uint64_t>& v) {
  std::uint64_t total = 0;
  for (auto x : v) total += x;
  return total;
}

}  // namespace detail

/// Full recolor: color[i] is red iff state(i, current[i]) happened-before some other frontier state.
inline Frontier recolor(const FilteredComputation& fc, Frontier f, WorkerPool& pool, Metrics& metrics) {
  const std::size_t n = fc.n();
  std::vector<std::uint64_t> counts(n, 0);
  f.color.assign(n, Color::Green);
  pool.for_each_index(0, n, [&](std::size_t i) {
    const bool red = detail::points_into(fc, f.current, i, detail::AllProcesses{n}, counts[i]);
    f.color[i] = red ? Color::Red : Color::Green;
  });
  metrics.comparisons += detail::sum(counts);
  return f;
}

inline Frontier recolor(const FilteredComputation& fc, Frontier f) {
  WorkerPool pool;
  Metrics m;
  return recolor(fc, std::move(f), pool, m);
}

/// Initial frontier (1, ..., 1) with colors; nullopt when a process has no predicate-true state.
inline std::optional<Frontier> init_cut(const FilteredComputation& fc, WorkerPool& pool,
                                        Metrics& metrics) {
  if (fc.has_empty_process()) return std::nullopt;
  Frontier f;
  f.current.assign(fc.n(), 1);
  return recolor(fc, std::move(f), pool, metrics);
}

inline std::optional<Frontier> init_cut(const FilteredComputation& fc) {
  WorkerPool pool;
  Metrics m;
  return init_cut(fc, pool, m);
}

/**
 * @brief One synchronous round: every red process advances by one state.
 *
 * Returns nullopt if some red state is the last on its process. Colors are
 * recomputed incrementally: an advanced state is compared against the whole
 * frontier, a non-advanced (previously green) state only against the
 * advanced ones. This equals a full recolor because non-advanced states and
 * their mutual relations did not change.
 */
inline std::optional<Frontier> advance_round(const FilteredComputation& fc, const Frontier& f,
                                             WorkerPool& pool, Metrics& metrics) {
  const std::size_t n = fc.n();
  ++metrics.rounds;
  std::vector<std::size_t> advanced;
  for (std::size_t i = 0; i < n; ++i) {
    if (f.color[i] != Color::Red) continue;
    if (f.current[i] == fc.length(i)) return std::nullopt;
    advanced.push_back(i);
  }
  if (advanced.empty()) throw InvariantError("advance_round requires a red process");

  Frontier next = f;
  for (std::size_t i : advanced) ++next.current[i];
  metrics.states_advanced += advanced.size();

  std::vector<std::uint64_t> counts(n, 0);
  pool.for_each_index(0, n, [&](std::size_t i) {
    bool red;
    if (f.color[i] == Color::Red) {
      red = detail::points_into(fc, next.current, i, detail::AllProcesses{n}, counts[i]);
    } else {
      red = detail::points_into(fc, next.current, i, advanced, counts[i]);
    }
    next.color[i] = red ? Color::Red : Color::Green;
  });
  metrics.comparisons += detail::sum(counts);
  return next;
}

inline std::optional<Frontier> advance_round(const FilteredComputation& fc, const Frontier& f) {
  WorkerPool pool;
  Metrics m;
  return advance_round(fc, f, pool, m);
}

/// Round-synchronous detector: all red processes advance together until the frontier is consistent.
inline DetectResult opt_detect(const FilteredComputation& fc, WorkerPool& pool) {
  Stopwatch clock;
  DetectResult result;
  auto frontier = init_cut(fc, pool, result.metrics);
  while (frontier && frontier->any_red()) {
    frontier = advance_round(fc, *frontier, pool, result.metrics);
  }
  if (frontier) result.cut = frontier->cut();
  result.metrics.wall_nanos = clock.elapsed_nanos();
  return result;
}

inline DetectResult opt_detect(const FilteredComputation& fc) {
  WorkerPool pool;
  return opt_detect(fc, pool);
}

/// Sequential variant: one red process (the lowest id) advances per iteration.
inline DetectResult seq_detect(const FilteredComputation& fc) {
  Stopwatch clock;
  DetectResult result;
  Metrics& metrics = result.metrics;
  WorkerPool inline_pool;
  auto start = init_cut(fc, inline_pool, metrics);
  if (!start) {
    metrics.wall_nanos = clock.elapsed_nanos();
    return result;
  }
  Frontier f = std::move(*start);
  const std::size_t n = fc.n();

  for (;;) {
    const auto red = std::find(f.color.begin(), f.color.end(), Color::Red);
    if (red == f.color.end()) {
      result.cut = f.cut();
      break;
    }
    const auto i = static_cast<std::size_t>(red - f.color.begin());
    ++metrics.rounds;
    if (f.current[i] == fc.length(i)) break;
    ++f.current[i];
    ++metrics.states_advanced;

    // Reds other than i stay red: whatever they preceded, they still precede.
    const std::size_t only_i[] = {i};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && f.color[j] == Color::Green &&
          detail::points_into(fc, f.current, j, only_i, metrics.comparisons)) {
        f.color[j] = Color::Red;
      }
    }
    f.color[i] = detail::points_into(fc, f.current, i, detail::AllProcesses{n}, metrics.comparisons)
                     ? Color::Red
                     : Color::Green;
  }
  metrics.wall_nanos = clock.elapsed_nanos();
  return result;
}

}  // namespace wcp
