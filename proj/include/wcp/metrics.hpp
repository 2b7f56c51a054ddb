#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "wcp/model.hpp"

namespace wcp {

/// Operation-count proxies for work and time, plus wall time.
struct Metrics {
  std::uint64_t rounds = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t states_advanced = 0;
  std::uint64_t edges_relaxed = 0;
  std::uint64_t wall_nanos = 0;

  /// Equality on everything except wall time.
  bool same_counts(const Metrics& o) const noexcept {
    return rounds == o.rounds && comparisons == o.comparisons &&
           states_advanced == o.states_advanced && edges_relaxed == o.edges_relaxed;
  }
};

struct DetectResult {
  std::optional<Cut> cut;  // empty means no consistent cut satisfies the predicate
  Metrics metrics;

  bool found() const noexcept { return cut.has_value(); }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::uint64_t elapsed_nanos() const {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace wcp
