#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wcp/metrics.hpp"
#include "wcp/model.hpp"

// Brute-force references. Everything here compares original vector clocks
// componentwise and never touches filtered clocks or the max-edge graph.

namespace wcp {

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kOracleTupleLimit = std::uint64_t{1} << 20;

/// All consistent cuts in lexicographic order. Throws if prod(m_i) exceeds 2^20.
inline std::vector<Cut> enumerate_consistent_cuts(const FilteredComputation& fc,
                                                  std::uint64_t* comparisons = nullptr) {
  const std::size_t n = fc.n();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < n; ++i) {
    tuples *= fc.length(i);
    if (tuples > kOracleTupleLimit) throw OracleTooLarge("oracle: more than 2^20 index tuples");
  }
  std::vector<Cut> out;
  if (tuples == 0) return out;

  std::uint64_t compared = 0;
  std::vector<Counter> idx(n, 0);
  // depth-first over processes; a prefix is extended only while pairwise concurrent
  std::size_t depth = 0;
  while (true) {
    if (idx[depth] == fc.length(depth)) {
      idx[depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    ++idx[depth];
    const LocalState& s = fc.original({depth, idx[depth]});
    bool ok = true;
    for (std::size_t k = 0; k < depth && ok; ++k) {
      compared += 2;
      ok = concurrent(fc.original({k, idx[k]}), s);
    }
    if (!ok) continue;
    if (depth + 1 == n) {
      out.push_back(Cut{idx});
    } else {
      ++depth;
    }
  }
  if (comparisons) *comparisons += compared;
  return out;
}

/// Componentwise minimum of all consistent cuts, checked to be a consistent cut itself.
inline DetectResult brute_min_cut(const FilteredComputation& fc) {
  Stopwatch clock;
  DetectResult result;
  const auto cuts = enumerate_consistent_cuts(fc, &result.metrics.comparisons);
  if (!cuts.empty()) {
    Cut low = cuts.front();
    for (const Cut& c : cuts) {
      for (std::size_t i = 0; i < fc.n(); ++i) low.indices[i] = std::min(low.indices[i], c[i]);
    }
    if (!std::binary_search(cuts.begin(), cuts.end(), low, [](const Cut& a, const Cut& b) {
          return a.indices < b.indices;
        })) {
      throw InvariantError("componentwise minimum of consistent cuts is not consistent");
    }
    result.cut = std::move(low);
  }
  result.metrics.wall_nanos = clock.elapsed_nanos();
  return result;
}

struct ClosureSet {
  std::vector<std::vector<std::uint8_t>> rejected;  // [process][filtered index - 1]
  std::vector<std::uint8_t> failed;                 // last state of the process rejected

  bool any_failed() const {
    return std::find(failed.begin(), failed.end(), std::uint8_t{1}) != failed.end();
  }
  /// Highest rejected filtered index on `process`, 0 if none.
  std::size_t max_rejected(std::size_t process) const {
    const auto& row = rejected[process];
    for (std::size_t j = row.size(); j >= 1; --j) {
      if (row[j - 1]) return j;
    }
    return 0;
  }
};

/**
 * Least set containing every state that happened-before some first state
 * (j,1), such that rejecting (i,j) with j < m_i rejects every t -> (i,j+1),
 * and rejecting (i,m_i) fails process i. Seeds come straight from the
 * original clocks, not from build_F.
 */
inline ClosureSet rejection_closure(const FilteredComputation& fc) {
  const std::size_t n = fc.n();
  ClosureSet out;
  out.rejected.resize(n);
  out.failed.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) out.rejected[i].assign(fc.length(i), 0);

  std::deque<StateRef> work;
  for (std::size_t k = 0; k < n; ++k) {
    for (Counter j = 1; j <= fc.length(k); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k || fc.length(i) == 0) continue;
        if (happened_before_full(fc.original({k, j}), fc.original({i, 1}))) {
          out.rejected[k][j - 1] = 1;
          work.push_back({k, j});
          break;
        }
      }
    }
  }
  while (!work.empty()) {
    const StateRef s = work.front();
    work.pop_front();
    if (s.index == fc.length(s.process)) {
      out.failed[s.process] = 1;
      continue;
    }
    const LocalState& succ = fc.original({s.process, s.index + 1});
    for (std::size_t k = 0; k < n; ++k) {
      for (Counter j = 1; j <= fc.length(k); ++j) {
        if (out.rejected[k][j - 1]) continue;
        if (happened_before_full(fc.original({k, j}), succ)) {
          out.rejected[k][j - 1] = 1;
          work.push_back({k, j});
        }
      }
    }
  }
  return out;
}

}  // namespace wcp
