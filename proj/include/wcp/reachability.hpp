#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "wcp/parallel.hpp"
#include "wcp/rejection_graph.hpp"

namespace wcp {

/// States reachable from the virtual source f, whose out-edges go to (i, bound[i]) for every F[i].
struct ReachSet {
  std::vector<std::uint8_t> member;  // by node id
  std::size_t levels = 0;            // BFS depth; sources sit at depth 1
  std::uint64_t edges_relaxed = 0;

  bool contains(std::size_t node_id) const { return member[node_id] != 0; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : member) c += b;
    return c;
  }

  /// Same member set and depth; edge counts are a property of the backend.
  bool same_set(const ReachSet& o) const { return member == o.member && levels == o.levels; }
};

/**
 * @brief Frontier-synchronous parallel BFS from the virtual source.
 *
 * Within a level the frontier is expanded in parallel; a neighbor is claimed
 * by whichever worker flips its flag from 0 to 1 first (all writers store the
 * same value). The level ends at the pool barrier. Visit order within a level
 * may vary with scheduling; the member set and the level count do not.
 */
inline ReachSet reach(const StateMaxIncidence& graph, const InitialRejects& rejects, WorkerPool& pool) {
  const std::size_t nodes = graph.nodes();
  auto flags = std::make_unique<std::atomic<std::uint8_t>[]>(nodes);
  for (std::size_t v = 0; v < nodes; ++v) flags[v].store(0, std::memory_order_relaxed);

  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < rejects.f.size(); ++i) {
    if (!rejects[i]) continue;
    const std::size_t v = graph.node({i, rejects.bound[i]});
    flags[v].store(1, std::memory_order_relaxed);
    frontier.push_back(v);
  }

  ReachSet out;
  std::vector<std::size_t> owner(nodes);
  for (std::size_t i = 0, v = 0; i < graph.n(); ++i) {
    for (std::size_t j = 0; j < graph.process_length(i); ++j) owner[v++] = i;
  }

  while (!frontier.empty()) {
    ++out.levels;
    const std::size_t parts = pool.parts_for(frontier.size());
    std::vector<std::vector<std::size_t>> found(parts);
    std::vector<std::uint64_t> relaxed(parts, 0);
    pool.for_parts(0, frontier.size(), [&](std::size_t part, std::size_t b, std::size_t e) {
      auto& local = found[part];
      for (std::size_t k = b; k < e; ++k) {
        const std::size_t u = frontier[k];
        const StateRef s{owner[u], static_cast<Counter>(u - graph.node({owner[u], 1}) + 1)};
        relaxed[part] += graph.for_each_neighbor(s, [&](StateRef t) {
          const std::size_t v = graph.node(t);
          if (flags[v].load(std::memory_order_relaxed) == 0 &&
              flags[v].exchange(1, std::memory_order_relaxed) == 0) {
            local.push_back(v);
          }
        });
      }
    });
    frontier.clear();
    for (std::size_t p = 0; p < parts; ++p) {
      out.edges_relaxed += relaxed[p];
      frontier.insert(frontier.end(), found[p].begin(), found[p].end());
    }
  }

  out.member.resize(nodes);
  for (std::size_t v = 0; v < nodes; ++v) out.member[v] = flags[v].load(std::memory_order_relaxed);
  return out;
}

inline ReachSet reach(const StateMaxIncidence& graph, const InitialRejects& rejects) {
  WorkerPool pool;
  return reach(graph, rejects, pool);
}

/// Sequential worklist BFS; the reference any reachability backend must match.
inline ReachSet reach_oracle(const StateMaxIncidence& graph, const InitialRejects& rejects) {
  const std::size_t nodes = graph.nodes();
  std::vector<std::size_t> depth(nodes, 0);
  std::deque<StateRef> work;
  for (std::size_t i = 0; i < rejects.f.size(); ++i) {
    if (!rejects[i]) continue;
    depth[graph.node({i, rejects.bound[i]})] = 1;
    work.push_back({i, rejects.bound[i]});
  }

  ReachSet out;
  while (!work.empty()) {
    const StateRef s = work.front();
    work.pop_front();
    const std::size_t d = depth[graph.node(s)];
    out.levels = std::max(out.levels, d);
    out.edges_relaxed += graph.for_each_neighbor(s, [&](StateRef t) {
      auto& dt = depth[graph.node(t)];
      if (dt == 0) {
        dt = d + 1;
        work.push_back(t);
      }
    });
  }
  out.member.resize(nodes);
  for (std::size_t v = 0; v < nodes; ++v) out.member[v] = depth[v] != 0 ? 1 : 0;
  return out;
}

}  // namespace wcp
