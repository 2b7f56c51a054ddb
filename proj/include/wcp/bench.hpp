#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wcp/jls_detect.hpp"
#include "wcp/metrics.hpp"
#include "wcp/model.hpp"
#include "wcp/opt_detect.hpp"
#include "wcp/oracle.hpp"
#include "wcp/parallel.hpp"

namespace wcp {

enum class Algo { Seq, Opt, Jls, Brute };

inline std::optional<Algo> parse_algo(std::string_view name) {
  if (name == "seq") return Algo::Seq;
  if (name == "opt") return Algo::Opt;
  if (name == "jls") return Algo::Jls;
  if (name == "brute") return Algo::Brute;
  return std::nullopt;
}

inline const char* to_string(Algo algo) {
  switch (algo) {
    case Algo::Seq: return "seq";
    case Algo::Opt: return "opt";
    case Algo::Jls: return "jls";
    case Algo::Brute: return "brute";
  }
  return "?";
}

/// Runs one detector. Seq and brute ignore the pool.
inline DetectResult run_detector(Algo algo, const FilteredComputation& fc, WorkerPool& pool) {
  switch (algo) {
    case Algo::Seq: return seq_detect(fc);
    case Algo::Opt: return opt_detect(fc, pool);
    case Algo::Jls: return jls_detect(fc, pool);
    case Algo::Brute: return brute_min_cut(fc);
  }
  throw ModelError("unknown detector");
}

struct BenchRecord {
  std::string algo;
  std::size_t n = 0;
  std::vector<std::size_t> m;  // filtered length per process
  bool found = false;
  Metrics metrics;
  std::size_t repeat = 0;

  std::size_t m_total() const {
    std::size_t t = 0;
    for (auto x : m) t += x;
    return t;
  }
};

inline constexpr std::string_view kBenchHeader =
    "algo,n,m_total,outcome,rounds,comparisons,edges_relaxed,states_advanced,wall_nanos,repeat";

inline void write_csv_row(std::ostream& out, const BenchRecord& r) {
  out << r.algo << ',' << r.n << ',' << r.m_total() << ',' << (r.found ? "found" : "no-cut") << ','
      << r.metrics.rounds << ',' << r.metrics.comparisons << ',' << r.metrics.edges_relaxed << ','
      << r.metrics.states_advanced << ',' << r.metrics.wall_nanos << ',' << r.repeat << '\n';
}

inline std::vector<BenchRecord> bench(const FilteredComputation& fc, const std::vector<Algo>& algos,
                                      std::size_t repeats, WorkerPool& pool) {
  std::vector<BenchRecord> out;
  for (Algo algo : algos) {
    for (std::size_t r = 0; r < repeats; ++r) {
      const DetectResult res = run_detector(algo, fc, pool);
      out.push_back({to_string(algo), fc.n(), fc.lengths(), res.found(), res.metrics, r});
    }
  }
  return out;
}

}  // namespace wcp
