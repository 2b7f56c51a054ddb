// Command-line front end: detect, generate, validate, bench.
//
// Exit codes: 0 found / ok, 1 no cut / invalid trace, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wcp/wcp.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNoCut = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<wcp::Algo> parse_algo_list(const std::string& list) {
  std::vector<wcp::Algo> algos;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const auto algo = wcp::parse_algo(name);
    if (!algo) throw UsageError("unknown algorithm '" + name + "'");
    algos.push_back(*algo);
  }
  if (algos.empty()) throw UsageError("empty --algo list");
  return algos;
}

void print_metrics(std::ostream& out, const wcp::Metrics& m) {
  out << "metrics rounds=" << m.rounds << " comparisons=" << m.comparisons
      << " edges_relaxed=" << m.edges_relaxed << " states_advanced=" << m.states_advanced
      << " wall_nanos=" << m.wall_nanos << '\n';
}

struct GenFlags {
  wcp::GenParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--processes", params.n, "Number of processes")->check(CLI::PositiveNumber);
    cmd->add_option("--states", params.m, "States per process")->check(CLI::PositiveNumber);
    cmd->add_option("--send-prob", params.send_prob, "Send probability after a state")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--recv-prob", params.recv_prob, "Receive probability before a state")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--pred-density", params.pred_density, "Probability the local predicate holds")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", params.seed, "splitmix64 seed");
  }
};

int cmd_detect(const std::string& input, const std::string& algo_name, std::size_t threads,
               bool show_metrics) {
  const auto algo = wcp::parse_algo(algo_name);
  if (!algo) throw UsageError("unknown algorithm '" + algo_name + "'");
  const wcp::Computation comp = wcp::parse(read_file(input));
  const wcp::FilteredComputation fc = wcp::filter(comp);
  wcp::WorkerPool pool(threads);
  const wcp::DetectResult result = wcp::run_detector(*algo, fc, pool);

  if (result.found()) {
    const wcp::Cut& cut = *result.cut;
    std::cout << "cut";
    for (auto j : cut.indices) std::cout << ' ' << j;
    std::cout << '\n';
    for (std::size_t i = 0; i < fc.n(); ++i) {
      const wcp::LocalState& s = fc.original({i, cut[i]});
      std::cout << "state " << i + 1 << ' ' << s.index;
      for (auto v : s.clock.entries()) std::cout << ' ' << v;
      std::cout << '\n';
    }
  } else {
    std::cout << "no-cut\n";
  }
  if (show_metrics) print_metrics(std::cout, result.metrics);
  return result.found() ? kExitFound : kExitNoCut;
}

int cmd_generate(const wcp::GenParams& params, const std::string& output) {
  const std::string text = wcp::serialize(wcp::generate(params));
  if (output.empty() || output == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + output + "'");
  out << text;
  return 0;
}

int cmd_validate(const std::string& input) {
  const wcp::Computation comp = wcp::parse_unchecked(read_file(input));
  const auto violations = wcp::validate(comp);
  for (const auto& v : violations) {
    std::cerr << "state (" << v.process + 1 << "," << v.index << "): " << wcp::to_string(v.kind)
              << ": " << v.message << '\n';
  }
  return violations.empty() ? 0 : 1;
}

int cmd_bench(const std::vector<std::string>& inputs, bool use_gen, const GenFlags& gen,
              std::size_t count, const std::string& algo_list, std::size_t repeats,
              std::size_t threads) {
  if (inputs.empty() == !use_gen) throw UsageError("bench needs exactly one of --input or --gen");
  const auto algos = parse_algo_list(algo_list);
  wcp::WorkerPool pool(threads);

  std::vector<wcp::Computation> comps;
  if (use_gen) {
    for (std::size_t k = 0; k < count; ++k) {
      wcp::GenParams p = gen.params;
      p.seed += k;
      comps.push_back(wcp::generate(p));
    }
  } else {
    for (const auto& path : inputs) comps.push_back(wcp::parse(read_file(path)));
  }

  std::cout << wcp::kBenchHeader << '\n';
  for (const auto& comp : comps) {
    const auto fc = wcp::filter(comp);
    for (const auto& rec : wcp::bench(fc, algos, repeats, pool)) wcp::write_csv_row(std::cout, rec);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak conjunctive predicate detection over vector-clock traces"};
  app.require_subcommand(1);

  std::string input;
  std::string algo = "opt";
  std::size_t threads = 1;
  bool show_metrics = false;
  auto* detect = app.add_subcommand("detect", "Find the minimum consistent cut satisfying the predicate");
  detect->add_option("--input", input, "Trace file")->required();
  detect->add_option("--algo", algo, "seq | opt | jls | brute");
  detect->add_option("--threads", threads, "Detector worker count")->check(CLI::PositiveNumber);
  detect->add_flag("--metrics", show_metrics, "Print operation counts");

  GenFlags gen;
  std::string output;
  auto* generate = app.add_subcommand("generate", "Write a seeded random trace");
  gen.attach(generate);
  generate->add_option("--output", output, "Output file (stdout if omitted)");

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Check the causal invariants of a trace");
  validate->add_option("--input", validate_input, "Trace file")->required();

  std::vector<std::string> bench_inputs;
  bool bench_gen = false;
  GenFlags bench_params;
  std::size_t bench_count = 1;
  std::string bench_algos = "seq,opt,jls";
  std::size_t repeats = 1;
  std::size_t bench_threads = 1;
  auto* bench = app.add_subcommand("bench", "Emit per-run metrics as CSV");
  bench->add_option("--input", bench_inputs, "Trace file(s)");
  bench->add_flag("--gen", bench_gen, "Generate inputs instead of reading files");
  bench_params.attach(bench);
  bench->add_option("--count", bench_count, "Generated traces (seeds seed..seed+count-1)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--algo", bench_algos, "Comma-separated detector list");
  bench->add_option("--repeat", repeats, "Runs per detector and input")->check(CLI::PositiveNumber);
  bench->add_option("--threads", bench_threads, "Detector worker count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*detect) return cmd_detect(input, algo, threads, show_metrics);
    if (*generate) return cmd_generate(gen.params, output);
    if (*validate) return cmd_validate(validate_input);
    if (*bench) {
      return cmd_bench(bench_inputs, bench_gen, bench_params, bench_count, bench_algos, repeats,
                       bench_threads);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
