#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wcp/model.hpp"

namespace wcp {

/// Syntax or validation failure while reading a trace; carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class ViolationKind { OwnComponent, Monotonicity, Realizability };

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::OwnComponent: return "own-component";
    case ViolationKind::Monotonicity: return "monotonicity";
    case ViolationKind::Realizability: return "realizability";
  }
  return "unknown";
}

struct Violation {
  std::size_t process = 0;  // 0-based
  Counter index = 0;
  ViolationKind kind = ViolationKind::OwnComponent;
  std::string message;
};

/// Checks the causal invariants of a computation. Empty result iff valid.
inline std::vector<Violation> validate(const Computation& comp) {
  std::vector<Violation> out;
  const std::size_t n = comp.n();
  auto report = [&](const LocalState& s, ViolationKind kind, std::string msg) {
    out.push_back({s.process, s.index, kind, std::move(msg)});
  };

  for (std::size_t p = 0; p < n; ++p) {
    const auto& tr = comp.trace(p);
    for (std::size_t pos = 0; pos < tr.size(); ++pos) {
      const LocalState& s = tr[pos];
      if (s.clock[p] != s.index) {
        report(s, ViolationKind::OwnComponent,
               "own clock entry " + std::to_string(s.clock[p]) + " differs from index " +
                   std::to_string(s.index));
      }
      if (pos > 0 && !tr[pos - 1].clock.dominated_by(s.clock)) {
        report(s, ViolationKind::Monotonicity, "clock decreases relative to predecessor");
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (k == p || s.clock[k] == 0) continue;
        const Counter c = s.clock[k];
        if (c > comp.length(k)) {
          report(s, ViolationKind::Realizability,
                 "clock entry " + std::to_string(k + 1) + " cites missing state " + std::to_string(c));
          continue;
        }
        const LocalState& cited = comp.state(k, c);
        if (!cited.clock.dominated_by(s.clock)) {
          report(s, ViolationKind::Realizability,
                 "cited state (" + std::to_string(k + 1) + "," + std::to_string(c) +
                     ") has a clock not dominated by this one");
        } else if (cited.clock[p] >= s.index) {
          report(s, ViolationKind::Realizability,
                 "cited state (" + std::to_string(k + 1) + "," + std::to_string(c) +
                     ") already knows this state (causal cycle)");
        }
      }
    }
  }
  return out;
}

namespace detail {

struct ParsedTrace {
  std::optional<Computation> comp;
  std::vector<std::vector<std::size_t>> lines;  // source line per state
};

inline bool parse_uint(std::string_view tok, std::uint64_t& value) {
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  return ec == std::errc{} && ptr == end;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) toks.push_back(line.substr(start, pos - start));
  }
  return toks;
}

inline ParsedTrace parse_with_lines(std::string_view text) {
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::vector<std::optional<LocalState>>> slots;
  std::vector<std::vector<std::size_t>> lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto toks = split(line);
    if (toks.empty() || toks[0].front() == '#') continue;

    if (!have_header) {
      std::uint64_t value = 0;
      if (toks[0] != "trace" || toks.size() != 2 || !parse_uint(toks[1], value)) {
        throw ParseError(line_no, "expected header 'trace <n>'");
      }
      if (value < 1) throw ParseError(line_no, "n >= 1 required");
      n = static_cast<std::size_t>(value);
      slots.resize(n);
      lines.resize(n);
      have_header = true;
      continue;
    }

    if (toks[0] != "state") throw ParseError(line_no, "malformed line: expected 'state'");
    if (toks.size() < 4) throw ParseError(line_no, "malformed state line");
    std::uint64_t proc = 0, index = 0, pred = 0;
    if (!parse_uint(toks[1], proc) || proc < 1 || proc > n) {
      throw ParseError(line_no, "process id must be in 1.." + std::to_string(n));
    }
    if (!parse_uint(toks[2], index) || index < 1 || index > UINT32_MAX) {
      throw ParseError(line_no, "state index must be a positive integer");
    }
    if (!parse_uint(toks[3], pred) || pred > 1) throw ParseError(line_no, "pred must be 0 or 1");
    if (toks.size() - 4 != n) {
      throw ParseError(line_no, "clock length " + std::to_string(toks.size() - 4) + " != n = " +
                                    std::to_string(n));
    }
    VectorClock clock(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t v = 0;
      if (!parse_uint(toks[4 + k], v) || v > UINT32_MAX) {
        throw ParseError(line_no, "clock entries must be non-negative integers");
      }
      clock[k] = static_cast<Counter>(v);
    }

    const std::size_t p = proc - 1;
    auto& row = slots[p];
    if (row.size() < index) {
      row.resize(index);
      lines[p].resize(index, 0);
    }
    if (row[index - 1]) {
      throw ParseError(line_no, "duplicate state (" + std::to_string(proc) + "," +
                                    std::to_string(index) + ")");
    }
    row[index - 1] = LocalState{p, static_cast<Counter>(index), pred == 1, std::move(clock)};
    lines[p][index - 1] = line_no;
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'trace <n>' header");

  std::vector<std::vector<LocalState>> traces(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t j = 0; j < slots[p].size(); ++j) {
      if (!slots[p][j]) {
        // report at the first line that skipped over the hole
        std::size_t at = 0;
        for (std::size_t later = j + 1; later < slots[p].size() && at == 0; ++later) at = lines[p][later];
        throw ParseError(at, "index gap: state (" + std::to_string(p + 1) + "," +
                                 std::to_string(j + 1) + ") missing");
      }
      traces[p].push_back(std::move(*slots[p][j]));
    }
  }
  ParsedTrace out;
  out.comp.emplace(n, std::move(traces));
  out.lines = std::move(lines);
  return out;
}

}  // namespace detail

/// Reads a trace without checking causal invariants (syntax and shape only).
inline Computation parse_unchecked(std::string_view text) {
  return std::move(*detail::parse_with_lines(text).comp);
}

/// Reads and validates a trace; the first violation is reported with its line.
inline Computation parse(std::string_view text) {
  auto parsed = detail::parse_with_lines(text);
  const auto violations = validate(*parsed.comp);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw ParseError(parsed.lines[v.process][v.index - 1],
                     std::string(to_string(v.kind)) + " violation at state (" +
                         std::to_string(v.process + 1) + "," + std::to_string(v.index) + "): " +
                         v.message);
  }
  return std::move(*parsed.comp);
}

inline std::string serialize(const Computation& comp) {
  std::ostringstream out;
  out << "trace " << comp.n() << '\n';
  for (const auto& tr : comp.traces()) {
    for (const LocalState& s : tr) {
      out << "state " << s.process + 1 << ' ' << s.index << ' ' << (s.pred ? 1 : 0);
      for (Counter v : s.clock.entries()) out << ' ' << v;
      out << '\n';
    }
  }
  return out.str();
}

/// splitmix64 (Steele, Lea, Flood). Fixed so traces are reproducible anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

struct GenParams {
  std::size_t n = 2;
  std::size_t m = 4;
  double send_prob = 0.3;
  double recv_prob = 0.5;
  double pred_density = 1.0;
  std::uint64_t seed = 1;
};

inline void check(const GenParams& p) {
  auto prob_ok = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (p.n < 1) throw ModelError("generator: n >= 1 required");
  if (p.m < 1) throw ModelError("generator: m >= 1 required");
  if (!prob_ok(p.send_prob) || !prob_ok(p.recv_prob) || !prob_ok(p.pred_density)) {
    throw ModelError("generator: probabilities must lie in [0,1]");
  }
}

/**
 * @brief Seeded random computation.
 *
 * Processes take steps round-robin: for step t = 1..m, for process i = 1..n.
 * Draw order within one step of process i:
 *   1. if i's mailbox is non-empty: uniform() < recv_prob consumes the oldest
 *      message (clock := componentwise max with the message clock);
 *   2. own clock entry += 1 (no draw);
 *   3. uniform() < pred_density sets the pred bit;
 *   4. if n > 1: uniform() < send_prob sends the new clock; the target is
 *      k = next() % (n-1), skipping i (target = k < i ? k : k+1).
 * An empty mailbox consumes no draw.
 */
inline Computation generate(const GenParams& p) {
  check(p);
  SplitMix64 rng(p.seed);
  std::vector<VectorClock> clocks(p.n, VectorClock(p.n));
  std::vector<std::deque<VectorClock>> mailbox(p.n);
  std::vector<std::vector<LocalState>> traces(p.n);
  for (auto& tr : traces) tr.reserve(p.m);

  for (std::size_t step = 1; step <= p.m; ++step) {
    for (std::size_t i = 0; i < p.n; ++i) {
      VectorClock& clock = clocks[i];
      if (!mailbox[i].empty() && rng.bernoulli(p.recv_prob)) {
        clock.merge(mailbox[i].front());
        mailbox[i].pop_front();
      }
      clock[i] += 1;
      const bool pred = rng.bernoulli(p.pred_density);
      traces[i].push_back(LocalState{i, clock[i], pred, clock});
      if (p.n > 1 && rng.bernoulli(p.send_prob)) {
        const std::size_t k = static_cast<std::size_t>(rng.next() % (p.n - 1));
        mailbox[k < i ? k : k + 1].push_back(clock);
      }
    }
  }
  return Computation(p.n, std::move(traces));
}

}  // namespace wcp
