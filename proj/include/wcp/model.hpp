#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcp {

/// Raised when an operation receives arguments that violate the causal model
/// (mismatched clock lengths, out-of-range indices, malformed shapes).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a detector observes one of its own internal invariants broken.
/// Never caused by input data.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Counter = std::uint32_t;

/**
 * @brief Per-state vector of process counters.
 *
 * Entry k is the index of the last state on process k known to the owner of
 * the clock. The owner's own entry equals the state's 1-based position on its
 * process, so s -> t iff s.clock < t.clock componentwise-strict.
 */
class VectorClock {
 public:
  VectorClock() = default;
  explicit VectorClock(std::size_t n) : entries_(n, 0) {}
  VectorClock(std::initializer_list<Counter> init) : entries_(init) {}
  explicit VectorClock(std::vector<Counter> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  Counter operator[](std::size_t k) const { return entries_[k]; }
  Counter& operator[](std::size_t k) { return entries_[k]; }
  std::span<const Counter> entries() const noexcept { return entries_; }

  /// Componentwise maximum, in place.
  void merge(const VectorClock& other) {
    if (other.size() != size()) throw ModelError("vector clock length mismatch in merge");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      entries_[k] = std::max(entries_[k], other.entries_[k]);
    }
  }

  /// Componentwise <=.
  bool dominated_by(const VectorClock& other) const {
    if (other.size() != size()) throw ModelError("vector clock length mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (entries_[k] > other.entries_[k]) return false;
    }
    return true;
  }

  friend bool operator==(const VectorClock&, const VectorClock&) = default;

 private:
  std::vector<Counter> entries_;
};

/// One local state of a process. `process` is 0-based; `index` is the 1-based
/// position of the state in its process's original trace.
struct LocalState {
  std::size_t process = 0;
  Counter index = 0;
  bool pred = false;
  VectorClock clock;

  friend bool operator==(const LocalState&, const LocalState&) = default;
};

/// s -> t by the componentwise definition: s.clock <= t.clock and s.clock != t.clock.
inline bool happened_before_full(const VectorClock& s, const VectorClock& t) {
  if (s.size() != t.size()) throw ModelError("vector clock length mismatch");
  bool strictly_less = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] > t[k]) return false;
    if (s[k] < t[k]) strictly_less = true;
  }
  return strictly_less;
}

inline bool happened_before_full(const LocalState& s, const LocalState& t) {
  return happened_before_full(s.clock, t.clock);
}

/// Constant-time test valid for two distinct states of the same valid computation.
inline bool happened_before_fast(const LocalState& s, const LocalState& t) {
  if (s.process == t.process && s.index == t.index) {
    throw ModelError("happened_before_fast called with identical states");
  }
  if (s.process >= s.clock.size() || s.process >= t.clock.size()) {
    throw ModelError("process id outside clock range");
  }
  return s.clock[s.process] <= t.clock[s.process];
}

inline bool concurrent(const LocalState& s, const LocalState& t) {
  if (s.clock.size() != t.clock.size()) throw ModelError("vector clock length mismatch");
  if (s.process == t.process && s.index == t.index) return false;
  return !happened_before_full(s, t) && !happened_before_full(t, s);
}

/**
 * @brief A distributed computation: per-process sequences of local states.
 *
 * The constructor enforces shape only (process ids, contiguous 1-based
 * indices, clock lengths). Causal invariants are checked by `validate()` in
 * trace_io.hpp so that broken inputs can be reported rather than rejected.
 */
class Computation {
 public:
  Computation(std::size_t n, std::vector<std::vector<LocalState>> traces)
      : n_(n), traces_(std::move(traces)) {
    if (n_ < 1) throw ModelError("n >= 1 required");
    if (traces_.size() != n_) throw ModelError("trace count differs from process count");
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t pos = 0; pos < traces_[i].size(); ++pos) {
        const LocalState& s = traces_[i][pos];
        if (s.process != i) throw ModelError("state filed under wrong process");
        if (s.index != pos + 1) throw ModelError("state indices must be contiguous from 1");
        if (s.clock.size() != n_) throw ModelError("clock length differs from process count");
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t length(std::size_t process) const { return traces_.at(process).size(); }
  const std::vector<LocalState>& trace(std::size_t process) const { return traces_.at(process); }
  const std::vector<std::vector<LocalState>>& traces() const noexcept { return traces_; }

  /// State by 0-based process and 1-based index.
  const LocalState& state(std::size_t process, Counter index) const {
    const auto& tr = traces_.at(process);
    if (index < 1 || index > tr.size()) throw ModelError("state index out of range");
    return tr[index - 1];
  }

  std::size_t total_states() const noexcept {
    std::size_t total = 0;
    for (const auto& tr : traces_) total += tr.size();
    return total;
  }

  friend bool operator==(const Computation&, const Computation&) = default;

 private:
  std::size_t n_;
  std::vector<std::vector<LocalState>> traces_;
};

/// A state of the filtered computation: 0-based process, 1-based filtered index.
struct StateRef {
  std::size_t process = 0;
  Counter index = 0;

  friend bool operator==(const StateRef&, const StateRef&) = default;
  friend auto operator<=>(const StateRef&, const StateRef&) = default;
};

/**
 * @brief The computation restricted to predicate-true states.
 *
 * Filtered states are re-indexed 1..m_i per process. Each carries a filtered
 * clock: fclock[k] is the number of filtered states on process k whose
 * original index is at most the state's original clock[k]. Filtered states
 * are also numbered densely as nodes 0..total()-1, process-major.
 */
class FilteredComputation {
 public:
  std::size_t n() const noexcept { return n_; }
  std::size_t length(std::size_t process) const { return lengths_.at(process); }
  const std::vector<std::size_t>& lengths() const noexcept { return lengths_; }
  std::size_t total() const noexcept { return offsets_.back(); }

  /// Processes without any predicate-true state.
  const std::vector<std::size_t>& empty_processes() const noexcept { return empty_; }
  bool has_empty_process() const noexcept { return !empty_.empty(); }

  std::size_t node(StateRef s) const { return offsets_[s.process] + s.index - 1; }
  std::size_t node(std::size_t process, Counter index) const { return node(StateRef{process, index}); }

  StateRef ref(std::size_t node_id) const {
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), node_id);
    const auto process = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return {process, static_cast<Counter>(node_id - offsets_[process] + 1)};
  }

  bool contains(StateRef s) const noexcept {
    return s.process < n_ && s.index >= 1 && s.index <= lengths_[s.process];
  }

  const LocalState& original(StateRef s) const { return states_[checked_node(s)]; }

  std::span<const Counter> fclock(StateRef s) const {
    return std::span<const Counter>(fclocks_).subspan(checked_node(s) * n_, n_);
  }

  /// a -> b for filtered states, via filtered clocks.
  bool happened_before(StateRef a, StateRef b) const {
    return a.index <= fclocks_[node(b) * n_ + a.process] && !(a == b);
  }

  friend FilteredComputation filter(const Computation& comp);

 private:
  std::size_t checked_node(StateRef s) const {
    if (!contains(s)) throw ModelError("filtered state out of range");
    return node(s);
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> lengths_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> empty_;
  std::vector<LocalState> states_;
  std::vector<Counter> fclocks_;
};

inline FilteredComputation filter(const Computation& comp) {
  FilteredComputation fc;
  const std::size_t n = comp.n();
  fc.n_ = n;
  fc.lengths_.assign(n, 0);
  fc.offsets_.assign(n + 1, 0);

  // prefix[k][c] = number of predicate-true states among the first c states of k
  std::vector<std::vector<Counter>> prefix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& tr = comp.trace(k);
    prefix[k].assign(tr.size() + 1, 0);
    for (std::size_t pos = 0; pos < tr.size(); ++pos) {
      prefix[k][pos + 1] = prefix[k][pos] + (tr[pos].pred ? 1 : 0);
      if (tr[pos].pred) fc.states_.push_back(tr[pos]);
    }
    fc.lengths_[k] = prefix[k].back();
    fc.offsets_[k + 1] = fc.offsets_[k] + fc.lengths_[k];
    if (fc.lengths_[k] == 0) fc.empty_.push_back(k);
  }

  fc.fclocks_.resize(fc.states_.size() * n);
  for (std::size_t node = 0; node < fc.states_.size(); ++node) {
    const VectorClock& clock = fc.states_[node].clock;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t c = std::min<std::size_t>(clock[k], prefix[k].size() - 1);
      fc.fclocks_[node * n + k] = prefix[k][c];
    }
  }
  return fc;
}

/// One filtered-state index per process (1-based).
struct Cut {
  std::vector<Counter> indices;

  std::size_t size() const noexcept { return indices.size(); }
  Counter operator[](std::size_t i) const { return indices[i]; }

  friend bool operator==(const Cut&, const Cut&) = default;
};

/// True iff the referenced states are pairwise concurrent.
inline bool is_consistent_cut(const FilteredComputation& fc, const Cut& cut) {
  if (cut.size() != fc.n()) throw ModelError("cut length differs from process count");
  for (std::size_t i = 0; i < fc.n(); ++i) {
    if (!fc.contains({i, cut[i]})) throw ModelError("cut index out of range");
  }
  for (std::size_t i = 0; i < fc.n(); ++i) {
    const LocalState& s = fc.original({i, cut[i]});
    for (std::size_t j = i + 1; j < fc.n(); ++j) {
      if (!concurrent(s, fc.original({j, cut[j]}))) return false;
    }
  }
  return true;
}

inline std::string to_string(const Cut& cut) {
  std::string out = "(";
  for (std::size_t i = 0; i < cut.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(cut[i]);
  }
  return out + ")";
}

}  // namespace wcp
