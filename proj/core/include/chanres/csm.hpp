#pragma once

// Communicating state machines over reliable FIFO point-to-point channels,
// with bounded exploration of their runs.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "chanres/events.hpp"
#include "chanres/msc.hpp"
#include "chanres/restrictions.hpp"

namespace chanres {

using StateName = std::string;

struct Transition {
  StateName from;
  /// Absent for an epsilon transition.
  std::optional<Event> action;
  StateName to;
};

struct StateMachine {
  ProcessId process;
  /// In order of first mention.
  std::vector<StateName> states;
  StateName initial;
  std::set<StateName> finals;
  std::vector<Transition> transitions;

  /// Adds the state if it is new.
  void add_state(const StateName& s);
};

struct Csm {
  std::string name;
  std::map<ProcessId, StateMachine> machines;
};

/// Empty when the CSM is well-formed: every action belongs to its machine's
/// process, every partner has a machine, states are declared.
std::vector<std::string> csm_problems(const Csm& a);

struct Configuration {
  std::map<ProcessId, StateName> states;
  /// Non-empty channels only.
  std::map<Channel, std::vector<Message>> queues;

  auto operator<=>(const Configuration&) const = default;
};

Configuration initial_configuration(const Csm& a);

/// Fires transition `index` (into the machine's transition list) of
/// `process`. Throws NoSuchTransition if it does not start in the current
/// state, BlockedReceive if the channel head does not match.
Configuration step(const Csm& a, const Configuration& c, const ProcessId& process, std::size_t index);
/// Fires the first transition (in declaration order) labelled `e`.
Configuration step(const Csm& a, const Configuration& c, const Event& e);

struct MaximalTrace {
  Word word;
  /// Messages still in flight when every machine is final.
  std::map<Channel, std::vector<Message>> queues;

  bool complete() const { return queues.empty(); }
  auto operator<=>(const MaximalTrace&) const = default;
};

struct LassoTrace {
  Lasso lasso;
  /// Net sends per iteration on channels the cycle only sends on.
  std::map<Channel, long> growth;

  bool pumping() const { return !growth.empty(); }
  auto operator<=>(const LassoTrace&) const = default;
};

inline constexpr std::size_t kDefaultExploreBudget = 5'000'000;

struct ExplorationResult {
  std::size_t depth = 0;
  std::size_t channel_cap = 0;
  /// Distinct configurations seen.
  std::size_t configurations = 0;
  /// Runs ending with every machine final, by word.
  std::vector<MaximalTrace> maximal;
  /// Fair repeatable cycles found on explored runs.
  std::vector<LassoTrace> lassos;
  bool depth_hit = false;
  bool cap_hit = false;
  /// First run (in exploration order) that overfilled a channel.
  std::optional<Word> cap_witness;
};

/// Depth-first over runs of at most `depth` transitions, successors in
/// canonical order (process name, then transition order). Configurations
/// with a channel holding more than `channel_cap` messages are not
/// expanded. A lasso is reported when the local states repeat on a run,
/// every channel the cycle receives from holds the same contents at both
/// ends, and the cycle is weakly fair (no process enabled throughout the
/// repeated cycle is left out of it). Throws BudgetExceeded after `budget`
/// explored run prefixes.
ExplorationResult explore(const Csm& a, std::size_t depth, std::size_t channel_cap,
                          std::size_t budget = kDefaultExploreBudget);

struct CsmBounds {
  std::size_t depth = 12;
  std::size_t channel_cap = 6;
  /// Default: number of sends of each checked trace.
  std::optional<std::size_t> max_b;
  /// Absent: report the minimal k.
  std::optional<std::size_t> k;
  std::size_t unroll = 3;
};

struct CsmClassification {
  ExplorationResult exploration;
  /// Half-duplex, existentially bounded, synchronisable.
  std::vector<RestrictionVerdict> verdicts;
};

/// Classifies every explored maximal trace and lasso unrolling. Violations
/// on real traces are definitive; a fair lasso growing a channel refutes
/// existential boundedness for every B; everything else is a bounded claim.
CsmClassification classify_csm(const Csm& a, const CsmBounds& bounds = {});

struct Deadlock {
  Configuration configuration;
  Word trace;
};

/// A reachable configuration with no enabled transition that is not all
/// final with empty channels (breadth-first, so the trace is shortest).
std::optional<Deadlock> check_deadlock(const Csm& a, std::size_t depth, std::size_t channel_cap);

/// One linear machine per process following its row; final at the end.
Csm project_bmsc(const PrefixMsc& m, std::string name = "projection");

/// `.csm` text format.
Csm parse_csm(std::string_view text);
std::string print_csm(const Csm& a);

}  // namespace chanres
