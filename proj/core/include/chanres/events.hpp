#pragma once

// Send/receive events over point-to-point FIFO channels, words over them,
// and the word-level predicates every other module builds on.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chanres {

using ProcessId = std::string;
using Message = std::string;

enum class EventKind { Send, Receive };

struct Channel {
  ProcessId from;
  ProcessId to;

  auto operator<=>(const Channel&) const = default;
  std::string to_string() const { return from + ">" + to; }
};

/// `P>Q!m` is P sending m to Q; `P>Q?m` is Q receiving m from P.
struct Event {
  EventKind kind = EventKind::Send;
  ProcessId sender;
  ProcessId receiver;
  Message msg;

  static Event send(ProcessId from, ProcessId to, Message m) {
    return {EventKind::Send, std::move(from), std::move(to), std::move(m)};
  }
  static Event receive(ProcessId from, ProcessId to, Message m) {
    return {EventKind::Receive, std::move(from), std::move(to), std::move(m)};
  }

  bool is_send() const noexcept { return kind == EventKind::Send; }
  bool is_receive() const noexcept { return kind == EventKind::Receive; }
  /// The process performing the event.
  const ProcessId& process() const noexcept { return is_send() ? sender : receiver; }
  Channel channel() const { return {sender, receiver}; }
  std::string to_string() const;

  auto operator<=>(const Event&) const = default;
};

using Word = std::vector<Event>;

/// stem . cycle^omega; the only representation of infinite words.
struct Lasso {
  Word stem;
  Word cycle;

  auto operator<=>(const Lasso&) const = default;
  /// stem . cycle^n
  Word unroll(std::size_t n) const;
};

/// Parses whitespace-separated `P>Q!m` / `P>Q?m` tokens. `ε` or an empty
/// string is the empty word. Throws ParseError.
Word parse_word(std::string_view text);
Event parse_event(std::string_view token);
/// Space-separated; the empty word prints as `ε`.
std::string format_word(const Word& w);
std::string format_lasso(const Lasso& l);

Word concat(const Word& a, const Word& b);

// --- projections ----------------------------------------------------------

struct OnProcess {
  ProcessId process;
};
struct SendsOn {
  Channel channel;
};
struct ReceivesOn {
  Channel channel;
};
using ProjectionSelector = std::variant<OnProcess, SendsOn, ReceivesOn>;

Word project(const Word& w, const ProjectionSelector& sel);
/// The message values of w, in order.
std::vector<Message> values(const Word& w);

std::set<ProcessId> processes_of(const Word& w);
std::set<Channel> channels_of(const Word& w);

// --- predicates -----------------------------------------------------------

bool is_channel_compliant(const Word& w);
/// Requires a channel-compliant word; throws UndefinedMsc otherwise.
bool is_complete(const Word& w);
/// An infinite word is complete whenever it is channel-compliant; the
/// compliance part is checked on the first `unroll` cycle iterations.
bool is_complete(const Lasso& l, std::size_t unroll = 3);

/// Send position -> receive position (0-based). Requires compliance.
std::map<std::size_t, std::size_t> matching(const Word& w);

bool is_b_bounded(const Word& w, std::size_t bound);
bool is_half_duplex_word(const Word& w);

/// Result of checking a predicate on a lasso: holds on stem.cycle^n for
/// every n up to `unrolled`, plus the cycle-balance stability condition.
struct LassoCheck {
  bool holds = false;
  std::size_t unrolled = 0;
  /// True when the cycle balance proves the answer for every unrolling.
  bool stable = false;
};

bool is_channel_compliant(const Lasso& l, std::size_t unroll = 3);
LassoCheck is_b_bounded(const Lasso& l, std::size_t bound, std::size_t unroll = 3);
LassoCheck is_half_duplex_word(const Lasso& l, std::size_t unroll = 3);

/// Net sends minus receives per channel over one cycle iteration.
std::map<Channel, long> cycle_balance(const Lasso& l);

}  // namespace chanres
