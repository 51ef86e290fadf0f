#include "chanres/events.hpp"

#include <algorithm>
#include <cctype>

#include "chanres/errors.hpp"

namespace chanres {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_ident_char);
}

struct ChannelState {
  std::vector<Message> sent;
  std::vector<Message> received;
  bool empty() const { return sent == received; }
};

}  // namespace

std::string Event::to_string() const {
  return sender + ">" + receiver + (is_send() ? "!" : "?") + msg;
}

Word Lasso::unroll(std::size_t n) const {
  Word w = stem;
  for (std::size_t i = 0; i < n; ++i) w.insert(w.end(), cycle.begin(), cycle.end());
  return w;
}

Event parse_event(std::string_view token) {
  const auto gt = token.find('>');
  const auto op = token.find_first_of("!?");
  if (gt == std::string_view::npos || op == std::string_view::npos || op < gt) {
    throw ParseError("malformed event '" + std::string(token) + "'", 1, 1);
  }
  auto from = token.substr(0, gt);
  auto to = token.substr(gt + 1, op - gt - 1);
  auto msg = token.substr(op + 1);
  if (!is_ident(from) || !is_ident(to) || !is_ident(msg)) {
    throw ParseError("malformed event '" + std::string(token) + "'", 1, 1);
  }
  if (from == to) {
    throw ParseError("event '" + std::string(token) + "' has equal sender and receiver", 1, 1);
  }
  Event e{token[op] == '!' ? EventKind::Send : EventKind::Receive, std::string(from),
          std::string(to), std::string(msg)};
  return e;
}

Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  std::size_t column = 1;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) != 0) {
      ++i;
      ++column;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])) == 0) ++j;
    auto token = text.substr(i, j - i);
    if (token != "ε") {
      try {
        w.push_back(parse_event(token));
      } catch (const ParseError& e) {
        std::string msg = e.what();
        throw ParseError(msg.substr(msg.find(' ') + 1), 1, column);
      }
    }
    column += j - i;
    i = j;
  }
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "ε";
  std::string out;
  for (const auto& e : w) {
    if (!out.empty()) out += ' ';
    out += e.to_string();
  }
  return out;
}

std::string format_lasso(const Lasso& l) {
  return "(" + format_word(l.stem) + ")(" + format_word(l.cycle) + ")^ω";
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word project(const Word& w, const ProjectionSelector& sel) {
  Word out;
  for (const auto& e : w) {
    const bool keep = std::visit(
        [&e](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, OnProcess>) {
            return e.process() == s.process;
          } else if constexpr (std::is_same_v<T, SendsOn>) {
            return e.is_send() && e.channel() == s.channel;
          } else {
            return e.is_receive() && e.channel() == s.channel;
          }
        },
        sel);
    if (keep) out.push_back(e);
  }
  return out;
}

std::vector<Message> values(const Word& w) {
  std::vector<Message> out;
  out.reserve(w.size());
  for (const auto& e : w) out.push_back(e.msg);
  return out;
}

std::set<ProcessId> processes_of(const Word& w) {
  std::set<ProcessId> out;
  for (const auto& e : w) {
    out.insert(e.sender);
    out.insert(e.receiver);
  }
  return out;
}

std::set<Channel> channels_of(const Word& w) {
  std::set<Channel> out;
  for (const auto& e : w) out.insert(e.channel());
  return out;
}

bool is_channel_compliant(const Word& w) {
  std::map<Channel, std::pair<std::vector<Message>, std::size_t>> chans;
  for (const auto& e : w) {
    auto& [sent, received] = chans[e.channel()];
    if (e.is_send()) {
      sent.push_back(e.msg);
    } else {
      if (received >= sent.size() || sent[received] != e.msg) return false;
      ++received;
    }
  }
  return true;
}

bool is_complete(const Word& w) {
  if (!is_channel_compliant(w)) throw UndefinedMsc("word is not channel-compliant");
  std::map<Channel, long> pending;
  for (const auto& e : w) pending[e.channel()] += e.is_send() ? 1 : -1;
  return std::all_of(pending.begin(), pending.end(), [](const auto& kv) { return kv.second == 0; });
}

bool is_complete(const Lasso& l, std::size_t unroll) {
  if (!is_channel_compliant(l, unroll)) throw UndefinedMsc("lasso is not channel-compliant");
  if (!l.cycle.empty()) return true;
  return is_complete(l.stem);
}

std::map<std::size_t, std::size_t> matching(const Word& w) {
  // The k-th send on a channel is matched by the k-th receive on it.
  std::map<Channel, std::vector<std::size_t>> sends;
  std::map<Channel, std::size_t> received;
  std::map<std::size_t, std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& e = w[i];
    if (e.is_send()) {
      sends[e.channel()].push_back(i);
    } else {
      auto& r = received[e.channel()];
      const auto& s = sends[e.channel()];
      if (r < s.size() && w[s[r]].msg == e.msg) out.emplace(s[r], i);
      ++r;
    }
  }
  return out;
}

bool is_b_bounded(const Word& w, std::size_t bound) {
  std::map<Channel, long> occupancy;
  for (const auto& e : w) {
    auto& o = occupancy[e.channel()];
    o += e.is_send() ? 1 : -1;
    if (o > static_cast<long>(bound)) return false;
  }
  return true;
}

bool is_half_duplex_word(const Word& w) {
  std::map<Channel, ChannelState> chans;
  for (const auto& e : w) {
    auto& st = chans[e.channel()];
    (e.is_send() ? st.sent : st.received).push_back(e.msg);
    const auto& reverse = chans[Channel{e.receiver, e.sender}];
    if (!st.empty() && !reverse.empty()) return false;
  }
  return true;
}

std::map<Channel, long> cycle_balance(const Lasso& l) {
  std::map<Channel, long> balance;
  for (const auto& e : l.cycle) balance[e.channel()] += e.is_send() ? 1 : -1;
  return balance;
}

bool is_channel_compliant(const Lasso& l, std::size_t unroll) {
  return is_channel_compliant(l.unroll(std::max<std::size_t>(unroll, 1)));
}

LassoCheck is_b_bounded(const Lasso& l, std::size_t bound, std::size_t unroll) {
  LassoCheck r;
  r.unrolled = std::max<std::size_t>(unroll, 1);
  const auto balance = cycle_balance(l);
  const bool grows = std::any_of(balance.begin(), balance.end(),
                                 [](const auto& kv) { return kv.second > 0; });
  if (grows) {
    r.holds = false;
    r.stable = true;
    return r;
  }
  r.holds = is_b_bounded(l.unroll(r.unrolled), bound);
  // Non-positive balance everywhere: occupancy after each iteration never
  // exceeds the occupancy after the first, so further unrollings repeat.
  r.stable = true;
  return r;
}

LassoCheck is_half_duplex_word(const Lasso& l, std::size_t unroll) {
  LassoCheck r;
  r.unrolled = std::max<std::size_t>(unroll, 1);
  r.holds = is_half_duplex_word(l.unroll(r.unrolled));
  if (!r.holds) {
    r.stable = true;
    return r;
  }
  const auto chans = channels_of(l.cycle);
  r.stable = std::none_of(chans.begin(), chans.end(), [&chans](const Channel& c) {
    return chans.count(Channel{c.to, c.from}) != 0;
  });
  return r;
}

}  // namespace chanres
