#include "chanres/indist.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_set>

#include "chanres/errors.hpp"

namespace chanres {

namespace {

bool send_send(const Event& a, const Event& b) { return a.sender != b.sender; }

bool receive_receive(const Event& a, const Event& b) { return a.receiver != b.receiver; }

// snd(P,Q) next to rcv(R,S): P != S and the channels differ.
bool send_receive(const Event& snd, const Event& rcv) {
  return snd.sender != rcv.receiver && (snd.sender != rcv.sender || snd.receiver != rcv.receiver);
}

}  // namespace

std::vector<SwapRule> legal_swaps(const Word& w) {
  std::vector<SwapRule> out;
  // Sends minus receives per channel over w[0..i).
  std::map<Channel, long> pending;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Event& a = w[i];
    const Event& b = w[i + 1];
    int rule = 0;
    if (a.is_send() && b.is_send()) {
      if (send_send(a, b)) rule = 1;
    } else if (a.is_receive() && b.is_receive()) {
      if (receive_receive(a, b)) rule = 2;
    } else {
      const Event& snd = a.is_send() ? a : b;
      const Event& rcv = a.is_send() ? b : a;
      if (send_receive(snd, rcv)) {
        rule = 3;
      } else if (snd.channel() == rcv.channel() && pending[snd.channel()] > 0) {
        rule = 4;
      }
    }
    if (rule != 0) out.push_back({rule, i});
    pending[a.channel()] += a.is_send() ? 1 : -1;
  }
  return out;
}

Word apply_swap(const Word& w, const SwapRule& s) {
  Word out = w;
  std::swap(out.at(s.position), out.at(s.position + 1));
  return out;
}

std::set<Word> one_step_neighbors(const Word& w) {
  std::set<Word> out;
  for (const auto& s : legal_swaps(w)) out.insert(apply_swap(w, s));
  return out;
}

namespace {

// Events interned to single bytes so closure states are cheap strings.
struct Alphabet {
  std::vector<Event> events;
  std::map<Event, char> codes;

  std::string encode(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (const auto& e : w) {
      auto [it, fresh] = codes.emplace(e, static_cast<char>(events.size()));
      if (fresh) {
        if (events.size() == 256) throw BudgetExceeded("closure alphabet exceeds 256 events", 256);
        events.push_back(e);
      }
      s.push_back(it->second);
    }
    return s;
  }

  Word decode(const std::string& s) const {
    Word w;
    w.reserve(s.size());
    for (char c : s) w.push_back(events[static_cast<unsigned char>(c)]);
    return w;
  }
};

}  // namespace

std::set<Word> closure(const std::set<Word>& words, std::size_t max_len, std::size_t budget) {
  Alphabet alpha;
  std::unordered_set<std::string> seen;
  std::deque<std::string> frontier;
  for (const auto& w : words) {
    if (w.size() > max_len) continue;
    auto code = alpha.encode(w);
    if (seen.insert(code).second) frontier.push_back(std::move(code));
  }
  while (!frontier.empty()) {
    const std::string code = std::move(frontier.front());
    frontier.pop_front();
    const Word w = alpha.decode(code);
    for (const auto& s : legal_swaps(w)) {
      std::string next = code;
      std::swap(next[s.position], next[s.position + 1]);
      if (seen.insert(next).second) {
        if (seen.size() > budget) throw BudgetExceeded("closure exceeded its word budget", budget);
        frontier.push_back(std::move(next));
      }
    }
  }
  std::set<Word> out;
  for (const auto& code : seen) out.insert(alpha.decode(code));
  return out;
}

bool equiv_mod_indist(const std::set<Word>& a, const std::set<Word>& b, std::size_t budget) {
  std::size_t longest = 0;
  for (const auto& w : a) longest = std::max(longest, w.size());
  for (const auto& w : b) longest = std::max(longest, w.size());
  return closure(a, longest, budget) == closure(b, longest, budget);
}

}  // namespace chanres
