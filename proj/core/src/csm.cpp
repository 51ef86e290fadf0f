#include "chanres/csm.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "chanres/errors.hpp"
#include "lexer.hpp"

namespace chanres {

void StateMachine::add_state(const StateName& s) {
  if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(s);
}

std::vector<std::string> csm_problems(const Csm& a) {
  std::vector<std::string> out;
  for (const auto& [p, m] : a.machines) {
    const std::set<StateName> declared(m.states.begin(), m.states.end());
    if (m.process != p) out.push_back("machine " + p + " is registered under process " + m.process);
    if (declared.count(m.initial) == 0) out.push_back(p + ": initial state '" + m.initial + "' undeclared");
    for (const auto& f : m.finals) {
      if (declared.count(f) == 0) out.push_back(p + ": final state '" + f + "' undeclared");
    }
    for (const auto& t : m.transitions) {
      if (declared.count(t.from) == 0 || declared.count(t.to) == 0) {
        out.push_back(p + ": transition " + t.from + " -> " + t.to + " uses an undeclared state");
      }
      if (!t.action) continue;
      const Event& e = *t.action;
      if (e.process() != p) out.push_back(p + ": action " + e.to_string() + " belongs to " + e.process());
      const ProcessId& partner = e.is_send() ? e.receiver : e.sender;
      if (partner == p) out.push_back(p + ": action " + e.to_string() + " is a self-message");
      if (a.machines.count(partner) == 0) out.push_back(p + ": partner " + partner + " has no machine");
    }
  }
  return out;
}

namespace {

void require_valid(const Csm& a) {
  if (auto problems = csm_problems(a); !problems.empty()) throw InvalidModel(problems.front());
}

// The CSM with processes, states and messages replaced by indices.
struct Compiled {
  struct Move {
    std::size_t to = 0;
    const Event* action = nullptr;
    std::size_t channel = 0;
    int msg = 0;
  };

  std::vector<ProcessId> procs;
  std::vector<const StateMachine*> machines;
  std::vector<std::size_t> initial;
  std::vector<std::vector<char>> final;
  std::vector<std::vector<std::vector<Move>>> moves;  // [process][state]
  std::vector<Message> messages;

  explicit Compiled(const Csm& a) {
    require_valid(a);
    std::map<ProcessId, std::size_t> pidx;
    for (const auto& [p, m] : a.machines) {
      pidx.emplace(p, procs.size());
      procs.push_back(p);
      machines.push_back(&m);
    }
    std::map<Message, int> mid;
    for (const auto* m : machines) {
      std::map<StateName, std::size_t> sidx;
      for (const auto& s : m->states) sidx.emplace(s, sidx.size());
      initial.push_back(sidx.at(m->initial));
      auto& fin = final.emplace_back(m->states.size(), 0);
      for (const auto& f : m->finals) fin[sidx.at(f)] = 1;
      auto& out = moves.emplace_back(m->states.size());
      for (const auto& t : m->transitions) {
        Move mv;
        mv.to = sidx.at(t.to);
        if (t.action) {
          mv.action = &*t.action;
          mv.channel = channel(pidx.at(t.action->sender), pidx.at(t.action->receiver));
          auto [it, fresh] = mid.emplace(t.action->msg, static_cast<int>(messages.size()));
          if (fresh) messages.push_back(t.action->msg);
          mv.msg = it->second;
        }
        out[sidx.at(t.from)].push_back(mv);
      }
    }
  }

  std::size_t size() const { return procs.size(); }
  std::size_t channel(std::size_t p, std::size_t q) const { return p * procs.size() + q; }
  Channel channel_of(std::size_t c) const { return {procs[c / size()], procs[c % size()]}; }
};

struct Conf {
  std::vector<std::size_t> local;
  std::vector<std::vector<int>> queues;

  bool operator==(const Conf&) const = default;

  std::string local_key() const {
    std::string k;
    for (auto s : local) k += std::to_string(s) + ',';
    return k;
  }
  std::string key() const {
    std::string k = local_key();
    for (const auto& q : queues) {
      k += '|';
      for (int m : q) k += std::to_string(m) + ',';
    }
    return k;
  }
};

Conf initial_conf(const Compiled& c) {
  return {c.initial, std::vector<std::vector<int>>(c.size() * c.size())};
}

bool can_fire(const Conf& x, const Compiled::Move& mv) {
  if (mv.action == nullptr || mv.action->is_send()) return true;
  const auto& q = x.queues[mv.channel];
  return !q.empty() && q.front() == mv.msg;
}

Conf fire(const Conf& x, std::size_t p, const Compiled::Move& mv) {
  Conf y = x;
  y.local[p] = mv.to;
  if (mv.action != nullptr) {
    auto& q = y.queues[mv.channel];
    if (mv.action->is_send()) {
      q.push_back(mv.msg);
    } else {
      q.erase(q.begin());
    }
  }
  return y;
}

bool process_enabled(const Compiled& c, const Conf& x, std::size_t p) {
  const auto& out = c.moves[p][x.local[p]];
  return std::any_of(out.begin(), out.end(), [&](const auto& mv) { return can_fire(x, mv); });
}

bool all_final(const Compiled& c, const Conf& x) {
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (!c.final[p][x.local[p]]) return false;
  }
  return true;
}

std::map<Channel, std::vector<Message>> queues_of(const Compiled& c, const Conf& x) {
  std::map<Channel, std::vector<Message>> out;
  for (std::size_t ch = 0; ch < x.queues.size(); ++ch) {
    if (x.queues[ch].empty()) continue;
    auto& q = out[c.channel_of(ch)];
    for (int m : x.queues[ch]) q.push_back(c.messages[static_cast<std::size_t>(m)]);
  }
  return out;
}

Configuration from_conf(const Compiled& c, const Conf& x) {
  Configuration out;
  for (std::size_t p = 0; p < c.size(); ++p) out.states[c.procs[p]] = c.machines[p]->states[x.local[p]];
  out.queues = queues_of(c, x);
  return out;
}

}  // namespace

Configuration initial_configuration(const Csm& a) {
  const Compiled c(a);
  return from_conf(c, initial_conf(c));
}

Configuration step(const Csm& a, const Configuration& cfg, const ProcessId& process, std::size_t index) {
  require_valid(a);
  auto m = a.machines.find(process);
  if (m == a.machines.end()) throw NoSuchTransition("no machine for process " + process);
  const auto& ts = m->second.transitions;
  if (index >= ts.size()) throw NoSuchTransition(process + " has no transition #" + std::to_string(index));
  const Transition& t = ts[index];
  auto cur = cfg.states.find(process);
  if (cur == cfg.states.end() || cur->second != t.from) {
    throw NoSuchTransition(process + " is not in state " + t.from);
  }
  Configuration out = cfg;
  out.states[process] = t.to;
  if (!t.action) return out;
  const Event& e = *t.action;
  const Channel ch = e.channel();
  if (e.is_send()) {
    out.queues[ch].push_back(e.msg);
    return out;
  }
  auto q = out.queues.find(ch);
  if (q == out.queues.end() || q->second.empty()) throw BlockedReceive("channel " + ch.to_string() + " is empty");
  if (q->second.front() != e.msg) {
    throw BlockedReceive("channel " + ch.to_string() + " holds " + q->second.front() + ", not " + e.msg);
  }
  q->second.erase(q->second.begin());
  if (q->second.empty()) out.queues.erase(q);
  return out;
}

Configuration step(const Csm& a, const Configuration& cfg, const Event& e) {
  auto m = a.machines.find(e.process());
  if (m == a.machines.end()) throw NoSuchTransition("no machine for process " + e.process());
  const auto& ts = m->second.transitions;
  auto cur = cfg.states.find(e.process());
  std::optional<std::size_t> candidate;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (cur != cfg.states.end() && ts[i].from == cur->second && ts[i].action == e) {
      candidate = i;
      break;
    }
  }
  if (!candidate) throw NoSuchTransition(e.process() + " has no " + e.to_string() + " transition here");
  return step(a, cfg, e.process(), *candidate);
}

namespace {

class Explorer {
 public:
  Explorer(const Compiled& c, std::size_t depth, std::size_t cap, std::size_t budget)
      : c_(c), depth_(depth), cap_(cap), budget_(budget) {}

  ExplorationResult run() {
    result_.depth = depth_;
    result_.channel_cap = cap_;
    path_.push_back(initial_conf(c_));
    dfs();
    result_.configurations = seen_.size();
    result_.maximal.assign(maximal_.begin(), maximal_.end());
    result_.lassos.assign(lassos_.begin(), lassos_.end());
    return std::move(result_);
  }

 private:
  struct StepTaken {
    std::size_t process;
    const Compiled::Move* move;
  };

  Word events(std::size_t from, std::size_t to) const {
    Word w;
    for (std::size_t i = from; i < to; ++i) {
      if (steps_[i].move->action != nullptr) w.push_back(*steps_[i].move->action);
    }
    return w;
  }

  // The cycle steps_[i..) can be repeated forever from the current
  // configuration: channels it reads from are unchanged, the rest only grew.
  bool repeatable(std::size_t i, std::map<Channel, long>& growth) const {
    const Conf& now = path_.back();
    std::vector<char> reads(now.queues.size(), 0);
    std::vector<long> sends(now.queues.size(), 0);
    for (std::size_t s = i; s < steps_.size(); ++s) {
      const auto* a = steps_[s].move->action;
      if (a == nullptr) continue;
      if (a->is_send()) {
        ++sends[steps_[s].move->channel];
      } else {
        reads[steps_[s].move->channel] = 1;
      }
    }
    for (std::size_t ch = 0; ch < now.queues.size(); ++ch) {
      if (reads[ch]) {
        if (now.queues[ch] != path_[i].queues[ch]) return false;
      } else if (sends[ch] > 0) {
        growth[c_.channel_of(ch)] = sends[ch];
      }
    }
    return true;
  }

  // Weak fairness: replay the cycle once more; a process enabled at every
  // configuration of the replay must take part in it.
  bool fair(std::size_t i) const {
    std::vector<char> moves(c_.size(), 0);
    for (std::size_t s = i; s < steps_.size(); ++s) moves[steps_[s].process] = 1;
    std::vector<char> always(c_.size(), 1);
    Conf x = path_.back();
    auto mark = [&]() {
      for (std::size_t p = 0; p < c_.size(); ++p) {
        if (!moves[p] && !process_enabled(c_, x, p)) always[p] = 0;
      }
    };
    mark();
    for (std::size_t s = i; s < steps_.size(); ++s) {
      x = fire(x, steps_[s].process, *steps_[s].move);
      mark();
    }
    for (std::size_t p = 0; p < c_.size(); ++p) {
      if (!moves[p] && always[p]) return false;
    }
    return true;
  }

  bool overfull(const Conf& x) const {
    return std::any_of(x.queues.begin(), x.queues.end(), [&](const auto& q) { return q.size() > cap_; });
  }

  void dfs() {
    if (++visited_ > budget_) throw BudgetExceeded("CSM exploration exceeded its run budget", budget_);
    const Conf& here = path_.back();
    seen_.insert(here.key());
    if (all_final(c_, here)) maximal_.insert({events(0, steps_.size()), queues_of(c_, here)});

    auto& earlier = by_local_[here.local_key()];
    for (auto it = earlier.rbegin(); it != earlier.rend(); ++it) {
      const std::size_t i = *it;
      if (events(i, steps_.size()).empty()) {
        if (path_[i] == here) return;  // silent loop
        continue;
      }
      std::map<Channel, long> growth;
      if (repeatable(i, growth) && fair(i)) {
        lassos_.insert({Lasso{events(0, i), events(i, steps_.size())}, std::move(growth)});
        break;
      }
    }

    if (steps_.size() >= depth_) {
      result_.depth_hit = true;
      return;
    }
    if (overfull(here)) {
      result_.cap_hit = true;
      if (!result_.cap_witness) result_.cap_witness = events(0, steps_.size());
      return;
    }
    earlier.push_back(path_.size() - 1);
    for (std::size_t p = 0; p < c_.size(); ++p) {
      for (const auto& mv : c_.moves[p][path_.back().local[p]]) {
        if (!can_fire(path_.back(), mv)) continue;
        path_.push_back(fire(path_.back(), p, mv));
        steps_.push_back({p, &mv});
        dfs();
        steps_.pop_back();
        path_.pop_back();
      }
    }
    earlier.pop_back();
  }

  const Compiled& c_;
  std::size_t depth_;
  std::size_t cap_;
  std::size_t budget_;
  std::size_t visited_ = 0;
  std::vector<Conf> path_;
  std::vector<StepTaken> steps_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_local_;
  std::unordered_set<std::string> seen_;
  std::set<MaximalTrace> maximal_;
  std::set<LassoTrace> lassos_;
  ExplorationResult result_;
};

}  // namespace

ExplorationResult explore(const Csm& a, std::size_t depth, std::size_t channel_cap, std::size_t budget) {
  const Compiled c(a);
  return Explorer(c, depth, channel_cap, budget).run();
}

namespace {

struct Checked {
  Word word;
  /// A prefix of an infinite run rather than a maximal finite trace.
  bool from_lasso = false;
};

bool shorter(const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; }

std::string bounds_note(const CsmBounds& b) {
  return "no violation within depth " + std::to_string(b.depth) + ", channel cap " + std::to_string(b.channel_cap);
}

RestrictionVerdict csm_half_duplex(const std::vector<Checked>& traces, const CsmBounds& bounds) {
  RestrictionVerdict v;
  v.property = Property::HalfDuplex;
  std::optional<CrossingPair> best;
  for (const auto& t : traces) {
    auto bad = half_duplex_word_witness(t.word);
    if (bad && (!best || shorter(bad->prefix, best->prefix))) best = std::move(bad);
  }
  if (best) {
    v.holds = false;
    v.note = "both channels between " + best->first.sender + " and " + best->first.receiver + " are non-empty";
    v.witness = std::move(*best);
  } else {
    v.holds = true;
    v.bounded_claim = true;
    v.note = bounds_note(bounds);
  }
  return v;
}

RestrictionVerdict csm_exist_bound(const ExplorationResult& ex, const std::vector<Checked>& traces,
                                   const CsmBounds& bounds) {
  RestrictionVerdict v;
  v.property = Property::ExistBounded;
  const LassoTrace* pump = nullptr;
  for (const auto& l : ex.lassos) {
    if (!l.pumping()) continue;
    const auto len = l.lasso.stem.size() + l.lasso.cycle.size();
    if (pump == nullptr || len < pump->lasso.stem.size() + pump->lasso.cycle.size()) pump = &l;
  }
  if (pump != nullptr) {
    auto top = pump->growth.begin();
    for (auto it = pump->growth.begin(); it != pump->growth.end(); ++it) {
      if (it->second > top->second) top = it;
    }
    v.holds = false;
    v.witness = Pumping{pump->lasso, top->first, top->second};
    v.note = "a fair cycle adds " + std::to_string(top->second) + " message(s) to " + top->first.to_string() +
             " per iteration that are never received; no bound B exists";
    return v;
  }

  std::map<std::string, std::optional<std::size_t>> cache;
  std::size_t worst = 0;
  const Checked* failed = nullptr;
  for (const auto& t : traces) {
    const PrefixMsc m = msc_of(t.word);
    auto [it, fresh] = cache.emplace(canonical_form(m), std::nullopt);
    if (fresh) {
      auto b = min_existential_bound(m, bounds.max_b);
      it->second = b ? std::optional<std::size_t>(b->bound) : std::nullopt;
    }
    if (!it->second) {
      // Maximal traces refute outright; lasso prefixes only up to unrolling.
      if (failed == nullptr || (failed->from_lasso && !t.from_lasso)) failed = &t;
      continue;
    }
    worst = std::max(worst, *it->second);
  }
  if (failed != nullptr) {
    v.holds = false;
    v.parameter = bounds.max_b;
    v.bounded_claim = failed->from_lasso;
    v.witness = failed->word;
    v.note = failed->from_lasso ? "a lasso unrolled " + std::to_string(bounds.unroll) + " times needs more than " +
                                      std::to_string(bounds.max_b.value_or(0)) + " messages per channel"
                                : "a maximal trace needs more than " + std::to_string(bounds.max_b.value_or(0)) +
                                      " messages per channel in every schedule";
    return v;
  }
  v.holds = true;
  v.parameter = worst;
  v.bounded_claim = true;
  v.note = bounds_note(bounds);
  return v;
}

RestrictionVerdict csm_sync(const std::vector<Checked>& traces, const CsmBounds& bounds) {
  RestrictionVerdict v;
  v.property = Property::Synchronisable;
  std::map<std::string, std::optional<std::size_t>> cache;
  std::size_t worst = 1;
  for (const auto& t : traces) {
    const PrefixMsc m = msc_of(t.word);
    auto [it, fresh] = cache.emplace(canonical_form(m), std::nullopt);
    if (fresh) {
      auto d = bounds.k ? is_k_synchronous(m, *bounds.k) : min_sync_k(m);
      it->second = d ? std::optional<std::size_t>(d->k) : std::nullopt;
    }
    if (!it->second) {
      // A prefix without a decomposition rules out every extension.
      v.holds = false;
      v.parameter = bounds.k;
      v.witness = t.word;
      v.note = bounds.k ? "trace is not " + std::to_string(*bounds.k) + "-synchronous"
                        : "trace is not synchronisable for any k";
      return v;
    }
    worst = std::max(worst, *it->second);
  }
  v.holds = true;
  v.parameter = bounds.k.value_or(worst);
  v.bounded_claim = true;
  v.note = bounds_note(bounds);
  return v;
}

// The unrolled lasso followed by the receives, in channel order, of every
// message still pending on a channel the cycle reads from. Later iterations
// consume those messages, so they must not count as stuck in the channel.
Word drain_read_channels(const Lasso& l, std::size_t unroll) {
  Word w = l.unroll(unroll);
  std::set<Channel> read;
  for (const auto& e : l.cycle) {
    if (e.is_receive()) read.insert(e.channel());
  }
  std::map<Channel, std::deque<Message>> pending;
  for (const auto& e : w) {
    auto& q = pending[e.channel()];
    if (e.is_send()) {
      q.push_back(e.msg);
    } else if (!q.empty()) {
      q.pop_front();
    }
  }
  for (const auto& ch : read) {
    for (const auto& m : pending[ch]) w.push_back(Event::receive(ch.from, ch.to, m));
  }
  return w;
}

}  // namespace

CsmClassification classify_csm(const Csm& a, const CsmBounds& bounds) {
  CsmClassification out;
  out.exploration = explore(a, bounds.depth, bounds.channel_cap);
  std::vector<Checked> traces;
  for (const auto& m : out.exploration.maximal) traces.push_back({m.word, false});
  std::vector<Checked> drained = traces;
  for (const auto& l : out.exploration.lassos) {
    traces.push_back({l.lasso.unroll(bounds.unroll), true});
    drained.push_back({drain_read_channels(l.lasso, bounds.unroll), true});
  }
  out.verdicts = {csm_half_duplex(traces, bounds), csm_exist_bound(out.exploration, drained, bounds),
                  csm_sync(traces, bounds)};
  return out;
}

std::optional<Deadlock> check_deadlock(const Csm& a, std::size_t depth, std::size_t channel_cap) {
  const Compiled c(a);
  struct Node {
    Conf conf;
    Word trace;
    std::size_t steps = 0;
  };
  std::deque<Node> frontier;
  std::unordered_set<std::string> seen;
  frontier.push_back({initial_conf(c), {}, 0});
  seen.insert(frontier.front().conf.key());
  while (!frontier.empty()) {
    Node n = std::move(frontier.front());
    frontier.pop_front();
    bool any = false;
    for (std::size_t p = 0; p < c.size() && !any; ++p) any = process_enabled(c, n.conf, p);
    const bool empty = std::all_of(n.conf.queues.begin(), n.conf.queues.end(), [](const auto& q) { return q.empty(); });
    if (!any && !(all_final(c, n.conf) && empty)) return Deadlock{from_conf(c, n.conf), n.trace};
    if (n.steps >= depth) continue;
    if (std::any_of(n.conf.queues.begin(), n.conf.queues.end(), [&](const auto& q) { return q.size() > channel_cap; })) {
      continue;
    }
    for (std::size_t p = 0; p < c.size(); ++p) {
      for (const auto& mv : c.moves[p][n.conf.local[p]]) {
        if (!can_fire(n.conf, mv)) continue;
        Node next{fire(n.conf, p, mv), n.trace, n.steps + 1};
        if (mv.action != nullptr) next.trace.push_back(*mv.action);
        if (seen.insert(next.conf.key()).second) frontier.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

Csm project_bmsc(const PrefixMsc& m, std::string name) {
  Csm out;
  out.name = std::move(name);
  for (const auto& p : m.processes()) {
    StateMachine sm;
    sm.process = p;
    const auto& row = m.row(p);
    for (std::size_t i = 0; i <= row.size(); ++i) sm.add_state("q" + std::to_string(i));
    sm.initial = "q0";
    sm.finals.insert(sm.states.back());
    for (std::size_t i = 0; i < row.size(); ++i) sm.transitions.push_back({sm.states[i], m.label(row[i]), sm.states[i + 1]});
    out.machines.emplace(p, std::move(sm));
  }
  return out;
}

Csm parse_csm(std::string_view text) {
  using detail::Lexer;
  using detail::Token;
  Lexer lex(text);
  lex.expect("csm");
  Csm a;
  a.name = lex.expect_ident("CSM name");
  lex.expect("{");
  while (!lex.accept("}")) {
    const Token mt = lex.peek();
    lex.expect("machine");
    StateMachine sm;
    const Token pt = lex.peek();
    sm.process = lex.expect_ident("process name");
    if (a.machines.count(sm.process) != 0) Lexer::fail_at(pt, "machine " + sm.process + " declared twice");
    bool has_initial = false;
    lex.expect("{");
    while (!lex.accept("}")) {
      const Token t = lex.peek();
      if (lex.accept("initial")) {
        if (has_initial) Lexer::fail_at(t, "second initial state for " + sm.process);
        has_initial = true;
        sm.initial = lex.expect_ident("state name");
        sm.add_state(sm.initial);
        lex.expect(";");
      } else if (lex.accept("final")) {
        while (!lex.accept(";")) {
          auto f = lex.expect_ident("state name");
          sm.add_state(f);
          sm.finals.insert(std::move(f));
        }
      } else {
        Transition tr;
        tr.from = lex.expect_ident("state name, 'initial' or 'final'");
        lex.expect("->");
        tr.to = lex.expect_ident("state name");
        lex.expect(":");
        const Token at = lex.peek();
        if (lex.accept("eps")) {
          // epsilon
        } else if (lex.accept("!")) {
          const auto peer = lex.expect_ident("receiver");
          tr.action = Event::send(sm.process, peer, lex.expect_ident("message"));
        } else if (lex.accept("?")) {
          const auto peer = lex.expect_ident("sender");
          tr.action = Event::receive(peer, sm.process, lex.expect_ident("message"));
        } else {
          Lexer::fail_at(at, "expected '!', '?' or 'eps'");
        }
        if (tr.action && (tr.action->sender == tr.action->receiver)) Lexer::fail_at(at, "self-message");
        lex.expect(";");
        sm.add_state(tr.from);
        sm.add_state(tr.to);
        sm.transitions.push_back(std::move(tr));
      }
    }
    if (!has_initial) Lexer::fail_at(mt, "machine " + sm.process + " has no initial state");
    a.machines.emplace(sm.process, std::move(sm));
  }
  if (!lex.at_end()) lex.fail("trailing input after csm");
  for (const auto& [p, sm] : a.machines) {
    for (const auto& t : sm.transitions) {
      if (!t.action) continue;
      const auto& peer = t.action->is_send() ? t.action->receiver : t.action->sender;
      if (a.machines.count(peer) == 0) throw InvalidModel(p + ": partner " + peer + " has no machine");
    }
  }
  return a;
}

std::string print_csm(const Csm& a) {
  std::ostringstream out;
  out << "csm " << a.name << " {\n";
  for (const auto& [p, sm] : a.machines) {
    out << "  machine " << p << " {\n    initial " << sm.initial << " ;";
    if (!sm.finals.empty()) {
      out << " final";
      for (const auto& s : sm.states) {
        if (sm.finals.count(s) != 0) out << ' ' << s;
      }
      out << " ;";
    }
    out << '\n';
    for (const auto& t : sm.transitions) {
      out << "    " << t.from << " -> " << t.to << " : ";
      if (!t.action) {
        out << "eps";
      } else if (t.action->is_send()) {
        out << "! " << t.action->receiver << ' ' << t.action->msg;
      } else {
        out << "? " << t.action->sender << ' ' << t.action->msg;
      }
      out << " ;\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace chanres
