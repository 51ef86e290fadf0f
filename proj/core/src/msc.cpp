#include "chanres/msc.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "chanres/errors.hpp"
#include "formats.hpp"

namespace chanres {

std::string_view to_string(MscViolation::Kind k) {
  switch (k) {
    case MscViolation::Kind::ProcessMismatch: return "process-mismatch";
    case MscViolation::Kind::LabelMismatch: return "label-mismatch";
    case MscViolation::Kind::UnmatchedReceive: return "unmatched-receive";
    case MscViolation::Kind::Cycle: return "cycle";
    case MscViolation::Kind::Degenerate: return "degenerate";
    case MscViolation::Kind::Fifo: return "fifo";
  }
  return "unknown";
}

PrefixMsc::PrefixMsc(std::vector<Event> labels, std::map<ProcessId, std::vector<NodeId>> rows,
                     std::map<NodeId, NodeId> match)
    : labels_(std::move(labels)), match_(std::move(match)) {
  const std::size_t n = labels_.size();
  proc_of_.assign(n, SIZE_MAX);
  pos_in_row_.assign(n, 0);
  for (auto& [p, nodes] : rows) {
    const std::size_t pi = processes_.size();
    processes_.push_back(p);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const NodeId v = nodes[i];
      if (v >= n) throw InvalidModel("row of " + p + " names node " + std::to_string(v) + " out of range");
      if (proc_of_[v] != SIZE_MAX) throw InvalidModel("node " + std::to_string(v) + " appears in two rows");
      proc_of_[v] = pi;
      pos_in_row_[v] = i;
    }
    rows_.push_back(std::move(nodes));
  }
  for (NodeId v = 0; v < n; ++v) {
    if (proc_of_[v] == SIZE_MAX) throw InvalidModel("node " + std::to_string(v) + " is in no row");
  }
  partner_.assign(n, std::nullopt);
  std::set<NodeId> images;
  for (const auto& [s, r] : match_) {
    if (s >= n || r >= n) throw InvalidModel("matching refers to a node out of range");
    if (!images.insert(r).second) throw InvalidModel("matching is not injective");
    partner_[s] = r;
    partner_[r] = s;
  }

  // Reachability over the successor relation (next on row, send -> receive).
  const std::size_t words = (n + 63) / 64;
  closure_.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<NodeId>> succ(n);
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) succ[row[i]].push_back(row[i + 1]);
  }
  for (const auto& [s, r] : match_) succ[s].push_back(r);
  for (NodeId src = 0; src < n; ++src) {
    auto& bits = closure_[src];
    std::vector<NodeId> stack{src};
    bits[src / 64] |= std::uint64_t{1} << (src % 64);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : succ[v]) {
        auto& word = bits[w / 64];
        const auto bit = std::uint64_t{1} << (w % 64);
        if ((word & bit) == 0) {
          word |= bit;
          stack.push_back(w);
        }
      }
    }
  }
}

const std::vector<NodeId>& PrefixMsc::row(const ProcessId& p) const {
  auto it = std::lower_bound(processes_.begin(), processes_.end(), p);
  if (it == processes_.end() || *it != p) throw std::out_of_range("no process " + p);
  return rows_[static_cast<std::size_t>(it - processes_.begin())];
}

std::optional<NodeId> PrefixMsc::partner(NodeId n) const { return partner_.at(n); }

bool PrefixMsc::is_complete() const {
  for (NodeId v = 0; v < size(); ++v) {
    if (!partner_[v]) return false;
  }
  return true;
}

std::size_t PrefixMsc::send_count() const {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(), [](const Event& e) { return e.is_send(); }));
}

bool PrefixMsc::leq(NodeId a, NodeId b) const {
  return (closure_.at(a)[b / 64] >> (b % 64)) & 1U;
}

bool PrefixMsc::enabled(NodeId n, const std::vector<std::size_t>& cut) const {
  const std::size_t p = proc_of_[n];
  if (cut[p] != pos_in_row_[n]) return false;
  if (labels_[n].is_receive()) {
    const auto s = partner_[n];
    if (!s) return false;
    return pos_in_row_[*s] < cut[proc_of_[*s]];
  }
  return true;
}

ValidationReport PrefixMsc::validate() const {
  ValidationReport rep;
  auto add = [&rep](MscViolation::Kind k, std::string d) { rep.violations.push_back({k, std::move(d)}); };
  const std::size_t n = size();

  for (NodeId v = 0; v < n; ++v) {
    if (labels_[v].process() != process(v)) {
      add(MscViolation::Kind::ProcessMismatch,
          "node " + std::to_string(v) + " labelled " + labels_[v].to_string() + " sits on row " + process(v));
    }
  }
  for (const auto& [s, r] : match_) {
    const Event& ls = labels_[s];
    const Event& lr = labels_[r];
    if (!ls.is_send() || !lr.is_receive() || ls.sender != lr.sender || ls.receiver != lr.receiver ||
        ls.msg != lr.msg) {
      add(MscViolation::Kind::LabelMismatch,
          "node " + std::to_string(s) + " (" + ls.to_string() + ") matched to node " + std::to_string(r) + " (" +
              lr.to_string() + ")");
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (labels_[v].is_receive() && !partner_[v]) {
      add(MscViolation::Kind::UnmatchedReceive, "receive node " + std::to_string(v) + " has no send");
    }
  }
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (leq(a, b) && leq(b, a)) {
        add(MscViolation::Kind::Cycle, "nodes " + std::to_string(a) + " and " + std::to_string(b) + " are mutually ordered");
        a = n;
        break;
      }
    }
  }
  // Degeneracy: equal-labelled sends of one process received in swapped order.
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        const NodeId e1 = row[i];
        const NodeId e2 = row[j];
        if (!labels_[e1].is_send() || labels_[e1] != labels_[e2]) continue;
        const auto f1 = partner_[e1];
        const auto f2 = partner_[e2];
        if (f1 && f2 && proc_of_[*f1] == proc_of_[*f2] && pos_in_row_[*f2] <= pos_in_row_[*f1]) {
          add(MscViolation::Kind::Degenerate,
              "sends " + std::to_string(e1) + " and " + std::to_string(e2) + " are received in reverse order");
        }
      }
    }
  }
  // FIFO: per channel, matched sends form a prefix of the send sequence and
  // the receive sequence equals their images in order.
  std::map<Channel, std::vector<NodeId>> sends;
  std::map<Channel, std::vector<NodeId>> receives;
  for (const auto& row : rows_) {
    for (NodeId v : row) {
      (labels_[v].is_send() ? sends : receives)[labels_[v].channel()].push_back(v);
    }
  }
  std::set<Channel> channels;
  for (const auto& [c, _] : sends) channels.insert(c);
  for (const auto& [c, _] : receives) channels.insert(c);
  for (const auto& c : channels) {
    const auto& ss = sends[c];
    const auto& rs = receives[c];
    std::vector<NodeId> images;
    bool unmatched_seen = false;
    bool ok = true;
    for (NodeId s : ss) {
      if (!partner_[s]) {
        unmatched_seen = true;
      } else if (unmatched_seen) {
        ok = false;
      } else {
        images.push_back(*partner_[s]);
      }
    }
    if (images != rs) ok = false;
    if (!ok) add(MscViolation::Kind::Fifo, "channel " + c.to_string() + " does not respect FIFO order");
  }
  return rep;
}

Word word_of(const PrefixMsc& m, const Linearization& order) {
  Word w;
  w.reserve(order.size());
  for (NodeId v : order) w.push_back(m.label(v));
  return w;
}

PrefixMsc msc_of(const Word& w) {
  if (!is_channel_compliant(w)) throw UndefinedMsc("msc(w) is undefined: word is not channel-compliant");
  std::map<ProcessId, std::vector<NodeId>> rows;
  for (const auto& p : processes_of(w)) rows[p];
  for (NodeId i = 0; i < w.size(); ++i) rows[w[i].process()].push_back(i);
  return PrefixMsc(w, std::move(rows), matching(w));
}

namespace {

void enumerate(const PrefixMsc& m, std::vector<std::size_t>& cut, Linearization& prefix,
               const std::function<bool(const Linearization&)>& visit, std::size_t limit, std::size_t& count,
               bool& stop) {
  if (prefix.size() == m.size()) {
    ++count;
    if (!visit(prefix) || count >= limit) stop = true;
    return;
  }
  for (NodeId v = 0; v < m.size() && !stop; ++v) {
    if (!m.enabled(v, cut)) continue;
    const auto p = m.process_index(v);
    ++cut[p];
    prefix.push_back(v);
    enumerate(m, cut, prefix, visit, limit, count, stop);
    prefix.pop_back();
    --cut[p];
  }
}

}  // namespace

std::size_t for_each_linearization(const PrefixMsc& m, const std::function<bool(const Linearization&)>& visit,
                                   std::size_t limit) {
  std::vector<std::size_t> cut(m.processes().size(), 0);
  Linearization prefix;
  std::size_t count = 0;
  bool stop = limit == 0;
  if (!stop) enumerate(m, cut, prefix, visit, limit, count, stop);
  return count;
}

std::vector<Word> linearizations(const PrefixMsc& m, std::size_t limit) {
  std::vector<Word> out;
  for_each_linearization(
      m,
      [&](const Linearization& order) {
        out.push_back(word_of(m, order));
        return true;
      },
      limit);
  return out;
}

namespace {

std::uint64_t count_from(const PrefixMsc& m, std::vector<std::size_t>& cut, std::size_t done,
                         std::map<std::vector<std::size_t>, std::uint64_t>& memo) {
  if (done == m.size()) return 1;
  if (auto it = memo.find(cut); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (std::size_t p = 0; p < cut.size(); ++p) {
    const auto& row = m.row(p);
    if (cut[p] >= row.size() || !m.enabled(row[cut[p]], cut)) continue;
    ++cut[p];
    total += count_from(m, cut, done + 1, memo);
    --cut[p];
  }
  memo.emplace(cut, total);
  return total;
}

}  // namespace

std::uint64_t count_linearizations(const PrefixMsc& m) {
  std::vector<std::size_t> cut(m.processes().size(), 0);
  std::map<std::vector<std::size_t>, std::uint64_t> memo;
  return count_from(m, cut, 0, memo);
}

PrefixMsc concat(const PrefixMsc& m1, const PrefixMsc& m2) {
  if (!m1.is_complete()) throw InvalidModel("left operand of concatenation must be a complete MSC");
  std::vector<Event> labels = m1.labels();
  labels.insert(labels.end(), m2.labels().begin(), m2.labels().end());
  const std::size_t off = m1.size();
  std::map<ProcessId, std::vector<NodeId>> rows;
  for (std::size_t p = 0; p < m1.processes().size(); ++p) rows[m1.processes()[p]] = m1.row(p);
  for (std::size_t p = 0; p < m2.processes().size(); ++p) {
    auto& row = rows[m2.processes()[p]];
    for (NodeId v : m2.row(p)) row.push_back(v + off);
  }
  std::map<NodeId, NodeId> match = m1.matching();
  for (const auto& [s, r] : m2.matching()) match.emplace(s + off, r + off);
  return PrefixMsc(std::move(labels), std::move(rows), std::move(match));
}

std::string canonical_form(const PrefixMsc& m) {
  std::ostringstream out;
  for (std::size_t p = 0; p < m.processes().size(); ++p) {
    const auto& row = m.row(p);
    if (row.empty()) continue;
    out << m.processes()[p] << ':';
    for (NodeId v : row) {
      out << ' ' << m.label(v).to_string();
      if (auto q = m.partner(v)) out << '@' << m.process(*q) << '#' << m.row_position(*q);
    }
    out << ';';
  }
  return out.str();
}

bool isomorphic(const PrefixMsc& a, const PrefixMsc& b) { return canonical_form(a) == canonical_form(b); }

bool satisfies_causal_delivery(const PrefixMsc& m, std::size_t limit) {
  if (m.empty()) return true;
  bool found = false;
  for_each_linearization(
      m,
      [&](const Linearization& order) {
        const Word w = word_of(m, order);
        const auto match = matching(w);
        // Translate word positions back to nodes.
        std::map<NodeId, NodeId> f;
        for (const auto& [i, j] : match) f.emplace(order[i], order[j]);
        for (NodeId a = 0; a < m.size(); ++a) {
          if (!m.is_send(a)) continue;
          for (NodeId b = 0; b < m.size(); ++b) {
            if (a == b || !m.is_send(b) || !m.leq(a, b)) continue;
            if (m.label(a).channel() != m.label(b).channel()) continue;
            auto fb = f.find(b);
            if (fb == f.end()) continue;
            auto fa = f.find(a);
            if (fa == f.end() || !m.leq(fa->second, fb->second)) return true;
          }
        }
        found = true;
        return false;
      },
      limit);
  return found;
}

namespace detail {

PrefixMsc parse_bmsc_body(Lexer& lex) {
  struct Decl {
    ProcessId from;
    ProcessId to;
    Message msg;
    bool sent = false;
    bool received = false;
  };
  std::vector<std::string> order;
  std::map<std::string, Decl> decls;
  std::vector<std::pair<ProcessId, std::vector<std::pair<bool, std::string>>>> rows;

  lex.expect("{");
  while (!lex.accept("}")) {
    if (lex.at_end()) lex.fail("unterminated bmsc body");
    if (lex.peek().text == "msg" && lex.peek(1).kind == TokenKind::Ident && lex.peek(2).text == ":") {
      lex.next();
      const Token id_tok = lex.peek();
      const std::string id = lex.expect_ident("message id");
      lex.expect(":");
      Decl d;
      d.from = lex.expect_ident("sender");
      lex.expect("->");
      d.to = lex.expect_ident("receiver");
      lex.expect(":");
      d.msg = lex.expect_ident("message label");
      lex.expect(";");
      if (d.from == d.to) Lexer::fail_at(id_tok, "message " + id + " has equal sender and receiver");
      if (!decls.emplace(id, d).second) Lexer::fail_at(id_tok, "message " + id + " declared twice");
      order.push_back(id);
      continue;
    }
    const Token ptok = lex.peek();
    const ProcessId p = lex.expect_ident("process name");
    lex.expect(":");
    std::vector<std::pair<bool, std::string>> items;
    while (!lex.accept(";")) {
      const Token t = lex.peek();
      bool is_send = false;
      if (lex.accept("!")) {
        is_send = true;
      } else if (!lex.accept("?")) {
        Lexer::fail_at(t, "expected '!k', '?k' or ';' in row of " + p);
      }
      const std::string id = lex.expect_ident("message id");
      auto it = decls.find(id);
      if (it == decls.end()) Lexer::fail_at(t, "undeclared message " + id);
      Decl& d = it->second;
      if (is_send) {
        if (d.from != p) Lexer::fail_at(t, "message " + id + " is sent by " + d.from + ", not " + p);
        if (d.sent) Lexer::fail_at(t, "message " + id + " sent twice");
        d.sent = true;
      } else {
        if (d.to != p) Lexer::fail_at(t, "message " + id + " is received by " + d.to + ", not " + p);
        if (d.received) Lexer::fail_at(t, "message " + id + " received twice");
        d.received = true;
      }
      items.emplace_back(is_send, id);
    }
    for (const auto& r : rows) {
      if (r.first == p) Lexer::fail_at(ptok, "row for " + p + " given twice");
    }
    rows.emplace_back(p, std::move(items));
  }
  for (const auto& id : order) {
    if (!decls[id].sent) lex.fail("message " + id + " is never sent");
  }

  // Node ids follow message declaration order: send, then receive.
  std::vector<Event> labels;
  std::map<std::string, std::pair<NodeId, std::optional<NodeId>>> ids;
  std::map<NodeId, NodeId> match;
  for (const auto& id : order) {
    const Decl& d = decls[id];
    const NodeId s = labels.size();
    labels.push_back(Event::send(d.from, d.to, d.msg));
    std::optional<NodeId> r;
    if (d.received) {
      r = labels.size();
      labels.push_back(Event::receive(d.from, d.to, d.msg));
      match.emplace(s, *r);
    }
    ids.emplace(id, std::make_pair(s, r));
  }
  std::map<ProcessId, std::vector<NodeId>> row_map;
  for (const auto& id : order) {
    row_map[decls[id].from];
    row_map[decls[id].to];
  }
  for (const auto& [p, items] : rows) {
    auto& row = row_map[p];
    for (const auto& [is_send, id] : items) {
      const auto& [s, r] = ids[id];
      row.push_back(is_send ? s : *r);
    }
  }
  return PrefixMsc(std::move(labels), std::move(row_map), std::move(match));
}

std::string print_bmsc_body(const PrefixMsc& m, std::size_t indent) {
  const std::string pad(indent + 2, ' ');
  std::map<NodeId, std::size_t> msg_id;
  if (m.processes().empty()) return "{ }";
  std::ostringstream out;
  out << "{\n";
  std::size_t k = 0;
  for (NodeId v = 0; v < m.size(); ++v) {
    if (!m.is_send(v)) continue;
    msg_id[v] = ++k;
    const Event& e = m.label(v);
    out << pad << "msg " << k << " : " << e.sender << " -> " << e.receiver << " : " << e.msg << " ;\n";
  }
  for (std::size_t p = 0; p < m.processes().size(); ++p) {
    out << pad << m.processes()[p] << " :";
    for (NodeId v : m.row(p)) {
      if (m.is_send(v)) {
        out << " !" << msg_id[v];
      } else {
        auto s = m.partner(v);
        if (!s) throw InvalidModel("cannot print a receive node without a matching send");
        out << " ?" << msg_id[*s];
      }
    }
    out << " ;\n";
  }
  out << std::string(indent, ' ') << "}";
  return out.str();
}

}  // namespace detail

NamedMsc parse_bmsc(std::string_view text) {
  detail::Lexer lex(text);
  lex.expect("bmsc");
  NamedMsc out;
  out.name = lex.expect_ident("bmsc name");
  out.msc = detail::parse_bmsc_body(lex);
  if (!lex.at_end()) lex.fail("trailing input after bmsc");
  return out;
}

std::string print_bmsc(const PrefixMsc& m, std::string_view name) {
  return "bmsc " + std::string(name) + " " + detail::print_bmsc_body(m, 0) + "\n";
}

}  // namespace chanres
