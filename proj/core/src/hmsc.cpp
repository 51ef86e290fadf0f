#include "chanres/hmsc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "chanres/errors.hpp"
#include "formats.hpp"

namespace chanres {

std::size_t Hmsc::add_vertex(std::string name, PrefixMsc label) {
  if (index_of(name)) throw InvalidModel("duplicate vertex " + name);
  vertices_.push_back({std::move(name), std::move(label)});
  succ_.emplace_back();
  return vertices_.size() - 1;
}

void Hmsc::add_edge(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw InvalidModel("edge refers to a missing vertex");
  auto& s = succ_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

void Hmsc::set_initial(std::size_t v) {
  if (v >= size()) throw InvalidModel("initial vertex missing");
  initial_ = v;
}

void Hmsc::add_terminal(std::size_t v) {
  if (v >= size()) throw InvalidModel("terminal vertex missing");
  terminals_.insert(v);
}

std::optional<std::size_t> Hmsc::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> Hmsc::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t v = 0; v < size(); ++v) {
    for (auto w : succ_[v]) out.emplace_back(v, w);
  }
  return out;
}

std::string_view to_string(HmscViolation::Kind k) {
  switch (k) {
    case HmscViolation::Kind::NoInitial: return "no-initial";
    case HmscViolation::Kind::Unreachable: return "unreachable";
    case HmscViolation::Kind::NotCompletable: return "not-completable";
    case HmscViolation::Kind::BadLabel: return "bad-label";
    case HmscViolation::Kind::IncompleteLabel: return "incomplete-label";
  }
  return "unknown";
}

namespace {

std::vector<bool> reachable_from(const Hmsc& h, std::size_t start) {
  std::vector<bool> seen(h.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : h.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

HmscValidationReport validate_hmsc(const Hmsc& h) {
  HmscValidationReport rep;
  for (const auto& v : h.vertices()) {
    const auto r = v.label.validate();
    for (const auto& viol : r.violations) {
      rep.violations.push_back({HmscViolation::Kind::BadLabel, v.name,
                                std::string(to_string(viol.kind)) + ": " + viol.detail});
    }
    if (r.ok() && !v.label.is_complete()) {
      rep.violations.push_back({HmscViolation::Kind::IncompleteLabel, v.name, "label has an unmatched send"});
    }
  }
  if (!h.initial()) {
    rep.violations.push_back({HmscViolation::Kind::NoInitial, "", "no initial vertex"});
    return rep;
  }
  const auto reach = reachable_from(h, *h.initial());
  // A path ending in v can be completed iff v reaches a terminal or a cycle.
  std::vector<bool> on_cycle(h.size(), false);
  for (std::size_t v = 0; v < h.size(); ++v) {
    for (auto w : h.successors(v)) {
      if (reachable_from(h, w)[v]) on_cycle[v] = true;
    }
  }
  for (std::size_t v = 0; v < h.size(); ++v) {
    if (!reach[v]) {
      rep.violations.push_back({HmscViolation::Kind::Unreachable, h.vertex(v).name, "not reachable from the initial vertex"});
      continue;
    }
    const auto from_v = reachable_from(h, v);
    bool completable = false;
    for (std::size_t w = 0; w < h.size() && !completable; ++w) {
      completable = from_v[w] && (h.is_terminal(w) || on_cycle[w]);
    }
    if (!completable) {
      rep.violations.push_back(
          {HmscViolation::Kind::NotCompletable, h.vertex(v).name, "no maximal path continues through this vertex"});
    }
  }
  return rep;
}

std::vector<HmscPath> paths(const Hmsc& h, std::size_t max_vertices) {
  std::vector<HmscPath> finite;
  std::vector<HmscPath> lassos;
  if (!h.initial() || max_vertices == 0) return finite;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> walk_finite = [&](std::size_t v) {
    path.push_back(v);
    if (h.is_terminal(v)) finite.push_back({path, {}});
    if (path.size() < max_vertices) {
      for (auto w : h.successors(v)) walk_finite(w);
    }
    path.pop_back();
  };
  walk_finite(*h.initial());

  std::vector<bool> on_path(h.size(), false);
  std::function<void(std::size_t)> walk_simple = [&](std::size_t v) {
    path.push_back(v);
    on_path[v] = true;
    for (auto w : h.successors(v)) {
      if (on_path[w]) {
        const auto at = static_cast<long>(std::find(path.begin(), path.end(), w) - path.begin());
        lassos.push_back({std::vector<std::size_t>(path.begin(), path.begin() + at),
                          std::vector<std::size_t>(path.begin() + at, path.end())});
      } else if (path.size() < max_vertices) {
        walk_simple(w);
      }
    }
    on_path[v] = false;
    path.pop_back();
  };
  walk_simple(*h.initial());
  finite.insert(finite.end(), lassos.begin(), lassos.end());
  return finite;
}

PrefixMsc msc_of_path(const Hmsc& h, const HmscPath& p, std::size_t unroll) {
  PrefixMsc acc;
  for (auto v : p.stem) acc = concat(acc, h.vertex(v).label);
  if (p.is_lasso()) {
    for (std::size_t i = 0; i < unroll; ++i) {
      for (auto v : p.cycle) acc = concat(acc, h.vertex(v).label);
    }
  }
  return acc;
}

HmscLanguage hmsc_language(const Hmsc& h, std::size_t max_len, std::size_t unroll, std::size_t budget) {
  HmscLanguage lang;
  if (!h.initial()) return lang;
  auto add_all = [&](const PrefixMsc& m, std::set<Word>& into) {
    for_each_linearization(m, [&](const Linearization& order) {
      into.insert(word_of(m, order));
      if (lang.words.size() + lang.prefixes.size() > budget) {
        throw BudgetExceeded("HMSC language exceeded its word budget", budget);
      }
      return true;
    });
  };

  // Distinct path MSCs, explored as (vertex, canonical MSC) states so that
  // cycles of empty vertices terminate.
  std::set<std::pair<std::size_t, std::string>> seen;
  std::map<std::string, PrefixMsc> finals;
  std::vector<std::pair<std::size_t, PrefixMsc>> stack;
  const PrefixMsc first = h.vertex(*h.initial()).label;
  if (first.size() <= max_len) stack.emplace_back(*h.initial(), first);
  while (!stack.empty()) {
    auto [v, m] = std::move(stack.back());
    stack.pop_back();
    const std::string key = canonical_form(m);
    if (!seen.emplace(v, key).second) continue;
    if (h.is_terminal(v)) finals.emplace(key, m);
    for (auto w : h.successors(v)) {
      const auto& next = h.vertex(w).label;
      if (m.size() + next.size() <= max_len) stack.emplace_back(w, concat(m, next));
    }
  }
  for (const auto& [_, m] : finals) add_all(m, lang.words);

  if (unroll == 0) return lang;
  for (const auto& p : paths(h, h.size())) {
    if (!p.is_lasso()) continue;
    for (std::size_t n = 1; n <= unroll; ++n) {
      const PrefixMsc m = msc_of_path(h, p, n);
      if (m.size() > max_len) break;
      add_all(m, lang.prefixes);
    }
  }
  return lang;
}

RestrictionVerdict hmsc_k_synchronisable(const Hmsc& h, std::optional<std::size_t> k) {
  RestrictionVerdict out;
  out.property = Property::Synchronisable;
  out.holds = true;
  std::size_t best = 1;
  for (const auto& v : h.vertices()) {
    const auto d = k ? is_k_synchronous(v.label, *k) : min_sync_k(v.label);
    if (!d) {
      out.holds = false;
      out.parameter = k;
      out.witness = AtVertex{v.name, linearizations(v.label, 1).front()};
      out.note = k ? "label of " + v.name + " is not " + std::to_string(*k) + "-synchronous"
                   : "label of " + v.name + " is not synchronisable for any k";
      return out;
    }
    best = std::max(best, d->k);
  }
  out.parameter = k.value_or(best);
  return out;
}

std::size_t hmsc_existential_bound(const Hmsc& h) {
  std::size_t best = 0;
  for (const auto& v : h.vertices()) {
    if (auto b = min_existential_bound(v.label)) best = std::max(best, b->bound);
  }
  return best;
}

RestrictionVerdict hmsc_exist_bound_verdict(const Hmsc& h, std::optional<std::size_t> max_b) {
  RestrictionVerdict out;
  out.property = Property::ExistBounded;
  std::size_t best = 0;
  const HmscVertex* arg = nullptr;
  Word arg_word;
  for (const auto& v : h.vertices()) {
    if (auto b = min_existential_bound(v.label); b && (arg == nullptr || b->bound > best)) {
      best = b->bound;
      arg = &v;
      arg_word = word_of(v.label, b->order);
    }
  }
  out.parameter = best;
  if (arg != nullptr) out.witness = AtVertex{arg->name, arg_word};
  out.note = "upper bound: maximum over vertex labels";
  if (max_b && best > *max_b) {
    out.holds = false;
    out.bounded_claim = true;
    out.parameter = max_b;
    out.note = "per-vertex upper bound " + std::to_string(best) + " exceeds max-b; minimal bound not computed";
  } else {
    out.holds = true;
  }
  return out;
}

RestrictionVerdict hmsc_half_duplex(const Hmsc& h) {
  RestrictionVerdict out;
  out.property = Property::HalfDuplex;
  out.holds = true;
  for (const auto& v : h.vertices()) {
    if (auto bad = half_duplex_violation(v.label)) {
      out.holds = false;
      out.witness = AtVertex{v.name, word_of(v.label, bad->prefix)};
      out.note = "crossing messages " + v.label.label(bad->first_send).to_string() + " and " +
                 v.label.label(bad->second_send).to_string() + " in " + v.name;
      return out;
    }
  }
  return out;
}

std::vector<RestrictionVerdict> classify_hmsc(const Hmsc& h, std::optional<std::size_t> max_b) {
  return {hmsc_half_duplex(h), hmsc_exist_bound_verdict(h, max_b), hmsc_k_synchronisable(h)};
}

Hmsc parse_hmsc(std::string_view text) {
  using detail::Lexer;
  using detail::Token;
  Lexer lex(text);
  lex.expect("hmsc");
  Hmsc h(lex.expect_ident("hmsc name"));
  lex.expect("{");
  std::vector<Token> initial;
  std::vector<Token> terminals;
  std::vector<std::pair<Token, Token>> edges;
  while (!lex.accept("}")) {
    if (lex.at_end()) lex.fail("unterminated hmsc");
    const Token kw = lex.peek();
    if (lex.accept("initial")) {
      initial.push_back(lex.peek());
      lex.expect_ident("vertex name");
      lex.expect(";");
    } else if (lex.accept("terminal")) {
      do {
        terminals.push_back(lex.peek());
        lex.expect_ident("vertex name");
      } while (!lex.accept(";"));
    } else if (lex.accept("vertex")) {
      const Token vt = lex.peek();
      std::string name = lex.expect_ident("vertex name");
      lex.expect("=");
      lex.expect("bmsc");
      PrefixMsc label = detail::parse_bmsc_body(lex);
      lex.expect(";");
      if (h.index_of(name)) Lexer::fail_at(vt, "vertex " + name + " declared twice");
      h.add_vertex(std::move(name), std::move(label));
    } else if (lex.accept("edge")) {
      const Token from = lex.peek();
      lex.expect_ident("vertex name");
      lex.expect("->");
      const Token to = lex.peek();
      lex.expect_ident("vertex name");
      lex.expect(";");
      edges.emplace_back(from, to);
    } else {
      Lexer::fail_at(kw, "expected 'initial', 'terminal', 'vertex' or 'edge'");
    }
  }
  if (!lex.at_end()) lex.fail("trailing input after hmsc");
  auto resolve = [&h](const Token& t) {
    auto v = h.index_of(t.text);
    if (!v) Lexer::fail_at(t, "unknown vertex " + t.text);
    return *v;
  };
  if (initial.size() > 1) Lexer::fail_at(initial[1], "more than one initial vertex");
  if (!initial.empty()) h.set_initial(resolve(initial.front()));
  for (const auto& t : terminals) h.add_terminal(resolve(t));
  for (const auto& [a, b] : edges) h.add_edge(resolve(a), resolve(b));
  return h;
}

std::string print_hmsc(const Hmsc& h) {
  std::ostringstream out;
  out << "hmsc " << h.name() << " {\n";
  if (h.initial()) out << "  initial " << h.vertex(*h.initial()).name << " ;\n";
  for (auto t : h.terminals()) out << "  terminal " << h.vertex(t).name << " ;\n";
  for (const auto& v : h.vertices()) {
    out << "  vertex " << v.name << " = bmsc " << detail::print_bmsc_body(v.label, 2) << " ;\n";
  }
  for (const auto& [a, b] : h.edges()) {
    out << "  edge " << h.vertex(a).name << " -> " << h.vertex(b).name << " ;\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace chanres
