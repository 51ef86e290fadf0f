#include "chanres/translate.hpp"

#include <algorithm>
#include <map>

#include "chanres/errors.hpp"

namespace chanres {

namespace {

PrefixMsc exchange_msc(const ProcessId& p, const ProcessId& q, const Message& m) {
  std::map<ProcessId, std::vector<NodeId>> rows{{p, {0}}, {q, {1}}};
  return PrefixMsc({Event::send(p, q, m), Event::receive(p, q, m)}, std::move(rows), {{0, 1}});
}

class Translator {
 public:
  TranslationOutput run(const GlobalTypePtr& g) {
    out_.hmsc.set_name("translation");
    visit(g);
    for (const auto& [from, to] : edges_) out_.hmsc.add_edge(from, to);
    out_.hmsc.set_initial(0);
    if (auto end = vertex_.find(make_end()); end != vertex_.end()) out_.hmsc.add_terminal(end->second);
    return std::move(out_);
  }

 private:
  std::size_t add(const GlobalTypePtr& t, std::optional<std::size_t> branch, PrefixMsc label = {}) {
    const auto v = out_.hmsc.add_vertex("v" + std::to_string(out_.hmsc.size()), std::move(label));
    out_.origin.push_back({t, branch});
    return v;
  }

  // Preorder, so the root is vertex 0 and branch vertices follow their choice.
  std::size_t visit(const GlobalTypePtr& t) {
    if (auto it = vertex_.find(t); it != vertex_.end()) return it->second;
    const auto v = add(t, std::nullopt);
    vertex_.emplace(t, v);
    if (const auto* r = std::get_if<Rec>(&t->node)) {
      binder_[r->var] = v;
      edges_.emplace_back(v, visit(r->body));
    } else if (const auto* x = std::get_if<Var>(&t->node)) {
      edges_.emplace_back(v, binder_.at(x->name));
    } else if (const auto* c = std::get_if<Choice>(&t->node)) {
      for (std::size_t j = 0; j < c->branches.size(); ++j) {
        const auto& b = c->branches[j];
        const auto bv = add(t, j + 1, exchange_msc(c->sender, b.receiver, b.msg));
        edges_.emplace_back(v, bv);
        edges_.emplace_back(bv, visit(b.cont));
      }
    }
    return v;
  }

  TranslationOutput out_;
  std::map<GlobalTypePtr, std::size_t, GlobalTypeLess> vertex_;
  std::map<std::string, std::size_t> binder_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace

TranslationOutput translate(const GlobalTypePtr& g) {
  if (auto err = well_formedness_error(*g); !err.empty()) throw InvalidModel("ill-formed global type: " + err);
  return Translator{}.run(g);
}

Hmsc fuse_empty_vertices(const Hmsc& h) {
  const std::size_t n = h.size();
  // target[v] = the vertex v's incoming edges are redirected to.
  std::vector<std::size_t> target(n);
  for (std::size_t v = 0; v < n; ++v) target[v] = v;
  auto fusable = [&](std::size_t v) {
    const auto& s = h.successors(v);
    return h.vertex(v).label.empty() && !h.is_terminal(v) && s.size() == 1 && s.front() != v;
  };
  auto resolve = [&](std::size_t v) {
    // Chains of fusable vertices may form a cycle; stop when it closes.
    std::vector<bool> seen(n, false);
    while (fusable(v) && !seen[v]) {
      seen[v] = true;
      const auto next = h.successors(v).front();
      if (seen[next]) break;
      v = next;
    }
    return v;
  };
  std::vector<bool> keep(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    target[v] = resolve(v);
    keep[target[v]] = true;
  }
  if (h.initial()) keep[target[*h.initial()]] = true;

  Hmsc out(h.name());
  std::vector<std::size_t> index(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (keep[v]) index[v] = out.add_vertex(h.vertex(v).name, h.vertex(v).label);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    for (auto w : h.successors(v)) out.add_edge(index[v], index[target[w]]);
    if (h.is_terminal(v)) out.add_terminal(index[v]);
  }
  if (h.initial()) out.set_initial(index[target[*h.initial()]]);
  return out;
}

TranslationCheck verify_translation(const GlobalTypePtr& g, std::size_t max_len, std::size_t budget) {
  TranslationCheck check;
  check.max_len = max_len;
  const auto type_words = type_language(g, max_len).finite;
  const auto hmsc_words = hmsc_language(translate(g).hmsc, max_len, 0, budget).words;
  check.type_words = type_words.size();
  check.hmsc_words = hmsc_words.size();

  check.inclusion = true;
  for (const auto& w : type_words) {
    if (hmsc_words.count(w) == 0) {
      check.inclusion = false;
      check.inclusion_counterexample = w;
      break;
    }
  }
  check.strict = std::any_of(hmsc_words.begin(), hmsc_words.end(),
                             [&](const Word& w) { return type_words.count(w) == 0; });

  const auto a = closure(type_words, max_len, budget);
  const auto b = closure(hmsc_words, max_len, budget);
  check.closure_equal = a == b;
  if (!check.closure_equal) {
    std::vector<Word> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    check.closure_counterexample = diff.front();
  }
  return check;
}

}  // namespace chanres
