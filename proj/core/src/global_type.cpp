#include "chanres/global_type.hpp"

#include <map>

#include "chanres/errors.hpp"
#include "lexer.hpp"

namespace chanres {

GlobalTypePtr make_end() { return std::make_shared<const GlobalType>(GlobalType{End{}}); }

GlobalTypePtr make_var(std::string name) { return std::make_shared<const GlobalType>(GlobalType{Var{std::move(name)}}); }

GlobalTypePtr make_rec(std::string var, GlobalTypePtr body) {
  return std::make_shared<const GlobalType>(GlobalType{Rec{std::move(var), std::move(body)}});
}

GlobalTypePtr make_choice(ProcessId sender, std::vector<Branch> branches) {
  return std::make_shared<const GlobalType>(GlobalType{Choice{std::move(sender), std::move(branches)}});
}

GlobalTypePtr make_exchange(ProcessId sender, ProcessId receiver, Message msg, GlobalTypePtr cont) {
  return make_choice(std::move(sender), {Branch{std::move(receiver), std::move(msg), std::move(cont)}});
}

std::strong_ordering compare(const GlobalType& a, const GlobalType& b) {
  if (auto c = a.node.index() <=> b.node.index(); c != 0) return c;
  if (const auto* va = std::get_if<Var>(&a.node)) return va->name <=> std::get<Var>(b.node).name;
  if (const auto* ra = std::get_if<Rec>(&a.node)) {
    const auto& rb = std::get<Rec>(b.node);
    if (auto c = ra->var <=> rb.var; c != 0) return c;
    return compare(*ra->body, *rb.body);
  }
  if (const auto* ca = std::get_if<Choice>(&a.node)) {
    const auto& cb = std::get<Choice>(b.node);
    if (auto c = ca->sender <=> cb.sender; c != 0) return c;
    const std::size_t n = std::min(ca->branches.size(), cb.branches.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = ca->branches[i];
      const auto& y = cb.branches[i];
      if (auto c = x.receiver <=> y.receiver; c != 0) return c;
      if (auto c = x.msg <=> y.msg; c != 0) return c;
      if (auto c = compare(*x.cont, *y.cont); c != 0) return c;
    }
    return ca->branches.size() <=> cb.branches.size();
  }
  return std::strong_ordering::equal;
}

bool operator==(const GlobalType& a, const GlobalType& b) { return compare(a, b) == 0; }

namespace {

using detail::Lexer;
using detail::Token;

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : lex_(text) {}

  GlobalTypePtr parse() {
    auto g = type();
    if (!lex_.at_end()) lex_.fail("trailing input after global type");
    return g;
  }

 private:
  struct Scope {
    std::string var;
    bool guarded = false;
  };

  GlobalTypePtr type() {
    const Token t = lex_.peek();
    if (lex_.accept("end")) return make_end();
    if (lex_.accept("rec")) {
      const Token vt = lex_.peek();
      std::string var = lex_.expect_ident("recursion variable");
      if (var == "end" || var == "rec") Lexer::fail_at(vt, "reserved word used as variable");
      if (!bound_.insert(var).second) Lexer::fail_at(vt, "recursion variable '" + var + "' bound twice");
      lex_.expect(".");
      scopes_.push_back({var, false});
      auto body = type();
      scopes_.pop_back();
      return make_rec(std::move(var), std::move(body));
    }
    if (lex_.accept("(")) {
      std::vector<Branch> branches;
      ProcessId sender;
      do {
        const Token bt = lex_.peek();
        auto [p, b] = branch();
        if (branches.empty()) {
          sender = p;
        } else if (p != sender) {
          Lexer::fail_at(bt, "choice mixes senders " + sender + " and " + p);
        }
        for (const auto& other : branches) {
          if (other.receiver == b.receiver && other.msg == b.msg) {
            Lexer::fail_at(bt, "duplicate branch " + p + "->" + b.receiver + ":" + b.msg);
          }
        }
        branches.push_back(std::move(b));
      } while (lex_.accept("+"));
      lex_.expect(")");
      return make_choice(std::move(sender), std::move(branches));
    }
    if (t.kind == detail::TokenKind::Ident && lex_.peek(1).text == "->") {
      auto [p, b] = branch();
      return make_choice(std::move(p), {std::move(b)});
    }
    if (t.kind == detail::TokenKind::Ident) {
      lex_.next();
      const Scope* scope = nullptr;
      for (const auto& s : scopes_) {
        if (s.var == t.text) scope = &s;
      }
      if (scope == nullptr) Lexer::fail_at(t, "unbound recursion variable '" + t.text + "'");
      if (!scope->guarded) Lexer::fail_at(t, "unguarded recursion on '" + t.text + "'");
      return make_var(t.text);
    }
    Lexer::fail_at(t, t.kind == detail::TokenKind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::pair<ProcessId, Branch> branch() {
    const Token pt = lex_.peek();
    ProcessId p = lex_.expect_ident("sender");
    lex_.expect("->");
    ProcessId q = lex_.expect_ident("receiver");
    if (p == q) Lexer::fail_at(pt, "process " + p + " sends to itself");
    lex_.expect(":");
    Message m = lex_.expect_ident("message");
    lex_.expect(".");
    std::vector<bool> saved;
    for (auto& s : scopes_) {
      saved.push_back(s.guarded);
      s.guarded = true;
    }
    auto cont = type();
    for (std::size_t i = 0; i < scopes_.size(); ++i) scopes_[i].guarded = saved[i];
    return {std::move(p), Branch{std::move(q), std::move(m), std::move(cont)}};
  }

  Lexer lex_;
  std::vector<Scope> scopes_;
  std::set<std::string> bound_;
};

struct WellFormedChecker {
  std::vector<std::pair<std::string, bool>> scopes;
  std::set<std::string> bound;

  std::string check(const GlobalType& g) {
    if (const auto* v = std::get_if<Var>(&g.node)) {
      for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        if (it->first == v->name) return it->second ? "" : "unguarded recursion on '" + v->name + "'";
      }
      return "unbound recursion variable '" + v->name + "'";
    }
    if (const auto* r = std::get_if<Rec>(&g.node)) {
      if (!bound.insert(r->var).second) return "recursion variable '" + r->var + "' bound twice";
      scopes.emplace_back(r->var, false);
      auto err = check(*r->body);
      scopes.pop_back();
      return err;
    }
    if (const auto* c = std::get_if<Choice>(&g.node)) {
      if (c->branches.empty()) return "choice of " + c->sender + " has no branches";
      for (std::size_t i = 0; i < c->branches.size(); ++i) {
        const auto& b = c->branches[i];
        if (b.receiver == c->sender) return "process " + c->sender + " sends to itself";
        for (std::size_t j = 0; j < i; ++j) {
          if (c->branches[j].receiver == b.receiver && c->branches[j].msg == b.msg) {
            return "duplicate branch " + c->sender + "->" + b.receiver + ":" + b.msg;
          }
        }
      }
      for (const auto& b : c->branches) {
        auto saved = scopes;
        for (auto& s : scopes) s.second = true;
        auto err = check(*b.cont);
        scopes = std::move(saved);
        if (!err.empty()) return err;
      }
    }
    return "";
  }
};

void print_into(const GlobalType& g, std::string& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, End>) {
          out += "end";
        } else if constexpr (std::is_same_v<T, Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Rec>) {
          out += "rec " + n.var + " . ";
          print_into(*n.body, out);
        } else {
          const bool sum = n.branches.size() != 1;
          if (sum) out += "( ";
          for (std::size_t i = 0; i < n.branches.size(); ++i) {
            if (i != 0) out += " + ";
            const auto& b = n.branches[i];
            out += n.sender + "->" + b.receiver + ":" + b.msg + " . ";
            print_into(*b.cont, out);
          }
          if (sum) out += " )";
        }
      },
      g.node);
}

void collect(const GlobalTypePtr& g, GlobalTypeSet& out) {
  out.insert(g);
  if (const auto* r = std::get_if<Rec>(&g->node)) collect(r->body, out);
  if (const auto* c = std::get_if<Choice>(&g->node)) {
    for (const auto& b : c->branches) collect(b.cont, out);
  }
}

class LanguageWalker {
 public:
  LanguageWalker(const GlobalTypePtr& g, std::size_t max_len) : max_len_(max_len) { index(g); }

  void finite(const GlobalType& g, Word& w, TypeLanguage& out) {
    if (std::holds_alternative<End>(g.node)) {
      out.finite.insert(w);
    } else if (const auto* v = std::get_if<Var>(&g.node)) {
      finite(*binders_.at(v->name), w, out);
    } else if (const auto* r = std::get_if<Rec>(&g.node)) {
      finite(*r->body, w, out);
    } else {
      const auto& c = std::get<Choice>(g.node);
      if (w.size() + 2 > max_len_) return;
      for (const auto& b : c.branches) {
        w.push_back(Event::send(c.sender, b.receiver, b.msg));
        w.push_back(Event::receive(c.sender, b.receiver, b.msg));
        finite(*b.cont, w, out);
        w.resize(w.size() - 2);
      }
    }
  }

  // Walks the syntax tree once; a variable closes the cycle opened at its binder.
  void lassos(const GlobalType& g, Word& w, std::map<std::string, std::size_t>& entry, TypeLanguage& out) {
    if (const auto* v = std::get_if<Var>(&g.node)) {
      const std::size_t at = entry.at(v->name);
      out.lassos.insert(Lasso{Word(w.begin(), w.begin() + static_cast<long>(at)),
                              Word(w.begin() + static_cast<long>(at), w.end())});
    } else if (const auto* r = std::get_if<Rec>(&g.node)) {
      entry[r->var] = w.size();
      lassos(*r->body, w, entry, out);
      entry.erase(r->var);
    } else if (const auto* c = std::get_if<Choice>(&g.node)) {
      for (const auto& b : c->branches) {
        w.push_back(Event::send(c->sender, b.receiver, b.msg));
        w.push_back(Event::receive(c->sender, b.receiver, b.msg));
        lassos(*b.cont, w, entry, out);
        w.resize(w.size() - 2);
      }
    }
  }

 private:
  void index(const GlobalTypePtr& g) {
    if (const auto* r = std::get_if<Rec>(&g->node)) {
      binders_[r->var] = g;
      index(r->body);
    } else if (const auto* c = std::get_if<Choice>(&g->node)) {
      for (const auto& b : c->branches) index(b.cont);
    }
  }

  std::size_t max_len_;
  std::map<std::string, GlobalTypePtr> binders_;
};

}  // namespace

GlobalTypePtr parse_global_type(std::string_view text) { return TypeParser(text).parse(); }

std::string print_global_type(const GlobalType& g) {
  std::string out;
  print_into(g, out);
  return out;
}

std::string well_formedness_error(const GlobalType& g) { return WellFormedChecker{}.check(g); }

GlobalTypeSet subterms(const GlobalTypePtr& g) {
  GlobalTypeSet out;
  collect(g, out);
  return out;
}

TypeLanguage type_language(const GlobalTypePtr& g, std::size_t max_len) {
  if (auto err = well_formedness_error(*g); !err.empty()) throw InvalidModel(err);
  TypeLanguage out;
  LanguageWalker walker(g, max_len);
  Word w;
  walker.finite(*g, w, out);
  std::map<std::string, std::size_t> entry;
  walker.lassos(*g, w, entry, out);
  return out;
}

std::set<ProcessId> processes_of(const GlobalType& g) {
  std::set<ProcessId> out;
  if (const auto* r = std::get_if<Rec>(&g.node)) return processes_of(*r->body);
  if (const auto* c = std::get_if<Choice>(&g.node)) {
    out.insert(c->sender);
    for (const auto& b : c->branches) {
      out.insert(b.receiver);
      auto sub = processes_of(*b.cont);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

}  // namespace chanres
