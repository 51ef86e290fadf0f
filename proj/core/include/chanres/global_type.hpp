#pragma once

// Global types of multiparty session types: sender-driven choice, message
// exchanges, guarded tail recursion.
//
// Concrete syntax:
//   G ::= end | t | rec t . G | P->Q:m . G | ( P->Q:m . G + ... + P->R:n . G )

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chanres/events.hpp"

namespace chanres {

struct GlobalType;
using GlobalTypePtr = std::shared_ptr<const GlobalType>;

struct End {
  auto operator<=>(const End&) const = default;
};
struct Var {
  std::string name;
  auto operator<=>(const Var&) const = default;
};
struct Rec {
  std::string var;
  GlobalTypePtr body;
};
struct Branch {
  ProcessId receiver;
  Message msg;
  GlobalTypePtr cont;
};
struct Choice {
  ProcessId sender;
  std::vector<Branch> branches;
};

struct GlobalType {
  std::variant<End, Var, Rec, Choice> node;
};

GlobalTypePtr make_end();
GlobalTypePtr make_var(std::string name);
GlobalTypePtr make_rec(std::string var, GlobalTypePtr body);
GlobalTypePtr make_choice(ProcessId sender, std::vector<Branch> branches);
/// Single-branch choice: P->Q:m . cont
GlobalTypePtr make_exchange(ProcessId sender, ProcessId receiver, Message msg, GlobalTypePtr cont);

/// Structural comparison (total order); equal terms are the same subterm.
std::strong_ordering compare(const GlobalType& a, const GlobalType& b);
bool operator==(const GlobalType& a, const GlobalType& b);

struct GlobalTypeLess {
  bool operator()(const GlobalTypePtr& a, const GlobalTypePtr& b) const { return compare(*a, *b) < 0; }
};
using GlobalTypeSet = std::set<GlobalTypePtr, GlobalTypeLess>;

/// Throws ParseError on syntax errors and on well-formedness violations
/// (unguarded recursion, unbound or rebound variables, duplicate branch
/// labels, mixed senders, self-messages).
GlobalTypePtr parse_global_type(std::string_view text);
std::string print_global_type(const GlobalType& g);

/// Empty when well-formed; otherwise a description of the first problem.
std::string well_formedness_error(const GlobalType& g);

/// All syntactic subterms of g, g included; equal subterms collapse.
GlobalTypeSet subterms(const GlobalTypePtr& g);

struct TypeLanguage {
  /// Maximal finite words (reaching end) of length <= max_len.
  std::set<Word> finite;
  /// One lasso per simple cycle through a recursion binder.
  std::set<Lasso> lassos;
};

/// Every exchange P->Q:m contributes the adjacent pair P>Q!m P>Q?m.
TypeLanguage type_language(const GlobalTypePtr& g, std::size_t max_len);

std::set<ProcessId> processes_of(const GlobalType& g);

}  // namespace chanres
