#pragma once

// Prefix message sequence charts: event nodes with per-process total orders
// and an injective, possibly partial send->receive matching. A BMSC is a
// prefix MSC whose matching is total.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chanres/events.hpp"

namespace chanres {

using NodeId = std::size_t;
/// A node sequence compatible with the MSC order.
using Linearization = std::vector<NodeId>;

struct MscViolation {
  enum class Kind { ProcessMismatch, LabelMismatch, UnmatchedReceive, Cycle, Degenerate, Fifo };
  Kind kind;
  std::string detail;
};

std::string_view to_string(MscViolation::Kind k);

struct ValidationReport {
  std::vector<MscViolation> violations;
  bool ok() const { return violations.empty(); }
};

class PrefixMsc {
 public:
  PrefixMsc() = default;
  /// `labels[i]` labels node i; `rows[P]` lists P's nodes in process order;
  /// `match` maps send nodes to receive nodes. Every node must appear in
  /// exactly one row (throws InvalidModel otherwise). Semantic conditions
  /// are reported by validate() rather than thrown.
  PrefixMsc(std::vector<Event> labels, std::map<ProcessId, std::vector<NodeId>> rows,
            std::map<NodeId, NodeId> match);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const Event& label(NodeId n) const { return labels_.at(n); }
  const std::vector<Event>& labels() const noexcept { return labels_; }
  const ProcessId& process(NodeId n) const { return processes_.at(proc_of_[n]); }

  /// Declared processes, sorted; includes processes with empty rows.
  const std::vector<ProcessId>& processes() const noexcept { return processes_; }
  const std::vector<NodeId>& row(std::size_t process_index) const { return rows_.at(process_index); }
  const std::vector<NodeId>& row(const ProcessId& p) const;
  std::size_t process_index(NodeId n) const { return proc_of_.at(n); }
  std::size_t row_position(NodeId n) const { return pos_in_row_.at(n); }

  /// For a send: its receive. For a receive: its send.
  std::optional<NodeId> partner(NodeId n) const;
  const std::map<NodeId, NodeId>& matching() const noexcept { return match_; }
  bool is_send(NodeId n) const { return labels_.at(n).is_send(); }
  bool is_matched(NodeId n) const { return partner(n).has_value(); }

  /// Total matching: a BMSC (when also valid).
  bool is_complete() const;
  std::size_t send_count() const;

  /// The induced order: reflexive-transitive closure of process orders and
  /// the matching. Materialized at construction.
  bool leq(NodeId a, NodeId b) const;
  bool less(NodeId a, NodeId b) const { return a != b && leq(a, b); }

  /// True when every predecessor of `n` other than itself lies in the
  /// downward-closed set described by `cut` (executed prefix length per
  /// process index) and `n` is the next node of its row.
  bool enabled(NodeId n, const std::vector<std::size_t>& cut) const;

  ValidationReport validate() const;

 private:
  std::vector<Event> labels_;
  std::vector<ProcessId> processes_;
  std::vector<std::vector<NodeId>> rows_;
  std::map<NodeId, NodeId> match_;
  std::vector<std::optional<NodeId>> partner_;
  std::vector<std::size_t> proc_of_;
  std::vector<std::size_t> pos_in_row_;
  std::vector<std::vector<std::uint64_t>> closure_;
};

/// Labels of a node sequence.
Word word_of(const PrefixMsc& m, const Linearization& order);

/// The unique prefix MSC having w as a linearization. Node i carries w[i].
/// Throws UndefinedMsc when w is not channel-compliant.
PrefixMsc msc_of(const Word& w);

/// Enumerates topological orders of the MSC order, lexicographically by
/// node id. The visitor returns false to stop. Returns the number visited.
std::size_t for_each_linearization(const PrefixMsc& m,
                                   const std::function<bool(const Linearization&)>& visit,
                                   std::size_t limit = SIZE_MAX);
std::vector<Word> linearizations(const PrefixMsc& m, std::size_t limit = SIZE_MAX);
/// Counts linearizations by memoizing over cuts of the ideal lattice.
std::uint64_t count_linearizations(const PrefixMsc& m);

/// M1 . M2: every node of M1 precedes every node of M2 on the same process.
/// Throws InvalidModel unless m1 is complete.
PrefixMsc concat(const PrefixMsc& m1, const PrefixMsc& m2);

/// Canonical form: per non-empty process, the label sequence and, for
/// each matched node, its partner's (process, row position).
std::string canonical_form(const PrefixMsc& m);
bool isomorphic(const PrefixMsc& a, const PrefixMsc& b);

/// Searches (up to `limit` linearizations) for one that witnesses causal
/// delivery: same-channel ordered sends are received in order, or the later
/// one is unmatched in the word.
bool satisfies_causal_delivery(const PrefixMsc& m, std::size_t limit = SIZE_MAX);

/// Text format: `bmsc <name> { msg k : P -> Q : m ; ... P : !k ?j ; ... }`.
struct NamedMsc {
  std::string name;
  PrefixMsc msc;
};
NamedMsc parse_bmsc(std::string_view text);
std::string print_bmsc(const PrefixMsc& m, std::string_view name);

}  // namespace chanres
