#pragma once

// High-level MSCs: a finite graph whose vertices carry BMSCs. The language
// is every linearization of the concatenated BMSCs along maximal paths.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "chanres/msc.hpp"
#include "chanres/restrictions.hpp"

namespace chanres {

struct HmscVertex {
  std::string name;
  PrefixMsc label;
};

class Hmsc {
 public:
  Hmsc() = default;
  explicit Hmsc(std::string name) : name_(std::move(name)) {}

  /// Returns the new vertex index. Throws InvalidModel on duplicate names.
  std::size_t add_vertex(std::string name, PrefixMsc label = {});
  void add_edge(std::size_t from, std::size_t to);
  void set_initial(std::size_t v);
  void add_terminal(std::size_t v);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::size_t size() const noexcept { return vertices_.size(); }
  const HmscVertex& vertex(std::size_t v) const { return vertices_.at(v); }
  const std::vector<HmscVertex>& vertices() const noexcept { return vertices_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Sorted, without duplicates.
  const std::vector<std::size_t>& successors(std::size_t v) const { return succ_.at(v); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::optional<std::size_t> initial() const noexcept { return initial_; }
  const std::set<std::size_t>& terminals() const noexcept { return terminals_; }
  bool is_terminal(std::size_t v) const { return terminals_.count(v) != 0; }

 private:
  std::string name_;
  std::vector<HmscVertex> vertices_;
  std::vector<std::vector<std::size_t>> succ_;
  std::optional<std::size_t> initial_;
  std::set<std::size_t> terminals_;
};

struct HmscViolation {
  enum class Kind { NoInitial, Unreachable, NotCompletable, BadLabel, IncompleteLabel };
  Kind kind;
  std::string vertex;
  std::string detail;
};

std::string_view to_string(HmscViolation::Kind k);

struct HmscValidationReport {
  std::vector<HmscViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Reachability from the initial vertex, completability of every initial
/// path to a maximal one, and validity/completeness of every label.
HmscValidationReport validate_hmsc(const Hmsc& h);

struct HmscPath {
  std::vector<std::size_t> stem;
  /// Empty for finite paths (which end in a terminal vertex).
  std::vector<std::size_t> cycle;

  bool is_lasso() const noexcept { return !cycle.empty(); }
  auto operator<=>(const HmscPath&) const = default;
};

/// Finite maximal paths with at most `max_vertices` vertices, then lasso
/// paths whose stem and cycle together are a simple path of at most
/// `max_vertices` vertices.
std::vector<HmscPath> paths(const Hmsc& h, std::size_t max_vertices);

/// Concatenation of the labels along a finite path (a lasso is unrolled
/// `unroll` times).
PrefixMsc msc_of_path(const Hmsc& h, const HmscPath& p, std::size_t unroll = 1);

struct HmscLanguage {
  /// Linearizations of MSCs of finite maximal paths, length <= max_len.
  std::set<Word> words;
  /// Linearizations of bounded lasso unrollings; not maximal words.
  std::set<Word> prefixes;
};

inline constexpr std::size_t kDefaultLanguageBudget = 2'000'000;

/// Throws BudgetExceeded when more than `budget` words would be produced.
/// `unroll` = 0 skips lasso paths.
HmscLanguage hmsc_language(const Hmsc& h, std::size_t max_len, std::size_t unroll = 3,
                           std::size_t budget = kDefaultLanguageBudget);

/// Every vertex label is k-synchronous (minimal k when k is absent).
RestrictionVerdict hmsc_k_synchronisable(const Hmsc& h, std::optional<std::size_t> k = std::nullopt);
/// Maximum over vertices of their minimal existential bound: an upper
/// bound on the HMSC's minimal bound (0 when no vertex has a message).
std::size_t hmsc_existential_bound(const Hmsc& h);
RestrictionVerdict hmsc_exist_bound_verdict(const Hmsc& h, std::optional<std::size_t> max_b = std::nullopt);
/// Vertex-local: no label has a crossing pair of opposite messages.
RestrictionVerdict hmsc_half_duplex(const Hmsc& h);
std::vector<RestrictionVerdict> classify_hmsc(const Hmsc& h, std::optional<std::size_t> max_b = std::nullopt);

/// `.hmsc` text format.
Hmsc parse_hmsc(std::string_view text);
std::string print_hmsc(const Hmsc& h);

}  // namespace chanres
