#pragma once

// Channel restrictions on prefix MSCs and words: minimal existential
// bound, k-exchange decompositions, and half-duplex analysis.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chanres/events.hpp"
#include "chanres/msc.hpp"

namespace chanres {

struct BoundWitness {
  std::size_t bound = 0;
  /// Lexicographically least (by node id) linearization within the bound.
  Linearization order;
};

/// Smallest B <= max_b (default: number of sends) for which some
/// linearization keeps every channel at most B full. Unmatched sends stay
/// in their channel forever.
std::optional<BoundWitness> min_existential_bound(const PrefixMsc& m,
                                                  std::optional<std::size_t> max_b = std::nullopt);

struct ExchangeSegment {
  std::vector<NodeId> sends;
  std::vector<NodeId> receives;
};

struct ExchangeDecomposition {
  std::size_t k = 1;
  std::vector<ExchangeSegment> segments;

  Linearization linearization() const;
};

/// Both k-exchange conditions, checked from scratch: the concatenation is a
/// linearization, each segment is <=k sends then <=k receives, and every
/// matched pair lies inside one segment.
bool is_valid_decomposition(const PrefixMsc& m, const ExchangeDecomposition& d);

std::optional<ExchangeDecomposition> is_k_synchronous(const PrefixMsc& m, std::size_t k);
/// Smallest k (1 for the empty MSC); absent when no k <= #sends works,
/// which for a finite MSC means no k works at all.
std::optional<ExchangeDecomposition> min_sync_k(const PrefixMsc& m);

struct HalfDuplexViolation {
  NodeId first_send = 0;   // P->Q
  NodeId second_send = 0;  // Q->P
  /// Lexicographically least linearization of the nodes below either send;
  /// after it both channels between P and Q are non-empty.
  Linearization prefix;
};

/// A pair of opposite sends whose receives are not ordered before the
/// other send; present iff some linearization is not half-duplex.
std::optional<HalfDuplexViolation> half_duplex_violation(const PrefixMsc& m);

// --- verdicts -------------------------------------------------------------

enum class Property { HalfDuplex, ExistBounded, Synchronisable };
std::string_view to_string(Property p);

struct Segments {
  std::vector<Word> exchanges;
};
struct CrossingPair {
  Event first;
  Event second;
  Word prefix;
};
/// An infinite run whose cycle strictly grows `channel`.
struct Pumping {
  Lasso lasso;
  Channel channel;
  long growth = 0;
};
struct AtVertex {
  std::string vertex;
  Word detail;
};
using Witness = std::variant<std::monostate, Word, Segments, CrossingPair, Pumping, AtVertex>;

struct RestrictionVerdict {
  Property property = Property::HalfDuplex;
  bool holds = false;
  /// B for ExistBounded, k for Synchronisable.
  std::optional<std::size_t> parameter;
  /// Set when the verdict is only known up to an exploration bound.
  bool bounded_claim = false;
  Witness witness;
  std::string note;
};

Segments segments_of(const PrefixMsc& m, const ExchangeDecomposition& d);

RestrictionVerdict half_duplex_verdict(const PrefixMsc& m);
RestrictionVerdict exist_bound_verdict(const PrefixMsc& m, std::optional<std::size_t> max_b = std::nullopt);
/// With k: decide k-synchronous. Without: report the minimal k.
RestrictionVerdict sync_verdict(const PrefixMsc& m, std::optional<std::size_t> k = std::nullopt);

std::vector<RestrictionVerdict> classify_msc(const PrefixMsc& m, std::optional<std::size_t> max_b = std::nullopt);

struct WordClassification {
  bool half_duplex = false;
  std::optional<std::size_t> exist_bound;
  std::optional<std::size_t> sync_k;

  bool operator==(const WordClassification&) const = default;
};

/// Shortest prefix of w that is not half-duplex, with the heads of the two
/// non-empty opposite channels.
std::optional<CrossingPair> half_duplex_word_witness(const Word& w);

/// Half-duplex on the word itself; bound and k on msc(w). Throws
/// UndefinedMsc for words that are not channel-compliant.
WordClassification classify_word(const Word& w, std::optional<std::size_t> max_b = std::nullopt);
std::vector<RestrictionVerdict> classify_word_verdicts(const Word& w, std::optional<std::size_t> max_b = std::nullopt);

}  // namespace chanres
