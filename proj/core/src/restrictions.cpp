#include "chanres/restrictions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chanres {

namespace {

using Cut = std::vector<std::size_t>;

/// Channel index per node, over the channels that occur in m.
struct ChannelIndex {
  std::vector<std::size_t> of_node;
  std::size_t count = 0;

  explicit ChannelIndex(const PrefixMsc& m) {
    std::map<Channel, std::size_t> ids;
    of_node.resize(m.size());
    for (NodeId v = 0; v < m.size(); ++v) {
      auto [it, fresh] = ids.emplace(m.label(v).channel(), ids.size());
      of_node[v] = it->second;
    }
    count = ids.size();
  }
};

class BoundSearch {
 public:
  BoundSearch(const PrefixMsc& m, std::size_t bound)
      : m_(m), chans_(m), bound_(bound), occupancy_(chans_.count, 0), cut_(m.processes().size(), 0) {}

  bool run() { return dfs(); }
  const Linearization& order() const { return order_; }

 private:
  bool dfs() {
    if (order_.size() == m_.size()) return true;
    if (dead_.count(cut_) != 0) return false;
    for (NodeId v = 0; v < m_.size(); ++v) {
      if (!m_.enabled(v, cut_)) continue;
      auto& occ = occupancy_[chans_.of_node[v]];
      const bool send = m_.is_send(v);
      if (send && occ + 1 > bound_) continue;
      send ? ++occ : --occ;
      ++cut_[m_.process_index(v)];
      order_.push_back(v);
      if (dfs()) return true;
      order_.pop_back();
      --cut_[m_.process_index(v)];
      send ? --occ : ++occ;
    }
    dead_.insert(cut_);
    return false;
  }

  const PrefixMsc& m_;
  ChannelIndex chans_;
  std::size_t bound_;
  std::vector<std::size_t> occupancy_;
  Cut cut_;
  Linearization order_;
  std::set<Cut> dead_;
};

/// Orders a set of nodes topologically, smallest enabled id first.
Linearization order_within(const PrefixMsc& m, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  Linearization out;
  std::set<NodeId> placed;
  while (out.size() < nodes.size()) {
    for (NodeId v : nodes) {
      if (placed.count(v) != 0) continue;
      bool ready = true;
      for (NodeId u : nodes) {
        if (u != v && placed.count(u) == 0 && m.leq(u, v)) {
          ready = false;
          break;
        }
      }
      if (ready) {
        out.push_back(v);
        placed.insert(v);
        break;
      }
    }
  }
  return out;
}

class SyncSearch {
 public:
  SyncSearch(const PrefixMsc& m, std::size_t k) : m_(m), k_(k) {}

  std::optional<ExchangeDecomposition> run() {
    Cut cut(m_.processes().size(), 0);
    if (!dfs(cut, 0)) return std::nullopt;
    ExchangeDecomposition d;
    d.k = k_;
    d.segments = std::move(segments_);
    return d;
  }

 private:
  bool dfs(const Cut& cut, std::size_t done) {
    if (done == m_.size()) return true;
    if (dead_.count(cut) != 0) return false;
    Cut counts(cut.size(), 0);
    if (choose(cut, done, counts, 0, 0)) return true;
    dead_.insert(cut);
    return false;
  }

  // Picks how many upcoming sends each process contributes to the segment.
  bool choose(const Cut& cut, std::size_t done, Cut& counts, std::size_t p, std::size_t total) {
    if (p == cut.size()) return total > 0 && try_segment(cut, done, counts, total);
    if (choose(cut, done, counts, p + 1, total)) return true;
    const auto& row = m_.row(p);
    while (total < k_ && cut[p] + counts[p] < row.size() && m_.is_send(row[cut[p] + counts[p]])) {
      ++counts[p];
      ++total;
      if (choose(cut, done, counts, p + 1, total)) {
        counts[p] = 0;
        return true;
      }
    }
    total -= counts[p];
    counts[p] = 0;
    return false;
  }

  bool try_segment(const Cut& cut, std::size_t done, const Cut& counts, std::size_t total) {
    ExchangeSegment seg;
    Cut next = cut;
    for (std::size_t p = 0; p < cut.size(); ++p) {
      for (std::size_t i = 0; i < counts[p]; ++i) seg.sends.push_back(m_.row(p)[cut[p] + i]);
      next[p] += counts[p];
    }
    std::vector<std::size_t> recv_per_proc(cut.size(), 0);
    for (NodeId s : seg.sends) {
      if (auto r = m_.partner(s)) {
        seg.receives.push_back(*r);
        ++recv_per_proc[m_.process_index(*r)];
      }
    }
    // Each process's receives must be exactly its next row entries.
    for (NodeId r : seg.receives) {
      const auto p = m_.process_index(r);
      const auto pos = m_.row_position(r);
      if (pos < next[p] || pos >= next[p] + recv_per_proc[p]) return false;
    }
    for (std::size_t p = 0; p < cut.size(); ++p) next[p] += recv_per_proc[p];
    seg.sends = order_within(m_, seg.sends);
    seg.receives = order_within(m_, seg.receives);
    const std::size_t added = total + seg.receives.size();
    segments_.push_back(std::move(seg));
    if (dfs(next, done + added)) return true;
    segments_.pop_back();
    return false;
  }

  const PrefixMsc& m_;
  std::size_t k_;
  std::vector<ExchangeSegment> segments_;
  std::set<Cut> dead_;
};

}  // namespace

std::optional<BoundWitness> min_existential_bound(const PrefixMsc& m, std::optional<std::size_t> max_b) {
  const std::size_t limit = max_b.value_or(m.send_count());
  for (std::size_t b = 0; b <= limit; ++b) {
    BoundSearch search(m, b);
    if (search.run()) return BoundWitness{b, search.order()};
  }
  return std::nullopt;
}

Linearization ExchangeDecomposition::linearization() const {
  Linearization out;
  for (const auto& seg : segments) {
    out.insert(out.end(), seg.sends.begin(), seg.sends.end());
    out.insert(out.end(), seg.receives.begin(), seg.receives.end());
  }
  return out;
}

bool is_valid_decomposition(const PrefixMsc& m, const ExchangeDecomposition& d) {
  const Linearization order = d.linearization();
  if (order.size() != m.size()) return false;
  std::vector<std::size_t> position(m.size(), SIZE_MAX);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= m.size() || position[order[i]] != SIZE_MAX) return false;
    position[order[i]] = i;
  }
  for (NodeId a = 0; a < m.size(); ++a) {
    for (NodeId b = 0; b < m.size(); ++b) {
      if (m.less(a, b) && position[a] > position[b]) return false;
    }
  }
  std::vector<std::size_t> segment_of(m.size());
  for (std::size_t i = 0; i < d.segments.size(); ++i) {
    const auto& seg = d.segments[i];
    if (seg.sends.size() > d.k || seg.receives.size() > d.k) return false;
    for (NodeId v : seg.sends) {
      if (!m.is_send(v)) return false;
      segment_of[v] = i;
    }
    for (NodeId v : seg.receives) {
      if (m.is_send(v)) return false;
      segment_of[v] = i;
    }
  }
  for (const auto& [s, r] : m.matching()) {
    if (segment_of[s] != segment_of[r]) return false;
  }
  return true;
}

std::optional<ExchangeDecomposition> is_k_synchronous(const PrefixMsc& m, std::size_t k) {
  if (k == 0) return std::nullopt;
  auto d = SyncSearch(m, k).run();
  return d;
}

std::optional<ExchangeDecomposition> min_sync_k(const PrefixMsc& m) {
  const std::size_t top = std::max<std::size_t>(1, m.send_count());
  for (std::size_t k = 1; k <= top; ++k) {
    if (auto d = is_k_synchronous(m, k)) return d;
  }
  return std::nullopt;
}

std::optional<HalfDuplexViolation> half_duplex_violation(const PrefixMsc& m) {
  for (NodeId s1 = 0; s1 < m.size(); ++s1) {
    if (!m.is_send(s1)) continue;
    const Event& e1 = m.label(s1);
    for (NodeId s2 = s1 + 1; s2 < m.size(); ++s2) {
      if (!m.is_send(s2)) continue;
      const Event& e2 = m.label(s2);
      if (e2.sender != e1.receiver || e2.receiver != e1.sender) continue;
      const auto r1 = m.partner(s1);
      const auto r2 = m.partner(s2);
      if ((r1 && m.leq(*r1, s2)) || (r2 && m.leq(*r2, s1))) continue;
      std::vector<NodeId> below;
      for (NodeId v = 0; v < m.size(); ++v) {
        if (m.leq(v, s1) || m.leq(v, s2)) below.push_back(v);
      }
      return HalfDuplexViolation{s1, s2, order_within(m, below)};
    }
  }
  return std::nullopt;
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::HalfDuplex: return "half-duplex";
    case Property::ExistBounded: return "existentially-bounded";
    case Property::Synchronisable: return "synchronisable";
  }
  return "unknown";
}

Segments segments_of(const PrefixMsc& m, const ExchangeDecomposition& d) {
  Segments out;
  for (const auto& seg : d.segments) {
    Word w = word_of(m, seg.sends);
    const Word r = word_of(m, seg.receives);
    w.insert(w.end(), r.begin(), r.end());
    out.exchanges.push_back(std::move(w));
  }
  return out;
}

RestrictionVerdict half_duplex_verdict(const PrefixMsc& m) {
  RestrictionVerdict v;
  v.property = Property::HalfDuplex;
  if (auto bad = half_duplex_violation(m)) {
    v.holds = false;
    v.witness = CrossingPair{m.label(bad->first_send), m.label(bad->second_send), word_of(m, bad->prefix)};
  } else {
    v.holds = true;
  }
  return v;
}

RestrictionVerdict exist_bound_verdict(const PrefixMsc& m, std::optional<std::size_t> max_b) {
  RestrictionVerdict v;
  v.property = Property::ExistBounded;
  if (auto b = min_existential_bound(m, max_b)) {
    v.holds = true;
    v.parameter = b->bound;
    v.witness = word_of(m, b->order);
  } else {
    v.holds = false;
    v.parameter = max_b.value_or(m.send_count());
    v.note = "no linearization within the bound";
  }
  return v;
}

RestrictionVerdict sync_verdict(const PrefixMsc& m, std::optional<std::size_t> k) {
  RestrictionVerdict v;
  v.property = Property::Synchronisable;
  const auto d = k ? is_k_synchronous(m, *k) : min_sync_k(m);
  if (d) {
    v.holds = true;
    v.parameter = d->k;
    v.witness = segments_of(m, *d);
  } else {
    v.holds = false;
    v.parameter = k;
    v.note = k ? "not " + std::to_string(*k) + "-synchronous" : "not synchronisable for any k";
  }
  return v;
}

std::vector<RestrictionVerdict> classify_msc(const PrefixMsc& m, std::optional<std::size_t> max_b) {
  return {half_duplex_verdict(m), exist_bound_verdict(m, max_b), sync_verdict(m)};
}

WordClassification classify_word(const Word& w, std::optional<std::size_t> max_b) {
  const PrefixMsc m = msc_of(w);
  WordClassification c;
  c.half_duplex = is_half_duplex_word(w);
  if (auto b = min_existential_bound(m, max_b)) c.exist_bound = b->bound;
  if (auto d = min_sync_k(m)) c.sync_k = d->k;
  return c;
}

std::optional<CrossingPair> half_duplex_word_witness(const Word& w) {
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const Word prefix(w.begin(), w.begin() + static_cast<long>(i));
    if (is_half_duplex_word(prefix)) continue;
    // The pending heads of the two opposite channels, earlier send first.
    const Channel c = w[i - 1].channel();
    const Channel rc{c.to, c.from};
    auto head = [&prefix](const Channel& ch) {
      std::size_t received = 0;
      std::vector<std::size_t> sends;
      for (std::size_t j = 0; j < prefix.size(); ++j) {
        if (prefix[j].channel() != ch) continue;
        if (prefix[j].is_send()) {
          sends.push_back(j);
        } else {
          ++received;
        }
      }
      return sends.at(received);
    };
    auto a = head(c);
    auto b = head(rc);
    if (b < a) std::swap(a, b);
    return CrossingPair{prefix[a], prefix[b], prefix};
  }
  return std::nullopt;
}

std::vector<RestrictionVerdict> classify_word_verdicts(const Word& w, std::optional<std::size_t> max_b) {
  const PrefixMsc m = msc_of(w);
  RestrictionVerdict hd;
  hd.property = Property::HalfDuplex;
  hd.holds = true;
  if (auto bad = half_duplex_word_witness(w)) {
    hd.holds = false;
    hd.witness = *bad;
  }
  return {hd, exist_bound_verdict(m, max_b), sync_verdict(m)};
}

}  // namespace chanres
