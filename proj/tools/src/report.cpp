#include "report.hpp"

#include <cstdint>
#include <cstdio>

namespace chanres::cli {

Json words_json(const std::set<Word>& words) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(format_word(w));
  return out;
}

namespace {

struct WitnessVisitor {
  Json operator()(std::monostate) const { return nullptr; }
  Json operator()(const Word& w) const { return {{"type", "trace"}, {"word", format_word(w)}}; }
  Json operator()(const Segments& s) const {
    Json ex = Json::array();
    for (const auto& w : s.exchanges) ex.push_back(format_word(w));
    return {{"type", "segments"}, {"exchanges", ex}};
  }
  Json operator()(const CrossingPair& c) const {
    return {{"type", "crossing-pair"},
            {"first", c.first.to_string()},
            {"second", c.second.to_string()},
            {"prefix", format_word(c.prefix)}};
  }
  Json operator()(const Pumping& p) const {
    return {{"type", "pumping"},
            {"lasso", format_lasso(p.lasso)},
            {"channel", p.channel.to_string()},
            {"growth", p.growth}};
  }
  Json operator()(const AtVertex& a) const {
    return {{"type", "vertex"}, {"vertex", a.vertex}, {"detail", format_word(a.detail)}};
  }
};

}  // namespace

Json witness_json(const Witness& w) { return std::visit(WitnessVisitor{}, w); }

Json verdict_json(const RestrictionVerdict& v) {
  Json out;
  out["property"] = std::string(to_string(v.property));
  out["holds"] = v.holds;
  out["parameter"] = v.parameter ? Json(*v.parameter) : Json(nullptr);
  out["bounded_claim"] = v.bounded_claim;
  out["witness"] = witness_json(v.witness);
  out["note"] = v.note;
  return out;
}

Json queues_json(const std::map<Channel, std::vector<Message>>& queues) {
  Json out = Json::object();
  for (const auto& [ch, q] : queues) out[ch.to_string()] = q;
  return out;
}

Json exploration_json(const ExplorationResult& r) {
  Json out;
  out["configurations"] = r.configurations;
  out["depth_hit"] = r.depth_hit;
  out["cap_hit"] = r.cap_hit;
  out["cap_witness"] = r.cap_witness ? Json(format_word(*r.cap_witness)) : Json(nullptr);
  Json maximal = Json::array();
  for (const auto& t : r.maximal) {
    maximal.push_back({{"word", format_word(t.word)}, {"complete", t.complete()}, {"queues", queues_json(t.queues)}});
  }
  out["maximal"] = maximal;
  Json lassos = Json::array();
  for (const auto& l : r.lassos) {
    Json growth = Json::object();
    for (const auto& [ch, g] : l.growth) growth[ch.to_string()] = g;
    lassos.push_back({{"lasso", format_lasso(l.lasso)}, {"growth", growth}});
  }
  out["lassos"] = lassos;
  return out;
}

Json translation_check_json(const TranslationCheck& c) {
  auto opt = [](const std::optional<Word>& w) { return w ? Json(format_word(*w)) : Json(nullptr); };
  Json out;
  out["max_len"] = c.max_len;
  out["type_words"] = c.type_words;
  out["hmsc_words"] = c.hmsc_words;
  out["inclusion"] = c.inclusion;
  out["strict"] = c.strict;
  out["closure_equal"] = c.closure_equal;
  out["inclusion_counterexample"] = opt(c.inclusion_counterexample);
  out["closure_counterexample"] = opt(c.closure_counterexample);
  return out;
}

Json vertex_map_json(const TranslationOutput& t) {
  Json out = Json::object();
  for (std::size_t v = 0; v < t.hmsc.size(); ++v) {
    Json entry;
    entry["subterm"] = print_global_type(*t.origin[v].subterm);
    if (t.origin[v].branch) entry["branch"] = *t.origin[v].branch;
    out[t.hmsc.vertex(v).name] = entry;
  }
  return out;
}

std::string verdict_summary(const RestrictionVerdict& v) {
  std::string s = std::string(to_string(v.property)) + ": " + (v.holds ? "yes" : "no");
  if (v.parameter) s += v.property == Property::ExistBounded ? " B=" : " k=";
  if (v.parameter) s += std::to_string(*v.parameter);
  if (v.bounded_claim) s += " (bounded)";
  if (const auto* c = std::get_if<CrossingPair>(&v.witness)) {
    s += " [" + c->first.to_string() + " / " + c->second.to_string() + "]";
  } else if (const auto* p = std::get_if<Pumping>(&v.witness)) {
    s += " [" + format_lasso(p->lasso) + " grows " + p->channel.to_string() + "]";
  } else if (const auto* a = std::get_if<AtVertex>(&v.witness); a && !v.holds) {
    s += " [vertex " + a->vertex + "]";
  }
  return s;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace chanres::cli
