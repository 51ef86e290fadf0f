#pragma once

// JSON renderings of analysis results. Field order is fixed so that reports
// for the same input and bounds are byte-identical.

#include <json.hpp>

#include "chanres/csm.hpp"
#include "chanres/hmsc.hpp"
#include "chanres/restrictions.hpp"
#include "chanres/translate.hpp"

namespace chanres::cli {

using Json = nlohmann::ordered_json;

Json words_json(const std::set<Word>& words);
Json witness_json(const Witness& w);
Json verdict_json(const RestrictionVerdict& v);
Json queues_json(const std::map<Channel, std::vector<Message>>& queues);
Json exploration_json(const ExplorationResult& r);
Json translation_check_json(const TranslationCheck& c);
Json vertex_map_json(const TranslationOutput& t);

/// One line per verdict, e.g. "half-duplex: no (P>Q!m / Q>P!m)".
std::string verdict_summary(const RestrictionVerdict& v);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

}  // namespace chanres::cli
