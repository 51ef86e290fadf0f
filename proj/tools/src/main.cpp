// chanres: classify MSCs, HMSCs, global types and CSMs against the
// half-duplex, existentially bounded and synchronisable channel
// restrictions.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "chanres/csm.hpp"
#include "chanres/errors.hpp"
#include "chanres/global_type.hpp"
#include "chanres/hmsc.hpp"
#include "chanres/indist.hpp"
#include "chanres/msc.hpp"
#include "chanres/restrictions.hpp"
#include "chanres/translate.hpp"
#include "report.hpp"

#ifndef CHANRES_VERSION
#define CHANRES_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace chanres;
using cli::Json;

namespace {

enum Exit : int { kHolds = 0, kViolated = 1, kInconclusive = 2, kInputError = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string kind;
  bool quiet = false;
  bool timing = false;
  std::size_t depth = 12;
  std::size_t cap = 6;
  std::size_t max_len = 12;
  std::size_t unroll = 3;
  std::optional<std::size_t> max_b;
  std::optional<std::size_t> k;
  std::string property;
  std::vector<std::string> words;
  std::string out;
  bool verify = false;
  bool map = false;
  bool fuse = false;
  bool closure = false;
};

using Model = std::variant<NamedMsc, Hmsc, GlobalTypePtr, Csm, Word>;

struct Input {
  std::string name;
  std::string kind;
  std::string digest;
  Model model;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string kind_of(const Options& o) {
  if (!o.kind.empty()) return o.kind;
  const auto ext = fs::path(o.file).extension().string();
  if (ext == ".bmsc") return "bmsc";
  if (ext == ".hmsc") return "hmsc";
  if (ext == ".gt") return "gt";
  if (ext == ".csm") return "csm";
  if (ext == ".word") return "word";
  throw InputError("cannot infer the input kind of " + o.file + "; use --kind");
}

Input load(const Options& o) {
  const std::string text = read_file(o.file);
  Input in{fs::path(o.file).filename().string(), kind_of(o), cli::fnv1a64(text), Word{}};
  if (in.kind == "bmsc") {
    auto m = parse_bmsc(text);
    if (auto rep = m.msc.validate(); !rep.ok()) {
      throw InputError(std::string(to_string(rep.violations.front().kind)) + ": " + rep.violations.front().detail);
    }
    in.model = std::move(m);
  } else if (in.kind == "hmsc") {
    in.model = parse_hmsc(text);
  } else if (in.kind == "gt") {
    in.model = parse_global_type(text);
  } else if (in.kind == "csm") {
    auto a = parse_csm(text);
    if (auto problems = csm_problems(a); !problems.empty()) throw InputError(problems.front());
    in.model = std::move(a);
  } else if (in.kind == "word") {
    in.model = parse_word(text);
  } else {
    throw InputError("unknown input kind '" + in.kind + "'");
  }
  return in;
}

void require_valid(const Hmsc& h) {
  const auto rep = validate_hmsc(h);
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    throw InputError(std::string(to_string(v.kind)) + (v.vertex.empty() ? "" : " at " + v.vertex) + ": " + v.detail);
  }
}

Json header(const std::string& command, const Options& o, const Input* in) {
  Json r;
  r["tool"] = "chanres";
  r["version"] = CHANRES_VERSION;
  r["command"] = command;
  if (in != nullptr) {
    r["input"] = {{"file", in->name}, {"kind", in->kind}, {"digest", "fnv1a64:" + in->digest}};
  } else {
    r["input"] = nullptr;
  }
  Json b;
  b["depth"] = o.depth;
  b["cap"] = o.cap;
  b["max_len"] = o.max_len;
  b["max_b"] = o.max_b ? Json(*o.max_b) : Json("sends");
  b["unroll"] = o.unroll;
  b["k"] = o.k ? Json(*o.k) : Json(nullptr);
  r["bounds"] = b;
  return r;
}

struct Outcome {
  Json report;
  int exit = kHolds;
  std::vector<std::string> summary;
};

int verdict_exit(const RestrictionVerdict& v) {
  if (v.bounded_claim) return kInconclusive;
  return v.holds ? kHolds : kViolated;
}

std::vector<RestrictionVerdict> classify_input(const Input& in, const Options& o, Json& extra) {
  CsmBounds bounds{o.depth, o.cap, o.max_b, o.k, o.unroll};
  struct Visitor {
    const Options& o;
    const CsmBounds& bounds;
    Json& extra;
    std::vector<RestrictionVerdict> operator()(const NamedMsc& m) const {
      return {half_duplex_verdict(m.msc), exist_bound_verdict(m.msc, o.max_b), sync_verdict(m.msc, o.k)};
    }
    std::vector<RestrictionVerdict> operator()(const Hmsc& h) const {
      require_valid(h);
      return {hmsc_half_duplex(h), hmsc_exist_bound_verdict(h, o.max_b), hmsc_k_synchronisable(h, o.k)};
    }
    std::vector<RestrictionVerdict> operator()(const GlobalTypePtr& g) const {
      const auto t = translate(g);
      extra["hmsc_vertices"] = t.hmsc.size();
      return (*this)(t.hmsc);
    }
    std::vector<RestrictionVerdict> operator()(const Csm& a) const {
      auto c = classify_csm(a, bounds);
      extra["exploration"] = {{"configurations", c.exploration.configurations},
                              {"maximal_traces", c.exploration.maximal.size()},
                              {"lassos", c.exploration.lassos.size()},
                              {"depth_hit", c.exploration.depth_hit},
                              {"cap_hit", c.exploration.cap_hit}};
      return c.verdicts;
    }
    std::vector<RestrictionVerdict> operator()(const Word& w) const {
      const auto m = msc_of(w);
      auto v = classify_word_verdicts(w, o.max_b);
      v[2] = sync_verdict(m, o.k);
      return v;
    }
  };
  return std::visit(Visitor{o, bounds, extra}, in.model);
}

Outcome cmd_classify(const Options& o, const std::string& command) {
  const Input in = load(o);
  Outcome out;
  out.report = header(command, o, &in);
  Json extra = Json::object();
  auto verdicts = classify_input(in, o, extra);
  if (command == "check") {
    const Property wanted = o.property == "hd"    ? Property::HalfDuplex
                            : o.property == "exb" ? Property::ExistBounded
                                                  : Property::Synchronisable;
    std::erase_if(verdicts, [&](const auto& v) { return v.property != wanted; });
    out.exit = verdict_exit(verdicts.front());
  }
  Json vs = Json::array();
  for (const auto& v : verdicts) {
    vs.push_back(cli::verdict_json(v));
    out.summary.push_back(in.name + ": " + cli::verdict_summary(v));
  }
  out.report["verdicts"] = vs;
  for (auto& [key, value] : extra.items()) out.report[key] = value;
  return out;
}

Outcome cmd_validate(const Options& o) {
  Outcome out;
  Input in{fs::path(o.file).filename().string(), kind_of(o), "", Word{}};
  const std::string text = read_file(o.file);
  in.digest = cli::fnv1a64(text);
  Json violations = Json::array();
  if (in.kind == "bmsc") {
    for (const auto& v : parse_bmsc(text).msc.validate().violations) {
      violations.push_back({{"kind", std::string(to_string(v.kind))}, {"detail", v.detail}});
    }
  } else if (in.kind == "hmsc") {
    for (const auto& v : validate_hmsc(parse_hmsc(text)).violations) {
      violations.push_back({{"kind", std::string(to_string(v.kind))}, {"vertex", v.vertex}, {"detail", v.detail}});
    }
  } else if (in.kind == "gt") {
    parse_global_type(text);  // well-formedness is enforced while parsing
  } else if (in.kind == "csm") {
    for (const auto& p : csm_problems(parse_csm(text))) violations.push_back({{"kind", "csm"}, {"detail", p}});
  } else if (in.kind == "word") {
    if (!is_channel_compliant(parse_word(text))) {
      violations.push_back({{"kind", "not-channel-compliant"}, {"detail", "a receive precedes its matching send"}});
    }
  } else {
    throw InputError("unknown input kind '" + in.kind + "'");
  }
  out.report = header("validate", o, &in);
  out.report["valid"] = violations.empty();
  out.report["violations"] = violations;
  out.exit = violations.empty() ? kHolds : kViolated;
  out.summary.push_back(in.name + ": " + (violations.empty() ? "valid" : std::to_string(violations.size()) + " violation(s)"));
  for (const auto& v : violations) out.summary.push_back("  " + v["kind"].get<std::string>() + ": " + v["detail"].get<std::string>());
  return out;
}

Outcome cmd_translate(const Options& o) {
  const Input in = load(o);
  const auto* g = std::get_if<GlobalTypePtr>(&in.model);
  if (g == nullptr) throw InputError("translate expects a global type");
  Outcome out;
  out.report = header("translate", o, &in);
  const auto t = translate(*g);
  Hmsc h = o.fuse ? fuse_empty_vertices(t.hmsc) : t.hmsc;
  std::string name = fs::path(o.file).stem().string();
  std::replace_if(name.begin(), name.end(), [](unsigned char c) { return !std::isalnum(c) && c != '_'; }, '_');
  if (!name.empty()) h.set_name(name);
  out.report["vertices"] = h.size();
  out.report["edges"] = h.edges().size();
  out.report["fused"] = o.fuse;
  const std::string text = print_hmsc(h);
  if (o.out.empty()) {
    out.report["hmsc"] = text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.out);
    f << text;
    out.report["hmsc_file"] = fs::path(o.out).filename().string();
  }
  if (o.map) out.report["vertex_map"] = cli::vertex_map_json(t);
  out.summary.push_back(in.name + ": " + std::to_string(h.size()) + " vertices, " + std::to_string(h.edges().size()) +
                        " edges");
  if (o.verify) {
    const auto check = verify_translation(*g, o.max_len);
    out.report["verification"] = cli::translation_check_json(check);
    out.exit = check.ok() ? kHolds : kViolated;
    out.summary.push_back(std::string("inclusion: ") + (check.inclusion ? "yes" : "no") + (check.strict ? " (strict)" : "") +
                          ", closure equality: " + (check.closure_equal ? "yes" : "no") + " up to length " +
                          std::to_string(o.max_len));
  }
  return out;
}

Outcome cmd_lang(const Options& o) {
  const Input in = load(o);
  Outcome out;
  out.report = header("lang", o, &in);
  std::set<Word> words;
  Json extra = Json::object();
  if (const auto* m = std::get_if<NamedMsc>(&in.model)) {
    if (m->msc.size() <= o.max_len) {
      for (auto& w : linearizations(m->msc)) words.insert(std::move(w));
    }
  } else if (const auto* h = std::get_if<Hmsc>(&in.model)) {
    require_valid(*h);
    auto lang = hmsc_language(*h, o.max_len, o.unroll);
    words = std::move(lang.words);
    extra["prefixes"] = cli::words_json(lang.prefixes);
  } else if (const auto* g = std::get_if<GlobalTypePtr>(&in.model)) {
    auto lang = type_language(*g, o.max_len);
    words = std::move(lang.finite);
    Json lassos = Json::array();
    for (const auto& l : lang.lassos) lassos.push_back(format_lasso(l));
    extra["lassos"] = lassos;
  } else if (const auto* a = std::get_if<Csm>(&in.model)) {
    auto ex = explore(*a, o.depth, o.cap);
    Json incomplete = Json::array();
    for (const auto& t : ex.maximal) {
      if (t.word.size() > o.max_len) continue;
      words.insert(t.word);
      if (!t.complete()) incomplete.push_back(format_word(t.word));
    }
    extra["incomplete"] = incomplete;
    Json lassos = Json::array();
    for (const auto& l : ex.lassos) lassos.push_back(format_lasso(l.lasso));
    extra["lassos"] = lassos;
  } else {
    const auto& w = std::get<Word>(in.model);
    if (w.size() <= o.max_len) words.insert(w);
  }
  if (o.closure) words = closure(words, o.max_len);
  out.report["closure"] = o.closure;
  out.report["count"] = words.size();
  out.report["words"] = cli::words_json(words);
  for (auto& [key, value] : extra.items()) out.report[key] = value;
  out.summary.push_back(in.name + ": " + std::to_string(words.size()) + " word(s) up to length " + std::to_string(o.max_len));
  return out;
}

Outcome cmd_closure(const Options& o) {
  std::set<Word> words;
  std::optional<Input> in;
  if (!o.file.empty()) {
    const std::string text = read_file(o.file);
    in = Input{fs::path(o.file).filename().string(), "words", cli::fnv1a64(text), Word{}};
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
      words.insert(parse_word(line));
    }
  }
  for (const auto& w : o.words) words.insert(parse_word(w));
  if (words.empty()) throw InputError("closure needs --word or a words file");
  std::size_t longest = 0;
  for (const auto& w : words) longest = std::max(longest, w.size());
  Outcome out;
  out.report = header("closure", o, in ? &*in : nullptr);
  const auto result = closure(words, std::max(longest, o.max_len));
  out.report["seeds"] = cli::words_json(words);
  out.report["count"] = result.size();
  out.report["words"] = cli::words_json(result);
  out.summary.push_back(std::to_string(words.size()) + " seed word(s), closure of " + std::to_string(result.size()));
  return out;
}

Outcome cmd_explore(const Options& o) {
  const Input in = load(o);
  const auto* a = std::get_if<Csm>(&in.model);
  if (a == nullptr) throw InputError("explore expects a CSM");
  Outcome out;
  out.report = header("explore", o, &in);
  const auto ex = explore(*a, o.depth, o.cap);
  out.report["exploration"] = cli::exploration_json(ex);
  const auto dead = check_deadlock(*a, o.depth, o.cap);
  if (dead) {
    Json states = Json::object();
    for (const auto& [p, s] : dead->configuration.states) states[p] = s;
    out.report["deadlock"] = {{"states", states},
                              {"queues", cli::queues_json(dead->configuration.queues)},
                              {"trace", format_word(dead->trace)}};
  } else {
    out.report["deadlock"] = nullptr;
  }
  out.summary.push_back(in.name + ": " + std::to_string(ex.configurations) + " configurations, " +
                        std::to_string(ex.maximal.size()) + " maximal trace(s), " + std::to_string(ex.lassos.size()) +
                        " lasso(s)" + (dead ? ", deadlock after " + format_word(dead->trace) : ", no deadlock found"));
  return out;
}

Json error_report(const std::string& command, const std::string& kind, const std::string& message,
                  std::optional<std::pair<std::size_t, std::size_t>> where = std::nullopt) {
  Json r;
  r["tool"] = "chanres";
  r["version"] = CHANRES_VERSION;
  r["command"] = command;
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  if (where) {
    e["line"] = where->first;
    e["column"] = where->second;
  }
  r["error"] = e;
  return r;
}

void add_input_options(CLI::App* sub, Options& o, bool file_required = true) {
  auto* f = sub->add_option("file", o.file, "Input file (.bmsc, .hmsc, .gt, .csm, .word)");
  if (file_required) f->required();
  sub->add_option("--kind", o.kind, "Override the input kind")
      ->check(CLI::IsMember({"bmsc", "hmsc", "gt", "csm", "word"}));
}

void add_bounds(CLI::App* sub, Options& o) {
  sub->add_option("--depth", o.depth, "CSM exploration depth")->capture_default_str();
  sub->add_option("--cap", o.cap, "CSM channel capacity before a configuration is not expanded")->capture_default_str();
  sub->add_option("--max-len", o.max_len, "Longest word enumerated")->capture_default_str();
  sub->add_option("--max-b", o.max_b, "Largest channel bound tried (default: number of sends)");
  sub->add_option("--unroll", o.unroll, "Lasso unrolling for bounded checks")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-restriction analyses for MSCs, HMSCs, global types and CSMs"};
  app.set_version_flag("--version", CHANRES_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--quiet,-q", o.quiet, "No human summary on stderr");
  app.add_flag("--timing", o.timing, "Add elapsed time to the report");

  auto* check = app.add_subcommand("check", "Decide one restriction");
  add_input_options(check, o);
  add_bounds(check, o);
  check->add_option("--property,-p", o.property, "hd, exb or ksync")
      ->required()
      ->check(CLI::IsMember({"hd", "exb", "ksync"}));
  check->add_option("--k", o.k, "Fixed k for ksync (default: minimal k)");

  auto* classify = app.add_subcommand("classify", "Decide all three restrictions");
  add_input_options(classify, o);
  add_bounds(classify, o);
  classify->add_option("--k", o.k, "Fixed k for the synchronisability verdict");

  auto* translate_cmd = app.add_subcommand("translate", "Global type to HMSC");
  add_input_options(translate_cmd, o);
  add_bounds(translate_cmd, o);
  translate_cmd->add_option("-o,--output", o.out, "Write the HMSC here instead of into the report");
  translate_cmd->add_flag("--verify", o.verify, "Compare type and HMSC languages up to --max-len");
  translate_cmd->add_flag("--map", o.map, "Report the subterm behind each vertex");
  translate_cmd->add_flag("--fuse", o.fuse, "Merge empty pass-through vertices");

  auto* lang = app.add_subcommand("lang", "Enumerate the language up to --max-len");
  add_input_options(lang, o);
  add_bounds(lang, o);
  lang->add_flag("--closure", o.closure, "Close the words under indistinguishability");

  auto* closure_cmd = app.add_subcommand("closure", "Indistinguishability closure of words");
  closure_cmd->add_option("file", o.file, "File with one word per line");
  closure_cmd->add_option("--word,-w", o.words, "A word, e.g. \"P>Q!m P>Q?m\"");
  closure_cmd->add_option("--max-len", o.max_len, "Longest word kept")->capture_default_str();

  auto* explore_cmd = app.add_subcommand("explore", "Explore a CSM's runs");
  add_input_options(explore_cmd, o);
  add_bounds(explore_cmd, o);

  auto* validate = app.add_subcommand("validate", "Check a model's structural conditions");
  add_input_options(validate, o);
  add_bounds(validate, o);

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (command == "check" || command == "classify") {
      out = cmd_classify(o, command);
    } else if (command == "translate") {
      out = cmd_translate(o);
    } else if (command == "lang") {
      out = cmd_lang(o);
    } else if (command == "closure") {
      out = cmd_closure(o);
    } else if (command == "explore") {
      out = cmd_explore(o);
    } else {
      out = cmd_validate(o);
    }
  } catch (const ParseError& e) {
    out.report = error_report(command, "parse", e.what(), std::pair{e.line(), e.column()});
    out.exit = kInputError;
    out.summary.push_back(o.file + ":" + e.what());
  } catch (const BudgetExceeded& e) {
    out.report = error_report(command, "budget", e.what());
    out.exit = kInconclusive;
    out.summary.push_back(std::string("budget exceeded: ") + e.what());
  } catch (const std::exception& e) {
    // InputError, InvalidModel, UndefinedMsc and friends.
    out.report = error_report(command, "input", e.what());
    out.exit = kInputError;
    out.summary.push_back(o.file + ": " + e.what());
  }
  if (o.timing) {
    out.report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  out.report["exit"] = out.exit;
  std::cout << out.report.dump(2) << '\n';
  if (!o.quiet) {
    for (const auto& line : out.summary) std::cerr << line << '\n';
  }
  return out.exit;
}
