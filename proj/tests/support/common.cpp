#include "common.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef CHANRES_FIXTURE_DIR
#error "CHANRES_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace chanres::testing {

namespace {
std::uint64_t seed = 20240521;
}

std::uint64_t base_seed() { return seed; }
void set_base_seed(std::uint64_t s) { seed = s; }

std::string fixture_path(const std::string& name) { return std::string(CHANRES_FIXTURE_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PrefixMsc fixture_bmsc(const std::string& name) { return parse_bmsc(read_text(fixture_path(name))).msc; }
Hmsc fixture_hmsc(const std::string& name) { return parse_hmsc(read_text(fixture_path(name))); }
GlobalTypePtr fixture_type(const std::string& name) { return parse_global_type(read_text(fixture_path(name))); }
Csm fixture_csm(const std::string& name) { return parse_csm(read_text(fixture_path(name))); }

Word W(const char* text) { return parse_word(text); }

CommandResult run_command(const std::string& command) {
  CommandResult r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace chanres::testing
