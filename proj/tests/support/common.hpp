#pragma once

// Helpers shared by the unit tests: fixture loading and the run seed.

#include <cstdint>
#include <string>

#include "chanres/csm.hpp"
#include "chanres/global_type.hpp"
#include "chanres/hmsc.hpp"
#include "chanres/msc.hpp"

namespace chanres::testing {

/// Seed for randomized tests; set with --seed=N, default 20240521.
std::uint64_t base_seed();
void set_base_seed(std::uint64_t s);

std::string fixture_path(const std::string& name);
std::string read_text(const std::string& path);

PrefixMsc fixture_bmsc(const std::string& name);
Hmsc fixture_hmsc(const std::string& name);
GlobalTypePtr fixture_type(const std::string& name);
Csm fixture_csm(const std::string& name);

struct CommandResult {
  int exit_code = -1;
  std::string out;
};
/// Runs a shell command, capturing stdout; stderr is discarded.
CommandResult run_command(const std::string& command);

/// Shorthand for parse_word.
Word W(const char* text);

}  // namespace chanres::testing
