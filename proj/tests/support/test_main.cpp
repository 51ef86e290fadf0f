#include <gtest/gtest.h>

#include <cstring>
#include <string>

#include "common.hpp"

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) chanres::testing::set_base_seed(std::stoull(argv[i] + 7));
  }
  return RUN_ALL_TESTS();
}
