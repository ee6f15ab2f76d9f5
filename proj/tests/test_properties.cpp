#include <gtest/gtest.h>

#include "dpd/suite.hpp"

using namespace dpd;

namespace {

suite::PropertyFn find(const std::string& key) {
  for (auto& [k, fn] : suite::registry())
    if (k == key) return fn;
  throw std::out_of_range(key);
}

std::vector<std::string> keys() {
  std::vector<std::string> out;
  for (auto& [k, fn] : suite::registry()) out.push_back(k);
  return out;
}

}  // namespace

class Property : public ::testing::TestWithParam<std::string> {};

TEST_P(Property, PassesAtDefaultSeedAndWindow) {
  suite::Config cfg;
  auto r = suite::run_property(GetParam(), find(GetParam()), cfg);
  EXPECT_EQ(r.status, suite::Status::Pass) << r.to_json().dump(1);
}

TEST_P(Property, PassesAtAnotherSeed) {
  suite::Config cfg;
  cfg.seed = 0x5eed;
  auto r = suite::run_property(GetParam(), find(GetParam()), cfg);
  EXPECT_EQ(r.status, suite::Status::Pass) << r.to_json().dump(1);
}

TEST_P(Property, WindowOneNeverFails) {
  suite::Config cfg;
  cfg.window = 1;
  auto r = suite::run_property(GetParam(), find(GetParam()), cfg);
  EXPECT_NE(r.status, suite::Status::Fail) << r.to_json().dump(1);
}

INSTANTIATE_TEST_SUITE_P(Suite, Property, ::testing::ValuesIn(keys()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (c == '-') c = '_';
                           return s;
                         });

TEST(Suite, WindowOneSkipsDingProjectiveProperties) {
  suite::Config cfg;
  cfg.window = 1;
  auto r = suite::run_property("fixtures", find("fixtures"), cfg);
  EXPECT_EQ(r.status, suite::Status::Skipped);
}

TEST(Suite, Deterministic) {
  suite::Config cfg;
  cfg.seed = 42;
  for (const char* key : {"functorial", "shift", "ext-oracle"}) {
    auto a = suite::run_property(key, find(key), cfg).to_json().dump();
    auto b = suite::run_property(key, find(key), cfg).to_json().dump();
    EXPECT_EQ(a, b) << key;
  }
}
