#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + DPD_BINARY + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = ::popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int st = ::pclose(f);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DPD_DATA_DIR) + "/" + name; }

std::string module_args(const std::string& alg, const std::string& mod) {
  return "--algebra " + data(alg) + " --module " + data(mod);
}

}  // namespace

TEST(Cli, ModuleDpdOnFix1) {
  auto r = run("module dpd " + module_args("fix1.json", "fix1_k.json") + " --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], 0);
}

TEST(Cli, ComplexDpdOnXfix2) {
  auto r = run("complex dpd --algebra " + data("fix2.json") + " --complex " + data("xfix2.json") +
               " --window 20 --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], 1);
  EXPECT_FALSE(j["witness_complex"].is_null());
}

TEST(Cli, ShiftedXfix2) {
  auto r = run("complex dpd --algebra " + data("fix2.json") + " --complex " + data("xfix2_shift3.json") +
               " --format json");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], 4);
}

TEST(Cli, InfiniteWithCycle) {
  auto r = run("module dpd " + module_args("fix3.json", "fix3_s1.json") + " --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], "+inf");
  EXPECT_EQ(j["certificate"]["kind"], "syzygy_cycle");
}

TEST(Cli, UndeterminedIsSuccess) {
  auto r = run("module dpd " + module_args("honesty.json", "honesty_k.json") + " --window 6 --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j["value"].is_object());
  EXPECT_GE(j["value"]["undetermined_geq"].get<int>(), 3);
}

TEST(Cli, CorruptDocumentIsInputError) {
  EXPECT_EQ(run("module dpd " + module_args("fix1.json", "corrupt.json")).status, 1);
}

TEST(Cli, MismatchedModuleIsInputError) {
  EXPECT_EQ(run("module dpd " + module_args("fix2.json", "fix3_s1.json")).status, 1);
}

TEST(Cli, MissingFileIsInputError) {
  EXPECT_EQ(run("module dpd " + module_args("fix1.json", "no_such_file.json")).status, 1);
}

TEST(Cli, BadWindowIsInputError) {
  EXPECT_EQ(run("module dpd " + module_args("fix1.json", "fix1_k.json") + " --window 0").status, 1);
}

TEST(Cli, RhomDimensions) {
  auto r = run("complex rhom --algebra " + data("fix2.json") + " --complex " + data("xfix2.json") + " --target " +
               data("xfix2.json") + " --from -2 --to 2 --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["homology_dims"]["0"], 1);
  EXPECT_EQ(j["homology_dims"]["-1"], 0);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run("algebra check --algebra " + data("fix3.json")).status, 0);
  EXPECT_EQ(run("module is-dp " + module_args("fix4.json", "fix4_k.json")).status, 0);
  EXPECT_EQ(run("complex homology --algebra " + data("fix2.json") + " --complex " + data("xfix2.json")).status, 0);
  EXPECT_EQ(run("resolve " + module_args("fix3.json", "fix3_s1.json") + " --degree 3").status, 0);
  auto ta = run("check-ta " + module_args("fix1.json", "fix1_k.json") + " --window 8 --format json");
  ASSERT_EQ(ta.status, 0);
  EXPECT_TRUE(nlohmann::json::parse(ta.out)["pass"].get<bool>());
}

TEST(Cli, DeterministicAndCacheTransparent) {
  auto dir = std::filesystem::temp_directory_path() / "dpd_cli_test_cache";
  std::filesystem::remove_all(dir);
  const std::string args = "complex dpd --algebra " + data("fix2.json") + " --complex " + data("xfix2.json") +
                           " --format json";
  auto a = run(args + " --cache off");
  auto b = run(args + " --cache off");
  auto c = run(args, "DPD_CACHE=" + dir.string());
  auto d = run(args, "DPD_CACHE=" + dir.string());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(a.out, d.out);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}
