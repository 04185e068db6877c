/** @file test_cli.cpp
 *  @brief Command-line front end: outputs, exit codes, determinism, export round trip. */
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "opeforge/cli.hpp"
#include "opeforge/reftable.hpp"

using namespace opeforge;

namespace {
struct Run {
  int code;
  std::string out, err;
};
Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}
std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("opeforge_cli_" + name)).string();
}
std::string slurp(const std::string& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("coeff command") {
  auto a = run({"coeff", "--n", "1", "--left", "phi^1", "--a", "phi^2", "--c", "phi^7"});
  CHECK(a.code == kExitPass);
  CHECK(a.out.rfind("r^2/6\n", 0) == 0);
  auto b = run({"coeff", "--n", "0", "--left", "phi^3", "--a", "phi^2", "--c", "phi^5"});
  CHECK(b.code == kExitPass);
  CHECK(b.out.rfind("1\n", 0) == 0);
  auto c = run({"coeff", "--n", "1", "--left", "phi^3", "--a", "phi", "--c", "phi^2"});
  CHECK(c.code == kExitUnsupported);
  CHECK(c.out.find("unsupported") != std::string::npos);
  CHECK(run({"coeff", "--n", "1", "--a", "phi^(", "--c", "phi"}).code == kExitUsage);
  CHECK(run({"coeff", "--n", "1", "--a", "phi"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  auto j = run({"--format", "json", "coeff", "--n", "0", "--left", "1", "--a", "phi", "--c", "phi"});
  CHECK(j.code == kExitPass);
  CHECK(j.out.find("\"status\": \"exact\"") != std::string::npos);
}

TEST_CASE("sum command") {
  auto a = run({"sum", "--l1", "0", "--l2", "0", "--a", "1"});
  CHECK(a.code == kExitPass);
  CHECK(a.out.rfind("1/2 ", 0) == 0);
  auto b = run({"sum", "--l1", "2", "--l2", "1", "--a", "2"});
  CHECK(b.out.rfind("0 ", 0) == 0);
  CHECK(b.out.find("case i:") != std::string::npos);
}

TEST_CASE("table command: family listing, check and corrupted reference") {
  auto f = run({"table", "--family", "1|phi^2|phi^p|phi^{p+2}"});
  CHECK(f.code == kExitPass);
  CHECK(f.out.find("published: 20*p^2*L+5*p*(p-1)") != std::string::npos);
  CHECK(f.out.find("80*log(r) + 10") != std::string::npos);  // p = 2

  auto ok = run({"table", "--check", "--family", "1|phi^2|phi^p|phi^{p+2}"});
  CHECK(ok.code == kExitPass);

  // Negative control: alter one published value.
  std::string text = slurp(default_reference_path());
  auto pos = text.find("20*p^2*L+5*p*(p-1)");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 18, "20*p^2*L+6*p*(p-1)");
  std::string bad = tmp("bad_table.json");
  std::ofstream(bad) << text;
  auto r = run({"table", "--check", "--reference", bad, "--family", "1|phi^2|phi^p|phi^{p+2}"});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("FAIL  C1-phi2-p2") != std::string::npos);
  CHECK(r.out.find("first mismatch") != std::string::npos);
  std::filesystem::remove(bad);

  CHECK(run({"table", "--check", "--reference", tmp("missing.json")}).code == kExitUsage);
}

TEST_CASE("verify command") {
  auto a = run({"verify", "ring"});
  CHECK(a.code == kExitPass);
  CHECK(a.out.find("PASS  ring_round_trip") != std::string::npos);
  auto b = run({"verify", "ring"});
  CHECK(a.out == b.out);  // deterministic
  CHECK(run({"verify", "nonsense"}).code == kExitUsage);
  auto j = run({"--format", "json", "verify", "angular"});
  CHECK(j.code == kExitPass);
  CHECK(j.out.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("export, import and csv") {
  std::string e1 = tmp("e1.json"), e2 = tmp("e2.json");
  CHECK(run({"export", "--table", "--p-max", "2", "--l-max", "1", "--out", e1}).code == kExitPass);
  CHECK(run({"import", "--in", e1, "--out", e2}).code == kExitPass);
  CHECK(slurp(e1) == slurp(e2));
  CHECK_FALSE(slurp(e1).empty());
  std::filesystem::remove(e1);
  std::filesystem::remove(e2);

  auto csv = run({"--format", "csv", "export", "--n", "1", "--a", "phi", "--c", "phi^3*d2phi_1"});
  CHECK(csv.code == kExitPass);
  CHECK(csv.out.rfind(csv_header() + "\n", 0) == 0);
  CHECK(csv.out.find("1,1,phi,phi^3*d2phi_1,") != std::string::npos);

  CHECK(run({"export", "--n", "0", "--a", "phi", "--c", "phi", "--out", "/nonexistent_dir/x.json"}).code == kExitIO);
  CHECK(run({"import", "--in", tmp("nope.json")}).code == kExitIO);
}

TEST_CASE("cache persistence through the tool") {
  std::string c = tmp("cache.jsonl");
  std::filesystem::remove(c);
  auto a = run({"--cache", c, "coeff", "--n", "1", "--left", "phi^2", "--a", "phi", "--c", "phi^3"});
  CHECK(a.code == kExitPass);
  CHECK(std::filesystem::exists(c));
  auto b = run({"--cache", c, "coeff", "--n", "1", "--left", "phi^2", "--a", "phi", "--c", "phi^3"});
  CHECK(a.out == b.out);
  auto info = run({"--cache", c, "cache", "info"});
  CHECK(info.out.find("valid entries: ") != std::string::npos);
  CHECK(run({"--cache", c, "cache", "clear"}).code == kExitPass);
  CHECK_FALSE(std::filesystem::exists(c));
}

TEST_CASE("precision configuration") {
  CHECK(run({"--precision", "8", "sum", "--l1", "0", "--l2", "0", "--a", "1"}).code == kExitUsage);
  CHECK(run({"--precision", "30", "sum", "--l1", "0", "--l2", "0", "--a", "1"}).code == kExitPass);
}

TEST_CASE("installed binary exit codes") {
  std::string bin = OPEFORGE_CLI_PATH;
  auto status = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  CHECK(status("sum --l1 0 --l2 0 --a 1") == 0);
  CHECK(status("coeff --n 1 --left phi^3 --a phi --c phi^2") == 3);
  CHECK(status("verify bogus") == 2);
}
