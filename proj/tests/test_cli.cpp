#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "linkhom/cli.hpp"

using namespace linkhom;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}
}  // namespace

TEST(Cli, BoundsForU) {
  auto j = run_json({"bounds", "--family", "U", "--k", "2", "--h", "3"});
  EXPECT_EQ(j["schema"], "linkhom-report");
  EXPECT_EQ(j["bounds"]["cbound"], -8);
  EXPECT_EQ(j["bounds"]["kawcav"], -2);
  EXPECT_EQ(j["bounds"]["lobb_upper"], 2);
  EXPECT_EQ(j["quantities"]["V"], 12);
}

TEST(Cli, BoundsForD) {
  auto j = run_json({"bounds", "--family", "D", "--r", "1", "--k", "-1", "--t", "-1"});
  EXPECT_EQ(j["bounds"]["cbound"], 0);
  EXPECT_EQ(j["bounds"]["kawcav"], -2);
  EXPECT_EQ(j["bounds"]["lobb_upper"], 0);
  auto csv = run({"bounds", "--family", "D", "--r", "1", "--k", "-1", "--t", "-1", "--format", "csv"});
  EXPECT_EQ(csv.out,
            "V,Vplus,Vminus,lplus,lminus,splus,sminus,deltaminus,ls,w,cbound,lobb_lower,lobb_upper,kawcav\n"
            "6,2,2,0,0,3,3,1,1,-1,0,-2,0,-2\n");
}

TEST(Cli, BoundsForBraid) {
  auto j = run_json({"bounds", "--braid", "2: 1 1 1"});
  EXPECT_EQ(j["bounds"]["cbound"], 2);
  EXPECT_EQ(j["input"]["crossings"], 3);
}

TEST(Cli, InvariantsNegativeTrefoil) {
  auto j = run_json({"invariants", "--braid", "2: -1 -1 -1", "--fields", "2"});
  ASSERT_EQ(j["fields"].size(), 1u);
  EXPECT_EQ(j["fields"][0]["s"], -2);
  EXPECT_EQ(j["fields"][0]["c"], 1);
  EXPECT_EQ(j["fields"][0]["cbar"], 1);
  EXPECT_EQ(j["bennequin_check"], true);
}

TEST(Cli, InvariantsUnlinkAndKnot) {
  auto u = run_json({"invariants", "--braid", "2:", "--fields", "0"});
  EXPECT_EQ(u["fields"][0]["s"], -1);
  auto k = run_json({"invariants", "--builtin", "9_42", "--fields", "2,0"});
  ASSERT_EQ(k["fields"].size(), 2u);
  EXPECT_EQ(k["fields"][0]["field"], "F2");
  EXPECT_EQ(k["fields"][0]["s"], 0);
  EXPECT_EQ(k["fields"][1]["field"], "Q");
  EXPECT_EQ(k["fields"][1]["s"], 0);
}

TEST(Cli, HomologyTables) {
  auto kh = run_json({"homology", "--builtin", "trefoil+", "--theory", "kh", "--fields", "0"});
  auto dims = kh["results"][0]["dims"];
  ASSERT_EQ(dims.size(), 4u);
  std::set<std::tuple<int, int, int>> got;
  for (auto& e : dims) got.insert({e["i"].get<int>(), e["q"].get<int>(), e["dim"].get<int>()});
  EXPECT_EQ(got, (std::set<std::tuple<int, int, int>>{{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}}));

  auto bn = run_json({"homology", "--builtin", "unknot", "--theory", "bn"});
  EXPECT_EQ(bn["results"][0]["degrees"][0]["free_rank"], 2);

  auto tl = run_json({"homology", "--braid", "2: 1", "--theory", "tlee", "--fields", "2"});
  EXPECT_EQ(tl["results"][0]["ranks"], nlohmann::json::parse(R"([{"i":0,"rank":2}])"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bounds", "--family", "D", "--r", "1", "--k", "1", "--t", "-1"}).code, exit_regime);
  EXPECT_EQ(run({"bounds", "--braid", "2 1"}).code, exit_parse);
  EXPECT_EQ(run({"bounds"}).code, exit_parse);
  EXPECT_EQ(run({"bounds", "--braid", "2: 1", "--builtin", "unknot"}).code, exit_parse);
  EXPECT_EQ(run({"bounds", "--builtin", "nope"}).code, exit_parse);
  EXPECT_EQ(run({"frobnicate"}).code, exit_parse);
  EXPECT_EQ(run({"invariants", "--braid", "2: 1", "--fields", "4"}).code, exit_parse);
  EXPECT_EQ(run({"invariants", "--braid", "2: 1 1 1", "--max-crossings", "2"}).code, exit_cap);
  EXPECT_EQ(run({"homology", "--braid", "2: 1", "--theory", "xyz"}).code, exit_parse);
  EXPECT_EQ(run({"--help"}).code, exit_ok);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, exit_parse);
}

TEST(Cli, CrossingCapFromEnvironment) {
  ::setenv("LINKHOM_MAX_CROSSINGS", "2", 1);
  auto capped = run({"invariants", "--braid", "2: 1 1 1", "--fields", "2"});
  auto flag = run({"invariants", "--braid", "2: 1 1 1", "--fields", "2", "--max-crossings", "5"});
  ::unsetenv("LINKHOM_MAX_CROSSINGS");
  EXPECT_EQ(capped.code, exit_cap);
  EXPECT_NE(capped.err.find("cap"), std::string::npos);
  EXPECT_EQ(flag.code, exit_ok);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"verify", "--suite", "sproperties", "--seed", "11", "--count", "4", "--format", "json"};
  auto a = run(args);
  auto b = run(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  auto x = run({"invariants", "--braid", "3: 1 -2 1 -2", "--format", "csv"});
  auto y = run({"invariants", "--braid", "3: 1 -2 1 -2", "--format", "csv"});
  EXPECT_EQ(x.out, y.out);
}

TEST(Cli, FileInput) {
  std::string path = ::testing::TempDir() + "linkhom_cli_test.txt";
  {
    std::ofstream out(path);
    out << "braid 2 1 1 1\n";
  }
  auto j = run_json({"bounds", "--file", path});
  EXPECT_EQ(j["input"]["kind"], "file");
  EXPECT_EQ(j["bounds"]["cbound"], 2);
  std::remove(path.c_str());
}
