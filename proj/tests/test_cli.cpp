#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "fatpoints/cli.hpp"

namespace fp = fatpoints;
using fp::Int;
using fp::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fatpoints");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fp::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json parse_line(const Outcome& o) { return json::parse(o.out); }

// Parsing and re-serializing the output reproduces it byte for byte.
void expect_round_trip(const Outcome& o) {
  ASSERT_FALSE(o.out.empty());
  EXPECT_EQ(json::parse(o.out).dump() + "\n", o.out);
}

}  // namespace

TEST(VectorFlags, Shorthand) {
  EXPECT_EQ(fp::cli::parse_int_vector("3,3,3", "-r"), (std::vector<Int>{3, 3, 3}));
  EXPECT_EQ(fp::cli::parse_int_vector("120x10", "-r"), std::vector<Int>(10, 120));
  EXPECT_EQ(fp::cli::parse_int_vector("3x2,5", "-r"), (std::vector<Int>{3, 3, 5}));
  EXPECT_EQ(fp::cli::parse_int_vector("-1,4", "-r"), (std::vector<Int>{-1, 4}));
  for (const char* bad : {"", "3,,4", "3,a", "3x0", "x3", "3.5"}) {
    try {
      fp::cli::parse_int_vector(bad, "-r");
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const fp::cli::usage_error& e) {
      EXPECT_NE(std::string(e.what()).find("-r"), std::string::npos);
    }
  }
}

TEST(Dim, NineCubics) {
  const auto o = invoke({"dim", "-n", "2", "-r", "3,3,3,3,3,3,3,3,3", "-k", "3", "--method", "algorithm"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = parse_line(o);
  EXPECT_EQ(j.at("h"), 1);
  EXPECT_EQ(j.at("c"), 1);
  EXPECT_EQ(j.at("method"), "algorithm");
  expect_round_trip(o);
}

TEST(Dim, PointCountExpandsSingleValue) {
  const auto o = invoke({"dim", "-l", "9", "-r", "3", "-k", "3"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(parse_line(o).at("h"), 1);
  const auto bad = invoke({"dim", "-l", "4", "-r", "3,3", "-k", "3"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("-r"), std::string::npos);
}

TEST(Dim, MultiplicitiesGiveD) {
  const auto o = invoke({"dim", "-m", "2x5", "-k", "4", "--trace"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = parse_line(o);
  EXPECT_EQ(j.at("d"), 1);
  EXPECT_EQ(j.at("c"), 0);
  EXPECT_TRUE(j.at("trace").is_array());
  expect_round_trip(o);
}

TEST(Dim, ProjectiveLine) {
  const auto o = invoke({"dim", "-n", "1", "-r", "2,2", "-k", "2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(parse_line(o).at("h"), 1);
}

TEST(Dim, HigherDimensionNeedsOracle) {
  EXPECT_EQ(invoke({"dim", "-n", "3", "-r", "2,2", "-k", "2"}).code, 1);
  const auto o = invoke({"dim", "-n", "3", "-m", "1x5", "-k", "2", "--method", "oracle"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(parse_line(o).at("d"), 5);
}

TEST(Dim, BothAgreeOnGenericPoints) {
  const auto o = invoke({"dim", "-r", "3x5", "-k", "4", "--method", "both"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = parse_line(o);
  EXPECT_EQ(j.at("h"), 1);
  EXPECT_TRUE(j.at("agree").get<bool>());
  expect_round_trip(o);
}

// Six points on a conic lie on a conic; generic ones do not.
TEST(Dim, BothExitsTwoOnDisagreement) {
  const auto o = invoke({"dim", "-r", "2x6", "-k", "2", "--method", "both", "--kind", "conic"});
  EXPECT_EQ(o.code, 2);
  EXPECT_FALSE(parse_line(o).at("agree").get<bool>());
  EXPECT_NE(o.err.find("oracle"), std::string::npos);
}

TEST(Dim, TooManyPointsIsADomainError) {
  const auto o = invoke({"dim", "-r", "3x10", "-k", "5"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("9"), std::string::npos);
}

TEST(Dim, TextFormat) {
  const auto o = invoke({"dim", "-r", "2x4", "-k", "2", "--format", "text", "--trace"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("h = 2\n", 0), 0u);
  EXPECT_NE(o.out.find("step 5"), std::string::npos);
}

TEST(Usage, OffendingFlagIsNamed) {
  const auto prime = invoke({"oracle", "-r", "3,3,3", "-k", "5", "--prime", "5"});
  EXPECT_EQ(prime.code, 1);
  EXPECT_NE(prime.err.find("--prime"), std::string::npos);
  const auto composite = invoke({"oracle", "-r", "3,3,3", "-k", "5", "--prime", "21"});
  EXPECT_EQ(composite.code, 1);
  EXPECT_NE(composite.err.find("--prime"), std::string::npos);
  const auto kind = invoke({"oracle", "-r", "3,3,3", "-k", "5", "--kind", "ellipse"});
  EXPECT_EQ(kind.code, 1);
  EXPECT_NE(kind.err.find("--kind"), std::string::npos);
  const auto vec = invoke({"dim", "-r", "3,x", "-k", "5"});
  EXPECT_EQ(vec.code, 1);
  EXPECT_NE(vec.err.find("-r"), std::string::npos);
  const auto both = invoke({"dim", "-r", "3", "-m", "3", "-k", "5"});
  EXPECT_EQ(both.code, 1);
  const auto nok = invoke({"dim", "-r", "3,3,3"});
  EXPECT_EQ(nok.code, 1);
  EXPECT_NE(nok.err.find("-k"), std::string::npos);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  const auto fmt = invoke({"decompose", "-f", "2,2", "--format", "yaml"});
  EXPECT_EQ(fmt.code, 1);
  EXPECT_NE(fmt.err.find("--format"), std::string::npos);
}

TEST(Usage, HelpExitsZero) {
  const auto o = invoke({"--help"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("decompose"), std::string::npos);
  const auto sub = invoke({"oracle", "--help"});
  EXPECT_EQ(sub.code, 0);
  EXPECT_NE(sub.out.find("--kind"), std::string::npos);
}

TEST(Decompose, TripleOfTwos) {
  const auto o = invoke({"decompose", "-f", "2,2,2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(parse_line(o), json::parse(R"({"4":1,"2":2})"));
  expect_round_trip(o);
  const auto t = invoke({"decompose", "-f", "2,2,2", "--format", "text"});
  EXPECT_EQ(t.out, "4: 1\n2: 2\n");
}

TEST(Series, AppendixInLatex) {
  const auto o = invoke({"series", "-r", "120x10", "--kmax", "173", "--which", "C", "--format", "latex"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.rfind("375 q^{173} + 741 q^{172} + ", 0), 0u);
  EXPECT_NE(o.out.find(" + 4431 q^{160} + "), std::string::npos);
  EXPECT_EQ(o.out.substr(o.out.size() - 22), "6 q^{2} + 3 q^{1} + 1\n");
}

TEST(Series, HilbertSeriesJsonAndOracle) {
  const auto o = invoke({"series", "-r", "2x4"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(parse_line(o), json::parse("[1,3,2,0,0]"));
  expect_round_trip(o);
  const auto orc = invoke({"series", "-r", "2x4", "--method", "oracle"});
  EXPECT_EQ(orc.code, 0) << orc.err;
  EXPECT_EQ(parse_line(orc), parse_line(o));
  EXPECT_EQ(invoke({"series", "-r", "3x10"}).code, 1);
  EXPECT_EQ(invoke({"series", "-r", "3x4", "--which", "Q"}).code, 1);
}

TEST(Series, CsvFormat) {
  const auto o = invoke({"series", "-r", "2x4", "--which", "C", "--format", "csv"});
  EXPECT_EQ(o.out, "k,coefficient\n0,1\n1,3\n2,2\n3,0\n4,0\n");
}

TEST(Oracle, RankResultJson) {
  const auto o = invoke({"oracle", "-r", "2,2,2,2", "-k", "2", "--seeds", "4,5", "--method", "both"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = parse_line(o);
  EXPECT_EQ(j.at("value_h"), 2);
  EXPECT_EQ(j.at("seeds_used"), json::parse("[4,5]"));
  EXPECT_TRUE(j.at("duality_agrees").get<bool>());
  EXPECT_TRUE(j.at("consensus").get<bool>());
  EXPECT_EQ(j.at("method"), "both");
  expect_round_trip(o);
}

TEST(Scan, JsonCsvAndCache) {
  const auto dir = std::filesystem::temp_directory_path() / "fatpoints-cli-scan";
  std::filesystem::remove_all(dir);
  const auto o = invoke({"scan", "-l", "4", "--rmax", "3", "--cache-dir", dir.string()});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto j = parse_line(o);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 2u + 5u + 8u);
  for (const auto& rec : j) EXPECT_TRUE(rec.at("equal").get<bool>());
  EXPECT_TRUE(std::filesystem::exists(dir / "scan.jsonl"));
  expect_round_trip(o);
  const auto csv = invoke({"scan", "-l", "4", "--rmax", "1", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("l,r,k,h,c,equal,method", 0), 0u);
  EXPECT_NE(csv.out.find("4,1x4,0,1,1,true,algorithm"), std::string::npos);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(invoke({"scan", "-l", "10", "--rmax", "2"}).code, 1);
}

TEST(VerifyAppendix, ClosedFormPasses) {
  const auto o = invoke({"verify-appendix"});
  EXPECT_EQ(o.code, 0);
  const auto j = parse_line(o);
  EXPECT_TRUE(j.at("closed_form").at("ok").get<bool>());
  EXPECT_EQ(j.at("closed_form").at("compared"), 359);
  const auto orc = invoke({"verify-appendix", "--full-oracle", "--degrees", "0,1,2", "--seeds", "1"});
  EXPECT_EQ(orc.code, 0) << orc.err;
  EXPECT_TRUE(parse_line(orc).at("oracle").at("ok").get<bool>());
}

TEST(Probe, SquareCheck) {
  const auto o = invoke({"probe", "-l", "16", "--mmax", "1", "--seeds", "1"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(parse_line(o).at("ok").get<bool>());
  EXPECT_EQ(invoke({"probe", "-l", "12", "--mmax", "1"}).code, 1);
}
