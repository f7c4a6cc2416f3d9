#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "towerlab/io.hpp"

using namespace towerlab;
namespace fs = std::filesystem;

namespace {

const fs::path kFamilies = TOWERLAB_FAMILIES_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "towerlab_io_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_text(const std::string& name, const std::string& text) {
  fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST(FamilyFile, RoundTripsShippedFamilies) {
  for (const auto& entry : fs::directory_iterator(kFamilies)) {
    FamilyFile f = read_family(entry.path());
    const std::string once = serialize_family(f);
    FamilyFile again = parse_family(once);
    EXPECT_EQ(serialize_family(again), once) << entry.path();
    EXPECT_EQ(family_digest(again), family_digest(f)) << entry.path();
    EXPECT_EQ(family_digest(f).size(), 16u);
  }
}

TEST(FamilyFile, RoundTripsSynthesisTrace) {
  DirectionSpec spec;
  spec.mode = DirectionSpec::Mode::three_way;
  spec.R1 = {Rational(1, 3)};
  spec.R2 = {Rational(1, 3), Rational(1, 2)};
  spec.S = {Rational(2, 3), Rational(1, 4), Rational(3, 4), Rational(1, 5), Rational(2, 5), Rational(3, 5)};
  SynthesisResult syn = synthesize(spec, 7);
  FamilyFile f{syn.params, 7, syn.trace};
  FamilyFile again = parse_family(serialize_family(f));
  ASSERT_TRUE(again.trace.has_value());
  EXPECT_TRUE(again.trace->recheck(std::get<AfsParams>(again.family)).empty());
  EXPECT_EQ(family_digest(again), family_digest(f));
  EXPECT_EQ(again.trace->stages.size(), syn.trace.stages.size());
}

TEST(FamilyFile, DigestSeesParameterChanges) {
  FamilyFile a = read_family(kFamilies / "vl_geometric.json");
  FamilyFile b = a;
  b.stages = 5;
  b.family = VlSpec::materialize(2, CutRule::geometric_rule(6, 2), 5);
  EXPECT_NE(family_digest(a), family_digest(b));
}

TEST(FamilyFile, ParseErrors) {
  EXPECT_THROW(parse_family(""), ParseError);
  EXPECT_THROW(parse_family("[1,2]"), ParseError);
  EXPECT_THROW(parse_family(R"({"format":2,"kind":"afs4","stages":1})"), ParseError);
  EXPECT_THROW(parse_family(R"({"format":1,"kind":"odometer","stages":1})"), ParseError);
  EXPECT_THROW(parse_family(R"({"format":1,"kind":"afs4"})"), ParseError);
  EXPECT_THROW(parse_family(R"({"format":1,"kind":"afs4","stages":1,"preset":"infinite-ergodic-index",)"
                            R"("prefix":{"a":["1"]}})"),
               ParseError);
  EXPECT_THROW(parse_family(R"({"format":1,"kind":"vl","L":2,"stages":2,"cut_rule":{"kind":"cubic"}})"), ParseError);
  EXPECT_THROW(parse_family(R"({"format":1,"kind":"afs4","stages":0,"prefix":{"a":["x"]}})"), ParseError);
}

TEST(FamilyFile, ConstructionErrorsNameTheStage) {
  try {
    parse_family(R"({"format":1,"kind":"vl","L":2,"stages":3,"cut_rule":{"kind":"constant","value":"2"}})");
    FAIL() << "expected ConstructionError";
  } catch (const ConstructionError& e) {
    EXPECT_EQ(e.stage(), 1);
  }
  // Stage 1 needs a value the one-entry prefix cannot give.
  EXPECT_THROW(parse_family(R"({"format":1,"kind":"afs4","stages":1,)"
                            R"("prefix":{"a":["3"],"b":["10"],"c":["4"],"d":["20"]}})"),
               ConstructionError);
}

TEST(Report, Format) {
  Report r("demo");
  r.add("x", Rational(2, 4));
  r.add("y", BigInt(7));
  r.check("positive", true);
  r.check("small", false, "too big");
  r.result("fail");
  EXPECT_EQ(r.text(),
            "# towerlab report format=1 command=demo\n"
            "x=1/2\n"
            "y=7\n"
            "check.positive=pass\n"
            "check.small=fail\n"
            "check.small.detail=too big\n"
            "RESULT=fail\n");
  EXPECT_FALSE(r.all_checks_pass());
}

TEST(Csv, HeaderRowsAndWidth) {
  CsvWriter csv({"i", "value"});
  csv.row({"1", "1/4"});
  EXPECT_EQ(csv.text(), "i,value\n1,1/4\n");
  EXPECT_THROW(csv.row({"1"}), std::invalid_argument);
}

TEST(HeightCache, StoresAndReuses) {
  fs::path dir = scratch("cache");
  fs::remove_all(dir);
  FamilyFile f = read_family(kFamilies / "infinite_ergodic_index.json");
  auto fresh = cached_heights(f, 5, dir);
  ASSERT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
  auto cached = cached_heights(f, 5, dir);
  auto direct = heights(f.family, 5);
  ASSERT_EQ(cached.size(), direct.size());
  for (std::size_t n = 0; n < direct.size(); ++n) {
    EXPECT_EQ(cached[n].H, direct[n].H);
    EXPECT_EQ(cached[n].h, direct[n].h);
    EXPECT_EQ(fresh[n].H, direct[n].H);
  }
}

TEST(Cli, BuildFourCutExample) {
  Outcome r = run({"build", (kFamilies / "four_cut_example.json").string(), "--stage", "1"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(has_line(r.out, "column.1.height=41"));
  EXPECT_TRUE(has_line(r.out, "column.1.offsets=[0,4,15,20]"));
  EXPECT_TRUE(has_line(r.out, "RESULT=ok"));
  // Deterministic output.
  EXPECT_EQ(run({"build", (kFamilies / "four_cut_example.json").string(), "--stage", "1"}).out, r.out);
}

TEST(Cli, ParseAndValidationErrors) {
  EXPECT_EQ(run({"build", write_text("empty.json", "").string()}).code, cli::kParseError);
  EXPECT_EQ(run({"build"}).code, cli::kParseError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kParseError);
  Outcome vl = run({"build", write_text("few_cuts.json",
                                    R"({"format":1,"kind":"vl","L":2,"stages":3,)"
                                    R"("cut_rule":{"kind":"constant","value":"2"}})")
                             .string()});
  EXPECT_EQ(vl.code, cli::kFailure);
  EXPECT_NE(vl.err.find("stage 1"), std::string::npos) << vl.err;
  EXPECT_EQ(run({"synthesize", "--R", "2/2"}).code, cli::kParseError);
  EXPECT_EQ(run({"synthesize", "--R", "2/4"}).code, cli::kParseError);
}

TEST(Cli, SynthesizeVerifyClassify) {
  const std::string out = scratch("r12.json").string();
  ASSERT_EQ(run({"synthesize", "--R", "1/2", "--stages", "8", "--out", out}).code, cli::kOk);
  Outcome v = run({"verify", out});
  EXPECT_EQ(v.code, cli::kOk) << v.out;
  EXPECT_TRUE(has_line(v.out, "check.trace=pass"));
  EXPECT_TRUE(has_line(v.out, "RESULT=pass"));
  Outcome c = run({"classify", out, "--ratio", "1/2"});
  EXPECT_EQ(c.code, cli::kOk);
  EXPECT_TRUE(has_line(c.out, "verdict.basis=certificate"));

  const std::string tw = scratch("tw.json").string();
  ASSERT_EQ(run({"synthesize", "--mode", "three-way", "--R2", "1/2", "--stages", "9", "--out", tw}).code, cli::kOk);
  EXPECT_EQ(run({"verify", tw}).code, cli::kOk);
  EXPECT_EQ(run({"classify", tw, "--ratio", "1/2"}).code, cli::kConservativeNotErgodic);

  EXPECT_EQ(run({"classify", (kFamilies / "infinite_ergodic_index.json").string(), "--ratio", "1/2"}).code,
            cli::kNotConservative);
  EXPECT_EQ(
      run({"classify", (kFamilies / "four_cut_example.json").string(), "--ratio", "1/2", "--horizon", "0"}).code,
      cli::kUnknown);
}

TEST(Cli, SynthesizeReportsRequiredPrefix) {
  Outcome r = run({"synthesize", "--R", "1/2", "--S", "1/3", "--stages", "6", "--out", scratch("short.json").string()});
  EXPECT_EQ(r.code, cli::kFailure);
  EXPECT_TRUE(has_line(r.out, "required_prefix=2"));
}

TEST(Cli, CorrelateRows) {
  const std::string ex = (kFamilies / "four_cut_example.json").string();
  EXPECT_EQ(run({"correlate", ex, "--set", "0:0", "--range", "0..0"}).out, "i,value\n0,1/1\n");
  Outcome lag = run({"correlate", ex, "--set", "0:0", "--range", "4..4"});
  EXPECT_EQ(lag.out, "i,value\n4,1/4\n");

  Outcome pre = run({"correlate", (kFamilies / "infinite_ergodic_index.json").string(), "--set", "4:0", "--powers", "1,2",
                 "--range", "1..200"});
  ASSERT_EQ(pre.code, cli::kOk) << pre.err;
  std::istringstream rows(pre.out);
  std::string line;
  std::getline(rows, line);
  int count = 0;
  while (std::getline(rows, line)) {
    EXPECT_EQ(line.substr(line.find(',')), ",0/1") << line;
    ++count;
  }
  EXPECT_EQ(count, 200);

  EXPECT_EQ(run({"correlate", ex, "--set", "1:99", "--range", "0..0"}).code, cli::kFailure);
}

TEST(Cli, LambdaCsv) {
  const std::string pre = (kFamilies / "infinite_ergodic_index.json").string();
  EXPECT_EQ(run({"lambda", pre, "--ratio", "1/2", "--set", "4:0", "--horizon", "1000"}).out, "i,value\n");
  const std::string csv = scratch("lambda.csv").string();
  EXPECT_EQ(run({"lambda", pre, "--ratio", "1/1", "--set", "1:0", "--horizon", "500", "--out", csv}).code, cli::kOk);
  std::ifstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "i,value");
  EXPECT_FALSE(first.empty());
}

TEST(Cli, WitnessWorkflow) {
  const std::string geo = (kFamilies / "vl_geometric.json").string();
  Outcome ok = run({"witness", geo, "--k", "2", "--n", "2", "--M", "3", "--horizon", "25746876"});
  EXPECT_EQ(ok.code, cli::kOk) << ok.out << ok.err;
  EXPECT_TRUE(has_line(ok.out, "witness.measure_b=1785/262144"));
  EXPECT_EQ(run({"witness", geo, "--k", "2", "--n", "2", "--M", "3"}).code, cli::kOk);
  Outcome bad = run({"witness", geo, "--k", "2", "--n", "2", "--M", "3", "--horizon", "25746876", "--corrupt"});
  EXPECT_EQ(bad.code, cli::kFailure);
  EXPECT_TRUE(has_line(bad.out, "RESULT=fail"));

  const std::string slow = write_text("slow.json", R"({"format":1,"kind":"vl","L":2,"stages":5,)"
                                                   R"("cut_rule":{"kind":"geometric","c":"1","beta":"3/2","floor":"3"}})")
                               .string();
  Outcome tail = run({"witness", slow, "--k", "2", "--n", "2", "--M", "3"});
  EXPECT_EQ(tail.code, cli::kFailure);
  EXPECT_TRUE(has_line(tail.out, "tail_bound=16/5"));
}

TEST(Cli, SeriesIndependenceProbe) {
  Outcome s = run({"series", (kFamilies / "vl_sqrt.json").string()});
  EXPECT_EQ(s.code, cli::kOk);
  EXPECT_TRUE(has_line(s.out, "ergodic_index=2"));
  const std::string c = (kFamilies / "vl_constant.json").string();
  const std::string deep = write_text("deep.json", R"({"format":1,"kind":"vl","L":1,"stages":12,)"
                                                   R"("cut_rule":{"kind":"constant","value":"3"}})")
                               .string();
  Outcome ind = run({"independence", deep, "--I", "3", "--J", "1", "--n", "2", "--count", "3"});
  EXPECT_EQ(ind.code, cli::kOk) << ind.err;
  EXPECT_TRUE(has_line(ind.out, "RESULT=pass"));
  Outcome probe = run({"probe", deep, "--E", "3", "--F", "2", "--n", "2"});
  EXPECT_EQ(probe.code, cli::kOk) << probe.err;
  EXPECT_TRUE(has_line(probe.out, "RESULT=found"));
  EXPECT_EQ(run({"independence", c, "--I", "0", "--J", "0", "--n", "1"}).code, cli::kFailure);
  EXPECT_EQ(run({"--seed", "7", "series", c}).code, cli::kOk);
}
