#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "towerlab/dynamics.hpp"
#include "towerlab/ergodic_index.hpp"
#include "towerlab/io.hpp"
#include "towerlab/product_analysis.hpp"
#include "towerlab/rule.hpp"
#include "towerlab/synthesis.hpp"

namespace towerlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T, class F>
std::string list(const std::vector<T>& values, F&& show) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(show(v));
  return "[" + join(parts, ",") + "]";
}

std::string big_list(const std::vector<BigInt>& values) {
  return list(values, [](const BigInt& v) { return to_string(v); });
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Rational> directions(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& group : items) {
    for (const auto& s : split(group, ',')) {
      try {
        out.push_back(parse_direction(s));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  return out;
}

/// "stage:i,j,a-b" to a level set.
LevelSet level_set(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("set \"" + text + "\" must look like stage:index,index,lo-hi");
  int stage = 0;
  try {
    stage = std::stoi(text.substr(0, colon));
  } catch (const std::exception&) {
    throw UsageError("set \"" + text + "\": bad stage");
  }
  std::vector<BigInt> indices;
  for (const auto& item : split(text.substr(colon + 1), ',')) {
    auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      indices.push_back(parse_bigint(item));
    } else {
      BigInt lo = parse_bigint(item.substr(0, dash)), hi = parse_bigint(item.substr(dash + 1));
      if (hi < lo || hi - lo > 1000000) throw UsageError("set \"" + text + "\": bad range " + item);
      for (BigInt x = lo; x <= hi; ++x) indices.push_back(x);
    }
  }
  if (indices.empty()) throw UsageError("set \"" + text + "\" lists no levels");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return LevelSet(stage, std::move(indices));
}

/// "p/q" with positive integers, not necessarily reduced or ordered.
std::pair<BigInt, BigInt> ratio(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) throw UsageError("ratio \"" + text + "\" must look like p/q");
  BigInt p = parse_bigint(text.substr(0, slash)), q = parse_bigint(text.substr(slash + 1));
  if (p <= 0 || q <= 0) throw UsageError("ratio \"" + text + "\" needs positive p and q");
  return {p, q};
}

std::pair<BigInt, BigInt> lag_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("range \"" + text + "\" must look like a..b");
  BigInt a = parse_bigint(text.substr(0, dots)), b = parse_bigint(text.substr(dots + 2));
  if (b < a) throw UsageError("range \"" + text + "\" is empty");
  return {a, b};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

struct Loaded {
  explicit Loaded(const std::string& path) : file(read_family(path)), tower(file.family) {}
  FamilyFile file;
  Tower tower;
};

void describe_family(Report& report, const FamilyFile& file) {
  report.add("family.kind", family_kind(file.family));
  report.add("family.digest", family_digest(file));
  report.add("family.stages", std::to_string(file.stages));
}

int exit_for(Regime regime) {
  switch (regime) {
    case Regime::ergodic:
      return kOk;
    case Regime::conservative_not_ergodic:
      return kConservativeNotErgodic;
    case Regime::not_conservative:
      return kNotConservative;
    case Regime::unknown_at_horizon:
      return kUnknown;
  }
  return kFailure;
}

void add_verdict(Report& report, const Verdict& v) {
  report.add("verdict.pair", to_string(v.p) + "/" + to_string(v.q));
  report.add("verdict.input", to_string(v.input_p) + "/" + to_string(v.input_q));
  report.add("verdict.negative", v.negative ? "true" : "false");
  report.add("verdict.reduced", v.reduced ? "true" : "false");
  report.add("verdict.swapped", v.swapped ? "true" : "false");
  report.add("verdict.regime", to_string(v.regime));
  report.add("verdict.basis", to_string(v.basis));
  report.add("verdict.threshold", std::to_string(v.threshold));
  report.add("verdict.horizon", std::to_string(v.horizon));
  for (const auto& [k, value] : v.facts) report.add("fact." + k, value);
}

// ---- commands ----

struct BuildArgs {
  std::string file;
  int stage = 1;
};

int cmd_build(const BuildArgs& args, const std::string& echo, std::ostream& out) {
  Loaded in(args.file);
  in.tower.require_stage(args.stage);
  Report report("build");
  report.add("command", echo);
  describe_family(report, in.file);
  const auto hs = cached_heights(in.file, args.stage, cache_dir_from_env());
  for (int n = 0; n <= args.stage; ++n) {
    const std::string key = "column." + std::to_string(n) + ".";
    const Column& c = in.tower.column(n);
    report.add(key + "height", c.height);
    if (in.tower.is_afs()) report.add(key + "marker_height", hs[n].h);
    report.add(key + "width", in.tower.width(n));
    report.add(key + "offsets", big_list(c.embed_offsets));
    BigInt spacers = 0;
    for (const auto& r : c.spacer_ranges) spacers += r.size();
    report.add(key + "spacers", spacers);
  }
  if (in.tower.is_afs()) {
    const AfsParams& params = in.tower.afs();
    for (int n = 0; n < args.stage && n <= params.last_stage(); ++n) {
      const AfsStage& s = params.stage(n);
      const std::string key = "stage." + std::to_string(n) + ".";
      report.add(key + "abcd", big_list({s.a, s.b, s.c, s.d}));
      report.add(key + "plqm", big_list({s.p, s.l, s.q, s.m}));
    }
  } else {
    const VlSpec& spec = in.tower.vl();
    for (int n = 1; n < args.stage && n <= spec.last_stage(); ++n) {
      const VlStage& s = spec.stage(n);
      const std::string key = "stage." + std::to_string(n) + ".";
      report.add(key + "r", s.r);
      report.add(key + "s", list(s.u, [](std::int64_t x) { return std::to_string(x); }));
      report.add(key + "sigma", s.sigma);
    }
  }
  out << report.text();
  return kOk;
}

struct VerifyArgs {
  std::string file;
  std::string schema = "V";
};

int cmd_verify(const VerifyArgs& args, const std::string& echo, std::ostream& out) {
  Loaded in(args.file);
  Report report("verify");
  report.add("command", echo);
  describe_family(report, in.file);
  if (in.tower.is_afs()) {
    const AfsParams& params = in.tower.afs();
    ValidationReport v = args.schema == "W" ? validate_W(params, params.last_stage())
                                            : validate_V(params, params.last_stage());
    std::vector<std::string> failed;
    for (const auto& e : v.failures()) failed.push_back("stage " + std::to_string(e.stage) + " " + e.check);
    report.check("schema_" + args.schema, v.ok(), join(failed, "; "));
    if (in.file.trace) {
      auto problems = in.file.trace->recheck(params);
      report.check("trace", problems.empty(), join(problems, "; "));
    }
  } else {
    report.check("construction", true, "stages 1.." + std::to_string(in.tower.vl().last_stage()) + " materialized");
  }
  // The file must reproduce itself.
  FamilyFile again = parse_family(serialize_family(in.file));
  report.check("round_trip", family_digest(again) == family_digest(in.file));
  report.result(report.all_checks_pass() ? "pass" : "fail");
  out << report.text();
  return report.all_checks_pass() ? kOk : kFailure;
}

struct SynthesizeArgs {
  std::vector<std::string> R, S, R2;
  std::string mode = "ergodic-set";
  int stages = 8;
  std::string out_file;
};

int cmd_synthesize(const SynthesizeArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  DirectionSpec spec;
  if (args.mode == "ergodic-set") {
    spec.mode = DirectionSpec::Mode::ergodic_set;
    spec.R = directions(args.R);
    if (!args.R2.empty()) throw UsageError("--R2 only applies to --mode three-way");
  } else {
    spec.mode = DirectionSpec::Mode::three_way;
    spec.R1 = directions(args.R);
    spec.R2 = directions(args.R2);
  }
  spec.S = directions(args.S);
  Report report("synthesize");
  report.add("command", echo);
  SynthesisResult result;
  try {
    result = synthesize(spec, args.stages);
  } catch (const InsufficientPrefix& e) {
    report.add("required_prefix", std::to_string(e.needed()));
    report.result("insufficient-prefix");
    out << report.text();
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  FamilyFile file;
  file.stages = args.stages;
  file.family = result.params;
  file.trace = result.trace;
  describe_family(report, file);
  std::size_t ergodic = 0, exact = 0;
  for (const auto& s : result.trace.stages) {
    ergodic += s.kind == StageRecord::Kind::ergodic;
    exact += s.kind == StageRecord::Kind::exact;
  }
  report.add("trace.ergodic_stages", std::to_string(ergodic));
  report.add("trace.exact_stages", std::to_string(exact));
  if (args.out_file.empty() || args.out_file == "-") {
    out << serialize_family(file);
    return kOk;
  }
  write_family(args.out_file, file);
  report.add("output", args.out_file);
  out << report.text();
  return kOk;
}

struct ClassifyArgs {
  std::string file;
  std::string ratio;
  int horizon = -1;
  bool negative = false;
};

int cmd_classify(const ClassifyArgs& args, const std::string& echo, std::ostream& out) {
  Loaded in(args.file);
  if (!in.tower.is_afs()) throw UsageError("classify needs an afs4 family");
  auto [p, q] = ratio(args.ratio);
  const int horizon = args.horizon < 0 ? in.tower.afs().last_stage() : args.horizon;
  Verdict v = classify(in.tower.afs(), in.file.trace, p, q, horizon, args.negative);
  Report report("classify");
  report.add("command", echo);
  describe_family(report, in.file);
  add_verdict(report, v);
  report.result(to_string(v.regime));
  out << report.text();
  return exit_for(v.regime);
}

struct CorrelateArgs {
  std::string file;
  std::vector<std::string> sets, targets;
  std::vector<std::string> powers{"1"};
  std::string range = "0..0";
  std::string out_file;
};

int cmd_correlate(const CorrelateArgs& args, std::ostream& out) {
  Loaded in(args.file);
  std::vector<BigInt> powers;
  for (const auto& group : args.powers) {
    for (const auto& s : split(group, ',')) powers.push_back(parse_bigint(s));
  }
  if (powers.empty()) throw UsageError("--powers is empty");
  auto expand = [&](const std::vector<std::string>& specs, const char* what) {
    std::vector<CylinderSet> sets;
    for (const auto& s : specs) {
      LevelSet set = level_set(s);
      in.tower.check(set);
      sets.emplace_back(std::move(set));
    }
    if (sets.size() == 1) sets.resize(powers.size(), sets.front());
    if (sets.size() != powers.size()) {
      throw UsageError(std::string("give one ") + what + " or one per power");
    }
    return sets;
  };
  if (args.sets.empty()) throw UsageError("--set is required");
  std::vector<CylinderSet> as = expand(args.sets, "--set");
  std::vector<CylinderSet> bs = args.targets.empty() ? as : expand(args.targets, "--target");
  auto [lo, hi] = lag_range(args.range);
  CsvWriter csv({"i", "value"});
  for (BigInt i = lo; i <= hi; ++i) csv.row({to_string(i), to_string(product_correlation(in.tower, as, bs, powers, i))});
  emit(csv.text(), args.out_file, out);
  return kOk;
}

struct LambdaArgs {
  std::string file;
  std::string ratio;
  std::string set;
  std::string horizon;
  bool shifted = false;
  std::string out_file;
};

int cmd_lambda(const LambdaArgs& args, std::ostream& out) {
  Loaded in(args.file);
  auto [p, q] = ratio(args.ratio);
  LevelSet a = level_set(args.set);
  in.tower.check(a);
  const BigInt horizon = parse_bigint(args.horizon);
  std::optional<LambdaTargets> targets;
  if (args.shifted) targets = LambdaTargets{apply_power(in.tower, a, 1), a};
  CsvWriter csv({"i", "value"});
  for (const auto& [i, value] : lambda_table(in.tower, p, q, a, horizon, targets)) {
    csv.row({to_string(i), to_string(value)});
  }
  emit(csv.text(), args.out_file, out);
  return kOk;
}

struct WitnessArgs {
  std::string file;
  int k = 2, n = 2, M = 3;
  std::string horizon = "0";
  bool corrupt = false;
};

int cmd_witness(const WitnessArgs& args, const std::string& echo, std::ostream& out, std::ostream& err) {
  Loaded in(args.file);
  Report report("witness");
  report.add("command", echo);
  describe_family(report, in.file);
  WitnessPair pair;
  try {
    pair = args.corrupt ? corrupted_witness(in.tower, args.k, args.n, args.M)
                        : witness_sets(in.tower, args.k, args.n, args.M);
  } catch (const TailConditionError& e) {
    if (e.bound()) report.add("tail_bound", *e.bound());
    report.result("precondition-failed");
    out << report.text();
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  report.add("witness.removed_stages", list(pair.removed, [](int m) { return std::to_string(m); }));
  report.add("witness.measure_a", pair.measure_a);
  report.add("witness.measure_b", pair.measure_b);
  report.add("witness.product_value", pair.product_value);
  report.add("witness.sum_bound", pair.sum_bound);
  if (pair.tail) report.add("witness.tail_bound", *pair.tail);
  report.check("measure_b_positive", pair.measure_b > 0);
  WitnessScan scan = witness_verify(in.tower, pair, parse_bigint(args.horizon));
  report.add("scan.horizon", scan.horizon);
  report.add("scan.candidates", std::to_string(scan.candidates.size()));
  report.add("scan.at_zero", scan.at_zero);
  report.check("zero_correlation", scan.pass,
               scan.positive_lags.empty() ? "" : "positive at " + big_list(scan.positive_lags));
  report.result(report.all_checks_pass() ? "pass" : "fail");
  out << report.text();
  return report.all_checks_pass() ? kOk : kFailure;
}

struct SeriesArgs {
  std::string file;
};

int cmd_series(const SeriesArgs& args, const std::string& echo, std::ostream& out) {
  Loaded in(args.file);
  if (in.tower.is_afs()) throw UsageError("series needs a vl family");
  const VlSpec& spec = in.tower.vl();
  SeriesReport s = series_index(spec.rule(), spec.L());
  Report report("series");
  report.add("command", echo);
  describe_family(report, in.file);
  report.add("cut_rule", spec.rule().describe());
  for (const auto& [k, verdict] : s.per_k) report.add("series.k" + std::to_string(k), to_string(verdict));
  report.add("ergodic_index", s.ergodic_index ? std::to_string(*s.ergodic_index) : "none");
  report.result(s.summary);
  out << report.text();
  return kOk;
}

struct IndependenceArgs {
  std::string file;
  std::int64_t I = 0, J = 0, j = 1, count = 3;
  int n = 2;
  bool under_J = false;
};

int cmd_independence(const IndependenceArgs& args, const std::string& echo, std::ostream& out) {
  Loaded in(args.file);
  IndependenceReport r = independence_check(in.tower, args.I, args.J, args.n, args.j, args.count, !args.under_J);
  Report report("independence");
  report.add("command", echo);
  describe_family(report, in.file);
  for (const auto& e : r.marginals) {
    report.add("marginal." + std::to_string(e.i), e.joint);
  }
  for (const auto& e : r.pairs) {
    const std::string key = "pair." + std::to_string(e.i) + "." + std::to_string(e.i2);
    report.add(key + ".joint", e.joint);
    report.add(key + ".product", e.product);
    report.check(key.substr(5), e.holds);
  }
  report.result(r.ok() ? "pass" : "fail");
  out << report.text();
  return r.ok() ? kOk : kFailure;
}

struct ProbeArgs {
  std::string file;
  std::vector<std::int64_t> e, f;
  int n = 2;
  std::int64_t j = 0, count = 3;
};

int cmd_probe(const ProbeArgs& args, const std::string& echo, std::ostream& out) {
  Loaded in(args.file);
  ProbeResult r = sweep_probe(in.tower, args.e, args.f, args.n, args.j, args.count);
  Report report("probe");
  report.add("command", echo);
  describe_family(report, in.file);
  report.add("probe.j", std::to_string(r.j));
  if (r.i) {
    report.add("probe.i", std::to_string(*r.i));
    report.add("probe.lag", r.lag);
    report.add("probe.value", r.value);
    report.add("probe.threshold", r.threshold);
  }
  report.result(r.i ? "found" : "none");
  out << report.text();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on rank-one cutting and stacking towers", "towerlab"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Reserved; every operation is deterministic");

  const std::string echo = join(args, " ");
  std::function<int()> action;

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Column heights, offsets and spacers up to a stage");
  c_build->add_option("file", build.file, "Family file")->required();
  c_build->add_option("--stage", build.stage, "Last column to report")->check(CLI::NonNegativeNumber);
  c_build->callback([&] { action = [&] { return cmd_build(build, echo, out); }; });

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check the family against its parameter schema and trace");
  c_verify->add_option("file", verify.file, "Family file")->required();
  c_verify->add_option("--schema", verify.schema, "W or V")->check(CLI::IsMember({"W", "V"}));
  c_verify->callback([&] { action = [&] { return cmd_verify(verify, echo, out); }; });

  SynthesizeArgs synth;
  auto* c_synth = app.add_subcommand("synthesize", "Build a four-cut family with prescribed ergodic directions");
  c_synth->add_option("--R", synth.R, "Ergodic directions p/q (R1 in three-way mode)");
  c_synth->add_option("--S", synth.S, "Prefix of an enumeration of the remaining rationals");
  c_synth->add_option("--R2", synth.R2, "Conservative directions (three-way mode)");
  c_synth->add_option("--mode", synth.mode)->check(CLI::IsMember({"ergodic-set", "three-way"}));
  c_synth->add_option("--stages", synth.stages)->check(CLI::PositiveNumber);
  c_synth->add_option("--out", synth.out_file, "Output family file");
  c_synth->callback([&] { action = [&] { return cmd_synthesize(synth, echo, out, err); }; });

  ClassifyArgs cls;
  auto* c_cls = app.add_subcommand("classify", "Regime of T^p x T^q; the exit code encodes the regime");
  c_cls->add_option("file", cls.file, "Family file")->required();
  c_cls->add_option("--ratio", cls.ratio, "p/q")->required();
  c_cls->add_option("--horizon", cls.horizon, "Last stage examined (default: all)");
  c_cls->add_flag("--negative", cls.negative, "Classify T^-p x T^q");
  c_cls->callback([&] { action = [&] { return cmd_classify(cls, echo, out); }; });

  CorrelateArgs cor;
  auto* c_cor = app.add_subcommand("correlate", "prod_t mu(T^{k_t i} A_t ∩ B_t) over a lag range, as CSV");
  c_cor->add_option("file", cor.file, "Family file")->required();
  c_cor->add_option("--set", cor.sets, "stage:levels, one or one per power")->required();
  c_cor->add_option("--target", cor.targets, "stage:levels, defaults to the sets");
  c_cor->add_option("--powers", cor.powers, "Comma-separated powers");
  c_cor->add_option("--range", cor.range, "a..b");
  c_cor->add_option("--out", cor.out_file, "CSV file (default stdout)");
  c_cor->callback([&] { action = [&] { return cmd_correlate(cor, out); }; });

  LambdaArgs lam;
  auto* c_lam = app.add_subcommand("lambda", "Simultaneous return times of T^p x T^q, as CSV");
  c_lam->add_option("file", lam.file, "Family file")->required();
  c_lam->add_option("--ratio", lam.ratio, "p/q")->required();
  c_lam->add_option("--set", lam.set, "stage:levels")->required();
  c_lam->add_option("--horizon", lam.horizon, "Largest i")->required();
  c_lam->add_flag("--shifted", lam.shifted, "Use targets (TA, A)");
  c_lam->add_option("--out", lam.out_file, "CSV file (default stdout)");
  c_lam->callback([&] { action = [&] { return cmd_lambda(lam, out); }; });

  WitnessArgs wit;
  auto* c_wit = app.add_subcommand("witness", "Non-ergodicity witness for a convergent cut series");
  c_wit->add_option("file", wit.file, "vl family file")->required();
  c_wit->add_option("--k", wit.k)->required();
  c_wit->add_option("--n", wit.n)->required();
  c_wit->add_option("--M", wit.M)->required();
  c_wit->add_option("--horizon", wit.horizon, "Largest |i| scanned");
  c_wit->add_flag("--corrupt", wit.corrupt, "Skip the removal (negative control)");
  c_wit->callback([&] { action = [&] { return cmd_witness(wit, echo, out, err); }; });

  SeriesArgs ser;
  auto* c_ser = app.add_subcommand("series", "Ergodic index of a vl family from its cut series");
  c_ser->add_option("file", ser.file, "vl family file")->required();
  c_ser->callback([&] { action = [&] { return cmd_series(ser, echo, out); }; });

  IndependenceArgs ind;
  auto* c_ind = app.add_subcommand("independence", "Exact pairwise independence of the return sets");
  c_ind->add_option("file", ind.file, "vl family file")->required();
  c_ind->add_option("--I", ind.I)->required();
  c_ind->add_option("--J", ind.J)->required();
  c_ind->add_option("--n", ind.n)->required();
  c_ind->add_option("--j", ind.j);
  c_ind->add_option("--count", ind.count);
  c_ind->add_flag("--under-J", ind.under_J, "Check T^{t(i)} I under mu_J instead");
  c_ind->callback([&] { action = [&] { return cmd_independence(ind, echo, out); }; });

  ProbeArgs prb;
  auto* c_prb = app.add_subcommand("probe", "Search for a lag that sweeps E onto F");
  c_prb->add_option("file", prb.file, "vl family file")->required();
  c_prb->add_option("--E", prb.e, "Levels of C_n, one per coordinate")->required()->delimiter(',');
  c_prb->add_option("--F", prb.f, "Levels of C_n, one per coordinate")->required()->delimiter(',');
  c_prb->add_option("--n", prb.n)->required();
  c_prb->add_option("--j", prb.j, "Index of v_j (0 picks it from the levels)");
  c_prb->add_option("--count", prb.count);
  c_prb->callback([&] { action = [&] { return cmd_probe(prb, echo, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const RuleError& e) {
    err << "rule error: " << e.what() << "\n";
    return kParseError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kParseError;
  } catch (const ConstructionError& e) {
    err << "validation error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace towerlab::cli
