#include "towerlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace towerlab {

using nlohmann::json;

namespace {

constexpr const char* kSequences[4] = {"a", "b", "c", "d"};

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string text_of(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  fail(std::string(what) + " must be a string or integer");
}

BigInt big_of(const json& j, const char* what) {
  try {
    return parse_bigint(text_of(j, what));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

Rational rational_of(const json& j, const char* what) {
  try {
    return parse_rational(text_of(j, what));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

int int_of(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

std::vector<Rational> rationals_of(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_of(x, what));
  return out;
}

// ---- afs4 ----

json afs_to_json(const AfsParams& params) {
  json j;
  const AfsGenerator& gen = params.generator();
  if (!gen.preset.empty()) {
    j["preset"] = gen.preset;
  } else {
    json prefix = json::object(), rules = json::object();
    for (int k = 0; k < 4; ++k) {
      json seq = json::array();
      for (const auto& v : gen.prefix[k]) seq.push_back(to_string(v));
      prefix[kSequences[k]] = seq;
      if (gen.has_rule(k)) rules[kSequences[k]] = gen.rules[k].text();
    }
    j["prefix"] = prefix;
    if (!rules.empty()) j["rules"] = rules;
  }
  if (params.ratio_rule()) {
    const RatioRule& r = *params.ratio_rule();
    const char* kind = r.kind == RatioRule::Kind::constant   ? "constant"
                       : r.kind == RatioRule::Kind::periodic ? "periodic"
                                                             : "accumulation";
    j["ratio_rule"] = {{"kind", kind}, {"values", rationals(r.values)}};
  }
  return j;
}

AfsParams afs_from_json(const json& j, int stages) {
  AfsGenerator gen;
  if (j.contains("preset")) {
    std::string preset = text_of(j["preset"], "preset");
    if (preset != kPresetInfiniteErgodicIndex) fail("unknown preset \"" + preset + "\"");
    if (j.contains("prefix") || j.contains("rules")) fail("a preset family cannot also list prefixes or rules");
    gen = preset_infinite_ergodic_index_generator();
  } else {
    if (j.contains("prefix")) {
      const json& prefix = j["prefix"];
      if (!prefix.is_object()) fail("prefix must be an object with a, b, c, d arrays");
      for (int k = 0; k < 4; ++k) {
        if (!prefix.contains(kSequences[k])) continue;
        const json& seq = prefix[kSequences[k]];
        if (!seq.is_array()) fail(std::string("prefix.") + kSequences[k] + " must be an array");
        for (const auto& v : seq) gen.prefix[k].push_back(big_of(v, "prefix value"));
      }
    }
    if (j.contains("rules")) {
      const json& rules = j["rules"];
      if (!rules.is_object()) fail("rules must be an object");
      for (int k = 0; k < 4; ++k) {
        if (rules.contains(kSequences[k])) gen.rules[k] = Rule::parse(text_of(rules[kSequences[k]], "rule"));
      }
    }
  }
  AfsParams params = AfsParams::materialize(std::move(gen), stages);
  if (j.contains("ratio_rule")) {
    const json& r = j["ratio_rule"];
    RatioRule rule;
    std::string kind = text_of(field(r, "kind"), "ratio_rule.kind");
    if (kind == "constant") {
      rule.kind = RatioRule::Kind::constant;
    } else if (kind == "periodic") {
      rule.kind = RatioRule::Kind::periodic;
    } else if (kind == "accumulation") {
      rule.kind = RatioRule::Kind::accumulation;
    } else {
      fail("unknown ratio_rule kind \"" + kind + "\"");
    }
    rule.values = rationals_of(field(r, "values"), "ratio_rule.values");
    if (rule.values.empty()) fail("ratio_rule.values is empty");
    params.set_ratio_rule(rule);
  }
  return params;
}

// ---- vl ----

const char* cut_kind_name(CutRule::Kind k) {
  switch (k) {
    case CutRule::Kind::constant:
      return "constant";
    case CutRule::Kind::power:
      return "power";
    case CutRule::Kind::geometric:
      return "geometric";
    case CutRule::Kind::prefix:
      return "prefix";
  }
  return "";
}

json vl_to_json(const VlSpec& spec) {
  json j;
  j["L"] = spec.L();
  const CutRule& r = spec.rule();
  json rule = {{"kind", cut_kind_name(r.kind)}, {"floor", to_string(r.floor)}};
  switch (r.kind) {
    case CutRule::Kind::constant:
      rule["value"] = to_string(r.c);
      break;
    case CutRule::Kind::power:
      rule["c"] = to_string(r.c);
      rule["alpha"] = to_string(r.alpha);
      break;
    case CutRule::Kind::geometric:
      rule["c"] = to_string(r.c);
      rule["beta"] = to_string(r.beta);
      break;
    case CutRule::Kind::prefix: {
      json values = json::array();
      for (const auto& v : r.values) values.push_back(to_string(v));
      rule["values"] = values;
      break;
    }
  }
  j["cut_rule"] = rule;
  if (!spec.order_override().empty()) j["order"] = spec.order_override();
  return j;
}

VlSpec vl_from_json(const json& j, int stages) {
  const int L = int_of(field(j, "L"), "L");
  if (L < 1) fail("L must be positive");
  const json& r = field(j, "cut_rule");
  std::string kind = text_of(field(r, "kind"), "cut_rule.kind");
  BigInt floor_value = r.contains("floor") ? big_of(r["floor"], "cut_rule.floor") : BigInt(1);
  CutRule rule;
  if (kind == "constant") {
    rule = CutRule::constant_rule(1);
    rule.c = rational_of(field(r, "value"), "cut_rule.value");
    rule.floor = floor_value;
  } else if (kind == "power") {
    rule = CutRule::power_rule(rational_of(field(r, "c"), "cut_rule.c"), rational_of(field(r, "alpha"), "cut_rule.alpha"),
                               floor_value);
  } else if (kind == "geometric") {
    rule = CutRule::geometric_rule(rational_of(field(r, "c"), "cut_rule.c"),
                                   rational_of(field(r, "beta"), "cut_rule.beta"), floor_value);
  } else if (kind == "prefix") {
    std::vector<BigInt> values;
    const json& v = field(r, "values");
    if (!v.is_array()) fail("cut_rule.values must be an array");
    for (const auto& x : v) values.push_back(big_of(x, "cut_rule value"));
    rule = CutRule::prefix_rule(std::move(values));
    rule.floor = floor_value;
  } else {
    fail("unknown cut_rule kind \"" + kind + "\"");
  }
  std::vector<Vector> order;
  if (j.contains("order")) {
    try {
      order = j["order"].get<std::vector<Vector>>();
    } catch (const json::exception&) {
      fail("order must be an array of integer arrays");
    }
  }
  return VlSpec::materialize(L, rule, stages, std::move(order));
}

// ---- trace ----

json trace_to_json(const SynthesisTrace& trace) {
  json spec = {{"mode", to_string(trace.spec.mode)},
               {"R", rationals(trace.spec.R)},
               {"S", rationals(trace.spec.S)},
               {"R1", rationals(trace.spec.R1)},
               {"R2", rationals(trace.spec.R2)}};
  json stages = json::array();
  for (const auto& rec : trace.stages) {
    json s = {{"n", rec.n},   {"kind", to_string(rec.kind)}, {"i", rec.i},   {"j", rec.j},
              {"k", rec.k},   {"l", rec.l},                  {"delta", to_string(rec.delta)},
              {"t", to_string(rec.t)}, {"tn", to_string(rec.tn)}, {"p_n", to_string(rec.p_n)},
              {"q_n", to_string(rec.q_n)}, {"h_n", to_string(rec.h_n)}};
    if (rec.target) s["target"] = to_string(*rec.target);
    stages.push_back(s);
  }
  return {{"spec", spec}, {"stages", stages}};
}

SynthesisTrace trace_from_json(const json& j) {
  SynthesisTrace trace;
  const json& spec = field(j, "spec");
  std::string mode = text_of(field(spec, "mode"), "trace.spec.mode");
  if (mode == "ergodic-set") {
    trace.spec.mode = DirectionSpec::Mode::ergodic_set;
  } else if (mode == "three-way") {
    trace.spec.mode = DirectionSpec::Mode::three_way;
  } else {
    fail("unknown synthesis mode \"" + mode + "\"");
  }
  trace.spec.R = rationals_of(field(spec, "R"), "trace.spec.R");
  trace.spec.S = rationals_of(field(spec, "S"), "trace.spec.S");
  trace.spec.R1 = rationals_of(field(spec, "R1"), "trace.spec.R1");
  trace.spec.R2 = rationals_of(field(spec, "R2"), "trace.spec.R2");
  for (const auto& s : field(j, "stages")) {
    StageRecord rec;
    rec.n = int_of(field(s, "n"), "trace stage n");
    std::string kind = text_of(field(s, "kind"), "trace stage kind");
    if (kind == "preset") {
      rec.kind = StageRecord::Kind::preset;
    } else if (kind == "ergodic") {
      rec.kind = StageRecord::Kind::ergodic;
    } else if (kind == "exact") {
      rec.kind = StageRecord::Kind::exact;
    } else {
      fail("unknown stage kind \"" + kind + "\"");
    }
    rec.i = field(s, "i").get<std::int64_t>();
    rec.j = field(s, "j").get<std::int64_t>();
    rec.k = field(s, "k").get<std::int64_t>();
    rec.l = field(s, "l").get<std::int64_t>();
    rec.delta = rational_of(field(s, "delta"), "delta");
    rec.t = big_of(field(s, "t"), "t");
    rec.tn = big_of(field(s, "tn"), "tn");
    rec.p_n = big_of(field(s, "p_n"), "p_n");
    rec.q_n = big_of(field(s, "q_n"), "q_n");
    rec.h_n = big_of(field(s, "h_n"), "h_n");
    if (s.contains("target")) rec.target = rational_of(s["target"], "target");
    trace.stages.push_back(std::move(rec));
  }
  return trace;
}

json to_json(const FamilyFile& file) {
  json j;
  j["format"] = kFamilyFormat;
  j["kind"] = family_kind(file.family);
  j["stages"] = file.stages;
  json body = std::holds_alternative<AfsParams>(file.family) ? afs_to_json(std::get<AfsParams>(file.family))
                                                              : vl_to_json(std::get<VlSpec>(file.family));
  for (auto& [key, value] : body.items()) j[key] = value;
  if (file.trace) j["trace"] = trace_to_json(*file.trace);
  return j;
}

}  // namespace

FamilyFile parse_family(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not a JSON document: ") + e.what());
  }
  if (!j.is_object()) fail("family document must be a JSON object");
  const int format = int_of(field(j, "format"), "format");
  if (format != kFamilyFormat) fail("unsupported format version " + std::to_string(format));
  const std::string kind = text_of(field(j, "kind"), "kind");
  FamilyFile file;
  file.stages = int_of(field(j, "stages"), "stages");
  if (file.stages < 0) fail("stages must be non-negative");
  try {
    if (kind == "afs4") {
      file.family = afs_from_json(j, file.stages);
    } else if (kind == "vl") {
      file.family = vl_from_json(j, file.stages);
    } else {
      fail("unknown family kind \"" + kind + "\"");
    }
    if (j.contains("trace")) {
      if (kind != "afs4") fail("a synthesis trace only applies to afs4 families");
      file.trace = trace_from_json(j["trace"]);
    }
  } catch (const json::exception& e) {
    fail(std::string("malformed family document: ") + e.what());
  }
  return file;
}

FamilyFile read_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_family(buffer.str());
}

std::string serialize_family(const FamilyFile& file) { return to_json(file).dump(2) + "\n"; }

void write_family(const std::filesystem::path& path, const FamilyFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_family(file);
}

std::string family_digest(const FamilyFile& file) {
  const std::string canonical = to_json(file).dump();
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : canonical) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }

void Report::check(const std::string& name, bool pass, const std::string& detail) {
  add("check." + name, pass ? "pass" : "fail");
  if (!detail.empty()) add("check." + name + ".detail", detail);
  if (!pass) ++failures_;
}

std::string Report::text() const {
  std::ostringstream out;
  out << "# towerlab report format=1 command=" << command_ << "\n";
  for (const auto& [k, v] : lines_) out << k << "=" << v << "\n";
  out << "RESULT=" << result_ << "\n";
  return out.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CSV row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvWriter::text() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

std::vector<HeightPair> cached_heights(const FamilyFile& file, int up_to, const std::optional<std::filesystem::path>& dir) {
  std::filesystem::path path;
  if (dir) {
    path = *dir / (family_digest(file) + "-heights-" + std::to_string(up_to) + ".json");
    std::ifstream in(path);
    if (in) {
      try {
        json j = json::parse(in);
        std::vector<HeightPair> out;
        for (const auto& e : j) out.push_back({parse_bigint(e.at(0).get<std::string>()), parse_bigint(e.at(1).get<std::string>())});
        if (static_cast<int>(out.size()) == up_to + 1) return out;
      } catch (const std::exception&) {
        // unreadable cache entries are rebuilt
      }
    }
  }
  auto out = heights(file.family, up_to);
  if (dir) {
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    json j = json::array();
    for (const auto& hp : out) j.push_back({to_string(hp.H), to_string(hp.h)});
    std::ofstream cache(path);
    if (cache) cache << j.dump() << "\n";
  }
  return out;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* value = std::getenv("TOWERLAB_CACHE_DIR");
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::filesystem::path(value);
}

}  // namespace towerlab
