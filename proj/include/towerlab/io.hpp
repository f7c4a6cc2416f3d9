#pragma once

// Family files, reports and CSV output. Exact values are written as reduced
// "num/den" strings and big integers as decimal strings.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "towerlab/synthesis.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFamilyFormat = 1;

struct FamilyFile {
  FamilySpec family;
  int stages = 0;  // materialization horizon recorded in the file
  std::optional<SynthesisTrace> trace;
};

/// Parses a family document. Throws ParseError on malformed input and lets
/// construction errors (ConstructionError, RuleError) through.
FamilyFile parse_family(const std::string& text);
FamilyFile read_family(const std::filesystem::path& path);

std::string serialize_family(const FamilyFile& file);
void write_family(const std::filesystem::path& path, const FamilyFile& file);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string family_digest(const FamilyFile& file);

/// Line-oriented key=value report: a metadata header line, the body, and a
/// final RESULT= line.
class Report {
 public:
  explicit Report(std::string command);

  void add(std::string key, std::string value);
  void add(std::string key, const BigInt& value) { add(std::move(key), to_string(value)); }
  void add(std::string key, const Rational& value) { add(std::move(key), to_string(value)); }
  void check(const std::string& name, bool pass, const std::string& detail = {});
  void result(std::string value) { result_ = std::move(value); }

  std::string text() const;
  bool all_checks_pass() const { return failures_ == 0; }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> lines_;
  std::string result_ = "ok";
  int failures_ = 0;
};

/// CSV with a header row and LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(std::vector<std::string> cells);
  std::string text() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Column heights of a family, read from or stored in `dir` keyed by digest.
std::vector<HeightPair> cached_heights(const FamilyFile& file, int up_to, const std::optional<std::filesystem::path>& dir);

/// TOWERLAB_CACHE_DIR, when set and non-empty.
std::optional<std::filesystem::path> cache_dir_from_env();

}  // namespace towerlab
