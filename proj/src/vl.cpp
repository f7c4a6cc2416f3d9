#include "towerlab/vl.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace towerlab {

namespace {

/// Number of strictly increasing tuples of `len` integers >= `min` with the given sum.
std::int64_t count_tuples(int len, std::int64_t sum, std::int64_t min) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::int64_t, std::int64_t>, std::int64_t> memo;
  if (len == 0) return sum == 0 ? 1 : 0;
  std::int64_t least = len * min + static_cast<std::int64_t>(len) * (len - 1) / 2;
  if (sum < least) return 0;
  if (len == 1) return 1;
  auto key = std::make_tuple(len, sum, min);
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  std::int64_t total = 0;
  for (std::int64_t x = min; len * x + static_cast<std::int64_t>(len) * (len - 1) / 2 <= sum; ++x) {
    total += count_tuples(len - 1, sum - x, x + 1);
  }
  std::lock_guard lock(mutex);
  memo.emplace(key, total);
  return total;
}

std::int64_t min_sum(int L) { return static_cast<std::int64_t>(L) * (L + 1) / 2; }

}  // namespace

Vector enumerate_vectors(int L, std::int64_t j) {
  if (L < 1) throw std::invalid_argument("L must be positive");
  if (j < 1) throw std::invalid_argument("vector index must be >= 1");
  std::int64_t sum = min_sum(L);
  for (;; ++sum) {
    std::int64_t here = count_tuples(L, sum, 1);
    if (j <= here) break;
    j -= here;
  }
  Vector v;
  std::int64_t rem = sum, min = 1;
  for (int len = L; len > 0; --len) {
    for (std::int64_t x = min;; ++x) {
      std::int64_t here = count_tuples(len - 1, rem - x, x + 1);
      if (j <= here) {
        v.push_back(x);
        rem -= x;
        min = x + 1;
        break;
      }
      j -= here;
    }
  }
  return v;
}

std::int64_t vector_index(const Vector& v) {
  if (v.empty()) throw std::invalid_argument("empty vector");
  const int L = static_cast<int>(v.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1 || (i > 0 && v[i] <= v[i - 1])) throw std::invalid_argument("not a strictly increasing positive vector");
    sum += v[i];
  }
  std::int64_t j = 1;
  for (std::int64_t s = min_sum(L); s < sum; ++s) j += count_tuples(L, s, 1);
  std::int64_t rem = sum, min = 1;
  for (int pos = 0; pos < L; ++pos) {
    const int len = L - pos;
    for (std::int64_t x = min; x < v[pos]; ++x) j += count_tuples(len - 1, rem - x, x + 1);
    rem -= v[pos];
    min = v[pos] + 1;
  }
  return j;
}

std::int64_t s_index(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("s(n) needs n >= 1");
  return 1 + static_cast<std::int64_t>(two_adic_valuation(BigInt(static_cast<long>(n))));
}

CutRule CutRule::constant_rule(BigInt value) {
  CutRule r;
  r.kind = Kind::constant;
  r.c = Rational(value);
  return r;
}

CutRule CutRule::power_rule(Rational c, Rational alpha, BigInt floor) {
  if (c <= 0 || alpha < 0) throw std::invalid_argument("power rule needs c > 0 and alpha >= 0");
  CutRule r;
  r.kind = Kind::power;
  r.c = std::move(c);
  r.alpha = std::move(alpha);
  r.floor = std::move(floor);
  return r;
}

CutRule CutRule::geometric_rule(Rational c, Rational beta, BigInt floor) {
  if (c <= 0 || beta <= 0) throw std::invalid_argument("geometric rule needs c > 0 and beta > 0");
  CutRule r;
  r.kind = Kind::geometric;
  r.c = std::move(c);
  r.beta = std::move(beta);
  r.floor = std::move(floor);
  return r;
}

CutRule CutRule::prefix_rule(std::vector<BigInt> values) {
  CutRule r;
  r.kind = Kind::prefix;
  r.values = std::move(values);
  return r;
}

namespace {

/// Smallest integer x >= 0 with x^b >= t (t >= 0).
BigInt ceil_root(const Rational& t, unsigned long b) {
  BigInt base = floor(t);
  BigInt x;
  mpz_root(x.get_mpz_t(), base.get_mpz_t(), b);
  while (Rational(pow(x, b)) < t) ++x;
  while (x > 0 && Rational(pow(BigInt(x - 1), b)) >= t) --x;
  return x;
}

}  // namespace

BigInt CutRule::evaluate(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("cut rule is indexed from n = 1");
  BigInt value;
  switch (kind) {
    case Kind::constant:
      value = ceil(c);
      break;
    case Kind::power: {
      const BigInt a = alpha.get_num();
      const BigInt b = alpha.get_den();
      if (!a.fits_ulong_p() || !b.fits_ulong_p()) throw std::overflow_error("exponent too large");
      Rational target = pow(c, b.get_ui()) * Rational(pow(BigInt(static_cast<long>(n)), a.get_ui()));
      value = ceil_root(target, b.get_ui());
      break;
    }
    case Kind::geometric:
      value = ceil(c * pow(beta, static_cast<unsigned long>(n)));
      break;
    case Kind::prefix:
      if (n > static_cast<std::int64_t>(values.size())) {
        throw StageError("cut count r_" + std::to_string(n) + " is beyond the supplied prefix");
      }
      value = values[n - 1];
      break;
  }
  return value < floor ? floor : value;
}

std::string CutRule::describe() const {
  switch (kind) {
    case Kind::constant:
      return "constant(" + to_string(c) + ")";
    case Kind::power:
      return "power(c=" + to_string(c) + ",alpha=" + to_string(alpha) + ",floor=" + to_string(floor) + ")";
    case Kind::geometric:
      return "geometric(c=" + to_string(c) + ",beta=" + to_string(beta) + ",floor=" + to_string(floor) + ")";
    case Kind::prefix:
      return "prefix(" + join(values) + ")";
  }
  return {};
}

VlSpec VlSpec::materialize(int L, CutRule rule, int up_to, std::vector<Vector> order) {
  if (L < 1) throw std::invalid_argument("L must be positive");
  if (up_to < 1) throw std::invalid_argument("materialization horizon must be >= 1");
  VlSpec spec;
  spec.L_ = L;
  spec.rule_ = std::move(rule);
  for (const auto& v : order) {
    if (static_cast<int>(v.size()) != L) throw std::invalid_argument("vector override has wrong length");
    vector_index(v);  // validates shape
  }
  spec.order_ = std::move(order);
  BigInt h = 1;
  BigInt prev_r = 0;
  for (int n = 1; n <= up_to; ++n) {
    VlStage s;
    s.n = n;
    s.r = spec.rule_.evaluate(n);
    if (s.r <= L) throw ConstructionError(n, "r_" + std::to_string(n) + " = " + to_string(s.r) + " must exceed L = " + std::to_string(L));
    if (s.r < prev_r) throw ConstructionError(n, "cut counts must be nondecreasing (r_" + std::to_string(n) + " = " + to_string(s.r) + " < " + to_string(prev_r) + ")");
    s.u = spec.vector(s_index(n));
    s.sigma = 0;
    for (auto x : s.u) s.sigma += BigInt(static_cast<long>(x));
    s.h = h;
    s.g = s.r * h + (s.r - L - 1) * ((2 * L + 1) * h + s.sigma) + (L * h + s.sigma);
    s.next_h = 2 * s.g;
    prev_r = s.r;
    h = s.next_h;
    spec.stages_.push_back(std::move(s));
  }
  return spec;
}

Vector VlSpec::vector(std::int64_t j) const {
  if (j >= 1 && j <= static_cast<std::int64_t>(order_.size())) return order_[j - 1];
  if (!order_.empty()) {
    throw StageError("vector v_" + std::to_string(j) + " is beyond the supplied order override");
  }
  return enumerate_vectors(L_, j);
}

const VlStage& VlSpec::stage(int n) const {
  if (n < 1 || n > last_stage()) {
    throw StageError("stage " + std::to_string(n) + " is beyond the materialized prefix (1.." +
                     std::to_string(last_stage()) + ")");
  }
  return stages_[n - 1];
}

BigInt VlSpec::h(int n) const {
  if (n == 0 || n == 1) return 1;
  if (n == last_stage() + 1) return stages_.back().next_h;
  return stage(n).h;
}

Column VlSpec::column(int n) const {
  Column col;
  col.stage = n;
  if (n == 0) {
    col.height = 1;
    return col;
  }
  if (n == 1) {
    col.height = 1;
    col.embed_offsets = {BigInt(0)};
    return col;
  }
  const VlStage& s = stage(n - 1);
  const BigInt r = s.r;
  const long copies = r.get_si();
  col.height = s.next_h;
  BigInt cursor = 0;
  for (long i = 1; i <= copies; ++i) {
    col.embed_offsets.push_back(cursor);
    cursor += s.h;
    BigInt spacers = 0;
    if (i <= copies - L_ - 1) {
      spacers = (2 * L_ + 1) * s.h + s.sigma;
    } else if (i < copies) {
      long d = i - (copies - L_ - 1);
      spacers = s.h + BigInt(static_cast<long>(s.u[d - 1]));
    }
    if (spacers > 0) col.spacer_ranges.push_back({cursor, cursor + spacers});
    cursor += spacers;
  }
  if (cursor != s.g) throw ConstructionError(n - 1, "stacked height " + to_string(cursor) + " differs from g = " + to_string(s.g));
  col.spacer_ranges.push_back({cursor, cursor + s.g});
  return col;
}

}  // namespace towerlab
