#include "hypmoments/curves.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <set>
#include <thread>

#include "hypmoments/error.hpp"

namespace hypmoments {

// ---------------------------------------------------------------- RationalPoly

RationalPoly::RationalPoly(std::vector<mpz_class> numerators, mpz_class denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
  if (den_ == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  normalize();
}

RationalPoly RationalPoly::constant(const mpq_class& c) { return monomial(c, 0); }

RationalPoly RationalPoly::monomial(const mpq_class& c, unsigned k) {
  std::vector<mpz_class> num(k + 1, mpz_class(0));
  num[k] = c.get_num();
  return RationalPoly(std::move(num), c.get_den());
}

void RationalPoly::normalize() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  mpz_class g = den_;
  for (const auto& c : num_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 1) {
    den_ /= g;
    for (auto& c : num_) c /= g;
  }
}

mpq_class RationalPoly::coefficient(std::size_t k) const {
  if (k >= num_.size()) return 0;
  mpq_class q(num_[k], den_);
  q.canonicalize();
  return q;
}

mpq_class RationalPoly::eval(const mpq_class& lambda) const {
  mpq_class acc = 0;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) acc = acc * lambda + mpq_class(*it);
  acc /= mpq_class(den_);
  return acc;
}

std::vector<std::uint32_t> RationalPoly::reduce(std::uint32_t p) const {
  const auto den_mod = static_cast<std::uint32_t>(mpz_fdiv_ui(den_.get_mpz_t(), p));
  if (den_mod == 0) {
    throw Error(ErrorCode::BadPrime, "p = " + std::to_string(p) + " divides denominator " + den_.get_str());
  }
  const auto inv = invmod(den_mod, p);
  std::vector<std::uint32_t> out(num_.size());
  for (std::size_t k = 0; k < num_.size(); ++k) {
    out[k] = mulmod(static_cast<std::uint32_t>(mpz_fdiv_ui(num_[k].get_mpz_t(), p)), inv, p);
  }
  return out;
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  const std::size_t n = std::max(a.num_.size(), b.num_.size());
  std::vector<mpz_class> num(n, mpz_class(0));
  for (std::size_t k = 0; k < a.num_.size(); ++k) num[k] += a.num_[k] * b.den_;
  for (std::size_t k = 0; k < b.num_.size(); ++k) num[k] += b.num_[k] * a.den_;
  return RationalPoly(std::move(num), a.den_ * b.den_);
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  return a + mpq_class(-1) * b;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> num(a.num_.size() + b.num_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    for (std::size_t j = 0; j < b.num_.size(); ++j) num[i + j] += a.num_[i] * b.num_[j];
  }
  return RationalPoly(std::move(num), a.den_ * b.den_);
}

RationalPoly operator*(const mpq_class& c, const RationalPoly& a) { return RationalPoly::constant(c) * a; }

bool operator==(const RationalPoly& a, const RationalPoly& b) {
  return a.den_ == b.den_ && a.num_ == b.num_;
}

std::string RationalPoly::str() const {
  if (is_zero()) return "0";
  std::string out = "(";
  bool first = true;
  for (std::size_t k = 0; k < num_.size(); ++k) {
    if (num_[k] == 0) continue;
    if (!first) out += " + ";
    first = false;
    out += num_[k].get_str();
    if (k == 1) out += "*l";
    if (k > 1) out += "*l^" + std::to_string(k);
  }
  out += ")";
  if (den_ != 1) out += "/" + den_.get_str();
  return out;
}

std::uint32_t eval_mod(const std::vector<std::uint32_t>& coeffs, std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % p;
  return static_cast<std::uint32_t>(acc);
}

// ----------------------------------------------------------------- CurveFamily

CurveFamily custom_family(std::string name, WeierstrassCoeffs coeffs) {
  CurveFamily f;
  f.name_ = std::move(name);
  f.a_ = std::move(coeffs);
  const auto& [a1, a2, a3, a4, a6] = f.a_;
  const auto c = [](long v) { return mpq_class(v); };

  f.b2_ = a1 * a1 + c(4) * a2;
  f.b4_ = c(2) * a4 + a1 * a3;
  f.b6_ = a3 * a3 + c(4) * a6;
  f.b8_ = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  f.c4_ = f.b2_ * f.b2_ - c(24) * f.b4_;
  f.c6_ = c(-1) * f.b2_ * f.b2_ * f.b2_ + c(36) * f.b2_ * f.b4_ - c(216) * f.b6_;
  f.disc_ = c(-1) * f.b2_ * f.b2_ * f.b8_ - c(8) * f.b4_ * f.b4_ * f.b4_ - c(27) * f.b6_ * f.b6_ +
            c(9) * f.b2_ * f.b4_ * f.b6_;
  if (f.disc_.is_zero()) {
    throw Error(ErrorCode::SingularFamily, "family '" + f.name_ + "' has identically zero discriminant");
  }
  return f;
}

std::optional<mpq_class> CurveFamily::j_invariant(const mpq_class& lambda) const {
  const mpq_class d = disc_.eval(lambda);
  if (d == 0) return std::nullopt;
  const mpq_class c = c4_.eval(lambda);
  mpq_class j = c * c * c / d;
  j.canonicalize();
  return j;
}

std::string CurveFamily::content_hash() const {
  std::string canon;
  const std::array<std::pair<const char*, const RationalPoly*>, 5> polys{
      {{"a1", &a_.a1}, {"a2", &a_.a2}, {"a3", &a_.a3}, {"a4", &a_.a4}, {"a6", &a_.a6}}};
  for (const auto& [key, poly] : polys) {
    canon += key;
    canon += '=';
    canon += poly->denominator().get_str();
    canon += ':';
    for (std::size_t k = 0; k < poly->numerators().size(); ++k) {
      if (k) canon += ',';
      canon += poly->numerators()[k].get_str();
    }
    canon += ';';
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canon.data(), canon.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

RationalPoly lin(long c0, long c1, long den = 1) {
  return RationalPoly({mpz_class(c0), mpz_class(c1)}, mpz_class(den));
}

RationalPoly cst(long c) { return RationalPoly::constant(mpq_class(c)); }

}  // namespace

CurveFamily builtin_family(const std::string& id) {
  // y² = x(1-x)(x-λ) is isomorphic (x ↦ -x) to y² = x(x+1)(x+λ).
  if (id == "legendre" || id == "d2") return custom_family("legendre", {{}, lin(1, 1), {}, lin(0, 1), {}});
  if (id == "legendre_neg") return custom_family("legendre_neg", {{}, lin(1, -1), {}, lin(0, -1), {}});
  // y² + xy + (λ/27)y = x³
  if (id == "d3") return custom_family("d3", {cst(1), {}, lin(0, 1, 27), {}, {}});
  // y² = x(x² + x + λ/4)
  if (id == "d4") return custom_family("d4", {{}, cst(1), {}, lin(0, 1, 4), {}});
  // y² + xy = x³ - λ/432
  if (id == "d6") return custom_family("d6", {cst(1), {}, {}, {}, lin(0, -1, 432)});
  // y² = (x-1)(x² + λ)
  if (id == "clausen") return custom_family("clausen", {{}, cst(-1), {}, lin(0, 1), lin(0, -1)});
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + id + "'");
}

CurveFamily builtin_family_for_d(int d) {
  switch (d) {
    case 2: return builtin_family("legendre");
    case 3: return builtin_family("d3");
    case 4: return builtin_family("d4");
    case 6: return builtin_family("d6");
    default: throw Error(ErrorCode::InvalidInput, "d must be one of 2, 3, 4, 6");
  }
}

std::vector<std::string> builtin_family_ids() {
  return {"legendre", "legendre_neg", "d3", "d4", "d6", "clausen"};
}

CurveFamily quadratic_twist(const CurveFamily& family, const mpz_class& d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "twist parameter must be nonzero");
  const mpq_class dq(d);
  WeierstrassCoeffs t;
  t.a2 = (dq / 4) * family.b2();
  t.a4 = (dq * dq / 2) * family.b4();
  t.a6 = (dq * dq * dq / 4) * family.b6();
  return custom_family(family.name() + "-twist" + d.get_str(), std::move(t));
}

// ------------------------------------------------------------------- reduction

ReducedFamily::ReducedFamily(const CurveFamily& family, std::uint32_t prime) : p(prime) {
  if (p < 5) throw Error(ErrorCode::BadPrime, "p must be at least 5");
  const auto& a = family.coeffs();
  for (const auto* poly : {&a.a1, &a.a2, &a.a3, &a.a4, &a.a6}) (void)poly->reduce(p);
  b2 = family.b2().reduce(p);
  b4 = family.b4().reduce(p);
  b6 = family.b6().reduce(p);
  disc = family.discriminant().reduce(p);
  c4 = family.c4().reduce(p);
}

std::optional<std::int64_t> trace_single(const CurveFamily& family, const PrimeFieldContext& ctx,
                                         Residue lambda) {
  const ReducedFamily rf(family, ctx.p());
  const std::uint32_t p = ctx.p();
  lambda %= p;
  if (rf.bad(lambda)) return std::nullopt;
  const std::uint64_t B2 = eval_mod(rf.b2, lambda, p);
  const std::uint64_t B4 = eval_mod(rf.b4, lambda, p);
  const std::uint64_t B6 = eval_mod(rf.b6, lambda, p);
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t cubic = 4 * x % p * x % p * x % p;
    const std::uint64_t f = (cubic + B2 * x % p * x % p + 2 * B4 % p * x % p + B6) % p;
    sum += ctx.quadchar(static_cast<Residue>(f));
  }
  return -sum;
}

// ---------------------------------------------------------------------- sweeps

TraceSweep::TraceSweep(std::uint32_t p, std::string family_name, std::string family_hash,
                       std::vector<std::int32_t> traces, std::vector<std::uint8_t> bad_mask)
    : p_(p),
      family_name_(std::move(family_name)),
      family_hash_(std::move(family_hash)),
      traces_(std::move(traces)),
      bad_(std::move(bad_mask)) {
  if (traces_.size() != p_ || bad_.size() != p_) {
    throw Error(ErrorCode::InvalidInput, "sweep vectors must have length p");
  }
}

std::size_t TraceSweep::bad_count() const {
  return static_cast<std::size_t>(std::count_if(bad_.begin(), bad_.end(), [](auto b) { return b != 0; }));
}

namespace {

constexpr std::uint32_t kLanes = 16;

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  const std::uint32_t s = a + b;
  const std::uint32_t t = s - p;
  return t < s ? t : s;
}

// Accumulates Σ_x φ(f_λ(x)) for kLanes consecutive λ at once. f_λ is stepped
// through x by forward differences (Δ³f = 24), so the inner loop is adds,
// conditional subtracts and one table gather per lane.
void sweep_range(const ReducedFamily& rf, const std::int32_t* quad, std::uint32_t begin,
                 std::uint32_t end, std::int32_t* out) {
  const std::uint32_t p = rf.p;
  const std::uint32_t step3 = 24 % p;
  for (std::uint32_t base = begin; base < end; base += kLanes) {
    alignas(64) std::uint32_t v[kLanes];
    alignas(64) std::uint32_t d1[kLanes];
    alignas(64) std::uint32_t d2[kLanes];
    alignas(64) std::int32_t acc[kLanes] = {};
    for (std::uint32_t l = 0; l < kLanes; ++l) {
      const std::uint32_t lambda = base + l < end ? base + l : base;
      const std::uint64_t B2 = eval_mod(rf.b2, lambda, p);
      const std::uint64_t B4 = eval_mod(rf.b4, lambda, p);
      const std::uint64_t B6 = eval_mod(rf.b6, lambda, p);
      v[l] = static_cast<std::uint32_t>(B6);
      d1[l] = static_cast<std::uint32_t>((4 + B2 + 2 * B4) % p);
      d2[l] = static_cast<std::uint32_t>((24 + 2 * B2) % p);
    }
    for (std::uint32_t x = 0; x < p; ++x) {
      for (std::uint32_t l = 0; l < kLanes; ++l) {
        acc[l] += quad[v[l]];
        v[l] = add_mod(v[l], d1[l], p);
        d1[l] = add_mod(d1[l], d2[l], p);
        d2[l] = add_mod(d2[l], step3, p);
      }
    }
    for (std::uint32_t l = 0; l < kLanes && base + l < end; ++l) out[base + l] = -acc[l];
  }
}

}  // namespace

TraceSweep trace_sweep(const CurveFamily& family, const PrimeFieldContext& ctx, unsigned threads) {
  const ReducedFamily rf(family, ctx.p());
  const std::uint32_t p = ctx.p();
  const auto qc8 = ctx.quadchar_table();
  const std::vector<std::int32_t> quad(qc8.begin(), qc8.end());

  std::vector<std::int32_t> traces(p, 0);
  std::vector<std::uint8_t> bad(p, 0);
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) bad[lambda] = rf.bad(lambda) ? 1 : 0;

  const std::uint32_t blocks = (p + kLanes - 1) / kLanes;
  threads = std::max(1U, std::min(threads, blocks));
  if (threads == 1) {
    sweep_range(rf, quad.data(), 0, p, traces.data());
  } else {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint32_t b0 = static_cast<std::uint32_t>(static_cast<std::uint64_t>(blocks) * w / threads);
      const std::uint32_t b1 = static_cast<std::uint32_t>(static_cast<std::uint64_t>(blocks) * (w + 1) / threads);
      const std::uint32_t begin = b0 * kLanes;
      const std::uint32_t end = std::min(p, b1 * kLanes);
      workers.emplace_back([&, begin, end] { sweep_range(rf, quad.data(), begin, end, traces.data()); });
    }
  }
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (bad[lambda]) traces[lambda] = 0;
  }
  return TraceSweep(p, family.name(), family.content_hash(), std::move(traces), std::move(bad));
}

TraceSweep negate_sweep(const TraceSweep& sweep) {
  const std::uint32_t p = sweep.p();
  std::vector<std::int32_t> traces(p);
  std::vector<std::uint8_t> bad(p);
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    const std::uint32_t src = (p - lambda) % p;
    traces[lambda] = sweep.traces()[src];
    bad[lambda] = sweep.bad_mask()[src];
  }
  return TraceSweep(p, sweep.family_name() + "@neg", sweep.family_hash() + "@neg", std::move(traces),
                    std::move(bad));
}

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::Good: return "good";
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::Additive: return "additive";
  }
  return "unknown";
}

ReductionReport classify_reduction(const CurveFamily& family, const PrimeFieldContext& ctx) {
  const ReducedFamily rf(family, ctx.p());
  const std::uint32_t p = ctx.p();
  ReductionReport report;
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (!rf.bad(lambda)) continue;
    const bool c4_zero = eval_mod(rf.c4, lambda, p) == 0;
    report.bad_fibres.push_back({lambda, c4_zero ? ReductionKind::Additive : ReductionKind::Multiplicative});
  }

  // A nonconstant j takes any one value at most max(3·deg c4, deg Δ) times, so
  // that many samples plus one settle the question.
  const int bound = std::max(3 * std::max(family.c4().degree(), 0), family.discriminant().degree());
  const std::size_t needed = static_cast<std::size_t>(bound) + 1;
  std::set<std::uint32_t> seen;
  std::size_t samples = 0;
  for (std::uint32_t lambda = 0; lambda < p && samples < needed; ++lambda) {
    const std::uint32_t d = eval_mod(rf.disc, lambda, p);
    if (d == 0) continue;
    const std::uint32_t c = eval_mod(rf.c4, lambda, p);
    seen.insert(mulmod(mulmod(mulmod(c, c, p), c, p), invmod(d, p), p));
    ++samples;
  }
  report.j_nonconstant = seen.size() >= 2;
  return report;
}

}  // namespace hypmoments
