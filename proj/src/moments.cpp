#include "hypmoments/moments.hpp"

#include <algorithm>
#include <cmath>

#include "hypmoments/error.hpp"
#include "hypmoments/theory.hpp"

namespace hypmoments {

namespace {

constexpr mp_bitcnt_t kPrecisionBits = 256;

void require_same_prime(const TraceSweep& a, const TraceSweep& b) {
  if (a.p() != b.p()) {
    throw Error(ErrorCode::SweepMismatch,
                "sweeps at different primes: " + std::to_string(a.p()) + " and " + std::to_string(b.p()));
  }
}

// sweep_minus must be the pullback of sweep_plus along λ -> -λ.
void require_negation(const TraceSweep& plus, const TraceSweep& minus) {
  require_same_prime(plus, minus);
  const std::uint32_t p = plus.p();
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    const std::uint32_t neg = lambda == 0 ? 0 : p - lambda;
    if (plus.bad(neg) != minus.bad(lambda) || plus.trace(neg) != minus.trace(lambda)) {
      throw Error(ErrorCode::SweepMismatch, "'" + minus.family_name() + "' is not the λ -> -λ pullback of '" +
                                                plus.family_name() + "' (first difference at λ = " +
                                                std::to_string(lambda) + ")");
    }
  }
}

mpz_class ipow(std::int64_t v, unsigned m) {
  mpz_class base(static_cast<long>(v));
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), m);
  return r;
}

MomentReport make_report(std::uint32_t p, std::string spec, unsigned n, unsigned m, mpz_class acc,
                         unsigned normalization_twice, mpq_class limit, std::uint64_t excluded) {
  MomentReport r;
  r.p = p;
  r.spec = std::move(spec);
  r.n = n;
  r.m = m;
  r.accumulator = std::move(acc);
  r.normalization_twice = normalization_twice;
  r.limit = std::move(limit);
  r.excluded = excluded;
  return r;
}

void require_d(int d) {
  if (d != 2 && d != 3 && d != 4 && d != 6) {
    throw Error(ErrorCode::InvalidInput, "d must be one of 2, 3, 4, 6");
  }
}

}  // namespace

mpz_class ValueCounts::power_sum(unsigned m) const {
  mpz_class sum = 0;
  for (const auto& [value, count] : counts_) sum += ipow(value, m) * mpz_class(static_cast<unsigned long>(count));
  return sum;
}

mpf_class MomentReport::empirical_mpf() const {
  mpf_class value(accumulator, kPrecisionBits);
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, normalization_twice / 2);
  mpf_class denom(pk, kPrecisionBits);
  if (normalization_twice % 2 != 0) denom *= sqrt(mpf_class(p, kPrecisionBits));
  value /= denom;
  return value;
}

double MomentReport::empirical() const { return empirical_mpf().get_d(); }

std::string MomentReport::empirical_string(int digits) const {
  mp_exp_t exp = 0;
  const mpf_class v = empirical_mpf();
  std::string mant = v.get_str(exp, 10, static_cast<std::size_t>(digits));
  if (mant.empty() || mant == "0") return "0";
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
  } else if (static_cast<std::size_t>(exp) >= mant.size()) {
    out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<std::size_t>(exp)) + "." + mant.substr(static_cast<std::size_t>(exp));
  }
  return sign + out;
}

double MomentReport::deviation() const {
  mpf_class diff = empirical_mpf() - mpf_class(limit, kPrecisionBits);
  return std::abs(diff.get_d());
}

nlohmann::json MomentReport::to_json() const {
  return {{"p", p},
          {"spec", spec},
          {"n", n},
          {"m", m},
          {"empirical", empirical_string()},
          {"limit", limit.get_str()},
          {"deviation", deviation()},
          {"excluded", excluded},
          {"normalization", normalization()}};
}

ValueCounts theorem1_values(const TraceSweep& sweep_plus, const TraceSweep& sweep_minus, std::uint64_t* excluded) {
  require_negation(sweep_plus, sweep_minus);
  const std::uint32_t p = sweep_plus.p();
  ValueCounts values;
  std::uint64_t skipped = 0;
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (lambda == 0 || lambda == 1 || lambda == p - 1 || sweep_plus.bad(lambda) || sweep_minus.bad(lambda)) {
      ++skipped;
      continue;
    }
    values.add(static_cast<std::int64_t>(sweep_plus.trace(lambda)) + sweep_minus.trace(lambda));
  }
  if (excluded) *excluded = skipped;
  return values;
}

std::vector<MomentReport> theorem1_empirical(int d, const TraceSweep& sweep_plus, const TraceSweep& sweep_minus,
                                             const std::vector<unsigned>& orders) {
  require_d(d);
  std::uint64_t excluded = 0;
  const ValueCounts values = theorem1_values(sweep_plus, sweep_minus, &excluded);
  std::vector<MomentReport> out;
  for (const unsigned m : orders) {
    out.push_back(make_report(sweep_plus.p(), "theorem1/d=" + std::to_string(d), 0, m, values.power_sum(m), m + 2,
                              theorem1_limit(m), excluded));
  }
  return out;
}

MomentReport theorem1_empirical(int d, const TraceSweep& sweep_plus, const TraceSweep& sweep_minus, unsigned m) {
  return theorem1_empirical(d, sweep_plus, sweep_minus, std::vector<unsigned>{m}).front();
}

MomentReport mixed_empirical(const TraceSweep& sweep1, const TraceSweep& sweep2, unsigned n, unsigned m) {
  require_same_prime(sweep1, sweep2);
  const std::uint32_t p = sweep1.p();
  mpz_class acc = 0;
  std::uint64_t excluded = 0;
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (sweep1.bad(lambda) || sweep2.bad(lambda)) {
      ++excluded;
      continue;
    }
    acc += ipow(sweep1.trace(lambda), n) * ipow(sweep2.trace(lambda), m);
  }
  return make_report(p, "theorem2/" + sweep1.family_name() + "," + sweep2.family_name(), n, m, std::move(acc),
                     2 + n + m, theorem2_limit(n, m), excluded);
}

MomentReport theorem3_empirical(int d, const TraceSweep& sweep, unsigned m) {
  require_d(d);
  const std::uint32_t p = sweep.p();
  ValueCounts values;
  std::uint64_t excluded = 0;
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (lambda == 0 || lambda == 1 || sweep.bad(lambda)) {
      ++excluded;
      continue;
    }
    values.add(sweep.trace(lambda));
  }
  return make_report(p, "theorem3/d=" + std::to_string(d), 0, m, values.power_sum(m), m + 2, theorem3_limit(m),
                     excluded);
}

MomentReport theorem4_empirical(const TraceSweep& clausen_sweep, const PrimeFieldContext& ctx, unsigned m) {
  const std::uint32_t p = clausen_sweep.p();
  if (ctx.p() != p) throw Error(ErrorCode::SweepMismatch, "field context and sweep use different primes");
  ValueCounts values;
  std::uint64_t excluded = 0;
  for (std::uint32_t lambda = 0; lambda < p; ++lambda) {
    if (lambda == 0 || lambda == p - 1 || clausen_sweep.bad(lambda)) {
      ++excluded;
      continue;
    }
    const std::int64_t a = clausen_sweep.trace(lambda);
    values.add(ctx.quadchar(lambda + 1) * (a * a - static_cast<std::int64_t>(p)));
  }
  return make_report(p, "theorem4", 0, m, values.power_sum(m), 2 + 2 * m, theorem4_limit(m), excluded);
}

void include_boundary(MomentReport& report, const std::vector<std::int64_t>& values) {
  if (values.size() > report.excluded) {
    throw Error(ErrorCode::InvalidInput, "more boundary values than excluded terms");
  }
  for (const std::int64_t v : values) report.accumulator += ipow(v, report.m);
  report.excluded -= values.size();
  report.spec += "+boundary";
}

double chebyshev_sum(const TraceSweep& sweep, unsigned m) {
  const double scale = 2.0 * std::sqrt(static_cast<double>(sweep.p()));
  double sum = 0.0;
  for (std::uint32_t lambda = 0; lambda < sweep.p(); ++lambda) {
    if (!sweep.bad(lambda)) sum += chebyshev_u(m, sweep.trace(lambda) / scale);
  }
  return sum / sweep.p();
}

std::vector<double> theorem1_samples(const TraceSweep& sweep_plus, const TraceSweep& sweep_minus) {
  const ValueCounts values = theorem1_values(sweep_plus, sweep_minus, nullptr);
  const double root = std::sqrt(static_cast<double>(sweep_plus.p()));
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& [v, count] : values.counts()) out.insert(out.end(), count, static_cast<double>(v) / root);
  return out;
}

std::vector<double> theorem3_samples(const TraceSweep& sweep) {
  const double root = std::sqrt(static_cast<double>(sweep.p()));
  std::vector<double> out;
  for (std::uint32_t lambda = 2; lambda < sweep.p(); ++lambda) {
    if (!sweep.bad(lambda)) out.push_back(sweep.trace(lambda) / root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> Histogram::normalized_heights() const {
  std::vector<double> h(counts.size(), 0.0);
  if (total == 0) return h;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double width = bin_edges[i + 1] - bin_edges[i];
    h[i] = static_cast<double>(counts[i]) / (static_cast<double>(total) * width);
  }
  return h;
}

void Histogram::write_csv(std::ostream& out) const {
  const auto heights = normalized_heights();
  out << "bin_lo,bin_hi,count,height\n";
  out.precision(12);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out << bin_edges[i] << ',' << bin_edges[i + 1] << ',' << counts[i] << ',' << heights[i] << '\n';
  }
}

Histogram histogram_build(const std::vector<double>& values, double lo, double hi, std::size_t bins) {
  if (!(lo < hi) || bins == 0 || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::BadRange, "histogram needs lo < hi and at least one bin");
  }
  Histogram h;
  h.bin_edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) h.bin_edges[i] = lo + width * static_cast<double>(i);
  h.bin_edges[bins] = hi;
  h.counts.assign(bins, 0);
  for (const double v : values) {
    std::size_t bin;
    if (v < lo) {
      bin = 0;
      ++h.clamped_low;
    } else if (v > hi) {
      bin = bins - 1;
      ++h.clamped_high;
    } else {
      bin = std::min(static_cast<std::size_t>((v - lo) / width), bins - 1);
      // Guard against rounding at interior edges.
      while (bin > 0 && v < h.bin_edges[bin]) --bin;
      while (bin + 1 < bins && v >= h.bin_edges[bin + 1]) ++bin;
    }
    ++h.counts[bin];
    ++h.total;
  }
  return h;
}

double ks_distance(const std::vector<double>& sorted_samples, const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) throw Error(ErrorCode::EmptySamples, "KS distance needs at least one sample");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw Error(ErrorCode::InvalidInput, "KS samples must be sorted");
  }
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace hypmoments
