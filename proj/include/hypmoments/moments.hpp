#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypmoments/curves.hpp"
#include "hypmoments/ffield.hpp"

namespace hypmoments {

/// Multiset of integer values: value -> multiplicity. Power sums over it are
/// exact and independent of evaluation order.
class ValueCounts {
 public:
  void add(std::int64_t value) {
    ++counts_[value];
    ++total_;
  }
  std::uint64_t size() const noexcept { return total_; }
  mpz_class power_sum(unsigned m) const;
  const std::map<std::int64_t, std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::map<std::int64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct MomentReport {
  std::uint32_t p = 0;
  std::string spec;  // "theorem1/d=2" etc.
  unsigned n = 0;
  unsigned m = 0;
  mpz_class accumulator;  // exact Σ of summands
  unsigned normalization_twice = 0;  // empirical = accumulator / p^{normalization_twice / 2}
  mpq_class limit;
  std::uint64_t excluded = 0;

  /// accumulator / p^{normalization_twice/2} in 256-bit floating point.
  mpf_class empirical_mpf() const;
  double empirical() const;
  std::string empirical_string(int digits = 30) const;
  double deviation() const;
  double normalization() const { return normalization_twice / 2.0; }

  nlohmann::json to_json() const;
};

/// a(λ) + a(-λ) over λ with λ² ∉ {0, 1} and both fibres good.
ValueCounts theorem1_values(const TraceSweep& sweep_plus, const TraceSweep& sweep_minus, std::uint64_t* excluded);

MomentReport theorem1_empirical(int d, const TraceSweep& sweep_plus, const TraceSweep& sweep_minus, unsigned m);
std::vector<MomentReport> theorem1_empirical(int d, const TraceSweep& sweep_plus, const TraceSweep& sweep_minus,
                                             const std::vector<unsigned>& orders);

MomentReport mixed_empirical(const TraceSweep& sweep1, const TraceSweep& sweep2, unsigned n, unsigned m);

MomentReport theorem3_empirical(int d, const TraceSweep& sweep, unsigned m);

/// φ(λ+1)(a^Cl(λ)² - p) over λ ∉ {0, -1}.
MomentReport theorem4_empirical(const TraceSweep& clausen_sweep, const PrimeFieldContext& ctx, unsigned m);

/// Adds v^m for each boundary value to the accumulator and removes those
/// terms from the excluded count.
void include_boundary(MomentReport& report, const std::vector<std::int64_t>& values);

/// (1/p) Σ_{good λ} U_m(a(λ) / 2√p).
double chebyshev_sum(const TraceSweep& sweep, unsigned m);

/// Sorted normalized values (a(λ) + a(-λ))/√p.
std::vector<double> theorem1_samples(const TraceSweep& sweep_plus, const TraceSweep& sweep_minus);
/// Sorted normalized values a(λ)/√p over λ ∉ {0, 1}, good.
std::vector<double> theorem3_samples(const TraceSweep& sweep);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t clamped_low = 0;
  std::uint64_t clamped_high = 0;

  std::vector<double> normalized_heights() const;
  void write_csv(std::ostream& out) const;
};

/// Uniform bins over [lo, hi], right-open except the last. Values outside the
/// range land in the end bins and are reported as clamped.
Histogram histogram_build(const std::vector<double>& values, double lo, double hi, std::size_t bins);

/// sup |F_n - F| over the sample points, both one-sided gaps.
double ks_distance(const std::vector<double>& sorted_samples, const std::function<double(double)>& cdf);

}  // namespace hypmoments
