// Command-line front end: sweeps, identity checks, moment tables, histograms
// and density exports.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hypmoments/checks.hpp"
#include "hypmoments/curves.hpp"
#include "hypmoments/density.hpp"
#include "hypmoments/error.hpp"
#include "hypmoments/hypfun.hpp"
#include "hypmoments/moments.hpp"
#include "hypmoments/quadrature.hpp"
#include "hypmoments/sweep_cache.hpp"

namespace hm = hypmoments;
namespace fs = std::filesystem;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string threads = "1";
  std::string cache_dir = ".hypmoments-cache";
  std::string output;
};

unsigned resolve_threads(const std::string& spec) {
  if (spec == "auto") return std::max(1U, std::thread::hardware_concurrency());
  std::size_t used = 0;
  long n = 0;
  try {
    n = std::stol(spec, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != spec.size() || n < 1) throw hm::Error(hm::ErrorCode::InvalidInput, "--threads must be >= 1 or 'auto'");
  return static_cast<unsigned>(n);
}

hm::SweepCache open_cache(const Common& c) { return hm::SweepCache(hm::resolve_cache_dir(c.cache_dir)); }

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw hm::Error(hm::ErrorCode::InvalidInput, "cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// "0..6", "2,4" or "3".
std::vector<unsigned> parse_orders(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) {
      const auto dots = part.find("..");
      if (dots == std::string::npos) {
        out.push_back(static_cast<unsigned>(std::stoul(part)));
      } else {
        const unsigned lo = static_cast<unsigned>(std::stoul(part.substr(0, dots)));
        const unsigned hi = static_cast<unsigned>(std::stoul(part.substr(dots + 2)));
        if (hi < lo) throw std::invalid_argument("range");
        for (unsigned m = lo; m <= hi; ++m) out.push_back(m);
      }
    }
  } catch (const std::logic_error&) {
    throw hm::Error(hm::ErrorCode::InvalidInput, "cannot parse orders '" + text + "'");
  }
  if (out.empty()) throw hm::Error(hm::ErrorCode::InvalidInput, "no orders given");
  return out;
}

std::vector<std::string> split_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw hm::Error(hm::ErrorCode::InvalidInput, "--pair needs two comma-separated ids");
  return {text.substr(0, comma), text.substr(comma + 1)};
}

// ---- sweep ----

struct SweepArgs {
  std::string family;
  std::string family_file;
  std::uint32_t p = 0;
};

int run_sweep(const SweepArgs& a, const Common& c) {
  std::vector<hm::CurveFamily> families;
  if (!a.family_file.empty()) {
    families = hm::families_from_file(a.family_file);
  } else {
    families.push_back(hm::builtin_family(a.family));
  }
  const hm::PrimeFieldContext ctx(a.p);
  const auto cache = open_cache(c);
  const unsigned threads = resolve_threads(c.threads);
  for (const auto& family : families) {
    bool computed = false;
    const auto sweep = cache.get_or_compute(family, ctx, threads, &computed);
    std::cout << cache.csv_path(family, a.p).string() << (computed ? "  (computed" : "  (cached")
              << ", " << sweep.bad_count() << " bad fibres)\n";
  }
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite = "all";
  std::vector<std::uint32_t> primes{7, 13, 19, 31, 37, 61};
  unsigned max_order = 30;
};

int run_verify(const VerifyArgs& a, const Common& c) {
  std::vector<hm::SuiteReport> reports;
  const bool all = a.suite == "all";
  if (all || a.suite == "identities") reports.push_back(hm::identity_suite(a.primes, resolve_threads(c.threads)));
  if (all || a.suite == "combinatorics") reports.push_back(hm::combinatorics_suite(a.max_order));
  if (all || a.suite == "density") reports.push_back(hm::density_suite());

  nlohmann::json out = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : reports) {
    out.push_back(r.to_json());
    for (const auto& check : r.checks) {
      if (!check.passed && ok) {
        std::cerr << "FAIL " << r.suite << ": " << check.name << " " << check.detail.dump() << "\n";
      }
      ok = ok && check.passed;
    }
  }
  Sink sink(c.output);
  sink.out() << out.dump(2) << "\n";
  return ok ? 0 : kExitCheckFailure;
}

// ---- moments ----

struct MomentsArgs {
  int theorem = 1;
  int d = 2;
  std::string pair = "legendre,legendre_neg";
  std::uint32_t p = 0;
  std::string orders = "0..6";
  std::string n_orders = "0";
  std::string format = "csv";
  bool include_boundary = false;
};

// Exact H_p values at the λ excluded from a theorem's sum.
std::vector<std::int64_t> boundary_values(int theorem, int d, const hm::PrimeFieldContext& ctx) {
  const std::uint32_t p = ctx.p();
  if (theorem == 1) {
    const auto datum = hm::length4_datum(d);
    const std::int64_t at_one = hm::hp_direct(ctx, datum, 1);
    return {1, at_one, at_one};  // λ = 0, 1, -1
  }
  if (theorem == 3) return {1, hm::hp_direct(ctx, hm::length2_datum(d), 1)};
  if (theorem == 4) return {1, hm::hp_direct(ctx, hm::clausen_datum(), 1)};
  throw hm::Error(hm::ErrorCode::InvalidInput,
                  "--include-boundary applies to theorems 1, 3 and 4 (p = " + std::to_string(p) + ")");
}

int run_moments(const MomentsArgs& a, const Common& c) {
  const hm::PrimeFieldContext ctx(a.p);
  const auto cache = open_cache(c);
  const unsigned threads = resolve_threads(c.threads);
  const auto orders = parse_orders(a.orders);
  std::vector<hm::MomentReport> rows;

  switch (a.theorem) {
    case 1: {
      const auto plus = cache.get_or_compute(hm::builtin_family_for_d(a.d), ctx, threads);
      rows = hm::theorem1_empirical(a.d, plus, hm::negate_sweep(plus), orders);
      break;
    }
    case 2: {
      const auto ids = split_pair(a.pair);
      const auto s1 = cache.get_or_compute(hm::builtin_family(ids[0]), ctx, threads);
      const auto s2 = cache.get_or_compute(hm::builtin_family(ids[1]), ctx, threads);
      for (const unsigned n : parse_orders(a.n_orders)) {
        for (const unsigned m : orders) rows.push_back(hm::mixed_empirical(s1, s2, n, m));
      }
      break;
    }
    case 3: {
      const auto sweep = cache.get_or_compute(hm::builtin_family_for_d(a.d), ctx, threads);
      for (const unsigned m : orders) rows.push_back(hm::theorem3_empirical(a.d, sweep, m));
      break;
    }
    case 4: {
      const auto sweep = cache.get_or_compute(hm::builtin_family("clausen"), ctx, threads);
      for (const unsigned m : orders) rows.push_back(hm::theorem4_empirical(sweep, ctx, m));
      break;
    }
    default:
      throw hm::Error(hm::ErrorCode::InvalidInput, "--theorem must be 1, 2, 3 or 4");
  }

  if (a.include_boundary) {
    const auto values = boundary_values(a.theorem, a.d, ctx);
    for (auto& r : rows) hm::include_boundary(r, values);
  }

  Sink sink(c.output);
  auto& out = sink.out();
  if (a.format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : rows) list.push_back(r.to_json());
    out << list.dump(2) << "\n";
  } else {
    out << "n,m,empirical,limit,deviation,excluded\n";
    out.precision(6);
    for (const auto& r : rows) {
      out << r.n << ',' << r.m << ',' << r.empirical_string(15) << ',' << r.limit.get_str() << ','
          << r.deviation() << ',' << r.excluded << '\n';
    }
  }
  return 0;
}

// ---- histogram ----

struct HistogramArgs {
  int theorem = 1;
  int d = 2;
  std::uint32_t p = 0;
  std::size_t bins = 60;
  std::string svg;
};

void write_svg(const std::string& path, const hm::Histogram& h, const std::function<double(double)>& pdf,
               const std::string& title) {
  constexpr double kW = 800, kH = 500, kMargin = 40;
  const auto heights = h.normalized_heights();
  const double lo = h.bin_edges.front();
  const double hi = h.bin_edges.back();
  std::vector<double> curve(400);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    curve[i] = pdf(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(curve.size() - 1));
  }
  double ymax = 1e-12;
  for (const double v : heights) ymax = std::max(ymax, v);
  for (const double v : curve) ymax = std::max(ymax, v);
  ymax *= 1.1;
  const auto sx = [&](double x) { return kMargin + (x - lo) / (hi - lo) * (kW - 2 * kMargin); };
  const auto sy = [&](double y) { return kH - kMargin - y / ymax * (kH - 2 * kMargin); };

  std::ofstream out(path);
  if (!out) throw hm::Error(hm::ErrorCode::InvalidInput, "cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const double x0 = sx(h.bin_edges[i]);
    const double x1 = sx(h.bin_edges[i + 1]);
    out << "<rect x=\"" << x0 << "\" y=\"" << sy(heights[i]) << "\" width=\"" << (x1 - x0) << "\" height=\""
        << (sy(0) - sy(heights[i])) << "\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(curve.size() - 1);
    out << sx(x) << ',' << sy(curve[i]) << ' ';
  }
  out << "\"/>\n";
  out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(0)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << sx(lo) << "\" y=\"" << (kH - 15) << "\" font-size=\"12\">" << lo << "</text>\n";
  out << "<text x=\"" << sx(hi) - 10 << "\" y=\"" << (kH - 15) << "\" font-size=\"12\">" << hi << "</text>\n";
  out << "</svg>\n";
}

int run_histogram(const HistogramArgs& a, const Common& c) {
  if (a.theorem != 1 && a.theorem != 3) throw hm::Error(hm::ErrorCode::InvalidInput, "--theorem must be 1 or 3");
  const hm::PrimeFieldContext ctx(a.p);
  const auto cache = open_cache(c);
  const auto sweep = cache.get_or_compute(hm::builtin_family_for_d(a.d), ctx, resolve_threads(c.threads));
  const bool t1 = a.theorem == 1;
  const auto values = t1 ? hm::theorem1_samples(sweep, hm::negate_sweep(sweep)) : hm::theorem3_samples(sweep);
  const double range = t1 ? 4.0 : 2.0;
  const auto h = hm::histogram_build(values, -range, range, a.bins);
  Sink sink(c.output);
  h.write_csv(sink.out());
  if (h.clamped_low + h.clamped_high > 0) {
    std::cerr << "note: " << h.clamped_low + h.clamped_high << " values fell outside the range\n";
  }
  if (!a.svg.empty()) {
    const std::string title = (t1 ? "theorem 1" : "theorem 3") + std::string(", d = ") + std::to_string(a.d) +
                              ", p = " + std::to_string(a.p);
    const auto pdf = [t1](double x) { return t1 ? hm::theorem1_pdf(x) : hm::semicircle_pdf(x); };
    write_svg(a.svg, h, pdf, title);
  }
  return 0;
}

// ---- density ----

struct DensityArgs {
  std::string kind = "theorem1";
  std::size_t grid = 801;
  std::optional<double> lo;
  std::optional<double> hi;
};

int run_density(const DensityArgs& a, const Common& c) {
  const auto kind = hm::density_kind_from_string(a.kind);
  hm::DensitySpec spec = kind == hm::DensityKind::MeijerTheorem1 ? hm::DensitySpec::theorem1()
                                                                 : hm::DensitySpec::semicircle();
  const double lo = a.lo.value_or(spec.lo);
  const double hi = a.hi.value_or(spec.hi);
  if (!(lo < hi) || a.grid < 2) throw hm::Error(hm::ErrorCode::BadRange, "density grid needs lo < hi and >= 2 points");

  Sink sink(c.output);
  auto& out = sink.out();
  out << "t,pdf,cdf\n";
  out.precision(12);
  // Accumulate the cdf cell by cell instead of integrating from the left end each time.
  double cdf = spec.cdf(lo);
  double prev = lo;
  for (std::size_t i = 0; i < a.grid; ++i) {
    const double t = i + 1 == a.grid ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.grid - 1);
    if (kind == hm::DensityKind::MeijerTheorem1) {
      const double clo = std::clamp(prev, -4.0, 4.0);
      const double chi = std::clamp(t, -4.0, 4.0);
      if (chi > clo) {
        // Fixed-order panels of width <= 0.05 are far below the cdf tolerance for this density.
        const int panels = static_cast<int>(std::ceil((chi - clo) / 0.05));
        const double w = (chi - clo) / panels;
        for (int k = 0; k < panels; ++k) cdf += hm::integrate_fixed(hm::theorem1_pdf, clo + k * w, clo + (k + 1) * w, 10);
      }
    } else {
      cdf = spec.cdf(t);
    }
    prev = t;
    out << t << ',' << spec.pdf(t) << ',' << cdf << '\n';
  }
  return 0;
}

// ---- cache ----

int run_cache(const std::string& action, const Common& c) {
  const auto cache = open_cache(c);
  if (action == "list") {
    for (const auto& e : cache.list()) std::cout << e.stem << "\t" << e.family << "\t" << e.p << "\n";
  } else {
    std::cout << "removed " << cache.clear() << " files from " << cache.dir().string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of finite-field hypergeometric functions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads, or 'auto'")->capture_default_str();
  app.add_option("--cache-dir", common.cache_dir, "Sweep cache directory (HYPMOMENTS_CACHE overrides)")
      ->capture_default_str();
  app.add_option("-o,--output", common.output, "Write the main output here instead of stdout");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Compute and cache a trace sweep");
  auto* fam = sweep_cmd->add_option("--family", sweep.family, "Built-in family id");
  auto* fam_file = sweep_cmd->add_option("--family-file", sweep.family_file, "JSON family definition(s)");
  fam->excludes(fam_file);
  sweep_cmd->add_option("--p", sweep.p, "Prime")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run exact and numerical check suites");
  verify_cmd->add_option("--suite", verify.suite)
      ->check(CLI::IsMember({"identities", "combinatorics", "density", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--primes", verify.primes, "Primes for the identity suite")->delimiter(',');
  verify_cmd->add_option("--max-order", verify.max_order)->capture_default_str();

  MomentsArgs moments;
  auto* moments_cmd = app.add_subcommand("moments", "Empirical moments against their limits");
  moments_cmd->add_option("--theorem", moments.theorem)->check(CLI::Range(1, 4))->capture_default_str();
  moments_cmd->add_option("--d", moments.d)->check(CLI::IsMember({2, 3, 4, 6}))->capture_default_str();
  moments_cmd->add_option("--pair", moments.pair, "Two family ids for theorem 2")->capture_default_str();
  moments_cmd->add_option("--p", moments.p)->required();
  moments_cmd->add_option("--m", moments.orders, "Orders, e.g. 0..6 or 2,4")->capture_default_str();
  moments_cmd->add_option("--n", moments.n_orders, "First orders for theorem 2")->capture_default_str();
  moments_cmd->add_option("--format", moments.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  moments_cmd->add_flag("--include-boundary", moments.include_boundary,
                        "Add exact H_p values at the excluded λ (needs p ≡ 1 mod M)");

  HistogramArgs histogram;
  auto* hist_cmd = app.add_subcommand("histogram", "Histogram of normalized values");
  hist_cmd->add_option("--theorem", histogram.theorem)->check(CLI::IsMember({1, 3}))->capture_default_str();
  hist_cmd->add_option("--d", histogram.d)->check(CLI::IsMember({2, 3, 4, 6}))->capture_default_str();
  hist_cmd->add_option("--p", histogram.p)->required();
  hist_cmd->add_option("--bins", histogram.bins)->check(CLI::PositiveNumber)->capture_default_str();
  hist_cmd->add_option("--svg", histogram.svg, "Also write an SVG with the limiting density");

  DensityArgs density;
  auto* density_cmd = app.add_subcommand("density", "Tabulate a limiting density");
  density_cmd->add_option("--kind", density.kind)
      ->check(CLI::IsMember({"theorem1", "semicircle"}))
      ->capture_default_str();
  density_cmd->add_option("--grid", density.grid)->capture_default_str();
  density_cmd->add_option("--lo", density.lo);
  density_cmd->add_option("--hi", density.hi);

  std::string cache_action;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the sweep cache");
  cache_cmd->add_option("action", cache_action)->required()->check(CLI::IsMember({"list", "clear"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep_cmd) {
      if (sweep.family.empty() && sweep.family_file.empty()) {
        throw hm::Error(hm::ErrorCode::InvalidInput, "sweep needs --family or --family-file");
      }
      return run_sweep(sweep, common);
    }
    if (*verify_cmd) return run_verify(verify, common);
    if (*moments_cmd) return run_moments(moments, common);
    if (*hist_cmd) return run_histogram(histogram, common);
    if (*density_cmd) return run_density(density, common);
    if (*cache_cmd) return run_cache(cache_action, common);
  } catch (const hm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == hm::ErrorCode::CheckFailure ? kExitCheckFailure : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
