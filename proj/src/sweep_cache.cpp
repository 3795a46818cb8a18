#include "hypmoments/sweep_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypmoments/error.hpp"

namespace hypmoments {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json poly_to_json(const RationalPoly& poly) {
  json coeffs = json::array();
  for (const auto& c : poly.numerators()) coeffs.push_back(c.get_str());
  return {{"denominator", poly.denominator().get_str()}, {"coefficients", coeffs}};
}

mpz_class integer_from_json(const json& j) {
  try {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    if (j.is_number_integer()) return mpz_class(j.get<long>());
  } catch (const std::invalid_argument&) {
  }
  throw Error(ErrorCode::InvalidInput, "expected an integer or integer string, got " + j.dump());
}

RationalPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coefficients")) {
    throw Error(ErrorCode::InvalidInput, "polynomial needs a 'coefficients' list: " + j.dump());
  }
  std::vector<mpz_class> num;
  for (const auto& c : j.at("coefficients")) num.push_back(integer_from_json(c));
  const mpz_class den = j.contains("denominator") ? integer_from_json(j.at("denominator")) : mpz_class(1);
  if (den <= 0) throw Error(ErrorCode::InvalidInput, "denominator must be positive");
  return RationalPoly(std::move(num), den);
}

void write_atomically(const fs::path& target, const std::string& contents) {
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error(ErrorCode::InvalidInput, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

json family_to_json(const CurveFamily& family) {
  const auto& a = family.coeffs();
  return {{"name", family.name()},
          {"a1", poly_to_json(a.a1)},
          {"a2", poly_to_json(a.a2)},
          {"a3", poly_to_json(a.a3)},
          {"a4", poly_to_json(a.a4)},
          {"a6", poly_to_json(a.a6)}};
}

CurveFamily family_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "family entry must be an object");
  const auto poly = [&](const char* key) {
    return j.contains(key) ? poly_from_json(j.at(key)) : RationalPoly{};
  };
  if (j.contains("a5")) throw Error(ErrorCode::InvalidInput, "a5 is not a Weierstrass coefficient");
  const std::string name = j.value("name", std::string("custom"));
  return custom_family(name, {poly("a1"), poly("a2"), poly("a3"), poly("a4"), poly("a6")});
}

std::vector<CurveFamily> families_from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
  std::vector<CurveFamily> out;
  if (j.is_object() && j.contains("families")) {
    for (const auto& entry : j.at("families")) out.push_back(family_from_json(entry));
  } else {
    out.push_back(family_from_json(j));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidInput, path.string() + " lists no families");
  return out;
}

void write_sweep_csv(std::ostream& out, const TraceSweep& sweep) {
  out << "lambda,a,bad\n";
  for (std::uint32_t lambda = 0; lambda < sweep.p(); ++lambda) {
    if (sweep.bad(lambda)) {
      out << lambda << ",,1\n";
    } else {
      out << lambda << ',' << sweep.trace(lambda) << ",0\n";
    }
  }
}

TraceSweep read_sweep_csv(std::istream& in, std::uint32_t p, const std::string& family_name,
                          const std::string& family_hash) {
  std::string line;
  if (!std::getline(in, line) || line != "lambda,a,bad") {
    throw Error(ErrorCode::CacheCorrupt, "missing 'lambda,a,bad' header");
  }
  std::vector<std::int32_t> traces(p, 0);
  std::vector<std::uint8_t> bad(p, 0);
  std::uint32_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= p) throw Error(ErrorCode::CacheCorrupt, "more than p rows");
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw Error(ErrorCode::CacheCorrupt, "malformed row '" + line + "'");
    }
    try {
      if (std::stoul(line.substr(0, c1)) != row) throw Error(ErrorCode::CacheCorrupt, "rows out of order");
      const std::string flag = line.substr(c2 + 1);
      const std::string a = line.substr(c1 + 1, c2 - c1 - 1);
      if (flag == "1") {
        if (!a.empty()) throw Error(ErrorCode::CacheCorrupt, "bad row carries a trace");
        bad[row] = 1;
      } else if (flag == "0") {
        traces[row] = static_cast<std::int32_t>(std::stol(a));
      } else {
        throw Error(ErrorCode::CacheCorrupt, "bad flag must be 0 or 1");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::CacheCorrupt, "malformed row '" + line + "'");
    }
    ++row;
  }
  if (row != p) throw Error(ErrorCode::CacheCorrupt, "expected " + std::to_string(p) + " rows");
  return TraceSweep(p, family_name, family_hash, std::move(traces), std::move(bad));
}

SweepCache::SweepCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string SweepCache::stem(const CurveFamily& family, std::uint32_t p) {
  return family.name() + "-" + family.short_hash() + "-" + std::to_string(p);
}

fs::path SweepCache::csv_path(const CurveFamily& family, std::uint32_t p) const {
  return dir_ / (stem(family, p) + ".csv");
}

fs::path SweepCache::meta_path(const CurveFamily& family, std::uint32_t p) const {
  return dir_ / (stem(family, p) + ".meta.json");
}

std::optional<TraceSweep> SweepCache::load(const CurveFamily& family, std::uint32_t p) const {
  const auto csv = csv_path(family, p);
  const auto meta = meta_path(family, p);
  if (!fs::exists(csv) || !fs::exists(meta)) return std::nullopt;

  std::ifstream meta_in(meta);
  json m;
  try {
    meta_in >> m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CacheCorrupt, meta.string() + ": " + e.what());
  }
  if (m.value("hash", std::string()) != family.content_hash() || m.value("p", 0U) != p) {
    throw Error(ErrorCode::CacheCorrupt, meta.string() + " does not match the requested family");
  }
  std::ifstream in(csv);
  return read_sweep_csv(in, p, family.name(), family.content_hash());
}

void SweepCache::store(const CurveFamily& family, const TraceSweep& sweep) const {
  if (sweep.family_hash() != family.content_hash()) {
    throw Error(ErrorCode::SweepMismatch, "sweep was computed for a different family");
  }
  json coefficients = family_to_json(family);
  coefficients.erase("name");
  const json meta = {{"family", family.name()},
                     {"hash", family.content_hash()},
                     {"coefficients", coefficients},
                     {"p", sweep.p()},
                     {"version", kArtifactVersion}};
  std::ostringstream csv;
  write_sweep_csv(csv, sweep);
  write_atomically(csv_path(family, sweep.p()), csv.str());
  write_atomically(meta_path(family, sweep.p()), meta.dump(2) + "\n");
}

TraceSweep SweepCache::get_or_compute(const CurveFamily& family, const PrimeFieldContext& ctx,
                                      unsigned threads, bool* computed) const {
  if (auto cached = load(family, ctx.p())) {
    if (computed) *computed = false;
    return *std::move(cached);
  }
  auto sweep = trace_sweep(family, ctx, threads);
  store(family, sweep);
  if (computed) *computed = true;
  return sweep;
}

std::vector<SweepCache::Entry> SweepCache::list() const {
  std::vector<Entry> out;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    const std::string suffix = ".meta.json";
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
      continue;
    }
    std::ifstream in(e.path());
    json m;
    try {
      in >> m;
    } catch (const json::exception&) {
      continue;
    }
    out.push_back({name.substr(0, name.size() - suffix.size()), m.value("family", std::string()),
                   m.value("p", 0U)});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.stem < b.stem; });
  return out;
}

std::size_t SweepCache::clear() const {
  std::size_t removed = 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto ext = e.path().extension().string();
    if (ext == ".csv" || ext == ".json" || ext == ".tmp") {
      fs::remove(e.path());
      ++removed;
    }
  }
  return removed;
}

fs::path resolve_cache_dir(const fs::path& fallback) {
  if (const char* env = std::getenv("HYPMOMENTS_CACHE"); env && *env) return env;
  return fallback;
}

}  // namespace hypmoments
