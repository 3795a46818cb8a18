#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypmoments/curves.hpp"

namespace hypmoments {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// {"name": ..., "a1": {"denominator": "1", "coefficients": ["0", "1"]}, ...}
/// Keys a1, a2, a3, a4, a6; a missing key is the zero polynomial.
nlohmann::json family_to_json(const CurveFamily& family);
CurveFamily family_from_json(const nlohmann::json& j);

/// Reads either a single family object or {"families": [...]}.
std::vector<CurveFamily> families_from_file(const std::filesystem::path& path);

/// `lambda,a,bad` rows; `a` is empty on bad rows.
void write_sweep_csv(std::ostream& out, const TraceSweep& sweep);
/// Throws Error{CacheCorrupt} on malformed input.
TraceSweep read_sweep_csv(std::istream& in, std::uint32_t p, const std::string& family_name,
                          const std::string& family_hash);

/// One CSV plus one `.meta.json` per (family hash, p) under a cache directory.
class SweepCache {
 public:
  explicit SweepCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  /// `<name>-<first 16 hex of hash>-<p>`
  static std::string stem(const CurveFamily& family, std::uint32_t p);
  std::filesystem::path csv_path(const CurveFamily& family, std::uint32_t p) const;
  std::filesystem::path meta_path(const CurveFamily& family, std::uint32_t p) const;

  /// nullopt when no entry exists; Error{CacheCorrupt} if an entry exists but
  /// its metadata or rows disagree with the family.
  std::optional<TraceSweep> load(const CurveFamily& family, std::uint32_t p) const;
  /// Writes both files via temp-file-then-rename.
  void store(const CurveFamily& family, const TraceSweep& sweep) const;

  /// Loads a cached sweep or computes and stores it. `computed` reports which.
  TraceSweep get_or_compute(const CurveFamily& family, const PrimeFieldContext& ctx, unsigned threads,
                            bool* computed = nullptr) const;

  struct Entry {
    std::string stem;
    std::string family;
    std::uint32_t p;
  };
  std::vector<Entry> list() const;
  /// Removes every cache file; returns the number removed.
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
};

/// Directory from $HYPMOMENTS_CACHE, falling back to `fallback`.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback);

}  // namespace hypmoments
