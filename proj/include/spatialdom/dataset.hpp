#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spatialdom/entry.hpp"
#include "spatialdom/geometry.hpp"
#include "spatialdom/prng.hpp"

namespace spatialdom {

/// A line of the dataset file could not be parsed as JSON.
struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

/// A parsed record violates a dataset invariant (inverted bounds,
/// inconsistent dimensionality, duplicate id).
struct ValidationError : std::runtime_error {
  std::size_t line;
  ValidationError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

/// Reads newline-delimited records {"id":..,"min":[..],"max":[..]} into
/// entries, in file order. Integer coordinates widen to double. Every line
/// is validated; errors carry the 1-based line number.
inline std::vector<Entry> read_jsonl(std::istream& in) {
  std::vector<Entry> entries;
  std::unordered_set<std::int64_t> seen_ids;
  std::size_t d = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!rec.is_object()) {
      throw ParseError(line_no, "record is not a JSON object");
    }
    for (const auto& [key, value] : rec.items()) {
      (void)value;
      if (key != "id" && key != "min" && key != "max") {
        throw ValidationError(line_no, "unexpected key \"" + key + "\"");
      }
    }
    if (!rec.contains("id") || !rec["id"].is_number_integer()) {
      throw ValidationError(line_no, "missing or non-integer \"id\"");
    }
    const auto id = rec["id"].get<std::int64_t>();
    for (const char* key : {"min", "max"}) {
      if (!rec.contains(key) || !rec[key].is_array() || rec[key].empty()) {
        throw ValidationError(line_no, std::string("missing or empty \"") +
                                           key + "\" array");
      }
      for (const auto& v : rec[key]) {
        if (!v.is_number()) {
          throw ValidationError(line_no, std::string("non-numeric value in \"") +
                                             key + "\"");
        }
      }
    }
    const auto lows = rec["min"].get<std::vector<double>>();
    const auto highs = rec["max"].get<std::vector<double>>();
    if (lows.size() != highs.size()) {
      throw ValidationError(line_no, "id " + std::to_string(id) +
                                         ": min and max lengths differ");
    }
    if (d == 0) {
      d = lows.size();
    } else if (lows.size() != d) {
      throw ValidationError(
          line_no, "id " + std::to_string(id) + ": dimensionality " +
                       std::to_string(lows.size()) + " differs from " +
                       std::to_string(d));
    }
    if (!seen_ids.insert(id).second) {
      throw ValidationError(line_no, "duplicate id " + std::to_string(id));
    }
    std::vector<Interval> dims;
    dims.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      try {
        dims.emplace_back(lows[i], highs[i]);
      } catch (const InvalidGeometry& e) {
        throw ValidationError(line_no, "id " + std::to_string(id) +
                                           ", dimension " + std::to_string(i) +
                                           ": " + e.what());
      }
    }
    entries.push_back(Entry{id, Rect(std::move(dims))});
  }
  return entries;
}

/// Writes entries in canonical form: keys id, min, max in that order, one
/// record per LF-terminated line, doubles in shortest round-trip decimal.
/// read_jsonl of the output reproduces the input exactly.
inline void write_jsonl(const std::vector<Entry>& entries, std::ostream& out) {
  for (const Entry& e : entries) {
    nlohmann::ordered_json rec;
    rec["id"] = e.id;
    std::vector<double> lows, highs;
    lows.reserve(e.mbr.dim());
    highs.reserve(e.mbr.dim());
    for (const Interval& iv : e.mbr.dims()) {
      lows.push_back(iv.lo());
      highs.push_back(iv.hi());
    }
    rec["min"] = lows;
    rec["max"] = highs;
    out << rec.dump() << '\n';
  }
}

enum class Distribution { Uniform, Clustered };

inline const char* to_string(Distribution d) {
  return d == Distribution::Uniform ? "uniform" : "clustered";
}

/// Synthetic workload description. The domain is the box
/// [extent_lo, extent_hi]^d; rectangles get centers from the chosen
/// distribution and per-dimension side lengths uniform in [0, max_side],
/// clipped to the domain.
struct GeneratorConfig {
  std::size_t n = 0;
  std::size_t d = 0;
  double extent_lo = 0.0;
  double extent_hi = 1.0;
  double max_side = 0.0;
  Distribution distribution = Distribution::Uniform;
  std::size_t clusters = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw std::invalid_argument("generator: n must be >= 1");
    if (d < 1) throw std::invalid_argument("generator: d must be >= 1");
    if (!(extent_lo < extent_hi)) {
      throw std::invalid_argument("generator: extent_lo must be < extent_hi");
    }
    if (max_side < 0.0 || max_side > extent_hi - extent_lo) {
      throw std::invalid_argument(
          "generator: max_side must lie in [0, extent_hi - extent_lo]");
    }
    if (distribution == Distribution::Clustered && clusters < 1) {
      throw std::invalid_argument("generator: clusters must be >= 1");
    }
  }
};

/// Generates n rectangles with ids 0..n-1, bitwise reproducible for a fixed
/// seed. Clustered mode draws cluster centers first, then scatters members
/// with Gaussian offsets (sigma = 5% of the extent).
inline std::vector<Entry> generate(const GeneratorConfig& config) {
  config.validate();
  Xoshiro256PlusPlus rng(config.seed);
  const double extent = config.extent_hi - config.extent_lo;

  std::vector<std::vector<double>> cluster_centers;
  if (config.distribution == Distribution::Clustered) {
    cluster_centers.resize(config.clusters);
    for (auto& center : cluster_centers) {
      center.resize(config.d);
      for (std::size_t i = 0; i < config.d; ++i) {
        center[i] = rng.uniform(config.extent_lo, config.extent_hi);
      }
    }
  }

  std::vector<Entry> entries;
  entries.reserve(config.n);
  for (std::size_t id = 0; id < config.n; ++id) {
    const std::vector<double>* cluster = nullptr;
    if (config.distribution == Distribution::Clustered) {
      cluster = &cluster_centers[rng.next_below(config.clusters)];
    }
    std::vector<Interval> dims;
    dims.reserve(config.d);
    for (std::size_t i = 0; i < config.d; ++i) {
      double center;
      if (cluster) {
        center = (*cluster)[i] + 0.05 * extent * rng.normal();
        center = std::clamp(center, config.extent_lo, config.extent_hi);
      } else {
        center = rng.uniform(config.extent_lo, config.extent_hi);
      }
      const double side = rng.uniform(0.0, config.max_side);
      dims.emplace_back(std::max(config.extent_lo, center - 0.5 * side),
                        std::min(config.extent_hi, center + 0.5 * side));
    }
    entries.push_back(Entry{static_cast<std::int64_t>(id), Rect(std::move(dims))});
  }
  return entries;
}

}  // namespace spatialdom
