#pragma once

// report.json for simulate runs. Everything except the "runtime" object is a
// pure function of (config, catalog), so two runs with the same seed can be
// compared byte-for-byte after dropping that object.

#include <cstdint>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "dermawave/format.hpp"
#include "dermawave/materials.hpp"
#include "dermawave/simulate.hpp"

namespace dermawave {

inline const char* path_mode_name(PathMode m) {
  return m == PathMode::lateral_mean ? "lateral-mean" : "single-ray";
}

// Numbers go through the same 9-digit formatting as the CSV files.
inline double rounded(double v) { return parse_double(format_number(v)).value_or(v); }

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline nlohmann::json summary_json(const Summary& s) {
  return {{"mean", rounded(s.mean)}, {"std", rounded(s.stddev)}};
}

inline nlohmann::json config_json(const SimulationConfig& cfg, const Catalog& catalog,
                                  const std::string& catalog_source) {
  nlohmann::json freqs = nlohmann::json::array(), dists = nlohmann::json::array();
  for (double f : cfg.frequencies) freqs.push_back(rounded(f));
  for (double d : cfg.distances) dists.push_back(rounded(d));
  return {
      {"master_seed", cfg.grid.seed},
      {"realizations", cfg.realizations},
      {"frequencies_hz", freqs},
      {"distances_m", dists},
      {"directivity", rounded(cfg.directivity)},
      {"bins", cfg.bins},
      {"path_mode", path_mode_name(cfg.path_mode)},
      {"grid",
       {{"dx_m", rounded(cfg.grid.dx)},
        {"extent_x_m", rounded(cfg.grid.extent_x)},
        {"extent_y_m", rounded(cfg.grid.extent_y)},
        {"extent_z_m", rounded(cfg.grid.extent_z)},
        {"dims", {cfg.grid.nx(), cfg.grid.ny(), cfg.grid.nz()}}}},
      {"scenario",
       {{"attempts_per_target", cfg.scenario.attempts_per_target},
        {"capillary_band_fraction", rounded(cfg.scenario.capillary_band_fraction)},
        {"vessel_half_length_m", rounded(cfg.scenario.vessel_half_length)}}},
      {"catalog", {{"source", catalog_source}, {"hash", hex64(catalog_hash(catalog))}}},
  };
}

inline nlohmann::json report_json(const SimulationReport& report, const SimulationConfig& cfg,
                                  const Catalog& catalog, const std::string& catalog_source,
                                  unsigned threads_used) {
  nlohmann::json j;
  j["tool"] = "dermawave";
  j["report_version"] = 1;
  j["config"] = config_json(cfg, catalog, catalog_source);
  j["seeds"] = report.seeds;

  auto& att = j["attenuation"] = nlohmann::json::array();
  for (const auto& a : report.attenuation)
    att.push_back({{"frequency_hz", rounded(a.frequency)},
                   {"distance_m", rounded(a.distance)},
                   {"spreading_db", summary_json(a.spreading_db)},
                   {"absorption_db", summary_json(a.absorption_db)},
                   {"scattering_db", summary_json(a.scattering_db)},
                   {"total_db", summary_json(a.total_db)},
                   {"total_factor", rounded(a.mean.total.factor)}});

  auto& layers = j["layers"] = nlohmann::json::array();
  for (const auto& l : report.layers)
    layers.push_back({{"layer", l.layer},
                      {"frequency_hz", rounded(l.frequency)},
                      {"mean_mu_abs_per_m", rounded(l.mean_mu_abs)},
                      {"mean_mu_sca_per_um", rounded(l.mean_mu_sca)}});

  auto& species = j["species"] = nlohmann::json::array();
  for (const auto& s : report.species)
    species.push_back({{"species", s.species},
                       {"layer", s.layer},
                       {"nominal_density_per_mm3", rounded(s.nominal_density * kCubicMillimetre)},
                       {"target", summary_json(s.target)},
                       {"achieved", summary_json(s.achieved)},
                       {"achieved_density_per_mm3",
                        {{"mean", rounded(s.achieved_density.mean * kCubicMillimetre)},
                         {"std", rounded(s.achieved_density.stddev * kCubicMillimetre)}}}});

  auto& hists = j["histograms"] = nlohmann::json::array();
  for (const auto& h : report.histograms) {
    nlohmann::json edges = nlohmann::json::array(), dens = nlohmann::json::array();
    for (double e : h.bin_edges) edges.push_back(rounded(e));
    for (double d : h.density) dens.push_back(rounded(d));
    hists.push_back({{"layer", h.layer},
                     {"kind", coefficient_kind_name(h.kind)},
                     {"unit", h.kind == CoefficientKind::absorption ? "1/m" : "1/um"},
                     {"frequency_hz", rounded(h.frequency)},
                     {"file", histogram_file_name(h)},
                     {"samples", h.samples},
                     {"bin_edges", edges},
                     {"density", dens}});
  }

  // The mixture model puts water-rich tissue at ~1e4 1/m; flag it so nobody
  // reads these as the few-hundred 1/m figures quoted in some literature.
  auto& flags = j["flags"] = nlohmann::json::array();
  for (const auto& l : report.layers)
    if (l.mean_mu_abs > 1e3)
      flags.push_back(l.layer + " @ " + format_number(l.frequency) +
                      " Hz: mean absorption coefficient " + format_number(l.mean_mu_abs) +
                      " 1/m follows the mixture model and exceeds 1e3 1/m");

  j["runtime"] = {{"wall_clock_seconds", report.wall_clock_seconds}, {"threads", threads_used}};
  return j;
}

}  // namespace dermawave
