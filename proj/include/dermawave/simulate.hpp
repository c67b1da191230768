#pragma once

// Monte Carlo observables over voxel phantoms: per-voxel absorption and
// scattering coefficients, per-layer coefficient histograms, and link-budget
// tables along the depth axis.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "dermawave/constants.hpp"
#include "dermawave/dielectrics.hpp"
#include "dermawave/errors.hpp"
#include "dermawave/format.hpp"
#include "dermawave/losses.hpp"
#include "dermawave/materials.hpp"
#include "dermawave/rng.hpp"
#include "dermawave/scenario.hpp"

namespace dermawave {

struct MaterialOptics {
  ComplexPermittivity eps;
  RefractiveIndex n;
  double mu_abs = 0.0;  // 1/m
};

template <class ComponentLookup>
MaterialOptics material_optics(const MixtureComposition& comp, double f_hz,
                               const ComponentLookup& lookup) {
  MaterialOptics o;
  o.eps = mixture_permittivity(comp, f_hz, lookup);
  o.n = refractive_index(o.eps);
  o.mu_abs = absorption_coefficient(o.n, f_hz);
  return o;
}

struct CoefficientField {
  std::size_t nx = 0, ny = 0, nz = 0;
  double frequency = 0.0;
  std::vector<double> mu_abs;  // 1/m
  std::vector<double> mu_sca;  // 1/um
  std::vector<double> n_real;

  std::size_t size() const { return mu_abs.size(); }
};

struct CoefficientOptions {
  // Evaluate each distinct material once per frequency. Disabling it must not
  // change any result.
  bool memoize = true;
};

// Scatterer populations acting on slice k: every species whose placement band
// contains the slice centre, at its achieved density, embedded in the ECM of
// the slice's layer.
inline std::vector<ScattererPopulation> slice_populations(const ScenarioRealization& real,
                                                          std::size_t k, double f_hz,
                                                          const Catalog& catalog) {
  std::vector<ScattererPopulation> pops;
  const double z = (static_cast<double>(k) + 0.5) * real.grid.dx;
  const std::size_t li = real.slice_layer[k];
  const auto& layer = catalog.layers()[li];
  const RefractiveIndex medium = material_optics(layer.ecm, f_hz, catalog).n;
  const double area = real.grid.extent_x * real.grid.extent_y;

  for (const auto& s : real.stats) {
    const auto& species = catalog.cell_species(s.species);
    double density = 0.0;
    if (species.depth_interval) {
      if (s.layer != layer.id) continue;
      const Interval band{std::max(species.depth_interval->lo, 0.0),
                          std::min(species.depth_interval->hi, real.grid.extent_z)};
      if (!band.contains(z)) continue;
      density = s.achieved_density();
    } else {
      const auto& band = real.vessel_bands[li];
      if (!band || !band->contains(z)) continue;
      std::size_t count = 0;
      for (const auto& p : real.placements)
        if (p.species == species.id && band->contains(p.center.z)) ++count;
      density = static_cast<double>(count) / (area * band->length());
    }
    if (density <= 0.0) continue;
    const RefractiveIndex n_cell = material_optics(species.composition, f_hz, catalog).n;
    pops.push_back({species.id, species.radius(), density, relative_index(n_cell, medium),
                    medium.n_real});
  }
  return pops;
}

inline CoefficientField per_voxel_coefficients(const ScenarioRealization& real, double f_hz,
                                               const Catalog& catalog,
                                               const CoefficientOptions& options = {}) {
  const std::size_t nx = real.grid.nx(), ny = real.grid.ny(), nz = real.grid.nz();
  CoefficientField field;
  field.nx = nx;
  field.ny = ny;
  field.nz = nz;
  field.frequency = f_hz;
  field.mu_abs.resize(real.voxel_labels.size());
  field.mu_sca.resize(real.voxel_labels.size());
  field.n_real.resize(real.voxel_labels.size());

  std::vector<std::optional<MaterialOptics>> cache(real.labels.size());
  auto optics = [&](std::uint16_t label) -> MaterialOptics {
    if (!options.memoize) return material_optics(real.labels[label].composition, f_hz, catalog);
    auto& slot = cache[label];
    if (!slot) slot = material_optics(real.labels[label].composition, f_hz, catalog);
    return *slot;
  };

  for (std::size_t k = 0; k < nz; ++k) {
    const auto pops = slice_populations(real, k, f_hz, catalog);
    const double mu_sca_um = scattering_coefficients(pops, f_hz).sum() * kMicron;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t at = real.index(i, j, k);
        const MaterialOptics o = optics(real.voxel_labels[at]);
        field.mu_abs[at] = o.mu_abs;
        field.n_real[at] = o.n.n_real;
        field.mu_sca[at] = mu_sca_um;
      }
  }
  return field;
}

// ---------------------------------------------------------------------------
// Histograms

enum class CoefficientKind { absorption, scattering };

inline const char* coefficient_kind_name(CoefficientKind k) {
  return k == CoefficientKind::absorption ? "abs" : "sca";
}

struct LayerHistogram {
  std::string layer;
  CoefficientKind kind = CoefficientKind::absorption;
  double frequency = 0.0;
  std::vector<double> bin_edges;  // abs: 1/m, sca: 1/um
  std::vector<double> density;    // per unit coefficient
  std::size_t samples = 0;

  double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
  double integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) s += density[i] * bin_width(i);
    return s;
  }
};

// Voxel values of one layer, in voxel order.
inline std::vector<double> layer_values(const CoefficientField& field,
                                        const ScenarioRealization& real, std::size_t layer,
                                        CoefficientKind kind) {
  const auto& src = kind == CoefficientKind::absorption ? field.mu_abs : field.mu_sca;
  const std::size_t plane = field.nx * field.ny;
  std::vector<double> out;
  for (std::size_t k = 0; k < field.nz; ++k) {
    if (real.slice_layer[k] != layer) continue;
    out.insert(out.end(), src.begin() + static_cast<std::ptrdiff_t>(k * plane),
               src.begin() + static_cast<std::ptrdiff_t>((k + 1) * plane));
  }
  return out;
}

// Uniform bins on [0, upper]; upper defaults to 1.05 x the largest value.
inline LayerHistogram make_histogram(std::span<const double> values, std::size_t bins,
                                     std::optional<double> upper = std::nullopt) {
  if (bins < 2) throw DomainError("histogram needs at least 2 bins");
  double hi = upper.value_or(0.0);
  if (!upper) {
    double max = 0.0;
    for (double v : values) max = std::max(max, v);
    hi = 1.05 * max;
  }
  if (!(hi > 0.0)) hi = 1.0;
  LayerHistogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = hi * static_cast<double>(i) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::max(0.0, v / hi * static_cast<double>(bins)));
    counts[std::min(b, bins - 1)]++;
  }
  h.samples = values.size();
  h.density.resize(bins, 0.0);
  if (!values.empty())
    for (std::size_t i = 0; i < bins; ++i)
      h.density[i] = static_cast<double>(counts[i]) /
                     (static_cast<double>(values.size()) * h.bin_width(i));
  return h;
}

inline std::vector<LayerHistogram> layer_histograms(const CoefficientField& field,
                                                    const ScenarioRealization& real,
                                                    std::size_t bins = 64) {
  std::vector<LayerHistogram> out;
  for (std::size_t li = 0; li < real.layer_ids.size(); ++li) {
    for (auto kind : {CoefficientKind::absorption, CoefficientKind::scattering}) {
      const auto values = layer_values(field, real, li, kind);
      if (values.empty()) continue;
      auto h = make_histogram(values, bins);
      h.layer = real.layer_ids[li];
      h.kind = kind;
      h.frequency = field.frequency;
      out.push_back(std::move(h));
    }
  }
  return out;
}

// Local maxima of a histogram: maximal runs of equal density strictly above
// both neighbours (outside the range counts as zero). Returns bin indices of
// the run starts.
inline std::vector<std::size_t> histogram_peaks(const LayerHistogram& h) {
  std::vector<std::size_t> peaks;
  const auto& d = h.density;
  std::size_t i = 0;
  while (i < d.size()) {
    std::size_t j = i;
    while (j + 1 < d.size() && d[j + 1] == d[i]) ++j;
    const double left = i == 0 ? 0.0 : d[i - 1];
    const double right = j + 1 == d.size() ? 0.0 : d[j + 1];
    if (d[i] > left && d[i] > right) peaks.push_back(i);
    i = j + 1;
  }
  return peaks;
}

// Two local maxima separated by a dip of at least `dip` relative to the
// smaller of the two.
inline bool is_bimodal(const LayerHistogram& h, double dip = 0.2) {
  const auto peaks = histogram_peaks(h);
  for (std::size_t a = 0; a < peaks.size(); ++a)
    for (std::size_t b = a + 1; b < peaks.size(); ++b) {
      const double lower = std::min(h.density[peaks[a]], h.density[peaks[b]]);
      const double valley = *std::min_element(h.density.begin() + static_cast<std::ptrdiff_t>(peaks[a]),
                                              h.density.begin() + static_cast<std::ptrdiff_t>(peaks[b]));
      if (valley <= (1.0 - dip) * lower) return true;
    }
  return false;
}

// q-quantile of a histogram (linear within the bin).
inline double histogram_quantile(const LayerHistogram& h, double q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double mass = h.density[i] * h.bin_width(i);
    if (mass > 0.0 && acc + mass >= q)
      return h.bin_edges[i] + (q - acc) / mass * h.bin_width(i);
    acc += mass;
  }
  return h.bin_edges.back();
}

// Probability mass strictly below `x` (bins straddling x count pro rata).
inline double histogram_mass_below(const LayerHistogram& h, double x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double lo = h.bin_edges[i], hi = h.bin_edges[i + 1];
    if (x >= hi)
      acc += h.density[i] * (hi - lo);
    else if (x > lo)
      acc += h.density[i] * (x - lo);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Attenuation along depth

enum class PathMode {
  lateral_mean,  // mean coefficient of each depth slice
  single_ray,    // the voxel column through the lateral centre
};

struct AttenuationRow {
  double frequency = 0.0;
  double distance = 0.0;
  LossBreakdown loss;
};

// Depth profile of one field: per-slice mean mu_abs (1/m), mu_sca (1/m), n'.
struct DepthProfile {
  double dx = 0.0;
  std::vector<double> mu_abs, mu_sca, n_real;
};

inline DepthProfile depth_profile(const CoefficientField& field, double dx, PathMode mode) {
  DepthProfile p;
  p.dx = dx;
  p.mu_abs.resize(field.nz);
  p.mu_sca.resize(field.nz);
  p.n_real.resize(field.nz);
  const std::size_t plane = field.nx * field.ny;
  for (std::size_t k = 0; k < field.nz; ++k) {
    double a = 0.0, s = 0.0, n = 0.0;
    if (mode == PathMode::single_ray) {
      const std::size_t at = field.nx / 2 + field.nx * (field.ny / 2 + field.ny * k);
      a = field.mu_abs[at];
      s = field.mu_sca[at];
      n = field.n_real[at];
    } else {
      for (std::size_t q = k * plane; q < (k + 1) * plane; ++q) {
        a += field.mu_abs[q];
        s += field.mu_sca[q];
        n += field.n_real[q];
      }
      a /= static_cast<double>(plane);
      s /= static_cast<double>(plane);
      n /= static_cast<double>(plane);
    }
    p.mu_abs[k] = a;
    p.mu_sca[k] = s / kMicron;
    p.n_real[k] = n;
  }
  return p;
}

// Piecewise-constant path integrals from the surface down to depth d.
inline LossBreakdown path_loss(const DepthProfile& p, double frequency, double d,
                               double directivity) {
  const double depth = p.dx * static_cast<double>(p.mu_abs.size());
  if (!(d >= 0.0) || d > depth * (1.0 + 1e-12))
    throw DomainError("path depth " + format_number(d) + " m outside the grid");
  if (d == 0.0) return LossBreakdown::combine({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0});
  double tau_abs = 0.0, tau_sca = 0.0, n_sum = 0.0;
  for (std::size_t k = 0; k < p.mu_abs.size(); ++k) {
    const double lo = p.dx * static_cast<double>(k);
    if (lo >= d) break;
    const double w = std::min(p.dx, d - lo);
    tau_abs += p.mu_abs[k] * w;
    tau_sca += p.mu_sca[k] * w;
    n_sum += p.n_real[k] * w;
  }
  PropagationConfig cfg{frequency, d, directivity, RefractiveIndex{n_sum / d, 0.0}};
  return LossBreakdown::combine(spreading_loss(cfg), absorption_loss(tau_abs / d, d),
                                scattering_loss(tau_sca / d, 0.0, d));
}

inline std::vector<AttenuationRow> attenuation_profile(std::span<const CoefficientField> fields,
                                                       std::span<const double> depths,
                                                       double grid_dx, double directivity,
                                                       PathMode mode = PathMode::lateral_mean) {
  std::vector<AttenuationRow> rows;
  for (const auto& field : fields) {
    const auto profile = depth_profile(field, grid_dx, mode);
    for (double d : depths)
      rows.push_back({field.frequency, d, path_loss(profile, field.frequency, d, directivity)});
  }
  return rows;
}

inline std::vector<AttenuationRow> attenuation_profile(std::span<const double> freqs,
                                                       std::span<const double> depths,
                                                       const ScenarioRealization& real,
                                                       const Catalog& catalog, double directivity,
                                                       PathMode mode = PathMode::lateral_mean) {
  std::vector<CoefficientField> fields;
  for (double f : freqs) fields.push_back(per_voxel_coefficients(real, f, catalog));
  return attenuation_profile(fields, depths, real.grid.dx, directivity, mode);
}

// Row-wise invariants: factorization, dB additivity, factor range, and
// monotonicity in distance per frequency. One line per violation.
inline std::vector<std::string> check_attenuation_rows(std::span<const AttenuationRow> rows) {
  std::vector<std::string> issues;
  std::map<double, std::vector<const AttenuationRow*>> by_f;
  for (const auto& r : rows) {
    const auto& l = r.loss;
    const double product = l.spreading.factor * l.absorption.factor * l.scattering.factor;
    const std::string at = "f=" + format_number(r.frequency) + " d=" + format_number(r.distance);
    if (std::abs(l.total.factor - product) > 1e-12 * std::abs(product))
      issues.push_back(at + ": total factor differs from the product of components");
    if (std::abs(l.total.db - (l.spreading.db + l.absorption.db + l.scattering.db)) > 1e-9)
      issues.push_back(at + ": total dB differs from the sum of components");
    for (const auto* t : {&l.spreading, &l.absorption, &l.scattering, &l.total})
      if (!(t->factor > 0.0 && t->factor <= 1.0) || t->db < 0.0)
        issues.push_back(at + ": loss factor outside (0, 1]");
    by_f[r.frequency].push_back(&r);
  }
  for (auto& [f, list] : by_f) {
    std::stable_sort(list.begin(), list.end(),
                     [](const auto* a, const auto* b) { return a->distance < b->distance; });
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i]->loss.total.db < list[i - 1]->loss.total.db - 1e-9)
        issues.push_back("f=" + format_number(f) + ": total loss decreases with distance at d=" +
                         format_number(list[i]->distance));
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Monte Carlo driver

struct SimulationConfig {
  GridConfig grid;  // grid.seed is the master seed
  ScenarioOptions scenario;
  std::vector<double> frequencies{1e11, 1e12};
  std::vector<double> distances;
  double directivity = 1.0;
  std::size_t bins = 64;
  std::size_t realizations = 10;
  PathMode path_mode = PathMode::lateral_mean;
  unsigned threads = 0;  // 0: hardware concurrency
  bool memoize = true;

  void validate() const {
    grid.validate();
    if (frequencies.empty()) throw DomainError("frequency list is empty");
    if (distances.empty()) throw DomainError("distance list is empty");
    for (double f : frequencies)
      if (!(f >= kAcceptedBandLowHz && f <= kAcceptedBandHighHz))
        throw DomainError("frequency " + format_number(f) + " Hz outside [1e10, 1e13]");
    for (double d : distances)
      if (!(d >= 0.0) || d > grid.extent_z * (1.0 + 1e-12))
        throw DomainError("distance " + format_number(d) + " m outside [0, grid depth]");
    if (!(directivity >= 1.0)) throw DomainError("directivity must be >= 1");
    if (bins < 2) throw DomainError("bins must be >= 2");
    if (realizations < 1) throw DomainError("realizations must be >= 1");
  }
};

// Seed of realization i, derived from the master seed with the same
// counter-based scheme as the scenario streams.
inline std::uint64_t realization_seed(std::uint64_t master, std::size_t i) {
  auto s = RandomStream::derive(master, {tag_of("realization"), static_cast<std::uint64_t>(i)});
  return s.next_u64();
}

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
};

inline Summary summarize(std::span<const double> v) {
  Summary s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

struct AttenuationSummary {
  double frequency = 0.0;
  double distance = 0.0;
  LossBreakdown mean;  // assembled from the mean component dB values
  Summary spreading_db, absorption_db, scattering_db, total_db;
};

struct SpeciesSummary {
  std::string species;
  std::string layer;
  double nominal_density = 0.0;  // 1/m^3
  Summary target, achieved, achieved_density;
};

struct LayerSummary {
  std::string layer;
  double frequency = 0.0;
  double mean_mu_abs = 0.0;   // 1/m, pooled over voxels
  double mean_mu_sca = 0.0;   // 1/um
};

struct SimulationReport {
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<AttenuationSummary> attenuation;
  std::vector<LayerHistogram> histograms;
  std::vector<SpeciesSummary> species;
  std::vector<LayerSummary> layers;
  double wall_clock_seconds = 0.0;
};

namespace detail {

struct RealizationOutcome {
  std::vector<AttenuationRow> rows;
  // values[f][layer][kind]
  std::vector<std::vector<std::array<std::vector<double>, 2>>> values;
  std::vector<SpeciesStats> stats;
};

// Runs job(i) for i in [0, n) on up to `threads` workers. Results land in
// fixed slots so the output never depends on scheduling.
template <class Result, class Job>
std::vector<Result> parallel_map(std::size_t n, unsigned threads, Job job) {
  std::vector<Result> out(n);
  std::vector<std::exception_ptr> errors(n);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace detail

inline SimulationReport run_monte_carlo(const SimulationConfig& config, const Catalog& catalog) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  SimulationReport report;
  report.master_seed = config.grid.seed;
  for (std::size_t i = 0; i < config.realizations; ++i)
    report.seeds.push_back(realization_seed(config.grid.seed, i));

  const std::size_t n_layers = catalog.layers().size();
  auto outcomes = detail::parallel_map<detail::RealizationOutcome>(
      config.realizations, config.threads, [&](std::size_t i) {
        GridConfig grid = config.grid;
        grid.seed = report.seeds[i];
        const auto real = generate_scenario(grid, catalog, config.scenario);
        detail::RealizationOutcome o;
        o.stats = real.stats;
        std::vector<CoefficientField> fields;
        for (double f : config.frequencies) {
          fields.push_back(per_voxel_coefficients(real, f, catalog, {config.memoize}));
          auto& per_layer = o.values.emplace_back(n_layers);
          for (std::size_t li = 0; li < n_layers; ++li)
            for (auto kind : {CoefficientKind::absorption, CoefficientKind::scattering})
              per_layer[li][static_cast<std::size_t>(kind)] =
                  layer_values(fields.back(), real, li, kind);
        }
        o.rows = attenuation_profile(fields, config.distances, grid.dx, config.directivity,
                                     config.path_mode);
        return o;
      });

  // Attenuation: mean and spread of each component over realizations.
  const std::size_t n_rows = outcomes.front().rows.size();
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::vector<double> spr, abs, sca, tot;
    for (const auto& o : outcomes) {
      spr.push_back(o.rows[r].loss.spreading.db);
      abs.push_back(o.rows[r].loss.absorption.db);
      sca.push_back(o.rows[r].loss.scattering.db);
      tot.push_back(o.rows[r].loss.total.db);
    }
    AttenuationSummary s;
    s.frequency = outcomes.front().rows[r].frequency;
    s.distance = outcomes.front().rows[r].distance;
    s.spreading_db = summarize(spr);
    s.absorption_db = summarize(abs);
    s.scattering_db = summarize(sca);
    s.total_db = summarize(tot);
    auto term = [](double db) { return LossTerm{std::pow(10.0, -db / 10.0), db}; };
    s.mean = LossBreakdown::combine(term(s.spreading_db.mean), term(s.absorption_db.mean),
                                    term(s.scattering_db.mean));
    report.attenuation.push_back(s);
  }

  // Pooled histograms on a common range per (frequency, layer, kind).
  for (std::size_t fi = 0; fi < config.frequencies.size(); ++fi) {
    for (std::size_t li = 0; li < n_layers; ++li) {
      for (auto kind : {CoefficientKind::absorption, CoefficientKind::scattering}) {
        std::vector<double> pooled;
        for (const auto& o : outcomes) {
          const auto& v = o.values[fi][li][static_cast<std::size_t>(kind)];
          pooled.insert(pooled.end(), v.begin(), v.end());
        }
        if (pooled.empty()) continue;
        auto h = make_histogram(pooled, config.bins);
        h.layer = catalog.layers()[li].id;
        h.kind = kind;
        h.frequency = config.frequencies[fi];
        double sum = 0.0;
        for (double v : pooled) sum += v;
        auto& ls = kind == CoefficientKind::absorption
                       ? report.layers.emplace_back(LayerSummary{h.layer, h.frequency})
                       : report.layers.back();
        (kind == CoefficientKind::absorption ? ls.mean_mu_abs : ls.mean_mu_sca) =
            sum / static_cast<double>(pooled.size());
        report.histograms.push_back(std::move(h));
      }
    }
  }

  for (std::size_t si = 0; si < outcomes.front().stats.size(); ++si) {
    const auto& first = outcomes.front().stats[si];
    std::vector<double> target, achieved, density;
    for (const auto& o : outcomes) {
      target.push_back(static_cast<double>(o.stats[si].target));
      achieved.push_back(static_cast<double>(o.stats[si].achieved));
      density.push_back(o.stats[si].achieved_density());
    }
    report.species.push_back({first.species, first.layer, first.nominal_density,
                              summarize(target), summarize(achieved), summarize(density)});
  }

  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

inline std::vector<AttenuationRow> mean_rows(const SimulationReport& report) {
  std::vector<AttenuationRow> rows;
  for (const auto& a : report.attenuation) rows.push_back({a.frequency, a.distance, a.mean});
  return rows;
}

inline const LayerHistogram* find_histogram(const SimulationReport& report, std::string_view layer,
                                            CoefficientKind kind, double frequency) {
  for (const auto& h : report.histograms)
    if (h.layer == layer && h.kind == kind && h.frequency == frequency) return &h;
  return nullptr;
}

inline const LayerSummary* find_layer_summary(const SimulationReport& report,
                                              std::string_view layer, double frequency) {
  for (const auto& l : report.layers)
    if (l.layer == layer && l.frequency == frequency) return &l;
  return nullptr;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_attenuation_csv(std::ostream& out, const SimulationReport& report) {
  out << "frequency_hz,distance_m,L_spr_db,L_abs_db,L_sca_db,L_tot_db\n";
  for (const auto& a : report.attenuation)
    out << format_number(a.frequency) << ',' << format_number(a.distance) << ','
        << format_number(a.mean.spreading.db) << ',' << format_number(a.mean.absorption.db) << ','
        << format_number(a.mean.scattering.db) << ',' << format_number(a.mean.total.db) << '\n';
}

inline void write_histogram_csv(std::ostream& out, const LayerHistogram& h) {
  out << "bin_left,bin_right,density\n";
  for (std::size_t i = 0; i < h.density.size(); ++i)
    out << format_number(h.bin_edges[i]) << ',' << format_number(h.bin_edges[i + 1]) << ','
        << format_number(h.density[i]) << '\n';
}

// hist_<layer>_<kind>_<freq>GHz.csv
inline std::string histogram_file_name(const LayerHistogram& h) {
  return "hist_" + h.layer + "_" + coefficient_kind_name(h.kind) + "_" +
         format_number(h.frequency / 1e9) + "GHz.csv";
}

}  // namespace dermawave
