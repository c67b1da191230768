#pragma once

// Stochastic voxel phantoms of layered skin.
//
// Pipeline: cells per layer (hard-sphere dart throwing, densest species
// first) -> vessels per vascularised layer (line Poisson process) -> red
// blood cells inside vessel lumens -> voxel labelling by voxel-centre point
// tests with precedence cell > vessel lumen > layer ECM.
//
// Every random choice draws from a Philox stream keyed by (seed, stage, ids),
// so a realization is a pure function of (grid, seed, options, catalog).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dermawave/constants.hpp"
#include "dermawave/errors.hpp"
#include "dermawave/format.hpp"
#include "dermawave/log.hpp"
#include "dermawave/materials.hpp"
#include "dermawave/rng.hpp"

namespace dermawave {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(Vec3 a) { return dot(a, a); }

struct GridConfig {
  double dx = 10e-6;  // m
  double extent_x = 1e-4;
  double extent_y = 1e-4;
  double extent_z = 5e-3;
  std::uint64_t seed = 0;

  static std::size_t cells_along(double extent, double dx) {
    return static_cast<std::size_t>(std::llround(extent / dx));
  }
  std::size_t nx() const { return cells_along(extent_x, dx); }
  std::size_t ny() const { return cells_along(extent_y, dx); }
  std::size_t nz() const { return cells_along(extent_z, dx); }
  std::size_t voxel_count() const { return nx() * ny() * nz(); }

  void validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw DomainError("voxel pitch dx must be > 0");
    for (double e : {extent_x, extent_y, extent_z}) {
      if (!(e > 0.0)) throw DomainError("grid extents must be > 0");
      const double ratio = e / dx;
      if (std::llround(ratio) < 1 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw DomainError("grid extent " + format_number(e) +
                          " m is not a positive integer multiple of dx");
    }
    if (voxel_count() > std::numeric_limits<std::uint32_t>::max())
      throw DomainError("grid has too many voxels");
  }
};

struct CellPlacement {
  std::string species;
  Vec3 center;
  double radius = 0.0;

  friend bool operator==(const CellPlacement&, const CellPlacement&) = default;
};

struct VesselSegment {
  Vec3 center;
  Vec3 axis;  // unit
  double half_length = 0.0;
  double radius = 0.0;
  VesselClass vessel_class = VesselClass::capillary;
  std::string layer;

  // Whether point p is inside the lumen, shrunk by `margin` from wall and ends.
  bool contains(Vec3 p, double margin = 0.0) const {
    const Vec3 d = p - center;
    const double t = dot(d, axis);
    if (std::abs(t) > half_length - margin) return false;
    const double radial2 = norm2(d - t * axis);
    const double r = radius - margin;
    return r >= 0.0 && radial2 <= r * r * (1.0 + 1e-12) + 1e-30;
  }
  double lumen_volume() const { return kPi * radius * radius * 2.0 * half_length; }

  friend bool operator==(const VesselSegment&, const VesselSegment&) = default;
};

struct ScenarioOptions {
  // Dart-throwing budget: attempts per targeted cell.
  int attempts_per_target = 30;
  // Capillaries are confined to this upper fraction of their layer.
  double capillary_band_fraction = 0.2;
  // Upper bound on vessel half-length; 0 means traverse the whole box.
  double vessel_half_length = 0.0;
};

struct SpeciesStats {
  std::string species;
  std::string layer;         // empty for vessel-bound species
  std::size_t target = 0;
  std::size_t achieved = 0;
  std::size_t attempts = 0;
  double region_volume = 0.0;  // m^3 the target was computed over
  double nominal_density = 0.0;

  double achieved_density() const { return region_volume > 0.0 ? achieved / region_volume : 0.0; }
};

enum class LabelKind { ecm, lumen, cell };

struct LabelInfo {
  std::string name;
  LabelKind kind = LabelKind::ecm;
  MixtureComposition composition;
  std::size_t layer_index = 0;  // for ECM labels
};

// ECM per layer (in layer order), then the vessel lumen, then every cell
// species in catalog order. The lumen is modelled as plasma, i.e. water.
inline std::vector<LabelInfo> make_label_table(const Catalog& catalog) {
  std::vector<LabelInfo> labels;
  for (std::size_t i = 0; i < catalog.layers().size(); ++i) {
    const auto& l = catalog.layers()[i];
    labels.push_back({"ecm_" + l.id, LabelKind::ecm, l.ecm, i});
  }
  labels.push_back({"vessel_lumen", LabelKind::lumen, MixtureComposition{"water", {}}, 0});
  for (const auto& c : catalog.cells()) labels.push_back({c.id, LabelKind::cell, c.composition, 0});
  return labels;
}

struct ScenarioRealization {
  GridConfig grid;
  std::vector<CellPlacement> placements;
  std::vector<VesselSegment> vessels;
  std::vector<std::uint16_t> voxel_labels;  // x-fastest
  std::vector<LabelInfo> labels;
  std::vector<SpeciesStats> stats;
  // Depth band hosting each layer's vessels (and their RBCs), if any.
  std::vector<std::optional<Interval>> vessel_bands;
  std::vector<std::string> layer_ids;
  std::vector<std::size_t> slice_layer;  // layer index of each z slice
  std::uint64_t seed = 0;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + grid.nx() * (j + grid.ny() * k);
  }
  std::uint16_t label_at(std::size_t i, std::size_t j, std::size_t k) const {
    return voxel_labels[index(i, j, k)];
  }
  std::optional<std::uint16_t> label_id(std::string_view name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i].name == name) return static_cast<std::uint16_t>(i);
    return std::nullopt;
  }
  const SpeciesStats* stats_for(std::string_view species) const {
    for (const auto& s : stats)
      if (s.species == species) return &s;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Overlap queries

// Placements bucketed by depth. The phantom is a tall thin column, so depth
// buckets prune almost everything.
class OverlapIndex {
 public:
  explicit OverlapIndex(double bucket_height = 20e-6) : h_(bucket_height) {}

  OverlapIndex(std::span<const CellPlacement> existing, double bucket_height = 20e-6)
      : h_(bucket_height) {
    for (const auto& p : existing) add(p);
  }

  void add(const CellPlacement& p) {
    const long b = bucket(p.center.z);
    if (buckets_.empty()) {
      offset_ = b;
    } else if (b < offset_) {
      buckets_.insert(buckets_.begin(), static_cast<std::size_t>(offset_ - b), {});
      offset_ = b;
    }
    const auto slot = static_cast<std::size_t>(b - offset_);
    if (slot >= buckets_.size()) buckets_.resize(slot + 1);
    buckets_[slot].push_back(items_.size());
    items_.push_back({p.center, p.radius});
    max_radius_ = std::max(max_radius_, p.radius);
  }

  // True if a sphere at c with radius r would intersect any indexed sphere
  // (touching is allowed).
  bool overlaps(Vec3 c, double r) const {
    if (items_.empty()) return false;
    const double reach = r + max_radius_;
    const long lo = std::max(bucket(c.z - reach), offset_);
    const long hi = std::min(bucket(c.z + reach), offset_ + static_cast<long>(buckets_.size()) - 1);
    for (long b = lo; b <= hi; ++b) {
      for (std::size_t idx : buckets_[static_cast<std::size_t>(b - offset_)]) {
        const auto& it = items_[idx];
        const double min_d = r + it.radius;
        if (norm2(c - it.center) < min_d * min_d) return true;
      }
    }
    return false;
  }

 private:
  struct Item {
    Vec3 center;
    double radius;
  };
  long bucket(double z) const { return static_cast<long>(std::floor(z / h_)); }

  double h_;
  long offset_ = 0;
  double max_radius_ = 0.0;
  std::vector<Item> items_;
  std::vector<std::vector<std::size_t>> buckets_;
};

// Axis-aligned placement volume: lateral box [0, X] x [0, Y] and a depth band.
struct PlacementVolume {
  double extent_x = 0.0;
  double extent_y = 0.0;
  Interval depth;

  double volume() const { return extent_x * extent_y * std::max(depth.length(), 0.0); }
};

struct PlacementResult {
  std::vector<CellPlacement> placements;
  std::size_t target = 0;
  std::size_t attempts = 0;
  double region_volume = 0.0;  // m^3 the target was computed over
};

// Hard-sphere dart throwing. Targets round(rho * V) cells; candidates are
// uniform over the centres that keep the sphere inside the lateral box and
// inside [0, box_depth]; a candidate is rejected when it overlaps any
// existing or previously accepted sphere. Stops at the target or after
// attempts_per_target * target throws.
inline PlacementResult place_cells_disc_poisson(const PlacementVolume& vol,
                                                const CellSpecies& species,
                                                OverlapIndex& index, RandomStream& rng,
                                                double box_depth, int attempts_per_target = 30) {
  PlacementResult out;
  out.region_volume = vol.volume();
  const double expected = species.number_density * vol.volume();
  out.target = expected > 0.0 ? static_cast<std::size_t>(std::llround(expected)) : 0;
  if (out.target == 0) return out;

  const double r = species.radius();
  const double x0 = r, x1 = vol.extent_x - r;
  const double y0 = r, y1 = vol.extent_y - r;
  const double z0 = std::max(vol.depth.lo, r), z1 = std::min(vol.depth.hi, box_depth - r);
  if (x1 < x0 || y1 < y0 || z1 < z0) {
    warn(species.id + ": placement volume too small for diameter " +
         format_number(species.diameter / kMicron) + " um; no cells placed");
    return out;
  }

  const std::size_t budget = static_cast<std::size_t>(attempts_per_target) * out.target;
  while (out.placements.size() < out.target && out.attempts < budget) {
    ++out.attempts;
    const double x = rng.uniform(x0, x1);
    const double y = rng.uniform(y0, y1);
    const double z = rng.uniform(z0, z1);
    const Vec3 c{x, y, z};
    if (index.overlaps(c, r)) continue;
    CellPlacement p{species.id, c, r};
    index.add(p);
    out.placements.push_back(std::move(p));
  }
  return out;
}

// Convenience overload checking against an explicit list of prior spheres.
inline PlacementResult place_cells_disc_poisson(const PlacementVolume& vol,
                                                const CellSpecies& species,
                                                std::span<const CellPlacement> existing,
                                                RandomStream& rng, double box_depth,
                                                int attempts_per_target = 30) {
  OverlapIndex index(existing);
  return place_cells_disc_poisson(vol, species, index, rng, box_depth, attempts_per_target);
}

// Depth band available to a layer's vessels.
inline Interval vessel_band(const Interval& layer_depth, VesselClass cls, double capillary_fraction) {
  if (cls == VesselClass::capillary)
    return {layer_depth.lo, layer_depth.lo + capillary_fraction * layer_depth.length()};
  return layer_depth;
}

// Line Poisson process: N ~ Poisson(density * X * Y); lateral centres
// uniform; depth uniform over the band such that the tube stays inside it;
// horizontal axis with uniform azimuth; segment clipped to the lateral box
// and to +-max_half_length around the centre.
inline std::vector<VesselSegment> place_vessels_line_poisson(
    const std::string& layer_id, const Interval& band, const VesselPolicy& policy,
    double extent_x, double extent_y, RandomStream& rng, double max_half_length = 0.0) {
  std::vector<VesselSegment> out;
  const std::uint64_t n = rng.poisson(policy.density_per_m2 * extent_x * extent_y);
  if (n == 0) return out;
  const double zlo = band.lo + policy.radius;
  const double zhi = band.hi - policy.radius;
  if (zhi < zlo) {
    warn(layer_id + ": vessel band thinner than the vessel diameter; no vessels placed");
    return out;
  }
  const double cap = max_half_length > 0.0 ? max_half_length : std::hypot(extent_x, extent_y);
  for (std::uint64_t v = 0; v < n; ++v) {
    const double x = rng.uniform(0.0, extent_x);
    const double y = rng.uniform(0.0, extent_y);
    const double z = rng.uniform(zlo, zhi);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const Vec3 axis{std::cos(phi), std::sin(phi), 0.0};
    // Slab clipping of x + t*ax in [0, X], y + t*ay in [0, Y].
    double t0 = -cap, t1 = cap;
    auto clip = [&](double p, double a, double extent) {
      if (std::abs(a) < 1e-15) return;
      double ta = (0.0 - p) / a, tb = (extent - p) / a;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    };
    clip(x, axis.x, extent_x);
    clip(y, axis.y, extent_y);
    if (!(t1 > t0)) continue;
    const double mid = 0.5 * (t0 + t1);
    out.push_back({Vec3{x, y, z} + mid * axis, axis, 0.5 * (t1 - t0), policy.radius,
                   policy.vessel_class, layer_id});
  }
  return out;
}

// Hard-sphere placement of vessel-bound cells inside vessel lumens. Targets
// round(rho * total lumen volume); a vessel is picked with probability
// proportional to its lumen volume and a centre drawn uniformly from the part
// of the lumen where the sphere clears the wall. Candidates must also stay in
// the grid box and clear every existing sphere.
inline PlacementResult fill_vessels_with_rbc(std::span<const VesselSegment> vessels,
                                             const CellSpecies& rbc, OverlapIndex& index,
                                             RandomStream& rng, const GridConfig& grid,
                                             int attempts_per_target = 30) {
  PlacementResult out;
  const double r = rbc.radius();
  std::vector<std::size_t> usable;
  std::vector<double> cumulative;
  double lumen = 0.0;
  for (std::size_t i = 0; i < vessels.size(); ++i) {
    const auto& v = vessels[i];
    if (v.radius < r || v.half_length <= r) {
      warn("vessel " + std::to_string(i) + " in " + v.layer + " is too narrow or short for " +
           rbc.id + "; skipped");
      continue;
    }
    usable.push_back(i);
    lumen += v.lumen_volume();
    cumulative.push_back(lumen);
  }
  out.region_volume = lumen;
  if (usable.empty()) return out;
  const double expected = rbc.number_density * lumen;
  out.target = expected > 0.0 ? static_cast<std::size_t>(std::llround(expected)) : 0;

  const std::size_t budget = static_cast<std::size_t>(attempts_per_target) * out.target;
  while (out.placements.size() < out.target && out.attempts < budget) {
    ++out.attempts;
    const double pick = rng.uniform(0.0, lumen);
    const auto k = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
    const auto& v = vessels[usable[std::min(k, usable.size() - 1)]];
    const double t = rng.uniform(-(v.half_length - r), v.half_length - r);
    const double rho = (v.radius - r) * std::sqrt(rng.uniform());
    const double ang = rng.uniform(0.0, 2.0 * kPi);
    // Orthonormal frame around the axis.
    const Vec3 helper = std::abs(v.axis.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1{v.axis.y * helper.z - v.axis.z * helper.y, v.axis.z * helper.x - v.axis.x * helper.z,
            v.axis.x * helper.y - v.axis.y * helper.x};
    const double n1 = std::sqrt(norm2(e1));
    e1 = (1.0 / n1) * e1;
    const Vec3 e2{v.axis.y * e1.z - v.axis.z * e1.y, v.axis.z * e1.x - v.axis.x * e1.z,
                  v.axis.x * e1.y - v.axis.y * e1.x};
    Vec3 c = v.center + t * v.axis;
    if (rho > 0.0) c = c + (rho * std::cos(ang)) * e1 + (rho * std::sin(ang)) * e2;
    if (c.x < r || c.x > grid.extent_x - r || c.y < r || c.y > grid.extent_y - r || c.z < r ||
        c.z > grid.extent_z - r)
      continue;
    if (index.overlaps(c, r)) continue;
    CellPlacement p{rbc.id, c, r};
    index.add(p);
    out.placements.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rasterization

// Labels every voxel by its centre: inside a sphere -> that species (nearest
// centre on ties), else inside a vessel -> lumen, else the ECM of the layer
// containing the centre.
inline std::vector<std::uint16_t> rasterize_labels(std::span<const CellPlacement> placements,
                                                   std::span<const VesselSegment> vessels,
                                                   const GridConfig& grid, const Catalog& catalog,
                                                   const std::vector<LabelInfo>& labels) {
  grid.validate();
  const std::size_t nx = grid.nx(), ny = grid.ny(), nz = grid.nz();
  const double dx = grid.dx;
  std::vector<std::uint16_t> out(nx * ny * nz);
  auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return i + nx * (j + ny * k); };
  auto centre = [&](std::size_t i) { return (static_cast<double>(i) + 0.5) * dx; };

  for (std::size_t k = 0; k < nz; ++k) {
    const auto layer = static_cast<std::uint16_t>(catalog.layer_index_at(centre(k)));
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(idx(0, 0, k)),
              out.begin() + static_cast<std::ptrdiff_t>(idx(0, 0, k) + nx * ny), layer);
  }

  // Voxel index range whose centres may fall in [lo, hi].
  auto span_of = [&](double lo, double hi, std::size_t n) {
    const double a = std::ceil(lo / dx - 0.5);
    const double b = std::floor(hi / dx - 0.5);
    const long ia = std::max(0L, static_cast<long>(a));
    const long ib = std::min(static_cast<long>(n) - 1, static_cast<long>(b));
    return std::pair<long, long>{ia, ib};
  };

  const auto lumen_label = static_cast<std::uint16_t>(catalog.layers().size());
  for (const auto& v : vessels) {
    const Vec3 tip = v.half_length * v.axis;
    const double ex = std::abs(tip.x) + v.radius, ey = std::abs(tip.y) + v.radius,
                 ez = std::abs(tip.z) + v.radius;
    auto [i0, i1] = span_of(v.center.x - ex, v.center.x + ex, nx);
    auto [j0, j1] = span_of(v.center.y - ey, v.center.y + ey, ny);
    auto [k0, k1] = span_of(v.center.z - ez, v.center.z + ez, nz);
    for (long k = k0; k <= k1; ++k)
      for (long j = j0; j <= j1; ++j)
        for (long i = i0; i <= i1; ++i) {
          const Vec3 p{centre(static_cast<std::size_t>(i)), centre(static_cast<std::size_t>(j)),
                       centre(static_cast<std::size_t>(k))};
          if (v.contains(p)) out[idx(i, j, k)] = lumen_label;
        }
  }

  auto label_of_species = [&](const std::string& id) -> std::uint16_t {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i].kind == LabelKind::cell && labels[i].name == id)
        return static_cast<std::uint16_t>(i);
    throw CatalogError("no label for species '" + id + "'");
  };
  std::vector<double> best(out.size(), std::numeric_limits<double>::infinity());
  for (const auto& p : placements) {
    const std::uint16_t label = label_of_species(p.species);
    const double r = p.radius;
    auto [i0, i1] = span_of(p.center.x - r, p.center.x + r, nx);
    auto [j0, j1] = span_of(p.center.y - r, p.center.y + r, ny);
    auto [k0, k1] = span_of(p.center.z - r, p.center.z + r, nz);
    for (long k = k0; k <= k1; ++k)
      for (long j = j0; j <= j1; ++j)
        for (long i = i0; i <= i1; ++i) {
          const Vec3 q{centre(static_cast<std::size_t>(i)), centre(static_cast<std::size_t>(j)),
                       centre(static_cast<std::size_t>(k))};
          const double d2 = norm2(q - p.center);
          if (d2 > r * r) continue;
          const auto at = idx(i, j, k);
          if (d2 < best[at]) {
            best[at] = d2;
            out[at] = label;
          }
        }
  }
  return out;
}

inline ScenarioRealization rasterize(std::vector<CellPlacement> placements,
                                     std::vector<VesselSegment> vessels, const GridConfig& grid,
                                     const Catalog& catalog) {
  ScenarioRealization real;
  real.grid = grid;
  real.seed = grid.seed;
  real.labels = make_label_table(catalog);
  real.voxel_labels = rasterize_labels(placements, vessels, grid, catalog, real.labels);
  real.placements = std::move(placements);
  real.vessels = std::move(vessels);
  real.vessel_bands.assign(catalog.layers().size(), std::nullopt);
  for (const auto& l : catalog.layers()) real.layer_ids.push_back(l.id);
  real.slice_layer.resize(grid.nz());
  for (std::size_t k = 0; k < grid.nz(); ++k)
    real.slice_layer[k] = catalog.layer_index_at((static_cast<double>(k) + 0.5) * grid.dx);
  return real;
}

// ---------------------------------------------------------------------------
// Full pipeline

inline ScenarioRealization generate_scenario(const GridConfig& grid, const Catalog& catalog,
                                             const ScenarioOptions& options = {}) {
  grid.validate();
  if (grid.extent_z > catalog.total_depth() * (1.0 + 1e-12))
    throw DomainError("grid depth " + format_number(grid.extent_z) +
                      " m exceeds the deepest catalog layer (" +
                      format_number(catalog.total_depth()) + " m)");
  if (options.attempts_per_target < 1) throw DomainError("attempts_per_target must be >= 1");
  if (!(options.capillary_band_fraction > 0.0 && options.capillary_band_fraction <= 1.0))
    throw DomainError("capillary band fraction must lie in (0, 1]");

  const Interval box_depth{0.0, grid.extent_z};
  auto clip = [&](Interval in) {
    return Interval{std::max(in.lo, box_depth.lo), std::min(in.hi, box_depth.hi)};
  };

  std::vector<CellPlacement> placements;
  std::vector<SpeciesStats> stats;
  OverlapIndex index;

  for (std::size_t li = 0; li < catalog.layers().size(); ++li) {
    const auto& layer = catalog.layers()[li];
    std::vector<const CellSpecies*> members;
    for (const auto& s : catalog.cells())
      if (catalog.layer_index_of(s) == li) members.push_back(&s);
    std::stable_sort(members.begin(), members.end(), [](const auto* a, const auto* b) {
      return a->number_density > b->number_density;
    });
    for (const auto* s : members) {
      const PlacementVolume vol{grid.extent_x, grid.extent_y, clip(*s->depth_interval)};
      auto rng = RandomStream::derive(grid.seed, {tag_of("cells"), tag_of(layer.id), tag_of(s->id)});
      auto res = place_cells_disc_poisson(vol, *s, index, rng, grid.extent_z,
                                          options.attempts_per_target);
      if (res.placements.size() < res.target)
        warn_once(s->id + ": placed " + std::to_string(res.placements.size()) + " of " +
                  std::to_string(res.target) + " targeted cells (attempt cap reached)");
      stats.push_back({s->id, layer.id, res.target, res.placements.size(), res.attempts,
                       vol.volume(), s->number_density});
      placements.insert(placements.end(), std::make_move_iterator(res.placements.begin()),
                        std::make_move_iterator(res.placements.end()));
    }
  }

  std::vector<VesselSegment> vessels;
  std::vector<std::optional<Interval>> bands(catalog.layers().size());
  for (std::size_t li = 0; li < catalog.layers().size(); ++li) {
    const auto& layer = catalog.layers()[li];
    if (!layer.vessels) continue;
    const Interval band = clip(vessel_band(layer.depth, layer.vessels->vessel_class,
                                           options.capillary_band_fraction));
    if (!(band.hi > band.lo)) continue;
    bands[li] = band;
    auto rng = RandomStream::derive(grid.seed, {tag_of("vessels"), tag_of(layer.id)});
    auto v = place_vessels_line_poisson(layer.id, band, *layer.vessels, grid.extent_x,
                                        grid.extent_y, rng, options.vessel_half_length);
    vessels.insert(vessels.end(), v.begin(), v.end());
  }

  for (const auto& s : catalog.cells()) {
    if (!s.vessel_bound()) continue;
    auto rng = RandomStream::derive(grid.seed, {tag_of("vessel_cells"), tag_of(s.id)});
    auto res = fill_vessels_with_rbc(vessels, s, index, rng, grid, options.attempts_per_target);
    if (res.placements.size() < res.target)
      warn_once(s.id + ": placed " + std::to_string(res.placements.size()) + " of " +
                std::to_string(res.target) + " targeted cells in vessels");
    stats.push_back({s.id, "", res.target, res.placements.size(), res.attempts,
                     res.region_volume, s.number_density});
    placements.insert(placements.end(), std::make_move_iterator(res.placements.begin()),
                      std::make_move_iterator(res.placements.end()));
  }

  auto real = rasterize(std::move(placements), std::move(vessels), grid, catalog);
  real.stats = std::move(stats);
  real.vessel_bands = std::move(bands);
  return real;
}

// ---------------------------------------------------------------------------
// Consistency checks (used by `scenario --verify`)

// Brute-force O(N^2) overlap scan plus containment checks. Returns one line
// per violation.
inline std::vector<std::string> verify_realization(const ScenarioRealization& real,
                                                   const Catalog& catalog) {
  std::vector<std::string> issues;
  const auto& ps = real.placements;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const double min_d = ps[i].radius + ps[j].radius;
      if (norm2(ps[i].center - ps[j].center) < min_d * min_d * (1.0 - 1e-12))
        issues.push_back("overlap between placement " + std::to_string(i) + " (" +
                         ps[i].species + ") and " + std::to_string(j) + " (" + ps[j].species +
                         ")");
    }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& s = catalog.cell_species(ps[i].species);
    if (s.depth_interval) {
      if (!s.depth_interval->contains(ps[i].center.z))
        issues.push_back("placement " + std::to_string(i) + " (" + s.id +
                         ") centre outside its depth interval");
    } else {
      const bool inside = std::any_of(real.vessels.begin(), real.vessels.end(), [&](const auto& v) {
        return v.contains(ps[i].center, ps[i].radius * (1.0 - 1e-9));
      });
      if (!inside)
        issues.push_back("placement " + std::to_string(i) + " (" + s.id + ") not inside a vessel");
    }
  }
  if (real.voxel_labels.size() != real.grid.voxel_count())
    issues.push_back("voxel label array does not match the grid");
  for (auto l : real.voxel_labels)
    if (l >= real.labels.size()) {
      issues.push_back("voxel label out of range");
      break;
    }
  return issues;
}

// ---------------------------------------------------------------------------
// Exports

inline void write_placements_csv(std::ostream& out, const ScenarioRealization& real) {
  out << "species,x_um,y_um,z_um,radius_um\n";
  for (const auto& p : real.placements)
    out << p.species << ',' << format_number(p.center.x / kMicron) << ','
        << format_number(p.center.y / kMicron) << ',' << format_number(p.center.z / kMicron)
        << ',' << format_number(p.radius / kMicron) << '\n';
}

inline void write_vessels_csv(std::ostream& out, const ScenarioRealization& real) {
  out << "class,x_um,y_um,z_um,axis_x,axis_y,axis_z,half_len_um,radius_um\n";
  for (const auto& v : real.vessels)
    out << vessel_class_name(v.vessel_class) << ',' << format_number(v.center.x / kMicron) << ','
        << format_number(v.center.y / kMicron) << ',' << format_number(v.center.z / kMicron)
        << ',' << format_number(v.axis.x) << ',' << format_number(v.axis.y) << ','
        << format_number(v.axis.z) << ',' << format_number(v.half_length / kMicron) << ','
        << format_number(v.radius / kMicron) << '\n';
}

// Flat little-endian uint16 labels, x fastest, then y, then z.
inline void write_voxel_labels(std::ostream& out, const ScenarioRealization& real) {
  std::vector<char> bytes(real.voxel_labels.size() * 2);
  for (std::size_t i = 0; i < real.voxel_labels.size(); ++i) {
    bytes[2 * i] = static_cast<char>(real.voxel_labels[i] & 0xFF);
    bytes[2 * i + 1] = static_cast<char>(real.voxel_labels[i] >> 8);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline void write_voxel_header(std::ostream& out, const ScenarioRealization& real,
                               std::string_view data_file) {
  out << "# dermawave voxel labels\n";
  out << "format = uint16 little-endian, x-fastest\n";
  out << "data_file = " << data_file << "\n";
  out << "dims = " << real.grid.nx() << " " << real.grid.ny() << " " << real.grid.nz() << "\n";
  out << "dx_um = " << format_number(real.grid.dx / kMicron) << "\n";
  out << "seed = " << real.seed << "\n";
  out << "labels = " << real.labels.size() << "\n";
  for (std::size_t i = 0; i < real.labels.size(); ++i)
    out << "label " << i << " = " << real.labels[i].name << "\n";
}

}  // namespace dermawave
