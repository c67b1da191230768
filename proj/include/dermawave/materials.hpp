#pragma once

// Parameter catalog: Debye parameters of the pure components, cell species,
// and skin layers. The catalog is held in the same line-oriented form it is
// read from (file units, optional min..max source ranges) and the typed SI
// view is derived from it, so dump -> load is an exact identity.
//
// File format (schema_version = 1):
//
//   schema_version = 1
//   [component.<id>]   eps_inf, delta_eps_{alpha,beta,gamma}, tau_{alpha,beta,gamma}_ps
//   [cell.<id>]        water_frac, protein_frac, lipid_frac, diameter_um,
//                      density_per_mm3, z_min_um, z_max_um
//   [layer.<id>]       z_min_um, z_max_um, water_frac, protein_frac, lipid_frac,
//                      vessel_radius_um, vessel_density_per_mm2
//
// A value is either a number or a range `lo..hi`, which resolves to its
// midpoint. `#` starts a comment; a `# note: ...` line inside a section is
// kept as that section's note. Water is always the host of a mixture and
// takes the residual 1 - protein - lipid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dermawave/constants.hpp"
#include "dermawave/dielectrics.hpp"
#include "dermawave/errors.hpp"
#include "dermawave/format.hpp"

namespace dermawave {

inline constexpr int kCatalogSchemaVersion = 1;

// Closed depth interval in metres.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double z) const { return z >= lo && z <= hi; }
  bool inside(const Interval& outer, double tol = 1e-12) const {
    return lo >= outer.lo - tol && hi <= outer.hi + tol;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Raw catalog value in file units.
struct FieldValue {
  double value = 0.0;
  std::optional<std::pair<double, double>> range;

  static FieldValue scalar(double v) { return {v, std::nullopt}; }
  static FieldValue from_range(double lo, double hi) { return {0.5 * (lo + hi), std::pair{lo, hi}}; }

  friend bool operator==(const FieldValue&, const FieldValue&) = default;
};

struct CatalogSection {
  std::string kind;  // component | cell | layer
  std::string id;
  std::string note;
  std::vector<std::pair<std::string, FieldValue>> fields;

  const FieldValue* find(std::string_view key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }

  friend bool operator==(const CatalogSection&, const CatalogSection&) = default;
};

struct ComponentRecord {
  ComponentId id;
  DebyeParameters params;
  // Source ranges keyed by file key, e.g. "tau_alpha_ps" -> {1, 100}.
  std::map<std::string, std::pair<double, double>> source_range;
};

enum class VesselClass { capillary, deep };

inline const char* vessel_class_name(VesselClass c) {
  return c == VesselClass::capillary ? "capillary" : "deep";
}

struct VesselPolicy {
  VesselClass vessel_class = VesselClass::capillary;
  double density_per_m2 = 0.0;
  double radius = 0.0;  // m
};

struct CellSpecies {
  std::string id;
  MixtureComposition composition;
  double diameter = 0.0;        // m
  double number_density = 0.0;  // cells / m^3
  // Absent for vessel-bound species (red blood cells): they are placed inside
  // vessel lumens instead of a depth band.
  std::optional<Interval> depth_interval;
  std::string note;

  double radius() const { return 0.5 * diameter; }
  bool vessel_bound() const { return !depth_interval.has_value(); }
};

struct LayerSpec {
  std::string id;
  Interval depth;
  MixtureComposition ecm;
  std::optional<VesselPolicy> vessels;
};

namespace detail {

inline const std::vector<std::string>& keys_for(std::string_view kind) {
  static const std::vector<std::string> component{
      "eps_inf",      "delta_eps_alpha", "delta_eps_beta", "delta_eps_gamma",
      "tau_alpha_ps", "tau_beta_ps",     "tau_gamma_ps"};
  static const std::vector<std::string> cell{"water_frac",  "protein_frac",    "lipid_frac",
                                             "diameter_um", "density_per_mm3", "z_min_um",
                                             "z_max_um"};
  static const std::vector<std::string> layer{"z_min_um",   "z_max_um",         "water_frac",
                                              "protein_frac", "lipid_frac",     "vessel_radius_um",
                                              "vessel_density_per_mm2"};
  static const std::vector<std::string> none;
  if (kind == "component") return component;
  if (kind == "cell") return cell;
  if (kind == "layer") return layer;
  return none;
}

}  // namespace detail

class Catalog {
 public:
  // Builds and validates. Throws CatalogError listing every violation.
  static Catalog from_sections(std::vector<CatalogSection> sections) {
    Catalog c;
    c.sections_ = std::move(sections);
    std::vector<std::string> issues;
    c.derive(issues);
    if (!issues.empty()) throw CatalogError("catalog validation failed", std::move(issues));
    return c;
  }

  const std::vector<CatalogSection>& sections() const { return sections_; }
  const std::vector<ComponentRecord>& components() const { return components_; }
  const std::vector<CellSpecies>& cells() const { return cells_; }
  const std::vector<LayerSpec>& layers() const { return layers_; }

  const ComponentRecord& component(const ComponentId& id) const {
    for (const auto& c : components_)
      if (c.id == id) return c;
    throw CatalogError("unknown component '" + id + "'");
  }

  const DebyeParameters& component_params(const ComponentId& id) const {
    return component(id).params;
  }

  // Lookup hook for mixture_permittivity.
  const DebyeParameters& operator()(const ComponentId& id) const { return component_params(id); }

  bool has_component(std::string_view id) const {
    return std::any_of(components_.begin(), components_.end(),
                       [&](const auto& c) { return c.id == id; });
  }
  bool has_cell(std::string_view id) const {
    return std::any_of(cells_.begin(), cells_.end(), [&](const auto& c) { return c.id == id; });
  }
  bool has_layer(std::string_view id) const {
    return std::any_of(layers_.begin(), layers_.end(), [&](const auto& l) { return l.id == id; });
  }

  const CellSpecies& cell_species(std::string_view id) const {
    for (const auto& c : cells_)
      if (c.id == id) return c;
    throw CatalogError("unknown cell species '" + std::string(id) + "'");
  }

  const LayerSpec& layer(std::string_view id) const {
    for (const auto& l : layers_)
      if (l.id == id) return l;
    throw CatalogError("unknown layer '" + std::string(id) + "'");
  }

  const MixtureComposition& ecm_composition(std::string_view layer_id) const {
    return layer(layer_id).ecm;
  }

  // Index of the layer whose interval holds the species' depth interval, or
  // nullopt for vessel-bound species.
  std::optional<std::size_t> layer_index_of(const CellSpecies& s) const {
    if (!s.depth_interval) return std::nullopt;
    for (std::size_t i = 0; i < layers_.size(); ++i)
      if (s.depth_interval->inside(layers_[i].depth)) return i;
    return std::nullopt;
  }

  // Layer containing depth z; the lower layer wins on a shared boundary.
  std::size_t layer_index_at(double z) const {
    for (std::size_t i = layers_.size(); i-- > 0;)
      if (z >= layers_[i].depth.lo) return i;
    return 0;
  }

  double total_depth() const { return layers_.empty() ? 0.0 : layers_.back().depth.hi; }

  // Copy with one raw field replaced (or added), revalidated.
  Catalog with_field(std::string_view kind, std::string_view id, std::string_view key,
                     FieldValue value) const {
    auto sections = sections_;
    for (auto& s : sections) {
      if (s.kind != kind || s.id != id) continue;
      for (auto& [k, v] : s.fields) {
        if (k == key) {
          v = value;
          return from_sections(std::move(sections));
        }
      }
      s.fields.emplace_back(std::string(key), value);
      return from_sections(std::move(sections));
    }
    throw CatalogError("no section [" + std::string(kind) + "." + std::string(id) + "]");
  }

  friend bool operator==(const Catalog& a, const Catalog& b) { return a.sections_ == b.sections_; }

 private:
  void derive(std::vector<std::string>& issues);
  static std::optional<MixtureComposition> derive_composition(const CatalogSection& s,
                                                              const std::string& prefix,
                                                              std::vector<std::string>& issues);

  std::vector<CatalogSection> sections_;
  std::vector<ComponentRecord> components_;
  std::vector<CellSpecies> cells_;
  std::vector<LayerSpec> layers_;
};

inline std::optional<MixtureComposition> Catalog::derive_composition(
    const CatalogSection& s, const std::string& prefix, std::vector<std::string>& issues) {
  const auto* protein = s.find("protein_frac");
  const auto* lipid = s.find("lipid_frac");
  const auto* water = s.find("water_frac");
  if (!protein && !lipid && !water) {
    issues.push_back(prefix + ": composition missing (protein_frac / lipid_frac)");
    return std::nullopt;
  }
  MixtureComposition comp;
  comp.host = "water";
  comp.inclusions.push_back({"protein", protein ? protein->value : 0.0});
  comp.inclusions.push_back({"lipid", lipid ? lipid->value : 0.0});
  auto v = comp.violations(prefix);
  if (!v.empty()) {
    issues.insert(issues.end(), v.begin(), v.end());
    return std::nullopt;
  }
  if (water) {
    const double residual = comp.host_fraction();
    const double lo = water->range ? water->range->first : water->value;
    const double hi = water->range ? water->range->second : water->value;
    constexpr double tol = 1e-9;
    if (residual < lo - tol || residual > hi + tol)
      issues.push_back(prefix + ".water_frac: residual water fraction " + format_number(residual) +
                       " is outside the declared " + format_number(lo) + ".." +
                       format_number(hi));
  }
  return comp;
}

inline void Catalog::derive(std::vector<std::string>& issues) {
  components_.clear();
  cells_.clear();
  layers_.clear();

  // Structural checks first.
  {
    std::map<std::pair<std::string, std::string>, int> seen;
    for (const auto& s : sections_) {
      if (detail::keys_for(s.kind).empty()) {
        issues.push_back("[" + s.kind + "." + s.id + "]: unknown section kind '" + s.kind + "'");
        continue;
      }
      if (++seen[{s.kind, s.id}] == 2)
        issues.push_back("[" + s.kind + "." + s.id + "]: duplicate section");
      const auto& allowed = detail::keys_for(s.kind);
      for (const auto& [k, v] : s.fields) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
          issues.push_back(s.id + "." + k + ": unknown key for a " + s.kind + " section");
        if (v.range && v.range->first > v.range->second)
          issues.push_back(s.id + "." + k + ": range lower bound exceeds upper bound");
        if (!std::isfinite(v.value)) issues.push_back(s.id + "." + k + ": value is not finite");
      }
    }
  }

  for (const auto& s : sections_) {
    if (s.kind != "component") continue;
    ComponentRecord rec;
    rec.id = s.id;
    const auto* eps_inf = s.find("eps_inf");
    if (!eps_inf) {
      issues.push_back(s.id + ".eps_inf: missing");
    } else {
      rec.params.eps_inf = eps_inf->value;
    }
    for (auto r : kRelaxations) {
      const std::string name = relaxation_name(r);
      const auto* delta = s.find("delta_eps_" + name);
      const auto* tau = s.find("tau_" + name + "_ps");
      if (tau && !delta) {
        issues.push_back(s.id + ".delta_eps_" + name + ": missing while tau_" + name +
                         "_ps is given");
      } else if (!tau && delta && delta->value != 0.0) {
        issues.push_back(s.id + ".tau_" + name + ": missing for a non-zero delta_eps_" + name);
      } else if (tau && delta) {
        rec.params.branch(r) = DebyeBranch{delta->value, tau->value * kPicosecond};
      }
    }
    for (const auto& [k, v] : s.fields)
      if (v.range) rec.source_range[k] = *v.range;
    auto v = rec.params.violations(s.id);
    issues.insert(issues.end(), v.begin(), v.end());
    components_.push_back(std::move(rec));
  }
  for (const char* required : {"water", "protein", "lipid"})
    if (!has_component(required))
      issues.push_back(std::string("[component.") + required + "]: missing");

  for (const auto& s : sections_) {
    if (s.kind != "layer") continue;
    LayerSpec layer;
    layer.id = s.id;
    const auto* zmin = s.find("z_min_um");
    const auto* zmax = s.find("z_max_um");
    if (!zmin || !zmax) {
      issues.push_back(s.id + ": z_min_um and z_max_um are required for a layer");
    } else {
      layer.depth = {zmin->value * kMicron, zmax->value * kMicron};
      if (!(layer.depth.lo < layer.depth.hi))
        issues.push_back(s.id + ".z_min_um: must be below z_max_um");
    }
    if (auto comp = derive_composition(s, s.id, issues)) layer.ecm = *comp;
    const auto* vr = s.find("vessel_radius_um");
    const auto* vd = s.find("vessel_density_per_mm2");
    if (vr || vd) {
      if (!vr || !vd) {
        issues.push_back(s.id + ": vessel_radius_um and vessel_density_per_mm2 go together");
      } else {
        VesselPolicy p;
        p.radius = vr->value * kMicron;
        p.density_per_m2 = vd->value / kSquareMillimetre;
        if (!(p.radius > 0.0)) issues.push_back(s.id + ".vessel_radius_um: must be > 0");
        if (!(p.density_per_m2 >= 0.0))
          issues.push_back(s.id + ".vessel_density_per_mm2: must be >= 0");
        layer.vessels = p;
      }
    }
    layers_.push_back(std::move(layer));
  }
  if (layers_.empty()) issues.push_back("catalog defines no [layer.*] sections");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const double expected_lo = i == 0 ? 0.0 : layers_[i - 1].depth.hi;
    if (std::abs(layers_[i].depth.lo - expected_lo) > 1e-12)
      issues.push_back(layers_[i].id + ".z_min_um: layers must tile the depth range from 0 "
                                       "without gaps or overlap, in file order");
  }
  // The shallowest vascularised layer carries the superficial capillaries;
  // deeper ones carry larger vessels spanning their full depth.
  bool capillaries_assigned = false;
  for (auto& l : layers_) {
    if (!l.vessels) continue;
    l.vessels->vessel_class = capillaries_assigned ? VesselClass::deep : VesselClass::capillary;
    capillaries_assigned = true;
  }

  for (const auto& s : sections_) {
    if (s.kind != "cell") continue;
    CellSpecies cell;
    cell.id = s.id;
    cell.note = s.note;
    if (auto comp = derive_composition(s, s.id, issues)) cell.composition = *comp;
    const auto* d = s.find("diameter_um");
    const auto* rho = s.find("density_per_mm3");
    if (!d) issues.push_back(s.id + ".diameter_um: missing");
    if (!rho) issues.push_back(s.id + ".density_per_mm3: missing");
    if (d) {
      cell.diameter = d->value * kMicron;
      if (!(cell.diameter > 0.0)) issues.push_back(s.id + ".diameter_um: must be > 0");
    }
    if (rho) {
      cell.number_density = rho->value / kCubicMillimetre;
      if (!(cell.number_density >= 0.0))
        issues.push_back(s.id + ".density_per_mm3: must be >= 0");
    }
    const auto* zmin = s.find("z_min_um");
    const auto* zmax = s.find("z_max_um");
    if (zmin && zmax) {
      cell.depth_interval = Interval{zmin->value * kMicron, zmax->value * kMicron};
      if (!(cell.depth_interval->lo < cell.depth_interval->hi))
        issues.push_back(s.id + ".z_min_um: must be below z_max_um");
    } else if (zmin || zmax) {
      issues.push_back(s.id + ": z_min_um and z_max_um go together");
    }
    cells_.push_back(std::move(cell));
  }
  for (const auto& c : cells_) {
    if (!c.depth_interval) continue;
    const auto n = std::count_if(layers_.begin(), layers_.end(),
                                 [&](const LayerSpec& l) { return c.depth_interval->inside(l.depth); });
    if (n != 1)
      issues.push_back(c.id + ": depth interval must lie inside exactly one layer");
  }
}

// ---------------------------------------------------------------------------
// Text form

inline Catalog parse_catalog(std::string_view text, std::string_view origin = "<catalog>") {
  std::vector<std::string> errors;
  std::vector<CatalogSection> sections;
  std::optional<int> version;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto where = [&] { return std::string(origin) + ":" + std::to_string(lineno) + ": "; };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (!sections.empty() && body.rfind("note:", 0) == 0) {
        auto& note = sections.back().note;
        if (!note.empty()) note += ' ';
        note += trim(body.substr(5));
      }
      continue;
    }
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where() + "unterminated section header");
        continue;
      }
      auto name = trim(line.substr(1, line.size() - 2));
      auto dot = name.find('.');
      if (dot == std::string_view::npos || dot == 0 || dot + 1 == name.size()) {
        errors.push_back(where() + "section header must be [kind.id]");
        continue;
      }
      if (!version) errors.push_back(where() + "schema_version must precede the first section");
      CatalogSection s;
      s.kind = std::string(name.substr(0, dot));
      s.id = std::string(name.substr(dot + 1));
      if (detail::keys_for(s.kind).empty())
        errors.push_back(where() + "unknown section kind '" + s.kind + "'");
      sections.push_back(std::move(s));
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where() + "expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));

    if (sections.empty()) {
      if (key != "schema_version") {
        errors.push_back(where() + "key '" + key + "' outside of any section");
        continue;
      }
      auto v = parse_double(value);
      if (!v || *v != std::floor(*v)) {
        errors.push_back(where() + "schema_version must be an integer");
        continue;
      }
      version = static_cast<int>(*v);
      if (*version != kCatalogSchemaVersion)
        errors.push_back(where() + "unsupported schema_version " + std::to_string(*version) +
                         " (expected " + std::to_string(kCatalogSchemaVersion) + ")");
      continue;
    }

    auto& section = sections.back();
    const auto& allowed = detail::keys_for(section.kind);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      errors.push_back(where() + "unknown key '" + key + "' in [" + section.kind + "." +
                       section.id + "]");
      continue;
    }
    if (section.find(key)) {
      errors.push_back(where() + "duplicate key '" + key + "'");
      continue;
    }
    FieldValue fv;
    if (auto sep = value.find(".."); sep != std::string_view::npos) {
      auto lo = parse_double(trim(value.substr(0, sep)));
      auto hi = parse_double(trim(value.substr(sep + 2)));
      if (!lo || !hi) {
        errors.push_back(where() + section.id + "." + key + ": cannot parse range '" +
                         std::string(value) + "'");
        continue;
      }
      fv = FieldValue::from_range(*lo, *hi);
    } else {
      auto v = parse_double(value);
      if (!v) {
        errors.push_back(where() + section.id + "." + key + ": cannot parse number '" +
                         std::string(value) + "'");
        continue;
      }
      fv = FieldValue::scalar(*v);
    }
    section.fields.emplace_back(key, fv);
  }
  if (!version && errors.empty()) errors.push_back(std::string(origin) + ": missing schema_version");
  if (!errors.empty()) throw CatalogError("cannot parse catalog", std::move(errors));
  return Catalog::from_sections(std::move(sections));
}

inline std::string dump_catalog(const Catalog& catalog) {
  std::ostringstream out;
  out << "# dermawave material catalog\n";
  out << "# Ranges lo..hi resolve to their midpoint. Water takes the residual of\n";
  out << "# protein and lipid and must fall inside water_frac when given.\n";
  out << "schema_version = " << kCatalogSchemaVersion << "\n";
  for (const auto& s : catalog.sections()) {
    out << "\n[" << s.kind << "." << s.id << "]\n";
    if (!s.note.empty()) out << "# note: " << s.note << "\n";
    for (const auto& [k, v] : s.fields) {
      out << k << " = ";
      if (v.range)
        out << format_exact(v.range->first) << ".." << format_exact(v.range->second);
      else
        out << format_exact(v.value);
      out << "\n";
    }
  }
  return out.str();
}

inline Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot open catalog file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), path.string());
}

// FNV-1a over the canonical dump.
inline std::uint64_t catalog_hash(const Catalog& catalog) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : dump_catalog(catalog)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Embedded defaults: range midpoints of the published relaxation parameters,
// cell compositions, cell geometry/densities, and layer ECM compositions.
inline constexpr std::string_view kBuiltinCatalogText = R"(schema_version = 1

[component.water]
eps_inf = 1.8
delta_eps_alpha = 78
tau_alpha_ps = 8.3

[component.protein]
eps_inf = 2.0..2.5
delta_eps_alpha = 10..50
delta_eps_beta = 1..5
delta_eps_gamma = 0.5..2.0
tau_alpha_ps = 1..100
tau_beta_ps = 0.1..10
tau_gamma_ps = 0.01..0.1

[component.lipid]
eps_inf = 2.0..2.2
delta_eps_alpha = 0
delta_eps_beta = 1..3
delta_eps_gamma = 0.2..1.0
tau_beta_ps = 0.1..1.0
tau_gamma_ps = 0.01..0.05

[layer.epidermis]
z_min_um = 0
z_max_um = 130
water_frac = 0.65..0.70
protein_frac = 0.25..0.30
lipid_frac = 0.05

[layer.dermis]
z_min_um = 130
z_max_um = 3000
water_frac = 0.65..0.75
protein_frac = 0.20..0.30
lipid_frac = 0.02
vessel_radius_um = 4
vessel_density_per_mm2 = 200

[layer.hypodermis]
z_min_um = 3000
z_max_um = 5000
water_frac = 0.20..0.30
protein_frac = 0.05..0.10
lipid_frac = 0.60..0.75
vessel_radius_um = 15
vessel_density_per_mm2 = 100

[cell.corneocytes]
water_frac = 0.10..0.15
protein_frac = 0.70..0.80
lipid_frac = 0.10..0.15
diameter_um = 23
density_per_mm3 = 1.0e7
z_min_um = 0
z_max_um = 20

[cell.granular_keratinocytes]
water_frac = 0.70..0.75
protein_frac = 0.20..0.25
lipid_frac = 0.03..0.05
diameter_um = 15
density_per_mm3 = 0.8e6
z_min_um = 20
z_max_um = 50

[cell.spinous_keratinocytes]
water_frac = 0.75..0.80
protein_frac = 0.15..0.20
lipid_frac = 0.02..0.03
diameter_um = 15
density_per_mm3 = 0.7e6
z_min_um = 50
z_max_um = 120

[cell.melanocytes]
water_frac = 0.75..0.80
protein_frac = 0.15..0.20
lipid_frac = 0.02..0.03
diameter_um = 14
density_per_mm3 = 2.0e4
z_min_um = 50
z_max_um = 120

[cell.basal_keratinocytes]
water_frac = 0.75..0.80
protein_frac = 0.15..0.20
lipid_frac = 0.02..0.03
diameter_um = 8
density_per_mm3 = 1.0e6
z_min_um = 120
z_max_um = 130

[cell.langerhans_cells]
water_frac = 0.70..0.75
protein_frac = 0.20..0.25
lipid_frac = 0.03..0.05
diameter_um = 10
density_per_mm3 = 3.0e4
z_min_um = 50
z_max_um = 120

[cell.merkel_cells]
# note: assumption - no published composition; melanocyte composition reused.
water_frac = 0.75..0.80
protein_frac = 0.15..0.20
lipid_frac = 0.02..0.03
diameter_um = 10
density_per_mm3 = 1.0e3
z_min_um = 50
z_max_um = 120

[cell.fibroblasts]
water_frac = 0.75..0.80
protein_frac = 0.15..0.20
lipid_frac = 0.02..0.03
diameter_um = 20
density_per_mm3 = 5.0e4
z_min_um = 130
z_max_um = 3000

[cell.red_blood_cells]
# note: vessel-bound; placed inside vessel lumens rather than a depth band.
water_frac = 0.65..0.70
protein_frac = 0.28..0.32
lipid_frac = 0.01..0.02
diameter_um = 8
density_per_mm3 = 6.0e5

[cell.adipocytes]
water_frac = 0.10..0.20
protein_frac = 0.05..0.10
lipid_frac = 0.70..0.85
diameter_um = 80
density_per_mm3 = 1.0e5
z_min_um = 3000
z_max_um = 5000
)";

inline const Catalog& builtin_catalog() {
  static const Catalog catalog = parse_catalog(kBuiltinCatalogText, "<builtin>");
  return catalog;
}

}  // namespace dermawave
