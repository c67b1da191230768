// dermawave: catalog inspection, point evaluations, phantom generation and
// Monte Carlo link-budget runs.
//
// Exit codes: 0 success, 1 a requested self-check failed, 2 usage or
// configuration error, 3 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dermawave/cli_args.hpp"
#include "dermawave/dielectrics.hpp"
#include "dermawave/losses.hpp"
#include "dermawave/materials.hpp"
#include "dermawave/report.hpp"
#include "dermawave/scenario.hpp"
#include "dermawave/simulate.hpp"

namespace fs = std::filesystem;
using namespace dermawave;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CatalogChoice {
  std::string path;
  bool builtin = false;

  void attach(CLI::App* app) {
    auto* p = app->add_option("--catalog", path, "Catalog file (default: built-in)");
    app->add_flag("--builtin", builtin, "Use the built-in catalog")->excludes(p);
  }

  std::string source() const { return path.empty() ? "builtin" : path; }

  Catalog load() const {
    if (path.empty()) return builtin_catalog();
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) throw IoError("cannot read catalog file '" + path + "'");
    try {
      return load_catalog(path);
    } catch (const CatalogError& e) {
      throw UsageError(e.what());
    }
  }
};

struct GridFlags {
  double x_um = 100.0, y_um = 100.0, z_mm = 5.0, dx_um = 10.0;
  std::optional<std::uint64_t> seed;
  bool seed_from_entropy = false;
  int attempts = 30;
  double capillary_fraction = 0.2;
  double vessel_half_length_um = 0.0;

  void attach(CLI::App* app) {
    auto* s = app->add_option("--seed", seed, "Master seed");
    app->add_flag("--seed-from-entropy", seed_from_entropy, "Draw the seed from the OS and print it")
        ->excludes(s);
    app->add_option("--x-um", x_um, "Lateral extent x in um")->capture_default_str();
    app->add_option("--y-um", y_um, "Lateral extent y in um")->capture_default_str();
    app->add_option("--z-mm", z_mm, "Depth extent in mm")->capture_default_str();
    app->add_option("--dx-um", dx_um, "Voxel pitch in um")->capture_default_str();
    app->add_option("--attempts", attempts, "Dart-throwing attempts per targeted cell")
        ->capture_default_str();
    app->add_option("--capillary-band", capillary_fraction,
                    "Upper fraction of the capillary layer that holds vessels")
        ->capture_default_str();
    app->add_option("--vessel-half-length-um", vessel_half_length_um,
                    "Cap on vessel half-length in um (0: traverse the box)")
        ->capture_default_str();
  }

  std::uint64_t resolve_seed() const {
    if (seed) return *seed;
    if (!seed_from_entropy) throw UsageError("--seed is required (or pass --seed-from-entropy)");
    std::random_device rd;
    const std::uint64_t s = (std::uint64_t{rd()} << 32) | rd();
    std::cerr << "seed = " << s << '\n';
    return s;
  }

  GridConfig grid(std::uint64_t s) const {
    GridConfig g;
    g.dx = dx_um * kMicron;
    g.extent_x = x_um * kMicron;
    g.extent_y = y_um * kMicron;
    g.extent_z = z_mm * 1e-3;
    g.seed = s;
    return g;
  }

  ScenarioOptions options() const {
    ScenarioOptions o;
    o.attempts_per_target = attempts;
    o.capillary_band_fraction = capillary_fraction;
    o.vessel_half_length = vessel_half_length_um * kMicron;
    return o;
  }
};

fs::path prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory '" + dir + "'");
  const fs::path probe = fs::path(dir) / ".dermawave-write-test";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return dir;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

unsigned thread_cap() {
  const char* env = std::getenv("DERMAWAVE_THREADS");
  if (!env || !*env) return 0;
  const auto v = parse_double(env);
  if (!v || *v < 1.0 || *v != std::floor(*v) || *v > 4096.0)
    throw UsageError(std::string("DERMAWAVE_THREADS must be a positive integer, got '") + env + "'");
  return static_cast<unsigned>(*v);
}

std::vector<double> frequency_list(const std::string& text) {
  auto fs = parse_quantity_list(text, Quantity::frequency);
  for (double f : fs)
    if (!(f >= kAcceptedBandLowHz && f <= kAcceptedBandHighHz))
      throw UsageError("frequency " + format_number(f) + " Hz outside the accepted [1e10, 1e13] Hz");
  return fs;
}

// --- permittivity ---------------------------------------------------------

struct MaterialRef {
  std::string label;
  std::optional<DebyeParameters> pure;
  MixtureComposition mixture;
};

MaterialRef resolve_material(const std::string& name, const Catalog& catalog) {
  if (looks_like_composition_literal(name)) {
    MixtureComposition comp;
    comp.host = "water";
    double sum = 0.0;
    std::optional<double> water;
    for (const auto& [id, frac] : parse_composition_literal(name)) {
      if (!catalog.has_component(id)) throw UsageError("unknown component '" + id + "'");
      if (!(frac >= 0.0 && frac <= 1.0)) throw UsageError("fraction of '" + id + "' outside [0, 1]");
      sum += frac;
      if (id == comp.host)
        water = frac;
      else
        comp.inclusions.push_back({id, frac});
    }
    if (water ? std::abs(sum - 1.0) > 1e-6 : sum >= 1.0)
      throw UsageError("composition fractions must sum to 1");
    return {name, std::nullopt, comp};
  }
  if (catalog.has_component(name)) return {name, catalog.component_params(name), {}};
  if (catalog.has_cell(name)) return {name, std::nullopt, catalog.cell_species(name).composition};
  if (catalog.has_layer(name)) return {name, std::nullopt, catalog.ecm_composition(name)};
  if (name.rfind("ecm_", 0) == 0 && catalog.has_layer(name.substr(4)))
    return {name, std::nullopt, catalog.ecm_composition(name.substr(4))};
  throw UsageError("unknown material '" + name +
                   "' (expected a component, cell species, layer, ecm_<layer>, or "
                   "water=..,protein=..,lipid=..)");
}

int cmd_permittivity(const std::string& material, const std::string& freqs,
                     const CatalogChoice& cat, const std::string& out_path) {
  const Catalog catalog = cat.load();
  const auto ref = resolve_material(material, catalog);
  const auto fs_hz = frequency_list(freqs);
  std::ostringstream table;
  table << "f_hz,eps_real,eps_imag,n_real,n_imag,mu_abs_per_m\n";
  for (double f : fs_hz) {
    const ComplexPermittivity eps =
        ref.pure ? debye_permittivity(*ref.pure, f) : mixture_permittivity(ref.mixture, f, catalog);
    const RefractiveIndex n = refractive_index(eps);
    table << format_number(f) << ',' << format_number(eps.eps_real) << ','
          << format_number(eps.eps_imag) << ',' << format_number(n.n_real) << ','
          << format_number(n.n_imag) << ',' << format_number(absorption_coefficient(n, f)) << '\n';
  }
  if (out_path.empty()) {
    std::cout << table.str();
  } else {
    write_file(out_path, [&](std::ostream& o) { o << table.str(); });
  }
  return kOk;
}

// --- scenario -------------------------------------------------------------

void print_density_summary(std::ostream& os, const std::vector<SpeciesStats>& stats) {
  os << "species,layer,target,achieved,nominal_per_mm3,achieved_per_mm3\n";
  for (const auto& s : stats)
    os << s.species << ',' << (s.layer.empty() ? "vessels" : s.layer) << ',' << s.target << ','
       << s.achieved << ',' << format_number(s.nominal_density * kCubicMillimetre) << ','
       << format_number(s.achieved_density() * kCubicMillimetre) << '\n';
}

int cmd_scenario(const GridFlags& flags, const CatalogChoice& cat, const std::string& out_dir,
                 bool verify) {
  const Catalog catalog = cat.load();
  const std::uint64_t seed = flags.resolve_seed();
  const GridConfig grid = flags.grid(seed);
  try {
    grid.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const fs::path dir = prepare_output_dir(out_dir);

  const auto real = generate_scenario(grid, catalog, flags.options());

  write_file(dir / "scenario.csv", [&](std::ostream& o) { write_placements_csv(o, real); });
  write_file(dir / "vessels.csv", [&](std::ostream& o) { write_vessels_csv(o, real); });
  write_file(dir / "labels.u16", [&](std::ostream& o) { write_voxel_labels(o, real); }, true);
  write_file(dir / "labels.hdr", [&](std::ostream& o) { write_voxel_header(o, real, "labels.u16"); });

  std::cout << "seed " << seed << ", grid " << grid.nx() << " x " << grid.ny() << " x "
            << grid.nz() << ", " << real.placements.size() << " cells, " << real.vessels.size()
            << " vessels\n";
  print_density_summary(std::cout, real.stats);

  if (verify) {
    const auto issues = verify_realization(real, catalog);
    for (const auto& i : issues) std::cerr << "verify: " << i << '\n';
    if (!issues.empty()) return kCheckFailed;
    std::cout << "verify: " << real.placements.size() << " placements, no violations\n";
  }
  return kOk;
}

// --- simulate -------------------------------------------------------------

struct SimulateFlags {
  std::string freqs = "100e9,1e12";
  std::string dists = "0:0.5mm:5mm";
  std::size_t realizations = 10;
  std::size_t bins = 64;
  double directivity = 1.0;
  std::string path_mode = "lateral-mean";
  bool self_check = false;
};

int cmd_simulate(const GridFlags& gflags, const SimulateFlags& sflags, const CatalogChoice& cat,
                 const std::string& out_dir) {
  const Catalog catalog = cat.load();
  SimulationConfig cfg;
  cfg.frequencies = frequency_list(sflags.freqs);
  cfg.distances = parse_quantity_list(sflags.dists, Quantity::length);
  cfg.realizations = sflags.realizations;
  cfg.bins = sflags.bins;
  cfg.directivity = sflags.directivity;
  cfg.scenario = gflags.options();
  if (sflags.path_mode == "lateral-mean")
    cfg.path_mode = PathMode::lateral_mean;
  else if (sflags.path_mode == "single-ray")
    cfg.path_mode = PathMode::single_ray;
  else
    throw UsageError("--path-mode must be lateral-mean or single-ray");
  cfg.threads = thread_cap();
  cfg.grid = gflags.grid(0);
  try {
    cfg.validate();
    if (cfg.grid.extent_z > catalog.total_depth() * (1.0 + 1e-12))
      throw DomainError("grid depth exceeds the catalog's deepest layer");
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  cfg.grid.seed = gflags.resolve_seed();
  const fs::path dir = prepare_output_dir(out_dir);

  // Placement shortfalls repeat in every realization; count them instead.
  std::size_t shortfalls = 0;
  auto previous = set_warning_handler([&](const std::string& msg) {
    if (msg.find("targeted cells") != std::string::npos)
      ++shortfalls;
    else
      std::cerr << "warning: " << msg << '\n';
  });
  const auto report = run_monte_carlo(cfg, catalog);
  set_warning_handler(std::move(previous));
  if (shortfalls > 0)
    std::cerr << "warning: " << shortfalls
              << " placement shortfalls (attempt cap reached); achieved vs target counts are in "
                 "report.json\n";

  const unsigned threads =
      cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  const auto json = report_json(report, cfg, catalog, cat.source(), threads);

  write_file(dir / "attenuation.csv", [&](std::ostream& o) { write_attenuation_csv(o, report); });
  for (const auto& h : report.histograms)
    write_file(dir / histogram_file_name(h), [&](std::ostream& o) { write_histogram_csv(o, h); });
  write_file(dir / "report.json", [&](std::ostream& o) { o << json.dump(2) << '\n'; });

  write_attenuation_csv(std::cout, report);

  if (sflags.self_check) {
    const auto rows = mean_rows(report);
    auto issues = check_attenuation_rows(rows);
    for (const auto& h : report.histograms)
      if (std::abs(h.integral() - 1.0) > 1e-9)
        issues.push_back(histogram_file_name(h) + ": density does not integrate to 1");
    for (const auto& i : issues) std::cerr << "self-check: " << i << '\n';
    if (!issues.empty()) return kCheckFailed;
    std::cerr << "self-check: " << rows.size() << " rows, " << report.histograms.size()
              << " histograms OK\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terahertz propagation through statistical skin phantoms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dermawave 0.1.0");

  CatalogChoice dump_cat, perm_cat, scen_cat, sim_cat;
  std::string dump_out, perm_out, scen_out = ".", sim_out = ".";

  auto* dump = app.add_subcommand("dump-catalog", "Print the resolved catalog");
  dump_cat.attach(dump);
  dump->add_option("--out", dump_out, "Write to a file instead of stdout");

  std::string material, perm_freqs = "100e9,1e12";
  auto* perm = app.add_subcommand("permittivity", "Permittivity, index and absorption of a material");
  perm->add_option("material", material,
                   "component, cell species, layer / ecm_<layer>, or water=..,protein=..,lipid=..")
      ->required();
  perm->add_option("--f", perm_freqs, "Frequencies: list or start:step:stop, SI suffixes allowed")
      ->capture_default_str();
  perm_cat.attach(perm);
  perm->add_option("--out", perm_out, "Write CSV to a file instead of stdout");

  GridFlags scen_grid;
  bool verify = false;
  auto* scen = app.add_subcommand("scenario", "Generate one voxel phantom");
  scen_grid.attach(scen);
  scen_cat.attach(scen);
  scen->add_option("--out", scen_out, "Output directory")->capture_default_str();
  scen->add_flag("--verify", verify, "Brute-force overlap and containment check");

  GridFlags sim_grid;
  SimulateFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo attenuation and coefficient statistics");
  sim_grid.attach(sim);
  sim_cat.attach(sim);
  sim->add_option("--f", sim_flags.freqs, "Frequencies")->capture_default_str();
  sim->add_option("--d", sim_flags.dists, "Distances")->capture_default_str();
  sim->add_option("--realizations,-n", sim_flags.realizations, "Number of realizations")
      ->capture_default_str();
  sim->add_option("--bins", sim_flags.bins, "Histogram bins")->capture_default_str();
  sim->add_option("--directivity", sim_flags.directivity, "Antenna directivity D")
      ->capture_default_str();
  sim->add_option("--path-mode", sim_flags.path_mode, "lateral-mean | single-ray")
      ->capture_default_str();
  sim->add_option("--out", sim_out, "Output directory")->capture_default_str();
  sim->add_flag("--self-check", sim_flags.self_check, "Re-check table invariants after the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*dump) {
      const auto text = dump_catalog(dump_cat.load());
      if (dump_out.empty())
        std::cout << text;
      else
        write_file(dump_out, [&](std::ostream& o) { o << text; });
      return kOk;
    }
    if (*perm) return cmd_permittivity(material, perm_freqs, perm_cat, perm_out);
    if (*scen) return cmd_scenario(scen_grid, scen_cat, scen_out, verify);
    if (*sim) return cmd_simulate(sim_grid, sim_flags, sim_cat, sim_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
