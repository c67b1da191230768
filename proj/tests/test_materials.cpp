#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "dermawave/materials.hpp"

using namespace dermawave;

namespace {

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  if (at != std::string::npos) text.replace(at, from.size(), to);
  return text;
}

std::string builtin_text() { return std::string(kBuiltinCatalogText); }

}  // namespace

TEST(Catalog, WaterParameters) {
  const auto& p = builtin_catalog().component_params("water");
  EXPECT_EQ(p.eps_inf, 1.8);
  ASSERT_TRUE(p.branch(Relaxation::alpha));
  EXPECT_EQ(p.branch(Relaxation::alpha)->delta_eps, 78.0);
  EXPECT_NEAR(p.branch(Relaxation::alpha)->tau, 8.3e-12, 1e-24);
  EXPECT_FALSE(p.branch(Relaxation::beta));
  EXPECT_FALSE(p.branch(Relaxation::gamma));
}

TEST(Catalog, ProteinMidpoints) {
  const auto& p = builtin_catalog().component_params("protein");
  EXPECT_DOUBLE_EQ(p.eps_inf, 2.25);
  EXPECT_DOUBLE_EQ(p.delta_eps(Relaxation::alpha), 30.0);
  EXPECT_DOUBLE_EQ(p.delta_eps(Relaxation::beta), 3.0);
  EXPECT_DOUBLE_EQ(p.delta_eps(Relaxation::gamma), 1.25);
  EXPECT_NEAR(p.branch(Relaxation::alpha)->tau, 50.5e-12, 1e-24);
  EXPECT_NEAR(p.branch(Relaxation::beta)->tau, 5.05e-12, 1e-24);
  EXPECT_NEAR(p.branch(Relaxation::gamma)->tau, 0.055e-12, 1e-26);
  const auto& rec = builtin_catalog().component("protein");
  EXPECT_EQ(rec.source_range.at("tau_alpha_ps"), (std::pair{1.0, 100.0}));
}

TEST(Catalog, LipidHasNoAlphaBranch) {
  const auto& p = builtin_catalog().component_params("lipid");
  EXPECT_EQ(p.delta_eps(Relaxation::alpha), 0.0);
  EXPECT_FALSE(p.branch(Relaxation::alpha));
  EXPECT_TRUE(p.branch(Relaxation::beta));
  EXPECT_TRUE(p.branch(Relaxation::gamma));
}

TEST(Catalog, CellSpecies) {
  const auto& cat = builtin_catalog();
  const auto& c = cat.cell_species("corneocytes");
  EXPECT_NEAR(c.number_density * kCubicMillimetre, 1.0e7, 1e-3);
  EXPECT_NEAR(c.diameter, 23e-6, 1e-18);
  ASSERT_TRUE(c.depth_interval);
  EXPECT_NEAR(c.depth_interval->lo, 0.0, 1e-18);
  EXPECT_NEAR(c.depth_interval->hi, 20e-6, 1e-18);
  EXPECT_NEAR(c.composition.fraction_of("water"), 0.125, 1e-12);
  EXPECT_NEAR(c.composition.fraction_of("protein"), 0.75, 1e-12);
  EXPECT_NEAR(c.composition.fraction_of("lipid"), 0.125, 1e-12);

  const auto& a = cat.cell_species("adipocytes");
  EXPECT_NEAR(a.diameter, 80e-6, 1e-18);
  EXPECT_NEAR(a.depth_interval->lo, 3000e-6, 1e-15);
  EXPECT_NEAR(a.depth_interval->hi, 5000e-6, 1e-15);
  EXPECT_GE(a.composition.fraction_of("lipid"), 0.70);
  EXPECT_LE(a.composition.fraction_of("lipid"), 0.85);

  const auto& m = cat.cell_species("merkel_cells");
  EXPECT_EQ(m.composition, cat.cell_species("melanocytes").composition);
  EXPECT_NE(m.note.find("assumption"), std::string::npos);
  EXPECT_NEAR(m.diameter, 10e-6, 1e-18);

  EXPECT_TRUE(cat.cell_species("red_blood_cells").vessel_bound());
  EXPECT_THROW(cat.cell_species("neurons"), CatalogError);
}

TEST(Catalog, EcmCompositions) {
  const auto& cat = builtin_catalog();
  const auto& e = cat.ecm_composition("epidermis");
  EXPECT_NEAR(e.fraction_of("water"), 0.675, 1e-12);
  EXPECT_NEAR(e.fraction_of("protein"), 0.275, 1e-12);
  EXPECT_NEAR(e.fraction_of("lipid"), 0.05, 1e-12);
  const auto& d = cat.ecm_composition("dermis");
  EXPECT_NEAR(d.fraction_of("protein"), 0.25, 1e-12);
  EXPECT_NEAR(d.fraction_of("lipid"), 0.02, 1e-12);
  EXPECT_NEAR(d.fraction_of("water"), 0.73, 1e-12);
  const auto& h = cat.ecm_composition("hypodermis");
  EXPECT_NEAR(h.fraction_of("lipid"), 0.675, 1e-12);
  EXPECT_NEAR(h.fraction_of("protein"), 0.075, 1e-12);
  EXPECT_NEAR(h.fraction_of("water"), 0.25, 1e-12);
  EXPECT_THROW(cat.ecm_composition("bone"), CatalogError);
}

TEST(Catalog, CompositionsSumToOne) {
  const auto& cat = builtin_catalog();
  auto total = [](const MixtureComposition& c) {
    return c.fraction_of("water") + c.fraction_of("protein") + c.fraction_of("lipid");
  };
  for (const auto& c : cat.cells()) EXPECT_NEAR(total(c.composition), 1.0, 1e-12) << c.id;
  for (const auto& l : cat.layers()) EXPECT_NEAR(total(l.ecm), 1.0, 1e-12) << l.id;
}

TEST(Catalog, LayersAndVessels) {
  const auto& cat = builtin_catalog();
  ASSERT_EQ(cat.layers().size(), 3u);
  EXPECT_EQ(cat.layers()[0].id, "epidermis");
  EXPECT_NEAR(cat.layers()[1].depth.lo, 130e-6, 1e-15);
  EXPECT_NEAR(cat.total_depth(), 5e-3, 1e-15);
  EXPECT_FALSE(cat.layers()[0].vessels);
  ASSERT_TRUE(cat.layers()[1].vessels);
  EXPECT_EQ(cat.layers()[1].vessels->vessel_class, VesselClass::capillary);
  EXPECT_NEAR(cat.layers()[1].vessels->radius, 4e-6, 1e-18);
  EXPECT_EQ(cat.layers()[2].vessels->vessel_class, VesselClass::deep);
  EXPECT_NEAR(cat.layers()[2].vessels->radius, 15e-6, 1e-18);
  EXPECT_EQ(cat.layer_index_at(0.0), 0u);
  EXPECT_EQ(cat.layer_index_at(130e-6), 1u);
  EXPECT_EQ(cat.layer_index_at(4e-3), 2u);
}

TEST(Catalog, EverySpeciesInExactlyOneLayer) {
  const auto& cat = builtin_catalog();
  for (const auto& c : cat.cells()) {
    if (c.vessel_bound()) continue;
    int n = 0;
    for (const auto& l : cat.layers()) n += c.depth_interval->inside(l.depth);
    EXPECT_EQ(n, 1) << c.id;
  }
}

TEST(CatalogText, RoundTripIsIdentity) {
  const auto& cat = builtin_catalog();
  const auto text = dump_catalog(cat);
  const auto again = parse_catalog(text);
  EXPECT_EQ(again, cat);
  EXPECT_EQ(dump_catalog(again), text);
  EXPECT_EQ(catalog_hash(again), catalog_hash(cat));
  EXPECT_EQ(again.cell_species("merkel_cells").note, cat.cell_species("merkel_cells").note);
}

TEST(CatalogText, DeterministicLoad) {
  EXPECT_EQ(parse_catalog(builtin_text()), parse_catalog(builtin_text()));
}

TEST(CatalogText, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "dermawave_catalog_test.txt";
  {
    std::ofstream out(path);
    out << dump_catalog(builtin_catalog());
  }
  EXPECT_EQ(load_catalog(path), builtin_catalog());
  std::filesystem::remove(path);
  EXPECT_THROW(load_catalog(path), CatalogError);
}

TEST(CatalogText, NegativeTauNamesTheField) {
  const auto bad = replace_once(builtin_text(), "tau_alpha_ps = 1..100", "tau_alpha_ps = -1");
  try {
    parse_catalog(bad);
    FAIL() << "expected CatalogError";
  } catch (const CatalogError& e) {
    EXPECT_NE(std::string(e.what()).find("protein.tau_alpha"), std::string::npos) << e.what();
  }
}

TEST(CatalogText, ReportsEveryViolation) {
  auto bad = replace_once(builtin_text(), "tau_alpha_ps = 1..100", "tau_alpha_ps = -1");
  bad = replace_once(bad, "diameter_um = 80", "diameter_um = 0");
  bad = replace_once(bad, "z_max_um = 20\n", "z_max_um = 200\n");
  try {
    parse_catalog(bad);
    FAIL() << "expected CatalogError";
  } catch (const CatalogError& e) {
    ASSERT_EQ(e.issues().size(), 3u) << e.what();
    EXPECT_NE(std::string(e.what()).find("adipocytes.diameter_um"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("corneocytes: depth interval"), std::string::npos);
  }
}

TEST(CatalogText, ParseErrorsCarryLineNumbers) {
  const std::string text = "schema_version = 1\n[component.water]\neps_inf = abc\nbogus = 3\n";
  try {
    parse_catalog(text, "f.cat");
    FAIL();
  } catch (const CatalogError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("f.cat:3:"), std::string::npos) << what;
    EXPECT_NE(what.find("f.cat:4: unknown key 'bogus'"), std::string::npos) << what;
  }
}

TEST(CatalogText, SchemaVersionRequired) {
  EXPECT_THROW(parse_catalog("[component.water]\neps_inf = 1.8\n"), CatalogError);
  EXPECT_THROW(parse_catalog("schema_version = 2\n"), CatalogError);
}

TEST(CatalogText, ResidualWaterMustMatchDeclaredRange) {
  const auto bad = replace_once(builtin_text(), "water_frac = 0.10..0.15\nprotein_frac = 0.70..0.80",
                                "water_frac = 0.30..0.40\nprotein_frac = 0.70..0.80");
  EXPECT_THROW(parse_catalog(bad), CatalogError);
}

TEST(CatalogText, LayersMustTile) {
  const auto bad = replace_once(builtin_text(), "z_min_um = 3000\nz_max_um = 5000\nwater_frac = 0.20",
                                "z_min_um = 3100\nz_max_um = 5000\nwater_frac = 0.20");
  EXPECT_THROW(parse_catalog(bad), CatalogError);
}

TEST(Catalog, WithFieldOverrides) {
  const auto cat = builtin_catalog().with_field("layer", "dermis", "vessel_density_per_mm2",
                                                FieldValue::scalar(0.0));
  EXPECT_EQ(cat.layer("dermis").vessels->density_per_m2, 0.0);
  EXPECT_NE(catalog_hash(cat), catalog_hash(builtin_catalog()));
  EXPECT_THROW(builtin_catalog().with_field("cell", "fibroblasts", "diameter_um",
                                            FieldValue::scalar(-1.0)),
               CatalogError);
}
