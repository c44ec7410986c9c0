#include <set>

#include <gtest/gtest.h>

#include "detsing/catalog.hpp"

using namespace detsing;

TEST(Catalog, ListsEntriesWithProvenance) {
  const auto& c = catalog();
  EXPECT_GE(c.size(), 7u);
  std::set<std::string> ids;
  for (const auto& e : c) {
    EXPECT_TRUE(ids.insert(e.id).second) << "duplicate " << e.id;
    EXPECT_FALSE(e.provenance.empty()) << e.id;
    EXPECT_TRUE(e.kind == "surface" || e.kind == "curve") << e.id;
    EXPECT_TRUE(e.expected) << e.id;
  }
  for (const char* id : {"ex1", "ex1-variant", "ex2", "ex3", "ex1-section", "ex2-section", "ex3-section"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Catalog, InstantiatesWithK) {
  auto M = instantiate("ex2", 3);
  EXPECT_EQ(M(0, 2), parse_polynomial("y^3", M.ring()));
  auto N = instantiate("ex3", 2);
  EXPECT_EQ(N(1, 2), parse_polynomial("y*z + y^2*w", N.ring()));
  EXPECT_EQ(instantiate("ex2").matrix(), instantiate("ex2", 1).matrix());
}

TEST(Catalog, DomainErrors) {
  EXPECT_THROW(instantiate("ex2", 0), std::invalid_argument);
  EXPECT_THROW(instantiate("ex3", -1), std::invalid_argument);
  EXPECT_THROW(instantiate("ex1", 2), std::invalid_argument);
  EXPECT_THROW(find_entry("nope"), std::invalid_argument);
  EXPECT_THROW(expected("ex2", 0), std::invalid_argument);
}

TEST(Catalog, ExpectedValues) {
  auto e1 = expected("ex1");
  EXPECT_EQ(e1.mu, 1);
  EXPECT_EQ(e1.tau, 2);
  EXPECT_EQ(e1.ind_ph, 3);
  for (long k = 1; k <= 5; ++k) {
    EXPECT_EQ(expected("ex2", k).mu, k);
    EXPECT_EQ(expected("ex3", k).mu, 2 * k + 3);
    EXPECT_EQ(expected("ex2-section", k).mu, k + 1);
  }
  EXPECT_EQ(expected("ex3", 1).tau, 6);
}

// ind_PH = mu + mu(section) wherever all three are recorded.
TEST(CatalogProperty, RecordedValuesSatisfyIdentity) {
  for (const auto& e : catalog())
    for (long k = e.k_min; k <= (e.parametric ? 6 : e.k_min); ++k) {
      for (const auto& fn : {e.expected, e.reference}) {
        if (!fn) continue;
        auto x = fn(k);
        if (x.mu && x.mu_section && x.ind_ph) EXPECT_EQ(*x.ind_ph, *x.mu + *x.mu_section) << e.id << " k=" << k;
        if (x.mu && x.tau && e.tau_conjectural) EXPECT_EQ(*x.mu, *x.tau - 1) << e.id;
      }
    }
}

TEST(CatalogProperty, EveryEntryPassesCheck) {
  for (const auto& e : catalog())
    for (long k = e.k_min; k <= (e.parametric ? 3 : e.k_min); ++k) {
      auto M = e.parametric ? instantiate(e, k) : instantiate(e);
      auto c = check_input(M);
      EXPECT_TRUE(c.ok()) << e.id << " k=" << k << ": " << c.message;
      EXPECT_EQ(M.ambient_dimension(), e.variables.size());
      EXPECT_EQ(c.ideal_dimension, e.kind == "surface" ? 2 : 1) << e.id;
    }
}

TEST(Catalog, SectionsMatchParents) {
  for (const auto& e : catalog()) {
    if (!e.section_of) continue;
    const auto& parent = find_entry(*e.section_of);
    EXPECT_EQ(parent.kind, "surface");
    EXPECT_EQ(e.kind, "curve");
  }
  // w = 0 in ex2 gives ex2-section
  auto M = instantiate("ex2", 2);
  auto C = hyperplane_section(M, ProjectionData::coordinate(M.ring(), 3));
  EXPECT_EQ(C.matrix(), instantiate("ex2-section", 2).matrix());
}

TEST(Catalog, DeformationsAreSmoothings) {
  for (const auto& e : catalog()) {
    if (e.deformation.empty()) continue;
    for (long k = e.k_min; k <= (e.parametric ? 3 : e.k_min); ++k) {
      std::optional<long> kk = e.parametric ? std::optional<long>(k) : std::nullopt;
      auto M = instantiate(e, kk);
      auto d = entry_deformation(e, M, kk);
      ASSERT_TRUE(d);
      EXPECT_TRUE(is_smooth(d->instantiate())) << e.id << " k=" << k;
    }
  }
}

TEST(Catalog, ConjectureVerdicts) {
  EXPECT_TRUE(conjecture_check("ex1", std::nullopt).equal_to_tau_minus_1);
  auto v = conjecture_check("ex3", 1);
  EXPECT_EQ(v.tau, 6);
  EXPECT_EQ(v.mu, 5);
  EXPECT_TRUE(v.equal_to_tau_minus_1);
  EXPECT_THROW(conjecture_check("ex1-section", std::nullopt), std::invalid_argument);
}
