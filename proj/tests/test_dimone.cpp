#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "metabel/dimone.hpp"
#include "metabel/errors.hpp"
#include "oracles.hpp"

using namespace metabel;

namespace {

BilinearForm form(PrimeField f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return BilinearForm(Matrix::from_ints(f, rows));
}

struct OrbitCounts {
  std::size_t homothety = 0;
  std::size_t isometry = 0;
};

// Orbits of theta -> u C^T theta C on raw digit tensors, with GL found by determinant.
OrbitCounts orbit_oracle(std::size_t n, std::uint32_t p) {
  const std::size_t len = n * n;
  const std::uint64_t total = oracle::ipow(p, static_cast<unsigned>(len));
  std::vector<std::vector<std::int64_t>> gl;
  for (std::uint64_t code = 0; code < total; ++code) {
    const auto d = oracle::digits(code, p, len);
    std::vector<std::int64_t> m(d.begin(), d.end());
    if (oracle::det(m, n, p) != 0) gl.push_back(m);
  }
  auto encode = [&](const std::vector<std::int64_t>& m) {
    std::uint64_t code = 0;
    for (auto v : m) code = code * p + static_cast<std::uint64_t>(v);
    return code;
  };
  auto act = [&](const std::vector<std::int64_t>& t, const std::vector<std::int64_t>& c, std::int64_t u) {
    std::vector<std::int64_t> out(len, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t s = 0;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) s += c[a * n + i] * t[a * n + b] * c[b * n + j];
        out[i * n + j] = (u * s) % p;
      }
    return out;
  };
  auto count = [&](std::int64_t last_u) {
    std::vector<bool> seen(total, false);
    std::size_t orbits = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
      if (seen[code]) continue;
      ++orbits;
      const auto d = oracle::digits(code, p, len);
      const std::vector<std::int64_t> t(d.begin(), d.end());
      for (std::int64_t u = 1; u <= last_u; ++u)
        for (const auto& c : gl) seen[encode(act(t, c, u))] = true;
    }
    return orbits;
  };
  return {count(p - 1), count(1)};
}

}  // namespace

TEST(BilinearForm, RejectsNonSquare) {
  EXPECT_THROW(BilinearForm(Matrix(PrimeField(3), 1, 2)), DimensionMismatch);
  EXPECT_TRUE(BilinearForm::zero(PrimeField(3), 2).is_zero());
}

TEST(BuildPTheta, Examples) {
  const PrimeField f3(3);
  const auto t = build_P_theta(form(f3, {{1}}));
  EXPECT_EQ(t.total.dim(), 2u);
  EXPECT_EQ(t.total.basis_product(0, 0), Vector::unit(f3, 2, 1));
  EXPECT_EQ(t.total.labels(), (std::vector<std::string>{"F1", "E"}));
  EXPECT_EQ(build_P_theta(BilinearForm::zero(f3, 2)).total, Algebra::abelian(f3, 3));

  const auto k46 = build_P_theta(std::get<BilinearForm>(catalog("n3:theta6", PrimeField(5)))).total;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) nonzero += !k46.basis_product(i, j).is_zero();
  EXPECT_EQ(nonzero, 5u);
}

TEST(BuildPTheta, DerivedDimensionAndFourFoldProducts) {
  for (const BilinearForm& t : form_census(2, PrimeField(3))) {
    const auto e = build_P_theta(t);
    EXPECT_EQ(derived_subalgebra(e.total).dim(), t.is_zero() ? 0u : 1u);
    EXPECT_TRUE(nilpotency_index_at_most(e.total, 3));
    EXPECT_TRUE(is_metabelian_extension(e));
  }
}

TEST(Homothetic, Examples) {
  const PrimeField f3(3);
  const auto w = homothetic(form(f3, {{1}}), form(f3, {{2}}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->u, 2u);
  EXPECT_EQ(w->c, Matrix::from_ints(f3, {{1}}));
  EXPECT_FALSE(isometric(form(f3, {{1}}), form(f3, {{2}})).has_value());
  EXPECT_FALSE(homothetic(form(f3, {{0}}), form(f3, {{1}})).has_value());

  const PrimeField f5(5);
  EXPECT_EQ(isometric(form(f5, {{1}}), form(f5, {{4}})), Matrix::from_ints(f5, {{2}}));
  EXPECT_THROW(homothetic(form(f5, {{1}}), BilinearForm::zero(f5, 2)), DimensionMismatch);
}

TEST(Homothetic, WitnessesAreValidAndSymmetric) {
  const auto forms = form_census(2, PrimeField(3));
  for (std::size_t i = 0; i < forms.size(); i += 7)
    for (std::size_t j = 0; j < forms.size(); j += 5) {
      const auto w = homothetic(forms[i], forms[j]);
      EXPECT_EQ(w.has_value(), homothetic(forms[j], forms[i]).has_value());
      if (!w) continue;
      EXPECT_EQ(w->c.transpose() * forms[j].matrix() * w->c, forms[i].matrix().scaled(w->u));
      EXPECT_TRUE(find_isomorphism(build_P_theta(forms[i]).total, build_P_theta(forms[j]).total).has_value());
    }
}

TEST(ClassifyForms, Examples) {
  const PrimeField f3(3);
  const auto h = classify_forms(1, f3, FormRelation::Homothety);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].representative, form(f3, {{0}}));
  EXPECT_EQ(h[0].size, 1u);
  EXPECT_EQ(h[1].representative, form(f3, {{1}}));
  EXPECT_EQ(h[1].size, 2u);
  EXPECT_EQ(classify_forms(1, f3, FormRelation::Isometry).size(), 3u);
}

TEST(ClassifyForms, AgreesWithOrbitOracle) {
  for (auto [n, p] : {std::pair{1u, 2u}, {1u, 3u}, {1u, 5u}, {2u, 2u}, {2u, 3u}}) {
    const OrbitCounts o = orbit_oracle(n, p);
    const auto h = classify_forms(n, PrimeField(p), FormRelation::Homothety);
    const auto i = classify_forms(n, PrimeField(p), FormRelation::Isometry);
    EXPECT_EQ(h.size(), o.homothety);
    EXPECT_EQ(i.size(), o.isometry);
    std::size_t total = 0;
    for (const auto& c : h) total += c.size;
    EXPECT_EQ(total, oracle::ipow(p, n * n));
  }
  // Frozen from the oracle.
  EXPECT_EQ(orbit_oracle(2, 2).homothety, 6u);
  EXPECT_EQ(orbit_oracle(2, 3).homothety, 8u);
  EXPECT_EQ(orbit_oracle(2, 3).isometry, 10u);
}

TEST(IsoVersusHomothety, IsomorphismMatchesHomothety) {
  const auto r1 = theorem2_agreement(1, PrimeField(3));
  EXPECT_EQ(r1.disagreements, 0u);
  EXPECT_EQ(r1.homothety_classes, 2u);
  EXPECT_EQ(r1.isometry_classes, 3u);

  const auto r2 = theorem2_agreement(2, PrimeField(2));
  EXPECT_EQ(r2.forms, 16u);
  EXPECT_EQ(r2.pairs, 256u);
  EXPECT_EQ(r2.disagreements, 0u);
  EXPECT_EQ(r2.homothety_classes, 6u);
  EXPECT_EQ(r2.isomorphism_classes, 6u);
  EXPECT_EQ(r2.isometry_classes, 6u);
  EXPECT_EQ(r2.homothety_isometry_differences, 0u);

  const auto r3 = theorem2_agreement(2, PrimeField(3));
  EXPECT_EQ(r3.disagreements, 0u);
  EXPECT_EQ(r3.isomorphic_pairs, r3.homothetic_pairs);
  EXPECT_EQ(r3.homothety_classes, 8u);
  EXPECT_EQ(r3.isomorphism_classes, 8u);
  EXPECT_EQ(r3.isometry_classes, 10u);
  EXPECT_EQ(r3.homothety_isometry_differences, 160u);
}

TEST(IsoVersusHomothety, IndependentOfJobCount) {
  const auto a = theorem2_agreement(2, PrimeField(2), 1);
  const auto b = theorem2_agreement(2, PrimeField(2), 3);
  EXPECT_EQ(a.isomorphic_pairs, b.isomorphic_pairs);
  EXPECT_EQ(a.homothetic_pairs, b.homothetic_pairs);
  EXPECT_EQ(a.isometric_pairs, b.isometric_pairs);
  EXPECT_EQ(a.disagreements, b.disagreements);
}

TEST(AutGroupG, Examples) {
  const PrimeField f2(2);
  EXPECT_EQ(aut_group_G(form(f2, {{1}})).size(), 2u);
  EXPECT_EQ(aut_group_G(BilinearForm(Matrix::identity(f2, 2))).size(), 8u);
  EXPECT_THROW(aut_group_G(BilinearForm::zero(f2, 2)), InvalidParams);
  EXPECT_EQ(aut_group_G(form(f2, {{1}})).front(), g_identity(f2, 1));
}

TEST(AutGroupG, OrderIsSimilitudeCountTimesFunctionals) {
  for (std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    const auto gl = gl_enumerate(2, f);
    for (const BilinearForm& t : form_census(2, f)) {
      if (t.is_zero()) continue;
      std::size_t similitudes = 0;
      for (Elem u = 1; u < p; ++u)
        for (const Matrix& c : gl) similitudes += c.transpose() * t.matrix() * c == t.matrix().scaled(u);
      const auto g = aut_group_G(t);
      EXPECT_EQ(g.size(), similitudes * p * p);
      EXPECT_EQ(g.size(), automorphism_group(build_P_theta(t).total).size());
    }
  }
}

TEST(AutGroupG, GroupLaws) {
  const PrimeField f3(3);
  for (const BilinearForm& t : {form(f3, {{1, 0}, {0, 1}}), form(f3, {{0, 1}, {2, 0}}), form(f3, {{1, 1}, {0, 0}})}) {
    const auto g = aut_group_G(t);
    const std::set<std::vector<Elem>> keys = [&] {
      std::set<std::vector<Elem>> s;
      for (const auto& x : g) {
        const Matrix m = g_to_automorphism(x);
        s.emplace(m.entries().begin(), m.entries().end());
      }
      return s;
    }();
    EXPECT_EQ(keys.size(), g.size());
    const GElement e = g_identity(f3, 2);
    EXPECT_EQ(g_to_automorphism(e), Matrix::identity(f3, 3));
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
      const GElement& a = g[rng() % g.size()];
      const GElement& b = g[rng() % g.size()];
      const GElement& c = g[rng() % g.size()];
      const GElement ab = g_compose(a, b);
      EXPECT_TRUE(std::find(g.begin(), g.end(), ab) != g.end());
      EXPECT_EQ(g_compose(ab, c), g_compose(a, g_compose(b, c)));
      EXPECT_EQ(g_compose(a, g_inverse(a)), e);
      EXPECT_EQ(g_compose(g_inverse(a), a), e);
      EXPECT_EQ(g_compose(a, e), a);
      EXPECT_EQ(g_to_automorphism(ab), g_to_automorphism(a) * g_to_automorphism(b));
    }
    EXPECT_TRUE(verify_aut_group(t).ok());
  }
}

TEST(VerifyAutGroup, EveryNonzeroFormOverF2) {
  for (const BilinearForm& t : form_census(2, PrimeField(2))) {
    if (t.is_zero()) continue;
    const auto r = verify_aut_group(t);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.group_order, r.automorphism_count);
  }
}

TEST(Catalog, Examples) {
  const PrimeField f2(2);
  EXPECT_EQ(std::get<BilinearForm>(catalog("n2:theta_ab", f2, {0, 0})), form(f2, {{1, 0}, {0, 0}}));
  const PrimeField f3(3);
  EXPECT_EQ(std::get<BilinearForm>(catalog("n2:theta_skew", f3)), form(f3, {{0, 1}, {2, 0}}));
  EXPECT_EQ(std::get<BilinearForm>(catalog("n2:theta_ab", f3, {1, 2})), form(f3, {{1, 1}, {2, 0}}));
  EXPECT_THROW(catalog("n9:nothing", f3), UnknownFamily);
  EXPECT_THROW(catalog_entry("n9:nothing"), UnknownFamily);
  EXPECT_THROW(catalog("n2:theta_ab", f3), InvalidParams);
  EXPECT_THROW(catalog("n2:theta_ab", f3, {1, std::nullopt}), InvalidParams);
  EXPECT_THROW(catalog("n2:theta_skew", f3, {1, std::nullopt}), InvalidParams);
  EXPECT_THROW(catalog("n2:theta_ab", f3, {3, 0}), InvalidParams);
  EXPECT_THROW(catalog("n2:theta_ab", f3, {-1, 0}), InvalidParams);
}

TEST(Catalog, AlgebrasArePThetaOfTheirForms) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const PrimeField f(p);
    for (const CatalogEntry& e : catalog_entries()) {
      if (!e.is_algebra) continue;
      const std::int64_t top = e.params.empty() ? 1 : p;
      for (std::int64_t a = 0; a < top; ++a)
        for (std::int64_t b = 0; b < top; ++b) {
          CatalogParams params;
          if (!e.params.empty()) params = {a, b};
          const Algebra alg = std::get<Algebra>(catalog(e.id, f, params));
          const BilinearForm t = std::get<BilinearForm>(catalog(e.form, f, params));
          EXPECT_EQ(alg, build_P_theta(t).total) << e.id;
          EXPECT_EQ(alg.dim(), e.dim);
          EXPECT_EQ(derived_subalgebra(alg).dim(), 1u);
        }
    }
  }
}
