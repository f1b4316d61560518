#include <gtest/gtest.h>

#include <random>

#include "metabel/cohomo.hpp"
#include "metabel/errors.hpp"
#include "oracles.hpp"

using namespace metabel;

namespace {

Matrix e12(PrimeField f) { return Matrix::from_ints(f, {{0, 1}, {0, 0}}); }

DiscreteBimodule square_zero_bimodule(PrimeField f) { return DiscreteBimodule{f, 1, 2, {e12(f)}, {e12(f)}}; }

std::vector<CocycleTable> all_tables(PrimeField f, std::size_t m, std::size_t n) {
  std::vector<CocycleTable> out;
  const std::size_t len = m * m * n;
  for (std::uint64_t code = 0; code < oracle::ipow(f.p(), static_cast<unsigned>(len)); ++code) {
    const auto d = oracle::digits(code, f.p(), len);
    CocycleTable t;
    for (std::size_t jk = 0; jk < m * m; ++jk) {
      Vector v(f, n);
      for (std::size_t s = 0; s < n; ++s) v.set(s, d[jk * n + s]);
      t.push_back(v);
    }
    out.push_back(t);
  }
  return out;
}

// (dr)(p_j, p_k) = p_j |> r(p_k) + r(p_j) <| p_k, evaluated directly.
CocycleTable coboundary_of(const DiscreteBimodule& b, const Matrix& r) {
  CocycleTable t;
  for (std::size_t j = 0; j < b.dim_p; ++j)
    for (std::size_t k = 0; k < b.dim_p; ++k)
      t.push_back(mat_apply(b.left[j], r.column(k)) + mat_apply(b.right[k], r.column(j)));
  return t;
}

CocycleTable add(const CocycleTable& a, const CocycleTable& b) {
  CocycleTable out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

}  // namespace

TEST(Flatten, RoundTrips) {
  const PrimeField f3(3);
  for (const CocycleTable& t : all_tables(f3, 2, 1)) EXPECT_EQ(unflatten(flatten(t, 2, 1), 2, 1), t);
  CocycleTable t{Vector::from_ints(f3, {1, 2})};
  EXPECT_EQ(flatten(t, 1, 2), Vector::from_ints(f3, {1, 2}));
}

TEST(CocycleSpace, Examples) {
  const PrimeField f2(2);
  EXPECT_EQ(cocycle_space(DiscreteBimodule::trivial(f2, 2, 1)).space.dim(), 4u);
  EXPECT_EQ(cocycle_space(DiscreteBimodule::trivial(f2, 1, 3)).space.dim(), 3u);
  EXPECT_EQ(cocycle_space(square_zero_bimodule(f2)).space.dim(), 2u);
  DiscreteBimodule lopsided{f2, 1, 2, {Matrix(f2, 2, 2)}, {e12(f2)}};
  EXPECT_EQ(cocycle_space(lopsided).space, Subspace::span(f2, 2, std::vector{Vector::unit(f2, 2, 0)}));
}

TEST(CocycleSpace, MatchesBruteForceOverAllBimodules) {
  for (auto [m, n, p] : {std::tuple{1u, 1u, 3u}, {1u, 2u, 2u}, {2u, 1u, 2u}, {1u, 2u, 3u}}) {
    const PrimeField f(p);
    const auto tables = all_tables(f, m, n);
    for (const DiscreteBimodule& b : enumerate_bimodules(m, n, f)) {
      const Subspace z = cocycle_space(b).space;
      for (const CocycleTable& t : tables)
        EXPECT_EQ(z.contains(flatten(t, m, n)), validate_cocycle(b, t).valid());
    }
  }
}

TEST(CoboundarySpace, Examples) {
  EXPECT_EQ(coboundary_space(DiscreteBimodule::trivial(PrimeField(3), 2, 2)).space.dim(), 0u);
  EXPECT_EQ(coboundary_space(square_zero_bimodule(PrimeField(2))).space.dim(), 0u);
  EXPECT_EQ(coboundary_space(square_zero_bimodule(PrimeField(3))).space.dim(), 1u);
  const auto m = coboundary_matrix(square_zero_bimodule(PrimeField(3)));
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 2u);
}

TEST(CoboundarySpace, ImageOfDirectFormula) {
  for (std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    for (const DiscreteBimodule& b : enumerate_bimodules(1, 2, f)) {
      std::vector<Vector> images;
      for_each_matrix(2, 1, f, [&](const Matrix& r) { images.push_back(flatten(coboundary_of(b, r), 1, 2)); });
      EXPECT_EQ(coboundary_space(b).space, Subspace::span(f, 2, images));
    }
    for (const DiscreteBimodule& b : enumerate_bimodules(2, 1, f)) {
      std::vector<Vector> images;
      for_each_matrix(1, 2, f, [&](const Matrix& r) { images.push_back(flatten(coboundary_of(b, r), 2, 1)); });
      EXPECT_EQ(coboundary_space(b).space, Subspace::span(f, 4, images));
    }
  }
}

TEST(DH2, Examples) {
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 2; ++n)
      EXPECT_EQ(dh2(DiscreteBimodule::trivial(PrimeField(p), n, 1)).size(), oracle::ipow(p, n * n));
  EXPECT_EQ(dh2(square_zero_bimodule(PrimeField(2))).size(), 4u);
  EXPECT_EQ(dh2(square_zero_bimodule(PrimeField(3))).size(), 3u);
}

TEST(DH2, TransversalMeetsEveryClassOnce) {
  const PrimeField f3(3);
  for (const DiscreteBimodule& b : enumerate_bimodules(1, 2, f3)) {
    const DH2 h = dh2(b);
    const Subspace z = cocycle_space(b).space;
    const Subspace bd = coboundary_space(b).space;
    EXPECT_EQ(h.size() * oracle::ipow(3, static_cast<unsigned>(bd.dim())), oracle::ipow(3, static_cast<unsigned>(z.dim())));
    for (std::size_t i = 0; i < h.quotient.transversal().size(); ++i) {
      EXPECT_TRUE(z.contains(h.quotient.transversal()[i]));
      for (std::size_t j = 0; j < i; ++j)
        EXPECT_FALSE(bd.contains(h.quotient.transversal()[i] - h.quotient.transversal()[j]));
    }
  }
}

TEST(Cohomologous, Example) {
  const PrimeField f3(3);
  const DiscreteBimodule b = square_zero_bimodule(f3);
  const auto d1 = make_datum(b, {Vector::from_ints(f3, {1, 0})});
  const auto d2 = make_datum(b, {Vector::from_ints(f3, {0, 0})});
  const auto r = cohomologous(d1, d2);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, Matrix::from_ints(f3, {{0}, {2}}));
  EXPECT_FALSE(cohomologous(make_datum(b, {Vector::from_ints(f3, {0, 1})}), d2).has_value());
  EXPECT_THROW(cohomologous(d1, make_datum(DiscreteBimodule::trivial(f3, 1, 2), {Vector::from_ints(f3, {1, 0})})),
               BimoduleMismatch);
}

TEST(Cohomologous, WitnessIsLexMinimalAndCorrect) {
  const PrimeField f3(3);
  for (const DiscreteBimodule& b : enumerate_bimodules(1, 2, f3)) {
    std::vector<MetabelianDatum> datums;
    for (const CocycleTable& t : all_tables(f3, 1, 2))
      if (validate_cocycle(b, t).valid()) datums.push_back(make_datum(b, t));
    for (const auto& d1 : datums)
      for (const auto& d2 : datums) {
        std::optional<Matrix> first;
        for_each_matrix(2, 1, f3, [&](const Matrix& r) {
          if (!first && add(d2.theta, coboundary_of(b, r)) == d1.theta) first = r;
        });
        EXPECT_EQ(cohomologous(d1, d2), first);
      }
  }
}

TEST(EnumerateBimodules, CountsMatchLawFilter) {
  for (auto [m, n, p] : {std::tuple{1u, 1u, 2u}, {1u, 2u, 2u}, {2u, 1u, 3u}, {1u, 2u, 3u}}) {
    const PrimeField f(p);
    std::uint64_t expected = 0;
    for_each_matrix(m * n, n, f, [&](const Matrix& rs) {
      for_each_matrix(m * n, n, f, [&](const Matrix& ls) {
        DiscreteBimodule b{f, m, n, {}, {}};
        for (std::size_t j = 0; j < m; ++j) {
          Matrix r(f, n, n), l(f, n, n);
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c) {
              r.set(a, c, rs.at(j * n + a, c));
              l.set(a, c, ls.at(j * n + a, c));
            }
          b.right.push_back(r);
          b.left.push_back(l);
        }
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            ok = ok && (b.right[j] * b.right[i]).is_zero() && (b.left[i] * b.left[j]).is_zero() &&
                 b.left[i] * b.right[j] == b.right[j] * b.left[i];
        expected += ok;
      });
    });
    EXPECT_EQ(enumerate_bimodules(m, n, f).size(), expected);
  }
}

TEST(ExtEnumerate, Examples) {
  const auto c = ext_enumerate(1, 1, PrimeField(2));
  EXPECT_EQ(c.entries.size(), 2u);
  EXPECT_EQ(c.bimodules.size(), 1u);
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(ext_enumerate(2, 1, PrimeField(3)).entries.size(), 81u);
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 2; ++n)
      EXPECT_EQ(ext_enumerate(n, 1, PrimeField(p), ExtOptions{kDefaultEnumerationBudget, n == 1}).summaries.front().classes,
                oracle::ipow(p, static_cast<unsigned>(n * n)));
}

TEST(ExtEnumerate, SummariesAreConsistent) {
  for (auto [m, n, p] : {std::tuple{1u, 2u, 2u}, {1u, 2u, 3u}, {2u, 1u, 2u}}) {
    const auto c = ext_enumerate(m, n, PrimeField(p));
    EXPECT_TRUE(c.verified);
    std::uint64_t classes = 0, cocycles = 0;
    for (const auto& s : c.summaries) {
      EXPECT_EQ(s.cocycles, s.coboundaries * s.classes);
      classes += s.classes;
      cocycles += s.cocycles;
    }
    EXPECT_EQ(classes, c.entries.size());
    EXPECT_EQ(cocycles, c.datum_count);
    EXPECT_EQ(c.datum_count, enumerate_datums(m, n, PrimeField(p)).size());
  }
}

TEST(ExtEnumerate, EquivalenceIsSameBimoduleAndCohomologous) {
  for (auto [m, n] : {std::pair{1u, 1u}, {1u, 2u}}) {
    const auto datums = enumerate_datums(m, n, PrimeField(2));
    std::vector<ExtensionTriple> products;
    for (const auto& d : datums) products.push_back(metabelian_product(d));
    for (std::size_t i = 0; i < datums.size(); ++i)
      for (std::size_t j = 0; j < datums.size(); ++j) {
        const bool cohom = datums[i].bimodule == datums[j].bimodule && cohomologous(datums[i], datums[j]);
        EXPECT_EQ(extension_equivalent(products[i], products[j]).has_value(), cohom);
      }
    EXPECT_EQ(count_extension_classes(products), ext_enumerate(m, n, PrimeField(2)).entries.size());
  }
}

TEST(ExtEnumerate, RespectsBudget) {
  EXPECT_THROW(ext_enumerate(2, 2, PrimeField(3), ExtOptions{1000, false}), BudgetExceeded);
}
