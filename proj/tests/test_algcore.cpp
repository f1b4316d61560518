#include <gtest/gtest.h>

#include <random>
#include <algorithm>

#include "metabel/algcore.hpp"
#include "metabel/dimone.hpp"
#include "metabel/errors.hpp"
#include "oracles.hpp"

using namespace metabel;

namespace {

Algebra k3_minus1(PrimeField f) { return std::get<Algebra>(catalog("alg3:k3_minus1", f)); }

Algebra idempotent_line(PrimeField f) {
  Algebra a(f, 1);
  a.set(0, 0, 0, 1);
  return a;
}

// e1 e2 = e1, all else zero: (e1 e2) e2 = e1 but e1 (e2 e2) = 0.
Algebra non_associative(PrimeField f) {
  Algebra a(f, 2);
  a.set(0, 1, 0, 1);
  return a;
}

// F F = E2, F E2 = E2 F = E1 over F_p: metabelian with a nonzero triple product.
Algebra square_zero_pair_algebra(PrimeField f) {
  Algebra a(f, 3);
  a.set(0, 0, 2, 1);
  a.set(0, 2, 1, 1);
  a.set(2, 0, 1, 1);
  return a;
}

Subspace span_of(PrimeField f, std::size_t n, std::initializer_list<std::size_t> units) {
  std::vector<Vector> gens;
  for (std::size_t i : units) gens.push_back(Vector::unit(f, n, i));
  return Subspace::span(f, n, gens);
}

Algebra random_change_of_basis(const Algebra& a, std::mt19937_64& rng) {
  const PrimeField& f = a.field();
  while (true) {
    Matrix m(f, a.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) m.set(i, j, static_cast<std::int64_t>(rng() % f.p()));
    if (inverse(m)) return transport(a, m);
  }
}

}  // namespace

TEST(Multiply, Examples) {
  const PrimeField f3(3);
  const Algebra ab = Algebra::abelian(f3, 2);
  EXPECT_TRUE(multiply(ab, Vector::from_ints(f3, {1, 2}), Vector::from_ints(f3, {2, 2})).is_zero());
  const Algebra k = k3_minus1(f3);
  EXPECT_EQ(multiply(k, Vector::unit(f3, 3, 0), Vector::unit(f3, 3, 1)), Vector::unit(f3, 3, 2));
  EXPECT_EQ(multiply(k, Vector::unit(f3, 3, 1), Vector::unit(f3, 3, 0)), Vector::from_ints(f3, {0, 0, 2}));
  EXPECT_THROW(multiply(k, Vector::unit(f3, 2, 0), Vector::unit(f3, 3, 0)), DimensionMismatch);
}

TEST(Multiply, IsBilinear) {
  std::mt19937_64 rng(3);
  const PrimeField f(5);
  const Algebra a = k3_minus1(f);
  for (int t = 0; t < 20; ++t) {
    Vector x(f, 3), y(f, 3), z(f, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      x.set(i, static_cast<std::int64_t>(rng() % 5));
      y.set(i, static_cast<std::int64_t>(rng() % 5));
      z.set(i, static_cast<std::int64_t>(rng() % 5));
    }
    const Elem s = static_cast<Elem>(rng() % 5);
    EXPECT_EQ(a.multiply(x + y.scaled(s), z), a.multiply(x, z) + a.multiply(y, z).scaled(s));
    EXPECT_EQ(a.multiply(z, x + y.scaled(s)), a.multiply(z, x) + a.multiply(z, y).scaled(s));
  }
}

TEST(IsAssociative, Examples) {
  const PrimeField f2(2);
  EXPECT_TRUE(is_associative(Algebra::abelian(f2, 4)));
  EXPECT_TRUE(is_associative(idempotent_line(f2)));
  EXPECT_FALSE(is_associative(non_associative(f2)));
  for (std::uint32_t p : {3u, 5u})
    for (const auto& e : catalog_entries()) {
      if (!e.is_algebra) continue;
      CatalogParams params;
      if (!e.params.empty()) params = {1, 2};
      EXPECT_TRUE(is_associative(std::get<Algebra>(catalog(e.id, PrimeField(p), params)))) << e.id;
    }
}

TEST(IsAssociative, AgreesWithOracleOnRandomTensors) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::uint32_t p = t % 2 ? 2 : 3;
    const std::size_t n = 1 + rng() % 3;
    std::vector<Elem> sc(n * n * n);
    for (auto& c : sc) c = static_cast<Elem>(rng() % 4 == 0 ? rng() % p : 0);
    EXPECT_EQ(is_associative(Algebra(PrimeField(p), n, sc)), oracle::associative(sc, n, p));
  }
}

TEST(DerivedSubalgebra, Examples) {
  const PrimeField f2(2);
  EXPECT_EQ(derived_subalgebra(Algebra::abelian(f2, 3)).dim(), 0u);
  EXPECT_EQ(derived_subalgebra(k3_minus1(PrimeField(3))), span_of(PrimeField(3), 3, {2}));
  // k^{3}_{X,Y,u} with X = Y = E12, u = e1 on the basis (F, E1, E2).
  Algebra a(f2, 3);
  a.set(0, 0, 1, 1);
  a.set(0, 2, 1, 1);
  a.set(2, 0, 1, 1);
  EXPECT_EQ(derived_subalgebra(a), span_of(f2, 3, {1}));
}

TEST(Nilpotency, Examples) {
  const PrimeField f3(3);
  EXPECT_TRUE(nilpotency_index_at_most(Algebra::abelian(f3, 2), 2));
  const Algebra k = k3_minus1(f3);
  EXPECT_FALSE(nilpotency_index_at_most(k, 2));
  EXPECT_TRUE(nilpotency_index_at_most(k, 3));
  EXPECT_EQ(nilpotency_index(k), 3u);
  const Algebra e = idempotent_line(f3);
  for (std::size_t m = 1; m < 6; ++m) EXPECT_FALSE(nilpotency_index_at_most(e, m));
  EXPECT_EQ(nilpotency_index(e), std::nullopt);
  EXPECT_THROW(nilpotency_index_at_most(non_associative(f3), 3), NotAssociative);
  EXPECT_THROW(nilpotency_index_at_most(k, 0), Error);
}

TEST(Nilpotency, AgreesWithLeftNormedProductOracle) {
  for (const Algebra& a : enumerate_associative_algebras(2, PrimeField(3)))
    for (std::size_t m = 1; m <= 4; ++m) EXPECT_EQ(nilpotency_index_at_most(a, m), oracle::products_vanish(a, m));
}

TEST(IsMetabelian, Examples) {
  const PrimeField f3(3);
  EXPECT_TRUE(is_metabelian(Algebra::abelian(f3, 3)));
  EXPECT_TRUE(is_metabelian(k3_minus1(f3)));
  EXPECT_FALSE(is_metabelian(idempotent_line(f3)));
  EXPECT_THROW(is_metabelian(non_associative(f3)), NotAssociative);
}

TEST(IsMetabelian, MetabelianDoesNotForceVanishingTripleProducts) {
  // The derived algebra span{E1, E2} is abelian, yet F (F F) = E1.
  const PrimeField f2(2);
  const Algebra a = square_zero_pair_algebra(f2);
  ASSERT_TRUE(is_associative(a));
  EXPECT_TRUE(is_metabelian(a));
  EXPECT_FALSE(nilpotency_index_at_most(a, 3));
  EXPECT_TRUE(nilpotency_index_at_most(a, 4));
  EXPECT_TRUE(four_fold_products_vanish(a));
}

TEST(Corpus, SmallCountsAreExhaustive) {
  EXPECT_EQ(enumerate_associative_algebras(1, PrimeField(2)).size(), 2u);
  EXPECT_EQ(enumerate_associative_algebras(1, PrimeField(3)).size(), 3u);
}

TEST(Corpus, DimensionTwoMatchesTensorFilterOracle) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto pruned = enumerate_associative_algebras(2, PrimeField(p));
    const auto plain = enumerate_associative_algebras(2, PrimeField(p), CorpusOptions{kDefaultEnumerationBudget, false});
    EXPECT_EQ(pruned.size(), oracle::associative_tensor_count(2, p));
    ASSERT_EQ(pruned.size(), plain.size());
    for (std::size_t i = 0; i < pruned.size(); ++i) EXPECT_EQ(pruned[i], plain[i]);
  }
  // Frozen from the oracle above.
  EXPECT_EQ(oracle::associative_tensor_count(2, 2), 28u);
  EXPECT_EQ(oracle::associative_tensor_count(2, 3), 121u);
}

TEST(Corpus, DimensionThreeOverF2Regression) {
  const auto corpus = enumerate_associative_algebras(3, PrimeField(2));
  EXPECT_EQ(corpus.size(), 1688u);
  std::vector<std::vector<Elem>> tensors;
  for (const Algebra& a : corpus) {
    tensors.emplace_back(a.structure_constants().begin(), a.structure_constants().end());
    EXPECT_TRUE(oracle::associative(tensors.back(), 3, 2));
  }
  EXPECT_TRUE(std::adjacent_find(tensors.begin(), tensors.end(),
                                 [](const auto& x, const auto& y) { return !(x < y); }) == tensors.end());
}

TEST(Corpus, BudgetGuards) {
  EXPECT_THROW(enumerate_associative_algebras(3, PrimeField(2), CorpusOptions{1000, false}), BudgetExceeded);
  EXPECT_THROW(enumerate_associative_algebras(3, PrimeField(2), CorpusOptions{1000, true}), BudgetExceeded);
}

TEST(MetabelianCharacterisation, DerivedAbelianIffFourFoldZeroOnCorpora) {
  std::size_t cube_differs = 0;
  for (auto [n, p] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}})
    for (const Algebra& a : enumerate_associative_algebras(n, PrimeField(p))) {
      const bool derived_abelian = is_abelian_subspace(a, derived_subalgebra(a));
      EXPECT_EQ(derived_abelian, oracle::products_vanish(a, 4));
      if (n == 2) {
        EXPECT_EQ(derived_abelian, oracle::products_vanish(a, 3));
      }
      cube_differs += derived_abelian != oracle::products_vanish(a, 3);
    }
  EXPECT_EQ(cube_differs, 42u);
}

TEST(FindIsomorphism, Examples) {
  const PrimeField f3(3);
  const Algebra ab = Algebra::abelian(f3, 2);
  EXPECT_EQ(find_isomorphism(ab, ab), gl_enumerate(2, f3).front());

  const Algebra p1 = build_P_theta(BilinearForm(Matrix::from_ints(f3, {{1}}))).total;
  const Algebra p2 = build_P_theta(BilinearForm(Matrix::from_ints(f3, {{2}}))).total;
  auto c = find_isomorphism(p1, p2);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(is_algebra_morphism(p1, p2, *c));

  EXPECT_FALSE(find_isomorphism(k3_minus1(f3), Algebra::abelian(f3, 3)).has_value());
  EXPECT_THROW(find_isomorphism(ab, Algebra::abelian(f3, 3)), DimensionMismatch);
}

TEST(FindIsomorphism, RecoversRandomChangesOfBasis) {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {2u, 3u}) {
    const auto corpus = enumerate_associative_algebras(2, PrimeField(p));
    for (std::size_t i = 0; i < corpus.size(); i += 3) {
      const Algebra& a = corpus[i];
      const Algebra b = random_change_of_basis(a, rng);
      auto forward = find_isomorphism(a, b);
      ASSERT_TRUE(forward.has_value());
      EXPECT_TRUE(is_algebra_morphism(a, b, *forward));
      ASSERT_TRUE(inverse(*forward).has_value());
      EXPECT_TRUE(is_algebra_morphism(b, a, *inverse(*forward)));
      EXPECT_EQ(derived_subalgebra(a).dim(), derived_subalgebra(b).dim());
      EXPECT_EQ(nilpotency_index(a), nilpotency_index(b));
    }
  }
}

TEST(FindIsomorphism, PrefilterDoesNotChangeVerdicts) {
  const auto corpus = enumerate_associative_algebras(2, PrimeField(2));
  for (const Algebra& a : corpus)
    for (const Algebra& b : corpus) {
      const bool fast = find_isomorphism(a, b).has_value();
      const bool slow = find_isomorphism(a, b, SearchOptions{kDefaultSearchBudget, false}).has_value();
      EXPECT_EQ(fast, slow);
    }
}

TEST(FindIsomorphism, RespectsBudget) {
  EXPECT_THROW(find_isomorphism(Algebra::abelian(PrimeField(3), 4), Algebra::abelian(PrimeField(3), 4)),
               BudgetExceeded);
}

TEST(AutomorphismGroup, Examples) {
  const PrimeField f2(2);
  EXPECT_EQ(automorphism_group(Algebra::abelian(f2, 2)), gl_enumerate(2, f2));
  const Algebra p_id = build_P_theta(BilinearForm(Matrix::identity(f2, 2))).total;
  const auto auts = automorphism_group(p_id);
  EXPECT_EQ(auts.size(), 8u);
  for (const Matrix& m : auts) EXPECT_TRUE(is_algebra_morphism(p_id, p_id, m));
  EXPECT_EQ(automorphism_group(idempotent_line(PrimeField(3))),
            std::vector<Matrix>{Matrix::identity(PrimeField(3), 1)});
}

TEST(AutomorphismGroup, MatchesFilteredGl) {
  for (const Algebra& a : enumerate_associative_algebras(2, PrimeField(3))) {
    std::vector<Matrix> expected;
    for (const Matrix& m : gl_enumerate(2, PrimeField(3)))
      if (is_algebra_morphism(a, a, m)) expected.push_back(m);
    EXPECT_EQ(automorphism_group(a), expected);
  }
}

TEST(ExtensionEquivalent, Examples) {
  const PrimeField f2(2);
  Algebra with_square(f2, 2);
  with_square.set(0, 0, 1, 1);
  const ExtensionTriple e1{with_square, 1, 1};
  const ExtensionTriple e0{Algebra::abelian(f2, 2), 1, 1};
  EXPECT_EQ(extension_equivalent(e1, e1), Matrix::identity(f2, 2));
  EXPECT_FALSE(extension_equivalent(e1, e0).has_value());
  EXPECT_TRUE(is_metabelian_extension(e1));
}

TEST(ItoCheck, Examples) {
  const PrimeField f3(3);
  const Algebra ab = Algebra::abelian(f3, 2);
  ItoReport r = ito_check(ab, Subspace::full(f3, 2), Subspace::zero(f3, 2));
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.conclusion_holds());

  const Algebra k = k3_minus1(f3);
  r = ito_check(k, span_of(f3, 3, {0, 2}), span_of(f3, 3, {1, 2}));
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.conclusion_holds());

  try {
    ito_check(k, span_of(f3, 3, {0, 1}), span_of(f3, 3, {2}));
    FAIL() << "expected HypothesisFailed";
  } catch (const HypothesisFailed& e) {
    EXPECT_EQ(e.hypothesis().rfind("subalgebra", 0), 0u);
  }
  try {
    ito_check(k, span_of(f3, 3, {0}), span_of(f3, 3, {2}));
    FAIL() << "expected HypothesisFailed";
  } catch (const HypothesisFailed& e) {
    EXPECT_EQ(e.hypothesis().rfind("sum", 0), 0u);
  }
}

TEST(ItoCheck, AbelianSumsAreMetabelianOnCorpora) {
  for (auto [n, p] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}})
    for (const Algebra& a : enumerate_associative_algebras(n, PrimeField(p))) {
      auto pair = find_abelian_sum(a);
      if (!pair) continue;
      EXPECT_TRUE(is_abelian_subspace(a, pair->first));
      EXPECT_TRUE(is_abelian_subspace(a, pair->second));
      EXPECT_EQ((pair->first + pair->second).dim(), a.dim());
      EXPECT_TRUE(ito_check(a, pair->first, pair->second).conclusion_holds());
    }
}

TEST(SubalgebraWitness, RejectsOpenSpans) {
  const PrimeField f3(3);
  const Algebra k = k3_minus1(f3);
  EXPECT_NO_THROW(SubalgebraWitness(k, span_of(f3, 3, {2})));
  EXPECT_THROW(SubalgebraWitness(k, span_of(f3, 3, {0, 1})), InvariantViolation);
}

TEST(Transport, IsAnIsomorphismBack) {
  std::mt19937_64 rng(5);
  const PrimeField f(3);
  const Algebra a = k3_minus1(f);
  for (int t = 0; t < 10; ++t) {
    Matrix m(f, 3, 3);
    do {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.set(i, j, static_cast<std::int64_t>(rng() % 3));
    } while (!inverse(m));
    EXPECT_TRUE(is_algebra_morphism(transport(a, m), a, m));
  }
}
