#include "acceptance_suite.hpp"

#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "metabel/algcore.hpp"
#include "metabel/codimone.hpp"
#include "metabel/cohomo.hpp"
#include "metabel/datum.hpp"
#include "metabel/dimone.hpp"
#include "metabel/errors.hpp"
#include "metabel/exactla.hpp"

namespace metabel::acceptance {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Corpus {
  std::string name;
  std::vector<Algebra> algebras;
};

std::vector<Corpus> corpora() {
  return {
      {"dim2/F2", enumerate_associative_algebras(2, PrimeField(2))},
      {"dim2/F3", enumerate_associative_algebras(2, PrimeField(3))},
      {"dim3/F2 (pruned)", enumerate_associative_algebras(3, PrimeField(2))},
  };
}

bool derived_is_abelian(const Algebra& a) { return is_abelian_subspace(a, derived_subalgebra(a)); }

Outcome datum_iff_associative() {
  struct Case {
    std::size_t dim_p, dim_v;
    std::uint32_t p;
    std::uint64_t expected_triples;
  };
  const Case cases[] = {{1, 1, 2, 8}, {1, 1, 3, 27}, {1, 2, 2, 1024}};
  std::ostringstream d;
  bool pass = true;
  for (const Case& c : cases) {
    auto census = associativity_iff_datum(c.dim_p, c.dim_v, PrimeField(c.p));
    pass = pass && census.triples == c.expected_triples && census.disagreements == 0 &&
           census.datum_valid == census.associative;
    d << "(" << c.dim_p << "," << c.dim_v << ")/F" << c.p << ": " << census.triples << " triples, "
      << census.datum_valid << " datums, " << census.disagreements << " disagreements; ";
  }
  return {pass, d.str()};
}

Outcome metabelian_characterisation(const std::vector<Corpus>& cs) {
  std::ostringstream d;
  bool pass = true;
  for (const Corpus& c : cs) {
    std::size_t metabelian = 0, exceptions = 0, cube_mismatch = 0;
    for (const Algebra& a : c.algebras) {
      const bool derived_abelian = derived_is_abelian(a);
      const bool four_fold = four_fold_products_vanish(a);
      metabelian += derived_abelian;
      exceptions += derived_abelian != four_fold;
      cube_mismatch += derived_abelian != nilpotency_index_at_most(a, 3);
    }
    pass = pass && exceptions == 0;
    d << c.name << ": " << c.algebras.size() << " algebras, " << metabelian << " metabelian, "
      << exceptions << " exceptions (A^3=0 differs on " << cube_mismatch << "); ";
  }
  // Every metabelian product has vanishing four-fold products.
  std::size_t products = 0, bad = 0;
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {1, 2}, {2, 1}};
  for (std::uint32_t p : {2u, 3u})
    for (auto [dp, dv] : shapes) {
      if (p == 3 && dv == 2) continue;
      for (const MetabelianDatum& datum : enumerate_datums(dp, dv, PrimeField(p))) {
        ++products;
        bad += !four_fold_products_vanish(metabelian_product(datum).total);
      }
    }
  pass = pass && bad == 0;
  d << products << " metabelian products, " << bad << " with a nonzero four-fold product";
  return {pass, d.str()};
}

Outcome decomposition_round_trip(const std::vector<Corpus>& cs) {
  std::ostringstream d;
  bool pass = true;
  for (const Corpus& c : cs) {
    std::size_t metabelian = 0, ok = 0;
    for (const Algebra& a : c.algebras) {
      if (!derived_is_abelian(a)) continue;
      ++metabelian;
      try {
        Decomposition dec = decompose(a);
        ExtensionTriple product = metabelian_product(dec.datum);
        const bool iso = inverse(dec.iso).has_value() && is_algebra_morphism(product.total, a, dec.iso);
        const bool equivalent = extension_equivalent(product, dec.as_extension).has_value();
        ok += iso && equivalent;
      } catch (const Error&) {
      }
    }
    pass = pass && ok == metabelian;
    d << c.name << ": " << ok << "/" << metabelian << " reproduced; ";
  }
  return {pass, d.str()};
}

Outcome abelian_sum_implies_metabelian(const std::vector<Corpus>& cs) {
  std::ostringstream d;
  bool pass = true;
  for (const Corpus& c : cs) {
    std::size_t decomposable = 0, counterexamples = 0;
    for (const Algebra& a : c.algebras) {
      auto pair = find_abelian_sum(a);
      if (!pair) continue;
      ++decomposable;
      ItoReport r = ito_check(a, pair->first, pair->second);
      counterexamples += !(r.hypotheses_hold() && derived_is_abelian(a) && r.four_fold_zero);
    }
    pass = pass && counterexamples == 0;
    d << c.name << ": " << decomposable << " sums of two abelian subalgebras, " << counterexamples
      << " counterexamples; ";
  }
  return {pass, d.str()};
}

Outcome isomorphism_iff_homothety(std::size_t jobs) {
  std::ostringstream d;
  bool pass = true;
  for (std::uint32_t p : {2u, 3u}) {
    Theorem2Report r = theorem2_agreement(2, PrimeField(p), jobs);
    const std::uint64_t forms = p == 2 ? 16 : 81;
    pass = pass && r.forms == forms && r.pairs == forms * forms && r.disagreements == 0;
    if (p == 2) pass = pass && r.homothety_isometry_differences == 0;
    d << "n=2/F" << p << ": " << r.pairs << " pairs, " << r.disagreements << " disagreements, "
      << r.homothety_classes << " homothety classes, " << r.isometry_classes << " isometry classes; ";
  }
  const PrimeField f3(3);
  BilinearForm one(Matrix::from_ints(f3, {{1}}));
  BilinearForm two(Matrix::from_ints(f3, {{2}}));
  const bool hom = homothetic(one, two).has_value();
  const bool iso = isometric(one, two).has_value();
  pass = pass && hom && !iso;
  d << "(1) vs (2) over F3: homothetic=" << hom << ", isometric=" << iso;
  return {pass, d.str()};
}

Outcome automorphism_group_matches() {
  std::size_t checked = 0, ok = 0;
  for (const BilinearForm& t : form_census(2, PrimeField(2))) {
    if (t.is_zero()) continue;
    ++checked;
    ok += verify_aut_group(t).ok();
  }
  std::ostringstream d;
  d << ok << "/" << checked << " nonzero forms with |G| = |Aut|, closed law and bijection";
  return {ok == checked && checked == 15, d.str()};
}

Outcome codimension_one_counts() {
  struct Case {
    std::size_t dim_v;
    std::uint32_t p;
    std::uint64_t anchor;  // 0 if none
  };
  const Case cases[] = {{1, 2, 2}, {2, 2, 0}, {1, 3, 3}};
  std::ostringstream d;
  bool pass = true;
  for (const Case& c : cases) {
    ExtKReport r = ext_k_census(c.dim_v, PrimeField(c.p));
    pass = pass && r.ok() && (c.anchor == 0 || r.quotient_sum == c.anchor);
    d << "dimV=" << c.dim_v << "/F" << c.p << ": " << r.quotient_sum << " / " << r.catalog_size << " / "
      << r.brute_force_classes << "; ";
  }
  return {pass, d.str()};
}

Outcome bilinear_forms_parametrise() {
  std::ostringstream d;
  bool pass = true;
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n : {1u, 2u}) {
      const PrimeField f(p);
      ExtCatalog cat = ext_enumerate(n, 1, f);
      const std::uint64_t expected = saturating_pow(p, n * n);
      const bool trivial = cat.bimodules.size() == 1 && cat.bimodules.front() == DiscreteBimodule::trivial(f, n, 1);
      pass = pass && cat.entries.size() == expected && trivial && cat.verified;
      d << "n=" << n << "/F" << p << ": " << cat.entries.size() << " classes (p^(n^2)=" << expected << ")"
        << (trivial ? "" : " non-trivial bimodule") << "; ";
    }
  return {pass, d.str()};
}

Outcome catalog_regression() {
  std::size_t instances = 0, ok = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const PrimeField f(p);
    for (const CatalogEntry& e : catalog_entries()) {
      if (!e.is_algebra) continue;
      std::vector<CatalogParams> params;
      if (e.params.empty()) {
        params.push_back({});
      } else {
        for (std::int64_t a = 0; a < p; ++a)
          for (std::int64_t b = 0; b < p; ++b) params.push_back({a, b});
      }
      for (const CatalogParams& cp : params) {
        ++instances;
        try {
          const Algebra alg = std::get<Algebra>(catalog(e.id, f, cp));
          const BilinearForm form = std::get<BilinearForm>(catalog(e.form, f, cp));
          const Algebra built = build_P_theta(form).total;
          ok += built == alg && is_associative(alg) && is_metabelian(alg) && derived_subalgebra(alg).dim() == 1;
        } catch (const Error&) {
        }
      }
    }
  }
  std::ostringstream d;
  d << ok << "/" << instances << " catalog instances over F3, F5, F7 reproduce P_theta exactly";
  return {ok == instances && instances > 0, d.str()};
}

Outcome linear_algebra_substrate() {
  std::mt19937_64 rng(20240611);
  std::size_t failures = 0, trials = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    std::uniform_int_distribution<Elem> entry(0, p - 1);
    for (int t = 0; t < 50; ++t) {
      ++trials;
      const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      Matrix m(f, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, entry(rng));
      const Rref r = rref(m);
      bool ok = r.rank + kernel(m).dim() == cols;
      ok = ok && rref(r.form).form == r.form;
      // Canonical form: the row space is unchanged by invertible row operations.
      Matrix g = Matrix::identity(f, rows);
      for (std::size_t i = 0; i + 1 < rows; ++i) g.set(i, i + 1, entry(rng));
      ok = ok && Subspace::row_space(g * m) == Subspace::row_space(m);
      // Quotient transversal: |A / B| = p^(dim A - dim B).
      const Subspace a = Subspace::row_space(m);
      std::vector<Vector> sub;
      for (std::size_t i = 0; i < a.dim(); i += 2) sub.push_back(a.basis()[i]);
      const Subspace b = Subspace::span(f, cols, sub);
      ok = ok && quotient(a, b).size() == saturating_pow(p, a.dim() - b.dim());
      failures += !ok;
    }
  }
  const std::size_t gl22 = gl_enumerate(2, PrimeField(2)).size();
  const std::size_t gl23 = gl_enumerate(2, PrimeField(3)).size();
  std::ostringstream d;
  d << trials - failures << "/" << trials << " random instances; |GL(2,F2)|=" << gl22 << ", |GL(2,F3)|=" << gl23;
  return {failures == 0 && gl22 == 6 && gl23 == 48, d.str()};
}

CriterionResult run_one(int id, std::string title, const std::function<Outcome()>& body) {
  CriterionResult r{id, std::move(title), false, "", 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = body();
    r.pass = o.pass;
    r.detail = std::move(o.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<CriterionResult> out;
  out.push_back(run_one(1, "datum laws <=> associativity", datum_iff_associative));

  std::vector<Corpus> cs;
  try {
    cs = corpora();
  } catch (const std::exception& e) {
    for (int id : {2, 3, 4})
      out.push_back(CriterionResult{id, "corpus", false, std::string("corpus enumeration failed: ") + e.what(), 0});
  }
  if (!cs.empty()) {
    out.push_back(run_one(2, "derived algebra abelian <=> xyzt = 0",
                          [&] { return metabelian_characterisation(cs); }));
    out.push_back(run_one(3, "decompose then product reproduces the algebra",
                          [&] { return decomposition_round_trip(cs); }));
    out.push_back(run_one(4, "sum of two abelian subalgebras is metabelian",
                          [&] { return abelian_sum_implies_metabelian(cs); }));
  }
  out.push_back(run_one(5, "P_theta isomorphism <=> homothety",
                        [&] { return isomorphism_iff_homothety(options.jobs); }));
  out.push_back(run_one(6, "G(P, theta) realises Aut(P_theta)", automorphism_group_matches));
  out.push_back(run_one(7, "codimension one: three class counts agree", codimension_one_counts));
  out.push_back(run_one(8, "Ext(P, k) is parametrised by bilinear forms", bilinear_forms_parametrise));
  out.push_back(run_one(9, "canonical-form catalog regression", catalog_regression));
  out.push_back(run_one(10, "linear algebra substrate", linear_algebra_substrate));
  return out;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    out << (r.pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.title << "  ("
        << std::fixed << std::setprecision(2) << r.seconds << "s)\n"
        << "        " << r.detail << "\n";
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace metabel::acceptance
