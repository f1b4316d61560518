#include "metabel/datum.hpp"

#include <string>

#include "metabel/errors.hpp"

namespace metabel {

namespace {

void require_shape(const DiscreteBimodule& b) {
  if (b.right.size() != b.dim_p || b.left.size() != b.dim_p)
    throw DimensionMismatch("bimodule needs one right and one left matrix per basis vector of P");
  for (const auto* family : {&b.right, &b.left})
    for (const Matrix& m : *family)
      if (m.rows() != b.dim_v || m.cols() != b.dim_v || m.field() != b.field)
        throw DimensionMismatch("bimodule action matrices must be dimV x dimV over the field");
}

void require_theta_shape(const DiscreteBimodule& b, const CocycleTable& theta) {
  if (theta.size() != b.dim_p * b.dim_p)
    throw DimensionMismatch("cocycle table needs dimP^2 entries");
  for (const Vector& v : theta)
    if (v.size() != b.dim_v || v.field() != b.field)
      throw DimensionMismatch("cocycle values must be vectors of V");
}

bool cocycle_law_holds(const DiscreteBimodule& b, const CocycleTable& theta, std::size_t i,
                       std::size_t j, std::size_t k) {
  const std::size_t m = b.dim_p;
  return b.left[i] * theta[j * m + k] == b.right[k] * theta[i * m + j];
}

// Unvalidated product; only associativity_iff_datum and metabelian_product use it.
Algebra raw_product(const DiscreteBimodule& b, const CocycleTable& theta) {
  const std::size_t m = b.dim_p;
  const std::size_t n = b.dim_v;
  Algebra a(b.field, m + n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t t = 0; t < n; ++t) a.set(j, k, m + t, theta[j * m + k][t]);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) {
        a.set(j, m + i, m + t, b.left[j].at(t, i));
        a.set(m + i, j, m + t, b.right[j].at(t, i));
      }
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < m; ++j) labels.push_back("p" + std::to_string(j + 1));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  a.set_labels(std::move(labels));
  return a;
}

std::vector<Matrix> decode_family(PrimeField f, std::size_t count, std::size_t dim,
                                  std::uint64_t code) {
  std::vector<Matrix> out;
  const std::uint64_t per = saturating_pow(f.p(), dim * dim);
  std::vector<std::uint64_t> codes(count);
  for (std::size_t j = count; j-- > 0;) {
    codes[j] = code % per;
    code /= per;
  }
  for (std::size_t j = 0; j < count; ++j) out.push_back(Matrix::decode(f, dim, dim, codes[j]));
  return out;
}

CocycleTable decode_theta(PrimeField f, std::size_t dim_p, std::size_t dim_v, std::uint64_t code) {
  CocycleTable theta;
  const std::uint64_t per = saturating_pow(f.p(), dim_v);
  std::vector<std::uint64_t> codes(dim_p * dim_p);
  for (std::size_t j = codes.size(); j-- > 0;) {
    codes[j] = code % per;
    code /= per;
  }
  for (std::uint64_t c : codes) theta.push_back(Vector::decode(f, dim_v, c));
  return theta;
}

}  // namespace

DiscreteBimodule DiscreteBimodule::trivial(PrimeField field, std::size_t dim_p, std::size_t dim_v) {
  return DiscreteBimodule{field, dim_p, dim_v, std::vector<Matrix>(dim_p, Matrix(field, dim_v, dim_v)),
                          std::vector<Matrix>(dim_p, Matrix(field, dim_v, dim_v))};
}

BimoduleReport validate_bimodule(const DiscreteBimodule& b) {
  require_shape(b);
  BimoduleReport report;
  for (std::size_t i = 0; i < b.dim_p; ++i)
    for (std::size_t j = 0; j < b.dim_p; ++j) {
      if (!(b.right[j] * b.right[i]).is_zero())
        report.violations.push_back({BimoduleLaw::RightRight, i, j});
      if (!(b.left[i] * b.left[j]).is_zero())
        report.violations.push_back({BimoduleLaw::LeftLeft, i, j});
      if (b.left[i] * b.right[j] != b.right[j] * b.left[i])
        report.violations.push_back({BimoduleLaw::Commute, i, j});
    }
  return report;
}

std::string describe(const BimoduleViolation& v) {
  const std::string idx = " (i=" + std::to_string(v.i) + ", j=" + std::to_string(v.j) + ")";
  switch (v.law) {
    case BimoduleLaw::RightRight:
      return "disc1: R_j R_i != 0" + idx;
    case BimoduleLaw::LeftLeft:
      return "disc1: L_i L_j != 0" + idx;
    case BimoduleLaw::Commute:
      return "disc1: L_i R_j != R_j L_i" + idx;
  }
  return "disc1";
}

CocycleTable zero_cocycle(PrimeField field, std::size_t dim_p, std::size_t dim_v) {
  return CocycleTable(dim_p * dim_p, Vector(field, dim_v));
}

CocycleReport validate_cocycle(const DiscreteBimodule& b, const CocycleTable& theta) {
  if (auto br = validate_bimodule(b); !br.valid())
    throw InvalidBimodule(describe(br.violations.front()));
  require_theta_shape(b, theta);
  CocycleReport report;
  for (std::size_t i = 0; i < b.dim_p; ++i)
    for (std::size_t j = 0; j < b.dim_p; ++j)
      for (std::size_t k = 0; k < b.dim_p; ++k)
        if (!cocycle_law_holds(b, theta, i, j, k)) report.violations.push_back({i, j, k});
  return report;
}

MetabelianDatum make_datum(DiscreteBimodule bimodule, CocycleTable theta) {
  if (auto br = validate_bimodule(bimodule); !br.valid())
    throw InvalidDatum(describe(br.violations.front()));
  auto cr = validate_cocycle(bimodule, theta);
  if (!cr.valid()) {
    const auto& v = cr.violations.front();
    throw InvalidDatum("discoc: p_i |> theta(p_j, p_k) != theta(p_i, p_j) <| p_k (i=" +
                       std::to_string(v.i) + ", j=" + std::to_string(v.j) +
                       ", k=" + std::to_string(v.k) + ")");
  }
  return MetabelianDatum{std::move(bimodule), std::move(theta)};
}

ExtensionTriple metabelian_product(const MetabelianDatum& d) {
  // Re-validate: the datum may have been assembled field by field.
  MetabelianDatum checked = make_datum(d.bimodule, d.theta);
  Algebra a = raw_product(checked.bimodule, checked.theta);
  if (!is_associative(a))
    throw InternalError("metabelian_product: product of a valid datum is not associative");
  if (!is_metabelian(a))
    throw InternalError("metabelian_product: product of a valid datum is not metabelian");
  return ExtensionTriple{std::move(a), d.bimodule.dim_p, d.bimodule.dim_v};
}

AssociativityCensus associativity_iff_datum(std::size_t dim_p, std::size_t dim_v, PrimeField field,
                                            std::uint64_t budget) {
  const std::uint64_t family = saturating_pow(field.p(), dim_p * dim_v * dim_v);
  const std::uint64_t thetas = saturating_pow(field.p(), dim_p * dim_p * dim_v);
  const std::uint64_t total = saturating_pow(family, 2) == UINT64_MAX || thetas == UINT64_MAX
                                  ? UINT64_MAX
                                  : saturating_pow(family, 2) * thetas;
  if (total > budget) throw BudgetExceeded("datum triple enumeration", total, budget);

  AssociativityCensus census;
  for (std::uint64_t rc = 0; rc < family; ++rc)
    for (std::uint64_t lc = 0; lc < family; ++lc) {
      DiscreteBimodule b{field, dim_p, dim_v, decode_family(field, dim_p, dim_v, rc),
                         decode_family(field, dim_p, dim_v, lc)};
      const bool bimodule_ok = validate_bimodule(b).valid();
      for (std::uint64_t tc = 0; tc < thetas; ++tc) {
        CocycleTable theta = decode_theta(field, dim_p, dim_v, tc);
        bool laws = bimodule_ok;
        for (std::size_t i = 0; laws && i < dim_p; ++i)
          for (std::size_t j = 0; laws && j < dim_p; ++j)
            for (std::size_t k = 0; laws && k < dim_p; ++k)
              laws = cocycle_law_holds(b, theta, i, j, k);
        const bool assoc = is_associative(raw_product(b, theta));
        ++census.triples;
        census.datum_valid += laws;
        census.associative += assoc;
        census.disagreements += laws != assoc;
      }
    }
  return census;
}

Decomposition decompose(const Algebra& a) {
  if (!is_associative(a) || !is_metabelian(a))
    throw NotMetabelian("decompose: algebra is not metabelian");
  const PrimeField& f = a.field();
  const std::size_t n = a.dim();
  Subspace derived = derived_subalgebra(a);
  const std::size_t dim_v = derived.dim();
  const std::size_t dim_p = n - dim_v;

  // Greedy section: extend the canonical basis of A' by standard vectors.
  std::vector<Vector> complement;
  Subspace covered = derived;
  for (std::size_t i = 0; i < n && complement.size() < dim_p; ++i) {
    Vector e = Vector::unit(f, n, i);
    if (covered.contains(e)) continue;
    complement.push_back(e);
    std::vector<Vector> one{e};
    covered = covered + Subspace::span(f, n, one);
  }

  auto coords = [&](const Vector& w) {
    if (!derived.contains(w)) throw InternalError("decompose: product left the derived algebra");
    return Vector(f, derived.coordinates(w));
  };
  const auto& vb = derived.basis();
  DiscreteBimodule bimodule{f, dim_p, dim_v, {}, {}};
  for (std::size_t j = 0; j < dim_p; ++j) {
    std::vector<Vector> rcols;
    std::vector<Vector> lcols;
    for (std::size_t i = 0; i < dim_v; ++i) {
      rcols.push_back(coords(a.multiply(vb[i], complement[j])));
      lcols.push_back(coords(a.multiply(complement[j], vb[i])));
    }
    bimodule.right.push_back(Matrix::from_columns(f, dim_v, rcols));
    bimodule.left.push_back(Matrix::from_columns(f, dim_v, lcols));
  }
  CocycleTable theta;
  for (std::size_t j = 0; j < dim_p; ++j)
    for (std::size_t k = 0; k < dim_p; ++k)
      theta.push_back(coords(a.multiply(complement[j], complement[k])));

  MetabelianDatum datum = [&] {
    try {
      return make_datum(bimodule, theta);
    } catch (const InvalidDatum& e) {
      throw InternalError(std::string("decompose: section produced an invalid datum: ") + e.what());
    }
  }();

  std::vector<Vector> columns = complement;
  columns.insert(columns.end(), vb.begin(), vb.end());
  Matrix iso = Matrix::from_columns(f, n, columns);

  ExtensionTriple product = metabelian_product(datum);
  if (!inverse(iso) || !is_algebra_morphism(product.total, a, iso))
    throw InternalError("decompose: phi(p, x) = s(p) + x is not an algebra isomorphism");
  ExtensionTriple as_extension{transport(a, iso), dim_p, dim_v};
  if (!extension_equivalent(product, as_extension))
    throw InternalError("decompose: product is not extension-equivalent to the algebra");

  return Decomposition{std::move(datum), std::move(iso), Section{std::move(derived), std::move(complement)},
                       std::move(as_extension)};
}

}  // namespace metabel
