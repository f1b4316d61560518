#include "metabel/cohomo.hpp"

#include <string>

#include "metabel/errors.hpp"

namespace metabel {

Vector flatten(const CocycleTable& theta, std::size_t dim_p, std::size_t dim_v) {
  if (theta.size() != dim_p * dim_p) throw DimensionMismatch("cocycle table has wrong size");
  if (theta.empty()) throw DimensionMismatch("cannot flatten an empty cocycle table");
  const PrimeField f = theta.front().field();
  Vector out(f, dim_p * dim_p * dim_v);
  for (std::size_t jk = 0; jk < theta.size(); ++jk) {
    if (theta[jk].size() != dim_v) throw DimensionMismatch("cocycle value has wrong length");
    for (std::size_t t = 0; t < dim_v; ++t) out.set(jk * dim_v + t, theta[jk][t]);
  }
  return out;
}

CocycleTable unflatten(const Vector& v, std::size_t dim_p, std::size_t dim_v) {
  if (v.size() != dim_p * dim_p * dim_v) throw DimensionMismatch("flattened cocycle has wrong length");
  CocycleTable theta;
  for (std::size_t jk = 0; jk < dim_p * dim_p; ++jk) {
    Vector x(v.field(), dim_v);
    for (std::size_t t = 0; t < dim_v; ++t) x.set(t, v[jk * dim_v + t]);
    theta.push_back(std::move(x));
  }
  return theta;
}

namespace {

void require_valid(const DiscreteBimodule& b) {
  if (auto r = validate_bimodule(b); !r.valid()) throw InvalidBimodule(describe(r.violations.front()));
}

CocycleTable coboundary_of(const DiscreteBimodule& b, const Matrix& r) {
  const std::size_t m = b.dim_p;
  CocycleTable out;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) out.push_back(b.left[j] * r.column(k) + b.right[k] * r.column(j));
  return out;
}

}  // namespace

CocycleSpace cocycle_space(const DiscreteBimodule& b) {
  require_valid(b);
  const std::size_t m = b.dim_p;
  const std::size_t n = b.dim_v;
  const PrimeField& f = b.field;
  const std::size_t vars = m * m * n;
  auto var = [&](std::size_t j, std::size_t k, std::size_t s) { return (j * m + k) * n + s; };
  // One equation per (i, j, k, t):  (L_i theta_jk)_t - (R_k theta_ij)_t = 0.
  std::vector<Elem> rows(m * m * m * n * vars, 0);
  std::size_t eq = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < n; ++t, ++eq) {
          Elem* row = rows.data() + eq * vars;
          for (std::size_t s = 0; s < n; ++s) {
            row[var(j, k, s)] = f.add(row[var(j, k, s)], b.left[i].at(t, s));
            row[var(i, j, s)] = f.sub(row[var(i, j, s)], b.right[k].at(t, s));
          }
        }
  Matrix system(f, eq, vars, std::move(rows));
  if (eq == 0) return CocycleSpace{b, Subspace::full(f, vars)};
  return CocycleSpace{b, kernel(system)};
}

Matrix coboundary_matrix(const DiscreteBimodule& b) {
  require_valid(b);
  const std::size_t m = b.dim_p;
  const std::size_t n = b.dim_v;
  std::vector<Vector> columns;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t j = 0; j < m; ++j)
      columns.push_back(flatten(coboundary_of(b, Matrix::unit(b.field, n, m, t, j)), m, n));
  return Matrix::from_columns(b.field, m * m * n, columns);
}

CoboundarySpace coboundary_space(const DiscreteBimodule& b) {
  Subspace space = image(coboundary_matrix(b));
  if (!cocycle_space(b).space.contains(space))
    throw InternalError("coboundary_space: a coboundary is not a cocycle");
  return CoboundarySpace{b, std::move(space)};
}

DH2 dh2(const DiscreteBimodule& b, std::uint64_t budget) {
  CocycleSpace z = cocycle_space(b);
  CoboundarySpace bd = coboundary_space(b);
  return DH2{quotient(z.space, bd.space, budget)};
}

std::optional<Matrix> cohomologous(const MetabelianDatum& d1, const MetabelianDatum& d2) {
  if (!(d1.bimodule == d2.bimodule))
    throw BimoduleMismatch("cohomologous: cocycles belong to different bimodules");
  const DiscreteBimodule& b = d1.bimodule;
  const std::size_t m = b.dim_p;
  const std::size_t n = b.dim_v;
  Vector diff = flatten(d1.theta, m, n) - flatten(d2.theta, m, n);
  auto r = solve(coboundary_matrix(b), diff);
  if (!r) return std::nullopt;
  return Matrix(b.field, n, m, std::vector<Elem>(r->coords().begin(), r->coords().end()));
}

std::vector<DiscreteBimodule> enumerate_bimodules(std::size_t dim_p, std::size_t dim_v,
                                                  PrimeField field, std::uint64_t budget) {
  const std::uint64_t per_matrix = saturating_pow(field.p(), dim_v * dim_v);
  const std::uint64_t family = saturating_pow(per_matrix, dim_p);
  const std::uint64_t total = saturating_pow(family, 2);
  if (total > budget) throw BudgetExceeded("bimodule enumeration", total, budget);

  auto decode = [&](std::uint64_t code) {
    std::vector<Matrix> out(dim_p, Matrix(field, dim_v, dim_v));
    for (std::size_t j = dim_p; j-- > 0;) {
      out[j] = Matrix::decode(field, dim_v, dim_v, code % per_matrix);
      code /= per_matrix;
    }
    return out;
  };
  std::vector<DiscreteBimodule> out;
  for (std::uint64_t rc = 0; rc < family; ++rc) {
    auto right = decode(rc);
    // Right actions must already square to zero among themselves.
    bool right_ok = true;
    for (std::size_t i = 0; right_ok && i < dim_p; ++i)
      for (std::size_t j = 0; right_ok && j < dim_p; ++j)
        right_ok = (right[j] * right[i]).is_zero();
    if (!right_ok) continue;
    for (std::uint64_t lc = 0; lc < family; ++lc) {
      DiscreteBimodule b{field, dim_p, dim_v, right, decode(lc)};
      if (validate_bimodule(b).valid()) out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<MetabelianDatum> enumerate_datums(std::size_t dim_p, std::size_t dim_v,
                                              PrimeField field, std::uint64_t budget) {
  std::vector<MetabelianDatum> out;
  for (DiscreteBimodule& b : enumerate_bimodules(dim_p, dim_v, field, budget)) {
    CocycleSpace z = cocycle_space(b);
    const std::uint64_t count = z.space.cardinality();
    if (count > budget || out.size() + count > budget)
      throw BudgetExceeded("datum enumeration", out.size() + count, budget);
    QuotientSpace all = quotient(z.space, Subspace::zero(field, z.ambient_dim()), budget);
    for (const Vector& v : all.transversal())
      out.push_back(MetabelianDatum{b, unflatten(v, dim_p, dim_v)});
  }
  return out;
}

ExtCatalog ext_enumerate(std::size_t dim_p, std::size_t dim_v, PrimeField field,
                         const ExtOptions& options) {
  ExtCatalog catalog{field, dim_p, dim_v, {}, {}, {}, 0, false};
  catalog.bimodules = enumerate_bimodules(dim_p, dim_v, field, options.budget);
  for (std::size_t id = 0; id < catalog.bimodules.size(); ++id) {
    const DiscreteBimodule& b = catalog.bimodules[id];
    CocycleSpace z = cocycle_space(b);
    CoboundarySpace bd = coboundary_space(b);
    DH2 h = dh2(b, options.budget);
    catalog.summaries.push_back(
        BimoduleSummary{id, z.space.cardinality(), bd.space.cardinality(), h.size()});
    catalog.datum_count += z.space.cardinality();
    for (const Vector& rep : h.quotient.transversal()) {
      MetabelianDatum d{b, unflatten(rep, dim_p, dim_v)};
      catalog.entries.push_back(ExtCatalogEntry{id, b, d.theta, metabelian_product(d).total});
    }
  }

  if (options.verify) {
    std::vector<ExtensionTriple> reps;
    for (const auto& e : catalog.entries) reps.push_back(ExtensionTriple{e.algebra, dim_p, dim_v});
    for (const MetabelianDatum& d : enumerate_datums(dim_p, dim_v, field, options.budget)) {
      ExtensionTriple ext = metabelian_product(d);
      std::size_t matches = 0;
      for (const auto& rep : reps)
        if (extension_equivalent(ext, rep)) ++matches;
      if (matches != 1)
        throw InternalError("ext_enumerate: a datum matches " + std::to_string(matches) +
                            " catalog entries instead of exactly one");
    }
    catalog.verified = true;
  }
  return catalog;
}

std::size_t count_extension_classes(const std::vector<ExtensionTriple>& extensions) {
  std::vector<const ExtensionTriple*> reps;
  for (const ExtensionTriple& e : extensions) {
    bool found = false;
    for (const ExtensionTriple* r : reps)
      if (extension_equivalent(*r, e)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(&e);
  }
  return reps.size();
}

}  // namespace metabel
