#include "metabel/codimone.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "metabel/cohomo.hpp"
#include "metabel/errors.hpp"

namespace metabel {

std::optional<TPair> validate_tpair(const Matrix& x, const Matrix& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows() || x.field() != y.field())
    throw DimensionMismatch("a T-pair needs two square matrices of the same size over one field");
  if (!(x * x).is_zero() || !(y * y).is_zero() || x * y != y * x) return std::nullopt;
  return TPair{x, y};
}

std::vector<Matrix> square_zero_matrices(std::size_t n, PrimeField field, std::uint64_t budget) {
  std::vector<Matrix> out;
  for_each_matrix(n, n, field, [&](const Matrix& m) {
    if ((m * m).is_zero()) out.push_back(m);
  }, budget);
  return out;
}

void for_each_tpair(std::size_t n, PrimeField field, const std::function<void(const TPair&)>& visit,
                    std::uint64_t budget) {
  const auto sq = square_zero_matrices(n, field, budget);
  const std::uint64_t candidates = static_cast<std::uint64_t>(sq.size()) * sq.size();
  if (candidates > budget) throw BudgetExceeded("T-pair enumeration", candidates, budget);
  for (const Matrix& x : sq)
    for (const Matrix& y : sq)
      if (x * y == y * x) visit(TPair{x, y});
}

std::vector<TPair> enumerate_T(std::size_t n, PrimeField field, std::uint64_t budget) {
  std::vector<TPair> out;
  for_each_tpair(n, field, [&](const TPair& t) { out.push_back(t); }, budget);
  return out;
}

Subspace equalizer(const TPair& t) { return kernel(t.x - t.y); }

Subspace im_sum(const TPair& t) {
  if (!((t.x - t.y) * (t.x + t.y)).is_zero())
    throw InternalError("im_sum: (X - Y)(X + Y) != 0 for a T-pair");
  Subspace im = image(t.x + t.y);
  if (!equalizer(t).contains(im)) throw InternalError("im_sum: Im(X + Y) is not inside Ker(X - Y)");
  return im;
}

std::vector<ExtClassRep> ext_classes(const TPair& t, std::uint64_t budget) {
  std::vector<ExtClassRep> out;
  const QuotientSpace q = quotient(equalizer(t), im_sum(t), budget);
  for (const Vector& u : q.transversal())
    out.push_back(ExtClassRep{t, u});
  return out;
}

MetabelianDatum to_datum(const ExtClassRep& rep) {
  const TPair& t = rep.pair;
  if (rep.u.size() != t.n() || rep.u.field() != t.field())
    throw DimensionMismatch("u must be a vector of V");
  if (!equalizer(t).contains(rep.u)) throw InvalidParams("u is not in Ker(X - Y)");
  return make_datum(DiscreteBimodule{t.field(), 1, t.n(), {t.x}, {t.y}}, CocycleTable{rep.u});
}

ExtensionTriple build_algebra(const ExtClassRep& rep) {
  ExtensionTriple e = metabelian_product(to_datum(rep));
  std::vector<std::string> labels{"F"};
  for (std::size_t i = 0; i < rep.pair.n(); ++i) labels.push_back("E" + std::to_string(i + 1));
  e.total.set_labels(std::move(labels));
  return e;
}

namespace {

using DatumKey = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;

DatumKey key_of(const MetabelianDatum& d) {
  return {d.bimodule.right.at(0).encode(), d.bimodule.left.at(0).encode(), d.theta.at(0).encode()};
}

}  // namespace

MetKVReport met_kv_census(std::size_t dim_v, PrimeField field, std::uint64_t budget) {
  MetKVReport r;
  r.dim_v = dim_v;
  r.p = field.p();

  std::set<DatumKey> datums;
  for (const MetabelianDatum& d : enumerate_datums(1, dim_v, field, budget)) datums.insert(key_of(d));
  r.datum_count = datums.size();

  std::set<DatumKey> images;
  const std::uint64_t vectors = saturating_pow(field.p(), dim_v);
  bool all_images_valid = true;
  for (const TPair& t : enumerate_T(dim_v, field, budget)) {
    r.kernel_sum += equalizer(t).cardinality();
    for (std::uint64_t code = 0; code < vectors; ++code) {
      Vector zeta = Vector::decode(field, dim_v, code);
      if (t.x * zeta != t.y * zeta) continue;
      ++r.triple_count;
      try {
        images.insert(key_of(to_datum(ExtClassRep{t, zeta})));
      } catch (const InvalidDatum&) {
        all_images_valid = false;
      }
    }
  }
  r.bijection_ok = all_images_valid && images.size() == r.triple_count && images == datums;
  return r;
}

ExtKReport ext_k_census(std::size_t dim_v, PrimeField field, std::uint64_t budget) {
  ExtKReport r;
  r.dim_v = dim_v;
  r.p = field.p();
  for (const TPair& t : enumerate_T(dim_v, field, budget)) r.quotient_sum += ext_classes(t, budget).size();
  r.catalog_size = ext_enumerate(1, dim_v, field, ExtOptions{budget, false}).entries.size();

  std::vector<ExtensionTriple> all;
  for (const MetabelianDatum& d : enumerate_datums(1, dim_v, field, budget))
    all.push_back(metabelian_product(d));
  r.brute_force_classes = count_extension_classes(all);
  return r;
}

}  // namespace metabel
