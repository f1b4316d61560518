#pragma once

// Metabelian algebras k * V whose derived algebra has codimension one:
// pairs (X, Y) of commuting square-zero matrices, the equalizer Ker(X - Y),
// its quotient by Im(X + Y), and the algebras k^{n+1}_{X,Y,u}.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "metabel/algcore.hpp"
#include "metabel/datum.hpp"
#include "metabel/exactla.hpp"

namespace metabel {

/// X^2 = Y^2 = 0 and XY = YX. X is the right action x <| F, Y the left action F |> x.
struct TPair {
  Matrix x;
  Matrix y;

  const PrimeField& field() const noexcept { return x.field(); }
  std::size_t n() const noexcept { return x.rows(); }
  friend bool operator==(const TPair&, const TPair&) = default;
};

/// Throws DimensionMismatch for non-square or differently shaped matrices.
std::optional<TPair> validate_tpair(const Matrix& x, const Matrix& y);

/// Every n x n matrix with square zero, in encoding order.
std::vector<Matrix> square_zero_matrices(std::size_t n, PrimeField field,
                                         std::uint64_t budget = kDefaultEnumerationBudget);

/// All pairs in T(n), ordered by (X, Y) encodings. The budget bounds p^(n^2)
/// for the square-zero prefilter and the number of candidate pairs tested.
void for_each_tpair(std::size_t n, PrimeField field, const std::function<void(const TPair&)>& visit,
                    std::uint64_t budget = kDefaultEnumerationBudget);
std::vector<TPair> enumerate_T(std::size_t n, PrimeField field,
                               std::uint64_t budget = kDefaultEnumerationBudget);

/// Ker(X - Y).
Subspace equalizer(const TPair& t);
/// Im(X + Y); throws InternalError unless it lies in the equalizer.
Subspace im_sum(const TPair& t);

struct ExtClassRep {
  TPair pair;
  Vector u;
};

/// Lexicographically minimal representatives of Ker(X - Y) / Im(X + Y), sorted.
std::vector<ExtClassRep> ext_classes(const TPair& t, std::uint64_t budget = kDefaultEnumerationBudget);

/// k^{n+1}_{X,Y,u} on the basis (F, E_1..E_n): F F = sum_j u_j E_j,
/// F E_i = sum_j Y(j, i) E_j, E_i F = sum_j X(j, i) E_j, E_i E_j = 0.
/// Throws InvalidParams if u is not in the equalizer.
ExtensionTriple build_algebra(const ExtClassRep& rep);

/// The datum (k, V, X, Y, theta(F, F) = u) behind build_algebra.
MetabelianDatum to_datum(const ExtClassRep& rep);

struct MetKVReport {
  std::size_t dim_v = 0;
  std::uint32_t p = 0;
  std::uint64_t datum_count = 0;   ///< metabelian datums with dimP = 1
  std::uint64_t triple_count = 0;  ///< (X, Y, zeta) with (X, Y) in T and X zeta = Y zeta
  std::uint64_t kernel_sum = 0;    ///< sum over T of |Ker(X - Y)|
  bool bijection_ok = false;       ///< theta(p, q) = pq zeta maps triples onto datums
  bool ok() const noexcept {
    return bijection_ok && datum_count == triple_count && triple_count == kernel_sum;
  }
};

MetKVReport met_kv_census(std::size_t dim_v, PrimeField field,
                          std::uint64_t budget = kDefaultEnumerationBudget);

struct ExtKReport {
  std::size_t dim_v = 0;
  std::uint32_t p = 0;
  std::uint64_t quotient_sum = 0;        ///< sum over T of |Ker(X - Y) / Im(X + Y)|
  std::uint64_t catalog_size = 0;        ///< cohomological enumeration
  std::uint64_t brute_force_classes = 0; ///< pairwise extension equivalence over all datums
  bool ok() const noexcept {
    return quotient_sum == catalog_size && catalog_size == brute_force_classes;
  }
};

ExtKReport ext_k_census(std::size_t dim_v, PrimeField field,
                        std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace metabel
