#pragma once

// Discrete cocycles, coboundaries and their quotient DH^2 for a fixed
// discrete bimodule, and the three-step enumeration of Ext(P_0, V_0):
// bimodules, then cocycle spaces, then coset representatives.

#include <cstddef>
#include <optional>
#include <vector>

#include "metabel/algcore.hpp"
#include "metabel/datum.hpp"
#include "metabel/exactla.hpp"

namespace metabel {

/// theta flattened to F_p^(dimP^2 dimV): coordinate (j * dimP + k) * dimV + t.
Vector flatten(const CocycleTable& theta, std::size_t dim_p, std::size_t dim_v);
CocycleTable unflatten(const Vector& v, std::size_t dim_p, std::size_t dim_v);

struct CocycleSpace {
  DiscreteBimodule bimodule;
  Subspace space;
  std::size_t ambient_dim() const noexcept { return space.ambient_dim(); }
};

struct CoboundarySpace {
  DiscreteBimodule bimodule;
  Subspace space;
};

struct DH2 {
  QuotientSpace quotient;
  std::size_t size() const noexcept { return quotient.size(); }
};

/// Solution space of p_i |> theta(p_j, p_k) = theta(p_i, p_j) <| p_k.
CocycleSpace cocycle_space(const DiscreteBimodule& b);

/// Matrix of r -> dr, (dr)(p, q) = p |> r(q) + r(p) <| q, with r flattened
/// row-major as a dimV x dimP matrix (column j is r(p_j)).
Matrix coboundary_matrix(const DiscreteBimodule& b);

/// Image of the coboundary map; throws InternalError unless it lies in the cocycles.
CoboundarySpace coboundary_space(const DiscreteBimodule& b);

DH2 dh2(const DiscreteBimodule& b, std::uint64_t budget = kDefaultEnumerationBudget);

/// Lexicographically minimal r (as a dimV x dimP matrix) with
/// theta1 = theta2 + dr, or nullopt. Throws BimoduleMismatch.
std::optional<Matrix> cohomologous(const MetabelianDatum& d1, const MetabelianDatum& d2);

/// Every valid bimodule structure, in (right, left) encoding order.
std::vector<DiscreteBimodule> enumerate_bimodules(std::size_t dim_p, std::size_t dim_v,
                                                  PrimeField field,
                                                  std::uint64_t budget = kDefaultEnumerationBudget);

/// Every metabelian datum: each bimodule paired with each element of its cocycle space.
std::vector<MetabelianDatum> enumerate_datums(std::size_t dim_p, std::size_t dim_v,
                                              PrimeField field,
                                              std::uint64_t budget = kDefaultEnumerationBudget);

struct ExtCatalogEntry {
  std::size_t bimodule_id = 0;
  DiscreteBimodule bimodule;
  CocycleTable theta_rep;
  Algebra algebra;
};

struct BimoduleSummary {
  std::size_t bimodule_id = 0;
  std::uint64_t cocycles = 0;     ///< |DZ^2|
  std::uint64_t coboundaries = 0; ///< |B^2|
  std::uint64_t classes = 0;      ///< |DH^2|
};

struct ExtCatalog {
  PrimeField field;
  std::size_t dim_p = 0;
  std::size_t dim_v = 0;
  std::vector<DiscreteBimodule> bimodules;
  std::vector<BimoduleSummary> summaries;
  std::vector<ExtCatalogEntry> entries;
  std::uint64_t datum_count = 0;
  bool verified = false;
};

struct ExtOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// Check by brute-force extension equivalence that every datum matches exactly one entry.
  bool verify = true;
};

ExtCatalog ext_enumerate(std::size_t dim_p, std::size_t dim_v, PrimeField field,
                         const ExtOptions& options = {});

/// Number of extension-equivalence classes among the given extensions,
/// computed by pairwise brute-force search only.
std::size_t count_extension_classes(const std::vector<ExtensionTriple>& extensions);

}  // namespace metabel
