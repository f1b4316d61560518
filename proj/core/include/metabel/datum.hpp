#pragma once

// Metabelian datums (P, V, right action, left action, cocycle), the
// metabelian product P * V they define, and the section-based decomposition
// of an arbitrary metabelian algebra into such a product.

#include <cstddef>
#include <string>
#include <vector>

#include "metabel/algcore.hpp"
#include "metabel/exactla.hpp"

namespace metabel {

/// Actions of the basis p_j of P on V:  x <| p_j = right[j] x,  p_j |> x = left[j] x.
struct DiscreteBimodule {
  PrimeField field;
  std::size_t dim_p = 0;
  std::size_t dim_v = 0;
  std::vector<Matrix> right;
  std::vector<Matrix> left;

  static DiscreteBimodule trivial(PrimeField field, std::size_t dim_p, std::size_t dim_v);

  friend bool operator==(const DiscreteBimodule&, const DiscreteBimodule&) = default;
};

enum class BimoduleLaw {
  RightRight,  ///< right[j] right[i] = 0
  LeftLeft,    ///< left[i] left[j] = 0
  Commute,     ///< left[i] right[j] = right[j] left[i]
};

struct BimoduleViolation {
  BimoduleLaw law;
  std::size_t i;
  std::size_t j;
};

struct BimoduleReport {
  std::vector<BimoduleViolation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

BimoduleReport validate_bimodule(const DiscreteBimodule& b);

/// theta(p_j, p_k) stored at index j * dim_p + k.
using CocycleTable = std::vector<Vector>;

CocycleTable zero_cocycle(PrimeField field, std::size_t dim_p, std::size_t dim_v);

/// A failing basis triple of  p_i |> theta(p_j, p_k) = theta(p_i, p_j) <| p_k.
struct CocycleViolation {
  std::size_t i;
  std::size_t j;
  std::size_t k;
};

struct CocycleReport {
  std::vector<CocycleViolation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

/// Throws InvalidBimodule if the bimodule itself is invalid.
CocycleReport validate_cocycle(const DiscreteBimodule& b, const CocycleTable& theta);

struct MetabelianDatum {
  DiscreteBimodule bimodule;
  CocycleTable theta;

  const Vector& theta_at(std::size_t j, std::size_t k) const {
    return theta.at(j * bimodule.dim_p + k);
  }
  friend bool operator==(const MetabelianDatum&, const MetabelianDatum&) = default;
};

/// Validating constructor; throws InvalidDatum naming the failed law.
MetabelianDatum make_datum(DiscreteBimodule bimodule, CocycleTable theta);

/// The algebra on basis (p_1..p_m, x_1..x_n) with
/// (p, x)(q, y) = (0, theta(p, q) + p |> y + x <| q).
ExtensionTriple metabelian_product(const MetabelianDatum& d);

struct AssociativityCensus {
  std::uint64_t triples = 0;
  std::uint64_t datum_valid = 0;
  std::uint64_t associative = 0;
  std::uint64_t disagreements = 0;
};

/// Enumerates every (right, left, theta), valid or not, and compares
/// "the raw product is associative" with "the datum laws hold".
AssociativityCensus associativity_iff_datum(std::size_t dim_p, std::size_t dim_v, PrimeField field,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

/// Linear section of A -> A/A': complement_basis spans a complement of A'.
struct Section {
  Subspace derived;
  std::vector<Vector> complement_basis;
};

struct Decomposition {
  MetabelianDatum datum;
  /// Matrix of phi: P * A' -> A,  phi(p, x) = s(p) + x.
  Matrix iso;
  Section section;
  /// A written on the adapted basis (s(p_1), .., s(p_m), basis of A').
  ExtensionTriple as_extension;
};

/// Throws NotMetabelian.
Decomposition decompose(const Algebra& a);

std::string describe(const BimoduleViolation& v);

}  // namespace metabel
