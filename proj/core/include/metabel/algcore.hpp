#pragma once

// Finite-dimensional algebras given by structure constants, the predicates
// that characterise metabelian algebras, and brute-force isomorphism,
// automorphism and extension-equivalence searches for small instances.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metabel/exactla.hpp"

namespace metabel {

/// e_i e_j = sum_k c(i, j, k) e_k. Associativity is a checked predicate, not an invariant.
class Algebra {
public:
  Algebra(PrimeField field, std::size_t dim);
  Algebra(PrimeField field, std::size_t dim, std::vector<Elem> sc,
          std::vector<std::string> labels = {});
  static Algebra abelian(PrimeField field, std::size_t dim) { return Algebra(field, dim); }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  Elem c(std::size_t i, std::size_t j, std::size_t k) const {
    return sc_[(i * dim_ + j) * dim_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, std::int64_t value);
  std::span<const Elem> structure_constants() const noexcept { return sc_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);

  Vector basis_product(std::size_t i, std::size_t j) const;
  Vector multiply(const Vector& x, const Vector& y) const;
  bool is_abelian() const noexcept;

  /// Structure-constant equality; labels are presentation only.
  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.sc_ == b.sc_;
  }

private:
  PrimeField field_;
  std::size_t dim_;
  std::vector<Elem> sc_;
  std::vector<std::string> labels_;
};

Vector multiply(const Algebra& a, const Vector& x, const Vector& y);

bool is_associative(const Algebra& a);

/// Span of all products x y.
Subspace derived_subalgebra(const Algebra& a);

/// span{x y : x in s, y in t}.
Subspace span_product(const Algebra& a, const Subspace& s, const Subspace& t);

/// True iff every product of m elements vanishes (A^m = 0). Throws NotAssociative.
bool nilpotency_index_at_most(const Algebra& a, std::size_t m);

/// Smallest m with A^m = 0, or nullopt if A is not nilpotent. Throws NotAssociative.
std::optional<std::size_t> nilpotency_index(const Algebra& a);

/// True iff the derived subalgebra is abelian; cross-checked against the
/// vanishing of all four-fold products. Throws NotAssociative.
bool is_metabelian(const Algebra& a);

bool is_subalgebra(const Algebra& a, const Subspace& s);
/// s * s = 0 (such a subspace is automatically a subalgebra).
bool is_abelian_subspace(const Algebra& a, const Subspace& s);

/// Multiplicatively closed subspace of an algebra.
class SubalgebraWitness {
public:
  /// Throws InvariantViolation if span is not closed under multiplication.
  SubalgebraWitness(const Algebra& algebra, Subspace span);
  const Subspace& span() const noexcept { return span_; }

private:
  Subspace span_;
};

/// True iff the linear map (columns = images of basis vectors) satisfies
/// f(e_i e_j) = f(e_i) f(e_j) for all basis pairs.
bool is_algebra_morphism(const Algebra& from, const Algebra& to, const Matrix& map);

/// The algebra b on the basis given by the columns of `basis` (invertible),
/// so that `basis` is an isomorphism b -> a.
Algebra transport(const Algebra& a, const Matrix& basis);

struct SearchOptions {
  std::uint64_t budget = kDefaultSearchBudget;  ///< bound on p^(n^2)
  bool invariant_prefilter = true;              ///< reject early on differing invariants
};

/// Some invertible C with C(xy) = C(x) C(y), or nullopt after exhausting GL(n, p).
std::optional<Matrix> find_isomorphism(const Algebra& a, const Algebra& b,
                                       const SearchOptions& options = {});

/// All automorphisms, sorted by encoding; verified to form a group.
std::vector<Matrix> automorphism_group(const Algebra& a, const SearchOptions& options = {});

/// Total algebra whose first p_dim basis vectors project onto P and whose last
/// v_dim basis vectors span the embedded V.
struct ExtensionTriple {
  Algebra total;
  std::size_t p_dim = 0;
  std::size_t v_dim = 0;
};

/// V-span is an ideal killed by the projection and both V and the quotient are abelian.
bool is_metabelian_extension(const ExtensionTriple& e);

/// Searches phi(p, x) = (p, x + r(p)) over every linear r: P -> V; returns the
/// matrix of the first algebra map e1.total -> e2.total found.
std::optional<Matrix> extension_equivalent(const ExtensionTriple& e1, const ExtensionTriple& e2);

struct ItoReport {
  bool p_subalgebra = false;
  bool v_subalgebra = false;
  bool p_abelian = false;
  bool v_abelian = false;
  bool spans_sum = false;
  bool metabelian = false;
  bool four_fold_zero = false;

  bool hypotheses_hold() const noexcept {
    return p_subalgebra && v_subalgebra && p_abelian && v_abelian && spans_sum;
  }
  bool conclusion_holds() const noexcept { return metabelian && four_fold_zero; }
};

/// Checks A = P0 + V0 with P0, V0 abelian subalgebras and records whether A is
/// metabelian. Throws HypothesisFailed naming the first violated hypothesis.
ItoReport ito_check(const Algebra& a, const Subspace& p_span, const Subspace& v_span);

/// First pair (P0, V0) of abelian subalgebras with P0 + V0 = A, in subspace
/// enumeration order.
std::optional<std::pair<Subspace, Subspace>> find_abelian_sum(const Algebra& a);

/// True iff every product of four basis elements vanishes.
bool four_fold_products_vanish(const Algebra& a);

struct CorpusOptions {
  /// Without pruning: bound on p^(n^3). With pruning: bound on visited search nodes.
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool pruning = true;
};

/// Every associative structure-constant tensor of dimension n, in increasing
/// encoding order (c(0,0,0) most significant).
void for_each_associative_algebra(std::size_t n, PrimeField field,
                                  const std::function<void(const Algebra&)>& visit,
                                  const CorpusOptions& options = {});
std::vector<Algebra> enumerate_associative_algebras(std::size_t n, PrimeField field,
                                                    const CorpusOptions& options = {});

}  // namespace metabel
