#pragma once

// Metabelian algebras with one-dimensional derived algebra: P_theta built
// from a bilinear form theta, classification by homothety of forms, the
// automorphism group G(P, theta), and the shipped canonical-form catalogs.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "metabel/algcore.hpp"
#include "metabel/exactla.hpp"

namespace metabel {

/// theta(e_i, e_j) = matrix(i, j).
class BilinearForm {
public:
  explicit BilinearForm(Matrix matrix);
  static BilinearForm zero(PrimeField field, std::size_t n);

  const Matrix& matrix() const noexcept { return matrix_; }
  const PrimeField& field() const noexcept { return matrix_.field(); }
  std::size_t n() const noexcept { return matrix_.rows(); }
  bool is_zero() const noexcept { return matrix_.is_zero(); }

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

private:
  Matrix matrix_;
};

/// u * theta = C^T theta' C.
struct HomothetyWitness {
  Elem u;
  Matrix c;
};

/// (u, lambda, psi) with u theta(p, q) = theta(psi p, psi q); lambda is a
/// functional on P stored as its coordinate row.
struct GElement {
  Elem u;
  Vector lambda;
  Matrix psi;

  friend bool operator==(const GElement&, const GElement&) = default;
};

/// (u, l, psi)(u', l', psi') = (u u', l o psi' + u l', psi psi').
GElement g_compose(const GElement& a, const GElement& b);
GElement g_identity(PrimeField field, std::size_t n);
GElement g_inverse(const GElement& g);

/// Matrix of phi(p, x) = (psi p, lambda(p) + u x) on the basis (F_1..F_n, E).
Matrix g_to_automorphism(const GElement& g);

/// Basis (F_1..F_n, E) with F_i F_j = theta(i, j) E; asserts metabelian and
/// derived dimension 0 or 1.
ExtensionTriple build_P_theta(const BilinearForm& theta);

/// First (u, C) with u ascending and C in GL(n, p) encoding order.
std::optional<HomothetyWitness> homothetic(const BilinearForm& t1, const BilinearForm& t2,
                                           std::uint64_t budget = kDefaultEnumerationBudget);
/// Homothety with u fixed to 1.
std::optional<Matrix> isometric(const BilinearForm& t1, const BilinearForm& t2,
                                std::uint64_t budget = kDefaultEnumerationBudget);

/// Every bilinear form on F_p^n in encoding order.
std::vector<BilinearForm> form_census(std::size_t n, PrimeField field,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

enum class FormRelation { Homothety, Isometry };

struct FormClass {
  BilinearForm representative;
  std::size_t size = 0;
};

/// Classes of the census under the relation, represented by their first member.
std::vector<FormClass> classify_forms(std::size_t n, PrimeField field, FormRelation relation,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

struct Theorem2Report {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::size_t forms = 0;
  std::uint64_t pairs = 0;
  std::uint64_t isomorphic_pairs = 0;
  std::uint64_t homothetic_pairs = 0;
  std::uint64_t isometric_pairs = 0;
  std::uint64_t disagreements = 0;
  /// Pairs where homothety and isometry verdicts differ.
  std::uint64_t homothety_isometry_differences = 0;
  std::size_t homothety_classes = 0;
  std::size_t isomorphism_classes = 0;
  std::size_t isometry_classes = 0;
};

/// For every ordered pair of forms: P_theta ~= P_theta' by brute-force search
/// versus theta, theta' homothetic. `jobs` workers share the pair range.
Theorem2Report theorem2_agreement(std::size_t n, PrimeField field, std::size_t jobs = 1,
                                  const SearchOptions& search = {});

/// All elements of G(P, theta), ordered by (u, lambda, psi) encodings.
/// Rejects theta = 0 with InvalidParams; throws InternalError unless the law is
/// closed and phi_(u, lambda, psi) is a bijection onto Aut(P_theta).
std::vector<GElement> aut_group_G(const BilinearForm& theta,
                                  const SearchOptions& search = {});

struct GGroupReport {
  std::size_t group_order = 0;
  std::size_t automorphism_count = 0;
  bool closed = false;
  bool has_inverses = false;
  bool homomorphism = false;  ///< phi_(g h) = phi_g phi_h
  bool bijection = false;     ///< g -> phi_g is onto Aut(P_theta) and injective
  bool ok() const noexcept {
    return closed && has_inverses && homomorphism && bijection && group_order == automorphism_count;
  }
};

GGroupReport verify_aut_group(const BilinearForm& theta, const SearchOptions& search = {});

// ---------------------------------------------------------------- Catalogs

struct CatalogEntry {
  std::string id;
  bool is_algebra = false;
  std::size_t dim = 0;                   ///< n for forms, algebra dimension otherwise
  std::vector<std::string> params;       ///< empty, or {"a", "b"}
  std::vector<std::string> matrix;       ///< forms: row-major symbolic entries
  std::vector<std::string> basis;        ///< algebras: basis labels
  /// algebras: (left, right, coefficient, target) symbolic products
  std::vector<std::vector<std::string>> products;
  std::string form;                      ///< algebras: the form they are built from
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& id);

struct CatalogParams {
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
};

using CatalogValue = std::variant<BilinearForm, Algebra>;

/// Instantiates a catalog template over F_p. Throws UnknownFamily or
/// InvalidParams; algebra entries are checked associative, metabelian and
/// of derived dimension 1.
CatalogValue catalog(const std::string& id, PrimeField field, const CatalogParams& params = {});

}  // namespace metabel
