#pragma once

// Exact arithmetic over prime fields F_p and the dense linear algebra used by
// every other module: reduced row echelon forms, kernels, images, canonical
// subspaces, quotient transversals and enumeration of GL(n, p).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace metabel {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultSearchBudget = std::uint64_t{1} << 16;

/// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) noexcept;

/// The prime field F_p, 2 <= p <= 251.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Elem add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept { return (a * b) % p_; }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  Elem inv(Elem a) const;
  Elem reduce(std::int64_t v) const noexcept;
  bool is_square(Elem a) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

class Vector {
public:
  Vector(PrimeField field, std::size_t dim);
  Vector(PrimeField field, std::vector<Elem> coords);
  static Vector unit(PrimeField field, std::size_t dim, std::size_t i);
  static Vector from_ints(PrimeField field, std::initializer_list<std::int64_t> values);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return coords_.size(); }
  Elem operator[](std::size_t i) const { return coords_[i]; }
  void set(std::size_t i, std::int64_t value);
  std::span<const Elem> coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;
  Vector operator+(const Vector& other) const;
  Vector operator-(const Vector& other) const;
  Vector operator-() const;
  Vector scaled(Elem s) const;

  /// Digits of the vector as a base-p integer, first coordinate most significant.
  std::uint64_t encode() const noexcept;
  static Vector decode(PrimeField field, std::size_t dim, std::uint64_t code);

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.field_ == b.field_ && a.coords_ == b.coords_;
  }
  /// Lexicographic on coordinates read as integers 0..p-1.
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
    return a.coords_ <=> b.coords_;
  }

private:
  PrimeField field_;
  std::vector<Elem> coords_;
};

class Matrix {
public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols);
  Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);
  static Matrix identity(PrimeField field, std::size_t n);
  /// E_ij with zero-based indices.
  static Matrix unit(PrimeField field, std::size_t rows, std::size_t cols, std::size_t i,
                     std::size_t j);
  static Matrix from_ints(PrimeField field,
                          std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix from_columns(PrimeField field, std::size_t rows, std::span<const Vector> columns);
  static Matrix from_rows(PrimeField field, std::size_t cols, std::span<const Vector> rows);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t value);
  std::span<const Elem> entries() const noexcept { return data_; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  bool is_zero() const noexcept;

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(Elem s) const;
  Matrix transpose() const;

  /// Row-major base-p digits, entry (0,0) most significant.
  std::uint64_t encode() const noexcept;
  static Matrix decode(PrimeField field, std::size_t rows, std::size_t cols, std::uint64_t code);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

Vector mat_apply(const Matrix& m, const Vector& v);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_transpose(const Matrix& m);

struct Rref {
  Matrix form;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Unique reduced row echelon form.
Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Canonical subspace of F_p^n: nonzero RREF rows with strictly increasing pivots.
/// Equal subspaces have identical representations.
class Subspace {
public:
  static Subspace zero(PrimeField field, std::size_t ambient_dim);
  static Subspace full(PrimeField field, std::size_t ambient_dim);
  static Subspace span(PrimeField field, std::size_t ambient_dim, std::span<const Vector> vectors);
  static Subspace row_space(const Matrix& m);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  /// Number of elements, p^dim (saturating).
  std::uint64_t cardinality() const noexcept;

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Lexicographically minimal element of the coset v + this.
  Vector reduce(const Vector& v) const;
  /// Coordinates of v in the canonical basis; throws NotASubspace if v is outside.
  std::vector<Elem> coordinates(const Vector& v) const;
  Subspace operator+(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

private:
  Subspace(PrimeField field, std::size_t ambient_dim) : field_(field), ambient_dim_(ambient_dim) {}

  PrimeField field_;
  std::size_t ambient_dim_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& m);
/// Column space.
Subspace image(const Matrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Lexicographically minimal solution of m x = b, or nothing if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

class QuotientSpace {
public:
  QuotientSpace(Subspace ambient, Subspace sub, std::vector<Vector> transversal);

  const Subspace& ambient() const noexcept { return ambient_; }
  const Subspace& sub() const noexcept { return sub_; }
  /// Lexicographically sorted coset minima.
  const std::vector<Vector>& transversal() const noexcept { return transversal_; }
  std::size_t size() const noexcept { return transversal_.size(); }
  Vector representative(const Vector& v) const;

private:
  Subspace ambient_;
  Subspace sub_;
  std::vector<Vector> transversal_;
};

/// Throws NotASubspace unless sub is contained in ambient.
QuotientSpace quotient(const Subspace& ambient, const Subspace& sub,
                       std::uint64_t budget = kDefaultEnumerationBudget);

/// Half-open range of row-major matrix encodings.
struct EncodingRange {
  std::uint64_t begin = 0;
  std::uint64_t end = UINT64_MAX;
};

/// Visits every invertible n x n matrix in increasing encoding order.
/// Throws BudgetExceeded if p^(n^2) exceeds the budget.
void for_each_invertible(std::size_t n, PrimeField field,
                         const std::function<void(const Matrix&)>& visit,
                         std::uint64_t budget = kDefaultEnumerationBudget,
                         EncodingRange range = {});
std::vector<Matrix> gl_enumerate(std::size_t n, PrimeField field,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

/// Every matrix of the given shape in encoding order.
void for_each_matrix(std::size_t rows, std::size_t cols, PrimeField field,
                     const std::function<void(const Matrix&)>& visit,
                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Every subspace of F_p^n, ordered by dimension then by RREF entries.
std::vector<Subspace> enumerate_subspaces(PrimeField field, std::size_t n,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace metabel
