#include "metabel/exactla.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "metabel/errors.hpp"

namespace metabel {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 2 || p > 251 || !is_prime(p))
    throw InvalidField("field modulus must be a prime in [2, 251], got " + std::to_string(p));
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem r = 1 % p_;
  Elem b = a % p_;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem PrimeField::inv(Elem a) const {
  if (a % p_ == 0) throw Error("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

Elem PrimeField::reduce(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

bool PrimeField::is_square(Elem a) const noexcept {
  for (Elem x = 0; x < p_; ++x)
    if (mul(x, x) == a) return true;
  return false;
}

// ---------------------------------------------------------------- Vector

Vector::Vector(PrimeField field, std::size_t dim) : field_(field), coords_(dim, 0) {}

Vector::Vector(PrimeField field, std::vector<Elem> coords)
    : field_(field), coords_(std::move(coords)) {
  for (Elem& c : coords_) c %= field_.p();
}

Vector Vector::unit(PrimeField field, std::size_t dim, std::size_t i) {
  Vector v(field, dim);
  v.coords_.at(i) = 1;
  return v;
}

Vector Vector::from_ints(PrimeField field, std::initializer_list<std::int64_t> values) {
  Vector v(field, values.size());
  std::size_t i = 0;
  for (auto x : values) v.coords_[i++] = field.reduce(x);
  return v;
}

void Vector::set(std::size_t i, std::int64_t value) { coords_.at(i) = field_.reduce(value); }

bool Vector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](Elem e) { return e == 0; });
}

static void require_same_shape(const Vector& a, const Vector& b) {
  if (a.field() != b.field() || a.size() != b.size())
    throw DimensionMismatch("vector shapes differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

Vector Vector::operator+(const Vector& other) const {
  require_same_shape(*this, other);
  Vector r(field_, size());
  for (std::size_t i = 0; i < size(); ++i) r.coords_[i] = field_.add(coords_[i], other.coords_[i]);
  return r;
}

Vector Vector::operator-(const Vector& other) const {
  require_same_shape(*this, other);
  Vector r(field_, size());
  for (std::size_t i = 0; i < size(); ++i) r.coords_[i] = field_.sub(coords_[i], other.coords_[i]);
  return r;
}

Vector Vector::operator-() const {
  Vector r(field_, size());
  for (std::size_t i = 0; i < size(); ++i) r.coords_[i] = field_.neg(coords_[i]);
  return r;
}

Vector Vector::scaled(Elem s) const {
  Vector r(field_, size());
  for (std::size_t i = 0; i < size(); ++i) r.coords_[i] = field_.mul(coords_[i], s % field_.p());
  return r;
}

std::uint64_t Vector::encode() const noexcept {
  std::uint64_t code = 0;
  for (Elem c : coords_) code = code * field_.p() + c;
  return code;
}

Vector Vector::decode(PrimeField field, std::size_t dim, std::uint64_t code) {
  Vector v(field, dim);
  for (std::size_t i = dim; i-- > 0;) {
    v.coords_[i] = static_cast<Elem>(code % field.p());
    code /= field.p();
  }
  return v;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw DimensionMismatch("matrix entry count " + std::to_string(data_.size()) +
                            " != " + std::to_string(rows) + "x" + std::to_string(cols));
  for (Elem& e : data_) e %= field_.p();
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::unit(PrimeField field, std::size_t rows, std::size_t cols, std::size_t i,
                    std::size_t j) {
  Matrix m(field, rows, cols);
  m.set(i, j, 1);
  return m;
}

Matrix Matrix::from_ints(PrimeField field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(field, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged matrix literal");
    std::size_t j = 0;
    for (auto x : row) m.data_[i * c + j++] = field.reduce(x);
    ++i;
  }
  return m;
}

Matrix Matrix::from_columns(PrimeField field, std::size_t rows, std::span<const Vector> columns) {
  Matrix m(field, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows || columns[j].field() != field)
      throw DimensionMismatch("column has wrong length");
    for (std::size_t i = 0; i < rows; ++i) m.data_[i * m.cols_ + j] = columns[j][i];
  }
  return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t cols, std::span<const Vector> rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols || rows[i].field() != field)
      throw DimensionMismatch("row has wrong length");
    std::copy(rows[i].coords().begin(), rows[i].coords().end(), m.data_.begin() + i * cols);
  }
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, std::int64_t value) {
  if (i >= rows_ || j >= cols_) throw DimensionMismatch("matrix index out of range");
  data_[i * cols_ + j] = field_.reduce(value);
}

Vector Matrix::row(std::size_t i) const {
  return Vector(field_, std::vector<Elem>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.set(i, data_[i * cols_ + j]);
  return v;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (field_ != other.field_ || cols_ != other.rows_)
    throw DimensionMismatch("cannot multiply " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " by " + std::to_string(other.rows_) + "x" +
                            std::to_string(other.cols_));
  Matrix r(field_, rows_, other.cols_);
  const std::uint32_t p = field_.p();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < other.cols_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k)
        acc += std::uint64_t{data_[i * cols_ + k]} * other.data_[k * other.cols_ + j];
      r.data_[i * r.cols_ + j] = static_cast<Elem>(acc % p);
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (field_ != v.field() || cols_ != v.size())
    throw DimensionMismatch("cannot apply " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " matrix to vector of length " +
                            std::to_string(v.size()));
  std::vector<Elem> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) acc += std::uint64_t{data_[i * cols_ + k]} * v[k];
    out[i] = static_cast<Elem>(acc % field_.p());
  }
  return Vector(field_, std::move(out));
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (field_ != other.field_ || rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch("matrix shapes differ in addition");
  Matrix r(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], other.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (field_ != other.field_ || rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch("matrix shapes differ in subtraction");
  Matrix r(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], other.data_[i]);
  return r;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix r(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.mul(data_[i], s % field_.p());
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = data_[i * cols_ + j];
  return r;
}

std::uint64_t Matrix::encode() const noexcept {
  std::uint64_t code = 0;
  for (Elem e : data_) code = code * field_.p() + e;
  return code;
}

Matrix Matrix::decode(PrimeField field, std::size_t rows, std::size_t cols, std::uint64_t code) {
  Matrix m(field, rows, cols);
  for (std::size_t k = rows * cols; k-- > 0;) {
    m.data_[k] = static_cast<Elem>(code % field.p());
    code /= field.p();
  }
  return m;
}

Vector mat_apply(const Matrix& m, const Vector& v) { return m * v; }
Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }
Matrix mat_add(const Matrix& a, const Matrix& b) { return a + b; }
Matrix mat_transpose(const Matrix& m) { return m.transpose(); }

// ---------------------------------------------------------------- RREF

namespace {

// In-place Gauss-Jordan on a row-major buffer; returns pivot columns.
std::vector<std::size_t> reduce_rows(const PrimeField& f, std::vector<Elem>& a, std::size_t rows,
                                     std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      std::swap_ranges(a.begin() + sel * cols, a.begin() + (sel + 1) * cols, a.begin() + r * cols);
    Elem inv = f.inv(a[r * cols + c]);
    for (std::size_t k = c; k < cols; ++k) a[r * cols + k] = f.mul(a[r * cols + k], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Elem factor = a[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k)
        a[i * cols + k] = f.sub(a[i * cols + k], f.mul(factor, a[r * cols + k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rref rref(const Matrix& m) {
  std::vector<Elem> a(m.entries().begin(), m.entries().end());
  auto pivots = reduce_rows(m.field(), a, m.rows(), m.cols());
  std::size_t rank = pivots.size();
  return Rref{Matrix(m.field(), m.rows(), m.cols(), std::move(a)), rank, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Elem> a(n * 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = m.at(i, j);
    a[i * 2 * n + n + i] = 1;
  }
  auto pivots = reduce_rows(m.field(), a, n, 2 * n);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, a[i * 2 * n + n + j]);
  return inv;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(PrimeField field, std::size_t ambient_dim) {
  return Subspace(field, ambient_dim);
}

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim) {
  Subspace s(field, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(Vector::unit(field, ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::row_space(const Matrix& m) {
  Rref r = rref(m);
  Subspace s(m.field(), m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) s.basis_.push_back(r.form.row(i));
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim, std::span<const Vector> vectors) {
  if (vectors.empty()) return zero(field, ambient_dim);
  return row_space(Matrix::from_rows(field, ambient_dim, vectors));
}

std::uint64_t Subspace::cardinality() const noexcept { return saturating_pow(field_.p(), dim()); }

Vector Subspace::reduce(const Vector& v) const {
  if (v.size() != ambient_dim_ || v.field() != field_)
    throw DimensionMismatch("vector does not live in the subspace's ambient space");
  Vector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Elem c = r[pivots_[i]];
    if (c != 0) r = r - basis_[i].scaled(c);
  }
  return r;
}

bool Subspace::contains(const Vector& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_ || other.field_ != field_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vector& v) { return contains(v); });
}

std::vector<Elem> Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) throw NotASubspace("vector is not in the subspace");
  std::vector<Elem> c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_ || other.field_ != field_)
    throw DimensionMismatch("subspace sum across different ambient spaces");
  std::vector<Vector> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(field_, ambient_dim_, all);
}

Subspace kernel(const Matrix& m) {
  Rref r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<Vector> gens;
  const PrimeField& f = m.field();
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(f, n);
    v.set(free, 1);
    for (std::size_t i = 0; i < r.rank; ++i) v.set(r.pivots[i], f.neg(r.form.at(i, free)));
    gens.push_back(std::move(v));
  }
  return Subspace::span(f, n, gens);
}

Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field())
    throw DimensionMismatch("intersection across different ambient spaces");
  // x = sum s_i a_i = sum t_j b_j  <=>  [A^T | -B^T] (s, t) = 0.
  const std::size_t n = a.ambient_dim();
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  const PrimeField& f = a.field();
  Matrix sys(f, n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < n; ++k) sys.set(k, i, a.basis()[i][k]);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t k = 0; k < n; ++k) sys.set(k, da + j, f.neg(b.basis()[j][k]));
  std::vector<Vector> gens;
  const Subspace solutions = kernel(sys);
  for (const Vector& sol : solutions.basis()) {
    Vector x(f, n);
    for (std::size_t i = 0; i < da; ++i) x = x + a.basis()[i].scaled(sol[i]);
    gens.push_back(std::move(x));
  }
  return Subspace::span(f, n, gens);
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows() || b.field() != m.field())
    throw DimensionMismatch("right-hand side length does not match matrix rows");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Elem> a(rows * (cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i * (cols + 1) + j] = m.at(i, j);
    a[i * (cols + 1) + cols] = b[i];
  }
  auto pivots = reduce_rows(m.field(), a, rows, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vector x(m.field(), cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x.set(pivots[i], a[i * (cols + 1) + cols]);
  return kernel(m).reduce(x);
}

// ---------------------------------------------------------------- Quotients

QuotientSpace::QuotientSpace(Subspace ambient, Subspace sub, std::vector<Vector> transversal)
    : ambient_(std::move(ambient)), sub_(std::move(sub)), transversal_(std::move(transversal)) {}

Vector QuotientSpace::representative(const Vector& v) const {
  if (!ambient_.contains(v)) throw NotASubspace("vector is outside the quotient's ambient space");
  return sub_.reduce(v);
}

QuotientSpace quotient(const Subspace& ambient, const Subspace& sub, std::uint64_t budget) {
  if (!ambient.contains(sub)) throw NotASubspace("quotient: sub is not contained in ambient");
  const PrimeField& f = ambient.field();
  const std::size_t n = ambient.ambient_dim();
  const std::size_t delta = ambient.dim() - sub.dim();
  const std::uint64_t count = saturating_pow(f.p(), delta);
  if (count > budget) throw BudgetExceeded("quotient transversal", count, budget);

  // Reduced ambient generators vanish on the pivots of sub; their span meets sub
  // trivially, so its elements are exactly the coset minima.
  std::vector<Vector> reduced;
  for (const Vector& v : ambient.basis()) reduced.push_back(sub.reduce(v));
  Subspace complement = Subspace::span(f, n, reduced);

  std::vector<Vector> transversal;
  transversal.reserve(count);
  std::vector<Elem> coeff(delta, 0);
  for (std::uint64_t k = 0; k < count; ++k) {
    Vector v(f, n);
    for (std::size_t i = 0; i < delta; ++i)
      if (coeff[i] != 0) v = v + complement.basis()[i].scaled(coeff[i]);
    transversal.push_back(std::move(v));
    for (std::size_t i = delta; i-- > 0;) {
      if (++coeff[i] < f.p()) break;
      coeff[i] = 0;
    }
  }
  std::sort(transversal.begin(), transversal.end());
  return QuotientSpace(ambient, sub, std::move(transversal));
}

// ---------------------------------------------------------------- Enumeration

void for_each_matrix(std::size_t rows, std::size_t cols, PrimeField field,
                     const std::function<void(const Matrix&)>& visit, std::uint64_t budget) {
  const std::uint64_t total = saturating_pow(field.p(), rows * cols);
  if (total > budget) throw BudgetExceeded("matrix enumeration", total, budget);
  for (std::uint64_t code = 0; code < total; ++code)
    visit(Matrix::decode(field, rows, cols, code));
}

void for_each_invertible(std::size_t n, PrimeField field,
                         const std::function<void(const Matrix&)>& visit, std::uint64_t budget,
                         EncodingRange range) {
  const std::uint64_t total = saturating_pow(field.p(), n * n);
  if (total > budget) throw BudgetExceeded("GL enumeration", total, budget);
  const std::uint64_t end = std::min(range.end, total);
  for (std::uint64_t code = range.begin; code < end; ++code) {
    Matrix m = Matrix::decode(field, n, n, code);
    if (rank(m) == n) visit(m);
  }
}

std::vector<Matrix> gl_enumerate(std::size_t n, PrimeField field, std::uint64_t budget) {
  std::vector<Matrix> out;
  for_each_invertible(n, field, [&](const Matrix& m) { out.push_back(m); }, budget);
  return out;
}

std::vector<Subspace> enumerate_subspaces(PrimeField field, std::size_t n, std::uint64_t budget) {
  std::vector<Subspace> out;
  std::uint64_t produced = 0;
  // Each pivot pattern fixes the shape of the RREF; the free entries range over F_p.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n; ++c)
      if (mask & (std::uint64_t{1} << c)) pivots.push_back(c);
    const std::size_t r = pivots.size();
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = pivots[i] + 1; c < n; ++c)
        if (!(mask & (std::uint64_t{1} << c))) free_slots.emplace_back(i, c);
    const std::uint64_t count = saturating_pow(field.p(), free_slots.size());
    produced += count;
    if (produced > budget) throw BudgetExceeded("subspace enumeration", produced, budget);
    for (std::uint64_t code = 0; code < count; ++code) {
      Matrix m(field, r, n);
      for (std::size_t i = 0; i < r; ++i) m.set(i, pivots[i], 1);
      std::uint64_t c = code;
      for (std::size_t s = free_slots.size(); s-- > 0;) {
        m.set(free_slots[s].first, free_slots[s].second, static_cast<std::int64_t>(c % field.p()));
        c /= field.p();
      }
      out.push_back(Subspace::row_space(m));
    }
  }
  std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis() < b.basis();
  });
  return out;
}

}  // namespace metabel
