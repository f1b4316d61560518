#include "metabel/algcore.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <string>

#include "metabel/errors.hpp"

namespace metabel {

namespace {

constexpr std::size_t kMaxDim = 8;
using Coords = std::array<Elem, kMaxDim>;

void require_dim(std::size_t n) {
  if (n > kMaxDim)
    throw DimensionMismatch("algebra dimension " + std::to_string(n) + " exceeds supported " +
                            std::to_string(kMaxDim));
}

// Product of coordinate arrays under raw structure constants.
void product_into(const PrimeField& f, std::size_t n, const Elem* sc, const Elem* x, const Elem* y,
                  Elem* out) {
  std::array<std::uint64_t, kMaxDim> acc{};
  for (std::size_t s = 0; s < n; ++s) {
    if (x[s] == 0) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 0) continue;
      const Elem coeff = f.mul(x[s], y[t]);
      const Elem* row = sc + (s * n + t) * n;
      for (std::size_t k = 0; k < n; ++k) acc[k] += std::uint64_t{coeff} * row[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<Elem>(acc[k] % f.p());
}

bool associator_vanishes(const PrimeField& f, std::size_t n, const Elem* sc, std::size_t i,
                         std::size_t j, std::size_t k) {
  std::array<std::uint64_t, kMaxDim> left{};
  std::array<std::uint64_t, kMaxDim> right{};
  const Elem* ij = sc + (i * n + j) * n;
  const Elem* jk = sc + (j * n + k) * n;
  for (std::size_t l = 0; l < n; ++l) {
    if (ij[l] != 0) {
      const Elem* lk = sc + (l * n + k) * n;
      for (std::size_t m = 0; m < n; ++m) left[m] += std::uint64_t{ij[l]} * lk[m];
    }
    if (jk[l] != 0) {
      const Elem* il = sc + (i * n + l) * n;
      for (std::size_t m = 0; m < n; ++m) right[m] += std::uint64_t{jk[l]} * il[m];
    }
  }
  for (std::size_t m = 0; m < n; ++m)
    if (left[m] % f.p() != right[m] % f.p()) return false;
  return true;
}

// Map given by columns: checks map(e_i e_j) = map(e_i) map(e_j).
bool morphism_on_basis(const Algebra& from, const Algebra& to, const Elem* map_cols) {
  const PrimeField& f = from.field();
  const std::size_t n = from.dim();
  const std::size_t m = to.dim();
  const Elem* sa = from.structure_constants().data();
  const Elem* sb = to.structure_constants().data();
  Coords lhs{};
  Coords rhs{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::array<std::uint64_t, kMaxDim> acc{};
      const Elem* ij = sa + (i * n + j) * n;
      for (std::size_t k = 0; k < n; ++k) {
        if (ij[k] == 0) continue;
        for (std::size_t r = 0; r < m; ++r) acc[r] += std::uint64_t{ij[k]} * map_cols[k * m + r];
      }
      for (std::size_t r = 0; r < m; ++r) lhs[r] = static_cast<Elem>(acc[r] % f.p());
      product_into(f, m, sb, map_cols + i * m, map_cols + j * m, rhs.data());
      for (std::size_t r = 0; r < m; ++r)
        if (lhs[r] != rhs[r]) return false;
    }
  return true;
}

std::vector<Elem> columns_of(const Matrix& map) {
  std::vector<Elem> cols(map.rows() * map.cols());
  for (std::size_t j = 0; j < map.cols(); ++j)
    for (std::size_t i = 0; i < map.rows(); ++i) cols[j * map.rows() + i] = map.at(i, j);
  return cols;
}

void require_associative(const Algebra& a, const char* what) {
  if (!is_associative(a)) throw NotAssociative(std::string(what) + ": algebra is not associative");
}

}  // namespace

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(PrimeField field, std::size_t dim)
    : field_(field), dim_(dim), sc_(dim * dim * dim, 0) {
  require_dim(dim);
}

Algebra::Algebra(PrimeField field, std::size_t dim, std::vector<Elem> sc,
                 std::vector<std::string> labels)
    : field_(field), dim_(dim), sc_(std::move(sc)), labels_(std::move(labels)) {
  require_dim(dim);
  if (sc_.size() != dim * dim * dim)
    throw DimensionMismatch("structure tensor has " + std::to_string(sc_.size()) +
                            " entries, expected " + std::to_string(dim * dim * dim));
  for (Elem& e : sc_) e %= field_.p();
  if (!labels_.empty() && labels_.size() != dim)
    throw DimensionMismatch("label count does not match dimension");
}

void Algebra::set(std::size_t i, std::size_t j, std::size_t k, std::int64_t value) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw DimensionMismatch("structure index out of range");
  sc_[(i * dim_ + j) * dim_ + k] = field_.reduce(value);
}

void Algebra::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != dim_)
    throw DimensionMismatch("label count does not match dimension");
  labels_ = std::move(labels);
}

Vector Algebra::basis_product(std::size_t i, std::size_t j) const {
  const Elem* row = sc_.data() + (i * dim_ + j) * dim_;
  return Vector(field_, std::vector<Elem>(row, row + dim_));
}

Vector Algebra::multiply(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_ || x.field() != field_ || y.field() != field_)
    throw DimensionMismatch("multiply: vectors are not in the algebra's ambient space");
  std::vector<Elem> out(dim_);
  product_into(field_, dim_, sc_.data(), x.coords().data(), y.coords().data(), out.data());
  return Vector(field_, std::move(out));
}

bool Algebra::is_abelian() const noexcept {
  return std::all_of(sc_.begin(), sc_.end(), [](Elem e) { return e == 0; });
}

Vector multiply(const Algebra& a, const Vector& x, const Vector& y) { return a.multiply(x, y); }

bool is_associative(const Algebra& a) {
  const std::size_t n = a.dim();
  const Elem* sc = a.structure_constants().data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!associator_vanishes(a.field(), n, sc, i, j, k)) return false;
  return true;
}

Subspace derived_subalgebra(const Algebra& a) {
  std::vector<Vector> products;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) products.push_back(a.basis_product(i, j));
  return Subspace::span(a.field(), a.dim(), products);
}

Subspace span_product(const Algebra& a, const Subspace& s, const Subspace& t) {
  std::vector<Vector> products;
  for (const Vector& x : s.basis())
    for (const Vector& y : t.basis()) products.push_back(a.multiply(x, y));
  return Subspace::span(a.field(), a.dim(), products);
}

namespace {

// A, A^2, A^3, ... with A^{k+1} = A^k A.
std::vector<Subspace> power_series(const Algebra& a, std::size_t up_to) {
  const Subspace whole = Subspace::full(a.field(), a.dim());
  std::vector<Subspace> powers{whole};
  while (powers.size() < up_to) powers.push_back(span_product(a, powers.back(), whole));
  return powers;
}

}  // namespace

bool nilpotency_index_at_most(const Algebra& a, std::size_t m) {
  if (m == 0) throw Error("nilpotency_index_at_most: m must be at least 1");
  require_associative(a, "nilpotency_index_at_most");
  return power_series(a, m).back().dim() == 0;
}

std::optional<std::size_t> nilpotency_index(const Algebra& a) {
  require_associative(a, "nilpotency_index");
  const Subspace whole = Subspace::full(a.field(), a.dim());
  Subspace power = whole;
  for (std::size_t m = 1;; ++m) {
    if (power.dim() == 0) return m;
    Subspace next = span_product(a, power, whole);
    if (next == power) return std::nullopt;
    power = std::move(next);
  }
}

bool four_fold_products_vanish(const Algebra& a) {
  const std::size_t n = a.dim();
  const PrimeField& f = a.field();
  const Elem* sc = a.structure_constants().data();
  Coords x{};
  Coords y{};
  Coords z{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::copy_n(sc + (i * n + j) * n, n, x.begin());
      for (std::size_t k = 0; k < n; ++k) {
        Coords ek{};
        ek[k] = 1;
        product_into(f, n, sc, x.data(), ek.data(), y.data());
        for (std::size_t l = 0; l < n; ++l) {
          Coords el{};
          el[l] = 1;
          product_into(f, n, sc, y.data(), el.data(), z.data());
          for (std::size_t r = 0; r < n; ++r)
            if (z[r] != 0) return false;
        }
      }
    }
  return true;
}

bool is_metabelian(const Algebra& a) {
  require_associative(a, "is_metabelian");
  const Subspace derived = derived_subalgebra(a);
  const bool derived_abelian = is_abelian_subspace(a, derived);
  const bool fourth_power_zero = power_series(a, 4).back().dim() == 0;
  if (derived_abelian != fourth_power_zero || fourth_power_zero != four_fold_products_vanish(a))
    throw InternalError("is_metabelian: abelian derived subalgebra disagrees with A^4 = 0");
  return derived_abelian;
}

bool is_subalgebra(const Algebra& a, const Subspace& s) {
  for (const Vector& x : s.basis())
    for (const Vector& y : s.basis())
      if (!s.contains(a.multiply(x, y))) return false;
  return true;
}

bool is_abelian_subspace(const Algebra& a, const Subspace& s) {
  for (const Vector& x : s.basis())
    for (const Vector& y : s.basis())
      if (!a.multiply(x, y).is_zero()) return false;
  return true;
}

SubalgebraWitness::SubalgebraWitness(const Algebra& algebra, Subspace span) : span_(std::move(span)) {
  if (span_.ambient_dim() != algebra.dim() || !is_subalgebra(algebra, span_))
    throw InvariantViolation("subspace is not closed under multiplication");
}

bool is_algebra_morphism(const Algebra& from, const Algebra& to, const Matrix& map) {
  if (map.rows() != to.dim() || map.cols() != from.dim() || from.field() != to.field())
    throw DimensionMismatch("morphism matrix shape does not match the algebras");
  const auto cols = columns_of(map);
  return morphism_on_basis(from, to, cols.data());
}

Algebra transport(const Algebra& a, const Matrix& basis) {
  auto inv = inverse(basis);
  if (!inv || basis.rows() != a.dim()) throw Error("transport: basis matrix is not invertible");
  const std::size_t n = a.dim();
  Algebra b(a.field(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector prod = *inv * a.multiply(basis.column(i), basis.column(j));
      for (std::size_t k = 0; k < n; ++k) b.set(i, j, k, prod[k]);
    }
  return b;
}

// ---------------------------------------------------------------- Isomorphism search

namespace {

struct Invariants {
  std::vector<std::size_t> power_dims;
  std::size_t derived_dim = 0;
  std::size_t left_annihilator = 0;
  std::size_t right_annihilator = 0;
  std::size_t derived_square = 0;
  std::int64_t square_zero_count = -1;

  friend bool operator==(const Invariants&, const Invariants&) = default;
};

Invariants invariants_of(const Algebra& a) {
  const std::size_t n = a.dim();
  const PrimeField& f = a.field();
  Invariants inv;
  const Subspace whole = Subspace::full(f, n);
  Subspace power = whole;
  for (std::size_t k = 0; k <= n + 1; ++k) {
    inv.power_dims.push_back(power.dim());
    power = span_product(a, power, whole);
  }
  const Subspace derived = derived_subalgebra(a);
  inv.derived_dim = derived.dim();
  inv.derived_square = span_product(a, derived, derived).dim();
  // Left annihilator: x with x e_j = 0 for all j.
  Matrix left(f, n * n, n);
  Matrix right(f, n * n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        left.set(j * n + k, x, a.c(x, j, k));
        right.set(j * n + k, x, a.c(j, x, k));
      }
  inv.left_annihilator = kernel(left).dim();
  inv.right_annihilator = kernel(right).dim();
  const std::uint64_t elements = saturating_pow(f.p(), n);
  if (elements <= 4096) {
    std::int64_t count = 0;
    Coords sq{};
    for (std::uint64_t code = 0; code < elements; ++code) {
      Vector v = Vector::decode(f, n, code);
      product_into(f, n, a.structure_constants().data(), v.coords().data(), v.coords().data(),
                   sq.data());
      if (std::all_of(sq.begin(), sq.begin() + n, [](Elem e) { return e == 0; })) ++count;
    }
    inv.square_zero_count = count;
  }
  return inv;
}

// Column-by-column backtracking over images of basis vectors. A basis pair
// (i, j) is checked as soon as e_i, e_j and the support of e_i e_j are mapped.
class MorphismSearch {
public:
  MorphismSearch(const Algebra& a, const Algebra& b)
      : a_(a), b_(b), f_(a.field()), n_(a.dim()), vectors_(saturating_pow(f_.p(), n_)) {
    choose_order();
  }

  template <typename Visit>
  void run(Visit&& visit) {
    stop_ = false;
    images_.assign(n_, Coords{});
    echelon_.clear();
    descend(0, visit);
  }

private:
  void choose_order() {
    std::vector<std::size_t> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    std::size_t best_cost = SIZE_MAX;
    const bool exhaustive = n_ <= 6;
    do {
      std::vector<std::size_t> pos(n_);
      for (std::size_t d = 0; d < n_; ++d) pos[perm[d]] = d;
      std::size_t cost = 0;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) cost += level(pos, i, j);
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (exhaustive && std::next_permutation(perm.begin(), perm.end()));
    order_ = best;
    std::vector<std::size_t> pos(n_);
    for (std::size_t d = 0; d < n_; ++d) pos[order_[d]] = d;
    checks_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) checks_[level(pos, i, j)].emplace_back(i, j);
  }

  std::size_t level(const std::vector<std::size_t>& pos, std::size_t i, std::size_t j) const {
    std::size_t lv = std::max(pos[i], pos[j]);
    for (std::size_t k = 0; k < n_; ++k)
      if (a_.c(i, j, k) != 0) lv = std::max(lv, pos[k]);
    return lv;
  }

  bool independent_push(const Coords& v) {
    Coords w = v;
    for (const auto& [row, pivot] : echelon_) {
      const Elem c = w[pivot];
      if (c == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) w[k] = f_.sub(w[k], f_.mul(c, row[k]));
    }
    std::size_t pivot = 0;
    while (pivot < n_ && w[pivot] == 0) ++pivot;
    if (pivot == n_) return false;
    const Elem inv = f_.inv(w[pivot]);
    for (std::size_t k = 0; k < n_; ++k) w[k] = f_.mul(w[k], inv);
    echelon_.emplace_back(w, pivot);
    return true;
  }

  bool pair_holds(std::size_t i, std::size_t j) const {
    std::array<std::uint64_t, kMaxDim> acc{};
    for (std::size_t k = 0; k < n_; ++k) {
      const Elem c = a_.c(i, j, k);
      if (c == 0) continue;
      for (std::size_t r = 0; r < n_; ++r) acc[r] += std::uint64_t{c} * images_[k][r];
    }
    Coords rhs{};
    product_into(f_, n_, b_.structure_constants().data(), images_[i].data(), images_[j].data(),
                 rhs.data());
    for (std::size_t r = 0; r < n_; ++r)
      if (acc[r] % f_.p() != rhs[r]) return false;
    return true;
  }

  template <typename Visit>
  void descend(std::size_t depth, Visit& visit) {
    if (depth == n_) {
      Matrix m(f_, n_, n_);
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i) m.set(i, j, images_[j][i]);
      if (!visit(m)) stop_ = true;
      return;
    }
    const std::size_t basis = order_[depth];
    for (std::uint64_t code = 0; code < vectors_ && !stop_; ++code) {
      Coords v{};
      std::uint64_t c = code;
      for (std::size_t k = n_; k-- > 0;) {
        v[k] = static_cast<Elem>(c % f_.p());
        c /= f_.p();
      }
      if (!independent_push(v)) continue;
      images_[basis] = v;
      bool ok = true;
      for (const auto& [i, j] : checks_[depth])
        if (!pair_holds(i, j)) {
          ok = false;
          break;
        }
      if (ok) descend(depth + 1, visit);
      echelon_.pop_back();
    }
  }

  const Algebra& a_;
  const Algebra& b_;
  PrimeField f_;
  std::size_t n_;
  std::uint64_t vectors_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks_;
  std::vector<Coords> images_;
  std::vector<std::pair<Coords, std::size_t>> echelon_;
  bool stop_ = false;
};

void check_search_budget(const Algebra& a, std::uint64_t budget, const char* what) {
  const std::uint64_t candidates = saturating_pow(a.field().p(), a.dim() * a.dim());
  if (candidates > budget) throw BudgetExceeded(what, candidates, budget);
}

}  // namespace

std::optional<Matrix> find_isomorphism(const Algebra& a, const Algebra& b,
                                       const SearchOptions& options) {
  if (a.field() != b.field() || a.dim() != b.dim())
    throw DimensionMismatch("find_isomorphism: algebras differ in field or dimension");
  check_search_budget(a, options.budget, "isomorphism search");
  if (options.invariant_prefilter && !(invariants_of(a) == invariants_of(b))) return std::nullopt;
  std::optional<Matrix> found;
  MorphismSearch search(a, b);
  search.run([&](const Matrix& m) {
    found = m;
    return false;
  });
  return found;
}

std::vector<Matrix> automorphism_group(const Algebra& a, const SearchOptions& options) {
  check_search_budget(a, options.budget, "automorphism search");
  std::vector<Matrix> group;
  MorphismSearch search(a, a);
  search.run([&](const Matrix& m) {
    group.push_back(m);
    return true;
  });
  std::sort(group.begin(), group.end(),
            [](const Matrix& x, const Matrix& y) { return x.encode() < y.encode(); });

  std::set<std::uint64_t> codes;
  for (const Matrix& g : group) codes.insert(g.encode());
  const std::size_t n = a.dim();
  if (!codes.count(Matrix::identity(a.field(), n).encode()))
    throw InternalError("automorphism_group: identity missing");
  for (const Matrix& g : group) {
    auto inv = inverse(g);
    if (!inv || !codes.count(inv->encode()))
      throw InternalError("automorphism_group: inverse missing");
  }
  // Full closure table for small groups, a deterministic sweep of pairs otherwise.
  const std::size_t order = group.size();
  const bool full = order <= 2048;
  const std::size_t rows = full ? order : 2048;
  for (std::size_t s = 0; s < rows; ++s) {
    const std::size_t i = full ? s : (s * 7919) % order;
    for (std::size_t t = 0; t < (full ? order : 8); ++t) {
      const std::size_t j = full ? t : (s * 104729 + t * 31) % order;
      if (!codes.count((group[i] * group[j]).encode()))
        throw InternalError("automorphism_group: not closed under composition");
    }
  }
  return group;
}

// ---------------------------------------------------------------- Extensions

bool is_metabelian_extension(const ExtensionTriple& e) {
  const Algebra& a = e.total;
  if (e.p_dim + e.v_dim != a.dim()) return false;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Every product lands in V (ideal, kernel of projection, abelian quotient).
      for (std::size_t k = 0; k < e.p_dim; ++k)
        if (a.c(i, j, k) != 0) return false;
      // V * V = 0.
      if (i >= e.p_dim && j >= e.p_dim)
        for (std::size_t k = 0; k < n; ++k)
          if (a.c(i, j, k) != 0) return false;
    }
  return true;
}

std::optional<Matrix> extension_equivalent(const ExtensionTriple& e1, const ExtensionTriple& e2) {
  if (e1.p_dim != e2.p_dim || e1.v_dim != e2.v_dim || e1.total.field() != e2.total.field() ||
      e1.total.dim() != e2.total.dim())
    throw DimensionMismatch("extension_equivalent: extensions have different shapes");
  const PrimeField& f = e1.total.field();
  const std::size_t pd = e1.p_dim;
  const std::size_t vd = e1.v_dim;
  const std::size_t n = pd + vd;
  const std::uint64_t count = saturating_pow(f.p(), pd * vd);
  std::vector<Elem> cols(n * n, 0);
  for (std::uint64_t code = 0; code < count; ++code) {
    // r as a vd x pd matrix in row-major encoding order; phi = [[I, 0], [r, I]].
    std::fill(cols.begin(), cols.end(), 0);
    for (std::size_t k = 0; k < n; ++k) cols[k * n + k] = 1;
    std::uint64_t c = code;
    for (std::size_t idx = pd * vd; idx-- > 0;) {
      const std::size_t t = idx / pd;
      const std::size_t j = idx % pd;
      cols[j * n + pd + t] = static_cast<Elem>(c % f.p());
      c /= f.p();
    }
    if (morphism_on_basis(e1.total, e2.total, cols.data())) {
      Matrix phi(f, n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) phi.set(i, j, cols[j * n + i]);
      return phi;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Ito

ItoReport ito_check(const Algebra& a, const Subspace& p_span, const Subspace& v_span) {
  if (p_span.ambient_dim() != a.dim() || v_span.ambient_dim() != a.dim())
    throw DimensionMismatch("ito_check: spans do not live in the algebra");
  require_associative(a, "ito_check");
  ItoReport r;
  r.p_subalgebra = is_subalgebra(a, p_span);
  r.v_subalgebra = is_subalgebra(a, v_span);
  r.p_abelian = is_abelian_subspace(a, p_span);
  r.v_abelian = is_abelian_subspace(a, v_span);
  r.spans_sum = (p_span + v_span).dim() == a.dim();
  if (!r.p_subalgebra) throw HypothesisFailed("subalgebra: P0 is not closed under multiplication");
  if (!r.v_subalgebra) throw HypothesisFailed("subalgebra: V0 is not closed under multiplication");
  if (!r.p_abelian) throw HypothesisFailed("abelian: P0 has a nonzero product");
  if (!r.v_abelian) throw HypothesisFailed("abelian: V0 has a nonzero product");
  if (!r.spans_sum) throw HypothesisFailed("sum: P0 + V0 is a proper subspace");
  r.metabelian = is_metabelian(a);
  r.four_fold_zero = four_fold_products_vanish(a);
  return r;
}

std::optional<std::pair<Subspace, Subspace>> find_abelian_sum(const Algebra& a) {
  std::vector<Subspace> abelian;
  for (Subspace& s : enumerate_subspaces(a.field(), a.dim()))
    if (is_abelian_subspace(a, s)) abelian.push_back(std::move(s));
  for (std::size_t i = 0; i < abelian.size(); ++i)
    for (std::size_t j = i; j < abelian.size(); ++j)
      if (abelian[i].dim() + abelian[j].dim() >= a.dim() &&
          (abelian[i] + abelian[j]).dim() == a.dim())
        return std::make_pair(abelian[i], abelian[j]);
  return std::nullopt;
}

// ---------------------------------------------------------------- Corpus

namespace {

class AssociativeSearch {
public:
  AssociativeSearch(std::size_t n, PrimeField f, std::uint64_t budget,
                    const std::function<void(const Algebra&)>& visit)
      : n_(n), f_(f), budget_(budget), visit_(visit), sc_(n * n * n, 0),
        vectors_(saturating_pow(f.p(), n)) {}

  void run() { descend(0); }

private:
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * n_ + j; }

  // Largest pair index the associator (i, j, k) depends on, given current supports.
  std::size_t dependency(std::size_t i, std::size_t j, std::size_t k) const {
    std::size_t dep = std::max(pair_index(i, j), pair_index(j, k));
    const Elem* ij = sc_.data() + pair_index(i, j) * n_;
    const Elem* jk = sc_.data() + pair_index(j, k) * n_;
    for (std::size_t l = 0; l < n_; ++l) {
      if (ij[l] != 0) dep = std::max(dep, pair_index(l, k));
      if (jk[l] != 0) dep = std::max(dep, pair_index(i, l));
    }
    return dep;
  }

  bool consistent(std::size_t t) const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (pair_index(i, j) > t) continue;
        for (std::size_t k = 0; k < n_; ++k) {
          if (pair_index(j, k) > t) continue;
          if (dependency(i, j, k) != t) continue;
          if (!associator_vanishes(f_, n_, sc_.data(), i, j, k)) return false;
        }
      }
    return true;
  }

  void descend(std::size_t t) {
    if (t == n_ * n_) {
      visit_(Algebra(f_, n_, sc_));
      return;
    }
    for (std::uint64_t code = 0; code < vectors_; ++code) {
      if (++nodes_ > budget_) throw BudgetExceeded("pruned associative enumeration", nodes_, budget_);
      std::uint64_t c = code;
      for (std::size_t k = n_; k-- > 0;) {
        sc_[t * n_ + k] = static_cast<Elem>(c % f_.p());
        c /= f_.p();
      }
      // Unassigned pairs read as zero, so dependencies are only final once the
      // decisive pair index is reached; consistent() checks exactly those.
      if (consistent(t)) descend(t + 1);
    }
    std::fill_n(sc_.begin() + t * n_, n_, 0);
  }

  std::size_t n_;
  PrimeField f_;
  std::uint64_t budget_;
  const std::function<void(const Algebra&)>& visit_;
  std::vector<Elem> sc_;
  std::uint64_t vectors_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

void for_each_associative_algebra(std::size_t n, PrimeField field,
                                  const std::function<void(const Algebra&)>& visit,
                                  const CorpusOptions& options) {
  require_dim(n);
  if (!options.pruning) {
    const std::uint64_t total = saturating_pow(field.p(), n * n * n);
    if (total > options.budget)
      throw BudgetExceeded("associative enumeration", total, options.budget);
    std::vector<Elem> sc(n * n * n);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::size_t k = sc.size(); k-- > 0;) {
        sc[k] = static_cast<Elem>(c % field.p());
        c /= field.p();
      }
      Algebra a(field, n, sc);
      if (is_associative(a)) visit(a);
    }
    return;
  }
  AssociativeSearch(n, field, options.budget, visit).run();
}

std::vector<Algebra> enumerate_associative_algebras(std::size_t n, PrimeField field,
                                                    const CorpusOptions& options) {
  std::vector<Algebra> out;
  for_each_associative_algebra(n, field, [&](const Algebra& a) { out.push_back(a); }, options);
  return out;
}

}  // namespace metabel
