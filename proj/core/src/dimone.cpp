#include "metabel/dimone.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "metabel/errors.hpp"

namespace metabel {

namespace detail {
extern const std::string_view dim1_catalog_json;
}

BilinearForm::BilinearForm(Matrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) throw DimensionMismatch("a bilinear form needs a square matrix");
}

BilinearForm BilinearForm::zero(PrimeField field, std::size_t n) {
  return BilinearForm(Matrix(field, n, n));
}

GElement g_compose(const GElement& a, const GElement& b) {
  const PrimeField& f = a.psi.field();
  if (a.psi.rows() != b.psi.rows() || a.psi.field() != b.psi.field())
    throw DimensionMismatch("g_compose: elements act on different spaces");
  // lambda o psi' as a row vector: (lambda psi')_j = sum_i lambda_i psi'(i, j).
  Matrix row = Matrix::from_rows(f, a.lambda.size(), std::span<const Vector>(&a.lambda, 1));
  Vector lam = (row * b.psi).row(0) + b.lambda.scaled(a.u);
  return GElement{f.mul(a.u, b.u), std::move(lam), a.psi * b.psi};
}

GElement g_identity(PrimeField field, std::size_t n) {
  return GElement{1, Vector(field, n), Matrix::identity(field, n)};
}

GElement g_inverse(const GElement& g) {
  const PrimeField& f = g.psi.field();
  auto psi_inv = inverse(g.psi);
  if (!psi_inv || g.u == 0) throw InvalidParams("g_inverse: element is not invertible");
  const Elem u_inv = f.inv(g.u);
  Matrix row = Matrix::from_rows(f, g.lambda.size(), std::span<const Vector>(&g.lambda, 1));
  Vector lam = -(row * *psi_inv).row(0).scaled(u_inv);
  return GElement{u_inv, std::move(lam), *psi_inv};
}

Matrix g_to_automorphism(const GElement& g) {
  const std::size_t n = g.psi.rows();
  Matrix m(g.psi.field(), n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, g.psi.at(i, j));
  for (std::size_t j = 0; j < n; ++j) m.set(n, j, g.lambda[j]);
  m.set(n, n, g.u);
  return m;
}

ExtensionTriple build_P_theta(const BilinearForm& theta) {
  const std::size_t n = theta.n();
  Algebra a(theta.field(), n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, n, theta.matrix().at(i, j));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("F" + std::to_string(i + 1));
  labels.push_back("E");
  a.set_labels(std::move(labels));

  if (!is_associative(a) || !is_metabelian(a))
    throw InternalError("build_P_theta: P_theta is not a metabelian algebra");
  const std::size_t expected = theta.is_zero() ? 0 : 1;
  if (derived_subalgebra(a).dim() != expected)
    throw InternalError("build_P_theta: unexpected derived dimension");
  return ExtensionTriple{std::move(a), n, 1};
}

namespace {

void require_comparable(const BilinearForm& t1, const BilinearForm& t2) {
  if (t1.field() != t2.field() || t1.n() != t2.n())
    throw DimensionMismatch("forms live on different spaces");
}

bool witnesses(const BilinearForm& t1, const BilinearForm& t2, Elem u, const Matrix& c) {
  return c.transpose() * t2.matrix() * c == t1.matrix().scaled(u);
}

std::optional<HomothetyWitness> search_witness(const BilinearForm& t1, const BilinearForm& t2,
                                               const std::vector<Matrix>& gl, bool only_unit) {
  const std::uint32_t p = t1.field().p();
  const Elem last = only_unit ? 1 : p - 1;
  for (Elem u = 1; u <= last; ++u)
    for (const Matrix& c : gl)
      if (witnesses(t1, t2, u, c)) return HomothetyWitness{u, c};
  return std::nullopt;
}

bool related(const BilinearForm& t1, const BilinearForm& t2, const std::vector<Matrix>& gl,
             FormRelation relation) {
  return search_witness(t1, t2, gl, relation == FormRelation::Isometry).has_value();
}

// Classes of an equivalence relation given by a predicate, first member as representative.
template <class Related>
std::vector<std::size_t> class_of(std::size_t count, Related&& rel) {
  std::vector<std::size_t> reps;
  std::vector<std::size_t> cls(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t c = reps.size();
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (rel(reps[r], i)) {
        c = r;
        break;
      }
    if (c == reps.size()) reps.push_back(i);
    cls[i] = c;
  }
  return cls;
}

// Runs body(begin, end) over [0, count) split into `jobs` contiguous blocks.
template <class Body>
void parallel_blocks(std::size_t count, std::size_t jobs, Body&& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::optional<HomothetyWitness> homothetic(const BilinearForm& t1, const BilinearForm& t2,
                                           std::uint64_t budget) {
  require_comparable(t1, t2);
  return search_witness(t1, t2, gl_enumerate(t1.n(), t1.field(), budget), false);
}

std::optional<Matrix> isometric(const BilinearForm& t1, const BilinearForm& t2,
                                std::uint64_t budget) {
  require_comparable(t1, t2);
  auto w = search_witness(t1, t2, gl_enumerate(t1.n(), t1.field(), budget), true);
  if (!w) return std::nullopt;
  return std::move(w->c);
}

std::vector<BilinearForm> form_census(std::size_t n, PrimeField field, std::uint64_t budget) {
  std::vector<BilinearForm> out;
  for_each_matrix(n, n, field, [&](const Matrix& m) { out.emplace_back(m); }, budget);
  return out;
}

std::vector<FormClass> classify_forms(std::size_t n, PrimeField field, FormRelation relation,
                                      std::uint64_t budget) {
  const auto forms = form_census(n, field, budget);
  const auto gl = gl_enumerate(n, field, budget);
  const auto cls = class_of(forms.size(), [&](std::size_t r, std::size_t i) {
    return related(forms[r], forms[i], gl, relation);
  });
  std::vector<FormClass> out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (cls[i] == out.size()) out.push_back(FormClass{forms[i], 0});
    ++out[cls[i]].size;
  }
  return out;
}

Theorem2Report theorem2_agreement(std::size_t n, PrimeField field, std::size_t jobs,
                                  const SearchOptions& search) {
  const auto forms = form_census(n, field, search.budget);
  const auto gl = gl_enumerate(n, field, search.budget);
  std::vector<Algebra> algebras;
  for (const auto& t : forms) algebras.push_back(build_P_theta(t).total);

  const std::size_t count = forms.size();
  std::vector<char> iso(count * count), hom(count * count), isom(count * count);
  parallel_blocks(count, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t k = i * count + j;
        iso[k] = find_isomorphism(algebras[i], algebras[j], search).has_value();
        hom[k] = related(forms[i], forms[j], gl, FormRelation::Homothety);
        isom[k] = hom[k] && related(forms[i], forms[j], gl, FormRelation::Isometry);
      }
  });

  Theorem2Report r;
  r.n = n;
  r.p = field.p();
  r.forms = count;
  r.pairs = static_cast<std::uint64_t>(count) * count;
  for (std::size_t k = 0; k < iso.size(); ++k) {
    r.isomorphic_pairs += iso[k];
    r.homothetic_pairs += hom[k];
    r.isometric_pairs += isom[k];
    r.disagreements += iso[k] != hom[k];
    r.homothety_isometry_differences += hom[k] != isom[k];
  }
  auto classes = [&](const std::vector<char>& v) {
    const auto cls = class_of(count, [&](std::size_t a, std::size_t b) { return v[a * count + b] != 0; });
    return cls.empty() ? std::size_t{0} : *std::max_element(cls.begin(), cls.end()) + 1;
  };
  r.isomorphism_classes = classes(iso);
  r.homothety_classes = classes(hom);
  r.isometry_classes = classes(isom);
  return r;
}

namespace {

std::vector<GElement> enumerate_G(const BilinearForm& theta, std::uint64_t budget) {
  if (theta.is_zero()) throw InvalidParams("aut_group_G: theta must be nonzero");
  const PrimeField& f = theta.field();
  const std::size_t n = theta.n();
  const auto gl = gl_enumerate(n, f, budget);
  const std::uint64_t functionals = saturating_pow(f.p(), n);
  std::vector<GElement> out;
  for (Elem u = 1; u < f.p(); ++u)
    for (const Matrix& psi : gl)
      if (witnesses(theta, theta, u, psi))
        for (std::uint64_t code = 0; code < functionals; ++code)
          out.push_back(GElement{u, Vector::decode(f, n, code), psi});
  std::sort(out.begin(), out.end(), [](const GElement& a, const GElement& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.psi < b.psi;
  });
  return out;
}

}  // namespace

GGroupReport verify_aut_group(const BilinearForm& theta, const SearchOptions& search) {
  const auto group = enumerate_G(theta, search.budget);
  const auto auts = automorphism_group(build_P_theta(theta).total, search);
  GGroupReport r;
  r.group_order = group.size();
  r.automorphism_count = auts.size();

  auto key = [](const GElement& g) {
    return std::tuple(g.u, g.lambda.encode(), g.psi.encode());
  };
  std::set<std::tuple<Elem, std::uint64_t, std::uint64_t>> members;
  for (const auto& g : group) members.insert(key(g));

  r.closed = true;
  r.homomorphism = true;
  for (const auto& a : group)
    for (const auto& b : group) {
      GElement c = g_compose(a, b);
      r.closed = r.closed && members.count(key(c)) == 1;
      r.homomorphism = r.homomorphism && g_to_automorphism(c) == g_to_automorphism(a) * g_to_automorphism(b);
    }
  const GElement id = g_identity(theta.field(), theta.n());
  r.has_inverses = members.count(key(id)) == 1;
  for (const auto& g : group) {
    GElement inv = g_inverse(g);
    r.has_inverses = r.has_inverses && members.count(key(inv)) == 1 && g_compose(g, inv) == id &&
                     g_compose(inv, g) == id;
  }

  std::vector<Matrix> images;
  for (const auto& g : group) images.push_back(g_to_automorphism(g));
  std::sort(images.begin(), images.end());
  const bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  r.bijection = injective && images == auts;
  return r;
}

std::vector<GElement> aut_group_G(const BilinearForm& theta, const SearchOptions& search) {
  auto report = verify_aut_group(theta, search);
  if (!report.ok())
    throw InternalError("aut_group_G: G(P, theta) does not match Aut(P_theta)");
  return enumerate_G(theta, search.budget);
}

// ---------------------------------------------------------------- Catalogs

namespace {

std::vector<std::string> string_list(const nlohmann::json& j) {
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

std::vector<CatalogEntry> load_catalog() {
  const auto doc = nlohmann::json::parse(detail::dim1_catalog_json);
  std::vector<CatalogEntry> out;
  for (const auto& f : doc.at("forms")) {
    CatalogEntry e;
    e.id = f.at("id").get<std::string>();
    e.dim = f.at("n").get<std::size_t>();
    e.params = string_list(f.at("params"));
    for (const auto& row : f.at("matrix"))
      for (const auto& v : row) e.matrix.push_back(v.get<std::string>());
    out.push_back(std::move(e));
  }
  for (const auto& a : doc.at("algebras")) {
    CatalogEntry e;
    e.id = a.at("id").get<std::string>();
    e.is_algebra = true;
    e.form = a.at("form").get<std::string>();
    e.params = string_list(a.at("params"));
    e.basis = string_list(a.at("basis"));
    e.dim = e.basis.size();
    for (const auto& p : a.at("products")) e.products.push_back(string_list(p));
    out.push_back(std::move(e));
  }
  return out;
}

Elem symbol_value(const std::string& s, const PrimeField& f, const CatalogParams& params) {
  if (s == "a") return f.reduce(*params.a);
  if (s == "b") return f.reduce(*params.b);
  return f.reduce(std::stoll(s));
}

void check_params(const CatalogEntry& e, const PrimeField& f, const CatalogParams& params) {
  const bool wants = !e.params.empty();
  for (const auto& [name, value] : {std::pair{"a", params.a}, std::pair{"b", params.b}}) {
    if (wants && !value)
      throw InvalidParams(e.id + " requires parameter " + name);
    if (!wants && value)
      throw InvalidParams(e.id + " takes no parameter " + name);
    if (value && (*value < 0 || *value >= static_cast<std::int64_t>(f.p())))
      throw InvalidParams(std::string("parameter ") + name + " must lie in [0, " +
                          std::to_string(f.p()) + ")");
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = load_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog_entries())
    if (e.id == id) return e;
  throw UnknownFamily("unknown catalog family: " + id);
}

CatalogValue catalog(const std::string& id, PrimeField field, const CatalogParams& params) {
  const CatalogEntry& e = catalog_entry(id);
  check_params(e, field, params);
  if (!e.is_algebra) {
    Matrix m(field, e.dim, e.dim);
    for (std::size_t k = 0; k < e.matrix.size(); ++k)
      m.set(k / e.dim, k % e.dim, symbol_value(e.matrix[k], field, params));
    return BilinearForm(std::move(m));
  }
  auto index = [&](const std::string& label) {
    auto it = std::find(e.basis.begin(), e.basis.end(), label);
    if (it == e.basis.end()) throw InternalError("catalog: " + e.id + " names unknown basis vector " + label);
    return static_cast<std::size_t>(it - e.basis.begin());
  };
  Algebra a(field, e.dim);
  for (const auto& prod : e.products)
    a.set(index(prod.at(0)), index(prod.at(1)), index(prod.at(3)), symbol_value(prod.at(2), field, params));
  a.set_labels(e.basis);
  if (!is_associative(a) || !is_metabelian(a) || derived_subalgebra(a).dim() != 1)
    throw InvalidParams(e.id + " does not instantiate to a metabelian algebra with derived dimension 1 over F_" +
                        std::to_string(field.p()));
  return a;
}

}  // namespace metabel
