#include "metabel/serialize.hpp"

#include <fstream>
#include <sstream>

#include "metabel/errors.hpp"

namespace metabel {

namespace {

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

std::size_t as_size(const Json& j, const std::string& where) {
  const std::int64_t v = as_int(j, where);
  if (v < 0) throw ParseError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const Json& as_array(const Json& j, std::size_t length, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  if (j.size() != length)
    throw ParseError(where + ": expected " + std::to_string(length) + " entries, found " +
                     std::to_string(j.size()));
  return j;
}

PrimeField field_of(const Json& j, const std::string& where) {
  const std::int64_t p = as_int(member(j, "p", where), where + ".p");
  if (p < 2 || p > 251 || !is_prime(static_cast<std::uint32_t>(p)))
    throw ParseError(where + ".p: " + std::to_string(p) + " is not a supported prime");
  return PrimeField(static_cast<std::uint32_t>(p));
}

void require_field(const PrimeField& expected, const PrimeField& got, const std::string& where) {
  if (expected != got) throw ParseError(where + ": field differs from the enclosing document");
}

Json rows_of(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix parse_rows(const Json& j, PrimeField f, std::size_t rows, std::size_t cols, const std::string& where) {
  as_array(j, rows, where);
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string wi = where + "[" + std::to_string(i) + "]";
    as_array(j[i], cols, wi);
    for (std::size_t k = 0; k < cols; ++k)
      m.set(i, k, as_int(j[i][k], wi + "[" + std::to_string(k) + "]"));
  }
  return m;
}

Matrix matrix_at(const Json& j, const std::string& where) {
  const PrimeField f = field_of(j, where);
  const std::size_t rows = as_size(member(j, "rows", where), where + ".rows");
  const std::size_t cols = as_size(member(j, "cols", where), where + ".cols");
  return parse_rows(member(j, "entries", where), f, rows, cols, where + ".entries");
}

Vector vector_at(const Json& j, const std::string& where) {
  const PrimeField f = field_of(j, where);
  const Json& coords = member(j, "coords", where);
  if (!coords.is_array()) throw ParseError(where + ".coords: expected an array");
  Vector v(f, coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    v.set(i, as_int(coords[i], where + ".coords[" + std::to_string(i) + "]"));
  return v;
}

DiscreteBimodule bimodule_at(const Json& j, const std::string& where) {
  const PrimeField f = field_of(j, where);
  const std::size_t dim_p = as_size(member(j, "dimP", where), where + ".dimP");
  const std::size_t dim_v = as_size(member(j, "dimV", where), where + ".dimV");
  DiscreteBimodule b{f, dim_p, dim_v, {}, {}};
  for (const char* side : {"right", "left"}) {
    const std::string ws = where + "." + side;
    const Json& arr = as_array(member(j, side, where), dim_p, ws);
    auto& target = std::string(side) == "right" ? b.right : b.left;
    for (std::size_t k = 0; k < dim_p; ++k) {
      const std::string wk = ws + "[" + std::to_string(k) + "]";
      Matrix m = matrix_at(arr[k], wk);
      require_field(f, m.field(), wk);
      if (m.rows() != dim_v || m.cols() != dim_v)
        throw ParseError(wk + ": action matrices must be dimV x dimV");
      target.push_back(std::move(m));
    }
  }
  return b;
}

}  // namespace

Json to_json(const Matrix& m) {
  return Json{{"p", m.field().p()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows_of(m)}};
}

Json to_json(const Vector& v) {
  return Json{{"p", v.field().p()}, {"coords", std::vector<Elem>(v.coords().begin(), v.coords().end())}};
}

Json to_json(const Algebra& a) {
  const std::size_t n = a.dim();
  Json sc = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
      Json cell = Json::array();
      for (std::size_t t = 0; t < n; ++t) cell.push_back(a.c(i, k, t));
      row.push_back(std::move(cell));
    }
    sc.push_back(std::move(row));
  }
  Json out{{"p", a.field().p()}, {"dim", n}, {"sc", std::move(sc)}};
  if (!a.labels().empty()) out["labels"] = a.labels();
  return out;
}

Json to_json(const DiscreteBimodule& b) {
  Json right = Json::array();
  Json left = Json::array();
  for (const Matrix& m : b.right) right.push_back(to_json(m));
  for (const Matrix& m : b.left) left.push_back(to_json(m));
  return Json{{"p", b.field.p()}, {"dimP", b.dim_p}, {"dimV", b.dim_v}, {"right", std::move(right)},
              {"left", std::move(left)}};
}

namespace {

Json theta_json(const CocycleTable& theta, std::size_t dim_p) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < dim_p; ++j) {
    Json row = Json::array();
    for (std::size_t k = 0; k < dim_p; ++k) row.push_back(to_json(theta[j * dim_p + k]));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json to_json(const MetabelianDatum& d) {
  Json out = to_json(d.bimodule);
  out["theta"] = theta_json(d.theta, d.bimodule.dim_p);
  return out;
}

Json to_json(const BilinearForm& f) {
  return Json{{"p", f.field().p()}, {"n", f.n()}, {"matrix", rows_of(f.matrix())}};
}

Json to_json(const TPair& t) {
  return Json{{"p", t.field().p()}, {"n", t.n()}, {"X", to_json(t.x)}, {"Y", to_json(t.y)}};
}

Json to_json(const GElement& g) {
  return Json{{"u", g.u},
              {"lambda", std::vector<Elem>(g.lambda.coords().begin(), g.lambda.coords().end())},
              {"psi", to_json(g.psi)}};
}

Json to_json(const ExtCatalog& c) {
  Json out = Json::array();
  for (const auto& e : c.entries)
    out.push_back(Json{{"bimodule", to_json(e.bimodule)},
                       {"thetaRep", theta_json(e.theta_rep, c.dim_p)},
                       {"algebra", to_json(e.algebra)}});
  return out;
}

std::string ext_summary_csv(const ExtCatalog& c) {
  std::ostringstream out;
  out << "bimodule_id,cocycles,coboundaries,classes\n";
  for (const auto& s : c.summaries)
    out << s.bimodule_id << ',' << s.cocycles << ',' << s.coboundaries << ',' << s.classes << '\n';
  return out.str();
}

Matrix matrix_from_json(const Json& j) { return matrix_at(j, "matrix"); }
Vector vector_from_json(const Json& j) { return vector_at(j, "vector"); }

Algebra algebra_from_json(const Json& j) {
  const std::string where = "algebra";
  const PrimeField f = field_of(j, where);
  const std::size_t n = as_size(member(j, "dim", where), where + ".dim");
  if (n == 0) throw ParseError(where + ".dim: must be positive");
  const Json& sc = as_array(member(j, "sc", where), n, where + ".sc");
  std::vector<Elem> constants(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string wi = where + ".sc[" + std::to_string(i) + "]";
    as_array(sc[i], n, wi);
    for (std::size_t k = 0; k < n; ++k) {
      const std::string wk = wi + "[" + std::to_string(k) + "]";
      as_array(sc[i][k], n, wk);
      for (std::size_t t = 0; t < n; ++t)
        constants[(i * n + k) * n + t] = f.reduce(as_int(sc[i][k][t], wk + "[" + std::to_string(t) + "]"));
    }
  }
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    as_array(*it, n, where + ".labels");
    for (const auto& l : *it) {
      if (!l.is_string()) throw ParseError(where + ".labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return Algebra(f, n, std::move(constants), std::move(labels));
}

DiscreteBimodule bimodule_from_json(const Json& j) {
  DiscreteBimodule b = bimodule_at(j, "bimodule");
  if (auto r = validate_bimodule(b); !r.valid()) throw InvariantViolation(describe(r.violations.front()));
  return b;
}

MetabelianDatum datum_from_json(const Json& j) {
  const std::string where = "datum";
  DiscreteBimodule b = bimodule_at(j, where);
  const Json& rows = as_array(member(j, "theta", where), b.dim_p, where + ".theta");
  CocycleTable theta;
  for (std::size_t r = 0; r < b.dim_p; ++r) {
    const std::string wr = where + ".theta[" + std::to_string(r) + "]";
    as_array(rows[r], b.dim_p, wr);
    for (std::size_t k = 0; k < b.dim_p; ++k) {
      const std::string wk = wr + "[" + std::to_string(k) + "]";
      Vector v = vector_at(rows[r][k], wk);
      require_field(b.field, v.field(), wk);
      if (v.size() != b.dim_v) throw ParseError(wk + ": cocycle values must have dimV coordinates");
      theta.push_back(std::move(v));
    }
  }
  try {
    return make_datum(std::move(b), std::move(theta));
  } catch (const InvalidDatum& e) {
    throw InvariantViolation(e.what());
  }
}

BilinearForm form_from_json(const Json& j) {
  const std::string where = "form";
  const PrimeField f = field_of(j, where);
  const std::size_t n = as_size(member(j, "n", where), where + ".n");
  return BilinearForm(parse_rows(member(j, "matrix", where), f, n, n, where + ".matrix"));
}

TPair tpair_from_json(const Json& j) {
  const std::string where = "pair";
  const PrimeField f = field_of(j, where);
  const std::size_t n = as_size(member(j, "n", where), where + ".n");
  Matrix x = matrix_at(member(j, "X", where), where + ".X");
  Matrix y = matrix_at(member(j, "Y", where), where + ".Y");
  require_field(f, x.field(), where + ".X");
  require_field(f, y.field(), where + ".Y");
  for (const Matrix* m : {&x, &y})
    if (m->rows() != n || m->cols() != n) throw ParseError(where + ": X and Y must be n x n");
  auto t = validate_tpair(x, y);
  if (!t) throw InvariantViolation("T: X and Y must square to zero and commute");
  return *t;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Algebra parse_algebra(const std::filesystem::path& path) { return algebra_from_json(read_json_file(path)); }
MetabelianDatum parse_datum(const std::filesystem::path& path) { return datum_from_json(read_json_file(path)); }
BilinearForm parse_form(const std::filesystem::path& path) { return form_from_json(read_json_file(path)); }
TPair parse_tpair(const std::filesystem::path& path) { return tpair_from_json(read_json_file(path)); }

Vector parse_vector_list(PrimeField field, const std::string& text) {
  std::vector<Elem> coords;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      coords.push_back(field.reduce(v));
    } catch (const std::logic_error&) {
      throw ParseError("cannot read \"" + item + "\" as an integer");
    }
  }
  if (coords.empty()) throw ParseError("empty coordinate list");
  return Vector(field, std::move(coords));
}

}  // namespace metabel
