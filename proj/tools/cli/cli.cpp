#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acceptance/acceptance_suite.hpp"
#include "metabel/algcore.hpp"
#include "metabel/codimone.hpp"
#include "metabel/cohomo.hpp"
#include "metabel/datum.hpp"
#include "metabel/dimone.hpp"
#include "metabel/errors.hpp"
#include "metabel/serialize.hpp"

namespace metabel::cli {

bool RunReport::ok() const {
  for (const auto& [name, pass] : assertions)
    if (!pass) return false;
  return true;
}

std::string RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["counts"] = Json::object();
  for (const auto& [k, v] : counts) j["counts"][k] = v;
  j["seconds"] = seconds;
  j["assertions"] = Json::array();
  for (const auto& [name, pass] : assertions) j["assertions"].push_back({{"name", name}, {"pass", pass}});
  j["outputs"] = outputs;
  j["ok"] = ok();
  return j.dump();
}

namespace {

struct Config {
  std::uint32_t p = 2;
  std::size_t n = 2;
  std::size_t dim_p = 1;
  std::size_t dim_v = 1;
  std::optional<std::uint64_t> budget;
  std::size_t jobs = 1;
  std::string format = "json";
  std::string out;

  PrimeField field() const {
    if (!is_prime(p) || p > 251) throw ParseError("--p must be a prime between 2 and 251");
    return PrimeField(p);
  }
  std::uint64_t enumeration_budget() const { return budget.value_or(kDefaultEnumerationBudget); }
  SearchOptions search() const {
    SearchOptions s;
    if (budget) s.budget = *budget;
    return s;
  }
};

std::string matrix_cell(const Matrix& m) {
  std::ostringstream s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s << '|';
    for (std::size_t j = 0; j < m.cols(); ++j) s << (j ? " " : "") << m.at(i, j);
  }
  return s.str();
}

Json basis_json(const Subspace& s) {
  Json out = Json::array();
  for (const Vector& v : s.basis()) out.push_back(std::vector<Elem>(v.coords().begin(), v.coords().end()));
  return out;
}

class Runner {
public:
  Runner(const Config& cfg, RunReport& report, std::ostream& out) : cfg_(cfg), report_(report), out_(out) {}

  void emit(const std::string& text) {
    if (cfg_.out.empty()) {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << '\n';
      return;
    }
    std::ofstream file(cfg_.out);
    if (!file) throw ParseError("cannot write " + cfg_.out);
    file << text;
    if (!text.empty() && text.back() != '\n') file << '\n';
    report_.outputs.push_back(cfg_.out);
  }
  void emit(const Json& j) { emit(j.dump(2)); }

  const Config& cfg_;
  RunReport& report_;
  std::ostream& out_;
};

void cmd_validate(Runner& r, const std::string& algebra, const std::string& datum, const std::string& form,
                  const std::string& pair) {
  const int given = !algebra.empty() + !datum.empty() + !form.empty() + !pair.empty();
  if (given != 1) throw ParseError("validate needs exactly one of --algebra, --datum, --form, --pair");
  Json j;
  if (!algebra.empty()) {
    Algebra a = parse_algebra(algebra);
    const bool assoc = is_associative(a);
    j = {{"kind", "algebra"}, {"valid", true}, {"dim", a.dim()}, {"associative", assoc}};
    if (assoc) j["metabelian"] = is_metabelian(a);
  } else if (!datum.empty()) {
    MetabelianDatum d = parse_datum(datum);
    j = {{"kind", "datum"}, {"valid", true}, {"dimP", d.bimodule.dim_p}, {"dimV", d.bimodule.dim_v}};
  } else if (!form.empty()) {
    BilinearForm f = parse_form(form);
    j = {{"kind", "form"}, {"valid", true}, {"n", f.n()}, {"rank", rank(f.matrix())}};
  } else {
    TPair t = parse_tpair(pair);
    j = {{"kind", "pair"}, {"valid", true}, {"n", t.n()}};
  }
  r.report_.check("input satisfies its invariants", true);
  r.emit(j);
}

void cmd_product(Runner& r, const std::string& datum) {
  ExtensionTriple e = metabelian_product(parse_datum(datum));
  r.report_.check("product is associative", is_associative(e.total));
  r.report_.check("product is metabelian", is_metabelian(e.total));
  r.report_.counts["dim"] = e.total.dim();
  r.emit(to_json(e.total));
}

void cmd_decompose(Runner& r, const std::string& algebra) {
  Algebra a = parse_algebra(algebra);
  if (!is_associative(a)) throw NotAssociative("decompose: algebra is not associative");
  Decomposition d = decompose(a);
  ExtensionTriple product = metabelian_product(d.datum);
  const bool equivalent = extension_equivalent(product, d.as_extension).has_value();
  r.report_.check("phi is an algebra isomorphism", is_algebra_morphism(product.total, a, d.iso));
  r.report_.check("product is extension-equivalent to the algebra", equivalent);
  Json j{{"datum", to_json(d.datum)}, {"iso", to_json(d.iso)}, {"derived", basis_json(d.section.derived)}};
  r.emit(j);
}

void cmd_iso(Runner& r, const std::string& a_path, const std::string& b_path) {
  Algebra a = parse_algebra(a_path);
  Algebra b = parse_algebra(b_path);
  auto map = find_isomorphism(a, b, r.cfg_.search());
  if (map) r.report_.check("witness is an algebra isomorphism", is_algebra_morphism(a, b, *map));
  r.emit(Json{{"isomorphic", map.has_value()}, {"map", map ? to_json(*map) : Json(nullptr)}});
}

void cmd_aut(Runner& r, const std::string& algebra, const std::string& form) {
  if (algebra.empty() == form.empty()) throw ParseError("aut needs exactly one of --algebra, --form");
  if (!algebra.empty()) {
    auto auts = automorphism_group(parse_algebra(algebra), r.cfg_.search());
    Json list = Json::array();
    for (const Matrix& m : auts) list.push_back(to_json(m));
    r.report_.counts["order"] = auts.size();
    r.emit(Json{{"order", auts.size()}, {"automorphisms", std::move(list)}});
    return;
  }
  BilinearForm theta = parse_form(form);
  GGroupReport rep = verify_aut_group(theta, r.cfg_.search());
  r.report_.check("G closed under the group law", rep.closed);
  r.report_.check("G has identity and inverses", rep.has_inverses);
  r.report_.check("(u, lambda, psi) -> phi is a homomorphism", rep.homomorphism);
  r.report_.check("(u, lambda, psi) -> phi is a bijection onto Aut(P_theta)", rep.bijection);
  r.report_.counts["order"] = rep.group_order;
  r.report_.counts["automorphisms"] = rep.automorphism_count;
  Json list = Json::array();
  if (rep.ok())
    for (const GElement& g : aut_group_G(theta, r.cfg_.search())) list.push_back(to_json(g));
  r.emit(Json{{"order", rep.group_order}, {"automorphisms", rep.automorphism_count}, {"elements", std::move(list)}});
}

void cmd_ito(Runner& r, const std::string& algebra) {
  Algebra a = parse_algebra(algebra);
  if (!is_associative(a)) throw NotAssociative("ito: algebra is not associative");
  auto pair = find_abelian_sum(a);
  Json j{{"decomposable", pair.has_value()}};
  if (pair) {
    ItoReport rep = ito_check(a, pair->first, pair->second);
    j["P0"] = basis_json(pair->first);
    j["V0"] = basis_json(pair->second);
    j["metabelian"] = rep.metabelian;
    j["fourFoldZero"] = rep.four_fold_zero;
    r.report_.check("sum of two abelian subalgebras is metabelian", rep.conclusion_holds());
  } else {
    j["metabelian"] = is_metabelian(a);
  }
  r.emit(j);
}

void cmd_ext(Runner& r, bool verify) {
  const Config& c = r.cfg_;
  ExtCatalog cat = ext_enumerate(c.dim_p, c.dim_v, c.field(), ExtOptions{c.enumeration_budget(), verify});
  r.report_.counts["bimodules"] = cat.bimodules.size();
  r.report_.counts["datums"] = cat.datum_count;
  r.report_.counts["classes"] = cat.entries.size();
  if (verify) r.report_.check("every datum matches exactly one catalog entry", cat.verified);
  if (c.format == "csv")
    r.emit(ext_summary_csv(cat));
  else
    r.emit(to_json(cat));
}

void cmd_classify_dim1(Runner& r, const std::string& mode) {
  const Config& c = r.cfg_;
  if (mode != "homothety" && mode != "isometry") throw ParseError("--mode must be homothety or isometry");
  const PrimeField f = c.field();
  Theorem2Report t2 = theorem2_agreement(c.n, f, c.jobs, c.search());
  auto classes = classify_forms(c.n, f, mode == "homothety" ? FormRelation::Homothety : FormRelation::Isometry,
                                c.enumeration_budget());
  r.report_.counts["forms"] = t2.forms;
  r.report_.counts["pairs"] = t2.pairs;
  r.report_.counts["classes"] = classes.size();
  r.report_.counts["disagreements"] = t2.disagreements;
  r.report_.check("isomorphism verdicts equal homothety verdicts", t2.disagreements == 0);
  std::ostringstream csv;
  csv << "class,representative,size,disagreements\n";
  for (std::size_t i = 0; i < classes.size(); ++i)
    csv << i << ',' << matrix_cell(classes[i].representative.matrix()) << ',' << classes[i].size << ','
        << t2.disagreements << '\n';
  r.emit(csv.str());
}

void cmd_catalog(Runner& r, const std::string& family, std::optional<std::int64_t> a,
                 std::optional<std::int64_t> b) {
  const Config& c = r.cfg_;
  CatalogValue v = catalog(family, c.field(), CatalogParams{a, b});
  Json j{{"family", family}, {"p", c.p}, {"formal", true}};
  if (a) j["a"] = *a;
  if (b) j["b"] = *b;
  if (auto* f = std::get_if<BilinearForm>(&v))
    j["form"] = to_json(*f);
  else
    j["algebra"] = to_json(std::get<Algebra>(v));
  r.emit(j);
}

void cmd_enumerate_t(Runner& r) {
  const Config& c = r.cfg_;
  std::ostringstream csv;
  Json arr = Json::array();
  std::uint64_t count = 0, classes_total = 0;
  csv << "X,Y,equalizer,image,classes\n";
  for_each_tpair(c.n, c.field(), [&](const TPair& t) {
    const Subspace eq = equalizer(t);
    const Subspace im = im_sum(t);
    const std::uint64_t classes = saturating_pow(c.p, eq.dim() - im.dim());
    ++count;
    classes_total += classes;
    csv << matrix_cell(t.x) << ',' << matrix_cell(t.y) << ',' << eq.cardinality() << ',' << im.cardinality()
        << ',' << classes << '\n';
    arr.push_back(Json{{"X", to_json(t.x)}, {"Y", to_json(t.y)}, {"equalizer", eq.cardinality()},
                       {"image", im.cardinality()}, {"classes", classes}});
  }, c.enumeration_budget());
  r.report_.counts["pairs"] = count;
  r.report_.counts["classes"] = classes_total;
  if (c.format == "json")
    r.emit(arr);
  else
    r.emit(csv.str());
}

void cmd_build_codim1(Runner& r, const std::string& pair, const std::string& u) {
  TPair t = parse_tpair(pair);
  ExtensionTriple e = build_algebra(ExtClassRep{t, parse_vector_list(t.field(), u)});
  r.report_.check("algebra is associative", is_associative(e.total));
  r.report_.check("algebra is metabelian", is_metabelian(e.total));
  r.emit(to_json(e.total));
}

void cmd_census(Runner& r, const std::string& kind) {
  const Config& c = r.cfg_;
  if (kind != "met-kv" && kind != "ext-k" && kind != "all") throw ParseError("--kind must be met-kv, ext-k or all");
  Json j{{"p", c.p}, {"dimV", c.dim_v}};
  if (kind != "ext-k") {
    MetKVReport m = met_kv_census(c.dim_v, c.field(), c.enumeration_budget());
    j["metKV"] = {{"datums", m.datum_count}, {"triples", m.triple_count}, {"kernelSum", m.kernel_sum},
                  {"bijection", m.bijection_ok}};
    r.report_.check("datum count equals triple count", m.datum_count == m.triple_count);
    r.report_.check("triple count equals sum of equalizer sizes", m.triple_count == m.kernel_sum);
    r.report_.check("theta(p, q) = pq zeta is a bijection", m.bijection_ok);
  }
  if (kind != "met-kv") {
    ExtKReport e = ext_k_census(c.dim_v, c.field(), c.enumeration_budget());
    j["extK"] = {{"quotientSum", e.quotient_sum}, {"catalogSize", e.catalog_size},
                 {"bruteForceClasses", e.brute_force_classes}};
    r.report_.counts["classes"] = e.quotient_sum;
    r.report_.check("quotient sum equals catalog size", e.quotient_sum == e.catalog_size);
    r.report_.check("catalog size equals brute-force class count", e.catalog_size == e.brute_force_classes);
  }
  r.emit(j);
}

void cmd_selftest(Runner& r) {
  auto results = acceptance::run_suite(acceptance::SuiteOptions{r.cfg_.jobs});
  std::ostringstream text;
  acceptance::print_results(text, results);
  for (const auto& c : results) r.report_.check("criterion " + std::to_string(c.id) + ": " + c.title, c.pass);
  r.emit(text.str());
}

std::optional<std::uint64_t> env_budget() {
  const char* raw = std::getenv("METABEL_BUDGET");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size() || v == 0) throw std::invalid_argument(raw);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(std::string("METABEL_BUDGET is not a positive integer: ") + raw);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with metabelian algebras over prime fields", "metabel"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--p", cfg.p, "Field modulus (prime)");
  app.add_option("--n", cfg.n, "Dimension of the form or matrix space");
  app.add_option("--dimP", cfg.dim_p, "Dimension of P");
  app.add_option("--dimV", cfg.dim_v, "Dimension of V");
  app.add_option("--budget", cfg.budget, "Enumeration or search budget (default from METABEL_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads for pairwise enumerations")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "Write the artifact to this path instead of stdout");

  std::string algebra, datum, form, pair, a_path, b_path, family, mode = "homothety", kind = "all", u;
  std::optional<std::int64_t> param_a, param_b;
  bool no_verify = false;

  auto* validate = app.add_subcommand("validate", "Parse and validate an input file");
  validate->add_option("--algebra", algebra);
  validate->add_option("--datum", datum);
  validate->add_option("--form", form);
  validate->add_option("--pair", pair);

  auto* product = app.add_subcommand("product", "Metabelian product of a datum");
  product->add_option("--datum", datum)->required();

  auto* decomp = app.add_subcommand("decompose", "Write a metabelian algebra as a metabelian product");
  decomp->add_option("--algebra", algebra)->required();

  auto* iso = app.add_subcommand("iso", "Search for an algebra isomorphism");
  iso->add_option("--a", a_path)->required();
  iso->add_option("--b", b_path)->required();

  auto* aut = app.add_subcommand("aut", "Automorphisms of an algebra, or G(P, theta) of a form");
  aut->add_option("--algebra", algebra);
  aut->add_option("--form", form);

  auto* ito = app.add_subcommand("ito", "Search for a decomposition into two abelian subalgebras");
  ito->add_option("--algebra", algebra)->required();

  auto* ext = app.add_subcommand("ext", "Enumerate Ext(P, V) through discrete cohomology");
  ext->add_flag("--no-verify", no_verify, "Skip the brute-force equivalence check");

  auto* classify = app.add_subcommand("classify-dim1", "Classify P_theta by homothety of forms");
  classify->add_option("--mode", mode)->check(CLI::IsMember({"homothety", "isometry"}));

  auto* cat = app.add_subcommand("catalog", "Instantiate a canonical form or algebra");
  cat->add_option("--family", family)->required();
  cat->add_option("--a", param_a);
  cat->add_option("--b", param_b);

  auto* enum_t = app.add_subcommand("enumerate-T", "Pairs of commuting square-zero matrices");

  auto* build = app.add_subcommand("build-codim1", "Algebra k^{n+1}_{X,Y,u}");
  build->add_option("--pair", pair)->required();
  build->add_option("--u", u)->required();

  auto* census = app.add_subcommand("census", "Codimension-one census cross-checks");
  census->add_option("--kind", kind)->check(CLI::IsMember({"met-kv", "ext-k", "all"}));

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  RunReport report;
  for (int i = 1; i < argc; ++i) report.command += (i > 1 ? " " : "") + std::string(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (!cfg.budget) cfg.budget = env_budget();
    // enumerate-T is a human-facing table unless JSON is asked for.
    if (enum_t->parsed() && app.get_option("--format")->count() == 0) cfg.format = "csv";
    Runner r(cfg, report, out);
    if (validate->parsed()) cmd_validate(r, algebra, datum, form, pair);
    else if (product->parsed()) cmd_product(r, datum);
    else if (decomp->parsed()) cmd_decompose(r, algebra);
    else if (iso->parsed()) cmd_iso(r, a_path, b_path);
    else if (aut->parsed()) cmd_aut(r, algebra, form);
    else if (ito->parsed()) cmd_ito(r, algebra);
    else if (ext->parsed()) cmd_ext(r, !no_verify);
    else if (classify->parsed()) cmd_classify_dim1(r, mode);
    else if (cat->parsed()) cmd_catalog(r, family, param_a, param_b);
    else if (enum_t->parsed()) cmd_enumerate_t(r);
    else if (build->parsed()) cmd_build_codim1(r, pair, u);
    else if (census->parsed()) cmd_census(r, kind);
    else if (selftest->parsed()) cmd_selftest(r);
    code = report.ok() ? kExitOk : kExitAssertionFailed;
  } catch (const InternalError& e) {
    report.check(std::string("internal consistency: ") + e.what(), false);
    code = kExitAssertionFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    code = kExitParseError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kExitParseError;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << report.to_json() << '\n';
  return code;
}

}  // namespace metabel::cli
