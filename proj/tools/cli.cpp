#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json_out.hpp"
#include "qdual/contraction.hpp"
#include "qdual/errors.hpp"
#include "qdual/modelfile.hpp"
#include "qdual/registry.hpp"

namespace qdual::cli {

namespace {

using nlohmann::json;

struct Common {
  Truncation t;
  bool json_output = false;
  bool text_output = false;
};

// One command's outcome: a JSON document and its text rendering.
struct Output {
  json doc = json::object();
  std::ostringstream text;
  Report report;
  int code = kPass;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<int> indices(const GeneratorSet& g, const std::string& list) {
  std::vector<int> out;
  for (const auto& n : split(list, ',')) out.push_back(g.require(n));
  return out;
}

void header(Output& o, const std::string& command, const Model& m, const Truncation& t) {
  o.doc["schema"] = 1;
  o.doc["command"] = command;
  o.doc["model"] = m.name;
  o.doc["truncation"] = {{"order", t.order}, {"degree", t.degree}, {"cushion", t.cushion}};
  o.text << command << " " << m.name << " (order " << t.order << ", degree " << t.degree << ", cushion " << t.cushion
         << ")\n";
}

void section(Output& o, const std::string& title) { o.text << "\n[" << title << "]\n"; }

void text_relations(Output& o, const HopfPresentation& h) {
  const GeneratorSet& g = h.generators();
  for (int j = 0; j < h.size(); ++j)
    for (int i = 0; i < j; ++i) {
      PBWForm v = h.engine().correction(j, i).truncated(h.degree());
      if (!v.is_zero()) o.text << "[" << g.names()[j] << ", " << g.names()[i] << "] = " << v.str(g) << "\n";
    }
}

void text_coproducts(Output& o, const HopfPresentation& h) {
  const GeneratorSet& g = h.generators();
  for (int i = 0; i < h.size(); ++i)
    o.text << "Delta(" << g.names()[i] << ") = " << h.generator_coproduct(i).leg_truncated(h.degree()).str(g) << "\n";
}

void finish(Output& o) {
  o.doc["checks"] = json_out::report(o.report);
  o.doc["pass"] = o.report.pass();
  if (!o.report.checks.empty()) {
    section(o, "checks");
    o.text << o.report.summary();
  }
  o.text << (o.report.pass() ? "PASS\n" : "FAIL\n");
  if (!o.report.pass() && o.code == kPass) o.code = kCheckFailure;
}

void prefixed(Report& into, Report r, const std::string& p) {
  for (auto& c : r.checks) c.name = p + c.name;
  into.merge(r);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string model;
  std::vector<std::string> checks;
  bool all = false;
  std::vector<std::string> subalgebras;
};

void cmd_verify(const VerifyArgs& a, const Common& c, Output& o) {
  auto m = resolve_model(a.model, c.t);
  header(o, "verify", *m, c.t);
  auto wants = [&](const std::string& k) {
    if (a.all || a.checks.empty()) return true;
    return std::find(a.checks.begin(), a.checks.end(), k) != a.checks.end();
  };
  for (const auto& k : a.checks)
    if (k != "hopf" && k != "bialgebra" && k != "coisotropy" && k != "representation")
      throw ConfigError("unknown check suite '" + k + "'");
  if (wants("hopf")) {
    prefixed(o.report, m->algebra->verify(), "algebra ");
    if (m->group) prefixed(o.report, m->group->verify(), "group ");
  }
  if (wants("representation"))
    for (const auto& r : m->representations)
      o.report.add(check_representation(r.on_group ? *m->group : *m->algebra, r));
  const bool is_algebra = m->algebra->kind() == PresentationKind::Algebra;
  if (is_algebra && (wants("bialgebra") || wants("coisotropy"))) {
    LieAlgebra g = m->algebra->classical_bracket();
    Cocommutator d = first_order_cocommutator(*m->algebra);
    o.doc["lie_algebra"] = json_out::lie_algebra(g);
    o.doc["cocommutator"] = json_out::cocommutator(d);
    section(o, "cocommutator");
    o.text << d.str() << "\n";
    if (wants("bialgebra")) {
      CheckResult jac = g.check_jacobi();
      jac.name = "classical jacobi";
      o.report.add(jac);
      CheckResult coc = check_cocycle(g, d);
      coc.name = "bialgebra cocycle";
      o.report.add(coc);
      CheckResult cj = check_cojacobi(d).check;
      cj.name = "bialgebra co-jacobi";
      o.report.add(cj);
    }
    if (wants("coisotropy"))
      for (const auto& s : a.subalgebras) {
        CheckResult r = coisotropy_check(d, indices(m->algebra->generators(), s));
        r.name = "coisotropy <" + s + ">";
        o.report.add(r);
      }
  }
  finish(o);
}

// ---------------------------------------------------------------- dualize

struct DualizeArgs {
  std::string model;
  std::vector<std::string> subsets;
};

GeneratorSetPtr coordinate_set(const Model& m) {
  if (m.group) return m.group->generators_ptr();
  std::vector<std::string> names;
  for (const auto& g : m.generator_names()) names.push_back("x_" + g);
  return std::make_shared<const GeneratorSet>(names, m.truncation.degree, m.truncation.working());
}

void cmd_dualize(const DualizeArgs& a, const Common& c, Output& o) {
  auto m = resolve_model(a.model, c.t);
  header(o, "dualize", *m, c.t);
  const HopfPresentation& h = *m->algebra;
  GeneratorSetPtr coords = coordinate_set(*m);
  const GeneratorSet& x = *coords;
  const GeneratorSet& gens = h.generators();

  FTensor f = compute_F(h);
  ETensor e = compute_E(h);
  o.report.merge(verify_recurrences(h, f));
  o.report.add(verify_dual_monomial_basis(h, f));

  json fslice = json::array();
  for (const auto& [rho, t] : f.entries)
    for (const auto& [k, v] : t.terms())
      if (k[0].total() == 1 && k[1].total() == 1)
        fslice.push_back({{"rho", json_out::pbw(PBWForm::monomial(rho), gens)["text"]},
                          {"mu", gens.names()[k[0].last()]},
                          {"nu", gens.names()[k[1].last()]},
                          {"coef", json_out::series(v)}});
  o.doc["F_unit_slice"] = fslice;

  RelationTable rel = dual_commutators(f);
  std::vector<TensorElement> cop = dual_coproducts(e);
  o.doc["dual_relations"] = json_out::relation_table(rel, x);
  o.doc["dual_coproducts"] = json_out::coproduct_list(cop, x);
  section(o, "dual relations");
  json closed = json::object();
  for (const auto& [key, v] : rel) {
    if (v.is_zero()) continue;
    std::string lhs = "[" + x.names()[key.first] + ", " + x.names()[key.second] + "]";
    o.text << lhs << " = " << v.str(x);
    if (auto r = recognize_series(v, x, f.degree)) {
      o.text << "  ~ " << *r;
      closed[lhs] = *r;
    }
    o.text << "\n";
  }
  o.doc["closed_forms"] = closed;
  section(o, "dual coproducts");
  for (std::size_t i = 0; i < cop.size(); ++i) o.text << "Delta(" << x.names()[i] << ") = " << cop[i].str(x) << "\n";

  if (m->group) {
    const HopfPresentation& g = *m->group;
    CheckResult same{"dual relations match the model"};
    for (const auto& [key, v] : rel) {
      PBWForm d = v - g.engine().correction(key.first, key.second).truncated(f.degree);
      if (!d.is_zero()) same.fail("[" + x.names()[key.first] + "," + x.names()[key.second] + "] differs by " + d.str(x));
    }
    o.report.add(same);
    o.report.add(check_coproduct_duality(g, e));
    o.report.add(check_product_duality(g, f, f.degree));
  }

  json poisson = json::array();
  std::vector<std::vector<int>> subsets{{}};
  for (const auto& s : a.subsets) subsets.push_back(indices(x, s));
  section(o, "poisson");
  for (const auto& s : subsets) {
    PoissonTable p = semiclassical_poisson(rel, x.size(), s);
    std::vector<std::string> names;
    for (int i : p.subset) names.push_back(x.names()[i]);
    poisson.push_back({{"subset", names}, {"brackets", json_out::relation_table(p.brackets, x)}, {"closes", p.closes.pass}});
    o.text << p.str(x);
    if (!s.empty()) {
      CheckResult cl = p.closes;
      std::string label;
      for (const auto& n : names) label += (label.empty() ? "" : ",") + n;
      cl.name = "poisson closure <" + label + ">";
      o.report.add(cl);
    }
  }
  o.doc["poisson"] = poisson;
  finish(o);
}

// ---------------------------------------------------------------- contract

struct ContractArgs {
  std::string model;
  std::string map;
  std::string mode = "fundamental";
  std::string level = "quantum";
  std::string output;
  std::string name;
};

// "name = k" lines, optionally under a [contraction NAME] header.
ContractionMap read_map_file(const std::string& path, const Model& m) {
  std::ifstream in(path);
  if (!in) throw UnknownModel("'" + path + "' is neither a contraction map of the model nor a readable file");
  ContractionMap phi;
  phi.name = "file";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto parts = split(line, '=');
    if (parts.empty()) continue;
    if (parts.size() == 1 && parts[0].front() == '[') {
      auto inner = split(parts[0].substr(1, parts[0].size() - 2), ' ');
      if (inner.size() == 2 && inner[0] == "contraction") phi.name = inner[1];
      continue;
    }
    if (parts.size() != 2) throw ParseError("expected 'name = exponent'", lineno, 1);
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("exponent must be an integer", lineno, static_cast<int>(line.find('=')) + 2);
    }
    const auto& gens = m.generator_names();
    if (std::find(gens.begin(), gens.end(), parts[0]) != gens.end()) {
      phi.generators.push_back(parts[0]);
      phi.generator_exponents.push_back(k);
    } else if (std::find(m.params.begin(), m.params.end(), parts[0]) != m.params.end()) {
      phi.param_exponents[parts[0]] = k;
    } else {
      throw ParseError("unknown generator or parameter '" + parts[0] + "'", lineno, 1);
    }
  }
  return phi;
}

ContractionMap find_map(const Model& m, const std::string& name_or_path) {
  for (const auto& c : m.contractions)
    if (c.name == name_or_path) return c;
  return read_map_file(name_or_path, m);
}

void cmd_contract(const ContractArgs& a, const Common& c, Output& o) {
  auto m = resolve_model(a.model, c.t);
  header(o, "contract", *m, c.t);
  ContractionMap phi = find_map(*m, a.map);
  ContractionMode mode = parse_contraction_mode(a.mode);
  if (a.level != "algebra" && a.level != "bialgebra" && a.level != "quantum" && a.level != "tmatrix")
    throw ConfigError("unknown contraction level '" + a.level + "'");
  o.doc["map"] = {{"name", phi.name}, {"mode", to_string(mode)}, {"level", a.level}};
  json gx = json::object();
  for (std::size_t i = 0; i < phi.generators.size(); ++i) gx[phi.generators[i]] = phi.generator_exponents[i];
  o.doc["map"]["generator_exponents"] = gx;

  const HopfPresentation& h = *m->algebra;
  LieAlgebra g = h.classical_bracket();
  LieAlgebra g2 = contract_lie_algebra(g, phi);
  o.doc["contracted_lie_algebra"] = json_out::lie_algebra(g2);
  section(o, "contracted Lie algebra");
  o.text << g2.str() << "\n";
  if (a.level == "algebra") {
    CheckResult jac = g2.check_jacobi();
    jac.name = "contracted jacobi";
    o.report.add(jac);
    finish(o);
    return;
  }

  Cocommutator d = first_order_cocommutator(h);
  FundamentalConstants fc = fundamental_constants(g, d, phi);
  auto n = parameter_exponents(fc, mode, phi);
  o.doc["fundamental_constants"] = json_out::constants(fc);
  o.doc["parameter_exponents"] = n;
  section(o, "fundamental constants");
  o.text << fc.str() << "\n";
  section(o, "parameter exponents");
  for (const auto& [p, e] : n) o.text << p << " -> eps^" << e << " " << p << "\n";

  ContractedBialgebra b = contract_bialgebra(g, d, phi, n);
  o.doc["contracted_cocommutator"] = json_out::cocommutator(b.cocommutator);
  section(o, "contracted cocommutator");
  o.text << b.cocommutator.str() << "\n";
  o.report.add(b.jacobi);
  o.report.add(b.cocycle);
  o.report.add(b.cojacobi);
  if (a.level == "bialgebra") {
    finish(o);
    return;
  }

  ContractedModel cm = contract_model(*m, phi, mode, a.name);
  o.report.merge(cm.report);
  o.report.add(check_commuting_square(h, phi, n));
  if (a.level == "tmatrix") {
    if (!m->group) throw ConfigError(m->name + " has no dual side for a T-matrix");
    TMatrix t;
    t.algebra = m->algebra;
    t.group = m->group;
    for (std::size_t i = 0; i < m->generator_names().size(); ++i)
      t.factors.emplace_back(m->coordinate_names()[i], m->generator_names()[i]);
    ContractedTMatrix ct = contract_tmatrix(t, phi, n);
    for (const auto& chk : ct.report.checks)
      if (chk.name.rfind("algebra ", 0) != 0 && chk.name.rfind("group ", 0) != 0 && chk.name != "pairing preserved")
        o.report.add(chk);
    json factors = json::array();
    std::string tm;
    for (const auto& [xc, gn] : t.factors) {
      factors.push_back({xc, gn});
      tm += "exp(" + xc + " (x) " + gn + ")";
    }
    o.doc["tmatrix"] = factors;
    section(o, "T-matrix");
    o.text << tm << "\n";
  }

  const Model& out = cm.model;
  o.doc["contracted"] = {{"relations", json_out::relations(*out.algebra)}, {"coproducts", json_out::coproducts(*out.algebra)}};
  section(o, "contracted relations");
  text_relations(o, *out.algebra);
  section(o, "contracted coproducts");
  text_coproducts(o, *out.algebra);
  if (out.group) {
    o.doc["contracted"]["dual_relations"] = json_out::relations(*out.group);
    o.doc["contracted"]["dual_coproducts"] = json_out::coproducts(*out.group);
    section(o, "contracted dual relations");
    text_relations(o, *out.group);
    section(o, "contracted dual coproducts");
    text_coproducts(o, *out.group);
  }
  std::string file = write_model(out);
  o.doc["model_file"] = file;
  if (!a.output.empty()) {
    std::ofstream f(a.output);
    if (!f) throw ConfigError("cannot write " + a.output);
    f << file;
    o.text << "\nmodel file written to " << a.output << "\n";
  } else {
    section(o, "model file");
    o.text << file;
  }
  finish(o);
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string model;
  std::vector<std::string> branch;
  std::string prefix = "t";
};

ScalarSeries scalar_value(const std::string& expr, const ParamSpace* space) {
  GeneratorSet none({}, 1, 1);
  ExprValue v = evaluate(parse_expression(expr), none, space);
  if (v.is_tensor) throw ConfigError("expected a scalar: " + expr);
  ScalarSeries out(space, Rational(0));
  for (const auto& [w, c] : v.poly.terms()) {
    if (!w.empty()) throw ConfigError("expected a scalar: " + expr);
    out += c;
  }
  return out;
}

void cmd_classify(const ClassifyArgs& a, const Common& c, Output& o) {
  auto m = resolve_model(a.model, c.t);
  header(o, "classify", *m, c.t);
  LieAlgebra g = m->algebra->classical_bracket();
  CocycleFamily fam = ansatz_cocycle_solve(g, a.prefix);
  CojacobiResult cj = check_cojacobi(fam.family);
  std::vector<ScalarSeries> basis = groebner_basis(cj.constraints);

  o.doc["lie_algebra"] = json_out::lie_algebra(g);
  o.doc["family"] = {{"params", fam.params}, {"cocommutator", json_out::cocommutator(fam.family)}};
  json cons = json::array(), gb = json::array();
  for (const auto& s : cj.constraints) cons.push_back(json_out::series(s));
  for (const auto& s : basis) gb.push_back(json_out::series(s));
  o.doc["cojacobi_constraints"] = cons;
  o.doc["groebner_basis"] = gb;
  section(o, "cocycle family (" + std::to_string(fam.params.size()) + " parameters)");
  o.text << fam.family.str() << "\n";
  section(o, "co-jacobi constraints");
  for (const auto& s : cj.constraints) o.text << s.str() << " = 0\n";
  section(o, "groebner basis");
  for (const auto& s : basis) o.text << s.str() << " = 0\n";

  if (!a.branch.empty()) {
    std::vector<std::pair<std::string, ScalarSeries>> assignments;
    for (const auto& b : a.branch)
      for (const auto& item : split(b, ',')) {
        auto parts = split(item, '=');
        if (parts.size() != 2) throw ConfigError("branch assignment must read 'param = value': " + item);
        assignments.emplace_back(parts[0], scalar_value(parts[1], fam.family.space()));
      }
    // The family lives in its own parameter space; the bracket must follow it.
    LieAlgebra gf(g.names(), fam.family.space());
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j) {
        std::vector<ScalarSeries> row;
        for (int l = 0; l < g.dim(); ++l) row.push_back(g.c(i, j, l).rebased(fam.family.space()));
        gf.set_bracket(i, j, row);
      }
    BranchResult br = branch_substitute(gf, fam.family, assignments);
    o.doc["branch"] = {{"cocommutator", json_out::cocommutator(br.family)}};
    section(o, "branch");
    o.text << br.family.str() << "\n";
    br.cocycle.name = "branch cocycle";
    br.cojacobi.check.name = "branch co-jacobi";
    o.report.add(br.cocycle);
    o.report.add(br.cojacobi.check);
  }
  finish(o);
}

// ---------------------------------------------------------------- realize

struct RealizeArgs {
  std::string model;
  std::string rep;
};

void cmd_realize(const RealizeArgs& a, const Common& c, Output& o) {
  auto m = resolve_model(a.model, c.t);
  header(o, "realize", *m, c.t);
  if (m->representations.empty()) throw ConfigError(m->name + " has no representations");
  if (!m->group) throw ConfigError(m->name + " has no dual side to realize");
  const Representation& r = a.rep.empty() ? m->representations.front() : m->representation(a.rep);
  const HopfPresentation& entries = r.on_group ? *m->algebra : *m->group;
  AlgebraMatrix t = realize_T(*m, r);
  o.doc["representation"] = r.name;
  o.doc["matrix"] = json_out::algebra_matrix(t, entries.generators());
  section(o, "T-matrix under " + r.name);
  o.text << t.str(entries.generators()) << "\n";

  CoproductReadout ro = coproduct_readout(entries, t);
  o.report.add(ro.consistency);
  o.doc["exact_order"] = ro.exact_order;
  o.doc["readout"] = json_out::coproduct_list(ro.coproducts, entries.generators());
  section(o, "coproduct readout (exact through order " + std::to_string(ro.exact_order) + ")");
  const GeneratorSet& eg = entries.generators();
  CheckResult match{"readout matches the model coproducts"};
  for (int i = 0; i < entries.size(); ++i) {
    o.text << "Delta(" << eg.names()[i] << ") = " << ro.coproducts[i].str(eg) << "\n";
    TensorElement diff = (ro.coproducts[i] - entries.generator_coproduct(i))
                             .total_truncated(entries.degree())
                             .map_coefficients([&](const ScalarSeries& s) { return s.truncated(ro.exact_order); });
    if (!diff.is_zero()) match.fail("Delta(" + eg.names()[i] + ") differs by " + diff.str(eg));
  }
  o.report.add(match);
  finish(o);
}

// ---------------------------------------------------------------- list

void cmd_list(Output& o) {
  o.doc["schema"] = 1;
  o.doc["command"] = "list";
  o.doc["models"] = catalog();
  for (const auto& n : catalog()) o.text << n << "\n";
}

void emit(const Output& o, const Common& c, std::ostream& out) {
  if (c.json_output && !c.text_output)
    out << o.doc.dump(2) << "\n";
  else
    out << o.text.str();
}

int fail(const Common& c, const std::string& command, const std::string& kind, const std::string& what, int code,
         std::ostream& out, std::ostream& err) {
  if (c.json_output && !c.text_output) {
    json doc{{"schema", 1}, {"command", command}, {"error", {{"kind", kind}, {"message", what}}}};
    out << doc.dump(2) << "\n";
  }
  err << "error (" << kind << "): " << what << "\n";
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic Hopf-algebra duality and contraction engine"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s) {
    s->add_option("--order", c.t.order, "deformation truncation order N")->capture_default_str();
    s->add_option("--degree", c.t.degree, "generator degree cutoff D")->capture_default_str();
    s->add_option("--cushion", c.t.cushion, "extra working degree above D")->capture_default_str();
    s->add_flag("--json", c.json_output, "machine-readable report");
    s->add_flag("--text", c.text_output, "plain-text report (default)");
  };

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run axiom suites on a model");
  verify->add_option("model", va.model, "catalog name or model file")->required();
  verify->add_option("--checks", va.checks, "hopf, bialgebra, coisotropy, representation")->delimiter(',');
  verify->add_flag("--all", va.all, "every suite");
  verify->add_option("--subalgebra", va.subalgebras, "comma-separated generators for a coisotropy check");
  common(verify);

  DualizeArgs da;
  auto* dualize = app.add_subcommand("dualize", "derive the dual Hopf algebra from the structure tensors");
  dualize->add_option("model", da.model, "catalog name or model file")->required();
  dualize->add_option("--subset", da.subsets, "comma-separated coordinates for a Poisson quotient table");
  common(dualize);

  ContractArgs ca;
  auto* contract = app.add_subcommand("contract", "contract a model under a diagonal map");
  contract->add_option("model", ca.model, "catalog name or model file")->required();
  contract->add_option("--map", ca.map, "map name in the model, or a map file")->required();
  contract->add_option("--mode", ca.mode, "fundamental, homogeneous or explicit")->capture_default_str();
  contract->add_option("--level", ca.level, "algebra, bialgebra, quantum or tmatrix")->capture_default_str();
  contract->add_option("--output", ca.output, "write the contracted model file here");
  contract->add_option("--name", ca.name, "name of the contracted model");
  common(contract);

  ClassifyArgs cla;
  auto* classify = app.add_subcommand("classify", "solve the cocycle ansatz and the co-Jacobi constraints");
  classify->add_option("model", cla.model, "catalog name or model file")->required();
  classify->add_option("--branch", cla.branch, "assignments such as 't4 = t2, t1 = 0'");
  classify->add_option("--prefix", cla.prefix, "family parameter prefix")->capture_default_str();
  common(classify);

  RealizeArgs ra;
  auto* realize = app.add_subcommand("realize", "realize the T-matrix in a representation and read off coproducts");
  realize->add_option("model", ra.model, "catalog name or model file")->required();
  realize->add_option("--rep", ra.rep, "representation name (default: the first)");
  common(realize);

  auto* list = app.add_subcommand("list", "catalog names");
  common(list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Output o;
  try {
    if (verify->parsed()) cmd_verify(va, c, o);
    if (dualize->parsed()) cmd_dualize(da, c, o);
    if (contract->parsed()) cmd_contract(ca, c, o);
    if (classify->parsed()) cmd_classify(cla, c, o);
    if (realize->parsed()) cmd_realize(ra, c, o);
    if (list->parsed()) cmd_list(o);
  } catch (const DivergentLimit& e) {
    return fail(c, command, "divergent-limit", e.what(), kDivergence, out, err);
  } catch (const ParseError& e) {
    return fail(c, command, "parse", e.what(), kUsage, out, err);
  } catch (const UnknownModel& e) {
    return fail(c, command, "unknown-model", e.what(), kUsage, out, err);
  } catch (const ConfigError& e) {
    return fail(c, command, "config", e.what(), kUsage, out, err);
  } catch (const Error& e) {
    return fail(c, command, "check", e.what(), kCheckFailure, out, err);
  }
  emit(o, c, out);
  return o.code;
}

}  // namespace qdual::cli
