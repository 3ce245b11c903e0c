#include "cli.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "svsec/normality.hpp"
#include "svsec/singular.hpp"

namespace svsec::cli {

using nlohmann::json;

namespace {

Budget to_budget(const Limits& l) {
  Budget b;
  b.max_nodes = l.max_nodes;
  b.max_points = l.max_points;
  return b;
}

void check_size(const SVParams& p, const Limits& l) {
  const auto n = predicted_point_count(p);
  if (l.max_points != 0 && n > l.max_points)
    throw BudgetExceeded(p.str() + " has " + std::to_string(n) + " lattice points, budget is " +
                         std::to_string(l.max_points));
}

json params_json(const SVParams& p) {
  const SVParams c = p.canonical();
  return {{"a", p.a}, {"b", p.b}, {"canonical", {{"a", c.a}, {"b", c.b}}}};
}

json rationals(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json labels_json(const std::vector<Label>& ls) {
  json out = json::array();
  for (const auto& l : ls) out.push_back(l.str());
  return out;
}

json facet_report_json(const FacetReport& r) {
  json ex = json::array();
  for (const auto& e : r.exceptions) ex.push_back({{"kind", to_string(e.kind)}, {"missing", e.missing.str()}});
  return {{"dim_case", to_string(r.dim_case)},
          {"dim", r.dim},
          {"facet_count", r.facet_count},
          {"present", labels_json(r.present_facets)},
          {"exceptions", ex}};
}

json facets_json(const Analysis& an, const SVParams& canonical) {
  const FacetCheck fc = compare_facet_reports(expected_facet_report(canonical), computed_facet_report(an, canonical));
  json body = {{"agree", fc.agree},
               {"expected", facet_report_json(fc.expected)},
               {"computed", facet_report_json(fc.computed)}};
  if (!fc.details.empty()) body["details"] = fc.details;
  return body;
}

json gorenstein_json(const Classification& c) {
  return {{"status", to_string(c.status)},
          {"tag", to_string(c.tag)},
          {"expected_status", to_string(status_of(c.tag))},
          {"beta", rationals(c.beta)},
          {"beta_verified", c.beta_verified},
          {"fills_ambient", c.fills_ambient},
          {"agree", c.agree}};
}

json singular_json(const Analysis& an, const SingularReport& r) {
  std::vector<json> comps;
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    json blocks = json::array({c.i1});
    if (c.kind == SingularComponent::Kind::PairOnes) blocks.push_back(c.i2);
    json points = json::array();
    for (auto idx : c.points) points.push_back(an.polytope().points().point(idx));
    json tight = json::array();
    for (auto f : c.face.facets) tight.push_back(labels_json(an.facets()[f].labels));
    comps.push_back({{"label", kind_label(c)},
                     {"kind", to_string(c.kind)},
                     {"blocks", blocks},
                     {"face_dim", c.face.dim},
                     {"tight_facets", tight},
                     {"points", points},
                     {"points_match", r.descriptions[i].points_match},
                     {"description", r.descriptions[i].text}});
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const json& x, const json& y) { return x["label"].get<std::string>() < y["label"].get<std::string>(); });
  return {{"count", r.components.size()},
          {"expected", r.expected_count},
          {"agree", r.agree},
          {"components", comps},
          {"vp_smooth", r.vp_smooth},
          {"fills_ambient", r.fills_ambient},
          {"sing_locus_equals_x", r.sing_locus_equals_x},
          {"expected_sing_locus_equals_x", r.expected_sing_locus_equals_x}};
}

// Runs f and maps budget failures to exit code 3.
template <class F>
Result guarded(F&& f) {
  try {
    return f();
  } catch (const BudgetExceeded& e) {
    return {{{"error", "budget"}, {"message", e.what()}}, kBudget};
  }
}

json scan_row(const SVParams& p, const Limits& limits) {
  json row = {{"params", p.str()}, {"a", p.a}, {"b", p.b}, {"tag", to_string(expected_tag(p))},
              {"points", predicted_point_count(p)}};
  try {
    check_size(p, limits);
    const Analysis an(build_polytope(p, to_budget(limits)));
    const json f = facets_json(an, p);
    const Classification c = cross_check(an, p);
    const SingularReport s = singular_report(an, p);
    const bool agree = f["agree"].get<bool>() && c.agree && s.agree;
    row.update({{"skipped", false},
                {"dim_case", f["computed"]["dim_case"]},
                {"status", to_string(c.status)},
                {"beta_verified", c.beta_verified},
                {"facets_agree", f["agree"]},
                {"status_agree", c.agree},
                {"singular_count", s.components.size()},
                {"singular_expected", s.expected_count},
                {"singular_agree", s.agree},
                {"agree", agree}});
  } catch (const BudgetExceeded& e) {
    row.update({{"skipped", true}, {"reason", e.what()}});
  }
  return row;
}

LabeledComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_complex(in);
}

json residuals_json(const LabeledComplex& c, const std::vector<SimplexResidual>& rs) {
  json out = json::array();
  const auto names = parameter_names(c);
  for (const auto& r : rs) out.push_back({{"simplex", c.variable_name(r.simplex)}, {"residual", r.residual.str(names)}});
  return out;
}

json complex_json(const LabeledComplex& c) {
  json simplices = json::array();
  for (std::size_t s = 1; s < c.simplices().size(); ++s) simplices.push_back(c.variable_name(s));
  return {{"labels", c.label_names()}, {"vertices", c.vertex_count()}, {"simplices", simplices}};
}

json binomials_json(const LabeledComplex& c, unsigned degree_bound) {
  json list = json::array();
  bool all_vanish = true;
  for (const auto& b : toric_binomials(c, degree_bound)) {
    const bool v = binomial_vanishes(c, b);
    all_vanish = all_vanish && v;
    list.push_back({{"binomial", binomial_str(c, b)}, {"vanishes", v}});
  }
  return {{"degree_bound", degree_bound}, {"list", list}, {"all_vanish", all_vanish}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s + "]";
  }
  return v.dump();
}

bool is_flat(const json& v) {
  if (v.is_object()) return false;
  if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const json& x) { return is_flat(x); });
  return true;
}

void render_tree(std::ostringstream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (is_flat(x)) {
        os << pad << k << ": " << scalar_text(x) << "\n";
      } else {
        os << pad << k << ":\n";
        render_tree(os, x, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (is_flat(x)) {
        os << pad << "- " << scalar_text(x) << "\n";
      } else {
        os << pad << "-\n";
        render_tree(os, x, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(v) << "\n";
  }
}

std::string render_scan(const json& body) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "params" << std::setw(6) << "tag" << std::setw(17) << "status"
     << std::setw(8) << "facets" << std::setw(8) << "class" << std::setw(10) << "singular" << "points\n";
  auto mark = [](const json& row, const char* key) { return row[key].get<bool>() ? "ok" : "FAIL"; };
  for (const auto& row : body["rows"]) {
    os << std::setw(28) << row["params"].get<std::string>() << std::setw(6) << row["tag"].get<std::string>();
    if (row["skipped"].get<bool>()) {
      os << "skipped: " << row["reason"].get<std::string>() << "\n";
      continue;
    }
    os << std::setw(17) << row["status"].get<std::string>() << std::setw(8) << mark(row, "facets_agree")
       << std::setw(8) << mark(row, "status_agree") << std::setw(10)
       << (std::to_string(row["singular_count"].get<std::size_t>()) + "/" +
           std::to_string(row["singular_expected"].get<std::size_t>()) + (row["singular_agree"].get<bool>() ? "" : "!"))
       << row["points"].get<std::uint64_t>() << "\n";
  }
  const auto& s = body["summary"];
  os << "instances " << s["instances"] << ", computed " << s["computed"] << ", skipped " << s["skipped"]
     << ", disagreements " << s["disagreements"] << "\n";
  for (const auto& d : s["disagreeing"]) os << "  disagreement: " << d.get<std::string>() << "\n";
  return os.str();
}

}  // namespace

bool tag_matches(CaseTag tag, const std::string& patterns) {
  const std::string name = to_string(tag);
  std::istringstream in(patterns);
  std::string pat;
  while (std::getline(in, pat, ','))
    if (!pat.empty() && fnmatch(pat.c_str(), name.c_str(), 0) == 0) return true;
  return false;
}

Result classify(const SVParams& p, const Limits& limits) {
  return guarded([&] {
    check_size(p, limits);
    const SVParams c = p.canonical();
    const Analysis an(build_polytope(c, to_budget(limits)));
    const json f = facets_json(an, c);
    const Classification cl = cross_check(an, c);
    const SingularReport s = singular_report(an, c);
    json body = {{"params", params_json(p)},
                 {"dim", an.dim()},
                 {"dim_case", f["computed"]["dim_case"]},
                 {"points", an.polytope().points().size()},
                 {"facets", {{"agree", f["agree"]}, {"present", f["computed"]["present"]}}},
                 {"gorenstein", gorenstein_json(cl)},
                 {"singular", singular_json(an, s)}};
    const bool agree = f["agree"].get<bool>() && cl.agree && s.agree;
    body["agree"] = agree;
    return Result{body, agree ? kOk : kDisagreement};
  });
}

Result facets(const SVParams& p, const Limits& limits) {
  return guarded([&] {
    check_size(p, limits);
    const SVParams c = p.canonical();
    const Analysis an(build_polytope(c, to_budget(limits)));
    json body = facets_json(an, c);
    body["params"] = params_json(p);
    json ineqs = json::array();
    for (const auto& f : an.facets()) {
      const auto& ineq = an.polytope().inequalities()[f.inequalities.front()];
      ineqs.push_back({{"labels", labels_json(f.labels)}, {"normal", ineq.normal}, {"rhs", ineq.rhs}});
    }
    body["inequalities"] = ineqs;
    return Result{body, body["agree"].get<bool>() ? kOk : kDisagreement};
  });
}

Result singular(const SVParams& p, const Limits& limits) {
  return guarded([&] {
    check_size(p, limits);
    const SVParams c = p.canonical();
    const Analysis an(build_polytope(c, to_budget(limits)));
    json body = singular_json(an, singular_report(an, c));
    body["params"] = params_json(p);
    return Result{body, body["agree"].get<bool>() ? kOk : kDisagreement};
  });
}

Result normality(const SVParams& p, int s_max, const Limits& limits) {
  return guarded([&] {
    check_size(p, limits);
    const SVParams c = p.canonical();
    Budget b = to_budget(limits);
    const LatticePolytope poly = build_polytope(c, b);
    b.max_points = 0;  // dilations are bounded by the node budget
    const NormalityResult r = check_normality(poly, s_max, b);
    const SaturationReport sat = check_lattice_saturation(Analysis(poly));
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"level", f.level}, {"point", f.point}});
    const bool normal = r.failures.empty();
    json body = {{"params", params_json(p)},
                 {"points", poly.points().size()},
                 {"s_max", s_max},
                 {"normal_up_to", r.normal_up_to},
                 {"normal", normal},
                 {"failures", failures},
                 {"lattice", {{"saturated", sat.saturated}, {"rank", sat.rank}}}};
    return Result{body, normal && sat.saturated ? kOk : kDisagreement};
  });
}

Result scan(const ScanOptions& o) {
  std::vector<SVParams> grid;
  for (auto& p : canonical_grid(o.max_k, o.max_a, o.max_b))
    if (o.only_tags.empty() || tag_matches(expected_tag(p), o.only_tags)) grid.push_back(std::move(p));

  std::vector<json> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = scan_row(grid[i], o.limits);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t skipped = 0;
  json disagreeing = json::array();
  for (const auto& r : rows) {
    if (r["skipped"].get<bool>())
      ++skipped;
    else if (!r["agree"].get<bool>())
      disagreeing.push_back(r["params"]);
  }
  json body = {{"grid", {{"max_k", o.max_k}, {"max_a", o.max_a}, {"max_b", o.max_b},
                         {"max_points", o.limits.max_points}, {"only_tags", o.only_tags}}},
               {"rows", rows},
               {"summary", {{"instances", rows.size()},
                            {"computed", rows.size() - skipped},
                            {"skipped", skipped},
                            {"disagreements", disagreeing.size()},
                            {"disagreeing", disagreeing}}}};
  return {body, disagreeing.empty() ? kOk : kDisagreement};
}

Result cumulants(const LabeledComplex& c, std::optional<unsigned> degree_bound, const SymbolicBudget& budget) {
  return guarded([&] {
    const auto z = secant_z(c, budget);
    const SecantCheck sec = verify_secant_identity(c, z);
    const ReparametrizationCheck rep = verify_reparametrization(c, z);
    json body = {{"complex", complex_json(c)},
                 {"secant", {{"ok", sec.ok}, {"checked", sec.checked}, {"failures", residuals_json(c, sec.failures)}}},
                 {"reparametrization",
                  {{"ok", rep.ok}, {"convention", rep.convention}, {"failures", residuals_json(c, rep.failures)}}}};
    bool ok = sec.ok && rep.ok;
    if (degree_bound) {
      body["binomials"] = binomials_json(c, *degree_bound);
      ok = ok && body["binomials"]["all_vanish"].get<bool>();
    }
    body["ok"] = ok;
    return Result{body, ok ? kOk : kDisagreement};
  });
}

Result binomials(const LabeledComplex& c, unsigned degree_bound) {
  return guarded([&] {
    json body = {{"complex", complex_json(c)}, {"binomials", binomials_json(c, degree_bound)}};
    const bool ok = body["binomials"]["all_vanish"].get<bool>();
    return Result{body, ok ? kOk : kDisagreement};
  });
}

std::string render_text(const std::string& command, const json& body) {
  if (command == "scan" && body.contains("rows")) return render_scan(body);
  std::ostringstream os;
  render_tree(os, body, 0);
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Segre-Veronese secant toric verification"};
  app.name("svsec");
  app.require_subcommand(1);

  bool as_json = false;
  std::string a_list;
  std::string b_list;
  Limits limits;
  int s_max = 3;
  ScanOptions scan_opts;
  scan_opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string complex_file;
  std::vector<std::string> sv;
  unsigned degree_bound = 4;
  std::size_t max_vertices = SymbolicBudget{}.max_vertices;

  auto common = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "Print JSON"); };
  auto params = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--a", a_list, "Degrees a_1,...,a_k")->required();
    sub->add_option("--b", b_list, "Dimensions b_1,...,b_k")->required();
    sub->add_option("--max-points", limits.max_points, "Lattice point budget")->capture_default_str();
  };
  auto complex_input = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("complex", complex_file, "Complex file with lines 'name: l1 l2 ...'");
    sub->add_option("--sv", sv, "Segre-Veronese complex: a-list b-list")->expected(2);
    sub->add_option("--max-vertices", max_vertices, "Vertex budget")->capture_default_str();
  };

  auto* c_classify = app.add_subcommand("classify", "Facets, Gorenstein status and singular locus of one instance");
  params(c_classify);
  auto* c_facets = app.add_subcommand("facets", "Facet report against the closed form");
  params(c_facets);
  auto* c_singular = app.add_subcommand("singular", "Components of the singular locus");
  params(c_singular);
  auto* c_normality = app.add_subcommand("normality", "Normality of P up to a dilation level");
  params(c_normality);
  c_normality->add_option("--smax", s_max, "Highest dilation level")->capture_default_str()->check(CLI::Range(1, 16));
  auto* c_scan = app.add_subcommand("scan", "Cross-check a grid of canonical parameters");
  common(c_scan);
  c_scan->add_option("--max-k", scan_opts.max_k, "Number of factors")->capture_default_str()->check(CLI::Range(0, 5));
  c_scan->add_option("--max-a", scan_opts.max_a, "Largest a_i")->capture_default_str()->check(CLI::Range(0, 16));
  c_scan->add_option("--max-b", scan_opts.max_b, "Largest b_i")->capture_default_str()->check(CLI::Range(0, 16));
  c_scan->add_option("--max-points", scan_opts.limits.max_points, "Lattice point budget per instance")
      ->capture_default_str();
  c_scan->add_option("--jobs", scan_opts.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  c_scan->add_option("--only-tags", scan_opts.only_tags, "Comma-separated tag globs, e.g. 'G*'");
  auto* c_cumulants = app.add_subcommand("cumulants", "Verify the secant identities in cumulant coordinates");
  complex_input(c_cumulants);
  auto* degree_opt = c_cumulants->add_option("--degree-bound", degree_bound, "Also list toric binomials");
  auto* c_binomials = app.add_subcommand("binomials", "Degree-bounded toric binomials");
  complex_input(c_binomials);
  c_binomials->add_option("--degree-bound", degree_bound, "Maximal degree")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Result r;
  CLI::App* used = app.get_subcommands().front();
  const std::string command = used->get_name();
  try {
    if (used == c_scan) {
      r = scan(scan_opts);
    } else if (used == c_cumulants || used == c_binomials) {
      if (sv.empty() == complex_file.empty()) throw std::invalid_argument("give either a complex file or --sv");
      SymbolicBudget budget;
      budget.max_vertices = max_vertices;
      const LabeledComplex cx = sv.empty() ? load_complex(complex_file) : sv_complex(SVParams::parse(sv[0], sv[1]), budget);
      if (used == c_cumulants)
        r = cumulants(cx, degree_opt->count() ? std::optional<unsigned>(degree_bound) : std::nullopt, budget);
      else
        r = binomials(cx, degree_bound);
    } else {
      const SVParams p = SVParams::parse(a_list, b_list);
      if (used == c_classify) r = classify(p, limits);
      if (used == c_facets) r = facets(p, limits);
      if (used == c_singular) r = singular(p, limits);
      if (used == c_normality) r = normality(p, s_max, limits);
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (as_json)
    out << r.body.dump(2) << "\n";
  else
    out << render_text(command, r.body);
  if (r.exit_code == kBudget) err << "budget exceeded: " << r.body.value("message", "") << "\n";
  return r.exit_code;
}

}  // namespace svsec::cli
