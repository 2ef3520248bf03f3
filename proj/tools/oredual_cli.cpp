#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oredual/corpus.hpp"
#include "oredual/duality.hpp"
#include "oredual/error.hpp"
#include "oredual/janet.hpp"
#include "oredual/syzygy.hpp"
#include "oredual/systemdoc.hpp"

using namespace oredual;
using nlohmann::json;

namespace {

struct Globals {
  int budget = -1;
  unsigned seed = 1;
  std::vector<std::string> assume;
  bool json = false;
};

CompletionOptions completion(const Globals& g) {
  CompletionOptions o;
  o.budget = g.budget;
  o.seed = g.seed;
  return o;
}

std::map<std::string, Q> parse_bindings(const std::vector<std::string>& items) {
  std::map<std::string, Q> out;
  for (auto& s : items) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("--assume expects param=value, got '" + s + "'");
    Q v;
    try {
      v = Q(s.substr(eq + 1));
      v.canonicalize();
    } catch (const std::invalid_argument&) {
      throw Error("--assume: '" + s.substr(eq + 1) + "' is not a rational number");
    }
    out[s.substr(0, eq)] = v;
  }
  return out;
}

OpMatrix load(const std::string& path, const Globals& g, DocMeta* meta = nullptr) {
  OpMatrix m = read_system(path, meta);
  if (!g.assume.empty()) m = specialize_params(m, parse_bindings(g.assume));
  return m;
}

std::string rows_text(const OpMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.nrows(); ++i) {
    std::string lab = i < static_cast<int>(m.labels.size()) ? m.labels[i] : "";
    os << lab << ": " << (m.rows[i].is_zero() ? "0" : to_string(m.rows[i], m.ring, m.unknowns)) << "\n";
  }
  return os.str();
}

std::string assumption_text(const std::vector<MPoly>& as, const Ring& ring) {
  std::string s;
  for (auto& a : as) s += (s.empty() ? "" : ", ") + to_string(a, ring) + " != 0";
  return s;
}

json assumptions_json(const std::vector<MPoly>& as, const Ring& ring) {
  json j = json::array();
  for (auto& a : as) j.push_back(to_string(a, ring));
  return j;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

Matrix parse_frame(const std::string& s) {
  Matrix a;
  std::stringstream rows(s);
  std::string r;
  while (std::getline(rows, r, ';')) {
    std::vector<long> row;
    std::stringstream cells(r);
    std::string c;
    while (std::getline(cells, c, ',')) row.push_back(std::stol(c));
    a.push_back(row);
  }
  for (auto& row : a)
    if (row.size() != a.size()) throw Error("--frame must be a square matrix written as rows 'a,b;c,d'");
  return a;
}

int cmd_adjoint(const Globals& g, const std::string& path) {
  OpMatrix a = adjoint(load(path, g));
  emit(g, system_to_json(a), rows_text(a));
  return 0;
}

int cmd_involution(const Globals& g, const std::string& path) {
  OpMatrix m = load(path, g);
  JanetBasis b = involutive_completion(m, completion(g));
  JanetTabular t = tabular(b);
  json j;
  std::vector<Row> basis_rows;
  json mult = json::array();
  for (auto& e : b.elems) {
    basis_rows.push_back(e.row);
    json mv = json::array();
    for (int i = 0; i < b.n(); ++i)
      if (e.mult & (1u << i)) mv.push_back(i + 1);
    mult.push_back(mv);
  }
  j["basis"] = system_to_json(make_matrix(b.ring, b.ncols, basis_rows, b.unknowns));
  j["multiplicative"] = mult;
  j["order"] = t.q;
  j["beta"] = t.beta;
  j["alpha"] = t.alpha;
  j["symbol_dimension"] = t.dim_gq;
  j["assumptions"] = assumptions_json(b.assumptions, b.ring);
  std::ostringstream os;
  os << t.text;
  os << "beta by class:";
  for (auto v : t.beta) os << " " << v;
  os << "\nalpha by class:";
  for (auto v : t.alpha) os << " " << v;
  os << "\n";
  if (t.dim_gq == 0) {
    long count = parametric_jets(b, t.q).count;
    j["parametric_jets"] = count;
    os << "finite type: " << count << " parametric jets\n";
  } else {
    j["parametric_jets"] = nullptr;
  }
  if (!b.assumptions.empty()) os << "assuming " << assumption_text(b.assumptions, b.ring) << "\n";
  emit(g, j, os.str());
  return 0;
}

int cmd_cc(const Globals& g, const std::string& path) {
  CCResult r = compatibility_conditions(load(path, g), completion(g));
  json j = system_to_json(r.cc);
  j["assumptions"] = assumptions_json(r.assumptions, r.cc.ring);
  std::string text = r.cc.nrows() == 0 ? "no compatibility conditions\n" : rows_text(r.cc);
  if (!r.assumptions.empty()) text += "assuming " + assumption_text(r.assumptions, r.cc.ring) + "\n";
  emit(g, j, text);
  return 0;
}

int cmd_rank(const Globals& g, const std::string& path) {
  OpMatrix m = load(path, g);
  int r = differential_rank(m, completion(g));
  emit(g, json{{"differential_rank", r}, {"unknowns", m.ncols}, {"equations", m.nrows()}},
       "differential rank " + std::to_string(r) + "\n");
  return 0;
}

DualityOptions duality_options(const Globals& g) {
  DualityOptions o;
  o.completion = completion(g);
  return o;
}

int cmd_torsion(const Globals& g, const std::string& path) {
  DualityReport r = torsion_test(load(path, g), duality_options(g));
  emit(g, report_to_json(r), render_report(r));
  return r.verdict == Verdict::Unknown ? 2 : 0;
}

int cmd_param(const Globals& g, const std::string& path, bool minimal, const std::string& subset,
              const std::string& frame) {
  DualityReport r = torsion_test(load(path, g), duality_options(g));
  if (r.verdict == Verdict::Unknown) {
    std::cerr << "unknown: " << r.unknown_reason << "\n";
    return 2;
  }
  if (r.verdict == Verdict::HasTorsion) throw Error("system has torsion and admits no parametrization");
  OpMatrix p = parametrize(r);
  json j;
  std::string text;
  if (minimal) {
    MinimalOptions o;
    o.completion = completion(g);
    if (!subset.empty()) {
      std::vector<std::string> names;
      std::stringstream ss(subset);
      std::string s;
      while (std::getline(ss, s, ',')) names.push_back(s);
      o.subset = names;
    }
    if (!frame.empty()) o.frame = parse_frame(frame);
    MinimalParametrization mp = minimal_parametrize(r, o);
    p = mp.param;
    j["subset"] = mp.subset;
    j["frame"] = mp.frame;
    text += "potentials:";
    for (auto& s : mp.subset) text += " " + s;
    text += "\nframe: " + matrix_to_string(mp.frame) + "\n";
  }
  j["parametrization"] = system_to_json(p);
  j["assumptions"] = assumptions_json(r.assumptions, p.ring);
  text += rows_text(p);
  if (!r.assumptions.empty()) text += "assuming " + assumption_text(r.assumptions, p.ring) + "\n";
  emit(g, j, text);
  return 0;
}

int cmd_spencer(const Globals& g, const std::string& path) {
  FirstOrderForm f = first_order_form(load(path, g), completion(g));
  json j{{"system", system_to_json(f.system)},
         {"to_new", system_to_json(f.to_new)},
         {"to_old", system_to_json(f.to_old)},
         {"jets", f.jet_names}};
  std::string text = "first-order system (" + std::to_string(f.system.nrows()) + " equations, " +
                     std::to_string(f.system.ncols) + " unknowns)\n" + rows_text(f.system) + "new unknowns\n" +
                     rows_text(f.to_new);
  emit(g, j, text);
  return 0;
}

int cmd_apply(const Globals& g, const std::string& path, const std::vector<std::string>& section) {
  OpMatrix m = load(path, g);
  if (static_cast<int>(section.size()) != m.ncols)
    throw Error("--section needs " + std::to_string(m.ncols) + " entries, got " + std::to_string(section.size()));
  std::vector<RatFunc> s;
  for (auto& e : section) s.push_back(parse_ratfunc(e, m.ring));
  auto vals = oredual::apply(m, s);
  json j = json::array();
  std::ostringstream os;
  for (int i = 0; i < m.nrows(); ++i) {
    std::string v = to_string(vals[i], m.ring);
    j.push_back({{"label", m.labels[i]}, {"value", v}});
    os << m.labels[i] << " = " << v << "\n";
  }
  emit(g, j, os.str());
  return 0;
}

int cmd_fixtures_list(const Globals& g) {
  json j = json::array();
  std::ostringstream os;
  for (auto& n : fixture_names()) {
    Fixture f = fixture(n);
    j.push_back({{"name", n}, {"citation", f.citation}});
    os << n << std::string(n.size() < 22 ? 22 - n.size() : 1, ' ') << f.citation << "\n";
  }
  emit(g, j, os.str());
  return 0;
}

int cmd_fixtures_show(const Globals& g, const std::string& name) {
  Fixture f = fixture(name);
  std::string text = f.name + ": " + f.citation + "\n";
  if (!f.note.empty()) text += "note: " + f.note + "\n";
  emit(g, system_to_json(f.op, {f.name, f.citation, f.note}), text + rows_text(f.op));
  return 0;
}

int cmd_fixtures_export(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (auto& n : fixture_names()) {
    Fixture f = fixture(n);
    write_system((std::filesystem::path(dir) / (n + ".json")).string(), f.op, {f.name, f.citation, f.note});
  }
  std::cout << "wrote " << fixture_names().size() << " fixtures to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear differential systems over Ore algebras: completion, compatibility conditions, duality"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--budget", g.budget, "Maximum total order of a completion generator (default: input order + 8)");
  app.add_option("--seed", g.seed, "Seed for random fallback coordinate frames");
  app.add_option("--assume", g.assume, "Specialize a parameter, e.g. --assume a=0")->allow_extra_args(false);
  auto* jf = app.add_flag("--json", g.json, "JSON output");
  bool text = false;
  app.add_flag("--text", text, "Text output (default)")->excludes(jf);

  std::string path;
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("system", path, "System document (JSON)")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto* adj = with_file(app.add_subcommand("adjoint", "Formal adjoint"));
  auto* inv = with_file(app.add_subcommand("involution", "Janet completion and tabular"));
  auto* cc = with_file(app.add_subcommand("cc", "Compatibility conditions"));
  auto* rank = with_file(app.add_subcommand("rank", "Differential rank"));
  auto* tor = with_file(app.add_subcommand("torsion", "Five-step double duality test"));
  auto* par = with_file(app.add_subcommand("param", "Parametrization of a torsion-free system"));
  bool minimal = false;
  std::string subset, frame;
  par->add_flag("--minimal", minimal, "Keep only differential-rank many potentials");
  par->add_option("--subset", subset, "Potentials to keep, comma separated");
  par->add_option("--frame", frame, "Unimodular coordinate change 'a,b,c;d,e,f;...'");
  auto* sp = with_file(app.add_subcommand("spencer-form", "Equivalent first-order system"));
  auto* ap = with_file(app.add_subcommand("apply", "Apply to an explicit section"));
  std::vector<std::string> section;
  ap->add_option("--section", section, "One expression per unknown, comma separated")->required()->delimiter(',');

  auto* fx = app.add_subcommand("fixtures", "Built-in systems");
  fx->require_subcommand(1);
  auto* fl = fx->add_subcommand("list", "List fixtures");
  auto* fs = fx->add_subcommand("show", "Print one fixture");
  std::string name;
  fs->add_option("name", name)->required();
  auto* fe = fx->add_subcommand("export", "Write every fixture as a JSON document");
  std::string dir;
  fe->add_option("dir", dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*adj) return cmd_adjoint(g, path);
    if (*inv) return cmd_involution(g, path);
    if (*cc) return cmd_cc(g, path);
    if (*rank) return cmd_rank(g, path);
    if (*tor) return cmd_torsion(g, path);
    if (*par) return cmd_param(g, path, minimal, subset, frame);
    if (*sp) return cmd_spencer(g, path);
    if (*ap) return cmd_apply(g, path, section);
    if (*fl) return cmd_fixtures_list(g);
    if (*fs) return cmd_fixtures_show(g, name);
    if (*fe) return cmd_fixtures_export(dir);
  } catch (const BudgetExceeded& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
