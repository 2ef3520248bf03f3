#include "oredual/systemdoc.hpp"

#include <fstream>
#include <sstream>

#include "oredual/error.hpp"

namespace oredual {

using nlohmann::json;

json system_to_json(const OpMatrix& m, const DocMeta& meta) {
  json j;
  if (!meta.name.empty()) j["name"] = meta.name;
  if (!meta.citation.empty()) j["citation"] = meta.citation;
  if (!meta.note.empty()) j["note"] = meta.note;
  j["vars"] = m.ring.vars;
  j["params"] = m.ring.params;
  j["unknowns"] = m.unknowns;
  json eqs = json::array();
  for (auto& r : m.rows) {
    json row = json::array();
    for (auto& t : r.terms()) {
      std::vector<int> d(t.mu.e.begin(), t.mu.e.begin() + m.n());
      row.push_back({{"c", to_string(t.c, m.ring)}, {"d", d}, {"u", m.unknowns[t.col]}});
    }
    eqs.push_back(row);
  }
  j["equations"] = eqs;
  j["labels"] = m.labels;
  return j;
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw Error(std::string("system document: missing \"") + key + "\"");
    return {};
  }
  const json& v = j.at(key);
  if (!v.is_array()) throw Error(std::string("system document: \"") + key + "\" must be an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string())
      throw Error(std::string("system document: \"") + key + "\"[" + std::to_string(i) + "] must be a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

}  // namespace

OpMatrix system_from_json(const json& j, DocMeta* meta) {
  if (!j.is_object()) throw Error("system document: expected a JSON object");
  Ring ring;
  ring.vars = string_list(j, "vars", true);
  ring.params = string_list(j, "params", false);
  ring.validate();
  std::vector<std::string> unknowns = string_list(j, "unknowns", true);
  std::vector<std::string> labels = string_list(j, "labels", false);
  if (!j.contains("equations") || !j.at("equations").is_array())
    throw Error("system document: \"equations\" must be an array of rows");
  const json& eqs = j.at("equations");
  int n = ring.n();
  std::vector<Row> rows;
  for (size_t r = 0; r < eqs.size(); ++r) {
    std::string where_row = "equations[" + std::to_string(r) + "]";
    if (!eqs[r].is_array()) throw Error(where_row + ": a row must be an array of terms");
    std::vector<RowTerm> ts;
    for (size_t k = 0; k < eqs[r].size(); ++k) {
      const json& t = eqs[r][k];
      std::string where = where_row + "[" + std::to_string(k) + "]";
      if (!t.is_object()) throw Error(where + ": a term must be an object with keys c, d, u");
      RowTerm rt;
      if (!t.contains("u") || !t["u"].is_string()) throw Error(where + ".u: missing unknown name");
      std::string u = t["u"].get<std::string>();
      auto it = std::find(unknowns.begin(), unknowns.end(), u);
      if (it == unknowns.end()) throw Error(where + ".u: unknown '" + u + "' is not declared");
      rt.col = static_cast<int>(it - unknowns.begin());
      if (t.contains("d")) {
        const json& d = t["d"];
        if (!d.is_array() || static_cast<int>(d.size()) != n)
          throw Error(where + ".d: expected " + std::to_string(n) + " entries (one per variable), got " +
                      (d.is_array() ? std::to_string(d.size()) : std::string("a non-array")));
        for (int i = 0; i < n; ++i) {
          if (!d[i].is_number_integer() || d[i].get<int>() < 0 || d[i].get<int>() > 60)
            throw Error(where + ".d[" + std::to_string(i) + "]: expected a small nonnegative integer");
          rt.mu.e[i] = static_cast<uint8_t>(d[i].get<int>());
        }
      }
      std::string c = "1";
      if (t.contains("c")) {
        if (t["c"].is_string()) c = t["c"].get<std::string>();
        else if (t["c"].is_number_integer()) c = std::to_string(t["c"].get<long long>());
        else throw Error(where + ".c: coefficient must be a string");
      }
      try {
        rt.c = parse_ratfunc(c, ring);
      } catch (const Error& e) {
        throw Error(where + ".c: " + e.what());
      }
      ts.push_back(rt);
    }
    rows.push_back(Row::from_terms(std::move(ts)));
  }
  if (!labels.empty() && labels.size() != rows.size())
    throw Error("system document: " + std::to_string(labels.size()) + " labels for " + std::to_string(rows.size()) +
                " equations");
  if (meta) {
    meta->name = j.value("name", "");
    meta->citation = j.value("citation", "");
    meta->note = j.value("note", "");
  }
  return make_matrix(ring, static_cast<int>(unknowns.size()), rows, unknowns, labels);
}

OpMatrix read_system(const std::string& path, DocMeta* meta) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  try {
    return system_from_json(j, meta);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_system(const std::string& path, const OpMatrix& m, const DocMeta& meta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << system_to_json(m, meta).dump(2) << "\n";
}

json report_to_json(const DualityReport& r) {
  json j;
  const OpMatrix* steps[] = {&r.step1, &r.step2, &r.step3, &r.step4, &r.step5};
  const char* names[] = {"step1", "step2", "step3", "step4", "step5"};
  for (int k = 0; k < r.completed_steps; ++k) j[names[k]] = system_to_json(*steps[k]);
  j["completed_steps"] = r.completed_steps;
  j["verdict"] = verdict_name(r.verdict);
  if (r.verdict == Verdict::Unknown) j["reason"] = r.unknown_reason;
  json ws = json::array();
  for (auto& w : r.witnesses) {
    json x;
    x["row"] = to_string(w.row, r.step1.ring, r.step1.unknowns);
    x["annihilator"] = w.annihilator.is_zero() ? "" : op_to_string(w.annihilator, r.step1.ring);
    x["certified"] = w.certified;
    ws.push_back(x);
  }
  j["witnesses"] = ws;
  json as = json::array();
  for (auto& a : r.assumptions) as.push_back(to_string(a, r.step1.ring));
  j["assumptions"] = as;
  return j;
}

}  // namespace oredual
