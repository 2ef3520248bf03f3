#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "oredual/duality.hpp"

namespace oredual {

// JSON system document:
//   {"vars": [...], "params": [...], "unknowns": [...],
//    "equations": [[{"c": "coeff", "d": [mu_1..mu_n], "u": "unknown"}, ...], ...],
//    "labels": [...]}                       (labels optional)
// plus optional "name", "citation" and "note" strings.
struct DocMeta {
  std::string name, citation, note;
};

nlohmann::json system_to_json(const OpMatrix& m, const DocMeta& meta = {});
OpMatrix system_from_json(const nlohmann::json& j, DocMeta* meta = nullptr);
OpMatrix read_system(const std::string& path, DocMeta* meta = nullptr);
void write_system(const std::string& path, const OpMatrix& m, const DocMeta& meta = {});

nlohmann::json report_to_json(const DualityReport& r);

}  // namespace oredual
