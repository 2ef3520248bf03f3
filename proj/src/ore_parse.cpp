#include <cctype>

#include "oredual/error.hpp"
#include "oredual/ore.hpp"

namespace oredual {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Split at top-level occurrences of any char in seps; keeps the separator
// as the first char of the following piece when keep is set.
std::vector<std::string> split_top(const std::string& s, const std::string& seps, bool keep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  char prev = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    bool sep = depth == 0 && seps.find(c) != std::string::npos;
    // a sign right after '^', '*', '/' or at the start belongs to the operand
    if (sep && (c == '+' || c == '-') && (prev == '^' || prev == '*' || prev == '/' || trim(cur).empty()))
      sep = false;
    if (sep) {
      out.push_back(cur);
      cur = keep ? std::string(1, c) : std::string();
    } else {
      cur += c;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
  }
  out.push_back(cur);
  return out;
}

bool is_derivative_token(const std::string& f, const Ring& ring) {
  if (f.size() < 2 || f[0] != 'd' || ring.slot(f) >= 0) return false;
  for (size_t i = 1; i < f.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(f[i])) || f[i] == '0' || f[i] - '0' > ring.n()) return false;
  return true;
}

}  // namespace

Row parse_row(const std::string& text, const Ring& ring, const std::vector<std::string>& unknowns) {
  std::vector<RowTerm> terms;
  for (std::string piece : split_top(text, "+-", true)) {
    piece = trim(piece);
    if (piece.empty()) continue;
    bool neg = false;
    while (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
      if (piece[0] == '-') neg = !neg;
      piece = trim(piece.substr(1));
    }
    if (piece.empty()) throw Error("row \"" + text + "\": dangling sign");
    if (piece == "0") continue;
    auto factors = split_top(piece, "*", false);
    std::string unk = trim(factors.back());
    factors.pop_back();
    int col = -1;
    for (size_t k = 0; k < unknowns.size(); ++k)
      if (unknowns[k] == unk) col = static_cast<int>(k);
    if (col < 0) throw Error("row \"" + text + "\": unknown function '" + unk + "'");
    MultiIndex mu;
    std::string coeff;
    for (auto& f0 : factors) {
      std::string f = trim(f0);
      if (is_derivative_token(f, ring)) {
        for (size_t i = 1; i < f.size(); ++i) mu.e[f[i] - '1'] += 1;
      } else {
        coeff += (coeff.empty() ? "" : "*") + std::string("(") + f + ")";
      }
    }
    RatFunc c = coeff.empty() ? RatFunc(1) : parse_ratfunc(coeff, ring);
    terms.push_back({mu, col, neg ? -c : c});
  }
  return Row::from_terms(std::move(terms));
}

OpMatrix parse_matrix(const Ring& ring, const std::vector<std::string>& unknowns,
                      const std::vector<std::string>& rows, std::vector<std::string> labels) {
  std::vector<Row> parsed;
  for (auto& r : rows) parsed.push_back(parse_row(r, ring, unknowns));
  return make_matrix(ring, static_cast<int>(unknowns.size()), std::move(parsed), unknowns, std::move(labels));
}

}  // namespace oredual
