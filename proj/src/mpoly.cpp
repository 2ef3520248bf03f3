#include "oredual/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "oredual/error.hpp"

namespace oredual {

int grlex_cmp(const Mono& a, const Mono& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  for (int i = 0; i < kMaxSlots; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

namespace {

bool term_gt(const MPoly::Term& x, const MPoly::Term& y) { return grlex_cmp(x.m, y.m) > 0; }

}  // namespace

MPoly::MPoly(const Q& c) {
  if (sgn(c) != 0) t_.push_back({Mono{}, c});
}

MPoly MPoly::var(int slot, unsigned power) {
  if (slot < 0 || slot >= kMaxSlots) throw Error("variable slot out of range");
  Mono m;
  m.e[slot] = static_cast<uint16_t>(power);
  return monomial(m, Q(1));
}

MPoly MPoly::monomial(const Mono& m, const Q& c) {
  MPoly p;
  if (sgn(c) != 0) p.t_.push_back({m, c});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_gt);
  MPoly p;
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().m == t.m) {
      p.t_.back().c += t.c;
      if (sgn(p.t_.back().c) == 0) p.t_.pop_back();
    } else if (sgn(t.c) != 0) {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

bool MPoly::is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c == 1; }

Q MPoly::constant_value() const {
  if (t_.empty()) return Q(0);
  return t_[0].c;
}

int MPoly::total_degree() const { return t_.empty() ? -1 : t_[0].m.degree(); }

int MPoly::degree_in(int slot) const {
  int d = t_.empty() ? -1 : 0;
  for (auto& t : t_) d = std::max<int>(d, t.m.e[slot]);
  return d;
}

uint32_t MPoly::support() const {
  uint32_t s = 0;
  for (auto& t : t_) s |= t.m.support();
  return s;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int c;
    if (i == t_.size()) c = -1;
    else if (j == o.t_.size()) c = 1;
    else c = grlex_cmp(t_[i].m, o.t_[j].m);
    if (c > 0) r.t_.push_back(t_[i++]);
    else if (c < 0) r.t_.push_back(o.t_[j++]);
    else {
      Q s = t_[i].c + o.t_[j].c;
      if (sgn(s) != 0) r.t_.push_back({t_[i].m, s});
      ++i, ++j;
    }
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  if (t_.empty() || o.t_.empty()) return MPoly();
  if (o.is_constant()) return scaled(o.t_[0].c);
  if (is_constant()) return o.scaled(t_[0].c);
  std::vector<Term> prod;
  prod.reserve(t_.size() * o.t_.size());
  for (auto& a : t_)
    for (auto& b : o.t_) prod.push_back({a.m * b.m, a.c * b.c});
  return from_terms(std::move(prod));
}

MPoly MPoly::scaled(const Q& c) const {
  if (sgn(c) == 0) return MPoly();
  MPoly r = *this;
  for (auto& t : r.t_) t.c *= c;
  return r;
}

MPoly MPoly::mul_term(const Mono& m, const Q& c) const {
  if (sgn(c) == 0) return MPoly();
  MPoly r = *this;
  for (auto& t : r.t_) {
    t.m = t.m * m;
    t.c *= c;
  }
  return r;  // multiplying by a monomial preserves the order
}

MPoly MPoly::derive(int slot) const {
  std::vector<Term> out;
  for (auto& t : t_) {
    if (t.m.e[slot] == 0) continue;
    Term d{t.m, t.c * t.m.e[slot]};
    d.m.e[slot] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(std::move(out));
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
  if (d.is_zero()) throw Error("division by zero polynomial");
  if (t_.empty()) return MPoly();
  if (d.is_constant()) return scaled(1 / d.t_[0].c);
  std::vector<Term> q;
  MPoly p = *this;
  const Mono& lmd = d.lm();
  Q inv = 1 / d.lc();
  while (!p.is_zero()) {
    if (!lmd.divides(p.lm())) return std::nullopt;
    Mono m = p.lm() / lmd;
    Q c = p.lc() * inv;
    q.push_back({m, c});
    p = p - d.mul_term(m, c);
  }
  return from_terms(std::move(q));
}

MPoly MPoly::monic() const {
  if (t_.empty() || t_[0].c == 1) return *this;
  return scaled(1 / t_[0].c);
}

MPoly MPoly::primitive() const {
  if (t_.empty()) return *this;
  mpz_class l = 1, g = 0;
  for (auto& t : t_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  }
  Q f = Q(l) / Q(g);
  if (sgn(t_[0].c) < 0) f = -f;
  return scaled(f);
}

MPoly MPoly::substitute(const std::vector<std::optional<Q>>& values) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    Term n = t;
    for (size_t s = 0; s < values.size() && s < kMaxSlots; ++s) {
      if (!values[s] || n.m.e[s] == 0) continue;
      Q pw;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), values[s]->get_num_mpz_t(), n.m.e[s]);
      mpz_pow_ui(den.get_mpz_t(), values[s]->get_den_mpz_t(), n.m.e[s]);
      pw = Q(num, den);
      pw.canonicalize();
      n.c *= pw;
      n.m.e[s] = 0;
    }
    out.push_back(std::move(n));
  }
  return from_terms(std::move(out));
}

MPoly MPoly::compose(const std::vector<MPoly>& images) const {
  // powers[s][k] = images[s]^k, filled on demand
  std::vector<std::vector<MPoly>> powers(images.size());
  auto power = [&](size_t s, int k) -> const MPoly& {
    auto& v = powers[s];
    if (v.empty()) v.push_back(MPoly(1));
    while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * images[s]);
    return v[k];
  };
  MPoly result;
  for (auto& t : t_) {
    Mono rest = t.m;
    MPoly term(t.c);
    for (size_t s = 0; s < images.size() && s < kMaxSlots; ++s) {
      if (rest.e[s] == 0) continue;
      term = term * power(s, rest.e[s]);
      rest.e[s] = 0;
    }
    result = result + term.mul_term(rest, Q(1));
  }
  return result;
}

MPoly MPoly::remap(const std::vector<int>& perm) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    Term n{Mono{}, t.c};
    for (int s = 0; s < kMaxSlots; ++s) {
      if (t.m.e[s] == 0) continue;
      int to = s < static_cast<int>(perm.size()) ? perm[s] : s;
      if (to < 0) throw Error("remap drops a slot that is in use");
      n.m.e[to] += t.m.e[s];
    }
    out.push_back(std::move(n));
  }
  return from_terms(std::move(out));
}

std::vector<MPoly> MPoly::coeffs_in(int slot) const {
  int d = degree_in(slot);
  std::vector<std::vector<Term>> parts(std::max(d, 0) + 1);
  for (auto& t : t_) {
    Term c = t;
    int k = c.m.e[slot];
    c.m.e[slot] = 0;
    parts[k].push_back(std::move(c));
  }
  std::vector<MPoly> out;
  if (d < 0) return out;
  for (auto& p : parts) out.push_back(from_terms(std::move(p)));
  return out;
}

MPoly MPoly::from_coeffs(int slot, const std::vector<MPoly>& coeffs) {
  std::vector<Term> all;
  for (size_t k = 0; k < coeffs.size(); ++k)
    for (auto& t : coeffs[k].t_) {
      Term n = t;
      n.m.e[slot] += static_cast<uint16_t>(k);
      all.push_back(std::move(n));
    }
  return from_terms(std::move(all));
}

bool MPoly::operator==(const MPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
  return true;
}

size_t MPoly::hash() const {
  size_t h = t_.size();
  for (auto& t : t_) {
    for (auto v : t.m.e) h = h * 131 + v;
    h = h * 1000003 + mpz_get_ui(t.c.get_num_mpz_t()) * 7 + mpz_get_ui(t.c.get_den_mpz_t());
  }
  return h;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

MPoly mono_gcd_with(const Mono& m, const MPoly& p) {
  Mono g = m;
  for (auto& t : p.terms())
    for (int i = 0; i < kMaxSlots; ++i) g.e[i] = std::min(g.e[i], t.m.e[i]);
  return MPoly::monomial(g, Q(1));
}

MPoly content_in(const MPoly& p, int slot) {
  MPoly g;
  for (auto& c : p.coeffs_in(slot)) {
    if (c.is_zero()) continue;
    g = MPoly::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Pseudo-remainder of a by b as polynomials in `slot`.
MPoly prem(const MPoly& a, const MPoly& b, int slot) {
  int db = b.degree_in(slot);
  std::vector<MPoly> bc = b.coeffs_in(slot);
  const MPoly& lcb = bc.back();
  MPoly r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(slot);
    if (dr < db) break;
    MPoly lcr = r.coeffs_in(slot).back();
    Mono shift;
    shift.e[slot] = static_cast<uint16_t>(dr - db);
    r = r * lcb - (b * lcr).mul_term(shift, Q(1));
  }
  return r;
}

MPoly primitive_in(const MPoly& p, int slot) {
  MPoly c = content_in(p, slot);
  if (c.is_constant()) return p.monic();
  return p.divide_exact(c)->monic();
}

mpz_class max_abs_coeff(const MPoly& p) {
  mpz_class m = 0;
  for (auto& t : p.terms()) {
    mpz_class v = abs(t.c.get_num());
    if (v > m) m = v;
  }
  return m;
}

// Heuristic gcd of integer polynomials: evaluate one variable at a large
// integer, recurse, rebuild by balanced xi-adic expansion and accept only
// after trial division. Returns nullopt when the heuristic gives up.
std::optional<MPoly> heuristic_gcd(const MPoly& a, const MPoly& b, int depth) {
  if (a.is_zero()) return sgn(b.lc()) < 0 ? -b : b;
  if (b.is_zero()) return sgn(a.lc()) < 0 ? -a : a;
  if (a.is_constant() || b.is_constant()) {
    mpz_class g = 0;
    for (auto* p : {&a, &b})
      for (auto& t : p->terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
    return MPoly(Q(g));
  }
  if (depth > 12) return std::nullopt;
  // gcd(a, b) = gcd(cont a, cont b) * gcd(pp a, pp b) over Z
  {
    mpz_class ca = 0, cb = 0, c;
    for (auto& t : a.terms()) mpz_gcd(ca.get_mpz_t(), ca.get_mpz_t(), t.c.get_num_mpz_t());
    for (auto& t : b.terms()) mpz_gcd(cb.get_mpz_t(), cb.get_mpz_t(), t.c.get_num_mpz_t());
    if (ca != 1 || cb != 1) {
      mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      auto g = heuristic_gcd(a.scaled(Q(1) / Q(ca)), b.scaled(Q(1) / Q(cb)), depth);
      if (!g) return std::nullopt;
      return g->scaled(Q(c));
    }
  }
  uint32_t common = a.support() & b.support();
  if (common == 0) {
    // no shared variable: only an integer content can be common
    mpz_class ga = 0, gb = 0, g;
    for (auto& t : a.terms()) mpz_gcd(ga.get_mpz_t(), ga.get_mpz_t(), t.c.get_num_mpz_t());
    for (auto& t : b.terms()) mpz_gcd(gb.get_mpz_t(), gb.get_mpz_t(), t.c.get_num_mpz_t());
    mpz_gcd(g.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
    if (a.support() & ~b.support() && b.support() & ~a.support()) return MPoly(Q(g));
    // one side is free of the other's variables, so it must be split by content
    return std::nullopt;
  }
  int slot = 31 - __builtin_clz(common);
  mpz_class bound = std::min(max_abs_coeff(a), max_abs_coeff(b));
  mpz_class xi = 2 * bound + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<std::optional<Q>> at(kMaxSlots);
    at[slot] = Q(xi);
    MPoly ea = a.substitute(at), eb = b.substitute(at);
    auto gamma = heuristic_gcd(ea, eb, depth + 1);
    if (gamma) {
      // balanced xi-adic reconstruction
      std::vector<MPoly::Term> terms;
      mpz_class half = xi / 2;
      for (auto& t : gamma->terms()) {
        mpz_class c = t.c.get_num();
        int power = 0;
        while (c != 0) {
          mpz_class r;
          mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
          if (r > half) r -= xi;
          if (r != 0) {
            Mono m = t.m;
            m.e[slot] += static_cast<uint16_t>(power);
            terms.push_back({m, Q(r)});
          }
          c = (c - r) / xi;
          ++power;
        }
      }
      MPoly g = MPoly::from_terms(std::move(terms));
      if (!g.is_zero()) {
        g = g.primitive();
        if (a.divide_exact(g) && b.divide_exact(g)) return g;
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  if (a.size() == 1) return mono_gcd_with(a.lm(), b);
  if (b.size() == 1) return mono_gcd_with(b.lm(), a);
  if (a == b) return a.monic();
  uint32_t sa = a.support(), sb = b.support();
  if (sa & ~sb) {
    int s = __builtin_ctz(sa & ~sb);
    return gcd(content_in(a, s), b);
  }
  if (sb & ~sa) {
    int s = __builtin_ctz(sb & ~sa);
    return gcd(a, content_in(b, s));
  }
  if (a.total_degree() >= b.total_degree()) {
    if (a.divide_exact(b)) return b.monic();
  } else if (b.divide_exact(a)) {
    return a.monic();
  }
  if (auto h = heuristic_gcd(a.primitive(), b.primitive(), 0)) return h->monic();
  // main variable: smallest positive degree
  int slot = -1, best = 1 << 30;
  for (int s = 0; s < kMaxSlots; ++s) {
    if (!(sa & (1u << s))) continue;
    int d = std::max(a.degree_in(s), b.degree_in(s));
    if (d < best) best = d, slot = s;
  }
  MPoly ca = content_in(a, slot), cb = content_in(b, slot);
  MPoly c = gcd(ca, cb);
  MPoly pa = ca.is_constant() ? a : *a.divide_exact(ca);
  MPoly pb = cb.is_constant() ? b : *b.divide_exact(cb);
  if (pa.degree_in(slot) < pb.degree_in(slot)) std::swap(pa, pb);
  if (pb.degree_in(slot) == 0) return c.monic();
  while (true) {
    MPoly r = prem(pa, pb, slot);
    if (r.is_zero()) break;
    if (r.degree_in(slot) == 0) return c.monic();
    pa = std::move(pb);
    pb = primitive_in(r, slot);
  }
  return (c * primitive_in(pb, slot)).monic();
}

// ---------------------------------------------------------------------------
// printing

std::string to_string(const MPoly& p, const Ring& ring) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : p.terms()) {
    Q c = t.c;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (c != 1 || t.m.is_one()) {
      os << c.get_str();
      need_star = true;
    }
    for (int s = 0; s < kMaxSlots; ++s) {
      if (t.m.e[s] == 0) continue;
      if (need_star) os << "*";
      os << ring.slot_name(s);
      if (t.m.e[s] > 1) os << "^" << t.m.e[s];
      need_star = true;
    }
  }
  return os.str();
}

std::vector<MPoly> partial_factors(const MPoly& p, int nslots) {
  std::vector<MPoly> out;
  if (p.is_constant()) return out;
  MPoly rest = p.primitive();
  auto add = [&](const MPoly& f) {
    MPoly g = f.primitive();
    for (auto& o : out)
      if (o == g) return;
    out.push_back(g);
  };
  auto strip = [&](const MPoly& f) {
    bool hit = false;
    while (!rest.is_constant()) {
      auto q = rest.divide_exact(f);
      if (!q) break;
      rest = *q;
      hit = true;
    }
    if (hit) add(f);
  };
  std::vector<MPoly> candidates;
  for (int s = 0; s < nslots; ++s) candidates.push_back(MPoly::var(s));
  for (int s = 0; s < nslots; ++s) {
    candidates.push_back(MPoly::var(s) - MPoly(1));
    candidates.push_back(MPoly::var(s) + MPoly(1));
    for (int t = s + 1; t < nslots; ++t) {
      candidates.push_back(MPoly::var(s) - MPoly::var(t));
      candidates.push_back(MPoly::var(s) + MPoly::var(t));
    }
  }
  for (auto& c : candidates) {
    if (rest.is_constant()) break;
    if ((c.support() & ~rest.support()) != 0) continue;
    strip(c);
  }
  if (!rest.is_constant()) {
    // collapse perfect powers of an already found or remaining factor
    MPoly base = rest.primitive();
    for (int k = 2; k <= 4; ++k) {
      MPoly g = MPoly::gcd(base, base.derive(__builtin_ctz(base.support())));
      if (g.is_constant()) break;
      auto q = base.divide_exact(g);
      if (!q) break;
      MPoly pw(1);
      for (int i = 0; i < k; ++i) pw = pw * *q;
      if (pw.primitive() == base) {
        base = q->primitive();
        break;
      }
    }
    add(base);
  }
  return out;
}

}  // namespace oredual
