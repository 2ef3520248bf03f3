#include "oredual/ratfunc.hpp"

#include <cctype>

#include "oredual/error.hpp"

namespace oredual {

RatFunc RatFunc::normalize(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) throw Error("zero denominator");
  if (num.is_zero()) return RatFunc();
  if (den.is_constant()) return RatFunc(num.scaled(1 / den.lc()));
  MPoly g = MPoly::gcd(num, den);
  MPoly n = num, d = den;
  if (!g.is_one()) {
    n = *num.divide_exact(g);
    d = *den.divide_exact(g);
  }
  Q c = d.lc();
  if (d.is_constant()) return RatFunc(n.scaled(1 / c));
  return RatFunc(n.scaled(1 / c), d.scaled(1 / c), 0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ + o.num_);
  if (den_ == o.den_) return normalize(num_ + o.num_, den_);
  // n1/d1 + n2/d2 with g = gcd(d1, d2): any common factor of the new
  // numerator and denominator divides g.
  MPoly g = MPoly::gcd(den_, o.den_);
  if (g.is_one()) {
    MPoly t = num_ * o.den_ + o.num_ * den_;
    if (t.is_zero()) return RatFunc();
    return RatFunc(std::move(t), den_ * o.den_, 0);
  }
  MPoly a = *den_.divide_exact(g), b = *o.den_.divide_exact(g);
  MPoly t = num_ * b + o.num_ * a;
  if (t.is_zero()) return RatFunc();
  MPoly g2 = MPoly::gcd(t, g);
  if (!g2.is_one()) t = *t.divide_exact(g2), g = *g.divide_exact(g2);
  MPoly d = a * b * g;
  if (d.is_constant()) return RatFunc(t.scaled(1 / d.lc()));
  return RatFunc(std::move(t), std::move(d), 0);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, 0); }

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_);
  MPoly n1 = num_, d2 = o.den_, n2 = o.num_, d1 = den_;
  MPoly g1 = MPoly::gcd(n1, d2);
  if (!g1.is_one()) n1 = *n1.divide_exact(g1), d2 = *d2.divide_exact(g1);
  MPoly g2 = MPoly::gcd(n2, d1);
  if (!g2.is_one()) n2 = *n2.divide_exact(g2), d1 = *d1.divide_exact(g2);
  MPoly n = n1 * n2, d = d1 * d2;
  Q c = d.lc();
  if (d.is_constant()) return RatFunc(n.scaled(1 / c));
  if (c != 1) n = n.scaled(1 / c), d = d.scaled(1 / c);
  return RatFunc(std::move(n), std::move(d), 0);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error("division by zero rational function");
  Q c = num_.lc();
  if (num_.is_constant()) return RatFunc(den_.scaled(1 / c));
  return RatFunc(den_.scaled(1 / c), num_.scaled(1 / c), 0);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::derive(int slot) const {
  if (den_.is_one()) return RatFunc(num_.derive(slot));
  return normalize(num_.derive(slot) * den_ - num_ * den_.derive(slot), den_ * den_);
}

RatFunc RatFunc::compose(const std::vector<MPoly>& images) const {
  if (den_.is_one()) return RatFunc(num_.compose(images));
  return normalize(num_.compose(images), den_.compose(images));
}

RatFunc RatFunc::remap(const std::vector<int>& perm) const {
  if (den_.is_one()) return RatFunc(num_.remap(perm));
  return normalize(num_.remap(perm), den_.remap(perm));
}

RatFunc specialize(const RatFunc& f, const std::map<int, Q>& bindings, const Ring& ring) {
  if (bindings.empty()) return f;
  std::vector<std::optional<Q>> values(kMaxSlots);
  for (auto& [s, v] : bindings) values.at(s) = v;
  MPoly d = f.den().substitute(values);
  if (d.is_zero())
    throw Error("specialization makes the denominator " + to_string(f.den(), ring) + " vanish");
  return RatFunc::normalize(f.num().substitute(values), d);
}

std::string to_string(const RatFunc& f, const Ring& ring) {
  if (f.is_polynomial()) return to_string(f.num(), ring);
  return "(" + to_string(f.num(), ring) + ")/(" + to_string(f.den(), ring) + ")";
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
 public:
  Parser(const std::string& s, const Ring& r) : s_(s), ring_(r) {}

  RatFunc parse() {
    RatFunc v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("coefficient \"" + s_ + "\": " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc v = term();
    while (true) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
  RatFunc term() {
    RatFunc v = unary();
    while (true) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 4) fail("exponent too large");
    int e = std::stoi(s_.substr(start, pos_ - start));
    RatFunc r(1);
    for (int i = 0; i < e; ++i) r = r * base;
    if (neg) {
      if (r.is_zero()) fail("zero to a negative power");
      r = r.inverse();
    }
    return r;
  }
  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Q(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int slot = ring_.slot(name);
      if (slot < 0) fail("unknown variable or parameter '" + name + "'");
      return RatFunc(MPoly::var(slot));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const Ring& ring_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text, const Ring& ring) { return Parser(text, ring).parse(); }

}  // namespace oredual
