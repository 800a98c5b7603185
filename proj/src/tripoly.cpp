#include <markoff/tripoly.hpp>

#include <cctype>
#include <sstream>

namespace markoff {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) {
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  SymPoly parse() {
    SymPoly out;
    if (s_.empty()) throw DomainError("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      out += term() * KPoly(Rational(sign));
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse polynomial at position " + std::to_string(pos_) + ": " + what);
  }

  long integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::stol(s_.substr(start, pos_ - start));
  }

  SymPoly term() {
    Rational coef = 1;
    KPoly kpart(1L);
    Exponent e{0, 0, 0};
    for (;;) {
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        Rational v(s_.substr(start, pos_ - start));
        if (peek() == '/') {
          ++pos_;
          std::size_t s2 = pos_;
          while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
          if (s2 == pos_) fail("expected denominator");
          Integer den(s_.substr(s2, pos_ - s2));
          if (den == 0) fail("zero denominator");
          v /= Rational(den);
        }
        coef *= v;
      } else if (ch == 'x' || ch == 'y' || ch == 'z' || ch == 'k') {
        ++pos_;
        long ex = 1;
        if (peek() == '^') {
          ++pos_;
          ex = integer();
        }
        if (ch == 'k') kpart *= kappa().pow(static_cast<unsigned>(ex));
        else e[ch - 'x'] += static_cast<int>(ex);
      } else {
        fail("expected a number or one of x, y, z, k");
      }
      if (peek() != '*') break;
      ++pos_;
    }
    return SymPoly::monomial(kpart * coef, e[0], e[1], e[2]);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string mono(const std::string& coef_text, bool coef_is_one, const std::string& vars) {
  if (vars.empty()) return coef_text;
  if (coef_is_one) return vars;
  return coef_text + "*" + vars;
}

std::string var_power(const std::string& v, int e) {
  if (e == 0) return "";
  if (e == 1) return v;
  return v + "^" + std::to_string(e);
}

// Writes "c*vars" terms with sign handling; coefficients are KPoly.
void append_term(std::ostringstream& os, bool& first, const KPoly& c, const std::string& vars) {
  // A polynomial coefficient with one term carries its own sign.
  int nonzero = 0;
  for (const auto& q : c.coeffs())
    if (!is_zero(q)) ++nonzero;
  if (nonzero == 1) {
    int d = c.degree();
    Rational q = c[d];
    bool neg = sgn(q) < 0;
    Rational mag = abs(q);
    std::string body;
    if (d == 0) body = mono(mag.get_str(), mag == 1, vars);
    else {
      std::string kp = var_power("k", d);
      std::string cpart = mag == 1 ? kp : mag.get_str() + "*" + kp;
      body = vars.empty() ? cpart : cpart + "*" + vars;
    }
    if (first) os << (neg ? "-" : "") << body;
    else os << (neg ? " - " : " + ") << body;
  } else {
    std::string body = "(" + to_string(c, "k") + ")";
    if (!vars.empty()) body += "*" + vars;
    os << (first ? "" : " + ") << body;
  }
  first = false;
}

}  // namespace

SymPoly parse_poly(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const UPoly<KPoly>& f, const std::string& var) {
  if (f.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i)
    if (!f[i].zero()) append_term(os, first, f[i], var_power(var, i));
  return os.str();
}

std::string to_string(const SymPoly& f) {
  if (f.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& e = it->first;
    std::string vars;
    for (int v = 0; v < 3; ++v) {
      std::string p = var_power(std::string(1, static_cast<char>('x' + v)), e[v]);
      if (p.empty()) continue;
      vars += vars.empty() ? p : "*" + p;
    }
    append_term(os, first, it->second, vars);
  }
  return os.str();
}

std::string to_string(const UPoly<Fp>& f, const std::string& var) {
  if (f.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    if (is_zero(f[i])) continue;
    if (!first) os << " + ";
    first = false;
    std::string vp = var_power(var, i);
    os << mono(std::to_string(f[i].v), f[i].v == 1, vp);
  }
  return os.str();
}

SymPoly specialize(const SymPoly& f, const Rational& k) {
  return f.map([&](const KPoly& c) { return KPoly(c.eval(k)); });
}

UPoly<KPoly> specialize(const UPoly<KPoly>& f, const Rational& k) {
  return f.map([&](const KPoly& c) { return KPoly(c.eval(k)); });
}

ModPoly reduce_mod(const SymPoly& f, std::uint64_t p, std::uint64_t k) {
  return f.map([&](const KPoly& c) { return Fp(p, static_cast<long long>(eval_mod(c, k, p))); });
}

UPoly<Fp> reduce_mod(const UPoly<KPoly>& f, std::uint64_t p, std::uint64_t k) {
  return f.map([&](const KPoly& c) { return Fp(p, static_cast<long long>(eval_mod(c, k, p))); });
}

KPoly to_kpoly(const ZPoly& z) {
  return z.map([](const Integer& v) { return Rational(v); });
}

ZPoly to_zpoly(const KPoly& q) {
  return q.map([](const Rational& v) {
    if (v.get_den() != 1) throw DomainError("polynomial is not integral");
    return Integer(v.get_num());
  });
}

std::pair<TriPoly<ZPoly>, Integer> integralize(const SymPoly& f) {
  Integer den = 1;
  for (const auto& [e, c] : f.terms()) {
    Integer l = denominator_lcm(c);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
  }
  TriPoly<ZPoly> out = f.map([&](const KPoly& c) { return to_zpoly(c * Rational(den)); });
  return {out, den};
}

}  // namespace markoff
