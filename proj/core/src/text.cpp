#include "drinfeld/text.hpp"

#include <cctype>

namespace drinfeld {

namespace {

using Bi = std::vector<Poly>;  // index = power of tau

Bi& trim(Bi& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  return a;
}
Bi operator+(Bi a, const Bi& b) {
  if (a.size() < b.size()) a.resize(b.size(), Poly(b[0].field()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return trim(a);
}
Bi operator-(const Bi& a) {
  Bi r = a;
  for (auto& x : r) x = -x;
  return r;
}
Bi mul(const Field& f, const Bi& a, const Bi& b) {
  if (a.empty() || b.empty()) return {};
  Bi r(a.size() + b.size() - 1, Poly(f));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

class Parser {
 public:
  Parser(const Field& f, std::string_view s, char var, bool allow_tau)
      : f_(f), s_(s), var_(var), allow_tau_(allow_tau) {}

  Bi run() {
    Bi r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_tau() {
    skip();
    return allow_tau_ && s_.substr(pos_, 3) == "tau";
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    if (at_tau()) return true;
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == var_ || c == 'z';
  }
  unsigned long long number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    unsigned long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > (1ULL << 40)) fail("number too large");
    }
    return v;
  }

  Bi expr() {
    Bi r;
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    } else if (peek('+')) {
      ++pos_;
    }
    r = term();
    if (neg) r = -r;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        r = r + term();
      } else if (peek('-')) {
        ++pos_;
        r = r + -term();
      } else {
        return r;
      }
    }
  }

  Bi term() {
    Bi r = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r = mul(f_, r, power());
      } else if (starts_factor()) {
        r = mul(f_, r, power());  // juxtaposition, e.g. "2t"
      } else {
        return r;
      }
    }
  }

  Bi power() {
    Bi b = atom();
    if (peek('^')) {
      ++pos_;
      auto e = number();
      if (b.empty()) return e == 0 ? Bi{Poly::constant(f_, 1)} : b;
      if (b.size() == 1 && b[0].is_constant()) return wrap(Poly::constant(f_, f_.pow(b[0].coeff(0), e)));
      if (e > (1ULL << 20)) fail("exponent too large");
      Bi r{Poly::constant(f_, 1)};
      for (unsigned long long i = 0; i < e; ++i) r = mul(f_, r, b);
      return r;
    }
    return b;
  }

  Bi wrap(Poly p) {
    Bi r{std::move(p)};
    return trim(r);
  }

  Bi atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Bi r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (at_tau()) {
      pos_ += 3;
      return Bi{Poly(f_), Poly::constant(f_, 1)};
    }
    if (c == var_) {
      ++pos_;
      return wrap(Poly::variable(f_));
    }
    if (c == 'z') {
      if (f_.is_prime()) fail("'z' used over a prime field");
      ++pos_;
      return wrap(Poly::constant(f_, static_cast<Elem>(f_.characteristic())));
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return wrap(Poly::constant(f_, f_.from_int(static_cast<long long>(number() % f_.characteristic()))));
    fail("unexpected character");
  }

  const Field& f_;
  std::string_view s_;
  char var_;
  bool allow_tau_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const Field& f, std::string_view text, char var) {
  Bi r = Parser(f, text, var, false).run();
  return r.empty() ? Poly(f) : r[0];
}

std::vector<Poly> parse_tau_poly(const Field& f, std::string_view text) {
  return Parser(f, text, 't', true).run();
}

std::string to_string(const Poly& f, char var) {
  if (f.is_zero()) return "0";
  const Field& F = f.field();
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    Elem c = f.coeff(k);
    if (!c) continue;
    if (!out.empty()) out += " + ";
    std::string cs = F.to_string(c);
    bool composite = cs.find('+') != std::string::npos;
    if (k == 0) {
      out += composite ? "(" + cs + ")" : cs;
      continue;
    }
    if (c != 1) out += (composite ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string to_string(const RationalFunction& f, char var) {
  if (f.is_polynomial()) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

}  // namespace drinfeld
