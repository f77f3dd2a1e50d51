#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

// degree of the zero polynomial
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

// Dense univariate polynomial over F_q; used for A = F_q[t] and also for F_q[T].
class Poly {
 public:
  explicit Poly(const Field& f) : f_(&f) {}
  Poly(const Field& f, std::vector<Elem> coeffs);
  static Poly constant(const Field& f, Elem c);
  static Poly monomial(const Field& f, Elem c, std::size_t k);
  static Poly variable(const Field& f) { return monomial(f, 1, 1); }

  const Field& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
  // number of stored coefficients (degree + 1, or 0)
  std::size_t size() const { return c_.size(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem(0); }
  Elem leading() const { return c_.empty() ? Elem(0) : c_.back(); }
  std::span<const Elem> coeffs() const { return c_; }

  Poly& operator+=(const Poly& g);
  Poly& operator-=(const Poly& g);
  Poly& operator*=(const Poly& g);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

  Poly scaled(Elem c) const;
  Poly shifted(std::size_t k) const;  // multiply by t^k
  Poly monic() const;
  // (quotient, remainder); throws std::domain_error on division by zero
  std::pair<Poly, Poly> divmod(const Poly& g) const;
  Poly operator/(const Poly& g) const { return divmod(g).first; }
  Poly operator%(const Poly& g) const { return divmod(g).second; }
  bool divides(const Poly& g) const;  // this | g

  Poly derivative() const;
  Elem eval(Elem x) const;
  // f^{q^k} = f(t^{q^k}) because coefficients are fixed by Frobenius
  Poly frobenius(unsigned k = 1) const;
  Poly pow(std::uint64_t e) const;
  // polynomial composition f(g)
  Poly compose(const Poly& g) const;
  // truncate to degree < n
  Poly truncated(std::size_t n) const;

  std::size_t hash() const;

 private:
  void trim();
  const Field* f_;
  std::vector<Elem> c_;
};

Poly gcd(Poly a, Poly b);  // monic (or zero)
// returns (g, s, u) with s*a + u*b = g monic
struct XGcd {
  Poly g, s, u;
};
XGcd xgcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m);
Poly pow_mod(Poly base, std::uint64_t e, const Poly& m);
// inverse of a modulo m; throws if not invertible
Poly inverse_mod(const Poly& a, const Poly& m);

// q^e with overflow check
std::uint64_t ipow(std::uint64_t q, unsigned e);

}  // namespace drinfeld
