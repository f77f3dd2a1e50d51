#pragma once

#include <string>

#include "drinfeld/poly.hpp"

namespace drinfeld {

// Element of K = F_q(t) in lowest terms with monic denominator.
class RationalFunction {
 public:
  explicit RationalFunction(const Field& f) : num_(f), den_(Poly::constant(f, 1)) {}
  RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}
  RationalFunction(Poly num, Poly den);

  const Field& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction& operator+=(const RationalFunction& g);
  RationalFunction& operator-=(const RationalFunction& g);
  RationalFunction& operator*=(const RationalFunction& g);
  RationalFunction& operator/=(const RationalFunction& g);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const { return RationalFunction(-num_, den_, true); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction inverse() const;
  RationalFunction frobenius(unsigned k = 1) const {
    return RationalFunction(num_.frobenius(k), den_.frobenius(k), true);
  }

 private:
  // trusted constructor: already reduced, denominator monic
  RationalFunction(Poly num, Poly den, bool) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_, den_;
};

}  // namespace drinfeld
