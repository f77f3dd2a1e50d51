#include "drinfeld/rational.hpp"

#include <stdexcept>

namespace drinfeld {

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), 1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  Elem l = den_.leading();
  if (l != 1) {
    Elem li = field().inv(l);
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& g) {
  if (g.is_zero()) return *this;
  if (den_ == g.den_) return *this = RationalFunction(num_ + g.num_, den_);
  Poly d = gcd(den_, g.den_);
  Poly a = g.den_ / d, b = den_ / d;
  return *this = RationalFunction(num_ * a + g.num_ * b, den_ * a);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& g) { return *this += -g; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& g) {
  if (is_zero() || g.is_zero()) return *this = RationalFunction(field());
  // cross-cancel before multiplying to keep sizes down
  Poly g1 = gcd(num_, g.den_), g2 = gcd(g.num_, den_);
  Poly n = (num_ / g1) * (g.num_ / g2);
  Poly d = (den_ / g2) * (g.den_ / g1);
  Elem l = d.leading();
  if (l != 1) {
    Elem li = field().inv(l);
    n = n.scaled(li);
    d = d.scaled(li);
  }
  num_ = std::move(n);
  den_ = std::move(d);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& g) { return *this *= g.inverse(); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  Elem li = field().inv(num_.leading());
  return RationalFunction(den_.scaled(li), num_.scaled(li), true);
}

}  // namespace drinfeld
