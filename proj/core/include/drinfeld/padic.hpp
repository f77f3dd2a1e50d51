#pragma once

#include <string>

#include "drinfeld/ext_int.hpp"
#include "drinfeld/places.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

// Element of K_p with capped absolute precision: p^val * unit, where the unit
// is invertible mod p and known modulo p^{abs - val}. An element known only to
// be 0 mod p^abs has no unit part. Exact zero is separate.
class Padic {
 public:
  static Padic exact_zero(const Place& p);
  static Padic zero(const Place& p, int abs);
  static Padic from_poly(const Place& p, const Poly& f, int abs);
  static Padic from_rational(const Place& p, const RationalFunction& f, int abs);

  const Place& place() const { return p_; }
  bool is_exact_zero() const { return exact_zero_; }
  // zero to the known precision (includes exact zero)
  bool is_zero() const { return exact_zero_ || unit_.is_zero(); }
  // valuation, or the precision when the value is zero to precision, or inf
  ExtInt valuation() const;
  int absolute_precision() const { return abs_; }
  const Poly& unit() const { return unit_; }

  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }
  Padic operator-() const;
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }
  Padic inverse() const;  // throws if zero to precision
  Padic shifted(int k) const;  // times p^k
  Padic with_precision(int abs) const;  // lower the cap

  // representative in A of an element with val >= 0, modulo p^abs
  Poly to_poly() const;
  // equal modulo p^prec (both must be known to that precision)
  bool congruent(const Padic& b, int prec) const;
  std::string to_string() const;

 private:
  Padic(const Place& p) : p_(p), unit_(p.field()) {}
  static Padic normalize(const Place& p, Poly s, int val, int abs);
  Place p_;
  bool exact_zero_ = false;
  int val_ = 0;
  Poly unit_;
  int abs_ = 0;
};

// p^n, cached per place
const Poly& place_power(const Place& p, int n);

}  // namespace drinfeld
