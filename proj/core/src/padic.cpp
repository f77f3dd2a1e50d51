#include "drinfeld/padic.hpp"

#include <climits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "drinfeld/text.hpp"

namespace drinfeld {

const Poly& place_power(const Place& p, int n) {
  if (n < 0) throw std::invalid_argument("negative place power");
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::vector<std::pair<Poly, Poly>>> cache;
  std::lock_guard lock(mu);
  auto& bucket = cache[{p.poly().hash(), n}];
  for (const auto& [gen, pw] : bucket)
    if (gen == p.poly()) return pw;
  bucket.emplace_back(p.poly(), p.poly().pow(n));
  return bucket.back().second;
}

namespace {

Poly mod_power(const Poly& f, const Place& p, int n) {
  if (n <= 0) return Poly(p.field());
  return f % place_power(p, n);
}

}  // namespace

Padic Padic::exact_zero(const Place& p) {
  Padic r(p);
  r.exact_zero_ = true;
  r.abs_ = INT_MAX;
  return r;
}

Padic Padic::zero(const Place& p, int abs) {
  Padic r(p);
  r.abs_ = abs;
  r.val_ = abs;
  return r;
}

Padic Padic::normalize(const Place& p, Poly s, int val, int abs) {
  if (val >= abs) return zero(p, abs);
  s = mod_power(s, p, abs - val);
  while (!s.is_zero()) {
    auto [qq, r] = s.divmod(p.poly());
    if (!r.is_zero()) break;
    s = std::move(qq);
    ++val;
  }
  if (s.is_zero() || val >= abs) return zero(p, abs);
  Padic out(p);
  out.val_ = val;
  out.abs_ = abs;
  out.unit_ = mod_power(s, p, abs - val);
  return out;
}

Padic Padic::from_poly(const Place& p, const Poly& f, int abs) { return normalize(p, f, 0, abs); }

Padic Padic::from_rational(const Place& p, const RationalFunction& f, int abs) {
  if (f.is_zero()) return zero(p, abs);
  int vd = static_cast<int>(drinfeld::valuation(f.den(), p).value());
  Poly d = f.den();
  for (int i = 0; i < vd; ++i) d = d / p.poly();
  // f = num / (p^vd * d) with d a unit; abs precision of the result is abs
  int rel = abs + vd;
  if (rel <= 0) return zero(p, abs);
  Padic num = from_poly(p, f.num(), rel);
  Padic den = from_poly(p, d, rel);
  Padic r = (num * den.inverse()).shifted(-vd);
  return r.with_precision(abs);
}

ExtInt Padic::valuation() const {
  if (exact_zero_) return ExtInt::infinity();
  return val_;
}

Padic Padic::operator-() const {
  Padic r = *this;
  r.unit_ = -unit_;
  return r;
}

Padic operator+(const Padic& a, const Padic& b) {
  if (a.exact_zero_) return b;
  if (b.exact_zero_) return a;
  const Place& p = a.p_;
  int abs = std::min(a.abs_, b.abs_);
  if (a.unit_.is_zero() && b.unit_.is_zero()) return Padic::zero(p, abs);
  int v = std::min(a.unit_.is_zero() ? INT_MAX : a.val_, b.unit_.is_zero() ? INT_MAX : b.val_);
  if (v >= abs) return Padic::zero(p, abs);
  const int n = abs - v;
  Poly s(p.field());
  if (!a.unit_.is_zero() && a.val_ < abs) s += a.unit_ * place_power(p, a.val_ - v);
  if (!b.unit_.is_zero() && b.val_ < abs) s += b.unit_ * place_power(p, b.val_ - v);
  return Padic::normalize(p, std::move(s), v, v + n);
}

Padic operator*(const Padic& a, const Padic& b) {
  const Place& p = a.p_;
  if (a.exact_zero_ || b.exact_zero_) return Padic::exact_zero(p);
  const bool az = a.unit_.is_zero(), bz = b.unit_.is_zero();
  if (az || bz) {
    // lower bound on the valuation of the product
    long long bound = static_cast<long long>(az ? a.abs_ : a.val_) + (bz ? b.abs_ : b.val_);
    return Padic::zero(p, static_cast<int>(std::min<long long>(bound, INT_MAX / 2)));
  }
  const int v = a.val_ + b.val_;
  const int rel = std::min(a.abs_ - a.val_, b.abs_ - b.val_);
  Padic out(p);
  out.val_ = v;
  out.abs_ = v + rel;
  out.unit_ = mod_power(a.unit_ * b.unit_, p, rel);
  return out;
}

Padic Padic::inverse() const {
  if (is_zero()) throw std::domain_error("p-adic inverse of an element that is zero to precision");
  const int rel = abs_ - val_;
  Padic out(p_);
  out.val_ = -val_;
  out.abs_ = -val_ + rel;
  out.unit_ = inverse_mod(unit_, place_power(p_, rel));
  return out;
}

Padic Padic::shifted(int k) const {
  if (exact_zero_) return *this;
  Padic r = *this;
  r.val_ += k;
  r.abs_ += k;
  return r;
}

Padic Padic::with_precision(int abs) const {
  if (exact_zero_) return *this;
  if (abs >= abs_) return *this;
  if (unit_.is_zero()) return zero(p_, abs);
  return normalize(p_, unit_, val_, abs);
}

Poly Padic::to_poly() const {
  if (is_zero()) return Poly(p_.field());
  if (val_ < 0) throw std::domain_error("to_poly of a non-integral p-adic number");
  return unit_ * place_power(p_, val_);
}

bool Padic::congruent(const Padic& b, int prec) const {
  Padic d = *this - b;
  if (!d.is_exact_zero() && d.absolute_precision() < prec)
    throw std::logic_error("congruence requested beyond known precision");
  return d.is_exact_zero() || d.valuation() >= ExtInt(prec);
}

std::string Padic::to_string() const {
  if (exact_zero_) return "0";
  if (unit_.is_zero()) return "O(p^" + std::to_string(abs_) + ")";
  return "p^" + std::to_string(val_) + "*(" + drinfeld::to_string(unit_) + ") + O(p^" + std::to_string(abs_) + ")";
}

}  // namespace drinfeld
