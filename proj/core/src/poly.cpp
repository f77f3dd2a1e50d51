#include "drinfeld/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace drinfeld {

namespace {

// Product of coefficient arrays. Prime fields accumulate in 32-bit integers and
// reduce lazily; extension fields go through the tables.
void mul_into(const Field& f, std::span<const Elem> a, std::span<const Elem> b, std::vector<Elem>& out) {
  out.assign(a.size() + b.size() - 1, 0);
  if (f.is_prime()) {
    const std::uint32_t p = f.characteristic();
    const std::uint64_t sq = std::uint64_t(p - 1) * (p - 1);
    const std::uint64_t batch = sq ? std::max<std::uint64_t>(1, (0xffffffffULL - p) / sq) : 1;
    std::vector<std::uint32_t> acc(out.size(), 0);
    std::uint64_t pending = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::uint32_t ai = a[i];
      if (!ai) continue;
      std::uint32_t* dst = acc.data() + i;
      for (std::size_t j = 0; j < b.size(); ++j) dst[j] += ai * b[j];
      if (++pending == batch) {
        for (auto& x : acc) x %= p;
        pending = 0;
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Elem>(acc[i] % p);
    return;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    const Elem* row = f.mul_row(a[i]);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j]) out[i + j] = f.add(out[i + j], row[b[j]]);
  }
}

}  // namespace

std::uint64_t ipow(std::uint64_t q, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) throw std::overflow_error("q^e overflows 64 bits");
    r *= q;
  }
  return r;
}

Poly::Poly(const Field& f, std::vector<Elem> coeffs) : f_(&f), c_(std::move(coeffs)) {
  for (auto c : c_)
    if (c >= f.order()) throw std::invalid_argument("coefficient out of range for " + f.name());
  trim();
}

Poly Poly::constant(const Field& f, Elem c) { return Poly(f, std::vector<Elem>{c}); }

Poly Poly::monomial(const Field& f, Elem c, std::size_t k) {
  Poly r(f);
  if (!c) return r;
  r.c_.assign(k + 1, 0);
  r.c_[k] = c;
  return r;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly& Poly::operator+=(const Poly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), 0);
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] = f_->add(c_[i], g.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), 0);
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] = f_->sub(c_[i], g.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(*a.f_);
  if (a.is_zero() || b.is_zero()) return r;
  mul_into(*a.f_, a.c_, b.c_, r.c_);
  r.trim();
  return r;
}

Poly& Poly::operator*=(const Poly& g) { return *this = *this * g; }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = f_->neg(c);
  return r;
}

Poly Poly::scaled(Elem c) const {
  if (!c) return Poly(*f_);
  Poly r = *this;
  const Elem* row = f_->mul_row(c);
  for (auto& x : r.c_) x = row[x];
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  Poly r(*f_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return scaled(f_->inv(leading()));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& g) const {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  if (c_.size() < g.c_.size()) return {Poly(*f_), *this};
  std::vector<Elem> r = c_;
  const std::size_t n = g.c_.size() - 1;
  std::vector<Elem> quo(c_.size() - n, 0);
  const Elem li = f_->inv(g.leading());
  for (std::size_t i = c_.size(); i-- > n;) {
    Elem c = r[i];
    if (!c) continue;
    c = f_->mul(c, li);
    quo[i - n] = c;
    const Elem* row = f_->mul_row(c);
    Elem* dst = r.data() + (i - n);
    for (std::size_t j = 0; j <= n; ++j)
      if (g.c_[j]) dst[j] = f_->sub(dst[j], row[g.c_[j]]);
  }
  r.resize(n);
  return {Poly(*f_, std::move(quo)), Poly(*f_, std::move(r))};
}

bool Poly::divides(const Poly& g) const { return (g % *this).is_zero(); }

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(*f_);
  std::vector<Elem> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i)), c_[i]);
  return Poly(*f_, std::move(d));
}

Elem Poly::eval(Elem x) const {
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = f_->fma(r, x, c_[i]);
  return r;
}

Poly Poly::frobenius(unsigned k) const {
  if (k == 0 || c_.size() <= 1) return *this;
  const std::uint64_t Q = ipow(f_->order(), k);
  const std::uint64_t top = Q * (c_.size() - 1);
  if (top > (std::uint64_t(1) << 32)) throw std::length_error("Frobenius power too large to materialize");
  std::vector<Elem> out(top + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i * Q] = c_[i];
  Poly r(*f_);
  r.c_ = std::move(out);
  return r;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly r = constant(*f_, 1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Poly Poly::compose(const Poly& g) const {
  Poly r(*f_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(*f_, c_[i]);
  return r;
}

Poly Poly::truncated(std::size_t n) const {
  if (c_.size() <= n) return *this;
  return Poly(*f_, std::vector<Elem>(c_.begin(), c_.begin() + n));
}

std::size_t Poly::hash() const {
  std::size_t h = 1469598103934665603ULL ^ f_->order();
  for (auto c : c_) h = (h ^ c) * 1099511628211ULL;
  return h;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Poly r0 = a, r1 = b, s0 = Poly::constant(f, 1), s1(f), u0(f), u1 = Poly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [qq, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = s0 - qq * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
    Poly u = u0 - qq * u1;
    u0 = std::move(u1);
    u1 = std::move(u);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  Elem li = f.inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), u0.scaled(li)};
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return (a / gcd(a, b) * b).monic();
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly pow_mod(Poly base, std::uint64_t e, const Poly& m) {
  Poly r = Poly::constant(base.field(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    e >>= 1;
    if (e) base = mul_mod(base, base, m);
  }
  return r;
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  auto [g, s, u] = xgcd(a % m, m);
  if (!g.is_one()) throw std::domain_error("polynomial not invertible modulo m");
  return s % m;
}

}  // namespace drinfeld
