#include "drinfeld/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace drinfeld {

namespace {

bool is_prime_number(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// coefficients of z^k, ..., reduced by the monic modulus; digits base p
std::vector<unsigned> digits(unsigned a, unsigned p, unsigned k) {
  std::vector<unsigned> out(k);
  for (unsigned i = 0; i < k; ++i) {
    out[i] = a % p;
    a /= p;
  }
  return out;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned a = 0;
  for (size_t i = d.size(); i-- > 0;) a = a * p + d[i];
  return a;
}

std::vector<unsigned> mul_mod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                              const std::vector<unsigned>& m, unsigned p) {
  unsigned k = static_cast<unsigned>(m.size()) - 1;
  std::vector<unsigned> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (unsigned i = 2 * k - 1; i >= k && i < 2 * k; --i) {
    unsigned c = prod[i];
    if (!c) continue;
    for (unsigned j = 0; j <= k; ++j) prod[i - k + j] = (prod[i - k + j] + p * p - c * m[j]) % p;
  }
  prod.resize(k);
  return prod;
}

// true iff F_p[z]/(m) has no zero divisors
bool modulus_is_irreducible(unsigned p, const std::vector<unsigned>& m) {
  unsigned k = static_cast<unsigned>(m.size()) - 1;
  unsigned q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = a; b < q; ++b) {
      auto c = mul_mod(digits(a, p, k), digits(b, p, k), m, p);
      if (undigits(c, p) == 0) return false;
    }
  return true;
}

}  // namespace

std::pair<unsigned, unsigned> split_prime_power(unsigned q) {
  if (q < 2 || q > 256) throw std::invalid_argument("field order must be a prime power in [2, 256]");
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p) continue;
    if (!is_prime_number(p)) break;
    unsigned k = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) break;
    return {p, k};
  }
  throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
}

std::vector<unsigned> default_modulus(unsigned p, unsigned k) {
  if (k == 1) return {0, 1};
  // conventional choices; q = 4 must use z^2 + z + 1
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}}, {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 2}, {1, 0, 1}},          {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 1, 0, 0, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}}, {{5, 2}, {2, 1, 1}},       {{5, 3}, {2, 3, 0, 1}},
      {{7, 2}, {3, 1, 1}},          {{11, 2}, {7, 1, 1}},      {{13, 2}, {2, 1, 1}}};
  auto it = table.find({p, k});
  if (it != table.end() && modulus_is_irreducible(p, it->second)) return it->second;
  // lexicographically first monic irreducible
  unsigned count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (unsigned a = 0; a < count; ++a) {
    auto m = digits(a, p, k);
    m.push_back(1);
    if (modulus_is_irreducible(p, m)) return m;
  }
  throw std::logic_error("no irreducible modulus found");
}

Field::Field(unsigned p, std::vector<unsigned> modulus) : p_(p), modulus_(std::move(modulus)) {
  k_ = static_cast<unsigned>(modulus_.size()) - 1;
  q_ = 1;
  for (unsigned i = 0; i < k_; ++i) q_ *= p_;
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    auto da = digits(a, p_, k_);
    std::vector<unsigned> dn(k_);
    for (unsigned i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<Elem>(undigits(dn, p_));
    for (unsigned b = 0; b < q_; ++b) {
      auto db = digits(b, p_, k_);
      std::vector<unsigned> ds(k_);
      for (unsigned i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = static_cast<Elem>(undigits(ds, p_));
      mul_[a * q_ + b] =
          static_cast<Elem>(k_ == 1 ? (a * b) % p_ : undigits(mul_mod(da, db, modulus_, p_), p_));
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
}

const Field& Field::get(unsigned q) {
  auto [p, k] = split_prime_power(q);
  return get(p, default_modulus(p, k));
}

const Field& Field::get(unsigned p, const std::vector<unsigned>& modulus) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, std::vector<unsigned>>, std::unique_ptr<Field>> cache;
  if (!is_prime_number(p)) throw std::invalid_argument("characteristic must be prime");
  std::vector<unsigned> m = modulus;
  if (m.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
  if (m.back() % p != 1) throw std::invalid_argument("modulus must be monic");
  for (auto& c : m) c %= p;
  if (m.size() == 2) m = {0, 1};  // prime field: modulus is irrelevant
  std::lock_guard lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  unsigned q = 1;
  for (size_t i = 1; i < m.size(); ++i) q *= p;
  if (q > 256) throw std::invalid_argument("field order exceeds 256");
  if (m.size() > 2 && !modulus_is_irreducible(p, m))
    throw std::invalid_argument("modulus is reducible over F_" + std::to_string(p));
  auto* f = new Field(p, m);
  cache.emplace(key, std::unique_ptr<Field>(f));
  return *f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::string Field::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a, p_, k_);
  std::string s;
  for (size_t i = k_; i-- > 0;) {
    if (!d[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) s += std::to_string(d[i]) + "*";
    s += "z";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

std::string Field::name() const { return "F_" + std::to_string(q_); }

}  // namespace drinfeld
