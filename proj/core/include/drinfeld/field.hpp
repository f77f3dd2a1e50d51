#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drinfeld {

using Elem = std::uint8_t;

// F_q = F_p[z]/(modulus). An element b_0 + b_1 z + ... is encoded as the
// integer sum b_i p^i, so for q = p the encoding is the residue itself.
// Contexts are interned and live for the whole program; compare by address.
class Field {
 public:
  static const Field& get(unsigned q);
  // modulus: monic, coefficients low to high, degree k >= 1 (ignored for k = 1)
  static const Field& get(unsigned p, const std::vector<unsigned>& modulus);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned order() const { return q_; }
  bool is_prime() const { return k_ == 1; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  // a * b + c, the inner step of every dot product
  Elem fma(Elem a, Elem b, Elem c) const { return add_[mul_[a * q_ + b] * q_ + c]; }

  // integer n mapped through Z -> F_p -> F_q
  Elem from_int(long long n) const;
  const Elem* mul_row(Elem a) const { return &mul_[a * q_]; }
  const Elem* add_row(Elem a) const { return &add_[a * q_]; }

  // "z+1", "2", "z^2+2*z"; prime fields print the residue
  std::string to_string(Elem a) const;
  std::string name() const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(unsigned p, std::vector<unsigned> modulus);

  unsigned p_, k_, q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

std::vector<unsigned> default_modulus(unsigned p, unsigned k);
// q -> (p, k); throws std::invalid_argument if q is not a prime power <= 256
std::pair<unsigned, unsigned> split_prime_power(unsigned q);

}  // namespace drinfeld
