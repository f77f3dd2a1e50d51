#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/poly.hpp"

namespace drinfeld {

class Place;

// Twisted polynomial sum f_i tau^i over A with tau c = c^q tau.
class OrePoly {
 public:
  explicit OrePoly(const Field& f) : f_(&f) {}
  OrePoly(const Field& f, std::vector<Poly> coeffs);
  static OrePoly constant(const Poly& c) { return OrePoly(c.field(), {c}); }
  static OrePoly tau(const Field& f, unsigned k = 1);

  const Field& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
  const Poly& coeff(std::size_t i) const;
  const std::vector<Poly>& coeffs() const { return c_; }

  OrePoly& operator+=(const OrePoly& g);
  OrePoly& operator-=(const OrePoly& g);
  friend OrePoly operator+(OrePoly a, const OrePoly& b) { return a += b; }
  friend OrePoly operator-(OrePoly a, const OrePoly& b) { return a -= b; }
  friend OrePoly operator*(const OrePoly& a, const OrePoly& b) { return ore_mul(a, b); }
  friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
  // left multiplication by a scalar of A
  OrePoly left_scaled(const Poly& a) const;
  // apply fn to every coefficient (used for reduction modulo an ideal)
  template <class Fn>
  OrePoly map_coeffs(Fn&& fn) const {
    std::vector<Poly> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(fn(x));
    return OrePoly(*f_, std::move(c));
  }

  friend OrePoly ore_mul(const OrePoly& a, const OrePoly& b);

 private:
  void trim();
  const Field* f_;
  std::vector<Poly> c_;
};

// sum f_i x^{q^i}
Poly ore_eval(const OrePoly& f, const Poly& x);

// Polynomial in T with coefficients in A (entry k is the coefficient of T^k).
class BiPoly {
 public:
  explicit BiPoly(const Field& f) : f_(&f) {}
  BiPoly(const Field& f, std::vector<Poly> coeffs);
  BiPoly(const Poly& a) : BiPoly(a.field(), std::vector<Poly>{a}) {}

  const Field& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  int t_degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
  const Poly& coeff(std::size_t k) const;
  const std::vector<Poly>& coeffs() const { return c_; }

  BiPoly& operator+=(const BiPoly& g);
  BiPoly& operator-=(const BiPoly& g);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

  // tau^k acting on the A-coefficients (T is fixed by tau)
  BiPoly frobenius(unsigned k) const;
  BiPoly shifted(std::size_t k) const;  // times T^k
  Poly at_one() const;                  // T := 1
  // multiplicity of T = 1 as a root; throws on zero
  int order_at_one() const;
  // exact quotient by (T - 1)^k; throws if not divisible
  BiPoly divided_by_t_minus_one(int k) const;
  // multiplicity of the exact divisor of all A-coefficients, scalars pulled out
  BiPoly divided_by(const Poly& a) const;

  std::string to_string() const;

 private:
  void trim();
  const Field* f_;
  std::vector<Poly> c_;
};

// Twisted polynomial with coefficients in A[T]; tau commutes with T.
class TOrePoly {
 public:
  explicit TOrePoly(const Field& f) : f_(&f) {}
  TOrePoly(const Field& f, std::vector<BiPoly> coeffs);
  const Field& field() const { return *f_; }
  int degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
  const std::vector<BiPoly>& coeffs() const { return c_; }
  TOrePoly& operator+=(const TOrePoly& g);
  friend TOrePoly operator*(const TOrePoly& a, const TOrePoly& b);
  friend bool operator==(const TOrePoly& a, const TOrePoly& b) { return a.c_ == b.c_; }
  TOrePoly left_scaled(const BiPoly& a) const;
  BiPoly eval(const BiPoly& u) const;  // sum c_i tau^i(u)
  OrePoly at_one() const;             // T := 1

 private:
  void trim();
  const Field* f_;
  std::vector<BiPoly> c_;
};

enum class Smallness { very_small, small, neither };
std::string to_string(Smallness s);

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// phi_t = t + g_1 tau + ... + g_r tau^r, r >= 1, g_r != 0.
class DrinfeldModel {
 public:
  explicit DrinfeldModel(OrePoly phi_t);
  // from g_1..g_r
  static DrinfeldModel from_coefficients(const Field& f, std::vector<Poly> g);
  static DrinfeldModel carlitz(const Field& f);

  const Field& field() const { return phi_t_.field(); }
  const OrePoly& phi_t() const { return phi_t_; }
  int rank() const { return phi_t_.degree(); }
  const Poly& g(int i) const { return phi_t_.coeff(i); }  // g(0) = t

  // image of a under phi; Horner-free sum a_k phi_{t^k} over memoized powers
  OrePoly phi_a(const Poly& a) const;
  const OrePoly& phi_t_power(std::size_t k) const;
  // phi_a(x), evaluated by repeated application of phi_t (no Ore products)
  Poly apply(const Poly& a, const Poly& x) const;
  Poly apply_t(const Poly& x) const { return ore_eval(phi_t_, x); }

  Smallness smallness() const;
  friend bool operator==(const DrinfeldModel& a, const DrinfeldModel& b) { return a.phi_t_ == b.phi_t_; }

 private:
  struct Cache;
  OrePoly phi_t_;
  std::shared_ptr<Cache> cache_;
};

TOrePoly t_twist(const DrinfeldModel& m);
// phi~_b for b in A[T], T-linear extension
TOrePoly t_twisted_phi(const DrinfeldModel& m, const BiPoly& b);
DrinfeldModel twist_by(const DrinfeldModel& m, const Poly& h);

struct TorsionResult {
  bool torsion = false;
  std::optional<Poly> annihilator;  // monic generator of Ann(x) when torsion
};
// Exact test through the smallest place satisfying (H). Throws
// ResourceLimitError when phi_{a0}(x) would exceed max_coeffs coefficients.
TorsionResult is_torsion_point(const DrinfeldModel& m, const Poly& x, std::size_t max_coeffs = 10'000'000);
// same test through a chosen place; x is torsion iff phi_a(x) = 0 for a = |phi(A/p)|
TorsionResult is_torsion_point(const DrinfeldModel& m, const Poly& x, const Place& p,
                               std::size_t max_coeffs = 10'000'000);

// "carlitz" or "t + (g1)*tau + (g2)*tau^2 + ..."
DrinfeldModel parse_model(const Field& f, std::string_view text);
std::string to_string(const DrinfeldModel& m);
std::string to_string(const OrePoly& f);

}  // namespace drinfeld
