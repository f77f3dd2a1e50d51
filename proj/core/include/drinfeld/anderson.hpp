#pragma once

#include <memory>
#include <string>
#include <vector>

#include "drinfeld/lseries.hpp"
#include "drinfeld/residue.hpp"

namespace drinfeld {

// F_p = A/p, with theta the class of t; elements are reduced polynomials in theta.
class ResidueField {
 public:
  explicit ResidueField(const Place& p) : p_(p), R_(p.poly()) {}
  const Place& place() const { return p_; }
  const QuotientRing& ring() const { return R_; }
  const Field& base() const { return p_.field(); }

 private:
  Place p_;
  QuotientRing R_;
};

// Polynomial in t with coefficients in F_p.
class FpPoly {
 public:
  explicit FpPoly(std::shared_ptr<const ResidueField> F) : F_(std::move(F)) {}
  FpPoly(std::shared_ptr<const ResidueField> F, std::vector<Poly> coeffs);
  static FpPoly constant(std::shared_ptr<const ResidueField> F, const Poly& c);
  static FpPoly t_minus_theta(std::shared_ptr<const ResidueField> F);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
  Poly coeff(std::size_t k) const;  // element of F_p as a polynomial in theta
  const ResidueField& residue_field() const { return *F_; }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c_ == b.c_; }
  // coefficientwise Frobenius of F_p over F_q (theta -> theta^{q^k}); t is fixed
  FpPoly sigma(unsigned k = 1) const;
  // the polynomial itself when every coefficient lies in F_q; throws otherwise
  Poly descend() const;
  std::string to_string() const;

 private:
  void trim();
  std::shared_ptr<const ResidueField> F_;
  std::vector<Poly> c_;
};

enum class MotiveKind { direct, dual };

// Matrix of tau on M(phi) (direct) or M(phi)^dual over F_p(t), stored as a
// numerator matrix over F_p[t] and a common denominator. Column i is the image
// of tau^* u_i.
struct MotiveMatrix {
  MotiveKind kind;
  std::shared_ptr<const ResidueField> field;
  std::vector<std::vector<FpPoly>> num;
  FpPoly den;

  std::size_t size() const { return num.size(); }
  MotiveMatrix sigma(unsigned k = 1) const;
  friend MotiveMatrix operator*(const MotiveMatrix& a, const MotiveMatrix& b);
};

// direct: throws std::domain_error when g_r = 0 mod p
MotiveMatrix motive_matrix(const DrinfeldModel& m, const Place& p, MotiveKind which);
// B sigma(B) ... sigma^{d-1}(B)
MotiveMatrix frobenius_power_matrix(const MotiveMatrix& B, int d);
// P(M(phi)^dual; T) = det(1 - T^d tau^d) on the dual motive, descended to K;
// equals local_factor(m, p)
LocalFactor euler_factor_via_dual(const DrinfeldModel& m, const Place& p);
// P(M(phi); T) = det(1 - T^d tau^d) on the direct motive (g_r invertible mod p)
LocalFactor motive_euler_factor(const DrinfeldModel& m, const Place& p);
// the same factor as det(tau^d - T^d) / det(tau^d) on the dual motive
LocalFactor motive_euler_factor_from_dual(const DrinfeldModel& m, const Place& p);

}  // namespace drinfeld
