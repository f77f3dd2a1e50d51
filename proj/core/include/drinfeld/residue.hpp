#pragma once

#include <span>
#include <vector>

#include "drinfeld/ore.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

// Dense matrix over F_q, row-major.
class FqMatrix {
 public:
  FqMatrix(const Field& f, std::size_t rows, std::size_t cols) : f_(&f), r_(rows), c_(cols), a_(rows * cols, 0) {}
  static FqMatrix identity(const Field& f, std::size_t n);

  const Field& field() const { return *f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Elem& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  Elem at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  std::vector<Elem> apply(std::span<const Elem> v) const;
  friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
  friend FqMatrix operator+(const FqMatrix& a, const FqMatrix& b);
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) = default;

 private:
  const Field* f_;
  std::size_t r_, c_;
  std::vector<Elem> a_;
};

// A/I with basis 1, t, ..., t^{n-1}.
class QuotientRing {
 public:
  explicit QuotientRing(const Poly& modulus);

  const Field& field() const { return mod_.field(); }
  const Poly& modulus() const { return mod_; }
  std::size_t dim() const { return n_; }

  Poly reduce(const Poly& f) const;
  std::vector<Elem> to_vector(const Poly& f) const;
  Poly from_vector(std::span<const Elem> v) const;
  Poly mul(const Poly& a, const Poly& b) const { return reduce(a * b); }
  // a^{q^k} for a already reduced; linear because coefficients lie in F_q
  Poly frobenius(const Poly& a, unsigned k = 1) const;

 private:
  Poly mod_;
  std::size_t n_;
  std::vector<std::vector<Elem>> frob_;  // t^{jq} mod I, j < n
};

FqMatrix multiplication_matrix(const QuotientRing& R, const Poly& g);
FqMatrix frobenius_matrix(const QuotientRing& R);
// matrix of y -> phi_t(y) mod I
FqMatrix phi_t_matrix(const DrinfeldModel& m, const QuotientRing& R);

// phi_t(y) mod I, y reduced
Poly apply_phi_t_mod(const DrinfeldModel& m, const QuotientRing& R, const Poly& y);
// phi_a(x) mod I by Horner in phi_t
Poly apply_phi_mod(const DrinfeldModel& m, const QuotientRing& R, const Poly& a, const Poly& x);

// monic c of least degree with c(M) v = 0
Poly krylov_annihilator(const FqMatrix& M, std::span<const Elem> v);
// det(t - M), via Hessenberg reduction
Poly charpoly(const FqMatrix& M);
// det(x - M) for M over a commutative ring of polynomials (division-free
// Berkowitz); returns coefficients low to high, last one 1
std::vector<Poly> charpoly_berkowitz(const std::vector<std::vector<Poly>>& M);

// monic generator of pi_x(phi; I)
Poly annihilator_mod(const DrinfeldModel& m, const Poly& x, const Poly& I);
// monic generator of |phi(A/I)|
Poly fitting_ideal(const DrinfeldModel& m, const Poly& I);

}  // namespace drinfeld
