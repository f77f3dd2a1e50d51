#include "drinfeld/residue.hpp"

#include <stdexcept>

#include "drinfeld/berkowitz.hpp"

namespace drinfeld {

FqMatrix FqMatrix::identity(const Field& f, std::size_t n) {
  FqMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Elem> FqMatrix::apply(std::span<const Elem> v) const {
  if (v.size() != c_) throw std::invalid_argument("matrix/vector size mismatch");
  std::vector<Elem> out(r_, 0);
  for (std::size_t j = 0; j < c_; ++j) {
    if (!v[j]) continue;
    const Elem* row = f_->mul_row(v[j]);
    for (std::size_t i = 0; i < r_; ++i) {
      Elem a = a_[i * c_ + j];
      if (a) out[i] = f_->add(out[i], row[a]);
    }
  }
  return out;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("matrix size mismatch");
  const Field& f = *a.f_;
  FqMatrix m(f, a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      Elem x = a.at(i, k);
      if (!x) continue;
      const Elem* row = f.mul_row(x);
      for (std::size_t j = 0; j < b.c_; ++j) m.at(i, j) = f.add(m.at(i, j), row[b.at(k, j)]);
    }
  return m;
}

FqMatrix operator+(const FqMatrix& a, const FqMatrix& b) {
  FqMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = a.f_->add(a.a_[i], b.a_[i]);
  return m;
}

QuotientRing::QuotientRing(const Poly& modulus) : mod_(modulus.monic()) {
  if (mod_.is_zero()) throw std::invalid_argument("quotient by the zero ideal");
  n_ = static_cast<std::size_t>(mod_.degree());
  const Field& f = mod_.field();
  const unsigned q = f.order();
  frob_.reserve(n_);
  Poly tq = reduce(Poly::monomial(f, 1, q));
  Poly cur = reduce(Poly::constant(f, 1));
  for (std::size_t j = 0; j < n_; ++j) {
    frob_.push_back(to_vector(cur));
    cur = mul(cur, tq);
  }
}

Poly QuotientRing::reduce(const Poly& f) const {
  if (f.size() <= n_) return f;
  return f % mod_;
}

std::vector<Elem> QuotientRing::to_vector(const Poly& f) const {
  Poly r = reduce(f);
  std::vector<Elem> v(n_, 0);
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = r.coeff(i);
  return v;
}

Poly QuotientRing::from_vector(std::span<const Elem> v) const {
  return Poly(field(), std::vector<Elem>(v.begin(), v.end()));
}

Poly QuotientRing::frobenius(const Poly& a, unsigned k) const {
  const Field& f = field();
  Poly cur = reduce(a);
  for (unsigned it = 0; it < k; ++it) {
    std::vector<Elem> out(n_, 0);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      Elem c = cur.coeff(j);
      if (!c) continue;
      const Elem* row = f.mul_row(c);
      const auto& fr = frob_[j];
      for (std::size_t i = 0; i < n_; ++i)
        if (fr[i]) out[i] = f.add(out[i], row[fr[i]]);
    }
    cur = Poly(f, std::move(out));
  }
  return cur;
}

FqMatrix multiplication_matrix(const QuotientRing& R, const Poly& g) {
  const std::size_t n = R.dim();
  FqMatrix m(R.field(), n, n);
  Poly col = R.reduce(g);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col.coeff(i);
    col = R.reduce(col.shifted(1));
  }
  return m;
}

FqMatrix frobenius_matrix(const QuotientRing& R) {
  const std::size_t n = R.dim();
  FqMatrix m(R.field(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Poly col = R.frobenius(Poly::monomial(R.field(), 1, j));
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col.coeff(i);
  }
  return m;
}

Poly apply_phi_t_mod(const DrinfeldModel& m, const QuotientRing& R, const Poly& y) {
  Poly acc = R.mul(Poly::variable(m.field()), y);
  Poly z = R.reduce(y);
  for (int i = 1; i <= m.rank(); ++i) {
    z = R.frobenius(z);
    if (!m.g(i).is_zero()) acc += R.mul(R.reduce(m.g(i)), z);
  }
  return acc;
}

Poly apply_phi_mod(const DrinfeldModel& m, const QuotientRing& R, const Poly& a, const Poly& x) {
  if (a.is_zero()) return Poly(m.field());
  Poly xr = R.reduce(x);
  Poly z = xr.scaled(a.leading());
  for (int k = a.degree() - 1; k >= 0; --k) z = apply_phi_t_mod(m, R, z) + xr.scaled(a.coeff(k));
  return z;
}

FqMatrix phi_t_matrix(const DrinfeldModel& m, const QuotientRing& R) {
  const std::size_t n = R.dim();
  FqMatrix M(R.field(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Poly col = apply_phi_t_mod(m, R, Poly::monomial(R.field(), 1, j));
    for (std::size_t i = 0; i < n; ++i) M.at(i, j) = col.coeff(i);
  }
  return M;
}

Poly krylov_annihilator(const FqMatrix& M, std::span<const Elem> v0) {
  const Field& f = M.field();
  const std::size_t n = M.rows();
  struct Row {
    std::vector<Elem> v;
    std::size_t pivot;
    Poly comb;  // the polynomial c with c(M) v0 = v
  };
  std::vector<Row> basis;
  std::vector<Elem> v(v0.begin(), v0.end());
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Elem> w = v;
    Poly comb = Poly::monomial(f, 1, k);
    for (const auto& b : basis) {
      Elem c = w[b.pivot];
      if (!c) continue;
      const Elem* row = f.mul_row(c);
      for (std::size_t i = 0; i < n; ++i)
        if (b.v[i]) w[i] = f.sub(w[i], row[b.v[i]]);
      comb -= b.comb.scaled(c);
    }
    std::size_t piv = 0;
    while (piv < n && !w[piv]) ++piv;
    if (piv == n) return comb;  // monic: the X^k term is untouched
    Elem inv = f.inv(w[piv]);
    const Elem* row = f.mul_row(inv);
    for (auto& x : w) x = row[x];
    basis.push_back({std::move(w), piv, comb.scaled(inv)});
    v = M.apply(v);
  }
  throw std::logic_error("Krylov sequence did not terminate");
}

Poly charpoly(const FqMatrix& M0) {
  const Field& f = M0.field();
  const std::size_t n = M0.rows();
  if (n != M0.cols()) throw std::invalid_argument("charpoly of a non-square matrix");
  FqMatrix H = M0;
  // similarity reduction to upper Hessenberg form
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && !H.at(i, m - 1)) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(H.at(i, j), H.at(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(H.at(j, i), H.at(j, m));
    }
    Elem inv = f.inv(H.at(m, m - 1));
    for (std::size_t r = m + 1; r < n; ++r) {
      Elem u = f.mul(H.at(r, m - 1), inv);
      if (!u) continue;
      for (std::size_t j = 0; j < n; ++j) H.at(r, j) = f.sub(H.at(r, j), f.mul(u, H.at(m, j)));
      for (std::size_t j = 0; j < n; ++j) H.at(j, m) = f.add(H.at(j, m), f.mul(u, H.at(j, r)));
    }
  }
  // p_k = det(t - H[0..k, 0..k])
  std::vector<Poly> p;
  p.push_back(Poly::constant(f, 1));
  const Poly t = Poly::variable(f);
  for (std::size_t k = 0; k < n; ++k) {
    Poly pk = (t - Poly::constant(f, H.at(k, k))) * p[k];
    Elem prod = 1;
    for (std::size_t i = 1; i <= k; ++i) {
      prod = f.mul(prod, H.at(k - i + 1, k - i));
      Elem c = f.mul(prod, H.at(k - i, k));
      if (c) pk -= p[k - i].scaled(c);
    }
    p.push_back(std::move(pk));
  }
  return p[n];
}

std::vector<Poly> charpoly_berkowitz(const std::vector<std::vector<Poly>>& A) {
  if (A.empty()) throw std::invalid_argument("charpoly of an empty matrix");
  const Field& f = A[0][0].field();
  return berkowitz(A, Poly(f), Poly::constant(f, 1));
}

Poly annihilator_mod(const DrinfeldModel& m, const Poly& x, const Poly& I) {
  QuotientRing R(I);
  auto v = R.to_vector(x);
  return krylov_annihilator(phi_t_matrix(m, R), v);
}

Poly fitting_ideal(const DrinfeldModel& m, const Poly& I) {
  QuotientRing R(I);
  return charpoly(phi_t_matrix(m, R));
}

}  // namespace drinfeld
