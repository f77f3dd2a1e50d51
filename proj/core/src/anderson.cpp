#include "drinfeld/anderson.hpp"

#include <stdexcept>

#include "drinfeld/berkowitz.hpp"
#include "drinfeld/text.hpp"

namespace drinfeld {

FpPoly::FpPoly(std::shared_ptr<const ResidueField> F, std::vector<Poly> coeffs) : F_(std::move(F)) {
  for (auto& c : coeffs) c_.push_back(F_->ring().reduce(c));
  trim();
}

FpPoly FpPoly::constant(std::shared_ptr<const ResidueField> F, const Poly& c) {
  return FpPoly(std::move(F), std::vector<Poly>{c});
}

FpPoly FpPoly::t_minus_theta(std::shared_ptr<const ResidueField> F) {
  const Field& f = F->base();
  return FpPoly(F, {-Poly::variable(f), Poly::constant(f, 1)});
}

Poly FpPoly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Poly(F_->base()); }

void FpPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  FpPoly r(a.F_);
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Poly(a.F_->base()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
  r.trim();
  return r;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  FpPoly r(a.F_);
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), Poly(a.F_->base()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) - b.coeff(i);
  r.trim();
  return r;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  FpPoly r(a.F_);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<Poly> acc(a.c_.size() + b.c_.size() - 1, Poly(a.F_->base()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) acc[i + j] += a.c_[i] * b.c_[j];
  }
  for (auto& x : acc) x = a.F_->ring().reduce(x);
  r.c_ = std::move(acc);
  r.trim();
  return r;
}

FpPoly FpPoly::sigma(unsigned k) const {
  FpPoly r(F_);
  for (const auto& c : c_) r.c_.push_back(F_->ring().frobenius(c, k));
  return r;
}

Poly FpPoly::descend() const {
  std::vector<Elem> out;
  for (const auto& c : c_) {
    if (c.degree() > 0) throw std::logic_error("coefficient does not lie in F_q: " + drinfeld::to_string(c, 'x'));
    out.push_back(c.coeff(0));
  }
  return Poly(F_->base(), std::move(out));
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string c = "(" + drinfeld::to_string(c_[k], 'x') + ")";
    s += k == 0 ? c : c + "*t" + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

MotiveMatrix MotiveMatrix::sigma(unsigned k) const {
  MotiveMatrix r{kind, field, num, den.sigma(k)};
  for (auto& row : r.num)
    for (auto& x : row) x = x.sigma(k);
  return r;
}

MotiveMatrix operator*(const MotiveMatrix& a, const MotiveMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("matrix size mismatch");
  MotiveMatrix r{a.kind, a.field, std::vector<std::vector<FpPoly>>(n, std::vector<FpPoly>(n, FpPoly(a.field))),
                 a.den * b.den};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a.num[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) r.num[i][j] = r.num[i][j] + a.num[i][k] * b.num[k][j];
    }
  return r;
}

MotiveMatrix motive_matrix(const DrinfeldModel& m, const Place& p, MotiveKind which) {
  auto F = std::make_shared<const ResidueField>(p);
  const Field& f = m.field();
  const int r = m.rank();
  std::vector<Poly> g(r + 1, Poly(f));
  for (int i = 1; i <= r; ++i) g[i] = F->ring().reduce(m.g(i));
  auto zero = FpPoly(F);
  auto one = FpPoly::constant(F, Poly::constant(f, 1));
  auto tm = FpPoly::t_minus_theta(F);
  if (which == MotiveKind::direct) {
    if (g[r].is_zero()) throw std::domain_error("g_r vanishes modulo p: the direct motive matrix needs g_r invertible");
    Poly inv = inverse_mod(g[r], p.poly());
    std::vector<std::vector<FpPoly>> B(r, std::vector<FpPoly>(r, zero));
    // tau u_i = u_{i+1}; tau u_{r-1} = g_r^{-1}((t - theta) u_0 - sum g_j u_j)
    for (int i = 0; i + 1 < r; ++i) B[i + 1][i] = one;
    B[0][r - 1] = tm * FpPoly::constant(F, inv);
    for (int j = 1; j < r; ++j) B[j][r - 1] = FpPoly::constant(F, -(g[j] * inv));
    return {which, F, std::move(B), one};
  }
  std::vector<std::vector<FpPoly>> B(r, std::vector<FpPoly>(r, zero));
  // tau u_i^dual = u_{i+1}^dual + g_{i+1} / (t - theta) u_0^dual, times (t - theta)
  for (int i = 0; i < r; ++i) {
    if (i + 1 < r) B[i + 1][i] = tm;
    B[0][i] = B[0][i] + FpPoly::constant(F, g[i + 1]);
  }
  return {which, F, std::move(B), tm};
}

MotiveMatrix frobenius_power_matrix(const MotiveMatrix& B, int d) {
  if (d < 1) throw std::invalid_argument("Frobenius power must be positive");
  MotiveMatrix r = B;
  for (int j = 1; j < d; ++j) r = r * B.sigma(j);
  return r;
}

namespace {

struct FrobeniusCharpoly {
  std::vector<Poly> c;  // det(y - N) = sum c_j y^j, descended to F_q[t]
  Poly D;               // tau^d = N / D
};

FrobeniusCharpoly frobenius_charpoly(const MotiveMatrix& B, int d) {
  MotiveMatrix Bd = frobenius_power_matrix(B, d);
  const Field& f = B.field->base();
  auto chi = berkowitz(Bd.num, FpPoly(B.field), FpPoly::constant(B.field, Poly::constant(f, 1)));
  FrobeniusCharpoly out{{}, Bd.den.descend()};
  for (const auto& x : chi) out.c.push_back(x.descend());
  return out;
}

// det(1 - X N/D) = sum_k c_{s-k} D^{-k} X^k, X = T^d
LocalFactor one_minus_frobenius(const MotiveMatrix& B, const Place& p) {
  const Field& f = p.field();
  const int d = p.degree();
  auto fc = frobenius_charpoly(B, d);
  const std::size_t s = B.size();
  KSeries coeffs(d * s + 1, RationalFunction(f));
  Poly Dk = Poly::constant(f, 1);
  for (std::size_t k = 0; k <= s; ++k) {
    coeffs[d * k] = RationalFunction(fc.c[s - k], Dk);
    Dk = Dk * fc.D;
  }
  return {p, std::move(coeffs)};
}

}  // namespace

LocalFactor euler_factor_via_dual(const DrinfeldModel& m, const Place& p) {
  return one_minus_frobenius(motive_matrix(m, p, MotiveKind::dual), p);
}

LocalFactor motive_euler_factor(const DrinfeldModel& m, const Place& p) {
  return one_minus_frobenius(motive_matrix(m, p, MotiveKind::direct), p);
}

LocalFactor motive_euler_factor_from_dual(const DrinfeldModel& m, const Place& p) {
  const Field& f = m.field();
  const int d = p.degree();
  auto fc = frobenius_charpoly(motive_matrix(m, p, MotiveKind::dual), d);
  // det(N - D X) / det(N) = sum_j c_j D^j X^j / c_0
  if (fc.c[0].is_zero()) throw std::domain_error("Frobenius of the dual motive is singular (g_r = 0 mod p)");
  KSeries coeffs(d * (fc.c.size() - 1) + 1, RationalFunction(f));
  Poly Dj = Poly::constant(f, 1);
  for (std::size_t j = 0; j < fc.c.size(); ++j) {
    coeffs[d * j] = RationalFunction(fc.c[j] * Dj, fc.c[0]);
    Dj = Dj * fc.D;
  }
  return {p, std::move(coeffs)};
}

}  // namespace drinfeld
