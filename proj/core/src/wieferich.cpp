#include "drinfeld/wieferich.hpp"

#include <stdexcept>

#include "drinfeld/residue.hpp"

namespace drinfeld {

std::string to_string(CMethod m) { return m == CMethod::definition ? "definition" : "valuation_formula"; }

int valuation_mod(const Poly& y0, const Place& p, int N) {
  Poly y = y0;
  int v = 0;
  while (v < N) {
    if (y.is_zero()) return N;
    auto [qq, r] = y.divmod(p.poly());
    if (!r.is_zero()) return v;
    y = std::move(qq);
    ++v;
  }
  return N;
}

OrdicValuation ordic_valuation_by_definition(const DrinfeldModel& m, const Poly& x, const Place& p, int c_max) {
  OrdicValuation out;
  out.method = CMethod::definition;
  if (c_max < 0) throw std::invalid_argument("c_max must be >= 0");
  const Poly base = annihilator_mod(m, x, p.poly());
  auto same = [&](int k) { return annihilator_mod(m, x, p.poly().pow(k)) == base; };
  // pi(p^k) is decreasing in k, so the set of k with pi(p^k) = pi(p) is an interval
  // one level past c_max + 1, so that c = c_max is still reported exactly
  if (same(c_max + 2)) {
    out.value = c_max;
    out.saturated = true;
    return out;
  }
  int lo = 1, hi = c_max + 2;  // same(lo), !same(hi)
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (same(mid) ? lo : hi) = mid;
  }
  out.value = lo - 1;
  return out;
}

OrdicValuation ordic_valuation(const DrinfeldModel& m, const Poly& x, const Place& p, int c_max) {
  if (!p.satisfies_h()) throw std::invalid_argument("valuation formula needs (H)_p: q = 2 requires deg p > 1");
  if (c_max < 0) throw std::invalid_argument("c_max must be >= 0");
  OrdicValuation out;
  out.method = CMethod::valuation_formula;
  if (x.is_zero()) {
    out.value = ExtInt::infinity();
    out.torsion = true;
    return out;
  }
  if ((x % p.poly()).is_zero()) return ordic_valuation_by_definition(m, x, p, c_max);
  const Poly a = fitting_ideal(m, p.poly());
  const int cap = c_max + 2;
  int N = std::min(cap, 4);
  for (;;) {
    QuotientRing R(p.poly().pow(N));
    int v = valuation_mod(apply_phi_mod(m, R, a, x), p, N);
    if (v < N) {
      out.value = v - 1;
      return out;
    }
    if (N >= cap) break;
    N = std::min(cap, 2 * N);
  }
  if (is_torsion_point(m, x).torsion) {
    out.value = ExtInt::infinity();
    out.torsion = true;
  } else {
    out.value = c_max;
    out.saturated = true;
  }
  return out;
}

bool is_wieferich_by_definition(const DrinfeldModel& m, const Place& p, const Poly& x) {
  return annihilator_mod(m, x, p.poly()) == annihilator_mod(m, x, p.poly() * p.poly());
}

bool is_wieferich(const DrinfeldModel& m, const Place& p, const Poly& x) {
  if (!p.satisfies_h() || x.is_zero() || (x % p.poly()).is_zero()) return is_wieferich_by_definition(m, p, x);
  const Poly a = fitting_ideal(m, p.poly());
  QuotientRing R(p.poly() * p.poly());
  return apply_phi_mod(m, R, a, x).is_zero();
}

bool is_wieferich(const DrinfeldModel& m, const Place& p) {
  return is_wieferich(m, p, Poly::constant(m.field(), 1));
}

bool wieferich_deg1(const DrinfeldModel& m, const Poly& x, Elem alpha) {
  if (x.is_zero()) throw std::invalid_argument("degree-one criterion needs x != 0");
  // d/dt sum g_i x^{q^i} = g_0' x + g_0 x' + sum_{i>=1} g_i' x^{q^i}
  const Poly& t = m.g(0);
  Poly d = t.derivative() * x + t * x.derivative();
  Poly xp = x;
  for (int i = 1; i <= m.rank(); ++i) {
    xp = xp.frobenius(1);
    d += m.g(i).derivative() * xp;
  }
  return d.eval(alpha) == 0;
}

bool lift_congruence_check(const DrinfeldModel& phi, const OrePoly& f, const Place& p, int i) {
  if (i < 1) throw std::invalid_argument("lift congruence needs i >= 1");
  const Field& F = phi.field();
  const Poly p2 = p.poly() * p.poly();
  auto red = [&](const OrePoly& o) { return o.map_coeffs([&](const Poly& c) { return c % p2; }); };
  const DrinfeldModel psi(phi.phi_t() + f.left_scaled(p.poly()));
  if (psi.rank() != phi.rank()) throw std::invalid_argument("lift changes the rank");
  const Poly ti = Poly::monomial(F, 1, i);
  OrePoly lhs = red(psi.phi_a(ti));
  OrePoly sum(F);
  for (int j = 0; j < i; ++j)
    sum += red(OrePoly::constant(Poly::monomial(F, 1, j)) * f * phi.phi_t_power(i - j - 1));
  OrePoly rhs = red(phi.phi_a(ti) + sum.left_scaled(p.poly()));
  return lhs == rhs;
}

bool linear_wieferich_criterion(const DrinfeldModel& phi, const OrePoly& f, const Place& p) {
  const Field& F = phi.field();
  const Poly& P = p.poly();
  QuotientRing Rp(P);
  const Poly one = Poly::constant(F, 1);
  const Poly a = annihilator_mod(phi, one, P);
  const Poly xi = Rp.reduce(Poly::variable(F));
  // mu_j = phi_{t^j}(1) mod p
  std::vector<Poly> mu{Rp.reduce(one)};
  for (int j = 1; j < std::max(1, a.degree()); ++j) mu.push_back(apply_phi_t_mod(phi, Rp, mu.back()));
  auto f_at = [&](const Poly& y) {
    Poly acc(F), yp = y;
    for (int k = 0; k <= f.degree(); ++k) {
      if (k > 0) yp = Rp.frobenius(yp);
      acc += Rp.mul(Rp.reduce(f.coeff(k)), yp);
    }
    return acc;
  };
  Poly lhs(F);
  for (int i = 1; i <= a.degree(); ++i) {
    if (!a.coeff(i)) continue;
    Poly xij = Rp.reduce(one);
    for (int j = 0; j < i; ++j) {
      lhs += Rp.mul(xij, f_at(mu[i - j - 1])).scaled(a.coeff(i));
      xij = Rp.mul(xij, xi);
    }
  }
  QuotientRing R2(P * P);
  Poly phia = apply_phi_mod(phi, R2, a, one);
  auto [qq, r] = phia.divmod(P);
  if (!r.is_zero()) throw std::logic_error("a does not annihilate 1 modulo p");
  Poly rhs = Rp.reduce(-qq);
  return Rp.reduce(lhs) == rhs;
}

}  // namespace drinfeld
