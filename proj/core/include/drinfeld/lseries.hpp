#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "drinfeld/ore.hpp"
#include "drinfeld/padic.hpp"
#include "drinfeld/places.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

// Truncated power series in T over K.
using KSeries = std::vector<RationalFunction>;
KSeries series_mul(const KSeries& a, const KSeries& b, std::size_t n);
KSeries series_inverse(const KSeries& a, std::size_t n);  // a_0 must be 1

// |phi~(F_p)| = det(t - Theta - sum T^i G_i Phi^i) in A[T]
BiPoly twisted_fitting(const DrinfeldModel& m, const Place& p);

struct LocalFactor {
  Place place;
  KSeries coeffs;  // P_p(phi; T) = p^{-1} |phi~(F_p)|, coefficient of T^k
};
LocalFactor local_factor(const DrinfeldModel& m, const Place& p);

struct TruncatedLSeries {
  KSeries c;                   // c_0 .. c_{N-1}
  std::optional<Place> omitted;  // set for the p-adic series
};
// Euler product over places of degree < N (optionally omitting one place)
TruncatedLSeries l_series(const DrinfeldModel& m, int N);
TruncatedLSeries lp_series(const DrinfeldModel& m, const Place& p, int N);

// value = num / prod_{k>=1} (t^{q^k} - t)^{exps[k-1]}. Keeps exp/log
// coefficients in a form whose denominators never need gcds.
struct BinomialFraction {
  Poly num;
  std::vector<std::uint64_t> exps;
  RationalFunction to_rational() const;
  BinomialFraction frobenius(unsigned i) const;  // tau^i: raise to q^i
};
// (t^{q^k} - t)^e as an explicit polynomial (sparse via base-q digits of e)
Poly binomial_power(const Field& f, unsigned k, std::uint64_t e);
// exact test that sum of the fractions is zero
bool sum_is_zero(const std::vector<BinomialFraction>& terms);
BinomialFraction operator*(const BinomialFraction& a, const BinomialFraction& b);

struct ExpLogCoeffs {
  std::vector<BinomialFraction> e, l;  // indices 0..N
};
// e_n (t^{q^n} - t) = sum_{i>=1} g_i e_{n-i}^{q^i};
// l_n (t - t^{q^n}) = sum_{j=n-r}^{n-1} l_j g_{n-j}^{q^j}
ExpLogCoeffs exp_log_coeffs(const DrinfeldModel& m, int N);
// tau-coefficients n = 1..N of log*exp and exp*log all vanish
bool exp_log_inverse_check(const DrinfeldModel& m, const ExpLogCoeffs& c, int N);
// phi_t exp = exp t and log phi_t = t log, coefficientwise through N
bool functional_equation_check(const DrinfeldModel& m, const ExpLogCoeffs& c, int N);

struct TaelmanUnit {
  BiPoly u;
  bool certified = false;  // exact (small model); otherwise heuristic
  int truncation = 0;      // T-order used by the partial-sum route
};
// small models: 1 + sum alpha_i T^i (alpha_i = [t^{q^i}] g_i); otherwise
// exp~(L) mod T^N for growing N until three trailing zero coefficients
TaelmanUnit taelman_unit(const DrinfeldModel& m, int budget = 9);
// log~(u) mod T^N, exact in K
KSeries log_twisted(const DrinfeldModel& m, const BiPoly& u, int N);

// p-adic results carry the certification of the Taelman unit they used
struct PadicResult {
  Padic value;
  bool certified = true;
  int terms = 0;  // number of series terms summed
};

// log_{phi,p}(x) := a^{-1} log(phi_a(x)), a = |phi(F_p)|, to absolute precision prec
Padic padic_log(const DrinfeldModel& m, const Place& p, const Poly& x, int prec);

struct LSeriesBudget {
  int max_terms = 0;  // 0: automatic
};
// L_p(phi; 1) by summing the p-adic coefficients of P_p log~(u) with windowed
// stabilization; cross-checked against p^{-1} padic_log(phi_a(u(1))).
PadicResult lp_value_at_1(const DrinfeldModel& m, const Place& p, int prec, LSeriesBudget budget = {});
// p-adic coefficients c_0..c_{N-1} of L_p(phi;T) to absolute precision >= prec
std::vector<Padic> lp_coefficients_padic(const DrinfeldModel& m, const Place& p, const BiPoly& u, int N, int prec);

struct VanishingOrder {
  int order = 0;
  bool certified = true;
  bool twist_route = false;
  int twist_m = 0;
};
// order at T = 1 of u_phi(T) (equivalently of L_p(phi;T)); the twist route is
// taken when u*(1) is torsion. With a place, verified p-adically.
VanishingOrder vanishing_order(const DrinfeldModel& m, const std::optional<Place>& p = std::nullopt,
                               int verify_prec = 4);

// u_{twist_by(phi, p^m)} = p^{-m} phi~_{p^{m-1} a~}(u_phi), a~ = |phi~(F_p)|
BiPoly twisted_unit(const DrinfeldModel& m, const Place& p, int m_exp, const BiPoly& u);
int twist_exponent(const DrinfeldModel& m, const Place& p);

struct SpecialValue {
  PadicResult value;
  int order = 0;
  bool twist_route = false;
  // c_p of u*(1) (or of the twisted unit); empty when (H) fails
  std::optional<ExtInt> expected_valuation;
};
SpecialValue special_lvalue(const DrinfeldModel& m, const Place& p, int prec, LSeriesBudget budget = {});

struct CrossCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace drinfeld
