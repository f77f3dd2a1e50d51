#pragma once

#include <string>

#include "drinfeld/ext_int.hpp"
#include "drinfeld/ore.hpp"
#include "drinfeld/places.hpp"

namespace drinfeld {

inline constexpr int kDefaultCMax = 64;

enum class CMethod { definition, valuation_formula };
std::string to_string(CMethod m);

// c_p(phi; x). `saturated` means the true value exceeds c_max and was not
// proven infinite; value is then c_max. Values up to c_max are exact.
struct OrdicValuation {
  ExtInt value;
  CMethod method = CMethod::valuation_formula;
  bool torsion = false;
  bool saturated = false;
};

// v_p(y) for y known modulo p^N; returns N when y = 0 mod p^N
int valuation_mod(const Poly& y, const Place& p, int N);

// c = v_p(phi_a(x)) - 1 with a = |phi(F_p)|; requires (H)_p. When p | x the
// valuation formula does not apply and the definition route is used instead.
OrdicValuation ordic_valuation(const DrinfeldModel& m, const Poly& x, const Place& p, int c_max = kDefaultCMax);
OrdicValuation ordic_valuation_by_definition(const DrinfeldModel& m, const Poly& x, const Place& p,
                                             int c_max = kDefaultCMax);

// pi_x(phi; p) = pi_x(phi; p^2)
bool is_wieferich(const DrinfeldModel& m, const Place& p, const Poly& x);
bool is_wieferich(const DrinfeldModel& m, const Place& p);
bool is_wieferich_by_definition(const DrinfeldModel& m, const Place& p, const Poly& x);

// degree-one criterion: t - alpha is Wieferich in base x iff d/dt phi_t(x)
// vanishes at alpha (the equivalence needs x(alpha) != 0)
bool wieferich_deg1(const DrinfeldModel& m, const Poly& x, Elem alpha);

// psi_{t^i} == phi_{t^i} + p sum_{j<i} t^j f phi_t^{i-j-1}  (mod p^2), psi_t = phi_t + p f
bool lift_congruence_check(const DrinfeldModel& phi, const OrePoly& f, const Place& p, int i);

// The linear form of the lift criterion for psi_t = phi_t + p f: returns
// (sum_{i,j} a_i xi^j f(mu_{i-j-1}) mod p) == (-phi_a(1)/p mod p).
bool linear_wieferich_criterion(const DrinfeldModel& phi, const OrePoly& f, const Place& p);

}  // namespace drinfeld
