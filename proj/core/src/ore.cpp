#include "drinfeld/ore.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "drinfeld/places.hpp"
#include "drinfeld/residue.hpp"
#include "drinfeld/text.hpp"

namespace drinfeld {

// ---- OrePoly ---------------------------------------------------------------

OrePoly::OrePoly(const Field& f, std::vector<Poly> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

OrePoly OrePoly::tau(const Field& f, unsigned k) {
  std::vector<Poly> c(k + 1, Poly(f));
  c[k] = Poly::constant(f, 1);
  return OrePoly(f, std::move(c));
}

void OrePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Poly& OrePoly::coeff(std::size_t i) const {
  static thread_local std::map<const Field*, Poly> zeros;
  if (i < c_.size()) return c_[i];
  return zeros.try_emplace(f_, *f_).first->second;
}

OrePoly& OrePoly::operator+=(const OrePoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Poly(*f_));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
  trim();
  return *this;
}

OrePoly& OrePoly::operator-=(const OrePoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Poly(*f_));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] -= g.c_[i];
  trim();
  return *this;
}

OrePoly OrePoly::left_scaled(const Poly& a) const {
  return map_coeffs([&](const Poly& c) { return a * c; });
}

OrePoly ore_mul(const OrePoly& a, const OrePoly& b) {
  const Field& f = *a.f_;
  if (a.is_zero() || b.is_zero()) return OrePoly(f);
  std::vector<Poly> out(a.c_.size() + b.c_.size() - 1, Poly(f));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      out[i + j] += a.c_[i] * b.c_[j].frobenius(static_cast<unsigned>(i));
    }
  }
  return OrePoly(f, std::move(out));
}

Poly ore_eval(const OrePoly& f, const Poly& x) {
  Poly acc(f.field());
  if (x.is_zero()) return acc;
  Poly xp = x;
  for (int i = 0; i <= f.degree(); ++i) {
    if (i > 0) xp = xp.frobenius(1);
    if (!f.coeff(i).is_zero()) acc += f.coeff(i) * xp;
  }
  return acc;
}

// ---- BiPoly ----------------------------------------------------------------

BiPoly::BiPoly(const Field& f, std::vector<Poly> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Poly& BiPoly::coeff(std::size_t k) const {
  static thread_local std::map<const Field*, Poly> zeros;
  if (k < c_.size()) return c_[k];
  return zeros.try_emplace(f_, *f_).first->second;
}

BiPoly& BiPoly::operator+=(const BiPoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Poly(*f_));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
  trim();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), Poly(*f_));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] -= g.c_[i];
  trim();
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return BiPoly(*a.f_);
  std::vector<Poly> out(a.c_.size() + b.c_.size() - 1, Poly(*a.f_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return BiPoly(*a.f_, std::move(out));
}

BiPoly BiPoly::frobenius(unsigned k) const {
  std::vector<Poly> out;
  for (const auto& c : c_) out.push_back(c.frobenius(k));
  return BiPoly(*f_, std::move(out));
}

BiPoly BiPoly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  std::vector<Poly> out(k, Poly(*f_));
  out.insert(out.end(), c_.begin(), c_.end());
  return BiPoly(*f_, std::move(out));
}

Poly BiPoly::at_one() const {
  Poly s(*f_);
  for (const auto& c : c_) s += c;
  return s;
}

BiPoly BiPoly::divided_by_t_minus_one(int k) const {
  BiPoly cur = *this;
  for (int it = 0; it < k; ++it) {
    // synthetic division by (T - 1), from the top
    const std::size_t n = cur.c_.size();
    if (n == 0) return cur;
    std::vector<Poly> quo(n - 1, Poly(*f_));
    Poly carry(*f_);
    for (std::size_t i = n; i-- > 1;) {
      carry += cur.c_[i];
      quo[i - 1] = carry;
    }
    if (!(carry + cur.c_[0]).is_zero()) throw std::domain_error("not divisible by (T-1)");
    cur = BiPoly(*f_, std::move(quo));
  }
  return cur;
}

int BiPoly::order_at_one() const {
  if (is_zero()) throw std::domain_error("order at T=1 of zero");
  int k = 0;
  BiPoly cur = *this;
  while (cur.at_one().is_zero()) {
    cur = cur.divided_by_t_minus_one(1);
    ++k;
  }
  return k;
}

BiPoly BiPoly::divided_by(const Poly& a) const {
  std::vector<Poly> out;
  for (const auto& c : c_) {
    auto [qq, r] = c.divmod(a);
    if (!r.is_zero()) throw std::domain_error("coefficient not divisible");
    out.push_back(std::move(qq));
  }
  return BiPoly(*f_, std::move(out));
}

std::string BiPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string cs = drinfeld::to_string(c_[k]);
    if (k == 0) {
      s += cs;
      continue;
    }
    if (!c_[k].is_one()) s += "(" + cs + ")*";
    s += "T";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

// ---- TOrePoly --------------------------------------------------------------

TOrePoly::TOrePoly(const Field& f, std::vector<BiPoly> coeffs) : f_(&f), c_(std::move(coeffs)) { trim(); }

void TOrePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TOrePoly& TOrePoly::operator+=(const TOrePoly& g) {
  if (c_.size() < g.c_.size()) c_.resize(g.c_.size(), BiPoly(*f_));
  for (std::size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
  trim();
  return *this;
}

TOrePoly operator*(const TOrePoly& a, const TOrePoly& b) {
  if (a.c_.empty() || b.c_.empty()) return TOrePoly(*a.f_);
  std::vector<BiPoly> out(a.c_.size() + b.c_.size() - 1, BiPoly(*a.f_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] += a.c_[i] * b.c_[j].frobenius(static_cast<unsigned>(i));
  return TOrePoly(*a.f_, std::move(out));
}

TOrePoly TOrePoly::left_scaled(const BiPoly& a) const {
  std::vector<BiPoly> out;
  for (const auto& c : c_) out.push_back(a * c);
  return TOrePoly(*f_, std::move(out));
}

BiPoly TOrePoly::eval(const BiPoly& u) const {
  BiPoly acc(*f_);
  BiPoly up = u;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i > 0) up = up.frobenius(1);
    acc += c_[i] * up;
  }
  return acc;
}

OrePoly TOrePoly::at_one() const {
  std::vector<Poly> out;
  for (const auto& c : c_) out.push_back(c.at_one());
  return OrePoly(*f_, std::move(out));
}

// ---- DrinfeldModel ---------------------------------------------------------

struct DrinfeldModel::Cache {
  std::mutex mu;
  std::vector<std::unique_ptr<OrePoly>> powers;  // phi_{t^k}
};

DrinfeldModel::DrinfeldModel(OrePoly phi_t) : phi_t_(std::move(phi_t)), cache_(std::make_shared<Cache>()) {
  if (phi_t_.degree() < 1) throw std::invalid_argument("a Drinfeld model needs rank >= 1");
  if (!(phi_t_.coeff(0) == Poly::variable(field())))
    throw std::invalid_argument("the constant tau-coefficient of phi_t must be t");
}

DrinfeldModel DrinfeldModel::from_coefficients(const Field& f, std::vector<Poly> g) {
  g.insert(g.begin(), Poly::variable(f));
  return DrinfeldModel(OrePoly(f, std::move(g)));
}

DrinfeldModel DrinfeldModel::carlitz(const Field& f) { return from_coefficients(f, {Poly::constant(f, 1)}); }

const OrePoly& DrinfeldModel::phi_t_power(std::size_t k) const {
  std::lock_guard lock(cache_->mu);
  auto& pw = cache_->powers;
  if (pw.empty()) pw.push_back(std::make_unique<OrePoly>(OrePoly::constant(Poly::constant(field(), 1))));
  while (pw.size() <= k) pw.push_back(std::make_unique<OrePoly>(ore_mul(phi_t_, *pw.back())));
  return *pw[k];
}

OrePoly DrinfeldModel::phi_a(const Poly& a) const {
  OrePoly acc(field());
  for (int k = 0; k <= a.degree(); ++k)
    if (a.coeff(k)) acc += phi_t_power(k).left_scaled(Poly::constant(field(), a.coeff(k)));
  return acc;
}

Poly DrinfeldModel::apply(const Poly& a, const Poly& x) const {
  if (a.is_zero() || x.is_zero()) return Poly(field());
  Poly z = x.scaled(a.leading());
  for (int k = a.degree() - 1; k >= 0; --k) z = apply_t(z) + x.scaled(a.coeff(k));
  return z;
}

Smallness DrinfeldModel::smallness() const {
  bool very = true, small = true;
  const unsigned q = field().order();
  for (int i = 1; i <= rank(); ++i) {
    if (g(i).is_zero()) continue;
    const std::uint64_t d = static_cast<std::uint64_t>(g(i).degree());
    const std::uint64_t qi = (i < 64) ? ipow(q, i) : ~0ULL;
    if (d >= qi) very = false;
    if (d > qi) small = false;
  }
  return very ? Smallness::very_small : small ? Smallness::small : Smallness::neither;
}

std::string to_string(Smallness s) {
  switch (s) {
    case Smallness::very_small: return "very_small";
    case Smallness::small: return "small";
    default: return "neither";
  }
}

TOrePoly t_twist(const DrinfeldModel& m) {
  const Field& f = m.field();
  std::vector<BiPoly> c;
  for (int i = 0; i <= m.rank(); ++i) {
    std::vector<Poly> tc(i + 1, Poly(f));
    tc[i] = m.g(i);
    c.emplace_back(f, std::move(tc));
  }
  return TOrePoly(f, std::move(c));
}

TOrePoly t_twisted_phi(const DrinfeldModel& m, const BiPoly& b) {
  const Field& f = m.field();
  const TOrePoly tw = t_twist(m);
  TOrePoly acc(f);
  for (std::size_t k = 0; k < b.coeffs().size(); ++k) {
    const Poly& bk = b.coeff(k);
    if (bk.is_zero()) continue;
    // Horner in phi~_t for the t-polynomial bk
    TOrePoly h(f, {BiPoly(Poly::constant(f, bk.leading()))});
    for (int j = bk.degree() - 1; j >= 0; --j) {
      h = tw * h;
      h += TOrePoly(f, {BiPoly(Poly::constant(f, bk.coeff(j)))});
    }
    std::vector<Poly> tk(k + 1, Poly(f));
    tk[k] = Poly::constant(f, 1);
    acc += h.left_scaled(BiPoly(f, std::move(tk)));
  }
  return acc;
}

DrinfeldModel twist_by(const DrinfeldModel& m, const Poly& h) {
  if (h.is_zero()) throw std::invalid_argument("twist by zero");
  const unsigned q = m.field().order();
  std::vector<Poly> g;
  for (int i = 1; i <= m.rank(); ++i) g.push_back(m.g(i) * h.pow(ipow(q, i) - 1));
  return DrinfeldModel::from_coefficients(m.field(), std::move(g));
}

// ---- torsion ---------------------------------------------------------------

namespace {

// all monic divisors of a, by increasing degree
std::vector<Poly> monic_divisors(const Poly& a) {
  const Field& f = a.field();
  std::vector<Poly> out;
  const int n = a.degree();
  for (int d = 0; d <= n; ++d) {
    const std::uint64_t count = ipow(f.order(), d);
    for (std::uint64_t i = 0; i < count; ++i) {
      Poly c = d == 0 ? Poly::constant(f, 1) : candidate_from_index(f, d, i);
      if (c.divides(a)) out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

TorsionResult is_torsion_point(const DrinfeldModel& m, const Poly& x, std::size_t max_coeffs) {
  const int d0 = m.field().order() == 2 ? 2 : 1;
  return is_torsion_point(m, x, places_of_degree(m.field(), d0).front(), max_coeffs);
}

TorsionResult is_torsion_point(const DrinfeldModel& m, const Poly& x, const Place& p0, std::size_t max_coeffs) {
  const Field& f = m.field();
  if (!p0.satisfies_h()) throw std::invalid_argument("torsion test needs a place satisfying (H)");
  if (x.is_zero()) return {true, Poly::constant(f, 1)};
  const Poly a0 = fitting_ideal(m, p0.poly());
  // degree of phi_{a0}(x) is at most max_i deg(coefficient) + deg(x) q^i
  const OrePoly pa = m.phi_a(a0);
  std::uint64_t bound = 0;
  for (int i = 0; i <= pa.degree(); ++i) {
    if (pa.coeff(i).is_zero()) continue;
    const std::uint64_t qi = ipow(f.order(), i);
    const std::uint64_t b = pa.coeff(i).degree() + static_cast<std::uint64_t>(x.degree()) * qi;
    bound = std::max(bound, b);
  }
  if (bound + 1 > max_coeffs)
    throw ResourceLimitError("exact torsion test would need " + std::to_string(bound + 1) + " coefficients");
  if (!ore_eval(pa, x).is_zero()) return {false, std::nullopt};
  for (const auto& a : monic_divisors(a0))
    if (m.apply(a, x).is_zero()) return {true, a};
  return {true, a0};
}

// ---- text ------------------------------------------------------------------

DrinfeldModel parse_model(const Field& f, std::string_view text) {
  std::string s(text);
  std::string trimmed;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed == "carlitz") return DrinfeldModel::carlitz(f);
  return DrinfeldModel(OrePoly(f, parse_tau_poly(f, text)));
}

std::string to_string(const OrePoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (int i = 0; i <= f.degree(); ++i) {
    const Poly& c = f.coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += to_string(c);
      continue;
    }
    if (!c.is_one()) s += "(" + to_string(c) + ")*";
    s += "tau";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::string to_string(const DrinfeldModel& m) { return to_string(m.phi_t()); }

}  // namespace drinfeld
