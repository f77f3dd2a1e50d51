#include "drinfeld/lseries.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "drinfeld/residue.hpp"
#include "drinfeld/wieferich.hpp"
#include "parallel.hpp"

namespace drinfeld {

KSeries series_mul(const KSeries& a, const KSeries& b, std::size_t n) {
  const Field& f = a.empty() ? b.at(0).field() : a[0].field();
  KSeries out(n, RationalFunction(f));
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

KSeries series_inverse(const KSeries& a, std::size_t n) {
  if (a.empty() || !(a[0] == RationalFunction(Poly::constant(a[0].field(), 1))))
    throw std::invalid_argument("series inverse needs constant term 1");
  KSeries b(n, RationalFunction(a[0].field()));
  b[0] = a[0];
  for (std::size_t k = 1; k < n; ++k) {
    RationalFunction s(a[0].field());
    for (std::size_t i = 1; i <= k && i < a.size(); ++i)
      if (!a[i].is_zero() && !b[k - i].is_zero()) s += a[i] * b[k - i];
    b[k] = -s;
  }
  return b;
}

BiPoly twisted_fitting(const DrinfeldModel& m, const Place& p) {
  const Field& f = m.field();
  QuotientRing R(p.poly());
  const std::size_t d = R.dim();
  const int r = m.rank();
  std::vector<Poly> g;
  for (int i = 1; i <= r; ++i) g.push_back(R.reduce(m.g(i)));
  // column j: phi~_t(t^j) = t^{j+1} + sum_i T^i g_i t^{j q^i}; entries live in F_q[T]
  std::vector<std::vector<Poly>> M(d, std::vector<Poly>(d, Poly(f)));
  for (std::size_t j = 0; j < d; ++j) {
    Poly basis = Poly::monomial(f, 1, j);
    Poly tj = R.reduce(basis.shifted(1));
    for (std::size_t a = 0; a < d; ++a)
      if (tj.coeff(a)) M[a][j] += Poly::constant(f, tj.coeff(a));
    Poly fr = basis;
    for (int i = 1; i <= r; ++i) {
      fr = R.frobenius(fr);
      Poly col = R.mul(g[i - 1], fr);
      for (std::size_t a = 0; a < d; ++a)
        if (col.coeff(a)) M[a][j] += Poly::monomial(f, col.coeff(a), i);
    }
  }
  auto cp = charpoly_berkowitz(M);  // cp[j](T) * t^j
  std::size_t tdeg = 0;
  for (const auto& c : cp)
    if (!c.is_zero()) tdeg = std::max<std::size_t>(tdeg, c.degree());
  std::vector<Poly> out;
  for (std::size_t k = 0; k <= tdeg; ++k) {
    std::vector<Elem> coeffs(cp.size(), 0);
    for (std::size_t j = 0; j < cp.size(); ++j) coeffs[j] = cp[j].coeff(k);
    out.emplace_back(f, std::move(coeffs));
  }
  return BiPoly(f, std::move(out));
}

LocalFactor local_factor(const DrinfeldModel& m, const Place& p) {
  BiPoly a = twisted_fitting(m, p);
  KSeries c;
  for (const auto& x : a.coeffs()) c.emplace_back(x, p.poly());
  return {p, std::move(c)};
}

namespace {

TruncatedLSeries euler_product(const DrinfeldModel& m, int N, const Place* omit) {
  if (N < 1) throw std::invalid_argument("series length must be positive");
  const Field& f = m.field();
  std::vector<Place> places;
  for (int d = 1; d < N; ++d)
    for_each_place(f, d, [&](const Place& p) {
      if (!omit || !(p == *omit)) places.push_back(p);
      return true;
    });
  // inverse local factors in parallel, then an ordered product
  std::vector<KSeries> inv(places.size());
  detail::parallel_for(places.size(), detail::default_workers(), [&](std::size_t i, unsigned) {
    inv[i] = series_inverse(local_factor(m, places[i]).coeffs, N);
  });
  KSeries acc(N, RationalFunction(f));
  acc[0] = RationalFunction(Poly::constant(f, 1));
  for (const auto& x : inv) acc = series_mul(acc, x, N);
  TruncatedLSeries out{std::move(acc), std::nullopt};
  if (omit) out.omitted = *omit;
  return out;
}

void mul_binomial(Poly& x, std::uint64_t a, std::uint64_t b) {
  // x * (t^a - t^b)
  if (x.is_zero()) return;
  x = x.shifted(a) - x.shifted(b);
}

// x * (t^{q^k} - t)^e
void mul_binomial_power(Poly& x, unsigned k, std::uint64_t e) {
  const std::uint64_t q = x.field().order();
  std::uint64_t s = 1;  // q^digit position
  while (e) {
    std::uint64_t digit = e % q;
    for (std::uint64_t i = 0; i < digit; ++i) mul_binomial(x, ipow(q, k) * s, s);
    e /= q;
    if (e) s *= q;
  }
}

Poly sparse_first_mul(const Poly& a, const Poly& b) {
  auto nnz = [](const Poly& p) {
    return std::count_if(p.coeffs().begin(), p.coeffs().end(), [](Elem c) { return c != 0; });
  };
  return nnz(a) <= nnz(b) ? a * b : b * a;
}

}  // namespace

TruncatedLSeries l_series(const DrinfeldModel& m, int N) { return euler_product(m, N, nullptr); }

TruncatedLSeries lp_series(const DrinfeldModel& m, const Place& p, int N) { return euler_product(m, N, &p); }

Poly binomial_power(const Field& f, unsigned k, std::uint64_t e) {
  Poly x = Poly::constant(f, 1);
  mul_binomial_power(x, k, e);
  return x;
}

RationalFunction BinomialFraction::to_rational() const {
  Poly den = Poly::constant(num.field(), 1);
  for (std::size_t k = 0; k < exps.size(); ++k) mul_binomial_power(den, static_cast<unsigned>(k + 1), exps[k]);
  return RationalFunction(num, den);
}

BinomialFraction BinomialFraction::frobenius(unsigned i) const {
  const std::uint64_t qi = ipow(num.field().order(), i);
  BinomialFraction r{num.frobenius(i), exps};
  for (auto& e : r.exps) e *= qi;
  return r;
}

BinomialFraction operator*(const BinomialFraction& a, const BinomialFraction& b) {
  BinomialFraction r{sparse_first_mul(a.num, b.num), a.exps};
  if (r.exps.size() < b.exps.size()) r.exps.resize(b.exps.size(), 0);
  for (std::size_t k = 0; k < b.exps.size(); ++k) r.exps[k] += b.exps[k];
  return r;
}

bool sum_is_zero(const std::vector<BinomialFraction>& terms) {
  if (terms.empty()) return true;
  std::vector<std::uint64_t> top;
  for (const auto& t : terms) {
    if (top.size() < t.exps.size()) top.resize(t.exps.size(), 0);
    for (std::size_t k = 0; k < t.exps.size(); ++k) top[k] = std::max(top[k], t.exps[k]);
  }
  Poly total(terms[0].num.field());
  for (const auto& t : terms) {
    Poly x = t.num;
    for (std::size_t k = 0; k < top.size(); ++k) {
      std::uint64_t e = k < t.exps.size() ? t.exps[k] : 0;
      mul_binomial_power(x, static_cast<unsigned>(k + 1), top[k] - e);
    }
    total += x;
  }
  return total.is_zero();
}

ExpLogCoeffs exp_log_coeffs(const DrinfeldModel& m, int N) {
  if (N < 0) throw std::invalid_argument("negative order");
  const Field& f = m.field();
  const int r = m.rank();
  const std::uint64_t q = f.order();
  const Poly t = Poly::variable(f);
  ExpLogCoeffs c;
  // numerators N_n over D_n = prod_{k<=n} [k]^{q^{n-k}}, [k] = t^{q^k} - t
  std::vector<Poly> en{Poly::constant(f, 1)};
  for (int n = 1; n <= N; ++n) {
    Poly s(f);
    for (int i = 1; i <= std::min(n, r); ++i) {
      Poly term = m.g(i) * en[n - i].frobenius(i);
      for (int k = n - i + 1; k <= n - 1; ++k) mul_binomial(term, ipow(q, n), ipow(q, n - k));
      s += term;
    }
    en.push_back(std::move(s));
  }
  // numerators M_n over E_n = prod_{k<=n} (t - t^{q^k})
  std::vector<Poly> ln{Poly::constant(f, 1)};
  for (int n = 1; n <= N; ++n) {
    Poly s(f);
    for (int j = std::max(0, n - r); j <= n - 1; ++j) {
      Poly term = sparse_first_mul(m.g(n - j).frobenius(j), ln[j]);
      for (int k = j + 1; k <= n - 1; ++k) mul_binomial(term, 1, ipow(q, k));
      s += term;
    }
    ln.push_back(std::move(s));
  }
  for (int n = 0; n <= N; ++n) {
    BinomialFraction e{en[n], {}}, l{ln[n], std::vector<std::uint64_t>(n, 1)};
    for (int k = 1; k <= n; ++k) e.exps.push_back(ipow(q, n - k));
    // t - t^{q^k} = -[k]
    if (n % 2) l.num = -l.num;
    c.e.push_back(std::move(e));
    c.l.push_back(std::move(l));
  }
  return c;
}

bool exp_log_inverse_check(const DrinfeldModel& m, const ExpLogCoeffs& c, int N) {
  (void)m;
  if (static_cast<int>(c.e.size()) <= N || static_cast<int>(c.l.size()) <= N)
    throw std::invalid_argument("not enough coefficients");
  for (int n = 1; n <= N; ++n) {
    std::vector<BinomialFraction> le, el;
    for (int i = 0; i <= n; ++i) {
      le.push_back(c.l[i] * c.e[n - i].frobenius(i));
      el.push_back(c.e[i] * c.l[n - i].frobenius(i));
    }
    if (!sum_is_zero(le) || !sum_is_zero(el)) return false;
  }
  return true;
}

bool functional_equation_check(const DrinfeldModel& m, const ExpLogCoeffs& c, int N) {
  const Field& f = m.field();
  const int r = m.rank();
  const Poly t = Poly::variable(f);
  for (int n = 1; n <= N; ++n) {
    // phi_t exp = exp t: sum_{i=0}^r g_i e_{n-i}^{q^i} - e_n t^{q^n}
    std::vector<BinomialFraction> a;
    for (int i = 0; i <= std::min(n, r); ++i) {
      auto e = c.e[n - i].frobenius(i);
      e.num = m.g(i) * e.num;
      a.push_back(std::move(e));
    }
    auto last = c.e[n];
    last.num = -(t.frobenius(n) * last.num);
    a.push_back(std::move(last));
    // log phi_t = t log: sum_{j} l_j g_{n-j}^{q^j} - t l_n
    std::vector<BinomialFraction> b;
    for (int j = std::max(0, n - r); j <= n; ++j) {
      auto l = c.l[j];
      l.num = sparse_first_mul(m.g(n - j).frobenius(j), l.num);
      b.push_back(std::move(l));
    }
    auto tl = c.l[n];
    tl.num = -(t * tl.num);
    b.push_back(std::move(tl));
    if (!sum_is_zero(a) || !sum_is_zero(b)) return false;
  }
  return true;
}

namespace {

BiPoly small_unit(const DrinfeldModel& m) {
  const Field& f = m.field();
  const std::uint64_t q = f.order();
  std::vector<Poly> c{Poly::constant(f, 1)};
  for (int i = 1; i <= m.rank(); ++i) {
    std::uint64_t deg = ipow(q, i);
    c.push_back(Poly::constant(f, m.g(i).coeff(deg)));
  }
  return BiPoly(f, std::move(c));
}

}  // namespace

TaelmanUnit taelman_unit(const DrinfeldModel& m, int budget) {
  if (m.smallness() != Smallness::neither) return {small_unit(m), true, 0};
  const Field& f = m.field();
  ExpLogCoeffs el = exp_log_coeffs(m, std::max(budget - 1, 1));
  std::vector<RationalFunction> e;
  for (int N = 4; N <= budget; ++N) {
    while (static_cast<int>(e.size()) < N) e.push_back(el.e[e.size()].to_rational());
    auto L = l_series(m, N).c;
    std::vector<Poly> u;
    for (int k = 0; k < N; ++k) {
      RationalFunction s(f);
      for (int n = 0; n <= k; ++n) s += e[n] * L[k - n].frobenius(n);
      if (!s.is_polynomial())
        throw std::logic_error("exp~ of the L-series has a non-integral coefficient");
      u.push_back(s.num());
    }
    if (u[N - 1].is_zero() && u[N - 2].is_zero() && u[N - 3].is_zero())
      return {BiPoly(f, std::move(u)), false, N};
  }
  throw ResourceLimitError("Taelman unit did not stabilize within the truncation budget");
}

KSeries log_twisted(const DrinfeldModel& m, const BiPoly& u, int N) {
  const Field& f = m.field();
  ExpLogCoeffs el = exp_log_coeffs(m, std::max(N - 1, 0));
  KSeries c(N, RationalFunction(f));
  for (int n = 0; n < N; ++n) {
    RationalFunction ln = el.l[n].to_rational();
    BiPoly un = u.frobenius(n);
    for (int k = n; k < N; ++k) {
      const Poly& x = un.coeff(k - n);
      if (!x.is_zero()) c[k] += ln * RationalFunction(x);
    }
  }
  return c;
}

namespace {

// p-adic logarithm coefficients l_n modulo p^W, produced on demand.
class PadicLogEngine {
 public:
  PadicLogEngine(const DrinfeldModel& m, const Place& p, int W)
      : m_(m), p_(p), W_(W), R_(place_power(p, W)) {
    tpow_.push_back(R_.reduce(Poly::variable(m.field())));
    gpow_.resize(m.rank() + 1);
    for (int i = 1; i <= m.rank(); ++i) gpow_[i].push_back(R_.reduce(m.g(i)));
    ell_.push_back(Padic::from_poly(p, Poly::constant(m.field(), 1), W));
  }
  int working_precision() const { return W_; }
  const QuotientRing& ring() const { return R_; }
  const Place& place() const { return p_; }

  const Padic& ell(int n) {
    while (static_cast<int>(ell_.size()) <= n) extend();
    return ell_[n];
  }

 private:
  void extend() {
    const int n = static_cast<int>(ell_.size());
    const int r = m_.rank();
    while (static_cast<int>(tpow_.size()) <= n) tpow_.push_back(R_.frobenius(tpow_.back()));
    for (int i = 1; i <= r; ++i)
      while (static_cast<int>(gpow_[i].size()) < n) gpow_[i].push_back(R_.frobenius(gpow_[i].back()));
    Padic s = Padic::zero(p_, W_);
    for (int j = std::max(0, n - r); j <= n - 1; ++j)
      s = s + ell_[j] * Padic::from_poly(p_, gpow_[n - j][j], W_);
    Padic den = Padic::from_poly(p_, Poly::variable(m_.field()) - tpow_[n], W_);
    ell_.push_back(s / den);
  }

  const DrinfeldModel& m_;
  Place p_;
  int W_;
  QuotientRing R_;
  std::vector<Poly> tpow_;
  std::vector<std::vector<Poly>> gpow_;
  std::vector<Padic> ell_;
};

// log(y) for y = 0 mod p given mod p^W; absolute precision <= target
Padic log_series(PadicLogEngine& eng, const Poly& y, int target) {
  const Place& p = eng.place();
  const int W = eng.working_precision();
  const int d = p.degree();
  const std::uint64_t q = p.field().order();
  Padic Y = Padic::from_poly(p, y, W);
  if (Y.is_zero()) return Padic::zero(p, W);
  const int vy = static_cast<int>(Y.valuation().value());
  if (vy < 1) throw std::logic_error("log series argument is not divisible by p");
  Padic s = Y;
  Poly yn = y;
  std::uint64_t qn = 1;
  for (int n = 1;; ++n) {
    qn *= q;
    // v(l_n y^{q^n}) >= q^n v(y) - floor(n/d)
    if (qn * static_cast<std::uint64_t>(vy) >= static_cast<std::uint64_t>(target + n / d)) break;
    yn = eng.ring().frobenius(yn);
    s = s + eng.ell(n) * Padic::from_poly(p, yn, W);
  }
  return s;
}

}  // namespace

Padic padic_log(const DrinfeldModel& m, const Place& p, const Poly& x, int prec) {
  if (x.is_zero()) return Padic::exact_zero(p);
  const Poly a = fitting_ideal(m, p.poly());
  const int va = static_cast<int>(valuation(a, p).value());
  for (int W = prec + va + 4;; W *= 2) {
    PadicLogEngine eng(m, p, W);
    Poly y = apply_phi_mod(m, eng.ring(), a, eng.ring().reduce(x));
    if (y.is_zero()) {
      if (is_torsion_point(m, x).torsion) return Padic::exact_zero(p);
      continue;
    }
    Padic s = log_series(eng, y, prec + va);
    Padic r = s / Padic::from_poly(p, a, W + va);
    if (r.absolute_precision() >= prec) return r.with_precision(prec);
    if (W > 1 << 14) throw ResourceLimitError("p-adic logarithm needs too much precision");
  }
}

namespace {

// p-adic coefficients of L_p(phi;T) = P_p(T) log~(u(T)), on demand, fixed W.
class LpStream {
 public:
  LpStream(const DrinfeldModel& m, const Place& p, const BiPoly& u, int W)
      : eng_(m, p, W), p_(p), W_(W) {
    for (const auto& c : local_factor(m, p).coeffs) P_.push_back(Padic::from_rational(p, c, W));
    for (const auto& c : u.coeffs()) upow_.push_back({eng_.ring().reduce(c)});
  }

  const Padic& coeff(int k) {
    while (static_cast<int>(c_.size()) <= k) extend();
    return c_[k];
  }

 private:
  // k-th coefficient of log~(u): sum_{n<=k} l_n u_{k-n}^{q^n}
  const Padic& log_coeff(int k) {
    while (static_cast<int>(logc_.size()) <= k) {
      const int i = static_cast<int>(logc_.size());
      Padic s = Padic::zero(p_, W_);
      for (int n = std::max(0, i - static_cast<int>(upow_.size()) + 1); n <= i; ++n) {
        auto& pw = upow_[i - n];
        while (static_cast<int>(pw.size()) <= n) pw.push_back(eng_.ring().frobenius(pw.back()));
        if (pw[n].is_zero()) continue;
        s = s + eng_.ell(n) * Padic::from_poly(p_, pw[n], W_);
      }
      logc_.push_back(s);
    }
    return logc_[k];
  }

  void extend() {
    const int k = static_cast<int>(c_.size());
    Padic s = Padic::zero(p_, W_);
    for (int j = 0; j < static_cast<int>(P_.size()) && j <= k; ++j) s = s + P_[j] * log_coeff(k - j);
    c_.push_back(s);
  }

  PadicLogEngine eng_;
  Place p_;
  int W_;
  std::vector<Padic> P_;
  std::vector<std::vector<Poly>> upow_;  // upow_[m][n] = u_m^{q^n} mod p^W
  std::vector<Padic> logc_, c_;
};

bool zero_mod(const Padic& x, int prec) { return x.is_zero() ? x.absolute_precision() >= prec || x.is_exact_zero() : x.valuation().value() >= prec; }

struct QuotientSums {
  std::vector<Padic> values;  // values at T=1 of L_p/(T-1)^j, j = 0..k
  int terms = 0;
};

// Sums of L_p and of its successive quotients by (T - 1), each to absolute
// precision prec. Coefficients of the j-th quotient are minus the partial sums
// of the (j-1)-th. A level counts as converged once its last 3d coefficients
// vanish mod p^prec.
QuotientSums quotient_sums(const DrinfeldModel& m, const Place& p, const BiPoly& u, int k, int prec,
                           LSeriesBudget budget) {
  const int d = p.degree();
  const int window = 3 * d;
  const int max_terms = budget.max_terms > 0 ? budget.max_terms : std::max(96, 40 * d);
  for (int W = prec + max_terms / (2 * d) + 6;; W += max_terms / d + 4) {
    LpStream s(m, p, u, W);
    std::vector<std::vector<Padic>> levels(k + 1);
    bool low_precision = false;
    for (int N = 1; N <= max_terms; ++N) {
      const int n = N - 1;
      Padic c = s.coeff(n);
      if (c.absolute_precision() < prec) {
        low_precision = true;
        break;
      }
      levels[0].push_back(c.with_precision(prec));
      for (int j = 1; j <= k; ++j) {
        Padic prev = levels[j].empty() ? Padic::zero(p, prec) : -levels[j].back();
        // l^{(j)}_n = -(sum_{i<=n} l^{(j-1)}_i)
        levels[j].push_back(-(prev + levels[j - 1][n]));
      }
      if (N < window + 1) continue;
      bool done = true;
      for (int j = 0; j <= k && done; ++j)
        for (int i = N - window; i < N && done; ++i)
          if (!zero_mod(levels[j][i], prec)) done = false;
      if (done) {
        QuotientSums out;
        out.terms = N;
        for (int j = 0; j <= k; ++j) {
          Padic v = Padic::zero(p, prec);
          for (const auto& x : levels[j]) v = v + x;
          out.values.push_back(v);
        }
        return out;
      }
    }
    if (!low_precision) throw ResourceLimitError("p-adic L-series did not stabilize within the term budget");
    if (W > 1 << 12) throw ResourceLimitError("p-adic L-series needs too much working precision");
  }
}

}  // namespace

std::vector<Padic> lp_coefficients_padic(const DrinfeldModel& m, const Place& p, const BiPoly& u, int N, int prec) {
  for (int W = prec + N / p.degree() + 6;; W *= 2) {
    LpStream s(m, p, u, W);
    std::vector<Padic> out;
    bool ok = true;
    for (int k = 0; k < N && ok; ++k) {
      const Padic& c = s.coeff(k);
      if (c.absolute_precision() < prec) ok = false;
      else out.push_back(c.with_precision(prec));
    }
    if (ok) return out;
    if (W > 1 << 12) throw ResourceLimitError("p-adic L-series needs too much working precision");
  }
}

PadicResult lp_value_at_1(const DrinfeldModel& m, const Place& p, int prec, LSeriesBudget budget) {
  TaelmanUnit tu = taelman_unit(m);
  QuotientSums qs = quotient_sums(m, p, tu.u, 0, prec, budget);
  PadicResult out{qs.values[0], tu.certified, qs.terms};
  // class formula: L_p(1) = p^{-1} log(phi_a(u(1))), a = |phi(F_p)|
  const Poly a = fitting_ideal(m, p.poly());
  Poly u1 = tu.u.at_one();
  Padic cross = Padic::exact_zero(p);
  for (int W = prec + 8;; W *= 2) {
    PadicLogEngine eng(m, p, W);
    Poly y = apply_phi_mod(m, eng.ring(), a, eng.ring().reduce(u1));
    if (y.is_zero() && (u1.is_zero() || is_torsion_point(m, u1).torsion)) break;
    if (y.is_zero()) continue;
    cross = log_series(eng, y, prec + 1).shifted(-1);
    if (cross.absolute_precision() >= prec) break;
  }
  if (!cross.is_exact_zero()) cross = cross.with_precision(prec);
  bool agree = cross.is_exact_zero() ? zero_mod(out.value, prec) : out.value.congruent(cross, prec);
  if (!agree)
    throw CrossCheckError("L_p(1) series value " + out.value.to_string() + " disagrees with class formula " +
                          cross.to_string());
  return out;
}

int twist_exponent(const DrinfeldModel& m, const Place& p) {
  int top = 0;
  for (int i = 1; i <= m.rank(); ++i) top = std::max(top, m.g(i).is_zero() ? 0 : m.g(i).degree());
  return top / p.degree() + 1;
}

BiPoly twisted_unit(const DrinfeldModel& m, const Place& p, int m_exp, const BiPoly& u) {
  if (m_exp < 1) throw std::invalid_argument("twist exponent must be positive");
  BiPoly b = twisted_fitting(m, p) * BiPoly(place_power(p, m_exp - 1));
  BiPoly w = t_twisted_phi(m, b).eval(u);
  return w.divided_by(place_power(p, m_exp));
}

namespace {

struct OrderInfo {
  VanishingOrder vo;
  BiPoly ustar;         // u*(T) of the model used (phi or its twist)
  std::optional<DrinfeldModel> twist;
  BiPoly u;             // u_phi
};

OrderInfo order_info(const DrinfeldModel& m, const std::optional<Place>& p) {
  TaelmanUnit tu = taelman_unit(m);
  if (tu.u.is_zero()) throw std::logic_error("Taelman unit is zero");
  OrderInfo info{{}, tu.u, std::nullopt, tu.u};
  int k = tu.u.order_at_one();
  BiPoly ustar = tu.u.divided_by_t_minus_one(k);
  if (!is_torsion_point(m, ustar.at_one()).torsion) {
    info.vo = {k, tu.certified, false, 0};
    info.ustar = ustar;
    return info;
  }
  // u*(1) torsion: pass to psi = p^{-m} phi p^m, whose unit is explicit
  Place place = p ? *p : [&] {
    for (int d = 1;; ++d)
      for (auto& c : places_of_degree(m.field(), d))
        if (c.satisfies_h()) return c;
  }();
  for (int e = twist_exponent(m, place); e <= twist_exponent(m, place) + 4; ++e) {
    DrinfeldModel psi = twist_by(m, place_power(place, e));
    BiPoly up = twisted_unit(m, place, e, tu.u);
    int kp = up.order_at_one();
    BiPoly us = up.divided_by_t_minus_one(kp);
    if (is_torsion_point(psi, us.at_one()).torsion) continue;
    info.vo = {kp, tu.certified, true, e};
    info.ustar = us;
    info.twist = psi;
    return info;
  }
  throw ResourceLimitError("no twist with a non-torsion special unit found");
}

}  // namespace

VanishingOrder vanishing_order(const DrinfeldModel& m, const std::optional<Place>& p, int verify_prec) {
  OrderInfo info = order_info(m, p);
  if (!p) return info.vo;
  const int k = info.vo.order;
  for (int prec = verify_prec; prec <= verify_prec + 8; prec += 4) {
    QuotientSums qs = quotient_sums(m, *p, info.u, k, prec, {});
    for (int j = 0; j < k; ++j)
      if (!zero_mod(qs.values[j], prec))
        throw CrossCheckError("L_p has a lower order at T=1 than the Taelman unit");
    if (!zero_mod(qs.values[k], prec)) return info.vo;
  }
  throw CrossCheckError("could not confirm the vanishing order p-adically");
}

namespace {

// c_p(phi; x) for p-units; for p | x the ordic valuation of the definition is 0
// while the class formula gives v_p(phi_a(x)) - 1, which is what L*_p(1) sees.
OrdicValuation expected_special_valuation(const DrinfeldModel& m, const Poly& x, const Place& p) {
  if (x.is_zero() || !(x % p.poly()).is_zero()) return ordic_valuation(m, x, p);
  OrdicValuation out;
  const Poly a = fitting_ideal(m, p.poly());
  for (int N = 8; N <= 1 << 10; N *= 2) {
    QuotientRing R(place_power(p, N));
    int v = valuation_mod(apply_phi_mod(m, R, a, R.reduce(x)), p, N);
    if (v < N) {
      out.value = v - 1;
      return out;
    }
  }
  if (is_torsion_point(m, x).torsion) {
    out.value = ExtInt::infinity();
    out.torsion = true;
    return out;
  }
  throw ResourceLimitError("valuation of phi_a(x) exceeds the precision budget");
}

}  // namespace

SpecialValue special_lvalue(const DrinfeldModel& m, const Place& p, int prec, LSeriesBudget budget) {
  OrderInfo info = order_info(m, p);
  const int k = info.vo.order;
  QuotientSums qs = quotient_sums(m, p, info.u, k, prec, budget);
  for (int j = 0; j < k; ++j)
    if (!zero_mod(qs.values[j], prec)) throw CrossCheckError("L_p does not vanish to the expected order");
  SpecialValue out{{qs.values[k], info.vo.certified, qs.terms}, k, info.vo.twist_route, std::nullopt};
  if (p.satisfies_h()) {
    const DrinfeldModel& model = info.twist ? *info.twist : m;
    auto c = expected_special_valuation(model, info.ustar.at_one(), p);
    out.expected_valuation = c.value;
    ExtInt got = out.value.value.valuation();
    bool ok = got == c.value || (zero_mod(out.value.value, prec) && c.value >= ExtInt(prec));
    if (!ok)
      throw CrossCheckError("valuation of L*_p(1) is " + got.to_string() + ", ordic valuation gives " +
                            c.value.to_string());
  }
  return out;
}

}  // namespace drinfeld
