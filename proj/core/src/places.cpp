#include "drinfeld/places.hpp"

#include <stdexcept>

namespace drinfeld {

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("irreducibility test of a constant");
  const int d = f.degree();
  if (d == 1) return true;
  const Field& F = f.field();
  const Poly m = f.monic();
  // roots first: cheap and catches most reducible inputs
  for (unsigned a = 0; a < F.order(); ++a)
    if (m.eval(static_cast<Elem>(a)) == 0) return false;
  if (d <= 3) return true;
  // Ben-Or: no irreducible factor of degree i <= d/2 divides m
  const Poly t = Poly::variable(F);
  Poly x = t;
  for (int i = 1; i <= d / 2; ++i) {
    x = pow_mod(x, F.order(), m);
    if (!gcd(m, x - t).is_one()) return false;
  }
  return true;
}

Place::Place(Poly generator) : gen_(std::move(generator)) {
  if (gen_.degree() < 1) throw std::invalid_argument("a place must have degree >= 1");
  if (gen_.leading() != 1) throw std::invalid_argument("a place generator must be monic");
  if (!is_irreducible(gen_)) throw std::invalid_argument("place generator is reducible");
}

Poly candidate_from_index(const Field& f, int d, std::uint64_t idx) {
  std::vector<Elem> c(d + 1, 0);
  c[d] = 1;
  const unsigned q = f.order();
  for (int j = d - 1; j >= 0; --j) {
    c[j] = static_cast<Elem>(idx % q);
    idx /= q;
  }
  return Poly(f, std::move(c));
}

std::uint64_t index_of_candidate(const Poly& monic) {
  std::uint64_t idx = 0;
  const unsigned q = monic.field().order();
  for (int j = 0; j < monic.degree(); ++j) idx = idx * q + monic.coeff(j);
  return idx;
}

std::uint64_t count_places(unsigned q, int d) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    return n > 1 ? -m : m;
  };
  std::int64_t s = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) s += mobius(e) * static_cast<std::int64_t>(ipow(q, d / e));
  return static_cast<std::uint64_t>(s / d);
}

void for_each_place(const Field& f, int d, const std::function<bool(const Place&)>& fn) {
  if (d < 1) throw std::invalid_argument("place degree must be >= 1");
  const std::uint64_t n = ipow(f.order(), d);
  for (std::uint64_t i = 0; i < n; ++i) {
    Poly c = candidate_from_index(f, d, i);
    if (is_irreducible(c) && !fn(Place(std::move(c), Place::Trusted{}))) return;
  }
}

std::vector<Place> places_of_degree(const Field& f, int d) {
  std::vector<Place> out;
  for_each_place(f, d, [&](const Place& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<Place> places_up_to(const Field& f, int max_degree) {
  std::vector<Place> out;
  for (int d = 1; d <= max_degree; ++d) {
    auto v = places_of_degree(f, d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

ExtInt valuation(const Poly& f, const Place& p) {
  if (f.is_zero()) return ExtInt::infinity();
  std::int64_t v = 0;
  Poly g = f;
  for (;;) {
    auto [qq, r] = g.divmod(p.poly());
    if (!r.is_zero()) return v;
    g = std::move(qq);
    ++v;
  }
}

ExtInt valuation(const RationalFunction& f, const Place& p) {
  if (f.is_zero()) return ExtInt::infinity();
  return ExtInt(valuation(f.num(), p).value() - valuation(f.den(), p).value());
}

}  // namespace drinfeld
