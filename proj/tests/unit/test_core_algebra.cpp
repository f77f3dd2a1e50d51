#include <gtest/gtest.h>

#include <random>

#include "drinfeld/places.hpp"
#include "drinfeld/text.hpp"

using namespace drinfeld;

namespace {

Poly P(unsigned q, const char* s) { return parse_poly(Field::get(q), s); }

Poly random_poly(const Field& f, int deg, std::mt19937_64& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = static_cast<Elem>(rng() % f.order());
  if (!c.back()) c.back() = 1;
  return Poly(f, c);
}

}  // namespace

TEST(Field, TablesAreAField) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) {
    const Field& f = Field::get(q);
    EXPECT_EQ(f.order(), q);
    for (unsigned a = 1; a < q; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1) << q;
    for (unsigned a = 0; a < q; ++a) EXPECT_EQ(f.pow(a, q), a);  // Frobenius fixes F_q
  }
}

TEST(Field, F4UsesZSquaredPlusZPlusOne) {
  const Field& f = Field::get(4);
  EXPECT_EQ(f.modulus(), (std::vector<unsigned>{1, 1, 1}));
  Elem z = 2;
  EXPECT_EQ(f.add(f.mul(z, z), f.add(z, 1)), 0);
}

TEST(Field, RejectsBadInput) {
  EXPECT_THROW(Field::get(6), std::invalid_argument);
  EXPECT_THROW(Field::get(2, {1, 0, 1}), std::invalid_argument);  // z^2+1 = (z+1)^2
}

TEST(Poly, Arithmetic) {
  EXPECT_EQ(P(3, "t^2+1") + P(3, "t^2+2"), P(3, "2*t^2"));
  EXPECT_EQ(gcd(P(3, "t^3-t"), P(3, "t^2-1")), P(3, "t^2-1"));
  EXPECT_EQ(P(5, "3t^4+t+2") * P(5, "1"), P(5, "3t^4+t+2"));
  auto [qq, r] = P(3, "t^4+2t+1").divmod(P(3, "t^2+1"));
  EXPECT_EQ(qq * P(3, "t^2+1") + r, P(3, "t^4+2t+1"));
  EXPECT_LT(r.degree(), 2);
  EXPECT_THROW(P(3, "t").divmod(Poly(Field::get(3))), std::domain_error);
  EXPECT_EQ(Poly(Field::get(3)).degree(), kDegreeOfZero);
}

TEST(Poly, DegreeOfProductIsAdditive) {
  std::mt19937_64 rng(7);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Field& f = Field::get(q);
    for (int i = 0; i < 50; ++i) {
      int da = rng() % 20, db = rng() % 20;
      Poly a = random_poly(f, da, rng), b = random_poly(f, db, rng);
      EXPECT_EQ((a * b).degree(), da + db);
    }
  }
}

TEST(Poly, LargePrimeFieldProductMatchesTableProduct) {
  // the lazy-reduction path must agree with coefficientwise reference
  std::mt19937_64 rng(1);
  const Field& f = Field::get(251);
  Poly a = random_poly(f, 300, rng), b = random_poly(f, 280, rng);
  Poly c = a * b;
  for (int k : {0, 1, 150, 300, 579, 580}) {
    Elem ref = 0;
    for (int i = 0; i <= k; ++i) ref = f.add(ref, f.mul(a.coeff(i), b.coeff(k - i)));
    EXPECT_EQ(c.coeff(k), ref) << k;
  }
}

TEST(Poly, FrobeniusIsPowerQ) {
  const Field& f = Field::get(4);
  Poly a = parse_poly(f, "(z+1)*t^2 + z*t + 1");
  EXPECT_EQ(a.frobenius(1), a.pow(4));
  EXPECT_EQ(a.frobenius(2), a.pow(16));
}

TEST(Irreducibility, Examples) {
  EXPECT_TRUE(is_irreducible(P(2, "t^2+t+1")));
  EXPECT_FALSE(is_irreducible(P(2, "t^2+1")));
  for (unsigned q : {2u, 3u, 4u, 5u}) EXPECT_TRUE(is_irreducible(P(q, "t")));
  EXPECT_FALSE(is_irreducible(P(2, "(t^2+t+1)^2")));
  EXPECT_FALSE(is_irreducible(P(3, "(t^2+1)*(t^2+t+2)")));
  EXPECT_THROW(is_irreducible(P(3, "2")), std::invalid_argument);
}

TEST(Places, EnumerationOrderAndCounts) {
  auto p21 = places_of_degree(Field::get(2), 1);
  ASSERT_EQ(p21.size(), 2u);
  EXPECT_EQ(p21[0].poly(), P(2, "t"));
  EXPECT_EQ(p21[1].poly(), P(2, "t+1"));
  EXPECT_EQ(places_of_degree(Field::get(2), 6).size(), 9u);
  EXPECT_EQ(places_of_degree(Field::get(3), 2).size(), 3u);
  EXPECT_FALSE(p21[0].satisfies_h());
  EXPECT_TRUE(places_of_degree(Field::get(2), 2)[0].satisfies_h());
  // lexicographic with c_0 most significant
  auto p32 = places_of_degree(Field::get(3), 2);
  EXPECT_EQ(p32[0].poly(), P(3, "t^2+1"));
  EXPECT_EQ(p32[1].poly(), P(3, "t^2+t+2"));
  EXPECT_EQ(p32[2].poly(), P(3, "t^2+2t+2"));
}

TEST(Places, NecklaceIdentity) {
  // sum over e | d of e * #places(e) = q^d, with an independent irreducibility
  // oracle: f is irreducible iff it has no monic factor of degree <= deg/2
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Field& f = Field::get(q);
    const int dmax = q == 2 ? 8 : q == 3 ? 6 : 4;
    std::vector<std::uint64_t> cnt(dmax + 1, 0);
    for (int d = 1; d <= dmax; ++d) {
      cnt[d] = places_of_degree(f, d).size();
      EXPECT_EQ(cnt[d], count_places(q, d));
      std::uint64_t s = 0;
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) s += e * cnt[e];
      EXPECT_EQ(s, ipow(q, d));
    }
  }
  for (int d = 1; d <= 4; ++d) {
    const Field& f = Field::get(3);
    for (std::uint64_t i = 0; i < ipow(3, d); ++i) {
      Poly c = candidate_from_index(f, d, i);
      bool brute = true;
      for (int e = 1; e <= d / 2 && brute; ++e)
        for (std::uint64_t j = 0; j < ipow(3, e); ++j)
          if (candidate_from_index(f, e, j).divides(c)) brute = false;
      EXPECT_EQ(is_irreducible(c), brute) << to_string(c);
      EXPECT_EQ(index_of_candidate(c), i);
    }
  }
}

TEST(Valuation, Examples) {
  const Field& f3 = Field::get(3);
  Place t(P(3, "t"));
  EXPECT_EQ(valuation(P(3, "t^3+t^2"), t), ExtInt(2));
  Place p(P(3, "t^2+1"));
  EXPECT_EQ(valuation(P(3, "t^2+1"), p), ExtInt(1));
  EXPECT_EQ(valuation(RationalFunction(Poly::constant(f3, 1), P(3, "t^3-t")), t), ExtInt(-1));
  EXPECT_TRUE(valuation(Poly(f3), t).is_infinite());
}

TEST(Valuation, AdditiveAndUltrametric) {
  std::mt19937_64 rng(3);
  const Field& f = Field::get(3);
  Place p(P(3, "t^2+1"));
  for (int i = 0; i < 100; ++i) {
    Poly a = random_poly(f, rng() % 6, rng) * p.poly().pow(rng() % 3);
    Poly b = random_poly(f, rng() % 6, rng) * p.poly().pow(rng() % 3);
    EXPECT_EQ(valuation(a * b, p), valuation(a, p) + valuation(b, p));
    EXPECT_GE(valuation(a + b, p), std::min(valuation(a, p), valuation(b, p)));
  }
}

TEST(Rational, AgreesWithPolyArithmetic) {
  std::mt19937_64 rng(5);
  const Field& f = Field::get(5);
  for (int i = 0; i < 30; ++i) {
    Poly a = random_poly(f, rng() % 5, rng), b = random_poly(f, rng() % 5, rng);
    EXPECT_EQ(RationalFunction(a) + RationalFunction(b), RationalFunction(a + b));
    EXPECT_EQ(RationalFunction(a) * RationalFunction(b), RationalFunction(a * b));
    RationalFunction r = RationalFunction(a * b) / RationalFunction(b);
    EXPECT_TRUE(r.is_polynomial());
    EXPECT_EQ(r.num(), a);
  }
  RationalFunction x(P(3, "t^2-1"), P(3, "2t-2"));
  EXPECT_EQ(x.den(), P(3, "t-1").monic() / P(3, "t-1").monic() * P(3, "1"));
  EXPECT_EQ(x.num(), P(3, "2t+2"));
}

TEST(Text, RoundTrip) {
  std::mt19937_64 rng(11);
  for (unsigned q : {2u, 3u, 4u, 9u, 25u}) {
    const Field& f = Field::get(q);
    for (int i = 0; i < 40; ++i) {
      Poly a = random_poly(f, rng() % 8, rng);
      EXPECT_EQ(parse_poly(f, to_string(a)), a) << to_string(a);
    }
  }
  EXPECT_EQ(to_string(P(4, "(z+1)*t^2 + z")), "(z+1)*t^2 + z");
  EXPECT_EQ(P(3, " 2 t ^ 2 + t"), P(3, "2*t^2+t"));
  EXPECT_THROW(P(3, "t^2 +* 1"), ParseError);
  EXPECT_THROW(P(3, "z"), ParseError);
}
