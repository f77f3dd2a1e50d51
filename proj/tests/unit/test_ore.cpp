#include <gtest/gtest.h>

#include <random>

#include "drinfeld/ore.hpp"
#include "drinfeld/text.hpp"

using namespace drinfeld;

namespace {

Poly P(unsigned q, const char* s) { return parse_poly(Field::get(q), s); }

Poly random_poly(const Field& f, int deg, std::mt19937_64& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = static_cast<Elem>(rng() % f.order());
  return Poly(f, c);
}

DrinfeldModel random_model(const Field& f, int r, int maxdeg, std::mt19937_64& rng) {
  std::vector<Poly> g;
  for (int i = 1; i <= r; ++i) g.push_back(random_poly(f, rng() % (maxdeg + 1), rng));
  while (g.back().is_zero()) g.back() = random_poly(f, rng() % (maxdeg + 1), rng);
  return DrinfeldModel::from_coefficients(f, g);
}

}  // namespace

TEST(Ore, TwistedRule) {
  const Field& f = Field::get(3);
  Poly c = P(3, "t^2+2");
  EXPECT_EQ(OrePoly::tau(f) * OrePoly::constant(c), OrePoly(f, {Poly(f), c.pow(3)}));
  // (t + tau)^2 over F_2
  const Field& f2 = Field::get(2);
  OrePoly a(f2, {P(2, "t"), P(2, "1")});
  EXPECT_EQ(a * a, OrePoly(f2, {P(2, "t^2"), P(2, "t^2+t"), P(2, "1")}));
  EXPECT_EQ(a * OrePoly::constant(P(2, "1")), a);
}

TEST(Ore, Associativity) {
  std::mt19937_64 rng(2);
  const Field& f = Field::get(4);
  auto rnd = [&] {
    std::vector<Poly> c;
    for (int i = 0; i < 3; ++i) c.push_back(random_poly(f, rng() % 3, rng));
    return OrePoly(f, c);
  };
  for (int i = 0; i < 10; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Ore, Evaluation) {
  const Field& f2 = Field::get(2);
  EXPECT_EQ(ore_eval(DrinfeldModel::carlitz(f2).phi_t(), P(2, "1")), P(2, "t+1"));
  EXPECT_TRUE(ore_eval(DrinfeldModel::carlitz(f2).phi_t(), Poly(f2)).is_zero());
  auto C3 = DrinfeldModel::carlitz(Field::get(3));
  EXPECT_EQ(ore_eval(C3.phi_a(P(3, "t^2")), P(3, "1")), P(3, "t*(t+1)+(t+1)^3"));
  EXPECT_EQ(C3.apply(P(3, "t^2"), P(3, "1")), P(3, "t*(t+1)+(t+1)^3"));
}

TEST(Ore, PhiIsARingHomomorphism) {
  std::mt19937_64 rng(4);
  for (unsigned q : {2u, 3u}) {
    const Field& f = Field::get(q);
    for (int i = 0; i < 8; ++i) {
      auto m = random_model(f, 1 + rng() % 2, 3, rng);
      Poly a = random_poly(f, rng() % 4, rng), b = random_poly(f, rng() % 4, rng);
      EXPECT_EQ(m.phi_a(a * b), m.phi_a(a) * m.phi_a(b));
      EXPECT_EQ(m.phi_a(a + b), m.phi_a(a) + m.phi_a(b));
      Poly x = random_poly(f, 2, rng);
      EXPECT_EQ(ore_eval(m.phi_a(a * b), x), ore_eval(m.phi_a(a), ore_eval(m.phi_a(b), x)));
      EXPECT_EQ(m.apply(a, x), ore_eval(m.phi_a(a), x));
    }
  }
  auto C2 = DrinfeldModel::carlitz(Field::get(2));
  EXPECT_EQ(C2.phi_a(P(2, "t")), C2.phi_t());
  EXPECT_EQ(C2.phi_a(P(2, "1")), OrePoly::constant(P(2, "1")));
  EXPECT_EQ(C2.phi_a(P(2, "t^2+t")), C2.phi_t() * C2.phi_t() + C2.phi_t());
}

TEST(Ore, TTwist) {
  const Field& f = Field::get(3);
  auto m = parse_model(f, "t + t^3*tau + tau^2");
  auto tw = t_twist(m);
  ASSERT_EQ(tw.degree(), 2);
  EXPECT_EQ(tw.coeffs()[1], BiPoly(f, {Poly(f), P(3, "t^3")}));
  EXPECT_EQ(tw.coeffs()[2], BiPoly(f, {Poly(f), Poly(f), P(3, "1")}));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    auto r = random_model(Field::get(2 + (i % 2)), 1 + rng() % 3, 4, rng);
    EXPECT_EQ(t_twist(r).at_one(), r.phi_t());
    for (int k = 1; k <= r.rank(); ++k) EXPECT_EQ(t_twist(r).coeffs()[k].coeffs().size(), std::size_t(k + 1) * !r.g(k).is_zero());
  }
}

TEST(Ore, TwistBy) {
  const Field& f3 = Field::get(3);
  auto m = parse_model(f3, "t + (t^2+1)*tau");
  EXPECT_EQ(twist_by(m, P(3, "1")), m);
  EXPECT_EQ(twist_by(m, P(3, "2")), m);
  EXPECT_EQ(twist_by(DrinfeldModel::carlitz(Field::get(2)), P(2, "t")), parse_model(Field::get(2), "t + t*tau"));
  EXPECT_THROW(twist_by(m, Poly(f3)), std::invalid_argument);
  auto m2 = parse_model(f3, "t + t*tau + 2*tau^2");
  EXPECT_EQ(twist_by(twist_by(m2, P(3, "t+1")), P(3, "t^2+2")), twist_by(m2, P(3, "(t+1)*(t^2+2)")));
}

TEST(Ore, Smallness) {
  for (unsigned q : {2u, 3u, 4u, 5u}) EXPECT_EQ(DrinfeldModel::carlitz(Field::get(q)).smallness(), Smallness::very_small);
  EXPECT_EQ(parse_model(Field::get(3), "t + t^3*tau").smallness(), Smallness::small);
  EXPECT_EQ(parse_model(Field::get(3), "t + t^4*tau").smallness(), Smallness::neither);
}

TEST(Ore, ModelValidation) {
  const Field& f = Field::get(3);
  EXPECT_THROW(DrinfeldModel(OrePoly(f, {P(3, "t")})), std::invalid_argument);
  EXPECT_THROW(DrinfeldModel(OrePoly(f, {P(3, "t+1"), P(3, "1")})), std::invalid_argument);
  EXPECT_EQ(to_string(parse_model(f, "t + (t^2+1)*tau + 2*tau^2")), "t + (t^2 + 1)*tau + (2)*tau^2");
  auto m = parse_model(f, to_string(parse_model(f, "t + (t^2+1)*tau + 2*tau^2")));
  EXPECT_EQ(m.rank(), 2);
}

TEST(Torsion, Examples) {
  auto C2 = DrinfeldModel::carlitz(Field::get(2));
  auto r = is_torsion_point(C2, P(2, "1"));
  EXPECT_TRUE(r.torsion);
  EXPECT_EQ(*r.annihilator, P(2, "t^2+t"));
  auto r0 = is_torsion_point(C2, P(2, "0"));
  EXPECT_TRUE(r0.torsion);
  EXPECT_EQ(*r0.annihilator, P(2, "1"));
  auto C3 = DrinfeldModel::carlitz(Field::get(3));
  EXPECT_FALSE(is_torsion_point(C3, P(3, "1")).torsion);
}
