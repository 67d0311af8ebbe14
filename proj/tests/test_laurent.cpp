#include "hallbasis/laurent.hpp"

#include <doctest.h>

#include <random>

using namespace hallbasis;

namespace {

const Laurent v = Laurent::monomial(1);
const Laurent vi = Laurent::monomial(-1);

Laurent random_laurent(std::mt19937_64& rng, int order = 1) {
  Laurent x;
  const int terms = static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    const int e = static_cast<int>(rng() % 7) - 3;
    std::vector<long long> coords;
    const int width = order == 1 ? 1 : static_cast<int>(rng() % 3) + 1;
    for (int k = 0; k < width; ++k) coords.push_back(static_cast<long long>(rng() % 7) - 3);
    x += Laurent::monomial(e, Cyclotomic(order, coords));
  }
  return x;
}

LaurentMatrix random_unitriangular(std::mt19937_64& rng, int n) {
  LaurentMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = i == j ? Laurent(1) : (j < i ? random_laurent(rng) : Laurent(0));
  }
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic reduces") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a + Rational(3, 2) == Rational(0));
  CHECK(a * Rational(2, 3) == Rational(-1));
}

TEST_CASE("quadratic surds") {
  QuadSurd s(Rational(0), Rational(1), 2);
  CHECK(s * s == QuadSurd::integer(2, 2));
  CHECK(s.inverse() * s == QuadSurd::integer(1, 2));
  CHECK(s.pow(-2) == QuadSurd(Rational(1, 2), Rational(0), 2));
}

TEST_CASE("cyclotomic relations") {
  const Cyclotomic w = Cyclotomic::root_power(3, 1);
  CHECK((Cyclotomic(1) + w + w * w).is_zero());
  CHECK(w * w * w == Cyclotomic(1));
  const Cyclotomic i = Cyclotomic::root_power(4, 1);
  CHECK(i * i == Cyclotomic(-1));
  CHECK(i.is_unit_monomial());
  CHECK(!(Cyclotomic(1) + i).is_unit_monomial());
  CHECK(*i.unit_inverse() * i == Cyclotomic(1));
  // w_3 * w_4 lives in order 12 and has order 12.
  Cyclotomic z = w * i;
  Cyclotomic p(1);
  for (int k = 1; k < 12; ++k) {
    p = p * z;
    CHECK(!(p == Cyclotomic(1)));
  }
  CHECK(p * z == Cyclotomic(1));
}

TEST_CASE("laurent basics") {
  const Laurent x = v + vi;
  CHECK(x * x == Laurent::monomial(2) + Laurent(2) + Laurent::monomial(-2));
  CHECK(x.bar() == x);
  CHECK((v - vi).bar() == vi - v);
  CHECK((v * v + Laurent(3) + vi).positive_part() == v * v);
  CHECK(x.min_exponent() == -1);
  CHECK(x.max_exponent() == 1);
  CHECK(x.shifted(2) == Laurent::monomial(3) + v);
  CHECK(Laurent::from_coeffs(-1, {1, 0, 1}) == x);
  CHECK((x * x).divide_exact(x) == x);
  CHECK(!(v + Laurent(1)).divide_exact(v + Laurent(2)).has_value());
  CHECK(v.is_unit());
  CHECK(!(v + Laurent(1)).is_unit());
  CHECK(Laurent(0).str() == "0");
}

TEST_CASE("laurent ring axioms and bar (property)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int order = trial % 3 == 0 ? 3 : (trial % 3 == 1 ? 4 : 1);
    Laurent a = random_laurent(rng, order), b = random_laurent(rng, order), c = random_laurent(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
    if (!b.is_zero() && (order == 1 || b.terms().rbegin()->second.is_unit_monomial())) {
      CHECK((a * b).divide_exact(b) == a);
    }
  }
}

TEST_CASE("evaluation at -1/sqrt(q)") {
  // v^2 - v^-2 at v = -1/2 (q = 4): 1/4 - 4.
  QuadSurd x(Rational(-1, 2), Rational(0), 1);
  const auto val = (Laurent::monomial(2) - Laurent::monomial(-2)).evaluate(x);
  REQUIRE(val.size() == 1);
  CHECK(val[0] == QuadSurd(Rational(-15, 4), Rational(0), 1));
  // v at -1/sqrt(3) squared is 1/3.
  QuadSurd y(Rational(0), Rational(-1, 3), 3);
  CHECK((v * v).evaluate(y)[0] == QuadSurd(Rational(1, 3), Rational(0), 3));
}

TEST_CASE("unitriangular inverse (property)") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    LaurentMatrix m = random_unitriangular(rng, n);
    LaurentMatrix inv = unitriangular_inverse(m);
    CHECK(is_identity(multiply(m, inv)));
    CHECK(is_identity(multiply(inv, m)));
    LaurentMatrix t = m.transpose();
    CHECK(is_identity(multiply(t, unitriangular_inverse(t))));
    CHECK(bar(bar(m)) == m);
  }
  LaurentMatrix bad(2, 2);
  bad << Laurent(2), Laurent(0), Laurent(1), Laurent(1);
  CHECK_THROWS(unitriangular_inverse(bad));
}
