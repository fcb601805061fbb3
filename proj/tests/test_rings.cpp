#include <doctest.h>

#include <random>
#include <set>

#include "sl2cert/quotient.hpp"
#include "sl2cert/rings.hpp"

using namespace sl2cert;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kZ2 = RingDescriptor::localized(2);
const RingDescriptor kZ6 = RingDescriptor::localized(6);
const RingDescriptor kS2 = RingDescriptor::quadratic(2);

RingElement el(const RingDescriptor& r, const char* text) { return RingElement::parse(r, text); }

RingElement random_element(const RingDescriptor& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coeff(-50, 50);
  if (ring.is_quadratic()) return RingElement::quadratic(ring, coeff(rng), coeff(rng));
  if (ring.primes().empty()) return RingElement::integer(ring, coeff(rng));
  std::uniform_int_distribution<long> e(0, 4);
  long den = 1;
  for (auto p : ring.primes()) {
    for (long i = e(rng); i > 0; --i) den *= p;
  }
  return RingElement::fraction(ring, coeff(rng), den);
}

// Oracle: enumerate Z/n directly.
std::uint64_t brute_order_mod(long x, long n) {
  long v = ((x % n) + n) % n;
  long acc = v;
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(n); ++k) {
    if (acc == 1 % n) return k;
    acc = acc * v % n;
  }
  return 0;
}

}  // namespace

TEST_CASE("descriptor parsing and printing") {
  CHECK(RingDescriptor::parse("Z") == kZ);
  CHECK(RingDescriptor::parse("Z[1/6]") == kZ6);
  CHECK(RingDescriptor::parse("Z[sqrt2]") == kS2);
  CHECK(RingDescriptor::parse("Z[sqrt(2)]") == kS2);
  CHECK(kZ6.to_string() == "Z[1/6]");
  CHECK(kS2.to_string() == "Z[sqrt2]");
  CHECK(kZ6.primes().size() == 2);
  CHECK_THROWS_AS(RingDescriptor::parse("Q"), Error);
  CHECK_THROWS_AS(RingDescriptor::quadratic(4), Error);
  CHECK_THROWS_AS(RingDescriptor::localized(1), Error);
  try {
    RingDescriptor::quadratic(8);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidRing);
    CHECK(e.module() == "rings");
  }
}

TEST_CASE("arithmetic examples") {
  CHECK((el(kZ2, "1/2") + el(kZ2, "1/2")).is_one());
  CHECK(el(kS2, "1+sqrt(2)") * el(kS2, "1+sqrt(2)") == RingElement::quadratic(kS2, 3, 2));
  CHECK((el(kZ6, "5/12") * RingElement(kZ6)).is_zero());
  CHECK_THROWS_AS(el(kZ2, "1") + el(kZ6, "1"), Error);
  try {
    (void)(el(kZ2, "1") * el(kZ, "1"));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MixedRings);
  }
}

TEST_CASE("units and inverses") {
  CHECK(*el(kZ2, "2").inverse() == el(kZ2, "1/2"));
  CHECK_FALSE(el(kZ2, "3").inverse().has_value());
  CHECK(*el(kS2, "1+sqrt(2)").inverse() == RingElement::quadratic(kS2, -1, 1));
  CHECK(el(kZ, "-1").is_unit());
  CHECK_FALSE(el(kZ, "2").is_unit());
  CHECK(el(kZ6, "-1/36").is_unit());
  CHECK_FALSE(RingElement(kZ6).is_unit());
  CHECK_THROWS_AS(el(kZ, "2").pow(-1), Error);
  CHECK(el(kZ2, "2").pow(-3) == el(kZ2, "1/8"));
  CHECK_THROWS_AS(RingElement::fraction(kZ2, 1, 3), Error);
}

TEST_CASE("text round trip") {
  for (const char* s : {"0", "7", "-5/8", "1/6", "-3/4"}) CHECK(el(kZ6, s).to_string() == s);
  for (const char* s : {"0", "1+sqrt(2)", "-sqrt(2)", "3-2*sqrt(2)", "5"}) CHECK(el(kS2, s).to_string() == s);
  CHECK(el(kZ2, "3/2^4") == el(kZ2, "3/16"));
  CHECK(el(kZ6, "10/4") == el(kZ6, "5/2"));
  CHECK_THROWS_AS(el(kZ, "1/2"), Error);
  CHECK_THROWS_AS(el(kZ, "abc"), Error);
  std::mt19937_64 rng(3);
  for (const auto& ring : {kZ, kZ2, kZ6, kS2}) {
    for (int i = 0; i < 50; ++i) {
      const RingElement x = random_element(ring, rng);
      CHECK(RingElement::parse(ring, x.to_string()) == x);
    }
  }
}

TEST_CASE("ring axioms and canonical form on random samples") {
  std::mt19937_64 rng(11);
  for (const auto& ring : {kZ, kZ2, kZ6, kS2}) {
    for (int i = 0; i < 200; ++i) {
      const RingElement x = random_element(ring, rng), y = random_element(ring, rng), z = random_element(ring, rng);
      CHECK((x + y) - y == x);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x * y == y * x);
      CHECK(x + (-x) == RingElement(ring));
      if (auto inv = x.inverse()) CHECK((x * *inv).is_one());
    }
  }
}

TEST_CASE("ideal membership") {
  CHECK(in_ideal(el(kZ2, "63"), PrincipalIdeal(el(kZ2, "9"))));
  CHECK_FALSE(in_ideal(el(kZ2, "1"), PrincipalIdeal(el(kZ2, "3"))));
  CHECK(in_ideal(el(kS2, "3*sqrt(2)"), PrincipalIdeal(el(kS2, "3"))));
  CHECK(in_ideal(el(kZ2, "3/4"), PrincipalIdeal(el(kZ2, "12"))));
  CHECK_THROWS_AS(PrincipalIdeal(RingElement(kZ)), Error);
  std::mt19937_64 rng(5);
  for (const auto& ring : {kZ, kZ2, kZ6, kS2}) {
    for (int i = 0; i < 100; ++i) {
      RingElement g = random_element(ring, rng);
      if (g.is_zero()) continue;
      const PrincipalIdeal ideal(g);
      const RingElement x = random_element(ring, rng) * g, y = random_element(ring, rng) * g;
      CHECK(in_ideal(x, ideal));
      CHECK(in_ideal(x + y, ideal));
    }
  }
}

TEST_CASE("quotient indices") {
  CHECK(QuotientRing(PrincipalIdeal(el(kZ2, "3"))).index() == 3);
  CHECK(QuotientRing(PrincipalIdeal(el(kZ2, "9"))).index() == 9);
  CHECK(QuotientRing(PrincipalIdeal(el(kZ2, "12"))).index() == 3);
  CHECK(QuotientRing(PrincipalIdeal(el(kS2, "3"))).index() == 9);
  CHECK(QuotientRing(PrincipalIdeal(el(kS2, "1+sqrt(2)"))).index() == 1);
  CHECK(QuotientRing(PrincipalIdeal(el(kS2, "sqrt(2)"))).index() == 2);
  for (long a = 1; a <= 12; ++a) {
    for (long b = 1; b <= 12; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const auto qa = QuotientRing(PrincipalIdeal(RingElement::integer(kZ, a))).index();
      const auto qb = QuotientRing(PrincipalIdeal(RingElement::integer(kZ, b))).index();
      CHECK(QuotientRing(PrincipalIdeal(RingElement::integer(kZ, a * b))).index() == qa * qb);
    }
  }
}

TEST_CASE("quotient residues are canonical and enumerable") {
  for (const char* g : {"3", "2+sqrt(2)", "6", "5-3*sqrt(2)"}) {
    const QuotientRing q(PrincipalIdeal(el(kS2, g)));
    const auto n = q.small_index();
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < n; ++i) {
      const Residue r = q.residue_at(i);
      CHECK(q.ordinal(r) == i);
      CHECK(q.reduce(q.lift(r)) == r);
      seen.insert(i);
    }
    // x and x + g*w land on the same residue
    const RingElement x = el(kS2, "7-4*sqrt(2)"), w = el(kS2, "2+3*sqrt(2)");
    CHECK(q.reduce(x) == q.reduce(x + el(kS2, g) * w));
    CHECK(q.reduce(el(kS2, g)) == q.zero());
  }
}

TEST_CASE("unit orders") {
  CHECK(unit_order(el(kZ2, "2"), QuotientRing(PrincipalIdeal(el(kZ2, "9")))) == 6);
  CHECK(unit_order(el(kZ2, "1"), QuotientRing(PrincipalIdeal(el(kZ2, "9")))) == 1);
  CHECK(unit_order(el(kS2, "1+sqrt(2)"), QuotientRing(PrincipalIdeal(el(kS2, "3")))) == 8);
  CHECK_THROWS_AS(unit_order(el(kZ, "3"), QuotientRing(PrincipalIdeal(el(kZ, "9")))), Error);
  for (long n = 2; n <= 60; ++n) {
    const QuotientRing q(PrincipalIdeal(RingElement::integer(kZ, n)));
    std::uint64_t units = 0;
    for (long x = 1; x <= n; ++x) units += std::gcd(x, n) == 1;
    for (long x = 1; x < n; ++x) {
      if (std::gcd(x, n) != 1) continue;
      const auto k = unit_order(RingElement::integer(kZ, x), q);
      CHECK(k == brute_order_mod(x, n));
      CHECK(units % k == 0);
    }
  }
}

TEST_CASE("unit orders divide the unit group order in quadratic quotients") {
  for (const char* g : {"3", "2+sqrt(2)", "5", "1+3*sqrt(2)"}) {
    const QuotientRing q(PrincipalIdeal(el(kS2, g)));
    const auto n = q.small_index();
    if (n > 100) continue;
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < n; ++i) units += q.is_unit(q.residue_at(i));
    const auto k = unit_order(el(kS2, "1+sqrt(2)"), q);
    CHECK(units % k == 0);
  }
}

TEST_CASE("infinite order units") {
  CHECK(infinite_order_unit(kZ2) == el(kZ2, "2"));
  CHECK(infinite_order_unit(kZ6) == el(kZ6, "2"));
  CHECK(infinite_order_unit(kS2) == el(kS2, "1+sqrt(2)"));
  CHECK(infinite_order_unit(RingDescriptor::quadratic(3)) == RingElement::quadratic(RingDescriptor::quadratic(3), 2, 1));
  CHECK(infinite_order_unit(RingDescriptor::quadratic(7)) == RingElement::quadratic(RingDescriptor::quadratic(7), 8, 3));
  try {
    infinite_order_unit(kZ);
    FAIL("expected NoInfiniteOrderUnit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoInfiniteOrderUnit);
  }
  CHECK_THROWS_AS(infinite_order_unit(RingDescriptor::quadratic(46), 5), Error);
  for (const auto& ring : {kZ2, kZ6, kS2, RingDescriptor::quadratic(5), RingDescriptor::quadratic(13)}) {
    const RingElement v = infinite_order_unit(ring);
    CHECK(v.is_unit());
    std::set<std::string> powers;
    RingElement p = RingElement::integer(ring, 1);
    for (int i = 0; i < 32; ++i, p *= v) powers.insert(p.to_string());
    CHECK(powers.size() == 32);
  }
}
