#include <doctest.h>

#include <random>

#include "sl2cert/elemgen.hpp"

using namespace sl2cert;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kZ2 = RingDescriptor::localized(2);
const RingDescriptor kZ6 = RingDescriptor::localized(6);
const RingDescriptor kS2 = RingDescriptor::quadratic(2);
const RingDescriptor kS3 = RingDescriptor::quadratic(3);

RingElement el(const RingDescriptor& r, const char* text) { return RingElement::parse(r, text); }
RingElement n(const RingDescriptor& r, long v) { return RingElement::integer(r, v); }

Mat2 random_product(const RingDescriptor& ring, std::mt19937_64& rng, int max_len, long den) {
  std::uniform_int_distribution<int> len(0, max_len), side(0, 1);
  std::uniform_int_distribution<long> arg(-5, 5);
  Mat2 m = Mat2::identity(ring);
  for (int i = len(rng); i > 0; --i) {
    RingElement x = den == 1 ? n(ring, arg(rng)) : RingElement::fraction(ring, arg(rng), den);
    if (ring.is_quadratic()) x = RingElement::quadratic(ring, arg(rng), arg(rng));
    m = m * (side(rng) ? Mat2::elementary12(x) : Mat2::elementary21(x));
  }
  return m;
}

}  // namespace

TEST_CASE("h decomposition examples") {
  const Decomposition one = h_decomposition(n(kZ, 1));
  CHECK(evaluate(one.word, kZ).is_identity());
  CHECK(one.length() == 6);
  const Decomposition two = h_decomposition(n(kZ2, 2));
  CHECK(two.length() == 6);
  CHECK(two.word.is_elementary());
  CHECK(evaluate(two.word, kZ2) == Mat2::parse(kZ2, "[[2,0],[0,1/2]]"));
  CHECK(evaluate(h_decomposition(n(kZ, -1)).word, kZ) == Mat2::parse(kZ, "[[-1,0],[0,-1]]"));
  try {
    h_decomposition(n(kZ2, 3));
    FAIL("expected NonUnit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonUnit);
    CHECK(e.module() == "elemgen");
  }
}

TEST_CASE("h decomposition on random units") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> e(-20, 20);
  for (const auto& ring : {kZ2, kZ6, kS2, kS3}) {
    const RingElement v = infinite_order_unit(ring);
    for (int i = 0; i < 50; ++i) {
      RingElement u = v.pow(e(rng));
      if (i % 5 == 0) u = -u;
      if (ring == kZ6 && i % 3 == 0) u = u * n(ring, 3).pow(e(rng));
      CHECK(evaluate(h_decomposition(u).word, ring) == Mat2::diagonal(u));
    }
  }
}

TEST_CASE("decompose examples") {
  const Decomposition e = decompose(Mat2::elementary12(n(kZ, 7)));
  CHECK(e.length() == 1);
  CHECK(e.word.factors[0].kind == Factor::Kind::Elem12);
  CHECK(*e.word.factors[0].arg == n(kZ, 7));

  const Decomposition d = decompose(Mat2::parse(kZ, "[[1,1],[1,2]]"));
  GroupWord expected;
  expected.factors.push_back(Factor::elem21(n(kZ, 1)));
  expected.factors.push_back(Factor::elem12(n(kZ, 1)));
  CHECK(d.word == expected);

  const Decomposition f = decompose(Mat2::parse(kZ, "[[2,1],[3,2]]"));
  CHECK(f.length() <= 4);
  CHECK(evaluate(f.word, kZ) == f.input);

  CHECK(decompose(Mat2::identity(kZ)).length() == 0);
  CHECK_THROWS_AS(decompose(Mat2::identity(RingDescriptor::quadratic(5))), Error);
}

TEST_CASE("decompose round trip") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Mat2 a = random_product(kZ, rng, 8, 1);
    const Decomposition d = decompose(a);
    CHECK(d.word.is_elementary());
    CHECK(evaluate(d.word, kZ) == a);
  }
  for (long den : {1, 2, 4, 8, 16}) {
    for (int i = 0; i < 20; ++i) {
      const Mat2 a = random_product(kZ2, rng, 8, den);
      CHECK(evaluate(decompose(a).word, kZ2) == a);
    }
  }
  for (const auto& ring : {kZ6, kS2, kS3}) {
    for (int i = 0; i < 30; ++i) {
      const Mat2 a = random_product(ring, rng, 6, ring == kZ6 ? 6 : 1);
      CHECK(evaluate(decompose(a).word, ring) == a);
    }
  }
  // diagonal entries that are units but not +-1
  const Mat2 h = Mat2::diagonal(el(kS2, "3+2*sqrt(2)"));
  CHECK(evaluate(decompose(h).word, kS2) == h);
  const Mat2 g = Mat2::parse(kZ6, "[[6,1],[-1,0]]") * Mat2::diagonal(el(kZ6, "2/3"));
  CHECK(evaluate(decompose(g).word, kZ6) == g);
}

TEST_CASE("decomposition lengths for bounded integer entries") {
  // Every matrix [[a,b],[c,d]] in SL2(Z) with 1 <= a, c <= 100 coprime.
  std::vector<Mat2> sample;
  for (long a = 1; a <= 100; a += 3) {
    for (long c = 1; c <= 100; c += 7) {
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(c).get_mpz_t());
      if (g != 1) continue;
      // a*s + c*t = 1, so [[a,-t],[c,s]] has determinant 1
      sample.push_back(Mat2(n(kZ, a), RingElement::integer(kZ, mpz_class(-t)), n(kZ, c), RingElement::integer(kZ, s)));
    }
  }
  const LengthStats stats = length_stats(sample);
  CHECK(stats.count == sample.size());
  MESSAGE("max length " << stats.max << ", mean " << stats.mean);
  CHECK(stats.max <= 8);  // regression bound, observed when the driver was written
}

TEST_CASE("length stats examples") {
  const std::vector<Mat2> id = {Mat2::identity(kZ)};
  CHECK(length_stats(id).max == 0);
  std::vector<Mat2> elem;
  for (long x = 1; x <= 10; ++x) elem.push_back(Mat2::elementary12(n(kZ, x)));
  CHECK(length_stats(elem).max == 1);
}

TEST_CASE("reduction to identity modulo an ideal") {
  const RingElement c = el(kZ2, "3");
  CHECK(reduces_to_identity(Mat2::elementary12(c * n(kZ2, 11)), PrincipalIdeal(c)));
  CHECK(reduces_to_identity(Mat2::diagonal(n(kZ2, 64)), PrincipalIdeal(c)));
  CHECK_FALSE(reduces_to_identity(Mat2::elementary12(n(kZ2, 1)), PrincipalIdeal(c)));
  // u - 1 in c^2 R
  for (const char* cs : {"3", "5", "7", "15"}) {
    const RingElement cc = el(kZ2, cs);
    const QuotientRing q(PrincipalIdeal(cc * cc));
    const RingElement u = n(kZ2, 2).pow(static_cast<std::int64_t>(unit_order(n(kZ2, 2), q)));
    CHECK(reduces_to_identity(Mat2::diagonal(u), PrincipalIdeal(cc)));
  }
  const RingElement s = el(kS2, "1+2*sqrt(2)");
  const RingElement u = el(kS2, "1+sqrt(2)").pow(
      static_cast<std::int64_t>(unit_order(el(kS2, "1+sqrt(2)"), QuotientRing(PrincipalIdeal(s * s)))));
  CHECK(reduces_to_identity(Mat2::diagonal(u), PrincipalIdeal(s)));
}
