#include <doctest.h>

#include <random>

#include "sl2cert/lemma.hpp"

using namespace sl2cert;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kZ2 = RingDescriptor::localized(2);
const RingDescriptor kZ3 = RingDescriptor::localized(3);
const RingDescriptor kZ6 = RingDescriptor::localized(6);
const RingDescriptor kS2 = RingDescriptor::quadratic(2);

RingElement el(const RingDescriptor& r, const char* text) { return RingElement::parse(r, text); }
RingElement n(const RingDescriptor& r, long v) { return RingElement::integer(r, v); }

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidCertificate;
}

// A random SL2 matrix with corner c: [[a, b], [c, d]] with a d - b c = 1, built
// as E12(s) * [[1, 0], [c, 1]] * E12(r) so all entries stay small.
Mat2 with_corner(const RingElement& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> arg(-6, 6);
  const RingDescriptor& ring = c.ring();
  return Mat2::elementary12(n(ring, arg(rng))) * Mat2::elementary21(c) * Mat2::elementary12(n(ring, arg(rng)));
}

}  // namespace

TEST_CASE("find_unit examples") {
  const ManyUnitsCertificate a = find_unit(n(kZ2, 3));
  CHECK(a.v == n(kZ2, 2));
  CHECK(a.k == 6);
  CHECK(a.u == n(kZ2, 64));
  CHECK(a.y == n(kZ2, 7));
  CHECK(a.u8_not_one);
  CHECK(check_certificate(a));

  const ManyUnitsCertificate b = find_unit(n(kZ2, 1));
  CHECK(b.u == n(kZ2, 2));
  CHECK(b.k == 1);

  const ManyUnitsCertificate c = find_unit(n(kS2, 3));
  const RingElement v = el(kS2, "1+sqrt(2)");
  const QuotientRing q9(PrincipalIdeal(n(kS2, 9)));
  CHECK(q9.index() == 81);
  CHECK(c.k == unit_order(v, q9));
  CHECK(c.u == v.pow(static_cast<std::int64_t>(c.k)));
  CHECK(check_certificate(c));

  CHECK(code_of([] { find_unit(n(kZ, 3)); }) == Errc::NoInfiniteOrderUnit);
}

TEST_CASE("order modulo c^2 matches brute force") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> pick(-40, 40);
  for (const auto& ring : {kZ2, kZ3, kZ6, kS2}) {
    const RingElement v = infinite_order_unit(ring);
    for (int i = 0; i < 40; ++i) {
      RingElement c = ring.is_quadratic() ? RingElement::quadratic(ring, pick(rng), pick(rng) / 4) : n(ring, pick(rng));
      if (c.is_zero()) continue;
      const QuotientRing q(PrincipalIdeal(c * c));
      if (q.index() > 20000) continue;
      CHECK(unit_order_mod_square(v, c) == unit_order(v, q));
    }
  }
}

TEST_CASE("tampered unit certificates fail") {
  ManyUnitsCertificate a = find_unit(n(kZ2, 3));
  a.y = n(kZ2, 8);
  CHECK_FALSE(check_certificate(a));
  ManyUnitsCertificate b = find_unit(n(kZ2, 3));
  b.k = 3;
  CHECK_FALSE(check_certificate(b));
}

TEST_CASE("compute_y examples") {
  const Mat2 a = Mat2::elementary21(n(kZ2, 3));
  const YData d = compute_y(a, n(kZ2, 64));
  CHECK(d.x == n(kZ2, 5592405));
  CHECK(d.t == n(kZ2, 5592405));
  CHECK(d.y_matrix.a11() == n(kZ2, 64).pow(-4));
  CHECK(d.y_matrix.a22() == n(kZ2, 64).pow(4));
  CHECK(d.y_matrix.a21().is_zero());
  CHECK(in_ideal(n(kZ2, 5592405), PrincipalIdeal(n(kZ2, 3))));

  const YData e = compute_y(Mat2::elementary21(n(kZ2, 1)), n(kZ2, 2));
  CHECK(e.x == n(kZ2, 15));
  CHECK(e.t == n(kZ2, 15));

  CHECK(code_of([] { compute_y(Mat2::elementary12(n(kZ2, 3)), n(kZ2, 64)); }) == Errc::ZeroCorner);
  CHECK(code_of([] { compute_y(Mat2::elementary21(n(kZ2, 3)), n(kZ2, 2)); }) == Errc::UnitCongruenceViolated);
  CHECK(code_of([] { compute_y(Mat2::elementary21(n(kZ2, 1)), n(kZ2, 3)); }) == Errc::NonUnit);
}

TEST_CASE("lemma2_witness examples") {
  const Mat2 a = Mat2::elementary21(n(kZ2, 3));
  const RingElement u = n(kZ2, 64);

  const ConjugateWitness zero = lemma2_witness(a, u, n(kZ2, 0));
  CHECK(zero.target.is_identity());
  Mat2 product = Mat2::identity(kZ2);
  for (const auto& f : zero.factors) product = product * evaluate_factor(f, a);
  CHECK(product.is_identity());

  const ConjugateWitness three = lemma2_witness(a, u, n(kZ2, 3));
  CHECK(three.target == Mat2::elementary12((u.pow(4) - u.pow(-4)) * n(kZ2, 3)));
  CHECK(three.factors.size() == 4);
  CHECK(witness_failures(three).empty());
  CHECK(three.p == -three.q - three.z);

  const ConjugateWitness small = lemma2_witness(Mat2::elementary21(n(kZ2, 1)), n(kZ2, 2), n(kZ2, 5));
  CHECK(small.target == Mat2::elementary12(el(kZ2, "1275/16")));
  CHECK(witness_failures(small).empty());

  CHECK(code_of([&] { lemma2_witness(a, u, n(kZ2, 2)); }) == Errc::ZNotInIdeal);
}

TEST_CASE("witness properties on random inputs") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> corner(1, 30), mult(-100, 100);
  for (const auto& ring : {kZ2, kZ3, kZ6, kS2}) {
    for (int i = 0; i < 15; ++i) {
      RingElement c = ring.is_quadratic() ? RingElement::quadratic(ring, corner(rng) % 7, corner(rng) % 4)
                                          : n(ring, corner(rng) * (i % 2 ? 1 : -1));
      if (c.is_zero()) c = n(ring, 5);
      const Mat2 a = with_corner(c, rng);
      const ManyUnitsCertificate cert = find_unit(c);
      const RingElement z = c * n(ring, mult(rng));
      const ConjugateWitness w = lemma2_witness(a, cert.u, z, {i % 3 == 0});
      CHECK(witness_failures(w).empty());
      Mat2 product = Mat2::identity(ring);
      for (const auto& f : w.factors) product = product * evaluate_factor(f, a);
      CHECK(product == Mat2::elementary12((cert.u.pow(4) - cert.u.pow(-4)) * z));
      const PrincipalIdeal ci(c);
      CHECK(ci.contains(w.t));
      CHECK(ci.contains(w.q));
      for (const auto& f : w.factors) {
        CHECK(reduces_to_identity(evaluate(f.conjugator, ring), ci));
        if (i % 3 == 0) CHECK(f.conjugator.is_elementary());
      }
      // The identity survives reduction to any quotient.
      for (long m : {5L, 7L, 11L, 13L}) {
        const QuotientRing q(PrincipalIdeal(n(ring, m)));
        ResidueMat lhs = residue_identity(q);
        const ResidueMat a_bar = reduce_mat(a, q);
        for (const auto& f : w.factors) {
          const ResidueMat g = evaluate_mod(f.conjugator, q);
          const ResidueMat core = f.core == Core::A ? a_bar : residue_inverse(q, a_bar);
          lhs = residue_mul(q, lhs, residue_mul(q, residue_mul(q, g, core), residue_inverse(q, g)));
        }
        CHECK(lhs == reduce_mat(w.target, q));
      }
    }
  }
}

TEST_CASE("witness_failures catches tampering") {
  const Mat2 a = Mat2::elementary21(n(kZ2, 3));
  ConjugateWitness w = lemma2_witness(a, n(kZ2, 64), n(kZ2, 3));
  ConjugateWitness bad_z = w;
  bad_z.z = n(kZ2, 6);
  CHECK_FALSE(witness_failures(bad_z).empty());
  ConjugateWitness bad_core = w;
  bad_core.factors[0].core = bad_core.factors[0].core == Core::A ? Core::AInverse : Core::A;
  CHECK_FALSE(witness_failures(bad_core).empty());
  ConjugateWitness bad_target = w;
  bad_target.target = Mat2::elementary12(n(kZ2, 1));
  CHECK_FALSE(witness_failures(bad_target).empty());
}

TEST_CASE("epsilon ideal") {
  const ManyUnitsCertificate a = find_unit(n(kZ2, 3));
  CHECK(epsilon_ideal(a).generator() == n(kZ2, 3) * (n(kZ2, 64).pow(8) - n(kZ2, 1)));
  const ManyUnitsCertificate b = find_unit(n(kZ2, 1));
  CHECK(epsilon_ideal(b).generator() == n(kZ2, 255));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> r(-1000, 1000);
  for (const char* c : {"3", "10", "21"}) {
    const ManyUnitsCertificate cert = find_unit(el(kZ6, c));
    for (int i = 0; i < 10; ++i) {
      CHECK(in_ideal(epsilon_ideal(cert).generator() * n(kZ6, r(rng)), PrincipalIdeal(el(kZ6, c))));
    }
  }
}

TEST_CASE("corner normalization") {
  const Mat2 e21 = Mat2::elementary21(n(kZ2, 5));
  const CornerNormalization un = ensure_nonzero_corner(e21);
  CHECK(un.provenance == CornerNormalization::Provenance::Unchanged);
  CHECK(un.norm_factor == 1);
  CHECK(un.result == e21);

  const CornerNormalization conj = ensure_nonzero_corner(Mat2::elementary12(n(kZ2, 1)));
  CHECK(conj.provenance == CornerNormalization::Provenance::Conjugate);
  CHECK(conj.result == Mat2::elementary21(n(kZ2, -1)));
  CHECK(conj.norm_factor == 1);
  CHECK(conjugate(*conj.g, Mat2::elementary12(n(kZ2, 1))) == conj.result);

  const Mat2 h = Mat2::diagonal(n(kZ2, 2));
  const CornerNormalization comm = ensure_nonzero_corner(h);
  CHECK(comm.provenance == CornerNormalization::Provenance::Commutator);
  CHECK(comm.norm_factor == 2);
  CHECK_FALSE(comm.result.a21().is_zero());
  CHECK(comm.result == commutator(h, *comm.g));

  CHECK(code_of([] { ensure_nonzero_corner(Mat2::diagonal(n(kZ2, -1))); }) == Errc::ScalarInput);
}
