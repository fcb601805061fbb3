#include "sl2cert/quotient.hpp"

#include <utility>
#include <vector>

namespace sl2cert {

LatticeBasis hermite_basis(std::span<const std::pair<mpz_class, mpz_class>> generators) {
  bool have_pivot = false;
  mpz_class pa, pb;   // pivot row
  mpz_class h3 = 0;   // gcd of the rows with zero first coordinate
  for (const auto& [a, b] : generators) {
    if (a == 0) {
      h3 = gcd(h3, b);
      continue;
    }
    if (!have_pivot) {
      pa = a;
      pb = b;
      have_pivot = true;
      continue;
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pa.get_mpz_t(), a.get_mpz_t());
    // (a/g)*pivot - (pa/g)*row has zero first coordinate.
    const mpz_class lost = (a / g) * pb - (pa / g) * b;
    h3 = gcd(h3, lost);
    pb = s * pb + t * b;
    pa = g;
  }
  if (!have_pivot || h3 == 0) {
    throw Error(Errc::ZeroIdeal, "lattice generators do not span a full-rank lattice");
  }
  if (pa < 0) {
    pa = -pa;
    pb = -pb;
  }
  LatticeBasis basis{pa, 0, abs(h3)};
  mpz_fdiv_r(basis.h2.get_mpz_t(), pb.get_mpz_t(), basis.h3.get_mpz_t());
  return basis;
}

QuotientRing::QuotientRing(const PrincipalIdeal& ideal) : ideal_(ideal) {
  const RingElement& c = ideal_.generator();
  if (ring().is_quadratic()) {
    const mpz_class d(ring().parameter());
    const std::pair<mpz_class, mpz_class> rows[] = {
        {c.rational_part(), c.sqrt_part()},
        {d * c.sqrt_part(), c.rational_part()},
    };
    const LatticeBasis basis = hermite_basis(rows);
    h1_ = basis.h1;
    h2_ = basis.h2;
    h3_ = basis.h3;
    index_ = h1_ * h3_;
  } else {
    modulus_ = abs(c.coprime_part());
    index_ = modulus_;
  }
}

std::uint64_t QuotientRing::small_index(std::uint64_t cap) const {
  if (!index_.fits_ulong_p() || index_.get_ui() > cap) {
    throw Error(Errc::QuotientTooLarge,
                describe() + " has index " + index_.get_str() + " above the cap " + std::to_string(cap));
  }
  return index_.get_ui();
}

Residue QuotientRing::reduce_pair(mpz_class x, mpz_class y) const {
  Residue r;
  mpz_class q;
  mpz_fdiv_qr(q.get_mpz_t(), r.x.get_mpz_t(), x.get_mpz_t(), h1_.get_mpz_t());
  y -= q * h2_;
  mpz_fdiv_r(r.y.get_mpz_t(), y.get_mpz_t(), h3_.get_mpz_t());
  return r;
}

Residue QuotientRing::reduce(const RingElement& x) const {
  require_same_ring(x, ideal_.generator());
  if (ring().is_quadratic()) return reduce_pair(x.rational_part(), x.sqrt_part());
  Residue r;
  if (modulus_ == 1) return r;
  mpz_fdiv_r(r.x.get_mpz_t(), x.coprime_part().get_mpz_t(), modulus_.get_mpz_t());
  for (std::size_t i = 0; i < ring().primes().size(); ++i) {
    const std::int64_t e = x.exponent(i);
    if (e == 0) continue;
    mpz_class base(ring().primes()[i]);
    if (e < 0) mpz_invert(base.get_mpz_t(), base.get_mpz_t(), modulus_.get_mpz_t());
    mpz_class pw;
    const mpz_class ex(static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_powm(pw.get_mpz_t(), base.get_mpz_t(), ex.get_mpz_t(), modulus_.get_mpz_t());
    r.x = (r.x * pw) % modulus_;
  }
  return r;
}

RingElement QuotientRing::lift(const Residue& r) const {
  if (ring().is_quadratic()) return RingElement::quadratic(ring(), r.x, r.y);
  return RingElement::integer(ring(), r.x);
}

Residue QuotientRing::one() const { return reduce(RingElement::integer(ring(), 1)); }

Residue QuotientRing::add(const Residue& a, const Residue& b) const {
  if (ring().is_quadratic()) return reduce_pair(a.x + b.x, a.y + b.y);
  Residue r;
  mpz_class s = a.x + b.x;
  mpz_fdiv_r(r.x.get_mpz_t(), s.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

Residue QuotientRing::neg(const Residue& a) const {
  if (ring().is_quadratic()) return reduce_pair(-a.x, -a.y);
  Residue r;
  mpz_class s = -a.x;
  mpz_fdiv_r(r.x.get_mpz_t(), s.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

Residue QuotientRing::sub(const Residue& a, const Residue& b) const { return add(a, neg(b)); }

Residue QuotientRing::mul(const Residue& a, const Residue& b) const {
  if (ring().is_quadratic()) {
    const mpz_class d(ring().parameter());
    return reduce_pair(a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x);
  }
  Residue r;
  mpz_class s = a.x * b.x;
  mpz_fdiv_r(r.x.get_mpz_t(), s.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

bool QuotientRing::is_unit(const Residue& a) const {
  if (!ring().is_quadratic()) return gcd(a.x, modulus_) == 1;
  // a is a unit iff aR + cR = R, i.e. the joint lattice has determinant 1.
  const mpz_class d(ring().parameter());
  const std::pair<mpz_class, mpz_class> rows[] = {
      {a.x, a.y}, {d * a.y, a.x}, {h1_, h2_}, {0, h3_},
  };
  const LatticeBasis basis = hermite_basis(rows);
  return basis.h1 * basis.h3 == 1;
}

mpz_class QuotientRing::additive_order(const Residue& a) const {
  if (!ring().is_quadratic()) return modulus_ / gcd(a.x, modulus_);
  const mpz_class n0 = h1_ / gcd(a.x, h1_);
  const mpz_class rest = n0 * a.y - ((n0 * a.x) / h1_) * h2_;
  return n0 * (h3_ / gcd(rest, h3_));
}

std::uint64_t QuotientRing::ordinal(const Residue& r) const {
  if (ring().is_quadratic()) return mpz_class(r.x * h3_ + r.y).get_ui();
  return r.x.get_ui();
}

Residue QuotientRing::residue_at(std::uint64_t ordinal) const {
  Residue r;
  if (ring().is_quadratic()) {
    const std::uint64_t h3 = h3_.get_ui();
    r.x = static_cast<unsigned long>(ordinal / h3);
    r.y = static_cast<unsigned long>(ordinal % h3);
  } else {
    r.x = static_cast<unsigned long>(ordinal);
  }
  return r;
}

std::string QuotientRing::to_string(const Residue& r) const { return lift(r).to_string(); }

Residue QuotientRing::parse(std::string_view text) const {
  return reduce(RingElement::parse(ring(), text));
}

std::string QuotientRing::describe() const {
  return ring().to_string() + "/(" + ideal_.generator().to_string() + ")";
}

std::uint64_t unit_order(const RingElement& x, const QuotientRing& q) {
  const Residue r = q.reduce(x);
  if (!q.is_unit(r)) {
    throw Error(Errc::NotUnitInQuotient, x.to_string() + " is not a unit of " + q.describe());
  }
  const Residue one = q.one();
  const mpz_class& cap = q.index();
  Residue power = r;
  std::uint64_t k = 1;
  while (!(power == one)) {
    power = q.mul(power, r);
    ++k;
    if (cmp(cap, k) < 0) {
      throw Error(Errc::OrderSearchExhausted,
                  "no power of " + x.to_string() + " up to the index reached 1 in " + q.describe());
    }
  }
  return k;
}

RingElement infinite_order_unit(const RingDescriptor& ring, std::uint64_t pell_cap) {
  switch (ring.kind()) {
    case RingDescriptor::Kind::Integers:
      throw Error(Errc::NoInfiniteOrderUnit, "the units of Z are +1 and -1");
    case RingDescriptor::Kind::LocalizedIntegers:
      return RingElement::integer(ring, static_cast<long>(ring.primes().front()));
    case RingDescriptor::Kind::QuadraticRing:
      break;
  }
  const mpz_class d(ring.parameter());
  mpz_class t, a;
  for (std::uint64_t b = 1; b <= pell_cap; ++b) {
    const mpz_class bb(static_cast<unsigned long>(b));
    t = d * bb * bb;
    for (int sign : {-1, 1}) {
      mpz_class candidate = t + sign;
      if (mpz_perfect_square_p(candidate.get_mpz_t())) {
        mpz_sqrt(a.get_mpz_t(), candidate.get_mpz_t());
        return RingElement::quadratic(ring, a, bb);
      }
    }
  }
  throw Error(Errc::PellSearchExhausted,
              "no solution of a^2 - " + d.get_str() + " b^2 = +-1 with b <= " + std::to_string(pell_cap));
}

}  // namespace sl2cert
