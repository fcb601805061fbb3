#include "sl2cert/lemma.hpp"

#include <limits>
#include <stdexcept>

namespace sl2cert {

std::uint64_t unit_order_mod_square(const RingElement& x, const RingElement& c) {
  const QuotientRing mod_c{PrincipalIdeal(c)};
  const std::uint64_t k1 = unit_order(x, mod_c);
  // x^k1 = 1 + c w and (1 + c w)^n = 1 + n c w mod c^2, so the order mod c^2
  // is k1 times the additive order of w mod c.
  const auto w = (x.pow(static_cast<std::int64_t>(k1)) - RingElement::integer(x.ring(), 1)).divide(c);
  if (!w) throw std::logic_error("x^k - 1 is not divisible by c after the order search");
  const mpz_class k = mpz_class(static_cast<unsigned long>(k1)) * mod_c.additive_order(mod_c.reduce(*w));
  if (!k.fits_ulong_p()) {
    throw Error(Errc::OrderSearchExhausted, "order of " + x.to_string() + " modulo the square of " +
                                                c.to_string() + " exceeds 64 bits");
  }
  return k.get_ui();
}

ManyUnitsCertificate find_unit(const RingElement& c, const UnitSearchOptions& options) {
  const PrincipalIdeal ideal(c);  // rejects c = 0
  const RingDescriptor& ring = c.ring();
  RingElement v = infinite_order_unit(ring, options.pell_cap);
  const std::uint64_t k = unit_order_mod_square(v, c);
  RingElement u = v.pow(static_cast<std::int64_t>(k));
  const RingElement one = RingElement::integer(ring, 1);
  auto y = (u - one).divide(c * c);
  if (!y) throw std::logic_error("u - 1 is not divisible by c^2 for the computed order");
  const bool u8_not_one = !u.pow(8).is_one();
  ManyUnitsCertificate cert{c, std::move(v), k, std::move(u), std::move(*y), u8_not_one};
  if (!check_certificate(cert)) throw std::logic_error("many-units certificate fails its own check");
  return cert;
}

bool check_certificate(const ManyUnitsCertificate& cert) {
  if (cert.c.is_zero() || cert.k == 0 || !cert.v.is_unit()) return false;
  if (cert.k > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return false;
  const RingElement one = RingElement::integer(cert.c.ring(), 1);
  if (!(cert.v.pow(static_cast<std::int64_t>(cert.k)) == cert.u)) return false;
  if (!(cert.u - one == cert.c * cert.c * cert.y)) return false;
  return cert.u8_not_one && !cert.u.pow(8).is_one();
}

YData compute_y(const Mat2& a, const RingElement& u) {
  const RingElement& c = a.a21();
  if (c.is_zero()) throw Error(Errc::ZeroCorner, a.to_string() + " has zero (2,1) entry");
  require_same_ring(c, u);
  if (!u.is_unit()) throw Error(Errc::NonUnit, u.to_string() + " is not a unit");
  const RingDescriptor& ring = u.ring();
  const RingElement one = RingElement::integer(ring, 1);

  auto y = (u - one).divide(c * c);
  if (!y) {
    throw Error(Errc::UnitCongruenceViolated,
                "u - 1 = " + (u - one).to_string() + " is not divisible by c^2 = " + (c * c).to_string());
  }
  const RingElement u4 = u.pow(4);
  auto x = (u4 - one).divide(c);
  if (!x) throw Error(Errc::FormCheckFailed, "u^4 - 1 is not divisible by c");
  if (!(*x == c * *y * (u.pow(3) + u.pow(2) + u + one))) {
    throw Error(Errc::FormCheckFailed, "x != c y (u^3 + u^2 + u + 1)");
  }
  RingElement t = a.a11() * *x;
  const PrincipalIdeal cr(c);
  if (!cr.contains(*x) || !cr.contains(t)) throw Error(Errc::FormCheckFailed, "t is not in cR");

  Mat2 ym = Mat2::elementary12(t) * a.inverse() * Mat2::elementary12(-t) * Mat2::diagonal(u.pow(2)) *
            a * Mat2::diagonal(u.pow(-2));
  if (!ym.a21().is_zero() || !(ym.a11() == u.pow(-4)) || !(ym.a22() == u4)) {
    throw Error(Errc::FormCheckFailed, "Y = " + ym.to_string() + " is not [[u^-4, q], [0, u^4]]");
  }
  RingElement q = ym.a12();
  if (!cr.contains(q)) throw Error(Errc::FormCheckFailed, "q = " + q.to_string() + " is not in cR");
  return YData{std::move(*x), std::move(*y), std::move(t), std::move(ym), std::move(q)};
}

namespace {

GroupWord expand_diagonals(const GroupWord& word) {
  GroupWord out;
  for (const auto& f : word.factors) {
    if (f.kind == Factor::Kind::Diag) {
      out.append(h_decomposition(*f.arg).word);
    } else {
      out.factors.push_back(f);
    }
  }
  return out;
}

}  // namespace

ConjugateWitness lemma2_witness(const Mat2& a, const RingElement& u, const RingElement& z,
                                const WitnessOptions& options) {
  YData yd = compute_y(a, u);
  const RingElement& c = a.a21();
  require_same_ring(c, z);
  if (!PrincipalIdeal(c).contains(z)) {
    throw Error(Errc::ZNotInIdeal, z.to_string() + " is not a multiple of c = " + c.to_string());
  }
  // Target sign convention: p + q = -z turns (u^-4 - u^4)(p + q) into (u^4 - u^-4) z.
  RingElement p = -yd.q - z;

  // Y = C1 C2 with C1 = g1 A^-1 g1^-1, C2 = g2 A g2^-1, and the middle
  // matrix D = [[u^4, p], [0, u^-4]] = h(u^4) E12(p u^-4) satisfies
  // D [[u^-4, -p], [0, u^4]] = I, so
  //   Y D Y^-1 D^-1 = C1 * C2 * (D C2^-1 D^-1) * (D C1^-1 D^-1).
  GroupWord g1;
  g1.factors.push_back(Factor::elem12(yd.t));
  GroupWord g2;
  g2.factors.push_back(Factor::diag(u.pow(2)));
  GroupWord d;
  d.factors.push_back(Factor::diag(u.pow(4)));
  d.factors.push_back(Factor::elem12(p * u.pow(-4)));
  GroupWord dg2 = d;
  dg2.append(g2);
  GroupWord dg1 = d;
  dg1.append(g1);

  std::array<ConjugateFactor, 4> factors{
      ConjugateFactor{g1, Core::AInverse},
      ConjugateFactor{g2, Core::A},
      ConjugateFactor{dg2, Core::AInverse},
      ConjugateFactor{dg1, Core::A},
  };
  if (options.elementary_conjugators) {
    for (auto& f : factors) f.conjugator = expand_diagonals(f.conjugator);
  }

  Mat2 target = Mat2::elementary12((u.pow(4) - u.pow(-4)) * z);
  ConjugateWitness w{a, u, z, std::move(yd.t), std::move(yd.q), std::move(p), std::move(yd.y_matrix),
                     std::move(factors), std::move(target)};
  if (const auto failures = witness_failures(w); !failures.empty()) {
    throw Error(Errc::FormCheckFailed, "witness check failed: " + failures.front());
  }
  return w;
}

Mat2 evaluate_factor(const ConjugateFactor& f, const Mat2& a) {
  const Mat2 g = evaluate(f.conjugator, a.ring());
  return conjugate(g, f.core == Core::A ? a : a.inverse());
}

std::vector<std::string> witness_failures(const ConjugateWitness& w) {
  std::vector<std::string> failures;
  const RingDescriptor& ring = w.a.ring();
  const RingElement& c = w.a.a21();
  if (c.is_zero()) {
    failures.emplace_back("A has zero (2,1) entry");
    return failures;
  }
  if (!w.u.is_unit()) {
    failures.emplace_back("u is not a unit");
    return failures;
  }
  const PrincipalIdeal cr(c);
  const RingElement u4 = w.u.pow(4);
  const RingElement u4inv = w.u.pow(-4);

  if (!(w.target == Mat2::elementary12((u4 - u4inv) * w.z))) {
    failures.emplace_back("target != E12((u^4 - u^-4) z)");
  }
  Mat2 product = Mat2::identity(ring);
  for (const auto& f : w.factors) product = product * evaluate_factor(f, w.a);
  if (!(product == w.target)) failures.emplace_back("product of the four conjugates != target");

  if (!cr.contains(w.z)) failures.emplace_back("z not in cR");
  if (!cr.contains(w.t)) failures.emplace_back("t not in cR");
  if (!cr.contains(w.q)) failures.emplace_back("q not in cR");
  if (!(w.p == -w.q - w.z)) failures.emplace_back("p != -q - z");
  if (!((w.u - RingElement::integer(ring, 1)).divide(c * c))) failures.emplace_back("u - 1 not in c^2 R");

  const Mat2& y = w.y_matrix;
  if (!y.a21().is_zero() || !(y.a11() == u4inv) || !(y.a22() == u4) || !(y.a12() == w.q)) {
    failures.emplace_back("Y is not [[u^-4, q], [0, u^4]]");
  }
  const Mat2 y_formula = Mat2::elementary12(w.t) * w.a.inverse() * Mat2::elementary12(-w.t) *
                         Mat2::diagonal(w.u.pow(2)) * w.a * Mat2::diagonal(w.u.pow(-2));
  if (!(y_formula == y)) failures.emplace_back("Y != E12(t) A^-1 E12(-t) h(u^2) A h(u^-2)");

  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (!reduces_to_identity(evaluate(w.factors[i].conjugator, ring), cr)) {
      failures.push_back("conjugator " + std::to_string(i) + " is not the identity modulo cR");
    }
  }
  return failures;
}

PrincipalIdeal epsilon_ideal(const ManyUnitsCertificate& cert) {
  return PrincipalIdeal((cert.u.pow(8) - RingElement::integer(cert.u.ring(), 1)) * cert.c);
}

CornerNormalization ensure_nonzero_corner(const Mat2& a) {
  using Provenance = CornerNormalization::Provenance;
  if (a.is_scalar()) throw Error(Errc::ScalarInput, a.to_string() + " is scalar");
  if (!a.a21().is_zero()) return CornerNormalization{a, Provenance::Unchanged, std::nullopt, 1};
  const RingDescriptor& ring = a.ring();
  const RingElement one = RingElement::integer(ring, 1);
  if (!a.a12().is_zero()) {
    // w(1) [[x, b], [0, x^-1]] w(1)^-1 = [[x^-1, 0], [-b, x]]
    const Mat2 w = Mat2::elementary12(one) * Mat2::elementary21(-one) * Mat2::elementary12(one);
    return CornerNormalization{conjugate(w, a), Provenance::Conjugate, w, 1};
  }
  // Non-scalar diagonal h(x): [h(x), E21(1)] = E21(x^-2 - 1) with x^2 != 1,
  // so the corner is already nonzero and no further conjugation is needed.
  const Mat2 g = Mat2::elementary21(one);
  return CornerNormalization{commutator(a, g), Provenance::Commutator, g, 2};
}

}  // namespace sl2cert
