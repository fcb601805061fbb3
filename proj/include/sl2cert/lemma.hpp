#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2cert/elemgen.hpp"
#include "sl2cert/sl2.hpp"

namespace sl2cert {

/// A unit u = v^k with u - 1 = c^2 * y and u^8 != 1.
struct ManyUnitsCertificate {
  RingElement c;
  RingElement v;  // base unit of infinite order
  std::uint64_t k = 0;
  RingElement u;
  RingElement y;
  bool u8_not_one = false;
};

struct UnitSearchOptions {
  std::uint64_t pell_cap = 1'000'000;
};

/// Order of x modulo c^2 R, computed as (order modulo cR) * (additive order
/// of (x^k - 1)/c modulo cR). Agrees with unit_order on quotient((c^2)).
std::uint64_t unit_order_mod_square(const RingElement& x, const RingElement& c);

/// v := infinite_order_unit, k := order of v modulo c^2 R, u := v^k.
ManyUnitsCertificate find_unit(const RingElement& c, const UnitSearchOptions& options = {});

/// Exact re-check of a certificate's stated relations.
bool check_certificate(const ManyUnitsCertificate& cert);

/// Intermediate data of the construction for a matrix A with corner c.
struct YData {
  RingElement x;  // u^4 - 1 = c x
  RingElement y;  // u - 1 = c^2 y
  RingElement t;  // a11 * x
  Mat2 y_matrix;  // E12(t) A^-1 E12(-t) h(u^2) A h(u^-2) = [[u^-4, q], [0, u^4]]
  RingElement q;
};

/// Throws ZeroCorner, UnitCongruenceViolated, NonUnit or FormCheckFailed.
YData compute_y(const Mat2& a, const RingElement& u);

enum class Core { A, AInverse };

struct ConjugateFactor {
  GroupWord conjugator;
  Core core;
};

/// E12((u^4 - u^-4) z) written as a product of four conjugates of A and A^-1.
struct ConjugateWitness {
  Mat2 a;
  RingElement u;
  RingElement z;
  RingElement t;
  RingElement q;
  RingElement p;  // -q - z, so that (u^-4 - u^4)(p + q) = (u^4 - u^-4) z
  Mat2 y_matrix;
  std::array<ConjugateFactor, 4> factors;
  Mat2 target;
};

struct WitnessOptions {
  /// Expand h(u^k) conjugator factors into elementary matrices.
  bool elementary_conjugators = false;
};

/// Throws as compute_y, plus ZNotInIdeal.
ConjugateWitness lemma2_witness(const Mat2& a, const RingElement& u, const RingElement& z,
                                const WitnessOptions& options = {});

/// Value of one conjugate factor: g A^{+-1} g^-1.
Mat2 evaluate_factor(const ConjugateFactor& f, const Mat2& a);

/// Checks every relation a witness claims; returns the failed checks.
std::vector<std::string> witness_failures(const ConjugateWitness& w);

/// J = (u^8 - 1) c R.
PrincipalIdeal epsilon_ideal(const ManyUnitsCertificate& cert);

struct CornerNormalization {
  enum class Provenance { Unchanged, Conjugate, Commutator };

  Mat2 result;
  Provenance provenance;
  std::optional<Mat2> g;  // the conjugator or commutator partner
  int norm_factor;        // bound on ||result|| / ||A||
};

/// Moves A to a matrix with nonzero (2,1) entry; throws ScalarInput.
CornerNormalization ensure_nonzero_corner(const Mat2& a);

}  // namespace sl2cert
