#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "sl2cert/rings.hpp"

namespace sl2cert {

/// A coset representative of R/cR.
///
/// For Z and Z[1/m] only `x` is used (0 <= x < c0). For Z[sqrt(d)] the pair
/// (x, y) stands for x + y*sqrt(d) inside the box 0 <= x < h1, 0 <= y < h3
/// spanned by the Hermite basis of the ideal lattice.
struct Residue {
  mpz_class x = 0;
  mpz_class y = 0;

  friend bool operator==(const Residue& a, const Residue& b) { return a.x == b.x && a.y == b.y; }
};

/// The finite ring R/cR for a nonzero principal ideal cR.
///
/// For Z and Z[1/m] this is Z/c0 where c0 is |c| with every prime of m
/// removed. For Z[sqrt(d)] the ideal is the lattice spanned by c and
/// c*sqrt(d) in Z^2, kept in Hermite normal form with rows (h1, h2) and
/// (0, h3); the index is h1*h3 = |N(c)|.
class QuotientRing {
 public:
  explicit QuotientRing(const PrincipalIdeal& ideal);

  const RingDescriptor& ring() const noexcept { return ideal_.ring(); }
  const PrincipalIdeal& ideal() const noexcept { return ideal_; }
  const mpz_class& index() const noexcept { return index_; }
  /// The index as a machine integer; throws QuotientTooLarge beyond `cap`.
  std::uint64_t small_index(std::uint64_t cap = UINT64_MAX) const;

  Residue reduce(const RingElement& x) const;
  RingElement lift(const Residue& r) const;

  Residue zero() const { return {}; }
  Residue one() const;
  Residue add(const Residue& a, const Residue& b) const;
  Residue sub(const Residue& a, const Residue& b) const;
  Residue neg(const Residue& a) const;
  Residue mul(const Residue& a, const Residue& b) const;
  bool is_unit(const Residue& a) const;
  /// Smallest n >= 1 with n*a = 0 in the quotient.
  mpz_class additive_order(const Residue& a) const;

  /// Enumeration of the residues as 0..index-1 (row-major over the box).
  std::uint64_t ordinal(const Residue& r) const;
  Residue residue_at(std::uint64_t ordinal) const;

  std::string to_string(const Residue& r) const;
  /// Parses the text produced by `to_string` (any ring element syntax works).
  Residue parse(std::string_view text) const;

  /// Short human-readable description such as "Z[1/2]/(9)".
  std::string describe() const;

 private:
  Residue reduce_pair(mpz_class x, mpz_class y) const;

  PrincipalIdeal ideal_;
  mpz_class index_;
  mpz_class modulus_;  // c0 for Z, Z[1/m]
  mpz_class h1_, h2_, h3_;
};

/// Hermite basis (h1, h2), (0, h3) of the full-rank lattice spanned by
/// `generators` in Z^2; h1 > 0, h3 > 0, 0 <= h2 < h3.
struct LatticeBasis {
  mpz_class h1, h2, h3;
};
LatticeBasis hermite_basis(std::span<const std::pair<mpz_class, mpz_class>> generators);

/// Smallest k >= 1 with x^k = 1 in q, by iterated multiplication capped at
/// the index of q.
std::uint64_t unit_order(const RingElement& x, const QuotientRing& q);

/// A unit of infinite order: the smallest prime factor of m for Z[1/m], the
/// fundamental unit (smallest Pell solution) for Z[sqrt(d)].
RingElement infinite_order_unit(const RingDescriptor& ring, std::uint64_t pell_cap = 1'000'000);

}  // namespace sl2cert
