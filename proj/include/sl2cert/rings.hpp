#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sl2cert/error.hpp"

namespace sl2cert {

/// Every m < 2^32 has at most nine distinct prime factors.
inline constexpr std::size_t kMaxLocalizedPrimes = 9;

/// The ambient ring: Z, Z[1/m] or Z[sqrt(d)] for squarefree d >= 2.
///
/// Text syntax is `Z`, `Z[1/6]` and `Z[sqrt2]`. Descriptors are small
/// trivially-copyable values; two descriptors compare equal iff variant and
/// parameter agree.
class RingDescriptor {
 public:
  enum class Kind { Integers, LocalizedIntegers, QuadraticRing };

  static RingDescriptor integers();
  /// Z[1/m]; m must satisfy 2 <= m < 2^32.
  static RingDescriptor localized(std::uint64_t m);
  /// Z[sqrt(d)]; d must be squarefree with 2 <= d < 2^31.
  static RingDescriptor quadratic(std::int64_t d);
  static RingDescriptor parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_quadratic() const noexcept { return kind_ == Kind::QuadraticRing; }
  /// m for Z[1/m], d for Z[sqrt(d)], 0 for Z.
  std::int64_t parameter() const noexcept { return param_; }
  /// Distinct prime factors of m in increasing order (empty unless Z[1/m]).
  std::span<const std::uint32_t> primes() const noexcept {
    return {primes_.data(), nprimes_};
  }

  std::string to_string() const;

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) noexcept {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }

 private:
  RingDescriptor() = default;

  Kind kind_ = Kind::Integers;
  std::int64_t param_ = 0;
  std::size_t nprimes_ = 0;
  std::array<std::uint32_t, kMaxLocalizedPrimes> primes_{};
};

/// An exact element of a RingDescriptor's ring.
///
/// For Z and Z[1/m] the value is stored as `core * prod(p_i ^ e_i)` over the
/// primes p_i of m, with `core` an integer divisible by none of them (all
/// exponents are zero when the value is zero). For Z[sqrt(d)] the value is
/// `a + b*sqrt(d)`. Both forms are canonical, so equality is representation
/// equality.
class RingElement {
 public:
  explicit RingElement(const RingDescriptor& ring);  // zero

  static RingElement integer(const RingDescriptor& ring, const mpz_class& n);
  static RingElement integer(const RingDescriptor& ring, long n) {
    return integer(ring, mpz_class(n));
  }
  /// num/den; throws NotInRing when den has a prime factor outside the ring.
  static RingElement fraction(const RingDescriptor& ring, const mpz_class& num,
                              const mpz_class& den);
  static RingElement quadratic(const RingDescriptor& ring, const mpz_class& a,
                               const mpz_class& b);
  static RingElement parse(const RingDescriptor& ring, std::string_view text);

  const RingDescriptor& ring() const noexcept { return ring_; }

  bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const;

  /// Reduced fraction view (Z and Z[1/m] only).
  mpz_class numerator() const;
  mpz_class denominator() const;
  /// The integer left after removing every prime of m (Z and Z[1/m] only).
  const mpz_class& coprime_part() const noexcept { return a_; }
  std::int64_t exponent(std::size_t prime_index) const { return exps_.at(prime_index); }
  /// Coordinates of a + b*sqrt(d) (Z[sqrt(d)] only).
  const mpz_class& rational_part() const noexcept { return a_; }
  const mpz_class& sqrt_part() const noexcept { return b_; }

  /// a^2 - d*b^2 (Z[sqrt(d)] only).
  mpz_class field_norm() const;
  /// max(|num|, den) for fractions, max(|a|, |b|) for quadratic elements.
  mpz_class height() const;

  /// The inverse when this element is a unit of the ring.
  std::optional<RingElement> inverse() const;
  bool is_unit() const { return inverse().has_value(); }
  /// this / divisor when the quotient lies in the ring.
  std::optional<RingElement> divide(const RingElement& divisor) const;
  /// Exact power; negative exponents require a unit (throws NonUnit).
  RingElement pow(std::int64_t e) const;
  /// Galois conjugate a - b*sqrt(d); identity on Z and Z[1/m].
  RingElement conjugate() const;

  std::string to_string() const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }

  friend bool operator==(const RingElement& x, const RingElement& y);

 private:
  void normalize();

  RingDescriptor ring_;
  mpz_class a_;
  mpz_class b_;
  std::array<std::int64_t, kMaxLocalizedPrimes> exps_{};
};

/// Throws MixedRings unless both operands live in the same ring.
void require_same_ring(const RingElement& x, const RingElement& y);

/// The ideal generated by one nonzero element.
class PrincipalIdeal {
 public:
  explicit PrincipalIdeal(RingElement generator);  // throws ZeroIdeal

  const RingElement& generator() const noexcept { return generator_; }
  const RingDescriptor& ring() const noexcept { return generator_.ring(); }
  bool contains(const RingElement& x) const;

 private:
  RingElement generator_;
};

/// x in I, exact.
bool in_ideal(const RingElement& x, const PrincipalIdeal& ideal);

}  // namespace sl2cert
