#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sl2cert/quotient.hpp"
#include "sl2cert/rings.hpp"

namespace sl2cert {

/// A 2x2 matrix of determinant one over a RingDescriptor's ring.
class Mat2 {
 public:
  /// Throws MixedRings or DeterminantNotOne.
  Mat2(RingElement a11, RingElement a12, RingElement a21, RingElement a22);

  static Mat2 identity(const RingDescriptor& ring);
  static Mat2 elementary12(const RingElement& x);
  static Mat2 elementary21(const RingElement& x);
  /// h(u) = diag(u, u^-1); throws NonUnitDiagonal.
  static Mat2 diagonal(const RingElement& u);
  /// `[[a,b],[c,d]]` with entries in the ring's element syntax.
  static Mat2 parse(const RingDescriptor& ring, std::string_view text);

  const RingDescriptor& ring() const noexcept { return e_[0].ring(); }
  const RingElement& a11() const noexcept { return e_[0]; }
  const RingElement& a12() const noexcept { return e_[1]; }
  const RingElement& a21() const noexcept { return e_[2]; }
  const RingElement& a22() const noexcept { return e_[3]; }

  Mat2 inverse() const;
  bool is_identity() const;
  bool is_scalar() const;

  std::string to_string() const;

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.e_ == b.e_; }

 private:
  struct Unchecked {};
  Mat2(Unchecked, RingElement a11, RingElement a12, RingElement a21, RingElement a22);

  std::array<RingElement, 4> e_;
};

/// g A g^-1
Mat2 conjugate(const Mat2& g, const Mat2& a);
/// g A g^-1 A^-1
Mat2 commutator(const Mat2& g, const Mat2& a);

struct Factor;

/// A formal product of generators, evaluated left to right.
struct GroupWord {
  std::vector<Factor> factors;

  bool empty() const noexcept { return factors.empty(); }
  std::size_t size() const noexcept { return factors.size(); }
  /// True when every factor is an Elem12/Elem21 leaf.
  bool is_elementary() const;
  GroupWord& append(const GroupWord& other);
};

/// One node of a GroupWord. Conj keeps conjugator and core apart so callers
/// can tell which part of a product is the conjugating element.
struct Factor {
  enum class Kind { Elem12, Elem21, Diag, Conj, Inv };

  Kind kind;
  std::optional<RingElement> arg;  // Elem12, Elem21, Diag
  GroupWord first;                 // Conj: conjugator, Inv: inverted word
  GroupWord second;                // Conj: core

  static Factor elem12(RingElement x);
  static Factor elem21(RingElement x);
  static Factor diag(RingElement u);
  static Factor conj(GroupWord conjugator, GroupWord core);
  static Factor inv(GroupWord word);

  friend bool operator==(const Factor& a, const Factor& b);
};

inline bool operator==(const GroupWord& a, const GroupWord& b) { return a.factors == b.factors; }

/// Exact value of the word; the empty word evaluates to the identity of `ring`.
Mat2 evaluate(const GroupWord& word, const RingDescriptor& ring);

/// A 2x2 matrix over the residues of a QuotientRing.
struct ResidueMat {
  std::array<Residue, 4> e;

  friend bool operator==(const ResidueMat& a, const ResidueMat& b) { return a.e == b.e; }
};

ResidueMat reduce_mat(const Mat2& a, const QuotientRing& q);
ResidueMat residue_identity(const QuotientRing& q);
ResidueMat residue_mul(const QuotientRing& q, const ResidueMat& a, const ResidueMat& b);
/// Adjugate; equals the inverse whenever the determinant is 1.
ResidueMat residue_inverse(const QuotientRing& q, const ResidueMat& a);
Residue residue_det(const QuotientRing& q, const ResidueMat& a);
bool is_residue_identity(const QuotientRing& q, const ResidueMat& a);
std::string residue_mat_to_string(const QuotientRing& q, const ResidueMat& a);
ResidueMat parse_residue_mat(const QuotientRing& q, std::string_view text);

/// Evaluates the word factor by factor in SL2 of the quotient.
ResidueMat evaluate_mod(const GroupWord& word, const QuotientRing& q);

}  // namespace sl2cert
