#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sl2cert/sl2.hpp"

namespace sl2cert {

/// A word of elementary matrices together with the matrix it evaluates to.
struct Decomposition {
  Mat2 input;
  GroupWord word;

  std::size_t length() const noexcept { return word.size(); }
};

/// h(u) = E12(u) E21(-u^-1) E12(u) * E12(-1) E21(1) E12(-1), always six factors.
/// Throws NonUnit.
Decomposition h_decomposition(const RingElement& u);

/// Division with remainder used by the shared reduction driver.
class EuclideanStrategy {
 public:
  virtual ~EuclideanStrategy() = default;

  /// Euclidean size; units have size 1 and zero has size 0.
  virtual mpz_class size(const RingElement& x) const = 0;
  /// q with size(a - q*b) < size(b) whenever the ring is Euclidean for this size.
  virtual RingElement quotient(const RingElement& a, const RingElement& b) const = 0;
  /// Candidate arguments for the fallback search, in the fixed tie-break order.
  virtual std::vector<RingElement> search_moves(const RingDescriptor& ring) const;
};

/// Z: nearest-integer quotient. Z[1/m]: Euclid on the parts prime to m.
/// Z[sqrt2], Z[sqrt3]: coordinatewise rounding of a/b in Q(sqrt d).
/// Throws UnsupportedRing for other quadratic rings.
std::unique_ptr<EuclideanStrategy> euclidean_strategy(const RingDescriptor& ring);

struct DecomposeOptions {
  std::size_t bfs_depth = 12;
  std::size_t bfs_node_cap = 200'000;
};

/// Writes A as a product of elementary matrices. Throws UnsupportedRing or
/// SearchExhausted.
Decomposition decompose(const Mat2& a, const DecomposeOptions& options = {});
Decomposition decompose_with(const Mat2& a, const EuclideanStrategy& strategy,
                             const DecomposeOptions& options = {});

struct LengthStats {
  std::size_t count = 0;
  std::size_t max = 0;
  double mean = 0.0;
};

LengthStats length_stats(std::span<const Mat2> sample, const DecomposeOptions& options = {});

/// Whether A is the identity modulo I. Necessary, not sufficient, for A to
/// lie in E(2, R, I).
bool reduces_to_identity(const Mat2& a, const PrincipalIdeal& ideal);

}  // namespace sl2cert
