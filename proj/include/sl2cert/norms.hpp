#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sl2cert/lemma.hpp"
#include "sl2cert/quotient.hpp"
#include "sl2cert/sl2.hpp"

namespace sl2cert {

/// SL2 over a finite quotient ring, enumerated once and immutable afterwards.
///
/// Residues are handled through their ordinals with precomputed addition and
/// multiplication tables, so group operations never touch big integers.
class FiniteGroupTable {
 public:
  using Index = std::uint32_t;

  static constexpr std::uint64_t kDefaultMaxElements = 1'000'000;
  static constexpr std::uint64_t kMaxResidues = 2'048;

  /// Throws QuotientTooLarge when the ring or the group exceeds the caps.
  explicit FiniteGroupTable(const QuotientRing& q, std::uint64_t max_elements = kDefaultMaxElements);

  const QuotientRing& quotient() const noexcept { return q_; }
  std::size_t size() const noexcept { return elems_.size(); }
  Index identity() const noexcept { return identity_; }
  Index multiply(Index a, Index b) const;
  Index inverse(Index a) const { return inverse_[a]; }
  Index conjugate(Index g, Index a) const { return multiply(multiply(g, a), inverse(g)); }

  ResidueMat element(Index i) const;
  std::optional<Index> index_of(const ResidueMat& m) const;

  /// Image of E12(r) / E21(r) for a residue r.
  Index elementary12(const Residue& r) const;
  Index elementary21(const Residue& r) const;

 private:
  using Entries = std::array<std::uint32_t, 4>;

  std::uint64_t key(const Entries& e) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * n_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * n_ + b]; }

  QuotientRing q_;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> add_, mul_, neg_;
  std::vector<Entries> elems_;
  std::unordered_map<std::uint64_t, Index> lookup_;
  std::vector<Index> inverse_;
  Index identity_ = 0;
};

using ElementSet = std::vector<FiniteGroupTable::Index>;

/// Smallest symmetric, conjugation-closed superset of `s` (sorted).
ElementSet conjugation_closure(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> s);

bool is_conjugation_closed(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> s);

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Word lengths with respect to a conjugation-closed generating set.
struct NormTable {
  ElementSet generators;
  std::vector<std::uint32_t> lengths;  // kUnreachable outside the generated subgroup
  std::vector<FiniteGroupTable::Index> parent;  // predecessor on a shortest path
  std::vector<FiniteGroupTable::Index> via;     // generator used to reach the element

  /// Generators whose product is `target`, shortest first-found path.
  std::vector<FiniteGroupTable::Index> path_to(FiniteGroupTable::Index target) const;
};

/// Breadth-first search from the identity; throws GeneratorsNotClosed.
NormTable word_norm_table(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> generators);

std::uint32_t bfs_norm(const FiniteGroupTable& g, std::span<const FiniteGroupTable::Index> generators,
                       FiniteGroupTable::Index element);

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::optional<std::string> counterexample;
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool all_passed() const;
};

/// Exhaustive check of separation, symmetry, subadditivity and
/// ||a b a^-1|| = ||b|| for an explicit table of values (kUnreachable = infinity).
AxiomReport check_norm_axioms(const FiniteGroupTable& g, std::span<const std::uint32_t> values);

/// Whether `lengths` are exactly the word lengths over `generators`.
std::optional<std::string> word_length_inconsistency(const FiniteGroupTable& g,
                                                     std::span<const FiniteGroupTable::Index> generators,
                                                     std::span<const std::uint32_t> lengths);

struct BoundSample {
  RingElement r;
  RingElement j;  // r times the generator of J
  std::uint32_t norm = 0;
  std::array<ResidueMat, 4> conjugators;
  std::array<Core, 4> cores;
  bool witness_holds = false;

  bool passed() const { return witness_holds && norm <= 4; }
};

struct BoundReport {
  std::string quotient;
  RingElement epsilon_generator;
  std::size_t group_order = 0;
  std::size_t generating_set_size = 0;
  std::vector<BoundSample> samples;
  std::map<std::uint32_t, std::size_t> histogram;
  std::uint32_t max_norm = 0;
  std::size_t passed = 0;

  bool all_passed() const { return !samples.empty() && passed == samples.size(); }
};

struct BoundOptions {
  std::size_t sample_size = 50;
  std::uint64_t seed = 1;
  std::uint64_t max_group_elements = FiniteGroupTable::kDefaultMaxElements;
};

/// Reduces A and the four-conjugate witnesses for j in J modulo N and checks
/// ||E12(j)|| <= 4 for the conjugation closure of {A, A^-1}. Throws
/// DegenerateQuotient when J is contained in N.
BoundReport lemma_bound_experiment(const Mat2& a, const ManyUnitsCertificate& cert,
                                   const PrincipalIdeal& modulus, const BoundOptions& options = {});

}  // namespace sl2cert
