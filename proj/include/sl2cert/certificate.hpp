#pragma once

#include <string>
#include <vector>

#include "sl2cert/norms.hpp"
#include "sl2cert/serialize.hpp"

namespace sl2cert {

inline constexpr const char* kToolVersion = "1.0.0";

/// Envelope {"kind", "ring", "payload", "verified", "tool_version"}. The
/// `verified` flag is set by running the same checks `verify_certificate`
/// applies to the serialized payload.
json make_certificate(const std::string& kind, const RingDescriptor& ring, json payload);

json ring_info_certificate(const RingDescriptor& ring, std::uint64_t pell_cap);
json many_units_certificate(const ManyUnitsCertificate& cert);
json y_certificate(const Mat2& a, const RingElement& u, const YData& data);
json witness_certificate(const ConjugateWitness& w);
json h_decomposition_certificate(const Decomposition& d);
json decomposition_certificate(const Decomposition& d);
json bfs_norm_certificate(const FiniteGroupTable& group, const NormTable& table,
                          FiniteGroupTable::Index element);
json bound_certificate(const Mat2& a, const ManyUnitsCertificate& cert, const QuotientRing& q,
                       const BoundReport& report);
json axiom_certificate(const FiniteGroupTable& group, const NormTable& table, const AxiomReport& report);

struct VerifyResult {
  std::string kind;
  bool verified = false;
  std::vector<std::string> failures;
};

/// Re-checks a certificate from its JSON alone.
VerifyResult verify_certificate(const json& certificate);

}  // namespace sl2cert
