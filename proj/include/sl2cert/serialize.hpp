#pragma once

#include <json.hpp>

#include "sl2cert/elemgen.hpp"
#include "sl2cert/lemma.hpp"
#include "sl2cert/sl2.hpp"

namespace sl2cert {

using json = nlohmann::json;

/// Words are JSON arrays of nodes:
///   {"kind": "E12" | "E21", "arg": x}, {"kind": "h", "arg": u},
///   {"kind": "conj", "conjugator": [...], "core": [...]}, {"kind": "inv", "word": [...]}
/// Ring elements and matrices use their canonical text syntax.
json word_to_json(const GroupWord& word);
GroupWord word_from_json(const RingDescriptor& ring, const json& j);

json many_units_to_json(const ManyUnitsCertificate& cert);
ManyUnitsCertificate many_units_from_json(const RingDescriptor& ring, const json& j);

json witness_to_json(const ConjugateWitness& w);
ConjugateWitness witness_from_json(const RingDescriptor& ring, const json& j);

json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const RingDescriptor& ring, const json& j);

std::string core_name(Core core);
Core core_from_name(const std::string& name);

/// Integer lengths are JSON numbers; kUnreachable is the string "inf".
json length_to_json(std::uint32_t value);
std::uint32_t length_from_json(const json& j);

RingElement element_from_json(const RingDescriptor& ring, const json& j);
Mat2 mat_from_json(const RingDescriptor& ring, const json& j);

}  // namespace sl2cert
