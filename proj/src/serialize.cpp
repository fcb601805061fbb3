#include "sl2cert/serialize.hpp"

#include "sl2cert/norms.hpp"

namespace sl2cert {

namespace {

Error bad(const std::string& what) { return Error(Errc::InvalidCertificate, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

RingElement element_from_json(const RingDescriptor& ring, const json& j) {
  if (!j.is_string()) throw bad("ring elements must be strings, got " + j.dump());
  return RingElement::parse(ring, j.get<std::string>());
}

Mat2 mat_from_json(const RingDescriptor& ring, const json& j) {
  if (!j.is_string()) throw bad("matrices must be strings, got " + j.dump());
  return Mat2::parse(ring, j.get<std::string>());
}

json word_to_json(const GroupWord& word) {
  json out = json::array();
  for (const auto& f : word.factors) {
    switch (f.kind) {
      case Factor::Kind::Elem12: out.push_back({{"kind", "E12"}, {"arg", f.arg->to_string()}}); break;
      case Factor::Kind::Elem21: out.push_back({{"kind", "E21"}, {"arg", f.arg->to_string()}}); break;
      case Factor::Kind::Diag: out.push_back({{"kind", "h"}, {"arg", f.arg->to_string()}}); break;
      case Factor::Kind::Conj:
        out.push_back({{"kind", "conj"}, {"conjugator", word_to_json(f.first)}, {"core", word_to_json(f.second)}});
        break;
      case Factor::Kind::Inv: out.push_back({{"kind", "inv"}, {"word", word_to_json(f.first)}}); break;
    }
  }
  return out;
}

GroupWord word_from_json(const RingDescriptor& ring, const json& j) {
  if (!j.is_array()) throw bad("a word must be a JSON array");
  GroupWord word;
  for (const auto& node : j) {
    const std::string kind = field(node, "kind").get<std::string>();
    if (kind == "E12") {
      word.factors.push_back(Factor::elem12(element_from_json(ring, field(node, "arg"))));
    } else if (kind == "E21") {
      word.factors.push_back(Factor::elem21(element_from_json(ring, field(node, "arg"))));
    } else if (kind == "h") {
      word.factors.push_back(Factor::diag(element_from_json(ring, field(node, "arg"))));
    } else if (kind == "conj") {
      word.factors.push_back(Factor::conj(word_from_json(ring, field(node, "conjugator")),
                                          word_from_json(ring, field(node, "core"))));
    } else if (kind == "inv") {
      word.factors.push_back(Factor::inv(word_from_json(ring, field(node, "word"))));
    } else {
      throw bad("unknown word node kind '" + kind + "'");
    }
  }
  return word;
}

json many_units_to_json(const ManyUnitsCertificate& cert) {
  return {
      {"c", cert.c.to_string()},       {"c_squared", (cert.c * cert.c).to_string()},
      {"v", cert.v.to_string()},       {"k", cert.k},
      {"u", cert.u.to_string()},       {"y", cert.y.to_string()},
      {"u8_not_one", cert.u8_not_one},
  };
}

ManyUnitsCertificate many_units_from_json(const RingDescriptor& ring, const json& j) {
  return ManyUnitsCertificate{
      element_from_json(ring, field(j, "c")), element_from_json(ring, field(j, "v")),
      field(j, "k").get<std::uint64_t>(),     element_from_json(ring, field(j, "u")),
      element_from_json(ring, field(j, "y")), field(j, "u8_not_one").get<bool>(),
  };
}

std::string core_name(Core core) { return core == Core::A ? "A" : "A^-1"; }

Core core_from_name(const std::string& name) {
  if (name == "A") return Core::A;
  if (name == "A^-1") return Core::AInverse;
  throw bad("core must be \"A\" or \"A^-1\", got '" + name + "'");
}

json witness_to_json(const ConjugateWitness& w) {
  json factors = json::array();
  for (const auto& f : w.factors) {
    factors.push_back({{"conjugator", word_to_json(f.conjugator)}, {"core", core_name(f.core)}});
  }
  return {
      {"A", w.a.to_string()}, {"u", w.u.to_string()}, {"z", w.z.to_string()},
      {"t", w.t.to_string()}, {"q", w.q.to_string()}, {"p", w.p.to_string()},
      {"Y", w.y_matrix.to_string()}, {"factors", std::move(factors)}, {"target", w.target.to_string()},
  };
}

ConjugateWitness witness_from_json(const RingDescriptor& ring, const json& j) {
  const json& factors = field(j, "factors");
  if (!factors.is_array() || factors.size() != 4) throw bad("a witness has exactly four factors");
  auto factor = [&](std::size_t i) {
    return ConjugateFactor{word_from_json(ring, field(factors[i], "conjugator")),
                           core_from_name(field(factors[i], "core").get<std::string>())};
  };
  return ConjugateWitness{
      mat_from_json(ring, field(j, "A")),
      element_from_json(ring, field(j, "u")),
      element_from_json(ring, field(j, "z")),
      element_from_json(ring, field(j, "t")),
      element_from_json(ring, field(j, "q")),
      element_from_json(ring, field(j, "p")),
      mat_from_json(ring, field(j, "Y")),
      {factor(0), factor(1), factor(2), factor(3)},
      mat_from_json(ring, field(j, "target")),
  };
}

json decomposition_to_json(const Decomposition& d) {
  return {{"input", d.input.to_string()}, {"word", word_to_json(d.word)}, {"length", d.length()}};
}

Decomposition decomposition_from_json(const RingDescriptor& ring, const json& j) {
  return Decomposition{mat_from_json(ring, field(j, "input")), word_from_json(ring, field(j, "word"))};
}

json length_to_json(std::uint32_t value) {
  if (value == kUnreachable) return "inf";
  return value;
}

std::uint32_t length_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kUnreachable;
  if (!j.is_number_unsigned()) throw bad("lengths are non-negative integers or \"inf\"");
  return j.get<std::uint32_t>();
}

}  // namespace sl2cert
