#include "sl2cert/certificate.hpp"

#include <gmp.h>

#include <set>
#include <sstream>

namespace sl2cert {

namespace {

class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  std::vector<std::string> failures;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::InvalidCertificate, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string histogram_key(std::uint32_t n) { return n == kUnreachable ? "inf" : std::to_string(n); }

std::string stage_of(const json& payload) { return field(payload, "stage").get<std::string>(); }

Mat2 y_product(const Mat2& a, const RingElement& u, const RingElement& t) {
  const Mat2 h2 = Mat2::diagonal(u.pow(2));
  return Mat2::elementary12(t) * a.inverse() * Mat2::elementary12(-t) * h2 * a * h2.inverse();
}

// A prime modulus of Z or Z[1/m] has the closed form N(N^2 - 1) for |SL2|.
std::optional<mpz_class> prime_order_formula(const QuotientRing& q) {
  if (q.ring().is_quadratic()) return std::nullopt;
  const mpz_class n = q.index();
  if (n < 2 || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) return std::nullopt;
  return mpz_class(n * (n * n - 1));
}

// ---- ring-info ------------------------------------------------------------

constexpr int kDistinctPowers = 32;

void verify_ring_info(const RingDescriptor& ring, const json& p, Checks& c) {
  c.require(field(p, "ring").get<std::string>() == ring.to_string(), "payload ring differs from envelope");
  const json& v_json = field(p, "infinite_order_unit");
  if (v_json.is_null()) {
    c.require(ring.kind() == RingDescriptor::Kind::Integers, "only Z lacks a unit of infinite order");
    return;
  }
  const RingElement v = element_from_json(ring, v_json);
  const RingElement v_inv = element_from_json(ring, field(p, "inverse"));
  c.require((v * v_inv).is_one(), "v * inverse != 1");
  std::set<std::string> powers;
  RingElement power = RingElement::integer(ring, 1);
  for (int i = 0; i < kDistinctPowers; ++i) {
    powers.insert(power.to_string());
    power *= v;
  }
  c.require(powers.size() == kDistinctPowers, "v^0..v^31 are not pairwise distinct");
}

// ---- many-units -----------------------------------------------------------

void verify_many_units(const RingDescriptor& ring, const json& p, Checks& c) {
  const ManyUnitsCertificate cert = many_units_from_json(ring, p);
  c.require(element_from_json(ring, field(p, "c_squared")) == cert.c * cert.c, "c_squared != c * c");
  c.require(check_certificate(cert), "u = v^k, u - 1 = c^2 y or u^8 != 1 fails");
}

// ---- lemma2-witness -------------------------------------------------------

void verify_y(const RingDescriptor& ring, const json& p, Checks& c) {
  const Mat2 a = mat_from_json(ring, field(p, "A"));
  const RingElement u = element_from_json(ring, field(p, "u"));
  const RingElement x = element_from_json(ring, field(p, "x"));
  const RingElement y = element_from_json(ring, field(p, "y"));
  const RingElement t = element_from_json(ring, field(p, "t"));
  const RingElement q = element_from_json(ring, field(p, "q"));
  const Mat2 y_mat = mat_from_json(ring, field(p, "Y"));
  const RingElement& cc = a.a21();
  const RingElement one = RingElement::integer(ring, 1);
  c.require(!cc.is_zero(), "A has zero (2,1) entry");
  c.require(u.is_unit(), "u is not a unit");
  if (!u.is_unit() || cc.is_zero()) return;
  c.require(u - one == cc * cc * y, "u - 1 != c^2 y");
  c.require(u.pow(4) - one == cc * x, "u^4 - 1 != c x");
  c.require(t == a.a11() * x, "t != a11 x");
  const PrincipalIdeal ideal(cc);
  c.require(ideal.contains(t), "t not in cR");
  c.require(ideal.contains(q), "q not in cR");
  c.require(y_product(a, u, t) == y_mat, "Y != E12(t) A^-1 E12(-t) h(u^2) A h(u^-2)");
  c.require(y_mat.a11() == u.pow(-4) && y_mat.a12() == q && y_mat.a21().is_zero() && y_mat.a22() == u.pow(4),
            "Y is not [[u^-4, q], [0, u^4]]");
}

void verify_witness(const RingDescriptor& ring, const json& p, Checks& c) {
  for (auto& f : witness_failures(witness_from_json(ring, p))) c.failures.push_back(std::move(f));
}

// ---- decompositions -------------------------------------------------------

void verify_decomposition(const RingDescriptor& ring, const json& p, Checks& c) {
  const Decomposition d = decomposition_from_json(ring, p);
  c.require(d.word.is_elementary(), "word has non-elementary factors");
  c.require(field(p, "length").get<std::size_t>() == d.word.size(), "length differs from the word");
  c.require(evaluate(d.word, ring) == d.input, "word does not evaluate to the input");
}

void verify_h_decomposition(const RingDescriptor& ring, const json& p, Checks& c) {
  verify_decomposition(ring, p, c);
  const RingElement u = element_from_json(ring, field(p, "u"));
  c.require(u.is_unit(), "u is not a unit");
  if (u.is_unit()) c.require(mat_from_json(ring, field(p, "input")) == Mat2::diagonal(u), "input != h(u)");
  c.require(field(p, "length").get<std::size_t>() == 6, "an h(u) word has six factors");
}

// ---- norm experiments -----------------------------------------------------

using ResidueKey = std::string;

std::vector<ResidueMat> residue_list(const QuotientRing& q, const json& arr, Checks& c, const char* what) {
  if (!arr.is_array()) throw Error(Errc::InvalidCertificate, std::string(what) + " must be an array");
  std::vector<ResidueMat> out;
  for (const auto& s : arr) {
    out.push_back(parse_residue_mat(q, s.get<std::string>()));
    c.require(residue_det(q, out.back()) == q.one(), std::string(what) + " entry " + s.get<std::string>() +
                                                         " has determinant != 1");
  }
  return out;
}

// Symmetric and closed under conjugation by the elementary generators of SL2(R/NR).
void check_generating_set(const QuotientRing& q, const std::vector<ResidueMat>& gens, Checks& c) {
  std::set<ResidueKey> keys;
  for (const auto& g : gens) keys.insert(residue_mat_to_string(q, g));
  std::vector<Residue> additive = {q.one()};
  if (q.ring().is_quadratic()) additive.push_back(q.reduce(RingElement::quadratic(q.ring(), 0, 1)));
  std::vector<ResidueMat> elementary;
  for (const auto& r : additive) {
    ResidueMat e12 = residue_identity(q), e21 = residue_identity(q);
    e12.e[1] = r;
    e21.e[2] = r;
    elementary.push_back(e12);
    elementary.push_back(e21);
  }
  for (const auto& g : gens) {
    const std::string name = residue_mat_to_string(q, g);
    c.require(keys.contains(residue_mat_to_string(q, residue_inverse(q, g))), "inverse of " + name + " missing");
    for (const auto& e : elementary) {
      const ResidueMat conj = residue_mul(q, residue_mul(q, e, g), residue_inverse(q, e));
      c.require(keys.contains(residue_mat_to_string(q, conj)), "generators not closed under conjugation at " + name);
    }
  }
}

void verify_bfs(const RingDescriptor& ring, const json& p, Checks& c) {
  const QuotientRing q(PrincipalIdeal(element_from_json(ring, field(p, "modulus"))));
  c.require(field(p, "quotient").get<std::string>() == q.describe(), "quotient description mismatch");
  const auto gens = residue_list(q, field(p, "generators"), c, "generators");
  check_generating_set(q, gens, c);
  const ResidueMat element = parse_residue_mat(q, field(p, "element").get<std::string>());
  const std::uint32_t norm = length_from_json(field(p, "norm"));

  if (norm == kUnreachable) {
    // Unreachability is a claim about the whole subgroup, so enumerate it.
    const FiniteGroupTable group(q);
    ElementSet idx;
    for (const auto& g : gens) idx.push_back(*group.index_of(g));
    const NormTable table = word_norm_table(group, idx);
    c.require(table.lengths[*group.index_of(element)] == kUnreachable, "element is reachable");
    return;
  }
  std::set<ResidueKey> keys;
  for (const auto& g : gens) keys.insert(residue_mat_to_string(q, g));
  const auto path = residue_list(q, field(p, "path"), c, "path");
  ResidueMat product = residue_identity(q);
  for (const auto& s : path) {
    c.require(keys.contains(residue_mat_to_string(q, s)), "path step " + residue_mat_to_string(q, s) +
                                                              " is not a generator");
    product = residue_mul(q, product, s);
  }
  c.require(product == element, "path product differs from the element");
  c.require(path.size() == norm, "path length differs from the norm");
}

void verify_bound(const RingDescriptor& ring, const json& p, Checks& c) {
  const Mat2 a = mat_from_json(ring, field(p, "A"));
  const ManyUnitsCertificate cert = many_units_from_json(ring, field(p, "certificate"));
  c.require(check_certificate(cert), "unit certificate fails");
  c.require(cert.c == a.a21(), "certificate corner differs from A");
  const QuotientRing q(PrincipalIdeal(element_from_json(ring, field(p, "modulus"))));
  c.require(field(p, "quotient").get<std::string>() == q.describe(), "quotient description mismatch");
  const RingElement eps = element_from_json(ring, field(p, "epsilon_generator"));
  c.require(eps == (cert.u.pow(8) - RingElement::integer(ring, 1)) * cert.c, "epsilon generator != (u^8 - 1) c");

  const ResidueMat a_bar = reduce_mat(a, q);
  const ResidueMat a_inv = residue_inverse(q, a_bar);
  std::map<std::uint32_t, std::size_t> histogram;
  std::uint32_t max_norm = 0;
  std::size_t passed = 0;
  const json& samples = field(p, "samples");
  c.require(samples.is_array() && !samples.empty(), "no samples");
  for (const auto& s : samples) {
    const RingElement r = element_from_json(ring, field(s, "r"));
    const RingElement j = element_from_json(ring, field(s, "j"));
    const std::string tag = "sample r = " + r.to_string();
    c.require(j == eps * r, tag + ": j != epsilon r");
    const Residue j_bar = q.reduce(j);
    c.require(!(j_bar == q.zero()), tag + ": trivial image");
    const auto conj = residue_list(q, field(s, "conjugators"), c, "conjugators");
    const json& cores = field(s, "cores");
    c.require(conj.size() == 4 && cores.size() == 4, tag + ": four factors required");
    ResidueMat product = residue_identity(q);
    for (std::size_t i = 0; i < std::min<std::size_t>(conj.size(), cores.size()); ++i) {
      const ResidueMat& core = core_from_name(cores[i].get<std::string>()) == Core::A ? a_bar : a_inv;
      product = residue_mul(q, product, residue_mul(q, residue_mul(q, conj[i], core), residue_inverse(q, conj[i])));
    }
    ResidueMat expected = residue_identity(q);
    expected.e[1] = j_bar;
    const bool holds = conj.size() == 4 && product == expected;
    c.require(field(s, "witness_holds").get<bool>() == holds, tag + ": witness_holds mismatch");
    const std::uint32_t norm = length_from_json(field(s, "norm"));
    // Four conjugates bound the norm; the value itself comes from the BFS.
    if (holds) c.require(norm <= 4, tag + ": recorded norm exceeds the four-factor bound");
    c.require(norm >= 1, tag + ": nontrivial image with norm 0");
    histogram[norm] += 1;
    max_norm = std::max(max_norm, norm);
    if (holds && norm <= 4) ++passed;
  }
  json hist = json::object();
  for (auto [n, count] : histogram) hist[histogram_key(n)] = count;
  c.require(field(p, "histogram") == hist, "histogram mismatch");
  c.require(length_from_json(field(p, "max_norm")) == max_norm, "max_norm mismatch");
  c.require(field(p, "passed").get<std::size_t>() == passed, "pass count mismatch");
  c.require(passed == samples.size(), "not every sample passed");
}

void verify_norm_experiment(const RingDescriptor& ring, const json& p, Checks& c) {
  const std::string experiment = field(p, "experiment").get<std::string>();
  if (experiment == "bfs") return verify_bfs(ring, p, c);
  if (experiment == "lemma-bound") return verify_bound(ring, p, c);
  throw Error(Errc::InvalidCertificate, "unknown experiment '" + experiment + "'");
}

void verify_axioms(const RingDescriptor& ring, const json& p, Checks& c) {
  const QuotientRing q(PrincipalIdeal(element_from_json(ring, field(p, "modulus"))));
  c.require(field(p, "quotient").get<std::string>() == q.describe(), "quotient description mismatch");
  const FiniteGroupTable group(q);
  c.require(field(p, "group_order").get<std::size_t>() == group.size(), "group order mismatch");
  const json& formula = field(p, "order_formula");
  if (const auto expected = prime_order_formula(q)) {
    c.require(!formula.is_null() && formula.get<std::string>() == expected->get_str(), "order formula mismatch");
    c.require(*expected == group.size(), "|SL2| differs from N(N^2 - 1)");
  } else {
    c.require(formula.is_null(), "order formula given for a non-prime modulus");
  }

  const auto gens = residue_list(q, field(p, "generators"), c, "generators");
  ElementSet gen_idx;
  for (const auto& g : gens) gen_idx.push_back(*group.index_of(g));
  c.require(is_conjugation_closed(group, gen_idx), "generators are not conjugation-closed");

  const json& elements = field(p, "elements");
  std::vector<std::uint32_t> values(group.size(), kUnreachable);
  std::vector<bool> seen(group.size(), false);
  c.require(elements.size() == group.size(), "element table does not cover the group");
  for (const auto& e : elements) {
    const ResidueMat m = parse_residue_mat(q, field(e, "matrix").get<std::string>());
    const auto idx = group.index_of(m);
    if (!idx) {
      c.failures.push_back("matrix " + field(e, "matrix").get<std::string>() + " not in SL2");
      continue;
    }
    c.require(!seen[*idx], "matrix listed twice");
    seen[*idx] = true;
    values[*idx] = length_from_json(field(e, "norm"));
  }
  if (auto bad = word_length_inconsistency(group, gen_idx, values)) c.failures.push_back(*bad);

  const AxiomReport report = check_norm_axioms(group, values);
  const json& recorded = field(p, "axioms");
  c.require(recorded.size() == report.results.size(), "axiom count mismatch");
  for (std::size_t i = 0; i < std::min(recorded.size(), report.results.size()); ++i) {
    const auto& r = report.results[i];
    c.require(field(recorded[i], "name").get<std::string>() == r.name &&
                  field(recorded[i], "passed").get<bool>() == r.passed,
              "axiom " + r.name + " result mismatch");
  }
  c.require(field(p, "all_passed").get<bool>() == report.all_passed(), "all_passed mismatch");
}

std::vector<std::string> verify_payload(const std::string& kind, const RingDescriptor& ring, const json& p) {
  Checks c;
  try {
    if (kind == "ring-info") {
      verify_ring_info(ring, p, c);
    } else if (kind == "many-units") {
      verify_many_units(ring, p, c);
    } else if (kind == "lemma2-witness") {
      const std::string stage = stage_of(p);
      if (stage == "y") {
        verify_y(ring, p, c);
      } else if (stage == "witness") {
        verify_witness(ring, p, c);
      } else {
        c.failures.push_back("unknown stage '" + stage + "'");
      }
    } else if (kind == "h-decomposition") {
      verify_h_decomposition(ring, p, c);
    } else if (kind == "decomposition") {
      verify_decomposition(ring, p, c);
    } else if (kind == "norm-experiment") {
      verify_norm_experiment(ring, p, c);
    } else if (kind == "axiom-report") {
      verify_axioms(ring, p, c);
    } else {
      c.failures.push_back("unknown kind '" + kind + "'");
    }
  } catch (const Error& e) {
    c.failures.push_back(e.what());
  } catch (const json::exception& e) {
    c.failures.push_back(std::string("malformed payload: ") + e.what());
  }
  return c.failures;
}

json residue_array(const QuotientRing& q, const FiniteGroupTable& group, std::span<const FiniteGroupTable::Index> xs) {
  json out = json::array();
  for (auto i : xs) out.push_back(residue_mat_to_string(q, group.element(i)));
  return out;
}

}  // namespace

json make_certificate(const std::string& kind, const RingDescriptor& ring, json payload) {
  const bool ok = verify_payload(kind, ring, payload).empty();
  json out;
  out["kind"] = kind;
  out["ring"] = ring.to_string();
  out["payload"] = std::move(payload);
  out["verified"] = ok;
  out["tool_version"] = kToolVersion;
  return out;
}

json ring_info_certificate(const RingDescriptor& ring, std::uint64_t pell_cap) {
  json p;
  p["ring"] = ring.to_string();
  const char* kinds[] = {"integers", "localized", "quadratic"};
  p["variant"] = kinds[static_cast<int>(ring.kind())];
  p["parameter"] = ring.parameter();
  p["primes"] = std::vector<std::uint32_t>(ring.primes().begin(), ring.primes().end());
  if (ring.kind() == RingDescriptor::Kind::Integers) {
    p["infinite_order_unit"] = nullptr;
    p["inverse"] = nullptr;
  } else {
    const RingElement v = infinite_order_unit(ring, pell_cap);
    p["infinite_order_unit"] = v.to_string();
    p["inverse"] = v.inverse()->to_string();
  }
  return make_certificate("ring-info", ring, std::move(p));
}

json many_units_certificate(const ManyUnitsCertificate& cert) {
  return make_certificate("many-units", cert.c.ring(), many_units_to_json(cert));
}

json y_certificate(const Mat2& a, const RingElement& u, const YData& data) {
  json p;
  p["stage"] = "y";
  p["A"] = a.to_string();
  p["u"] = u.to_string();
  p["x"] = data.x.to_string();
  p["y"] = data.y.to_string();
  p["t"] = data.t.to_string();
  p["q"] = data.q.to_string();
  p["Y"] = data.y_matrix.to_string();
  return make_certificate("lemma2-witness", a.ring(), std::move(p));
}

json witness_certificate(const ConjugateWitness& w) {
  json p = witness_to_json(w);
  p["stage"] = "witness";
  return make_certificate("lemma2-witness", w.a.ring(), std::move(p));
}

json h_decomposition_certificate(const Decomposition& d) {
  json p = decomposition_to_json(d);
  p["u"] = d.input.a11().to_string();
  return make_certificate("h-decomposition", d.input.ring(), std::move(p));
}

json decomposition_certificate(const Decomposition& d) {
  return make_certificate("decomposition", d.input.ring(), decomposition_to_json(d));
}

json bfs_norm_certificate(const FiniteGroupTable& group, const NormTable& table, FiniteGroupTable::Index element) {
  const QuotientRing& q = group.quotient();
  json p;
  p["experiment"] = "bfs";
  p["modulus"] = q.ideal().generator().to_string();
  p["quotient"] = q.describe();
  p["group_order"] = group.size();
  p["generating_set_size"] = table.generators.size();
  p["generators"] = residue_array(q, group, table.generators);
  p["element"] = residue_mat_to_string(q, group.element(element));
  p["norm"] = length_to_json(table.lengths[element]);
  const auto path = table.lengths[element] == kUnreachable ? std::vector<FiniteGroupTable::Index>{}
                                                           : table.path_to(element);
  p["path"] = residue_array(q, group, path);
  return make_certificate("norm-experiment", q.ring(), std::move(p));
}

json bound_certificate(const Mat2& a, const ManyUnitsCertificate& cert, const QuotientRing& q,
                       const BoundReport& report) {
  json p;
  p["experiment"] = "lemma-bound";
  p["A"] = a.to_string();
  p["certificate"] = many_units_to_json(cert);
  p["modulus"] = q.ideal().generator().to_string();
  p["quotient"] = report.quotient;
  p["epsilon_generator"] = report.epsilon_generator.to_string();
  p["group_order"] = report.group_order;
  p["generating_set_size"] = report.generating_set_size;
  json samples = json::array();
  for (const auto& s : report.samples) {
    json conj = json::array(), cores = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      conj.push_back(residue_mat_to_string(q, s.conjugators[i]));
      cores.push_back(core_name(s.cores[i]));
    }
    json entry;
    entry["r"] = s.r.to_string();
    entry["j"] = s.j.to_string();
    entry["norm"] = length_to_json(s.norm);
    entry["conjugators"] = std::move(conj);
    entry["cores"] = std::move(cores);
    entry["witness_holds"] = s.witness_holds;
    samples.push_back(std::move(entry));
  }
  p["samples"] = std::move(samples);
  json hist = json::object();
  for (auto [n, count] : report.histogram) hist[histogram_key(n)] = count;
  p["histogram"] = std::move(hist);
  p["max_norm"] = length_to_json(report.max_norm);
  p["passed"] = report.passed;
  p["sample_count"] = report.samples.size();
  return make_certificate("norm-experiment", a.ring(), std::move(p));
}

json axiom_certificate(const FiniteGroupTable& group, const NormTable& table, const AxiomReport& report) {
  const QuotientRing& q = group.quotient();
  json p;
  p["modulus"] = q.ideal().generator().to_string();
  p["quotient"] = q.describe();
  p["group_order"] = group.size();
  if (const auto formula = prime_order_formula(q)) {
    p["order_formula"] = formula->get_str();
  } else {
    p["order_formula"] = nullptr;
  }
  p["generating_set_size"] = table.generators.size();
  p["generators"] = residue_array(q, group, table.generators);
  json elements = json::array();
  for (FiniteGroupTable::Index i = 0; i < group.size(); ++i) {
    json e;
    e["matrix"] = residue_mat_to_string(q, group.element(i));
    e["norm"] = length_to_json(table.lengths[i]);
    elements.push_back(std::move(e));
  }
  p["elements"] = std::move(elements);
  json axioms = json::array();
  for (const auto& r : report.results) {
    json a;
    a["name"] = r.name;
    a["passed"] = r.passed;
    a["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
    axioms.push_back(std::move(a));
  }
  p["axioms"] = std::move(axioms);
  p["all_passed"] = report.all_passed();
  return make_certificate("axiom-report", q.ring(), std::move(p));
}

VerifyResult verify_certificate(const json& certificate) {
  VerifyResult out;
  try {
    out.kind = field(certificate, "kind").get<std::string>();
    const std::string version = field(certificate, "tool_version").get<std::string>();
    if (version != kToolVersion) out.failures.push_back("unsupported tool_version " + version);
    const RingDescriptor ring = RingDescriptor::parse(field(certificate, "ring").get<std::string>());
    const bool claimed = field(certificate, "verified").get<bool>();
    for (auto& f : verify_payload(out.kind, ring, field(certificate, "payload"))) out.failures.push_back(std::move(f));
    if (!claimed) out.failures.push_back("certificate is marked unverified");
  } catch (const Error& e) {
    out.failures.push_back(e.what());
  } catch (const json::exception& e) {
    out.failures.push_back(std::string("malformed certificate: ") + e.what());
  }
  out.verified = out.failures.empty();
  return out;
}

}  // namespace sl2cert
