#include "sl2cert/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "sl2cert/certificate.hpp"

namespace sl2cert::cli {

namespace {

struct Options {
  std::string ring = "Z";
  std::string c, a, z, u, modulus, gens, element, file;
  bool elementary_conjugators = false;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  std::uint64_t pell_cap = 1'000'000;
  std::size_t bfs_depth = 12;
  std::uint64_t quotient_cap = FiniteGroupTable::kDefaultMaxElements;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, sep);) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

// E12(+-1), E21(+-1), plus the sqrt(d) transvections over Z[sqrt(d)].
std::string default_generators(const RingDescriptor& ring) {
  std::string s = "[[1,1],[0,1]];[[1,-1],[0,1]];[[1,0],[1,1]];[[1,0],[-1,1]]";
  if (ring.is_quadratic()) {
    const std::string r = "sqrt(" + std::to_string(ring.parameter()) + ")";
    s += ";[[1," + r + "],[0,1]];[[1,-" + r + "],[0,1]];[[1,0],[" + r + ",1]];[[1,0],[-" + r + ",1]]";
  }
  return s;
}

ElementSet generator_closure(const FiniteGroupTable& group, const std::string& text) {
  ElementSet seeds;
  for (const auto& m : split(text, ';')) {
    const ResidueMat r = parse_residue_mat(group.quotient(), m);
    const auto idx = group.index_of(r);
    if (!idx) throw Error(Errc::DeterminantNotOne, "generator " + m + " is not in SL2 of the quotient");
    seeds.push_back(*idx);
  }
  return conjugation_closure(group, seeds);
}

ManyUnitsCertificate unit_for(const Mat2& a, const Options& o) {
  if (o.u.empty()) return find_unit(a.a21(), {o.pell_cap});
  const RingDescriptor& ring = a.ring();
  const RingElement u = RingElement::parse(ring, o.u);
  const RingElement& c = a.a21();
  if (c.is_zero()) throw Error(Errc::ZeroCorner, "A has zero (2,1) entry");
  const auto y = (u - RingElement::integer(ring, 1)).divide(c * c);
  if (!u.is_unit() || !y) throw Error(Errc::UnitCongruenceViolated, "u - 1 is not divisible by c^2");
  return {c, u, 1, u, *y, !u.pow(8).is_one()};
}

int emit(const json& cert, std::ostream& out) {
  out << cert.dump(2) << "\n";
  return cert.at("verified").get<bool>() ? 0 : 1;
}

json read_certificate(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidCertificate, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidCertificate, std::string("not JSON: ") + e.what());
  }
}

json error_json(std::string_view module, std::string_view name, const std::string& message) {
  json e;
  e["module"] = module;
  e["name"] = name;
  e["message"] = message;
  json out;
  out["error"] = std::move(e);
  out["tool_version"] = kToolVersion;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Builds and verifies SL2 certificates", "sl2cert"};
  app.require_subcommand(1);

  auto ring_opt = [&](CLI::App* cmd) {
    cmd->add_option("--ring", o.ring, "Z, Z[1/m] or Z[sqrt(d)]")->capture_default_str();
  };
  auto pell_opt = [&](CLI::App* cmd) {
    cmd->add_option("--pell-cap", o.pell_cap, "Pell search bound")->capture_default_str();
  };
  auto quotient_opt = [&](CLI::App* cmd) {
    cmd->add_option("--quotient-cap", o.quotient_cap, "largest SL2 table enumerated")->capture_default_str();
  };

  auto* ring_cmd = app.add_subcommand("ring", "ring descriptors")->require_subcommand(1);
  auto* ring_info = ring_cmd->add_subcommand("info", "describe a ring and a unit of infinite order");
  ring_opt(ring_info);
  pell_opt(ring_info);

  auto* unit_cmd = app.add_subcommand("unit", "units with u = 1 mod c^2")->require_subcommand(1);
  auto* unit_find = unit_cmd->add_subcommand("find", "certificate u = v^k, c^2 | u - 1, u^8 != 1");
  ring_opt(unit_find);
  unit_find->add_option("--c", o.c, "nonzero ring element")->required();
  pell_opt(unit_find);

  auto* lemma_cmd = app.add_subcommand("lemma", "four-conjugate construction")->require_subcommand(1);
  auto* lemma_y = lemma_cmd->add_subcommand("y", "the upper triangular matrix Y");
  auto* lemma_w = lemma_cmd->add_subcommand("witness", "E12((u^4 - u^-4) z) as four conjugates of A^+-1");
  for (auto* cmd : {lemma_y, lemma_w}) {
    ring_opt(cmd);
    cmd->add_option("--A", o.a, "matrix [[a,b],[c,d]] with c != 0")->required();
    cmd->add_option("--u", o.u, "unit with u = 1 mod c^2 (default: unit find)");
    pell_opt(cmd);
  }
  lemma_w->add_option("--z", o.z, "element of cR")->required();
  lemma_w->add_flag("--elementary-conjugators", o.elementary_conjugators, "expand h(.) into elementary factors");

  auto* decompose_cmd = app.add_subcommand("decompose", "elementary word for a matrix");
  ring_opt(decompose_cmd);
  decompose_cmd->add_option("--A", o.a, "matrix [[a,b],[c,d]]")->required();
  decompose_cmd->add_option("--bfs-depth", o.bfs_depth, "fallback search depth")->capture_default_str();

  auto* h_cmd = app.add_subcommand("h-decompose", "six elementary factors for h(u)");
  ring_opt(h_cmd);
  h_cmd->add_option("--u", o.u, "unit")->required();

  auto* norm_cmd = app.add_subcommand("norm", "word norms on SL2 of a finite quotient")->require_subcommand(1);
  auto* norm_bfs = norm_cmd->add_subcommand("bfs", "word length of one element");
  auto* norm_bound = norm_cmd->add_subcommand("lemma-bound", "sampled four-ball bound for E12(j), j in J");
  auto* norm_axioms = norm_cmd->add_subcommand("axioms", "exhaustive norm axiom check");
  for (auto* cmd : {norm_bfs, norm_bound, norm_axioms}) {
    ring_opt(cmd);
    cmd->add_option("--modulus", o.modulus, "generator of N")->required();
    quotient_opt(cmd);
  }
  for (auto* cmd : {norm_bfs, norm_axioms}) {
    cmd->add_option("--gens", o.gens, "';'-separated seed matrices, closed under conjugation before use");
  }
  norm_bfs->add_option("--element", o.element, "matrix over the quotient")->required();
  norm_bound->add_option("--A", o.a, "matrix [[a,b],[c,d]] with c != 0")->required();
  norm_bound->add_option("--u", o.u, "unit with u = 1 mod c^2 (default: unit find)");
  norm_bound->add_option("--samples", o.samples, "number of nontrivial j")->capture_default_str();
  norm_bound->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
  pell_opt(norm_bound);

  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate");
  verify_cmd->add_option("file", o.file, "certificate path or - for stdin")->required();

  std::vector<const char*> argv = {"sl2cert"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sl2cert: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify_cmd->parsed()) {
      const VerifyResult r = verify_certificate(read_certificate(o.file));
      json report;
      report["kind"] = r.kind;
      report["verified"] = r.verified;
      report["failures"] = r.failures;
      out << report.dump(2) << "\n";
      for (const auto& f : r.failures) err << "verify: " << f << "\n";
      return r.verified ? 0 : 1;
    }

    const RingDescriptor ring = RingDescriptor::parse(o.ring);
    if (ring_info->parsed()) return emit(ring_info_certificate(ring, o.pell_cap), out);
    if (unit_find->parsed()) {
      return emit(many_units_certificate(find_unit(RingElement::parse(ring, o.c), {o.pell_cap})), out);
    }
    if (lemma_y->parsed() || lemma_w->parsed()) {
      const Mat2 a = Mat2::parse(ring, o.a);
      const RingElement u = o.u.empty() ? find_unit(a.a21(), {o.pell_cap}).u : RingElement::parse(ring, o.u);
      if (lemma_y->parsed()) return emit(y_certificate(a, u, compute_y(a, u)), out);
      const WitnessOptions wo{o.elementary_conjugators};
      return emit(witness_certificate(lemma2_witness(a, u, RingElement::parse(ring, o.z), wo)), out);
    }
    if (decompose_cmd->parsed()) {
      DecomposeOptions d;
      d.bfs_depth = o.bfs_depth;
      return emit(decomposition_certificate(decompose(Mat2::parse(ring, o.a), d)), out);
    }
    if (h_cmd->parsed()) return emit(h_decomposition_certificate(h_decomposition(RingElement::parse(ring, o.u))), out);

    const QuotientRing q(PrincipalIdeal(RingElement::parse(ring, o.modulus)));
    if (norm_bound->parsed()) {
      const Mat2 a = Mat2::parse(ring, o.a);
      const ManyUnitsCertificate cert = unit_for(a, o);
      const BoundOptions bo{o.samples, o.seed, o.quotient_cap};
      return emit(bound_certificate(a, cert, q, lemma_bound_experiment(a, cert, q.ideal(), bo)), out);
    }
    const FiniteGroupTable group(q, o.quotient_cap);
    const ElementSet gens = generator_closure(group, o.gens.empty() ? default_generators(ring) : o.gens);
    const NormTable table = word_norm_table(group, gens);
    if (norm_bfs->parsed()) {
      const auto idx = group.index_of(parse_residue_mat(q, o.element));
      if (!idx) throw Error(Errc::DeterminantNotOne, o.element + " is not in SL2 of " + q.describe());
      return emit(bfs_norm_certificate(group, table, *idx), out);
    }
    return emit(axiom_certificate(group, table, check_norm_axioms(group, table.lengths)), out);
  } catch (const Error& e) {
    out << error_json(e.module(), e.name(), e.what()).dump(2) << "\n";
    err << "sl2cert: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << error_json("cli", "InternalError", e.what()).dump(2) << "\n";
    err << "sl2cert: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sl2cert::cli
