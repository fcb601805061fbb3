#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sl2cert/certificate.hpp"
#include "sl2cert/cli.hpp"

using namespace sl2cert;

namespace {

struct Result {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Result verify_text(const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / "sl2cert_test_cert.json";
  std::ofstream(path) << text;
  Result r = run({"verify", path.string()});
  std::filesystem::remove(path);
  return r;
}

}  // namespace

TEST_CASE("unit find examples") {
  const Result ok = run({"unit", "find", "--ring", "Z[1/2]", "--c", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.j()["kind"] == "many-units");
  CHECK(ok.j()["payload"]["u"] == "64");
  CHECK(ok.j()["verified"] == true);

  const Result bad = run({"unit", "find", "--ring", "Z", "--c", "3"});
  CHECK(bad.code == 1);
  CHECK(bad.j()["error"]["name"] == "NoInfiniteOrderUnit");
  CHECK(bad.j()["error"]["module"] == "rings");
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("lemma witness example") {
  const Result r = run({"lemma", "witness", "--ring", "Z[1/2]", "--A", "[[1,0],[3,1]]", "--z", "3"});
  CHECK(r.code == 0);
  const json j = r.j();
  CHECK(j["kind"] == "lemma2-witness");
  CHECK(j["payload"]["factors"].size() == 4);
  CHECK(j["verified"] == true);
  const Result e = run({"lemma", "witness", "--ring", "Z[1/2]", "--A", "[[1,0],[3,1]]", "--z", "3",
                        "--elementary-conjugators"});
  CHECK(e.code == 0);
  for (const auto& f : e.j()["payload"]["factors"]) {
    for (const auto& node : f["conjugator"]) CHECK(node["kind"] != "h");
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"unit", "find", "--ring", "Z[1/2]"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"norm", "bfs", "--ring", "Z", "--modulus", "5", "--element", "[[1,1],[0,1]]", "--bogus", "1"}).code == 2);
  const Result h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.empty());
}

TEST_CASE("domain errors carry the module name") {
  const Result det = run({"decompose", "--ring", "Z", "--A", "[[1,1],[1,1]]"});
  CHECK(det.code == 1);
  CHECK(det.j()["error"]["name"] == "DeterminantNotOne");
  CHECK(det.j()["error"]["module"] == "sl2");
  const Result ring = run({"ring", "info", "--ring", "Z[sqrt4]"});
  CHECK(ring.code == 1);
  CHECK(ring.j()["error"]["name"] == "InvalidRing");
  const Result deg = run({"norm", "lemma-bound", "--ring", "Z[1/2]", "--A", "[[1,0],[3,1]]", "--modulus", "5"});
  CHECK(deg.code == 1);
  CHECK(deg.j()["error"]["name"] == "DegenerateQuotient");
  CHECK(deg.j()["error"]["module"] == "norms");
  const Result zc = run({"lemma", "y", "--ring", "Z[1/2]", "--A", "[[1,3],[0,1]]", "--u", "64"});
  CHECK(zc.code == 1);
  CHECK(zc.j()["error"]["module"] == "lemma");
}

TEST_CASE("every subcommand round-trips through verify") {
  const std::vector<std::vector<std::string>> commands = {
      {"ring", "info", "--ring", "Z[1/6]"},
      {"ring", "info", "--ring", "Z"},
      {"unit", "find", "--ring", "Z[sqrt2]", "--c", "3"},
      {"lemma", "y", "--ring", "Z[sqrt2]", "--A", "[[1,0],[sqrt(2),1]]"},
      {"lemma", "witness", "--ring", "Z[1/6]", "--A", "[[1,0],[5,1]]", "--z", "-10"},
      {"decompose", "--ring", "Z[1/2]", "--A", "[[3/2,1],[1/2,1]]"},
      {"h-decompose", "--ring", "Z[sqrt2]", "--u", "1+sqrt(2)"},
      {"norm", "bfs", "--ring", "Z", "--modulus", "5", "--element", "[[-1,0],[0,-1]]"},
      {"norm", "bfs", "--ring", "Z", "--modulus", "5", "--gens", "[[-1,0],[0,-1]]", "--element", "[[1,1],[0,1]]"},
      {"norm", "lemma-bound", "--ring", "Z[1/2]", "--A", "[[1,0],[3,1]]", "--modulus", "11", "--u", "64",
       "--samples", "10", "--seed", "2"},
      {"norm", "axioms", "--ring", "Z", "--modulus", "3"},
      {"norm", "axioms", "--ring", "Z[sqrt2]", "--modulus", "sqrt(2)"},
  };
  for (const auto& cmd : commands) {
    const Result r = run(cmd);
    CHECK_MESSAGE(r.code == 0, cmd[0] << " " << cmd[1] << ": " << r.err);
    const Result v = verify_text(r.out);
    CHECK_MESSAGE(v.code == 0, cmd[0] << " " << cmd[1] << ": " << v.out);
    CHECK(v.j()["verified"] == true);
    CHECK(run(cmd).out == r.out);  // deterministic
  }
}

TEST_CASE("verify rejects bad input") {
  CHECK(verify_text("not json").code == 1);
  CHECK(verify_text("not json").j()["error"]["name"] == "InvalidCertificate");
  CHECK(run({"verify", "/nonexistent/cert.json"}).code == 1);
  json cert = json::parse(run({"unit", "find", "--ring", "Z[1/2]", "--c", "3"}).out);
  cert["payload"]["k"] = 5;
  const Result r = verify_text(cert.dump());
  CHECK(r.code == 1);
  CHECK(r.j()["verified"] == false);
  CHECK_FALSE(r.j()["failures"].empty());
}
