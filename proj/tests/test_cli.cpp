// CLI surface: JSON in, JSON out, deterministic bytes, documented exit codes.
// CLI_BIN is injected by the build with the path of the built executable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchev/factorization.hpp"
#include "relchev/io.hpp"
#include "relchev/selftest.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace relchev;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_BIN) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("relroots: A_3 with J={a2}") {
  std::string in = "/tmp/relchev_cli_in.json", out = "/tmp/relchev_cli_out.json";
  write_file(in, R"({"type":"A","rank":3,"J":["a2"],"gamma":"trivial"})");
  REQUIRE(run_cli("relroots --input " + in + " --output " + out) == 0);
  Json doc = Json::parse(slurp(out));
  CHECK(doc.at("rel_rank") == 1);
  CHECK(doc.at("count") == 2);
  bool found = false;
  for (const auto& r : doc.at("roots"))
    if (r.at("height") == 1) {
      CHECK(r.at("fiber_sizes") == Json::array({4}));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("relroots output is byte-identical across runs") {
  std::string in = "/tmp/relchev_cli_in.json";
  write_file(in, R"({"type":"C","rank":2,"J":[0]})");
  REQUIRE(run_cli("relroots --input " + in + " --output /tmp/relchev_cli_o1.json") == 0);
  REQUIRE(run_cli("relroots --input " + in + " --output /tmp/relchev_cli_o2.json") == 0);
  CHECK(slurp("/tmp/relchev_cli_o1.json") == slurp("/tmp/relchev_cli_o2.json"));
}

TEST_CASE("factor: SL_2 word over (Z, Z[1/3], h=2), result re-verified") {
  std::string in = "/tmp/relchev_cli_fac.json", out = "/tmp/relchev_cli_facout.json";
  write_file(in, R"({
    "group": {"family": "SL", "size": 2},
    "pair": {"base": "int", "A_allowed_primes": ["3"], "h": "2"},
    "word": [{"alpha": 0, "u": ["3"]}, {"alpha": 1, "u": ["5/6"]}]
  })");
  REQUIRE(run_cli("factor --input " + in + " --output " + out) == 0);
  Json doc = Json::parse(slurp(out));
  // reconstruct the ambient objects and check the product identity exactly
  RelGroupContext ctx = make_context(make_sl(2), {0});
  RingPtr Z = integers();
  RingPtr A = restricted_fractions(Z, {make_int(3)}, true);
  SubringPair pair = make_subring_pair(Z, A, make_int(2));
  RelWord x = word_from_json(Json::parse(slurp(in)).at("word"), ctx, pair.Ah);
  Matrix y = matrix_from_json(doc.at("y"), pair.Ah);
  RelWord z = word_from_json(doc.at("z"), ctx, pair.Ah);
  CHECK(mat_equal(ep_eval(ctx, x, pair.Ah), mat_mul(y, ep_eval(ctx, z, pair.Ah))));
}

TEST_CASE("exit codes: parse errors are 2, domain errors are 1") {
  std::string in = "/tmp/relchev_cli_bad.json";
  write_file(in, "this is not json");
  CHECK(run_cli("relroots --input " + in) == 2);
  // well-formed JSON violating a precondition: J not Gamma-invariant
  write_file(in, R"({"type":"A","rank":3,"J":[0],"gamma":"flip"})");
  CHECK(run_cli("relroots --input " + in) == 1);
}

TEST_CASE("iwasawa over the CLI") {
  std::string in = "/tmp/relchev_cli_iw.json", out = "/tmp/relchev_cli_iwout.json";
  write_file(in, R"({
    "group": {"family": "SL", "size": 2},
    "prime": "2",
    "matrix": [["1", "1/2"], ["0", "1"]]
  })");
  REQUIRE(run_cli("iwasawa --input " + in + " --output " + out) == 0);
  Json doc = Json::parse(slurp(out));
  CHECK(doc.at("z").size() == 1);
}

TEST_CASE("patch over the CLI: the worked example") {
  std::string in = "/tmp/relchev_cli_pt.json", out = "/tmp/relchev_cli_ptout.json";
  write_file(in, R"({
    "group": {"family": "SL", "size": 2},
    "base": "int",
    "primes": ["2", "3"],
    "m": 0,
    "cocycle": [["1", "1/6"], ["0", "1"]]
  })");
  REQUIRE(run_cli("patch --input " + in + " --output " + out) == 0);
  Json doc = Json::parse(slurp(out));
  CHECK(doc.at("certificate") == true);
  CHECK(doc.at("g1")[0][1] == "-4/3");
  CHECK(doc.at("g2")[0].at("u")[0] == "3/2");
}
