#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "hypdom/error.hpp"
#include "hypdom/io.hpp"
#include "hypdom/selftest.hpp"

using namespace hypdom;
namespace fs = std::filesystem;

namespace {
ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "hypdom_io_test";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(HYPDOM_CLI) + " " + args + " > " + out.string() + " 2>" + out.string() + ".err";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const std::string kFixtures = default_fixture_dir();
}  // namespace

TEST_CASE("fixtures parse") {
  const GroupSpec m = load_group_spec(kFixtures + "/modular.json");
  CHECK(m.model_dim == 2);
  CHECK(m.generators.size() == 2);
  CHECK(m.generators[0].name == "S");
  CHECK(m.peripheral.size() == 1);
  CHECK(m.torsion_free == false);

  const GroupSpec f = load_group_spec(kFixtures + "/figure8.json");
  CHECK(f.model_dim == 3);
  const Complex omega = -f.generators[1].map.c() / f.generators[1].map.a();
  CHECK(omega.real() == 0.5);
  CHECK(omega.imag() == 0.8660254037844386);
}

TEST_CASE("spec errors") {
  const std::string det0 =
      R"({"name": "x", "model_dim": 3, "generators": [{"name": "Z", "matrix": [[1,0],[2,0],[2,0],[4,0]]}]})";
  CHECK(code_of([&] { parse_group_spec(det0); }) == ErrorCode::DeterminantError);
  CHECK(message_of([&] { parse_group_spec(det0); }).find("Z") != std::string::npos);

  const std::string unknown = R"({"name": "x", "model_dim": 3, "colour": 1, "generators": []})";
  CHECK(code_of([&] { parse_group_spec(unknown); }) == ErrorCode::ParseError);
  CHECK(message_of([&] { parse_group_spec(unknown); }).find("colour") != std::string::npos);

  CHECK(code_of([] { parse_group_spec("{\"name\": \n 3,,}"); }) == ErrorCode::ParseError);
  CHECK(message_of([] { parse_group_spec("{\"name\": \n 3,,}"); }).find("line 2") != std::string::npos);

  const std::string complex2d =
      R"({"name": "x", "model_dim": 2, "generators": [{"name": "A", "matrix": [[1,0],[0,1],[0,0],[1,0]]}]})";
  CHECK(code_of([&] { parse_group_spec(complex2d); }) == ErrorCode::ParseError);
}

TEST_CASE("centers and matrices") {
  const HalfPoint a = parse_center("0+2i");
  CHECK(a.z == Complex(0.0));
  CHECK(a.r == 2.0);
  const HalfPoint b = parse_center("1-0.5i+3j");
  CHECK(b.z == Complex(1.0, -0.5));
  CHECK(b.r == 3.0);
  CHECK(parse_center("0.25,-1,2").vec() == Vec3(0.25, -1, 2));
  CHECK(code_of([] { parse_center("2i-"); }) == ErrorCode::ParseError);
  CHECK(same_element(parse_matrix("2,0,0,0,0,0,0.5,0"), MoebiusMap::from_entries(2.0, 0.0, 0.0, 0.5)));
  CHECK(code_of([] { parse_matrix("1,0,2,0,2,0,4,0"); }) == ErrorCode::DeterminantError);
}

TEST_CASE("number formatting") {
  Json j;
  j["x"] = -0.0;
  j["y"] = 0.1;
  j["v"] = Json::array({1.0, 2});
  CHECK(dump(j) == "{\n  \"x\": 0,\n  \"y\": 0.10000000000000001,\n  \"v\": [1, 2]\n}\n");
}

TEST_CASE("cli classify") {
  const fs::path out = scratch() / "classify.json";
  REQUIRE(run("classify --matrix 2,0,0,0,0,0,0.5,0", out) == 0);
  const Json doc = Json::parse(slurp(out));
  CHECK(doc["schema"] == "hypdom/1");
  CHECK(doc["command"] == "classify");
  CHECK(doc["result"]["class"] == "hyperbolic");
  CHECK(doc["result"]["trace"] == Json::array({2.5, 0.0}));
}

TEST_CASE("cli domain is byte-identical across runs") {
  const fs::path dir = scratch();
  const std::string args = "domain --center 0+2i --maxlen 6 " + kFixtures + "/modular.json";
  REQUIRE(run(args + " --svg " + (dir / "a.svg").string(), dir / "a.json") == 0);
  REQUIRE(run(args + " --svg " + (dir / "b.svg").string(), dir / "b.json") == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.svg") == slurp(dir / "b.svg"));
  CHECK(slurp(dir / "a.svg").rfind("<svg", 0) == 0);

  const Json doc = Json::parse(slurp(dir / "a.json"));
  CHECK(doc["result"]["faces"].size() == 3);
  CHECK(doc["result"]["verdict"]["is_df"] == true);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch();
  CHECK(run("domain --maxlen 13 " + kFixtures + "/lattice.json", dir / "e1") == 1);
  CHECK(run("classify --matrix 1,0,2,0,2,0,4,0", dir / "e2") == 1);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"name\": 1";
  }
  CHECK(run("domain " + (dir / "bad.json").string(), dir / "e3") == 1);
  // Figure-eight has no peripheral block: domain-level error.
  CHECK(run("ford " + kFixtures + "/figure8.json", dir / "e4") == 2);
  const Json err = Json::parse(slurp(dir.string() + "/e4.err"));
  CHECK(err["error"]["code"] == "MissingPeripheral");
}
