#include <doctest.h>

#include "polylab/report.hpp"

using namespace polylab;
using namespace std::string_literals;

namespace {

RunReport sample(std::uint64_t seed, const std::string& input) {
  RunReport r("demo run", seed);
  r.add_input("argv", "demo\0--x"s);
  r.add_input("file", input);
  r.set_output("half", Tagged::of(Rational(1, 2)));
  r.set_output("ratio", Tagged::of_float(0.25));
  r.set_output("list", nlohmann::json::array({1, 2}));
  r.check("half.small", true, Tagged::of(Rational(1, 2)), Tagged::of(1), "<=");
  return r;
}

}  // namespace

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("tagged values") {
  CHECK(Tagged::of(Rational(-3, 6)).to_json() == nlohmann::json{{"tag", "exact-rational"}, {"value", "-1/2"}});
  CHECK(Tagged::of_u(7).text() == "7");
  CHECK(Tagged::of_float(0.5).to_json() == nlohmann::json{{"tag", "float"}, {"value", 0.5}});
}

TEST_CASE("reports are deterministic apart from wall time") {
  auto a = sample(3, "payload"), b = sample(3, "payload");
  a.set_wall_time_ms(1.0);
  b.set_wall_time_ms(99.0);
  auto ja = a.to_json(), jb = b.to_json();
  CHECK(ja["wall_time_ms"] != jb["wall_time_ms"]);
  ja.erase("wall_time_ms");
  jb.erase("wall_time_ms");
  CHECK(ja.dump() == jb.dump());
  CHECK(a.inputs_digest() == b.inputs_digest());
  CHECK(sample(3, "payload!").inputs_digest() != a.inputs_digest());
  CHECK(sample(4, "payload").to_json()["seed"] == 4);
}

TEST_CASE("input boundaries matter to the digest") {
  RunReport x("c", 1), y("c", 1);
  x.add_input("ab", "c");
  y.add_input("a", "bc");
  CHECK(x.inputs_digest() != y.inputs_digest());
}

TEST_CASE("assertions drive ok") {
  auto r = sample(1, "p");
  CHECK(r.ok());
  CHECK(r.to_json()["ok"] == true);
  CHECK_FALSE(r.check("fails", false));
  CHECK_FALSE(r.ok());
  const auto j = r.to_json();
  CHECK(j["ok"] == false);
  CHECK(j["assertions"].size() == 2);
  CHECK(j["assertions"][1]["status"] == "fail");
}

TEST_CASE("csv form") {
  const auto csv = sample(1, "p").to_csv();
  CHECK(csv.rfind("section,key,tag,value\n", 0) == 0);
  CHECK(csv.find("output,\"half\",exact-rational,1/2\n") != std::string::npos);
  CHECK(csv.find("assertion,\"half.small\",pass,\"1/2 <= 1\"\n") != std::string::npos);
  RunReport q("say \"hi\"", 1);
  CHECK(q.to_csv().find("\"say \"\"hi\"\"\"") != std::string::npos);
}
