#include <sstream>

#include "doctest.h"
#include "ptheta/io.hpp"

using namespace ptheta;
using nlohmann::json;

TEST_CASE("complex numbers in three spellings") {
  CHECK(parse_complex(json(1.5), "z") == cd(1.5));
  CHECK(parse_complex(json::array({1.0, -2.0}), "z") == cd(1.0, -2.0));
  CHECK(parse_complex(json{{"re", 0.5}, {"im", 3.0}}, "z") == cd(0.5, 3.0));
  CHECK_THROWS_AS(parse_complex(json("x"), "z"), InputError);
}

TEST_CASE("config parsing reports the offending field") {
  json doc = {{"germ", {{"type", "polynomial"}, {"coeffs", {1, -1, "oops"}}}}};
  try {
    parse_config(doc);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.field == "germ.coeffs[2]");
  }
  json bad = {{"germ", {{"type", "model"}, {"k", 0}, {"a", -1}}}};
  CHECK_THROWS_AS(parse_config(bad), InputError);
  CHECK_THROWS_AS(parse_config(json::array()), InputError);
}

TEST_CASE("overrides descend dotted keys") {
  json doc = {{"germ", {{"type", "model"}, {"k", 1}, {"a", -1}}}};
  apply_override(doc, "germ.k", "2");
  apply_override(doc, "tolerances.quad_tol", "1e-8");
  apply_override(doc, "out", "results");
  RunConfig c = parse_config(doc);
  CHECK(c.germ.k == 2);
  CHECK(c.tol.quad_tol == 1e-8);
  CHECK(c.out == "results");
  ParabolicGerm f = build_germ(c.germ);
  CHECK(f.k() == 2);
}

TEST_CASE("config hash depends on content only") {
  json a = json::parse(R"({"x0": 0.1, "germ": {"k": 1}})");
  json b = json::parse(R"({"germ": {"k": 1}, "x0": 0.1})");
  CHECK(config_hash(a) == config_hash(b));
  b["x0"] = 0.2;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(hex(0xabcull) == "0000000000000abc");
}

TEST_CASE("modulus JSON round trip") {
  EVModulus M;
  M.method = "horn";
  M.normalization = cd(0.1, 0.2);
  M.entries = {{1, 1, cd(0.04, 0.03), 1e-10, false}, {2, -1, cd(-0.04, 0.03), 2e-10, true}};
  EVModulus R = modulus_from_json(to_json(M));
  REQUIRE(R.entries.size() == 2);
  CHECK(R.method == "horn");
  CHECK(R.normalization == M.normalization);
  CHECK(R.entries[1].A == M.entries[1].A);
  CHECK(R.entries[1].below_floor);
  CHECK_THROWS_AS(modulus_from_json(json::parse(R"([{"j": 1}])")), InputError);
}

TEST_CASE("CSV output carries the config hash") {
  RunConfig c;
  c.source = {{"germ", 1}};
  std::ostringstream os;
  CsvWriter w(os, c, {"a", "b"});
  w.row({1.0, 0.25});
  std::string s = os.str();
  CHECK(s.rfind("# config_hash=" + hex(config_hash(c.source)), 0) == 0);
  CHECK(s.find("\na,b\n") != std::string::npos);
  CHECK_THROWS(w.row({1.0}));
}
