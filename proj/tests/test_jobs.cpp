#include <doctest.h>

#include "config.hpp"
#include "error.hpp"
#include "jobs.hpp"

using namespace plasmon;
using json = nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Numerical;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("curve blocks") {
    CHECK(config::parse_curve(json::parse(R"({"kind":"ellipse","a":2,"b":1})")).kind_name() == "ellipse");
    CHECK(config::parse_curve(json::parse(R"({"kind":"fourier","cos":[1,0.2],"sin":[0.1]})")).kind_name() == "fourier");
    CHECK(kind_of([] { config::parse_curve(json::parse(R"({"kind":"ellipse","a":2,"b":1,"c":3})")); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { config::parse_curve(json::parse(R"({"kind":"square"})")); }) == ErrorKind::Config);
    CHECK(kind_of([] { config::parse_curve(json::parse(R"({"kind":"ellipse","a":"2","b":1})")); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { config::parse_curve(json::parse(R"({"kind":"circle","radius":-1})")); }) == ErrorKind::Config);
  }

  TEST_CASE("SH field round trip") {
    const json j = json::parse(R"({"L":3,"coeffs":[{"l":2,"m":0,"c":1.5},{"l":3,"m":-1,"c":-0.25}]})");
    const sphere::SHField f = config::parse_sh_field(j);
    CHECK(f(2, 0) == 1.5);
    CHECK(f(3, -1) == -0.25);
    CHECK(config::sh_field_json(f) == j);
    CHECK(kind_of([] { config::parse_sh_field(json::parse(R"({"L":1,"coeffs":[{"l":2,"m":0,"c":1}]})")); }) ==
          ErrorKind::Config);
  }
}

TEST_SUITE("jobs") {
  TEST_CASE("FNV-1a reference values") {
    CHECK(jobs::fnv1a_hex("") == "cbf29ce484222325");
    CHECK(jobs::fnv1a_hex("a") == "af63dc4c8601ec8c");
  }

  TEST_CASE("spectrum job is deterministic and scale invariant") {
    const json cfg = json::parse(R"({"curve":{"kind":"ellipse","a":2,"b":1},"N":64,"num_eigs":6})");
    const auto a = jobs::run_job("spectrum", cfg, {});
    const auto b = jobs::run_job("spectrum", cfg, {});
    CHECK(a.passed);
    CHECK(a.record.dump() == b.record.dump());
    CHECK(a.csv == b.csv);
    json scaled = cfg;
    scaled["scale"] = 2.0;
    const auto c = jobs::run_job("spectrum", scaled, {});
    const auto ea = a.record["outputs"]["eigenvalues"], ec = c.record["outputs"]["eigenvalues"];
    for (std::size_t i = 0; i < ea.size(); ++i) CHECK(ea[i].get<double>() == doctest::Approx(ec[i].get<double>()));
  }

  TEST_CASE("unknown keys are rejected") {
    CHECK(kind_of([] { jobs::run_job("spectrum", json::parse(R"({"curve":{"kind":"circle"},"Nx":4})"), {}); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] { jobs::run_job("bogus", json::object(), {}); }) == ErrorKind::Config);
    CHECK(kind_of([] {
            jobs::run_job("spectrum", json::parse(R"({"curve":{"kind":"circle"},"tolerances":{"x":1}})"), {});
          }) == ErrorKind::Config);
  }

  TEST_CASE("sphere perturbation job") {
    const json one = json::parse(R"({"geometry":"sphere","k":1,"shape":{"L":0,"coeffs":[{"l":0,"m":0,"c":3.5449077018110318}]}})");
    const auto r = jobs::run_job("perturb", one, {});
    CHECK(r.passed);
    CHECK(r.record["outputs"]["branches"].size() == 3);

    const json y20 = json::parse(R"({"geometry":"sphere","k":1,"shape":{"L":2,"coeffs":[{"l":2,"m":0,"c":1}]}})");
    const auto s = jobs::run_job("perturb", y20, {});
    CHECK(s.passed);
    const json& br = s.record["outputs"]["branches"];
    CHECK(br[0]["epsdot"].get<double>() == doctest::Approx(br[1]["epsdot"].get<double>()));

    CHECK(kind_of([] { jobs::run_job("perturb", json::parse(R"({"geometry":"sphere","k":0,"shape":{"L":0}})"), {}); }) ==
          ErrorKind::EInfinity);
  }

  TEST_CASE("dn-derivative zero shift") {
    const json cfg = json::parse(R"({"curve":{"kind":"ellipse","a":2,"b":1},"shape":{"cos":[0]},"N":32})");
    const auto r = jobs::run_job("dn-derivative", cfg, {});
    CHECK(r.passed);
    CHECK(r.record["checks"].size() == 2);
  }

  TEST_CASE("dn-derivative circle oracle") {
    const json cfg =
        json::parse(R"({"curve":{"kind":"circle","radius":1.5},"shape":{"cos":[0.5]},"N":64,"h_list":[]})");
    const auto r = jobs::run_job("dn-derivative", cfg, {});
    CHECK(r.passed);
    CHECK(r.record["outputs"]["results"][0]["oracle_error"].get<double>() < 1e-9);
  }
}
