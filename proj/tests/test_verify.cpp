#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include <json.hpp>

#include "covhyp/verify.hpp"

using namespace covhyp;

namespace {

const CheckResult* find_check(const VerifyReport& rep, const std::string& name) {
  for (const CheckResult& c : rep.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("every shipped system passes its full suite") {
  const SystemParams p;
  for (const auto& name : catalog_names()) {
    const SystemDescriptor d = make_descriptor(name, p);
    const VerifyReport rep = run_suite(d, 42, 60);
    INFO("system ", name);
    for (const CheckResult& c : rep.checks) {
      INFO("check ", c.name, " residual ", c.max_residual, " tol ", c.tolerance);
      CHECK(c.pass);
      CHECK(c.samples >= 1);
    }
    CHECK(rep.all_pass);
    CHECK(rep.system == name);
    CHECK(rep.seed == 42);
    CHECK(rep.n_samples == 60);
  }
}

TEST_CASE("the suite passes away from unit parameters") {
  // Non-unit scales expose any identity written for rho_star = a = c = 1.
  SystemParams p;
  p.rho_star = 2.0;
  p.sigma_bar = 0.7;
  p.a = 1.3;
  p.c = 0.9;
  for (const auto& name : catalog_names()) {
    const SystemDescriptor d = make_descriptor(name, p);
    const VerifyReport rep = run_suite(d, 42, 40);
    for (const CheckResult& c : rep.checks) {
      INFO("system ", name, " check ", c.name, " residual ", c.max_residual);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("checks are sorted by name and cover the core identities") {
  const SystemDescriptor d = make_descriptor("lorentz-hyperbolic", SystemParams{});
  const VerifyReport rep = run_suite(d, 7, 25);
  CHECK(std::is_sorted(rep.checks.begin(), rep.checks.end(),
                       [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; }));
  for (const char* required : {"covariance", "compatibility", "entropy_gradient", "hessian_fd",
                               "jacobian_determinant", "convexity_positive", "round_trip",
                               "bracket_endpoints", "flux_closed_form"}) {
    INFO("missing check ", required);
    CHECK(find_check(rep, required) != nullptr);
  }
  // The bisection bracket check only applies to the root-solve projection.
  const SystemDescriptor c = make_descriptor("circular-elliptic", SystemParams{});
  const VerifyReport crep = run_suite(c, 7, 25);
  CHECK(find_check(crep, "bracket_endpoints") == nullptr);
  CHECK(find_check(crep, "chart_exit_detection") != nullptr);
}

TEST_CASE("reports are byte-identical across repeated runs") {
  const SystemDescriptor d = make_descriptor("circular-elliptic", SystemParams{});
  const VerifyReport a = run_suite(d, 123, 40);
  const VerifyReport b = run_suite(d, 123, 40);
  CHECK(a.text() == b.text());
  CHECK(a.json() == b.json());
  // A different seed samples different points.
  const VerifyReport c = run_suite(d, 124, 40);
  CHECK(a.text() != c.text());
}

TEST_CASE("the flux fault fixture is caught by the structural checks") {
  SystemDescriptor d = make_descriptor("circular-elliptic", SystemParams{});
  d.system = d.system.with_flux_fault(1.01);
  const VerifyReport rep = run_suite(d, 42, 60);
  CHECK_FALSE(rep.all_pass);
  CHECK(rep.flux_fault == 1.01);
  const CheckResult* cov = find_check(rep, "covariance");
  REQUIRE(cov != nullptr);
  CHECK_FALSE(cov->pass);
  CHECK(cov->max_residual > 1e-3);
  const CheckResult* comp = find_check(rep, "compatibility");
  REQUIRE(comp != nullptr);
  CHECK_FALSE(comp->pass);
  // The report calls out the fixture.
  bool noted = false;
  for (const auto& n : rep.notes) noted = noted || n.find("fault") != std::string::npos;
  CHECK(noted);
  CHECK(rep.text().find("FAIL") != std::string::npos);
}

TEST_CASE("sample count is validated") {
  const SystemDescriptor d = make_descriptor("circular-elliptic", SystemParams{});
  CHECK_THROWS_AS(run_suite(d, 42, 0), InvalidParameter);
  CHECK_THROWS_AS(run_suite(d, 42, -5), InvalidParameter);
}

TEST_CASE("text and json reports carry the same verdicts") {
  const SystemDescriptor d = make_descriptor("galileo-hyperbolic", SystemParams{});
  const VerifyReport rep = run_suite(d, 42, 30);

  const std::string text = rep.text();
  CHECK(text.find("galileo-hyperbolic") != std::string::npos);
  CHECK(text.find("[PASS]") != std::string::npos);
  CHECK(text.find("overall: PASS") != std::string::npos);

  const nlohmann::json j = nlohmann::json::parse(rep.json());
  CHECK(j.at("system") == "galileo-hyperbolic");
  CHECK(j.at("seed") == 42);
  CHECK(j.at("n_samples") == 30);
  CHECK(j.at("all_pass") == true);
  CHECK(j.at("flux_fault") == 1.0);
  REQUIRE(j.at("checks").is_array());
  CHECK(j.at("checks").size() == rep.checks.size());
  std::set<std::string> keys;
  for (const auto& c : j.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("samples"));
    CHECK(c.contains("max_residual"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("pass"));
    keys.insert(c.at("name").get<std::string>());
  }
  CHECK(keys.size() == rep.checks.size());  // check names are unique
  CHECK(j.at("params").at("rho_star") == 1.0);
}
