#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>

#include "willmore/closed_form.hpp"
#include "willmore/verify.hpp"

using namespace willmore;

namespace {

void show_failures(const VerificationReport& r) {
  for (const CheckResult& c : r.checks)
    if (!c.pass) MESSAGE(c.name << " residual " << c.max_residual << " tol " << c.tolerance);
}

}  // namespace

TEST_CASE("the catalog appears exactly once and in order") {
  const auto& cat = check_catalog();
  std::set<std::string> names;
  for (const auto& [n, k] : cat) names.insert(n);
  CHECK(names.size() == cat.size());
  CHECK(cat.size() == 22);
  SamplePlan plan;
  plan.samples = 3;
  const VerificationReport r = run_suite(example_potential(2), plan);
  REQUIRE(r.checks.size() == cat.size());
  for (std::size_t k = 0; k < cat.size(); ++k) CHECK(r.checks[k].name == cat[k].first);
  CHECK_THROWS_AS(r.check("no_such_check"), Error);
}

TEST_CASE("example 1, 50 samples in the disk of radius 0.9, lambda in {1, i}") {
  SamplePlan plan;
  plan.samples = 50;
  plan.radius = 0.9;
  const VerificationReport r = run_suite(example_potential(1), plan);
  show_failures(r);
  CHECK(r.all_pass());
  CHECK(r.check("light_cone").samples + static_cast<int>(r.skipped.size()) == 50);
  CHECK(r.check("uniton_bound").max_residual == 0.0);
  CHECK(r.check("bhat_isotropy").max_residual == 0.0);
  CHECK(r.check("frame_ode").max_residual == 0.0);
}

TEST_CASE("example 2 approaching the singular circle") {
  SamplePlan plan;
  plan.samples = 40;
  plan.radius = 1.3;
  const VerificationReport r = run_suite(example_potential(2), plan);
  show_failures(r);
  CHECK(r.all_pass());
  REQUIRE(r.singular_radii.size() == 1);
  CHECK(std::abs(r.singular_radii[0] - std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("zero potential passes trivially") {
  SamplePlan plan;
  plan.samples = 10;
  const VerificationReport r = run_suite(make_potential({{}, {}}, {{}, {}}), plan);
  CHECK(r.all_pass());
  CHECK(r.singular_radii.empty());
  CHECK(r.skipped.empty());
  for (const CheckResult& c : r.checks) CHECK(c.max_residual < 1e-12);
}

TEST_CASE("a broken pairing fails the half-isotropy check of B1") {
  NormalizedPotential p = example_potential(2);
  p.h_partner = std::vector<BiPoly>{BiPoly(1), BiPoly(1)};
  SamplePlan plan;
  plan.samples = 5;
  const VerificationReport r = run_suite(p, plan);
  CHECK(!r.all_pass());
  CHECK(!r.check("bhat_isotropy").pass);
  CHECK(r.check("bhat_isotropy").max_residual > 0.1);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  SamplePlan plan;
  plan.samples = 12;
  plan.seed = 7;
  ::setenv("WILLMORE_THREADS", "1", 1);
  CHECK(worker_threads() == 1);
  const std::string a = to_json(run_suite(example_potential(1), plan));
  ::setenv("WILLMORE_THREADS", "4", 1);
  const std::string b = to_json(run_suite(example_potential(1), plan));
  ::unsetenv("WILLMORE_THREADS");
  const std::string c = to_json(run_suite(example_potential(1), plan));
  CHECK(a == b);
  CHECK(a == c);
  plan.seed = 8;
  CHECK(to_json(run_suite(example_potential(1), plan)) != a);
  // wall clock appears only on request
  CHECK(a.find("timing_seconds") == std::string::npos);
  plan.timing = true;
  CHECK(to_json(run_suite(example_potential(1), plan)).find("timing_seconds") != std::string::npos);
  // key order is fixed
  CHECK(a.find("\"schema\"") < a.find("\"digest\""));
  CHECK(a.find("\"digest\"") < a.find("\"checks\""));
}

TEST_CASE("finite-difference checks keep clear of a singular circle the disk crosses") {
  // m = 1, h = 1: rho degenerates on |z| = 1
  SamplePlan plan;
  plan.radius = 2.0;
  const VerificationReport r = run_suite(make_potential({{1}}, {{}}), plan);
  show_failures(r);
  CHECK(r.all_pass());
  REQUIRE(r.singular_radii.size() == 1);
  CHECK(std::abs(r.singular_radii[0] - 1.0) < 1e-8);
  const int alg = r.check("light_cone").samples, fd = r.check("maurer_cartan_flatness").samples;
  CHECK(fd < alg);
  CHECK(fd > 0);
  for (const auto& [name, kind] : check_catalog())
    CHECK(r.check(name).samples == (kind == CheckKind::FiniteDifference ? fd : alg));
}
