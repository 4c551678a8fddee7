#pragma once

// Invariant harness: runs the whole pipeline on sampled points of a disk and
// collects the worst residual of each check in a fixed catalog.

#include <cstdint>
#include <string>
#include <vector>

#include "willmore/surface.hpp"

namespace willmore {

struct SamplePlan {
  int samples = 50;
  double radius = 0.9;
  std::vector<cplx> lambdas = {cplx(1.0), cplx(0.0, 1.0)};
  std::uint64_t seed = 1;
  double tol_alg = 1e-10;  // identities evaluated exactly or in closed form
  double tol_fd = 1e-6;    // checks that use finite differences
  // Finite-difference checks skip samples this close to a singular radius: their error grows
  // like (h / distance)^4 from truncation and like cond(rho) from rounding.
  double fd_clearance = 0.05;
  bool timing = false;     // wall clock in the report breaks byte-for-byte determinism
};

enum class CheckKind { Algebraic, FiniteDifference };

struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::Algebraic;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct VerificationReport {
  std::string digest;
  int m = 0;
  SamplePlan plan;
  std::vector<CheckResult> checks;  // in catalog order
  std::vector<double> singular_radii;  // along theta = 0, up to twice the radius
  std::vector<cplx> skipped;           // samples rejected as singular or too close to it
  double seconds = 0.0;

  bool all_pass() const;
  const CheckResult& check(const std::string& name) const;
};

// names and kinds, in report order
const std::vector<std::pair<std::string, CheckKind>>& check_catalog();

// Thread count from WILLMORE_THREADS, else the hardware concurrency.
int worker_threads();

VerificationReport run_suite(const NormalizedPotential& p, const SamplePlan& plan = {});

// JSON with a fixed key order; doubles in shortest round-trip form
std::string to_json(const VerificationReport& r);

}  // namespace willmore
