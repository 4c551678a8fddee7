#pragma once

// The two shipped examples: their potentials, the closed-form pairs and the
// intermediate matrices and metrics as printed, all as exact data in (z, w = zbar).

#include "willmore/surface.hpp"

namespace willmore {

NormalizedPotential example_potential(int id);  // id 1 (m = 3) or 2 (m = 2)

// 1 - r^4/4 - 2r^6/9 for example 1, 1 - r^4/4 for example 2, with r^2 = z w
BiPoly varsigma(int id);

// closed-form (Y, Yhat) as an exact pair over varsigma
ExactPair closed_form_pair(int id);

struct PrintedFixtures {
  Matrix<BiPoly> fcheck, f, g, rho;
  RatMatrix rho_inv, usharp, u;
  Matrix<BiPoly> q;
  std::map<int, RatMatrix> middle;  // columns m+1, m+2 of F~ by lambda power
};

PrintedFixtures printed_fixtures(int id);

// printed |y_z|^2 (Which::Y) and |yhat_z|^2 as rational functions of r^2 = z w
RationalFn printed_metric(int id, Which w);

// printed example-1 metrics in the coordinate z~ = 1/z, as functions of z~ w~
RationalFn printed_branch_metric(Which w);

// the positive root of 8 s^3 + 9 s^2 - 36 = 0 (s = r^2) by Newton's method from a bracket, then r = sqrt(s)
double example1_singular_radius();

}  // namespace willmore
