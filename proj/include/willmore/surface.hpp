#pragma once

// The adjoint pair (Y, Yhat) read off the middle columns of the extended frame,
// their projections to S^{2m}, and geometric evaluators on them.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "willmore/iwasawa.hpp"

namespace willmore {

enum class Which { Y, Yhat };

// Minkowski form of signature (1, 2m+1), bilinear (no conjugation)
cplx lorentz(const CVec& a, const CVec& b);

struct PairValue {
  CVec Y, Yhat;
};

// mid holds columns m+1, m+2 of F~ (rows 1..2m+2); Y comes from column m+2, Yhat from column m+1
PairValue extract_from_columns(int m, const CMat& mid);
PairValue extract_pair(const ExtendedFrame& e, cplx lambda);
// lambda-power coefficients of the pair
std::map<int, PairValue> extract_pair_loop(const ExtendedFrame& e);
PairValue pair_at(const GroupContext& g, const HolomorphicFrame& hf, cplx z, cplx lambda);
// analytic continuation in (z, w); w = conj(z) gives pair_at
PairValue pair_zw(const HolomorphicFrame& hf, cplx z, cplx w, cplx lambda);

// y = (Y_1, ..., Y_{2m+1}) / Y_0 as a real point of S^{2m}
Eigen::VectorXd project_to_sphere(const CVec& Y);

// Exact pair: Y = (sqrt(2)/2) sum_k lambda^k num[Y][k] / den, likewise for Yhat.
struct ExactPair {
  int m = 0;
  std::array<std::map<int, std::vector<BiPoly>>, 2> num;
  BiPoly den = 1;

  const std::map<int, std::vector<BiPoly>>& of(Which w) const { return num[static_cast<int>(w)]; }
  // numerators of sqrt(2) Y at a Gaussian-rational lambda on the unit circle (lambda^-1 = conj lambda)
  std::vector<BiPoly> numerators(Which w, const GaussianRational& lambda) const;
  CVec evaluate(Which w, cplx z, cplx lambda) const;
};

ExactPair exact_pair_from(const ExactWitness& x);

// |y_z|^2 = sum_i y_{i,z} y_{i,zbar} with y_i = N_i / N_0, as an exact rational function
RationalFn exact_metric(const ExactPair& p, Which w, const GaussianRational& lambda);

struct SurfacePair {
  int m = 0;
  cplx lambda = 1.0;
  std::shared_ptr<const HolomorphicFrame> frame;
  std::optional<ExactPair> exact;

  PairValue at(const GroupContext& g, cplx z) const { return pair_at(g, *frame, z, lambda); }
};

// The exact pair is attached when requested, q = I identically, and rho has total degree <= max_degree.
SurfacePair make_surface_pair(const HolomorphicFrame& hf, cplx lambda, bool try_exact = true, int max_degree = 12);

// |y_z|^2 by differences of the continued pair: holomorphic in z at fixed w and vice versa
double induced_metric(const HolomorphicFrame& hf, cplx z, cplx lambda, Which w, double h = 1e-3);

struct IsotropyReport {
  int max_order = 0;
  double max_residual = 0.0;  // max over samples and 1 <= j, l <= max_order, relative to |Y^(j)| |Y^(l)|
  double conformality = 0.0;  // the j = l = 1 entry
  int samples = 0;
};

// j-th z-derivative of Y or Yhat at fixed w by central stencils with one Richardson step
CVec pair_derivative(const HolomorphicFrame& hf, cplx z, cplx lambda, Which w, int j, double h);
IsotropyReport isotropy_check(const HolomorphicFrame& hf, Which w, int max_order, const std::vector<cplx>& zs,
                              cplx lambda, double h = 1e-2);
// formal derivatives of the exact pair; true when every inner product vanishes identically
bool exact_isotropy(const ExactPair& p, Which w, int max_order, const GaussianRational& lambda);

struct SingularRadius {
  double r = 0.0;
  double lo = 0.0, hi = 0.0;  // bracketing interval
};

// radii along z = r e^{i theta}, r0 <= r <= r1, where det rho vanishes
std::vector<SingularRadius> degeneracy_scan(const HolomorphicFrame& hf, double theta, double r0, double r1,
                                            int steps = 4000);

struct BranchLimits {
  GaussianRational y, yhat;  // limits of |y_z~|^2 and |yhat_z~|^2 at z~ = 1/z = 0
  bool y_branch = false, yhat_branch = false;  // limit zero means a branch point
};

// metric rewritten in z~ = 1/z: M(1/z~, 1/w~) / (z~ w~)^2
RationalFn metric_at_infinity(const RationalFn& metric);
// value at z~ = w~ = 0; throws Error if it diverges or depends on the direction
GaussianRational limit_at_origin(const RationalFn& x);
BranchLimits branch_analysis(const SurfacePair& p, const GaussianRational& lambda = 1);

// distance between the lines spanned by a and b after normalization and phase alignment
double projective_distance(const CVec& a, const CVec& b);

}  // namespace willmore
