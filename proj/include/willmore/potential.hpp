#pragma once

#include <optional>
#include <string>
#include <vector>

#include "willmore/groups.hpp"

namespace willmore {

// eta = lambda^-1 ((0, B1), (-B1^t I_{1,1}, 0)) dz with
// B1 = (h_1, i h_1, ..., h_m, i h_m ; hh_1, i hh_1, ..., hh_m, i hh_m).
struct NormalizedPotential {
  int m = 0;
  std::vector<BiPoly> h;     // polynomials in z
  std::vector<BiPoly> hhat;
  // Second column of each B1 pair. Absent means i*h (the valid normalized form);
  // present only when a file spells B1 out column by column.
  std::optional<std::vector<BiPoly>> h_partner;
  std::optional<std::vector<BiPoly>> hhat_partner;

  Matrix<BiPoly> bhat1() const;       // 2 x 2m
  Matrix<BiPoly> eta_minus1() const;  // (2m+2) square, so(1,2m+1) side
  LoopMatrix<BiPoly> eta() const;     // eta_minus1 at lambda^-1
  Matrix<BiPoly> pairing() const;     // B1 B1^t, identically zero for a valid potential
  bool pairing_holds() const { return pairing().is_zero(); }
  int max_degree() const;
  std::string canonical() const;
  std::string digest() const;  // 64-bit FNV-1a of canonical(), hex
};

NormalizedPotential make_potential(const std::vector<std::vector<GaussianRational>>& h,
                                   const std::vector<std::vector<GaussianRational>>& hhat);

struct NilpotentPotential {
  Matrix<BiPoly> fcheck;  // m x 2
  int m() const { return fcheck.rows(); }
  // ((0, f, 0), (0, 0, -f#), (0, 0, 0)) with block sizes m, 2, m
  Matrix<BiPoly> embed() const;
};

NilpotentPotential to_nilpotent(const NormalizedPotential& p);

// Q must be fixed by sigma (block diagonal 2 | 2m) and preserve I_{1,2m+1}.
bool in_K(const GroupContext& g, const QMat& q);

template <class S>
LoopMatrix<S> conjugate_potential(const GroupContext& g, const LoopMatrix<S>& eta, const QMat& q) {
  if (!in_K(g, q)) throw QNotInK("conjugating matrix is not in the fixed-point group of sigma");
  // Q^-1 = I1 Q^t I1 for Q preserving I1
  Matrix<S> qs = constant_matrix<S>(q), qi = constant_matrix<S>(g.I1 * q.transpose() * g.I1);
  return eta.map_coeffs([&](const Matrix<S>& c) { return qs * c * qi; });
}

// residual of X^t I1 + I1 X (zero iff X lies in so(1,2m+1))
template <class S>
Matrix<S> so_residual(const GroupContext& g, const Matrix<S>& x) {
  Matrix<S> i1 = constant_matrix<S>(g.I1);
  return x.transpose() * i1 + i1 * x;
}

enum class ShapeTag { Constant, DualPair, EuclideanMinimal, SphericalMinimal, HyperbolicMinimal, Generic };
std::string to_string(ShapeTag t);

struct Classification {
  int rank = 0;
  ShapeTag tag = ShapeTag::Constant;
  std::string note;
};

// rank of B1 over the field of meromorphic functions, decided by exact 2x2 minors
Classification rank_and_classify(const NormalizedPotential& p);

struct WuOptions {
  int steps = 128;     // RK4 steps along the segment 0 -> z
  double tol = 1e-10;  // allowed change when the step is halved
};

// eta_{-1}(z) = F0 delta1 F0^-1 where F0^-1 dF0 = delta0 dz, F0(0) = I.
// delta0 holds polynomials in z; constant delta0 uses the matrix exponential.
std::vector<CMat> wu_normalized_potential(const Matrix<BiPoly>& delta0, const CMat& delta1,
                                          const std::vector<cplx>& z_samples, const WuOptions& opt = {});

}  // namespace willmore
