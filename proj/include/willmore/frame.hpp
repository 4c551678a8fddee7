#pragma once

#include "willmore/potential.hpp"

namespace willmore {

// Double-precision copy of a polynomial matrix for fast repeated evaluation at (z, w).
class FloatPolyMatrix {
 public:
  FloatPolyMatrix() = default;
  explicit FloatPolyMatrix(const Matrix<BiPoly>& a);
  CMat operator()(cplx z, cplx w) const;
  int rows() const { return r_; }
  int cols() const { return c_; }

 private:
  struct Term {
    int dz, dw;
    cplx c;
  };
  int r_ = 0, c_ = 0, max_dz_ = 0, max_dw_ = 0;
  std::vector<std::vector<Term>> terms_;  // row-major entries
};

// H = I + lambda^-1 H1 + lambda^-2 H2 solving H_z = H lambda^-1 P(eta_{-1}), H(0) = I.
struct HolomorphicFrame {
  int m = 0;
  Matrix<BiPoly> fcheck;  // m x 2
  Matrix<BiPoly> f;       // m x 2, integral of fcheck from 0
  Matrix<BiPoly> g;       // m x m, minus the integral of f fcheck#
  LoopMatrix<BiPoly> H;   // (2m+2) square, window [-2, 0]
  FloatPolyMatrix f_fast, g_fast, fbar_fast, gbar_fast, fcheck_fast;

  CMat f_at(cplx z) const;
  CMat g_at(cplx z) const;
  // conjugate-coefficient polynomials evaluated at w; equals conj(f(z)) when w = conj(z)
  CMat fbar_at(cplx w) const;
  CMat gbar_at(cplx w) const;
  CMat fcheck_at(cplx z) const;
};

HolomorphicFrame integrate_frame(const NilpotentPotential& p);

// H_z - H lambda^-1 embed(fcheck), exact; zero for a correct frame
LoopMatrix<BiPoly> frame_ode_residual(const HolomorphicFrame& hf);

}  // namespace willmore
