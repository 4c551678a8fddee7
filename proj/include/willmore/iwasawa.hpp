#pragma once

// Explicit Iwasawa splitting of the nilpotent frame: tau(H)^-1 H = W W0 tau(W)^-1,
// W0 = tau(L)^-1 L, and the extended frame F~ = H tau(W) L^-1.

#include <array>
#include <map>
#include <vector>

#include "willmore/frame.hpp"

namespace willmore {

struct IwasawaOptions {
  double pd_floor = 1e-12;      // smallest eigenvalue of rho, relative to max(1, |rho|)
  double residual_tol = 1e-10;  // (1B) and the shape of q
};

struct IwasawaWitness {
  int m = 0;
  cplx z;
  CMat f, g;  // values at z
  CMat rho, usharp, u, v, q, a;
  CMat l1, l0, l4;  // a = l1^H l1, rho = l4^H l4, q = J2 l0^H J2 l0
  // equations 1A..1F, each divided by max(1, largest term)
  std::array<double, 6> residual{};
  double factor_residual = 0.0;  // worst of the three factorization identities
};

IwasawaWitness solve_iwasawa(const HolomorphicFrame& hf, cplx z, const IwasawaOptions& opt = {});

struct ExtendedFrame {
  IwasawaWitness witness;
  LoopMatrix<cplx> Ft;  // coefficients at the sample z, window inside [-2, 2]
  double reconstruction_residual = 0.0;  // |F~ L - H tau(W)|
};

LoopMatrix<cplx> holomorphic_frame_at(const HolomorphicFrame& hf, cplx z);
LoopMatrix<cplx> w_factor(const IwasawaWitness& w);
ExtendedFrame assemble_frame(const GroupContext& g, const HolomorphicFrame& hf, const IwasawaWitness& w);
ExtendedFrame extended_frame(const GroupContext& g, const HolomorphicFrame& hf, cplx z,
                             const IwasawaOptions& opt = {});

// (I + N)^-1 = I - N + N^2 - ... for nilpotent N; exact in lambda
LoopMatrix<cplx> unipotent_inverse(const LoopMatrix<cplx>& x);

// Middle columns m+1, m+2 of F~ at lambda, continued analytically to independent (z, w);
// w = conj(z) gives the frame itself. Only l0 is needed here.
CMat middle_columns_zw(const HolomorphicFrame& hf, cplx z, cplx w, cplx lambda);

// dz-part of F~^-1 dF~ by central differences with one Richardson step.
struct MaurerCartanSample {
  CMat alpha_m1, alpha_0;        // coefficients of lambda^-1 and lambda^0
  double leakage = 0.0;          // largest coefficient outside powers -1, 0
  double alpha1_formula = 0.0;   // alpha_m1 against l1 f' l0^-1 and -l0 f'# l4^-1
  double alpha0_offdiag = 0.0;   // part of alpha_0 not commuting with D0
};

LoopMatrix<cplx> maurer_cartan_loop(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h = 1e-3);
MaurerCartanSample maurer_cartan(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h = 1e-3);

// Residual of d alpha_lambda + [alpha_lambda ^ alpha_lambda]/2 built from the lambda = 1 form split by D0,
// one value per requested lambda. h is the outer difference step, h_inner the step of the forms.
std::vector<double> flatness(const GroupContext& g, const HolomorphicFrame& hf, cplx z,
                             const std::vector<cplx>& lambdas, double h = 1e-4, double h_inner = 1e-3);

// |B1 B1^t| for the B1 block of the pulled-back lambda^-1 form, relative to max(1, |B1|^2)
double pullback_halfisotropy(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h = 1e-3);

// ---------------------------------------------------------------- exact path

// Polynomial matrix over a common polynomial denominator.
struct RatMatrix {
  Matrix<BiPoly> num;
  BiPoly den = 1;

  RatMatrix() = default;
  RatMatrix(Matrix<BiPoly> n, BiPoly d = 1) : num(std::move(n)), den(std::move(d)) {}  // NOLINT
  int rows() const { return num.rows(); }
  int cols() const { return num.cols(); }
  RationalFn entry(int i, int j) const { return RationalFn(num(i, j), den); }
  // divides through by factor when it divides every entry and the denominator
  RatMatrix cancel(const BiPoly& factor) const;
  bool is_zero() const { return num.is_zero(); }
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a);
bool operator==(const RatMatrix& a, const RatMatrix& b);
RatMatrix bar(const RatMatrix& a);
RatMatrix sharp(const RatMatrix& a);
RatMatrix transpose(const RatMatrix& a);

// rho = I + (fbar#)^t J2 f# + gbar^t g as a polynomial matrix in (z, w)
Matrix<BiPoly> rho_polynomial(const HolomorphicFrame& hf);

BiPoly determinant(const Matrix<BiPoly>& a);
Matrix<BiPoly> adjugate(const Matrix<BiPoly>& a);

struct ExactWitness {
  int m = 0;
  Matrix<BiPoly> f, g, rho;
  BiPoly det;  // det rho
  Matrix<BiPoly> adj;
  RatMatrix rho_inv, usharp, u, v, q, a;
  bool q_is_identity = false;
  std::array<bool, 6> holds{};  // 1A..1F as identities
  bool hermitian = false;       // rho and a equal their conjugate transposes

  // Columns m+1, m+2 of F~ by lambda power (-1, 0, 1) over the common denominator bar(det).
  // Requires q = I so that l0 = I.
  std::map<int, Matrix<BiPoly>> middle_num() const;
  BiPoly middle_den() const { return bar(det); }
  LoopMatrix<RationalFn> middle_columns() const;
};

ExactWitness solve_iwasawa_exact(const HolomorphicFrame& hf);

}  // namespace willmore
