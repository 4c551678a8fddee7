#pragma once

// Fixed Lie-theoretic data for SO(1,2m+1,C) and its image G(2m+2,C) under the
// isometry P(A) = (P~ P~1)^-1 A (P~ P~1).

#include <string>
#include <vector>

#include "willmore/loop.hpp"

namespace willmore {

using QMat = Matrix<GaussianRational>;

struct GroupContext {
  explicit GroupContext(int m);

  int m;
  int n;    // 2m - 2
  int dim;  // 2m + 2

  QMat I1;     // I_{1,2m+1} = diag(-1, 1, ..., 1)
  QMat D;      // diag(-I_2, I_{2m}); sigma(A) = D A D^-1
  QMat J;      // anti-diagonal J_{2m+2}
  QMat Jm, J2;
  QMat Pt1;    // P~1, a permutation
  QMat Pt_s2;  // sqrt(2) * P~, Gaussian-integer entries
  QMat M_s2;   // sqrt(2) * P~ P~1
  QMat S0;     // anti-diagonal corner blocks J_m, centre I_2
  QMat Jhat;   // diag(I_m, J_2, I_m)
  QMat D0;     // diag(I_m, -I_2, I_m)
  QMat Q;      // diag(I_2, Q_2), Q_2 interleaving the columns (b, ib) -> (b1, ib1, b2, ib2, ...)

  CMat Pt() const;  // P~ itself, 1/sqrt(2) normalisation
  CMat M() const;   // P~ P~1
};

// S0 as printed: ((0,0,J_m),(0,I_2,0),(J_m,0,0)), used to cross-check the product definition
QMat s0_display(int m);

template <class S>
Matrix<S> iso_P(const GroupContext& g, const Matrix<S>& a) {
  if (a.rows() != g.dim || a.cols() != g.dim) throw DimensionMismatch("iso_P expects a (2m+2)-square matrix");
  // M^-1 = J M^t I1, and M = M_s2 / sqrt(2), so the sqrt(2) factors combine to 1/2
  Matrix<S> left = constant_matrix<S>(g.J * g.M_s2.transpose() * g.I1);
  return from_constant<S>(GaussianRational(mpq_class(1, 2))) * (left * a * constant_matrix<S>(g.M_s2));
}

template <class S>
Matrix<S> iso_P_inv(const GroupContext& g, const Matrix<S>& b) {
  if (b.rows() != g.dim || b.cols() != g.dim) throw DimensionMismatch("iso_P_inv expects a (2m+2)-square matrix");
  Matrix<S> right = constant_matrix<S>(g.J * g.M_s2.transpose() * g.I1);
  return from_constant<S>(GaussianRational(mpq_class(1, 2))) * (constant_matrix<S>(g.M_s2) * b * right);
}

template <class S>
LoopMatrix<S> iso_P(const GroupContext& g, const LoopMatrix<S>& a) {
  return a.map_coeffs([&](const Matrix<S>& c) { return iso_P(g, c); });
}

template <class S>
LoopMatrix<S> iso_P_inv(const GroupContext& g, const LoopMatrix<S>& b) {
  return b.map_coeffs([&](const Matrix<S>& c) { return iso_P_inv(g, c); });
}

// Entry-by-entry evaluation of the same map from the four index-formula blocks.
template <class S>
Matrix<S> iso_P_indexwise(const GroupContext& g, const Matrix<S>& A) {
  const int m = g.m, N = g.dim;
  if (A.rows() != N || A.cols() != N) throw DimensionMismatch("iso_P_indexwise expects a (2m+2)-square matrix");
  const S I = from_constant<S>(GaussianRational::i());
  const S half = from_constant<S>(GaussianRational(mpq_class(1, 2)));
  auto a = [&](int i, int j) -> const S& { return A(i - 1, j - 1); };
  Matrix<S> B(N, N);
  for (int j = 1; j <= N; ++j) {
    for (int k = 1; k <= N; ++k) {
      const int jh = 2 * m + 3 - j, kh = 2 * m + 3 - k;
      S v;
      if (j <= m) {
        const int r1 = 2 * j + 1, r2 = 2 * j + 2;
        if (k <= m)
          v = a(r1, 2 * k + 1) - I * a(r2, 2 * k + 1) + I * a(r1, 2 * k + 2) + a(r2, 2 * k + 2);
        else if (k == m + 1)
          v = I * a(r1, 1) + a(r2, 1) + I * a(r1, 2) + a(r2, 2);
        else if (k == m + 2)
          v = -(I * a(r1, 1)) - a(r2, 1) + I * a(r1, 2) + a(r2, 2);
        else
          v = -a(r1, 2 * kh + 1) + I * a(r2, 2 * kh + 1) + I * a(r1, 2 * kh + 2) + a(r2, 2 * kh + 2);
      } else if (j == m + 1) {
        if (k <= m)
          v = -(I * a(1, 2 * k + 1)) - I * a(2, 2 * k + 1) + a(1, 2 * k + 2) + a(2, 2 * k + 2);
        else if (k == m + 1)
          v = a(1, 1) + a(2, 1) + a(1, 2) + a(2, 2);
        else if (k == m + 2)
          v = -a(1, 1) - a(2, 1) + a(1, 2) + a(2, 2);
        else
          v = I * a(1, 2 * kh + 1) + I * a(2, 2 * kh + 1) + a(1, 2 * kh + 2) + a(2, 2 * kh + 2);
      } else if (j == m + 2) {
        if (k <= m)
          v = I * a(1, 2 * k + 1) - I * a(2, 2 * k + 1) - a(1, 2 * k + 2) + a(2, 2 * k + 2);
        else if (k == m + 1)
          v = -a(1, 1) + a(2, 1) - a(1, 2) + a(2, 2);
        else if (k == m + 2)
          v = a(1, 1) - a(2, 1) - a(1, 2) + a(2, 2);
        else
          v = -(I * a(1, 2 * kh + 1)) + I * a(2, 2 * kh + 1) - a(1, 2 * kh + 2) + a(2, 2 * kh + 2);
      } else {
        const int r1 = 2 * jh + 1, r2 = 2 * jh + 2;
        if (k <= m)
          v = -a(r1, 2 * k + 1) - I * a(r2, 2 * k + 1) - I * a(r1, 2 * k + 2) + a(r2, 2 * k + 2);
        else if (k == m + 1)
          v = -(I * a(r1, 1)) + a(r2, 1) - I * a(r1, 2) + a(r2, 2);
        else if (k == m + 2)
          v = I * a(r1, 1) - a(r2, 1) - I * a(r1, 2) + a(r2, 2);
        else
          v = a(r1, 2 * kh + 1) + I * a(r2, 2 * kh + 1) - I * a(r1, 2 * kh + 2) + a(r2, 2 * kh + 2);
      }
      B(j - 1, k - 1) = half * v;
    }
  }
  return B;
}

template <class S>
LoopMatrix<S> iso_P_indexwise(const GroupContext& g, const LoopMatrix<S>& a) {
  return a.map_coeffs([&](const Matrix<S>& c) { return iso_P_indexwise(g, c); });
}

// tau(F) = S0 F-bar S0^-1 with bar acting as lambda^k -> lambda^-k on coefficients
template <class S>
LoopMatrix<S> tau(const GroupContext& g, const LoopMatrix<S>& f) {
  if (f.rows() != g.dim || f.cols() != g.dim) throw DimensionMismatch("tau expects a (2m+2)-square loop");
  Matrix<S> s0 = constant_matrix<S>(g.S0);
  return bar(f).map_coeffs([&](const Matrix<S>& c) { return s0 * c * s0; });
}

// tau(F)^-1 = Jhat F-bar^t Jhat^-1, valid for F with F^t J F = J
template <class S>
LoopMatrix<S> tau_inv_of(const GroupContext& g, const LoopMatrix<S>& f) {
  if (f.rows() != g.dim || f.cols() != g.dim) throw DimensionMismatch("tau_inv_of expects a (2m+2)-square loop");
  Matrix<S> jh = constant_matrix<S>(g.Jhat);
  return conj_transpose(f).map_coeffs([&](const Matrix<S>& c) { return jh * c * jh; });
}

enum class Membership { SO_1_2m1, G_2m2, RealForm, KFixed };
std::string to_string(Membership w);

struct MembershipReport {
  Membership which;
  bool pass = true;
  double max_residual = 0.0;
  std::vector<cplx> lambdas;
  std::vector<double> residuals;  // one per lambda sample
};

// Float check at unit-circle lambda samples; never throws on failure.
MembershipReport check_membership(const GroupContext& g, const LoopMatrix<cplx>& f, Membership which,
                                  const std::vector<cplx>& lambdas, double tol = 1e-10);

// Exact residual loop (zero iff the identity holds). RealForm and KFixed compare against F itself.
template <class S>
LoopMatrix<S> membership_residual(const GroupContext& g, const LoopMatrix<S>& f, Membership which) {
  switch (which) {
    case Membership::SO_1_2m1: {
      LoopMatrix<S> i1(constant_matrix<S>(g.I1));
      return f.transpose() * i1 * f - i1;
    }
    case Membership::G_2m2: {
      LoopMatrix<S> j(constant_matrix<S>(g.J));
      return f.transpose() * j * f - j;
    }
    case Membership::RealForm:
      return tau(g, f) - f;
    case Membership::KFixed: {
      Matrix<S> d0 = constant_matrix<S>(g.D0);
      return f.map_coeffs([&](const Matrix<S>& c) { return d0 * c * d0; }) - f;
    }
  }
  return f;
}

}  // namespace willmore
