#include "willmore/groups.hpp"

#include <cmath>

namespace willmore {

namespace {

QMat diag(const std::vector<long>& d) {
  QMat r(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) r(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return r;
}

}  // namespace

GroupContext::GroupContext(int m_) : m(m_), n(2 * m_ - 2), dim(2 * m_ + 2) {
  if (m < 1) throw Error("GroupContext requires m >= 1");
  const int N = dim;
  std::vector<long> i1(N, 1), d(N, 1), d0(N, 1);
  i1[0] = -1;
  d[0] = d[1] = -1;
  d0[m] = d0[m + 1] = -1;
  I1 = diag(i1);
  D = diag(d);
  D0 = diag(d0);
  J = antidiag<GaussianRational>(N);
  Jm = antidiag<GaussianRational>(m);
  J2 = antidiag<GaussianRational>(2);

  const GaussianRational I = GaussianRational::i();
  Pt_s2 = QMat(N, N);
  Pt_s2(0, 0) = 1;
  Pt_s2(0, N - 1) = -1;
  Pt_s2(1, 0) = 1;
  Pt_s2(1, N - 1) = 1;
  for (int j = 1; j <= m; ++j) {
    Pt_s2(2 * j, j) = -I;
    Pt_s2(2 * j, N - 1 - j) = I;
    Pt_s2(2 * j + 1, j) = 1;
    Pt_s2(2 * j + 1, N - 1 - j) = 1;
  }

  Pt1 = QMat(N, N);
  Pt1(0, m) = 1;
  for (int k = 0; k < m; ++k) {
    Pt1(1 + k, k) = 1;
    Pt1(m + 1 + k, m + 2 + k) = 1;
  }
  Pt1(N - 1, m + 1) = 1;

  M_s2 = Pt_s2 * Pt1;

  // S0 = (P~ P~1)^-1 conj(P~ P~1); the sqrt(2) factors cancel. Inverse of M via M^-1 = J M^t I1.
  QMat minv_s2 = J * M_s2.transpose() * I1;  // equals 2 M^-1 / sqrt(2)
  QMat prod = minv_s2 * bar(M_s2);           // = 2 * S0
  S0 = prod.map([](const GaussianRational& x) { return x * GaussianRational(mpq_class(1, 2)); });

  Jhat = QMat(N, N);
  for (int i = 0; i < m; ++i) {
    Jhat(i, i) = 1;
    Jhat(m + 2 + i, m + 2 + i) = 1;
  }
  Jhat(m, m + 1) = 1;
  Jhat(m + 1, m) = 1;

  Q = QMat(N, N);
  Q(0, 0) = 1;
  Q(1, 1) = 1;
  for (int i = 0; i < m; ++i) {
    Q(2 + i, 2 + 2 * i) = 1;
    Q(2 + m + i, 2 + 2 * i + 1) = 1;
  }
}

CMat GroupContext::Pt() const { return to_cmat(Pt_s2) / std::sqrt(2.0); }
CMat GroupContext::M() const { return to_cmat(M_s2) / std::sqrt(2.0); }

QMat s0_display(int m) {
  QMat s(2 * m + 2, 2 * m + 2);
  s.set_block(0, m + 2, antidiag<GaussianRational>(m));
  s.set_block(m + 2, 0, antidiag<GaussianRational>(m));
  s(m, m) = 1;
  s(m + 1, m + 1) = 1;
  return s;
}

std::string to_string(Membership w) {
  switch (w) {
    case Membership::SO_1_2m1: return "SO(1,2m+1,C)";
    case Membership::G_2m2: return "G(2m+2,C)";
    case Membership::RealForm: return "real-form-via-tau";
    case Membership::KFixed: return "K-fixed-via-D0";
  }
  return "?";
}

MembershipReport check_membership(const GroupContext& g, const LoopMatrix<cplx>& f, Membership which,
                                  const std::vector<cplx>& lambdas, double tol) {
  MembershipReport rep;
  rep.which = which;
  rep.lambdas = lambdas;
  const CMat i1 = to_cmat(g.I1), j = to_cmat(g.J), s0 = to_cmat(g.S0), d0 = to_cmat(g.D0);
  for (cplx lam : lambdas) {
    CMat x = f.evaluate(0.0, lam);
    CMat r;
    switch (which) {
      case Membership::SO_1_2m1: r = x.transpose() * i1 * x - i1; break;
      case Membership::G_2m2: r = x.transpose() * j * x - j; break;
      // on |lambda| = 1 the twisted bar is plain conjugation of the value
      case Membership::RealForm: r = s0 * x.conjugate() * s0 - x; break;
      case Membership::KFixed: r = d0 * x * d0 - x; break;
    }
    double res = r.cwiseAbs().maxCoeff();
    rep.residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
    if (!(res <= tol)) rep.pass = false;
  }
  return rep;
}

}  // namespace willmore
