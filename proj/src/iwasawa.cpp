#include "willmore/iwasawa.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace willmore {

namespace {

double mx(const CMat& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

double loop_max(const LoopMatrix<cplx>& x) {
  double r = 0.0;
  for (const auto& [k, c] : x.coeffs()) r = std::max(r, mx(to_cmat(c)));
  return r;
}

// |r| / max(1, largest term)
double relative(const CMat& r, std::initializer_list<double> terms) {
  double s = 1.0;
  for (double t : terms) s = std::max(s, t);
  return mx(r) / s;
}

LoopMatrix<cplx> scaled(const LoopMatrix<cplx>& x, cplx s) {
  return x.map_coeffs([&](const Matrix<cplx>& c) { return s * c; });
}

CMat block_diag(const CMat& a, const CMat& b, const CMat& c) {
  const auto n = a.rows() + b.rows() + c.rows();
  CMat r = CMat::Zero(n, n);
  r.block(0, 0, a.rows(), a.cols()) = a;
  r.block(a.rows(), a.rows(), b.rows(), b.cols()) = b;
  r.block(a.rows() + b.rows(), a.rows() + b.rows(), c.rows(), c.cols()) = c;
  return r;
}

// unipotent block-triangular loop with lambda^-1 blocks (x, -x#) and lambda^-2 block y
LoopMatrix<cplx> unipotent_frame(int m, const CMat& x, const CMat& y) {
  const int N = 2 * m + 2;
  CMat c1 = CMat::Zero(N, N), c2 = CMat::Zero(N, N);
  c1.block(0, m, m, 2) = x;
  c1.block(m, m + 2, 2, m) = -sharp(x);
  c2.block(0, m + 2, m, m) = y;
  LoopMatrix<cplx> r = LoopMatrix<cplx>::identity(N);
  r.set_coeff(-1, from_cmat(c1));
  r.set_coeff(-2, from_cmat(c2));
  return r;
}

CMat upper_triangular_inverse(const CMat& u) {
  return u.triangularView<Eigen::Upper>().solve(CMat::Identity(u.rows(), u.cols()));
}

}  // namespace

// The solve runs in extended precision: near the singular locus rho is ill conditioned and
// the residuals lose about log10(cond rho) digits.
using LCplx = std::complex<long double>;
using LMat = Eigen::Matrix<LCplx, Eigen::Dynamic, Eigen::Dynamic>;

namespace {

double lmx(const LMat& x) { return x.size() == 0 ? 0.0 : static_cast<double>(x.cwiseAbs().maxCoeff()); }

double lrelative(const LMat& r, std::initializer_list<double> terms) {
  double s = 1.0;
  for (double t : terms) s = std::max(s, t);
  return lmx(r) / s;
}

LMat lsharp(const LMat& x) { return x.transpose().reverse(); }

CMat to_double(const LMat& x) { return x.unaryExpr([](const LCplx& c) { return cplx(double(c.real()), double(c.imag())); }); }

LMat to_long(const CMat& x) {
  return x.unaryExpr([](const cplx& c) { return LCplx(c.real(), c.imag()); });
}

}  // namespace

IwasawaWitness solve_iwasawa(const HolomorphicFrame& hf, cplx z, const IwasawaOptions& opt) {
  IwasawaWitness w;
  const int m = hf.m;
  w.m = m;
  w.z = z;
  const LMat J2 = to_long(antidiag_c(2)), Im = LMat::Identity(m, m), I2 = LMat::Identity(2, 2);
  w.f = hf.f_at(z);
  w.g = hf.g_at(z);
  const LMat f = to_long(w.f), g = to_long(w.g);
  const LMat fb = f.conjugate(), gb = g.conjugate();
  const LMat fs = lsharp(f), fbs = lsharp(fb);

  // (1F)
  const LMat t1 = fbs.transpose() * J2 * fs, t2 = gb.transpose() * g;
  const LMat rho = Im + t1 + t2;
  const LMat rho_h = (rho + rho.adjoint()) / 2.0L;
  const double rho_scale = std::max(1.0, lmx(rho));
  Eigen::SelfAdjointEigenSolver<LMat> es(rho_h, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > opt.pd_floor * rho_scale))
    throw SingularLocus("rho is not positive definite at the sample");
  Eigen::LLT<LMat> llt4(rho_h);
  if (llt4.info() != Eigen::Success) throw SingularLocus("Cholesky factorization of rho failed");
  const LMat rho_inv = llt4.solve(Im);

  // (1E), (1C)
  const LMat rhs = fs - J2 * fb.transpose() * g;
  const LMat usharp = rhs * rho_inv;
  const LMat u = lsharp(usharp);
  const LMat v = g * rho_inv;
  const LMat ub = u.conjugate(), ubs = usharp.conjugate(), vb = v.conjugate();

  // (1D), (1A)
  const LMat jff = J2 * fb.transpose() * f;
  const LMat urho_u = usharp * rho * ubs.transpose() * J2;
  const LMat q = I2 + jff - urho_u;
  const LMat uqu = u * q * J2 * ub.transpose(), vrv = v * rho * vb.transpose();
  const LMat a = Im - uqu - vrv;

  const LMat uq = u * q, vru = v * rho * ubs.transpose() * J2;
  w.residual[0] = lrelative(a + uqu + vrv - Im, {lmx(a), lmx(uqu), lmx(vrv)});
  w.residual[1] = lrelative(uq - vru - f, {lmx(uq), lmx(vru), lmx(f)});
  w.residual[2] = lrelative(v * rho - g, {lmx(g), lmx(v) * rho_scale});
  w.residual[3] = lrelative(q + urho_u - I2 - jff, {lmx(q), lmx(urho_u), lmx(jff)});
  w.residual[4] = lrelative(usharp * rho - rhs, {lmx(rhs), lmx(usharp) * rho_scale});
  w.residual[5] = lrelative(rho - Im - fbs.transpose() * J2 * fs - gb.transpose() * g, {lmx(t1), lmx(t2)});
  if (!(w.residual[1] <= opt.residual_tol)) throw ResidualTooLarge("equation (1B) residual exceeds tolerance");

  const LMat a_h = (a + a.adjoint()) / 2.0L;
  Eigen::LLT<LMat> llt1(a_h);
  if (llt1.info() != Eigen::Success) throw SingularLocus("Cholesky factorization of a failed");
  const LMat l1 = llt1.matrixU(), l4 = llt4.matrixU();

  // q = J2 l0^H J2 l0 with l0 = ((t, s), (0, 1/t)) forces q upper triangular, q22 = conj(q11), |q11| = 1
  // and q12 real; then t = sqrt(q11), s = q12 conj(t) / 2.
  const double q_scale = std::max({1.0, lmx(jff), lmx(urho_u)});
  const long double shape_tol = 1e-9L * q_scale;
  const LCplx q11 = q(0, 0);
  if (std::abs(q(1, 0)) > shape_tol || std::abs(q(1, 1) - std::conj(q11)) > shape_tol ||
      std::abs(q(0, 1).imag()) > shape_tol || std::abs(std::abs(q11) - 1.0L) > shape_tol)
    throw SingularLocus("q has no twisted Hermitian factorization at the sample");
  const LCplx t = std::sqrt(q11);
  LMat l0 = LMat::Zero(2, 2);
  l0(0, 0) = t;
  l0(0, 1) = q(0, 1).real() * std::conj(t) / 2.0L;
  l0(1, 1) = 1.0L / t;

  const double f1 = lrelative(l1.adjoint() * l1 - a, {lmx(a)});
  const double f4 = lrelative(l4.adjoint() * l4 - rho, {lmx(rho)});
  const double f0 = lrelative(J2 * l0.adjoint() * J2 * l0 - q, {lmx(q)});
  w.factor_residual = std::max({f0, f1, f4});

  w.rho = to_double(rho);
  w.usharp = to_double(usharp);
  w.u = to_double(u);
  w.v = to_double(v);
  w.q = to_double(q);
  w.a = to_double(a);
  w.l1 = to_double(l1);
  w.l0 = to_double(l0);
  w.l4 = to_double(l4);
  return w;
}

LoopMatrix<cplx> holomorphic_frame_at(const HolomorphicFrame& hf, cplx z) {
  return unipotent_frame(hf.m, hf.f_at(z), hf.g_at(z));
}

LoopMatrix<cplx> w_factor(const IwasawaWitness& w) { return unipotent_frame(w.m, w.u, w.v); }

LoopMatrix<cplx> unipotent_inverse(const LoopMatrix<cplx>& x) {
  const int N = x.rows();
  const LoopMatrix<cplx> id = LoopMatrix<cplx>::identity(N);
  const LoopMatrix<cplx> n = x - id;
  LoopMatrix<cplx> r = id, p = id;
  for (int k = 1; k <= N; ++k) {
    p = p * n;
    if (p.is_zero()) return r;
    r = (k % 2) ? r - p : r + p;
  }
  throw Error("unipotent_inverse: argument is not unipotent");
}

ExtendedFrame assemble_frame(const GroupContext& g, const HolomorphicFrame& hf, const IwasawaWitness& w) {
  ExtendedFrame e;
  e.witness = w;
  const LoopMatrix<cplx> H = holomorphic_frame_at(hf, w.z);
  const LoopMatrix<cplx> tw = tau(g, w_factor(w));
  const CMat L = block_diag(w.l1, w.l0, w.l4);
  const CMat Linv = upper_triangular_inverse(L);
  const LoopMatrix<cplx> Htw = H * tw;
  e.Ft = Htw * LoopMatrix<cplx>(from_cmat(Linv));
  e.reconstruction_residual = loop_max(e.Ft * LoopMatrix<cplx>(from_cmat(L)) - Htw);
  return e;
}

ExtendedFrame extended_frame(const GroupContext& g, const HolomorphicFrame& hf, cplx z, const IwasawaOptions& opt) {
  return assemble_frame(g, hf, solve_iwasawa(hf, z, opt));
}

CMat middle_columns_zw(const HolomorphicFrame& hf, cplx z, cplx w, cplx lambda) {
  if (lambda == cplx(0.0)) throw LambdaZero("lambda must be nonzero");
  const int m = hf.m;
  const CMat J2 = antidiag_c(2), Jm = antidiag_c(m), Im = CMat::Identity(m, m), I2 = CMat::Identity(2, 2);
  const CMat F = hf.f_at(z), G = hf.g_at(z), Fb = hf.fbar_at(w), Gb = hf.gbar_at(w);
  // rho and u# from (1F), (1E), and the same with the roles of (F, G) and (Fb, Gb) exchanged
  auto core = [&](const CMat& f, const CMat& gg, const CMat& fb, const CMat& gbb, CMat& rho) {
    rho = Im + sharp(fb).transpose() * J2 * sharp(f) + gbb.transpose() * gg;
    return CMat((sharp(f) - J2 * fb.transpose() * gg) * rho.partialPivLu().inverse());
  };
  CMat rho, rhob;
  const CMat us = core(F, G, Fb, Gb, rho);
  const CMat usb = core(Fb, Gb, F, G, rhob);
  const CMat ub = sharp(usb);
  const CMat q = I2 + J2 * Fb.transpose() * F - us * rho * usb.transpose() * J2;
  const CMat qb = I2 + J2 * F.transpose() * Fb - usb * rhob * us.transpose() * J2;
  const cplx t = std::sqrt(q(0, 0)), tb = std::sqrt(qb(0, 0));
  CMat l0inv = CMat::Zero(2, 2);
  l0inv(0, 0) = 1.0 / t;
  l0inv(0, 1) = -q(0, 1) * tb / 2.0;
  l0inv(1, 1) = t;

  CMat c(2 * m + 2, 2);
  c.block(0, 0, m, 2) = (F + G * Jm * ub) * l0inv / lambda;
  c.block(m, 0, 2, 2) = (I2 - sharp(F) * Jm * ub) * l0inv;
  c.block(m + 2, 0, m, 2) = lambda * Jm * ub * l0inv;
  return c;
}

// ---------------------------------------------------------------- Maurer-Cartan

namespace {

struct FrameDerivs {
  ExtendedFrame frame;
  LoopMatrix<cplx> inv, dz, dzbar;
};

// central differences in x and y with one Richardson step
FrameDerivs frame_derivs(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h) {
  FrameDerivs d;
  d.frame = extended_frame(g, hf, z);
  const IwasawaWitness& w = d.frame.witness;
  d.inv = LoopMatrix<cplx>(from_cmat(block_diag(w.l1, w.l0, w.l4))) * unipotent_inverse(tau(g, w_factor(w))) *
          unipotent_inverse(holomorphic_frame_at(hf, z));
  auto partials = [&](double s, LoopMatrix<cplx>& dx, LoopMatrix<cplx>& dy) {
    auto F = [&](cplx p) { return extended_frame(g, hf, p).Ft; };
    dx = scaled(F(z + s) - F(z - s), 1.0 / (2 * s));
    dy = scaled(F(z + cplx(0, s)) - F(z - cplx(0, s)), 1.0 / (2 * s));
  };
  LoopMatrix<cplx> x1, y1, x2, y2;
  partials(h, x1, y1);
  partials(h / 2, x2, y2);
  const LoopMatrix<cplx> dx = scaled(scaled(x2, 4.0) - x1, 1.0 / 3.0);
  const LoopMatrix<cplx> dy = scaled(scaled(y2, 4.0) - y1, 1.0 / 3.0);
  d.dz = scaled(dx - scaled(dy, cplx(0, 1)), 0.5);
  d.dzbar = scaled(dx + scaled(dy, cplx(0, 1)), 0.5);
  return d;
}

CMat sum_coeffs(const LoopMatrix<cplx>& x) {
  CMat r = CMat::Zero(x.rows(), x.cols());
  for (const auto& [k, c] : x.coeffs()) r += to_cmat(c);
  return r;
}

}  // namespace

LoopMatrix<cplx> maurer_cartan_loop(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h) {
  FrameDerivs d = frame_derivs(g, hf, z, h);
  return d.inv * d.dz;
}

MaurerCartanSample maurer_cartan(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h) {
  FrameDerivs d = frame_derivs(g, hf, z, h);
  const LoopMatrix<cplx> U = d.inv * d.dz;
  MaurerCartanSample s;
  s.alpha_m1 = to_cmat(U.coeff(-1));
  s.alpha_0 = to_cmat(U.coeff(0));
  for (const auto& [k, c] : U.coeffs())
    if (k != -1 && k != 0) s.leakage = std::max(s.leakage, mx(to_cmat(c)));

  const int m = hf.m, N = 2 * m + 2;
  const IwasawaWitness& w = d.frame.witness;
  const CMat fc = hf.fcheck_at(z);
  const CMat l0inv = upper_triangular_inverse(w.l0), l4inv = upper_triangular_inverse(w.l4);
  CMat expect = CMat::Zero(N, N);
  expect.block(0, m, m, 2) = w.l1 * fc * l0inv;
  expect.block(m, m + 2, 2, m) = -w.l0 * sharp(fc) * l4inv;
  s.alpha1_formula = relative(s.alpha_m1 - expect, {mx(expect)});
  const CMat D0 = to_cmat(g.D0);
  s.alpha0_offdiag = relative((s.alpha_0 - D0 * s.alpha_0 * D0) / 2.0, {mx(s.alpha_0)});
  return s;
}

std::vector<double> flatness(const GroupContext& g, const HolomorphicFrame& hf, cplx z,
                             const std::vector<cplx>& lambdas, double h, double h_in) {
  const CMat D0 = to_cmat(g.D0);
  struct Split {
    CMat Uk, Up, Vk, Vp;
  };
  // the lambda = 1 form split into its D0-even and D0-odd parts
  auto split = [&](cplx p) {
    FrameDerivs d = frame_derivs(g, hf, p, h_in);
    const CMat U = sum_coeffs(d.inv * d.dz), V = sum_coeffs(d.inv * d.dzbar);
    const CMat Uk = (U + D0 * U * D0) / 2.0, Vk = (V + D0 * V * D0) / 2.0;
    return Split{Uk, U - Uk, Vk, V - Vk};
  };
  const cplx I(0, 1);
  const Split c = split(z);
  // stencils at h and h/2, combined by one Richardson step
  std::array<std::array<Split, 4>, 2> st;
  for (int k = 0; k < 2; ++k) {
    const double s = k == 0 ? h : h / 2;
    st[k] = {split(z + s), split(z - s), split(z + I * s), split(z - I * s)};
  }
  std::vector<double> out;
  for (cplx lam : lambdas) {
    auto Ul = [&](const Split& s) { CMat r = s.Up / lam + s.Uk; return r; };
    auto Vl = [&](const Split& s) { CMat r = s.Vk + lam * s.Vp; return r; };
    auto d_z = [&](auto form, int k) {
      const auto& [xp, xm, yp, ym] = st[k];
      const double s = k == 0 ? h : h / 2;
      return CMat(((form(xp) - form(xm)) - I * (form(yp) - form(ym))) / (4 * s));
    };
    auto d_zbar = [&](auto form, int k) {
      const auto& [xp, xm, yp, ym] = st[k];
      const double s = k == 0 ? h : h / 2;
      return CMat(((form(xp) - form(xm)) + I * (form(yp) - form(ym))) / (4 * s));
    };
    const CMat dzV = (4.0 * d_z(Vl, 1) - d_z(Vl, 0)) / 3.0;
    const CMat dzbU = (4.0 * d_zbar(Ul, 1) - d_zbar(Ul, 0)) / 3.0;
    const CMat U = Ul(c), V = Vl(c);
    const CMat r = dzV - dzbU + U * V - V * U;
    out.push_back(relative(r, {mx(dzV), mx(dzbU), mx(U) * mx(V)}));
  }
  return out;
}

double pullback_halfisotropy(const GroupContext& g, const HolomorphicFrame& hf, cplx z, double h) {
  const MaurerCartanSample s = maurer_cartan(g, hf, z, h);
  const CMat M = g.M();
  const CMat A = M * s.alpha_m1 * M.inverse();
  const CMat B1 = A.block(0, 2, 2, 2 * g.m);
  const double nb = mx(B1);
  return mx(B1 * B1.transpose()) / std::max(1.0, nb * nb);
}

// ---------------------------------------------------------------- exact path

RatMatrix RatMatrix::cancel(const BiPoly& factor) const {
  if (factor.is_constant()) return *this;
  auto d = divide_exact(den, factor);
  if (!d) return *this;
  Matrix<BiPoly> n(rows(), cols());
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) {
      auto q = divide_exact(num(i, j), factor);
      if (!q) return *this;
      n(i, j) = std::move(*q);
    }
  return {std::move(n), std::move(*d)};
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return {a.num * b.num, a.den * b.den}; }

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {b.den * a.num + a.den * b.num, a.den * b.den};
}

RatMatrix operator-(const RatMatrix& a) { return {-a.num, a.den}; }
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + (-b); }

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.den == b.den) return a.num == b.num;
  return b.den * a.num == a.den * b.num;
}

RatMatrix bar(const RatMatrix& a) { return {bar(a.num), bar(a.den)}; }
RatMatrix sharp(const RatMatrix& a) { return {sharp(a.num), a.den}; }
RatMatrix transpose(const RatMatrix& a) { return {a.num.transpose(), a.den}; }

namespace {

Matrix<BiPoly> minor_of(const Matrix<BiPoly>& a, int r, int c) {
  const int n = a.rows();
  Matrix<BiPoly> m(n - 1, n - 1);
  for (int i = 0, ii = 0; i < n; ++i) {
    if (i == r) continue;
    for (int j = 0, jj = 0; j < n; ++j) {
      if (j == c) continue;
      m(ii, jj++) = a(i, j);
    }
    ++ii;
  }
  return m;
}

}  // namespace

BiPoly determinant(const Matrix<BiPoly>& a) {
  const int n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  BiPoly d;
  for (int j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    BiPoly t = a(0, j) * determinant(minor_of(a, 0, j));
    if (j % 2) d -= t; else d += t;
  }
  return d;
}

Matrix<BiPoly> adjugate(const Matrix<BiPoly>& a) {
  const int n = a.rows();
  Matrix<BiPoly> r(n, n);
  if (n == 1) {
    r(0, 0) = 1;
    return r;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BiPoly c = determinant(minor_of(a, j, i));
      r(i, j) = ((i + j) % 2) ? -c : c;
    }
  return r;
}

Matrix<BiPoly> rho_polynomial(const HolomorphicFrame& hf) {
  const Matrix<BiPoly> fb = bar(hf.f), gb = bar(hf.g);
  return Matrix<BiPoly>::identity(hf.m) + sharp(fb).transpose() * antidiag<BiPoly>(2) * sharp(hf.f) +
         gb.transpose() * hf.g;
}

ExactWitness solve_iwasawa_exact(const HolomorphicFrame& hf) {
  ExactWitness x;
  const int m = hf.m;
  x.m = m;
  x.f = hf.f;
  x.g = hf.g;
  const Matrix<BiPoly> J2 = antidiag<BiPoly>(2), Im = Matrix<BiPoly>::identity(m), I2 = Matrix<BiPoly>::identity(2);
  const Matrix<BiPoly> fb = bar(x.f), gb = bar(x.g);

  x.rho = rho_polynomial(hf);
  x.det = determinant(x.rho);
  if (x.det.is_zero()) throw SingularLocus("det rho vanishes identically");
  x.adj = adjugate(x.rho);
  x.rho_inv = RatMatrix(x.adj, x.det);

  const Matrix<BiPoly> rhs = sharp(x.f) - J2 * fb.transpose() * x.g;
  x.usharp = RatMatrix(rhs * x.adj, x.det);
  x.u = sharp(x.usharp);
  x.v = RatMatrix(x.g * x.adj, x.det);
  const RatMatrix ub = bar(x.u), ubs = bar(x.usharp), vb = bar(x.v);
  const RatMatrix rho(x.rho), J(J2);

  // u# rho = rhs exactly, which keeps q over a single power of the denominator
  x.q = (RatMatrix(I2 + J2 * fb.transpose() * x.f) - RatMatrix(rhs) * transpose(ubs) * J).cancel(x.det);
  x.q_is_identity = x.q == RatMatrix(I2);
  const RatMatrix uq = (x.u * x.q).cancel(x.det);
  const RatMatrix uqu = (uq * J * transpose(ub)).cancel(x.det).cancel(x.det);
  x.a = (RatMatrix(Im) - uqu - (RatMatrix(x.g) * transpose(vb))).cancel(x.det);

  const RatMatrix vr = (x.v * rho).cancel(x.det);
  const RatMatrix vrv = (vr * transpose(vb)).cancel(x.det);
  const RatMatrix urho = (x.usharp * rho).cancel(x.det);
  x.holds[0] = x.a + uqu + vrv == RatMatrix(Im);
  x.holds[1] = uq - vr * transpose(ubs) * J == RatMatrix(x.f);
  x.holds[2] = vr == RatMatrix(x.g);
  x.holds[3] = x.q + urho * transpose(ubs) * J == RatMatrix(I2 + J2 * fb.transpose() * x.f);
  x.holds[4] = urho == RatMatrix(rhs);
  x.holds[5] = RatMatrix(x.rho) == RatMatrix(Im + bar(sharp(x.f)).transpose() * J2 * sharp(x.f) + gb.transpose() * x.g);
  x.hermitian = transpose(bar(RatMatrix(x.rho))) == RatMatrix(x.rho) && transpose(bar(x.a)) == x.a;
  return x;
}

std::map<int, Matrix<BiPoly>> ExactWitness::middle_num() const {
  if (!q_is_identity) throw ExactPathRequired("exact middle columns need q = I");
  const Matrix<BiPoly> Jm = antidiag<BiPoly>(m), I2 = Matrix<BiPoly>::identity(2);
  // u is kept over det itself, so bar(u) sits over bar(det)
  const RatMatrix ub = bar(u);
  const BiPoly D = ub.den;
  const Matrix<BiPoly> jub = Jm * ub.num;
  std::map<int, Matrix<BiPoly>> out;
  Matrix<BiPoly> top = D * f + g * jub, centre = D * I2 - sharp(f) * jub;
  for (int k : {-1, 0, 1}) out[k] = Matrix<BiPoly>(2 * m + 2, 2);
  out[-1].set_block(0, 0, top);
  out[0].set_block(m, 0, centre);
  out[1].set_block(m + 2, 0, jub);
  return out;
}

LoopMatrix<RationalFn> ExactWitness::middle_columns() const {
  const BiPoly D = middle_den();
  LoopMatrix<RationalFn> r(2 * m + 2, 2);
  for (const auto& [k, num] : middle_num())
    r.set_coeff(k, num.map([&](const BiPoly& p) { return RationalFn(p, D); }));
  return r;
}

}  // namespace willmore
