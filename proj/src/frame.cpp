#include "willmore/frame.hpp"

namespace willmore {

FloatPolyMatrix::FloatPolyMatrix(const Matrix<BiPoly>& a) : r_(a.rows()), c_(a.cols()) {
  terms_.resize(static_cast<std::size_t>(r_) * c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      for (const auto& [mono, c] : a(i, j).terms()) {
        terms_[static_cast<std::size_t>(i) * c_ + j].push_back({mono.first, mono.second, c.to_complex()});
        max_dz_ = std::max(max_dz_, mono.first);
        max_dw_ = std::max(max_dw_, mono.second);
      }
}

CMat FloatPolyMatrix::operator()(cplx z, cplx w) const {
  std::vector<cplx> zp(max_dz_ + 1, 1.0), wp(max_dw_ + 1, 1.0);
  for (int k = 1; k <= max_dz_; ++k) zp[k] = zp[k - 1] * z;
  for (int k = 1; k <= max_dw_; ++k) wp[k] = wp[k - 1] * w;
  CMat r = CMat::Zero(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      for (const Term& t : terms_[static_cast<std::size_t>(i) * c_ + j]) r(i, j) += t.c * zp[t.dz] * wp[t.dw];
  return r;
}

namespace {

Matrix<BiPoly> integrate_z(const Matrix<BiPoly>& a) {
  return a.map([](const BiPoly& p) { return antiderivative_z(p); });
}

}  // namespace

CMat HolomorphicFrame::f_at(cplx z) const { return f_fast(z, 0.0); }
CMat HolomorphicFrame::g_at(cplx z) const { return g_fast(z, 0.0); }
CMat HolomorphicFrame::fbar_at(cplx w) const { return fbar_fast(0.0, w); }
CMat HolomorphicFrame::gbar_at(cplx w) const { return gbar_fast(0.0, w); }
CMat HolomorphicFrame::fcheck_at(cplx z) const { return fcheck_fast(z, 0.0); }

HolomorphicFrame integrate_frame(const NilpotentPotential& p) {
  HolomorphicFrame hf;
  hf.m = p.m();
  const int m = hf.m, N = 2 * m + 2;
  hf.fcheck = p.fcheck;
  hf.f = integrate_z(p.fcheck);
  hf.g = -integrate_z(hf.f * sharp(p.fcheck));

  Matrix<BiPoly> h1(N, N), h2(N, N);
  h1.set_block(0, m, hf.f);
  h1.set_block(m, m + 2, -sharp(hf.f));
  h2.set_block(0, m + 2, hf.g);
  hf.H = LoopMatrix<BiPoly>::identity(N);
  hf.H.set_coeff(-1, h1);
  hf.H.set_coeff(-2, h2);
  auto barm = [](const Matrix<BiPoly>& a) { return a.map([](const BiPoly& p) { return bar(p); }); };
  hf.f_fast = FloatPolyMatrix(hf.f);
  hf.g_fast = FloatPolyMatrix(hf.g);
  hf.fbar_fast = FloatPolyMatrix(barm(hf.f));
  hf.gbar_fast = FloatPolyMatrix(barm(hf.g));
  hf.fcheck_fast = FloatPolyMatrix(hf.fcheck);
  return hf;
}

LoopMatrix<BiPoly> frame_ode_residual(const HolomorphicFrame& hf) {
  NilpotentPotential n{hf.fcheck};
  LoopMatrix<BiPoly> hz = hf.H.map_coeffs([](const Matrix<BiPoly>& c) {
    return c.map([](const BiPoly& p) { return d_dz(p); });
  });
  return hz - hf.H * LoopMatrix<BiPoly>(n.embed(), -1);
}

}  // namespace willmore
