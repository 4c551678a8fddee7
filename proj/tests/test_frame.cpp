#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "willmore/closed_form.hpp"

using namespace willmore;

namespace {

using GR = GaussianRational;
const BiPoly Z = BiPoly::z();

Matrix<BiPoly> dz(const Matrix<BiPoly>& a) { return a.map([](const BiPoly& p) { return d_dz(p); }); }

HolomorphicFrame frame_of(const NormalizedPotential& p) { return integrate_frame(to_nilpotent(p)); }

NormalizedPotential random_potential(std::mt19937_64& rng, int m) {
  std::uniform_int_distribution<int> c(-2, 2), d(0, 3);
  auto poly = [&] {
    std::vector<GR> v(d(rng) + 1);
    for (auto& x : v) x = GR(mpq_class(c(rng), 2), mpq_class(c(rng), 2));
    return v;
  };
  std::vector<std::vector<GR>> h, hh;
  for (int j = 0; j < m; ++j) {
    h.push_back(poly());
    hh.push_back(poly());
  }
  return make_potential(h, hh);
}

}  // namespace

TEST_CASE("example 1: f and g as printed") {
  const HolomorphicFrame hf = frame_of(example_potential(1));
  Matrix<BiPoly> f(3, 2), g(3, 3);
  f(0, 0) = Z;
  f(1, 1) = Z;
  f(2, 0) = Z * Z;
  const BiPoly z2 = Z * Z, z3 = z2 * Z;
  g(0, 1) = GR(mpq_class(1, 2)) * z2;
  g(1, 0) = GR(mpq_class(2, 3)) * z3;
  g(1, 2) = GR(mpq_class(1, 2)) * z2;
  g(2, 1) = GR(mpq_class(1, 3)) * z3;
  CHECK(hf.f == f);
  CHECK(hf.g == -g);
}

TEST_CASE("example 2: f and g as printed") {
  const HolomorphicFrame hf = frame_of(example_potential(2));
  Matrix<BiPoly> f(2, 2);
  f(0, 1) = Z;
  f(1, 0) = Z;
  CHECK(hf.f == f);
  CHECK(hf.g == GR(mpq_class(-1, 2)) * (Z * Z) * Matrix<BiPoly>::identity(2));
}

TEST_CASE("zero potential gives H = I") {
  const HolomorphicFrame hf = frame_of(make_potential({{}, {}, {}}, {{}, {}, {}}));
  CHECK(hf.H == LoopMatrix<BiPoly>::identity(8));
  CHECK(frame_ode_residual(hf).is_zero());
}

TEST_CASE("frame invariants on the examples and random potentials") {
  std::vector<NormalizedPotential> ps = {example_potential(1), example_potential(2)};
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) ps.push_back(random_potential(rng, 1 + t % 4));
  for (const NormalizedPotential& p : ps) {
    const HolomorphicFrame hf = frame_of(p);
    const int n = 2 * p.m + 2;
    // the ODE, checked directly and through the library residual
    CHECK(frame_ode_residual(hf).is_zero());
    const LoopMatrix<BiPoly> Hz = hf.H.map_coeffs(dz);
    const GroupContext g(p.m);
    CHECK(Hz == hf.H * LoopMatrix<BiPoly>(iso_P(g, p.eta_minus1()), -1));
    CHECK(dz(hf.f) == hf.fcheck);
    CHECK(dz(hf.g) == -(hf.f * sharp(hf.fcheck)));
    // window and base point
    const auto w = hf.H.window();
    CHECK(w.first >= -2);
    CHECK(w.second == 0);
    CHECK((hf.H.evaluate(0.0, 1.0) - CMat::Identity(n, n)).norm() == 0.0);
    // unipotent: (H - I)^3 = 0
    const LoopMatrix<BiPoly> N = hf.H - LoopMatrix<BiPoly>::identity(n);
    CHECK((N * N * N).is_zero());
    // det H = 1 at samples
    for (cplx z : {cplx(0.3, -0.2), cplx(-1.1, 0.5)})
      for (cplx lam : {cplx(1.0), cplx(0.6, 0.8)}) CHECK(std::abs(hf.H.evaluate(z, lam).determinant() - 1.0) < 1e-12);
    // H lies in G(2m+2)
    CHECK(membership_residual(g, hf.H, Membership::G_2m2).is_zero());
    // the fast evaluators agree with the exact polynomials
    const cplx z(0.7, -0.4);
    CHECK((hf.f_at(z) - to_cmat(hf.f, z)).norm() < 1e-13);
    CHECK((hf.g_at(z) - to_cmat(hf.g, z)).norm() < 1e-13);
    CHECK((hf.fbar_at(std::conj(z)) - to_cmat(hf.f, z).conjugate()).norm() < 1e-13);
    CHECK((hf.gbar_at(std::conj(z)) - to_cmat(hf.g, z).conjugate()).norm() < 1e-13);
  }
}

TEST_CASE("H has the displayed block form") {
  const HolomorphicFrame hf = frame_of(example_potential(1));
  const int m = 3;
  // block sizes m, 2, m
  Matrix<BiPoly> h1(8, 8), h2(8, 8);
  h1.set_block(0, m, hf.f);
  h1.set_block(m, m + 2, -sharp(hf.f));
  h2.set_block(0, m + 2, hf.g);
  CHECK(hf.H.coeff(0) == Matrix<BiPoly>::identity(8));
  CHECK(hf.H.coeff(-1) == h1);
  CHECK(hf.H.coeff(-2) == h2);
}
