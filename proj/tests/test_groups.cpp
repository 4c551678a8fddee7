#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "willmore/closed_form.hpp"

using namespace willmore;

namespace {

using GR = GaussianRational;
const GR kI = GR::i();

GR random_gr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-6, 6), d(1, 4);
  return {mpq_class(c(rng), d(rng)), mpq_class(c(rng), d(rng))};
}

QMat random_matrix(std::mt19937_64& rng, int n) {
  QMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_gr(rng);
  return a;
}

QMat from_rows(const std::vector<std::vector<GR>>& rows) {
  QMat a(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = rows[i][j];
  return a;
}

LoopMatrix<BiPoly> frame_H(int id) { return integrate_frame(to_nilpotent(example_potential(id))).H; }

}  // namespace

TEST_CASE("constant matrices against the printed small-m instances") {
  SUBCASE("m = 2") {
    const GroupContext g(2);
    // sqrt(2) P~ as displayed: rows (1, ..., -1), (1, ..., 1), then (-i, i) and (1, 1) pairs closing inwards
    const QMat pt = from_rows({{1, 0, 0, 0, 0, -1},
                               {1, 0, 0, 0, 0, 1},
                               {0, -kI, 0, 0, kI, 0},
                               {0, 1, 0, 0, 1, 0},
                               {0, 0, -kI, kI, 0, 0},
                               {0, 0, 1, 1, 0, 0}});
    CHECK(g.Pt_s2 == pt);
    // P~1 = ((0, 1, 0, 0), (I_m, 0, 0, 0), (0, 0, 0, I_m), (0, 0, 1, 0)) in block columns m, 1, 1, m
    const QMat p1 = from_rows({{0, 0, 1, 0, 0, 0},
                               {1, 0, 0, 0, 0, 0},
                               {0, 1, 0, 0, 0, 0},
                               {0, 0, 0, 0, 1, 0},
                               {0, 0, 0, 0, 0, 1},
                               {0, 0, 0, 1, 0, 0}});
    CHECK(g.Pt1 == p1);
    CHECK(g.Jhat == from_rows({{1, 0, 0, 0, 0, 0},
                               {0, 1, 0, 0, 0, 0},
                               {0, 0, 0, 1, 0, 0},
                               {0, 0, 1, 0, 0, 0},
                               {0, 0, 0, 0, 1, 0},
                               {0, 0, 0, 0, 0, 1}}));
  }
  SUBCASE("m = 3") {
    const GroupContext g(3);
    const QMat pt = from_rows({{1, 0, 0, 0, 0, 0, 0, -1},
                               {1, 0, 0, 0, 0, 0, 0, 1},
                               {0, -kI, 0, 0, 0, 0, kI, 0},
                               {0, 1, 0, 0, 0, 0, 1, 0},
                               {0, 0, -kI, 0, 0, kI, 0, 0},
                               {0, 0, 1, 0, 0, 1, 0, 0},
                               {0, 0, 0, -kI, kI, 0, 0, 0},
                               {0, 0, 0, 1, 1, 0, 0, 0}});
    CHECK(g.Pt_s2 == pt);
  }
  for (int m = 1; m <= 6; ++m) {
    const GroupContext g(m);
    // S0 from the product definition equals the display
    CHECK(g.S0 == s0_display(m));
    // D0 = P(D)
    CHECK(iso_P(g, g.D) == g.D0);
    // P~ is unitary: (sqrt2 P~)^H (sqrt2 P~) = 2 I
    CHECK(bar(g.Pt_s2).transpose() * g.Pt_s2 == GR(2) * QMat::identity(g.dim));
    // M^t I1 M = J with M = P~ P~1, so P carries the I1 form to the J form
    CHECK(g.M_s2.transpose() * g.I1 * g.M_s2 == GR(2) * g.J);
  }
}

TEST_CASE("iso_P basics") {
  for (int m : {1, 2, 3}) {
    const GroupContext g(m);
    CHECK(iso_P(g, QMat::identity(g.dim)) == QMat::identity(g.dim));
    CHECK(iso_P_indexwise(g, QMat::identity(g.dim)) == QMat::identity(g.dim));
  }
  const GroupContext g(2);
  CHECK_THROWS_AS(iso_P(g, QMat::identity(5)), DimensionMismatch);
  CHECK_THROWS_AS(iso_P_indexwise(g, QMat::identity(5)), DimensionMismatch);
}

TEST_CASE("iso_P against the index formulas, homomorphism and inverse on random exact matrices") {
  std::mt19937_64 rng(2024);
  for (int m : {2, 3, 4}) {
    const GroupContext g(m);
    for (int t = 0; t < 100; ++t) {
      const QMat a = random_matrix(rng, g.dim);
      CHECK(iso_P(g, a) == iso_P_indexwise(g, a));
      if (t < 20) {
        const QMat b = random_matrix(rng, g.dim);
        CHECK(iso_P(g, a * b) == iso_P(g, a) * iso_P(g, b));
        CHECK(iso_P_inv(g, iso_P(g, a)) == a);
        CHECK(iso_P(g, iso_P_inv(g, a)) == a);
      }
    }
  }
}

TEST_CASE("iso_P maps so(1,2m+1) into the Lie algebra of G(2m+2)") {
  std::mt19937_64 rng(5);
  for (int m : {2, 3}) {
    const GroupContext g(m);
    for (int t = 0; t < 20; ++t) {
      const QMat a = random_matrix(rng, g.dim);
      const QMat x = a - g.I1 * a.transpose() * g.I1;
      CHECK(so_residual(g, x).is_zero());
      const QMat y = iso_P(g, x);
      CHECK((y.transpose() * g.J + g.J * y).is_zero());
    }
  }
}

TEST_CASE("iso_P of the example potentials is the nilpotent embedding") {
  const BiPoly Z = BiPoly::z();
  for (int id : {1, 2}) {
    const NormalizedPotential p = example_potential(id);
    const GroupContext g(p.m);
    const Matrix<BiPoly> img = iso_P(g, p.eta_minus1());
    CHECK(img == to_nilpotent(p).embed());
    CHECK(img == iso_P_indexwise(g, p.eta_minus1()));
  }
  Matrix<BiPoly> f1(3, 2);
  f1(0, 0) = 1;
  f1(1, 1) = 1;
  f1(2, 0) = GR(2) * Z;
  CHECK(to_nilpotent(example_potential(1)).fcheck == f1);
}

TEST_CASE("tau") {
  const GroupContext g(3);
  CHECK(tau(g, LoopMatrix<BiPoly>::identity(8)) == LoopMatrix<BiPoly>::identity(8));
  const LoopMatrix<BiPoly> H = frame_H(1);
  CHECK(tau(g, tau(g, H)) == H);
  CHECK(tau_inv_of(g, H) * tau(g, H) == LoopMatrix<BiPoly>::identity(8));
  CHECK(tau(g, H) * tau_inv_of(g, H) == LoopMatrix<BiPoly>::identity(8));

  // the displayed tau(H)^-1 = ((I, 0, 0), (lambda J fbar^t, I, 0), (lambda^2 J gbar^t, -lambda fbar#^t J, I)),
  // except that the corner is lambda^2 gbar^t: Jhat does not touch it, and rho = I + ... + gbar^t g needs it so
  const HolomorphicFrame hf = integrate_frame(to_nilpotent(example_potential(1)));
  const Matrix<BiPoly> J2 = antidiag<BiPoly>(2), J3 = antidiag<BiPoly>(3);
  const Matrix<BiPoly> fb = bar(hf.f), gb = bar(hf.g);
  Matrix<BiPoly> c1(8, 8), c2(8, 8);
  c1.set_block(3, 0, J2 * fb.transpose());
  c1.set_block(5, 3, -(sharp(fb).transpose() * J2));
  c2.set_block(5, 0, gb.transpose());
  LoopMatrix<BiPoly> expect = LoopMatrix<BiPoly>::identity(8);
  expect.set_coeff(1, c1);
  expect.set_coeff(2, c2);
  CHECK(tau_inv_of(g, H) == expect);
  CHECK(!(tau_inv_of(g, H).coeff(2).block(5, 0, 3, 3) == J3 * gb.transpose()));
  // and the centre block of tau(H)^-1 H is I + J fbar^t f, the lower corner is rho
  const LoopMatrix<BiPoly> prod = tau_inv_of(g, H) * H;
  CHECK(prod.coeff(0).block(3, 3, 2, 2) == Matrix<BiPoly>::identity(2) + J2 * fb.transpose() * hf.f);
  CHECK(prod.coeff(0).block(5, 5, 3, 3) == rho_polynomial(hf));
}

TEST_CASE("membership checks") {
  const GroupContext g(2);
  const std::vector<cplx> lambdas = {1.0, cplx(0, 1)};
  const LoopMatrix<cplx> id = LoopMatrix<cplx>::identity(6);
  for (Membership w : {Membership::SO_1_2m1, Membership::G_2m2, Membership::RealForm, Membership::KFixed})
    CHECK(check_membership(g, id, w, lambdas).pass);

  // rank-one bump of size 1e-3 away from J-orthogonality
  CMat bump = CMat::Identity(6, 6);
  bump(0, 0) += 1e-3;
  const MembershipReport r = check_membership(g, LoopMatrix<cplx>(from_cmat(bump)), Membership::G_2m2, lambdas);
  CHECK(!r.pass);
  CHECK(r.max_residual == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK(r.residuals.size() == 2);

  // the holomorphic frames lie in G(2m+2) exactly, and so do their products
  const LoopMatrix<BiPoly> H2 = frame_H(2);
  CHECK(membership_residual(g, H2, Membership::G_2m2).is_zero());
  CHECK(membership_residual(g, H2 * H2, Membership::G_2m2).is_zero());
  CHECK(!membership_residual(g, H2, Membership::RealForm).is_zero());
  // D0-conjugation is an involution and fixes the block-diagonal part
  LoopMatrix<BiPoly> d0(constant_matrix<BiPoly>(g.D0));
  CHECK(membership_residual(g, d0, Membership::KFixed).is_zero());
  CHECK(membership_residual(g, d0 * d0, Membership::G_2m2).is_zero());
}
