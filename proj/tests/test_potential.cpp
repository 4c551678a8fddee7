#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "willmore/closed_form.hpp"

using namespace willmore;

namespace {

using GR = GaussianRational;
const GR kI = GR::i();
const BiPoly Z = BiPoly::z();

NormalizedPotential random_potential(std::mt19937_64& rng, int m, int deg) {
  static const GR pool[] = {1, -1, kI, -kI, GR(mpq_class(1, 2)), GR(mpq_class(-1, 2))};
  std::uniform_int_distribution<int> pick(0, 6), d(0, deg);
  auto poly = [&] {
    std::vector<GR> c(d(rng) + 1);
    for (auto& x : c) {
      const int k = pick(rng);
      x = k == 6 ? GR(0) : pool[k];
    }
    return c;
  };
  std::vector<std::vector<GR>> h, hh;
  for (int j = 0; j < m; ++j) {
    h.push_back(poly());
    hh.push_back(poly());
  }
  return make_potential(h, hh);
}

double mx(const CMat& x) { return x.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("to_nilpotent on the examples") {
  Matrix<BiPoly> f1(3, 2), f2(2, 2);
  f1(0, 0) = 1;
  f1(1, 1) = 1;
  f1(2, 0) = GR(2) * Z;
  f2(0, 1) = 1;
  f2(1, 0) = 1;
  CHECK(to_nilpotent(example_potential(1)).fcheck == f1);
  CHECK(to_nilpotent(example_potential(2)).fcheck == f2);
  CHECK(to_nilpotent(make_potential({{}, {}}, {{}, {}})).fcheck.is_zero());
  // m = 1, h = 1, hhat = 0 gives (i, -i)
  const Matrix<BiPoly> f = to_nilpotent(make_potential({{1}}, {{}})).fcheck;
  CHECK(f(0, 0) == BiPoly(kI));
  CHECK(f(0, 1) == BiPoly(-kI));
}

TEST_CASE("structural invariants on random potentials") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    const int m = 1 + t % 4;
    const NormalizedPotential p = random_potential(rng, m, 3);
    const GroupContext g(m);
    CHECK(p.pairing_holds());
    CHECK(so_residual(g, p.eta_minus1()).is_zero());
    CHECK(iso_P(g, p.eta_minus1()) == to_nilpotent(p).embed());
    // the embedding is strictly block upper triangular, so its cube vanishes
    const Matrix<BiPoly> e = to_nilpotent(p).embed();
    CHECK((e * e * e).is_zero());
  }
}

TEST_CASE("a broken pairing is detected") {
  NormalizedPotential p = example_potential(2);
  p.h_partner = std::vector<BiPoly>{BiPoly(1), BiPoly(1)};
  CHECK(!p.pairing_holds());
  CHECK(!p.pairing().is_zero());
}

TEST_CASE("digest is deterministic and sensitive") {
  CHECK(example_potential(1).digest() == example_potential(1).digest());
  CHECK(example_potential(1).digest() != example_potential(2).digest());
  CHECK(example_potential(1).digest().size() == 16);
}

TEST_CASE("conjugation of potentials") {
  const GroupContext g(3);
  const NormalizedPotential p = example_potential(1);
  const LoopMatrix<BiPoly> eta = p.eta();
  CHECK(conjugate_potential(g, eta, QMat::identity(8)) == eta);
  CHECK(in_K(g, g.Q));
  const QMat qinv = g.I1 * g.Q.transpose() * g.I1;
  CHECK(conjugate_potential(g, conjugate_potential(g, eta, g.Q), qinv) == eta);
  // the proof of the normal form: eta~ with B~1 rows (b^t, i b^t ; bh^t, i bh^t) and eta = Q^-1 eta~ Q
  Matrix<BiPoly> bt(2, 6);
  for (int j = 0; j < 3; ++j) {
    bt(0, j) = p.h[j];
    bt(0, 3 + j) = kI * p.h[j];
    bt(1, j) = p.hhat[j];
    bt(1, 3 + j) = kI * p.hhat[j];
  }
  Matrix<BiPoly> et(8, 8);
  et.set_block(0, 2, bt);
  for (int j = 0; j < 6; ++j) {
    et(2 + j, 0) = bt(0, j);
    et(2 + j, 1) = -bt(1, j);
  }
  CHECK(so_residual(g, et).is_zero());
  const LoopMatrix<BiPoly> back = conjugate_potential(g, LoopMatrix<BiPoly>(et, -1), qinv);
  CHECK(back == eta);
  CHECK(so_residual(g, back.coeff(-1)).is_zero());
  // a shear mixing the 2- and 2m-blocks is not in K
  QMat mix = QMat::identity(8);
  mix(0, 2) = 1;
  CHECK(!in_K(g, mix));
  CHECK_THROWS_AS(conjugate_potential(g, eta, mix), QNotInK);
}

TEST_CASE("rank and shape classification") {
  Classification c = rank_and_classify(make_potential({{}, {}}, {{}, {}}));
  CHECK(c.rank == 0);
  CHECK(c.tag == ShapeTag::Constant);
  c = rank_and_classify(example_potential(1));
  CHECK(c.rank == 2);
  CHECK(c.tag == ShapeTag::Generic);
  c = rank_and_classify(make_potential({{0, 1}, {kI}}, {{0, 1}, {kI}}));
  CHECK(c.tag == ShapeTag::EuclideanMinimal);
  CHECK(c.rank == 1);
  c = rank_and_classify(make_potential({{}, {}}, {{1}, {0, kI}}));
  CHECK(c.tag == ShapeTag::SphericalMinimal);
  c = rank_and_classify(make_potential({{1}}, {{}}));
  CHECK(c.rank == 1);
  CHECK(c.tag == ShapeTag::HyperbolicMinimal);
  // proportional rows of different content: rank 1, not literally minimal
  c = rank_and_classify(make_potential({{0, 1}, {0, 2}}, {{0, 0, 1}, {0, 0, 2}}));
  CHECK(c.rank == 1);
  CHECK(c.tag == ShapeTag::DualPair);
  CHECK(!c.note.empty());
  // example 2 has rank 2: the minor h1 hh2 - h2 hh1 = (i/2)(i/2) - (-i/2)(i/2) is nonzero
  CHECK(rank_and_classify(example_potential(2)).rank == 2);
}

TEST_CASE("Wu's formula at sample scale") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  const int N = 4;
  CMat d1(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) d1(i, j) = cplx(n(rng), n(rng));
  const std::vector<cplx> zs = {0.0, cplx(0.3, 0.1), cplx(-0.5, 0.4), cplx(1.2, -0.7)};

  SUBCASE("delta0 = 0 reproduces delta1 exactly") {
    for (const CMat& e : wu_normalized_potential(Matrix<BiPoly>(N, N), d1, zs)) CHECK(mx(e - d1) == 0.0);
  }
  SUBCASE("constant nilpotent delta0 against the finite exponential series") {
    Matrix<BiPoly> d0(N, N);
    CMat A = CMat::Zero(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        A(i, j) = cplx(i + 1, j - 2);
        d0(i, j) = GR(mpq_class(i + 1), mpq_class(j - 2));
      }
    const auto out = wu_normalized_potential(d0, d1, zs);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const cplx z = zs[k];
      CMat F = CMat::Identity(N, N), P = CMat::Identity(N, N);
      double fact = 1;
      for (int p = 1; p < N; ++p) {
        P = P * (z * A);
        fact *= p;
        F += P / fact;
      }
      CHECK(mx(out[k] - F * d1 * F.inverse()) < 1e-10);
    }
  }
  SUBCASE("polynomial del0 = z A integrates to exp(z^2 A / 2)") {
    Matrix<BiPoly> d0(N, N);
    CMat A = CMat::Zero(N, N);
    A(0, 1) = 1.0;
    A(1, 0) = -1.0;
    A(2, 3) = cplx(0, 0.5);
    A(3, 2) = cplx(0, 0.5);
    d0(0, 1) = Z;
    d0(1, 0) = -Z;
    d0(2, 3) = GR(0, mpq_class(1, 2)) * Z;
    d0(3, 2) = GR(0, mpq_class(1, 2)) * Z;
    const auto out = wu_normalized_potential(d0, d1, zs, WuOptions{1024, 1e-10});
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const CMat F = CMat(zs[k] * zs[k] / 2.0 * A).exp();
      CHECK(mx(out[k] - F * d1 * F.inverse()) < 1e-10);
    }
    CHECK_THROWS_AS(wu_normalized_potential(d0, d1, zs, WuOptions{4, 1e-10}), StepSizeTooCoarse);
  }
  SUBCASE("block-diagonal delta0 keeps blocks separate with F01 = exp(z A1)") {
    Matrix<BiPoly> d0(N, N);
    CMat A1(2, 2);
    A1 << 0, 1, -1, 0;
    d0(0, 1) = 1;
    d0(1, 0) = -1;
    d0(2, 3) = 2;
    d0(3, 2) = -2;
    CMat d1b = CMat::Zero(N, N);
    d1b.block(0, 0, 2, 2) = d1.block(0, 0, 2, 2);
    const auto out = wu_normalized_potential(d0, d1b, zs);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const CMat F01 = CMat(zs[k] * A1).exp();
      CHECK(mx(out[k].block(0, 0, 2, 2) - F01 * d1b.block(0, 0, 2, 2) * F01.inverse()) < 1e-10);
      CHECK(mx(out[k].block(2, 0, 2, 4)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(wu_normalized_potential(Matrix<BiPoly>(3, 3), d1, zs), DimensionMismatch);
}
