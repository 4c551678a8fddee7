#include "willmore/potential.hpp"

#include <cstdio>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace willmore {

namespace {

const GaussianRational kI = GaussianRational::i();

std::vector<BiPoly> times_i(const std::vector<BiPoly>& v) {
  std::vector<BiPoly> r;
  for (const auto& p : v) r.push_back(kI * p);
  return r;
}

}  // namespace

Matrix<BiPoly> NormalizedPotential::bhat1() const {
  Matrix<BiPoly> b(2, 2 * m);
  const auto hp = h_partner.value_or(times_i(h));
  const auto hhp = hhat_partner.value_or(times_i(hhat));
  for (int j = 0; j < m; ++j) {
    b(0, 2 * j) = h[j];
    b(0, 2 * j + 1) = hp[j];
    b(1, 2 * j) = hhat[j];
    b(1, 2 * j + 1) = hhp[j];
  }
  return b;
}

Matrix<BiPoly> NormalizedPotential::eta_minus1() const {
  const int N = 2 * m + 2;
  Matrix<BiPoly> b = bhat1(), x(N, N);
  x.set_block(0, 2, b);
  // -B1^t I_{1,1} with I_{1,1} = diag(-1, 1)
  for (int j = 0; j < 2 * m; ++j) {
    x(2 + j, 0) = b(0, j);
    x(2 + j, 1) = -b(1, j);
  }
  return x;
}

LoopMatrix<BiPoly> NormalizedPotential::eta() const { return LoopMatrix<BiPoly>(eta_minus1(), -1); }

Matrix<BiPoly> NormalizedPotential::pairing() const {
  Matrix<BiPoly> b = bhat1();
  return b * b.transpose();
}

int NormalizedPotential::max_degree() const {
  int d = 0;
  for (const auto& p : h) d = std::max(d, p.deg_z());
  for (const auto& p : hhat) d = std::max(d, p.deg_z());
  return d;
}

std::string NormalizedPotential::canonical() const {
  std::ostringstream os;
  os << "m=" << m;
  auto dump = [&](const char* tag, const std::vector<BiPoly>& v) {
    os << ";" << tag;
    for (const auto& p : v) os << "[" << p.str() << "]";
  };
  dump("h", h);
  dump("hhat", hhat);
  if (h_partner) dump("h_partner", *h_partner);
  if (hhat_partner) dump("hhat_partner", *hhat_partner);
  return os.str();
}

std::string NormalizedPotential::digest() const {
  std::uint64_t x = 1469598103934665603ull;
  for (unsigned char c : canonical()) {
    x ^= c;
    x *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

NormalizedPotential make_potential(const std::vector<std::vector<GaussianRational>>& h,
                                   const std::vector<std::vector<GaussianRational>>& hhat) {
  if (h.size() != hhat.size() || h.empty()) throw Error("h and hhat must be non-empty lists of equal length");
  NormalizedPotential p;
  p.m = static_cast<int>(h.size());
  for (const auto& c : h) p.h.push_back(BiPoly::in_z(c));
  for (const auto& c : hhat) p.hhat.push_back(BiPoly::in_z(c));
  return p;
}

Matrix<BiPoly> NilpotentPotential::embed() const {
  const int mm = m(), N = 2 * mm + 2;
  Matrix<BiPoly> x(N, N);
  x.set_block(0, mm, fcheck);
  x.set_block(mm, mm + 2, -sharp(fcheck));
  return x;
}

NilpotentPotential to_nilpotent(const NormalizedPotential& p) {
  NilpotentPotential n{Matrix<BiPoly>(p.m, 2)};
  for (int j = 0; j < p.m; ++j) {
    n.fcheck(j, 0) = kI * (p.h[j] - p.hhat[j]);
    n.fcheck(j, 1) = -(kI * (p.h[j] + p.hhat[j]));
  }
  return n;
}

bool in_K(const GroupContext& g, const QMat& q) {
  if (q.rows() != g.dim || q.cols() != g.dim) return false;
  if (!(g.D * q * g.D == q)) return false;
  return q.transpose() * g.I1 * q == g.I1;
}

std::string to_string(ShapeTag t) {
  switch (t) {
    case ShapeTag::Constant: return "constant";
    case ShapeTag::DualPair: return "dual-pair";
    case ShapeTag::EuclideanMinimal: return "euclidean-minimal";
    case ShapeTag::SphericalMinimal: return "spherical-minimal";
    case ShapeTag::HyperbolicMinimal: return "hyperbolic-minimal";
    case ShapeTag::Generic: return "generic";
  }
  return "?";
}

Classification rank_and_classify(const NormalizedPotential& p) {
  Matrix<BiPoly> b = p.bhat1();
  const int n = b.cols();
  Classification c;
  bool row0 = true, row1 = true, equal = true;
  for (int j = 0; j < n; ++j) {
    row0 = row0 && b(0, j).is_zero();
    row1 = row1 && b(1, j).is_zero();
    equal = equal && b(0, j) == b(1, j);
  }
  if (row0 && row1) {
    c.rank = 0;
    c.tag = ShapeTag::Constant;
    return c;
  }
  c.rank = 1;
  for (int j = 0; j < n && c.rank == 1; ++j)
    for (int k = j + 1; k < n; ++k)
      if (!(b(0, j) * b(1, k) - b(0, k) * b(1, j)).is_zero()) {
        c.rank = 2;
        break;
      }
  if (equal) c.tag = ShapeTag::EuclideanMinimal;
  else if (row0) c.tag = ShapeTag::SphericalMinimal;
  else if (row1) c.tag = ShapeTag::HyperbolicMinimal;
  else if (c.rank == 1) c.tag = ShapeTag::DualPair;
  else c.tag = ShapeTag::Generic;
  if (c.tag == ShapeTag::Generic || c.tag == ShapeTag::DualPair)
    c.note = "literal shape only; shapes equivalent up to conjugation are not detected";
  return c;
}

std::vector<CMat> wu_normalized_potential(const Matrix<BiPoly>& delta0, const CMat& delta1,
                                          const std::vector<cplx>& z_samples, const WuOptions& opt) {
  const int n = delta0.rows();
  if (delta0.cols() != n || delta1.rows() != n || delta1.cols() != n)
    throw DimensionMismatch("delta0 and delta1 must be square of the same size");
  bool constant = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) constant = constant && delta0(i, j).is_constant();

  auto d0_at = [&](cplx z) {
    CMat r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = evaluate_zw(delta0(i, j), z, 0.0);
    return r;
  };
  // F' = F delta0 along z(t) = t z
  auto integrate = [&](cplx z, int steps) {
    CMat f = CMat::Identity(n, n);
    const double dt = 1.0 / steps;
    for (int s = 0; s < steps; ++s) {
      const double t = s * dt;
      CMat a = d0_at(t * z) * z, b = d0_at((t + dt / 2) * z) * z, c = d0_at((t + dt) * z) * z;
      CMat k1 = f * a;
      CMat k2 = (f + dt / 2 * k1) * b;
      CMat k3 = (f + dt / 2 * k2) * b;
      CMat k4 = (f + dt * k3) * c;
      f += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return f;
  };

  std::vector<CMat> out;
  for (cplx z : z_samples) {
    CMat f0;
    if (constant) {
      f0 = (d0_at(0.0) * z).exp();
    } else {
      f0 = integrate(z, opt.steps);
      CMat fine = integrate(z, 2 * opt.steps);
      if ((fine - f0).cwiseAbs().maxCoeff() > opt.tol * std::max(1.0, fine.cwiseAbs().maxCoeff()))
        throw StepSizeTooCoarse("halving the integration step changed F0 beyond tolerance");
      f0 = fine;
    }
    out.push_back(f0 * delta1 * f0.inverse());
  }
  return out;
}

}  // namespace willmore
