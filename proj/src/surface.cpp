#include "willmore/surface.hpp"

#include <algorithm>
#include <cmath>

namespace willmore {

namespace {

const double kHalfSqrt2 = std::sqrt(2.0) / 2.0;

// (c(m+1) - c(m+2), c(m+1) + c(m+2), then -i(c(j) - c(jh)), c(j) + c(jh) with jh = 2m+3-j), 1-based rows
template <class T, class Get, class Mul>
std::vector<T> column_pattern(int m, Get c, Mul times_minus_i) {
  std::vector<T> v;
  v.push_back(c(m + 1) - c(m + 2));
  v.push_back(c(m + 1) + c(m + 2));
  for (int j = 1; j <= m; ++j) {
    const int jh = 2 * m + 3 - j;
    v.push_back(times_minus_i(c(j) - c(jh)));
    v.push_back(c(j) + c(jh));
  }
  return v;
}

CVec to_cvec(const std::vector<cplx>& v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
  return r;
}

const CVec& pick(const PairValue& p, Which w) { return w == Which::Y ? p.Y : p.Yhat; }

GaussianRational lambda_pow(const GaussianRational& lambda, int k) {
  GaussianRational r = 1;
  const GaussianRational b = k < 0 ? GaussianRational(1) / lambda : lambda;
  for (int i = 0; i < std::abs(k); ++i) r *= b;
  return r;
}

}  // namespace

cplx lorentz(const CVec& a, const CVec& b) {
  if (a.size() != b.size() || a.size() == 0) throw DimensionMismatch("lorentz: vectors differ in length");
  return -a(0) * b(0) + (a.tail(a.size() - 1).transpose() * b.tail(b.size() - 1))(0);
}

PairValue extract_from_columns(int m, const CMat& mid) {
  if (mid.rows() != 2 * m + 2 || mid.cols() != 2) throw DimensionMismatch("expected the (2m+2) x 2 middle block");
  const cplx mi(0, -1);
  auto col = [&](int k) {
    return to_cvec(column_pattern<cplx>(
        m, [&](int j) { return mid(j - 1, k); }, [&](cplx x) { return mi * x; }));
  };
  return {-kHalfSqrt2 * col(1), kHalfSqrt2 * col(0)};
}

PairValue extract_pair(const ExtendedFrame& e, cplx lambda) {
  const int m = e.witness.m;
  return extract_from_columns(m, e.Ft.evaluate(0.0, lambda).block(0, m, 2 * m + 2, 2));
}

std::map<int, PairValue> extract_pair_loop(const ExtendedFrame& e) {
  const int m = e.witness.m;
  std::map<int, PairValue> r;
  for (const auto& [k, c] : e.Ft.coeffs()) r[k] = extract_from_columns(m, to_cmat(c).block(0, m, 2 * m + 2, 2));
  return r;
}

PairValue pair_at(const GroupContext& g, const HolomorphicFrame& hf, cplx z, cplx lambda) {
  return extract_pair(extended_frame(g, hf, z), lambda);
}

PairValue pair_zw(const HolomorphicFrame& hf, cplx z, cplx w, cplx lambda) {
  return extract_from_columns(hf.m, middle_columns_zw(hf, z, w, lambda));
}

Eigen::VectorXd project_to_sphere(const CVec& Y) {
  const double y0 = Y(0).real();
  if (!(std::abs(y0) > 1e-14 * Y.norm())) throw FirstCoordinateVanishes("first homogeneous coordinate vanishes");
  return Y.tail(Y.size() - 1).real() / y0;
}

// ---------------------------------------------------------------- exact pair

std::vector<BiPoly> ExactPair::numerators(Which w, const GaussianRational& lambda) const {
  std::vector<BiPoly> r(2 * m + 2);
  for (const auto& [k, v] : of(w)) {
    const GaussianRational lk = lambda_pow(lambda, k);
    for (std::size_t i = 0; i < v.size(); ++i) r[i] += lk * v[i];
  }
  return r;
}

CVec ExactPair::evaluate(Which w, cplx z, cplx lambda) const {
  CVec r = CVec::Zero(2 * m + 2);
  const cplx zb = std::conj(z);
  for (const auto& [k, v] : of(w)) {
    const cplx lk = lambda_power(lambda, k);
    for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) += lk * evaluate_zw(v[i], z, zb);
  }
  const cplx d = evaluate_zw(den, z, zb);
  if (std::abs(d) <= Tolerance{}.den_floor * std::max(1.0, magnitude_bound(den, z)))
    throw DenominatorVanishes("exact pair evaluated on its degeneracy locus");
  return kHalfSqrt2 * r / d;
}

ExactPair exact_pair_from(const ExactWitness& x) {
  ExactPair p;
  p.m = x.m;
  p.den = x.middle_den();
  const GaussianRational mi = -GaussianRational::i();
  for (const auto& [k, mid] : x.middle_num()) {
    auto col = [&](int c) {
      return column_pattern<BiPoly>(
          x.m, [&](int j) { return mid(j - 1, c); }, [&](const BiPoly& b) { return mi * b; });
    };
    std::vector<BiPoly> y = col(1), yh = col(0);
    for (auto& e : y) e = -e;
    bool any = false;
    for (const auto& e : y) any = any || !e.is_zero();
    for (const auto& e : yh) any = any || !e.is_zero();
    if (!any) continue;
    p.num[0][k] = std::move(y);
    p.num[1][k] = std::move(yh);
  }
  return p;
}

RationalFn exact_metric(const ExactPair& p, Which w, const GaussianRational& lambda) {
  const std::vector<BiPoly> N = p.numerators(w, lambda);
  const BiPoly& n0 = N[0];
  if (n0.is_zero()) throw FirstCoordinateVanishes("first homogeneous coordinate vanishes identically");
  const BiPoly n0z = d_dz(n0), n0w = d_dzbar(n0);
  BiPoly s;
  for (std::size_t i = 1; i < N.size(); ++i) {
    if (N[i].is_zero()) continue;
    s += (d_dz(N[i]) * n0 - N[i] * n0z) * (d_dzbar(N[i]) * n0 - N[i] * n0w);
  }
  const BiPoly n02 = n0 * n0;
  return RationalFn(s, n02 * n02);
}

SurfacePair make_surface_pair(const HolomorphicFrame& hf, cplx lambda, bool try_exact, int max_degree) {
  SurfacePair p;
  p.m = hf.m;
  p.lambda = lambda;
  p.frame = std::make_shared<const HolomorphicFrame>(hf);
  if (!try_exact) return p;
  const Matrix<BiPoly> rho = rho_polynomial(hf);
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j)
      if (rho(i, j).total_degree() > max_degree) return p;
  try {
    const ExactWitness x = solve_iwasawa_exact(hf);
    if (x.q_is_identity) p.exact = exact_pair_from(x);
  } catch (const SingularLocus&) {
  }
  return p;
}

// ---------------------------------------------------------------- derivatives

double induced_metric(const HolomorphicFrame& hf, cplx z, cplx lambda, Which w, double h) {
  const cplx w0 = std::conj(z);
  h *= std::max(1.0, std::abs(z));
  auto y = [&](cplx a, cplx b) -> CVec {
    const CVec Y = pick(pair_zw(hf, a, b, lambda), w);
    if (std::abs(Y(0)) <= 1e-14 * Y.norm()) throw FirstCoordinateVanishes("first homogeneous coordinate vanishes");
    return Y.tail(Y.size() - 1) / Y(0);
  };
  auto dz = [&](double s) -> CVec { return (y(z + s, w0) - y(z - s, w0)) / (2 * s); };
  auto dw = [&](double s) -> CVec { return (y(z, w0 + s) - y(z, w0 - s)) / (2 * s); };
  const CVec yz = (4.0 * dz(h / 2) - dz(h)) / 3.0;
  const CVec yw = (4.0 * dw(h / 2) - dw(h)) / 3.0;
  return (yz.transpose() * yw)(0).real();
}

CVec pair_derivative(const HolomorphicFrame& hf, cplx z, cplx lambda, Which w, int j, double h) {
  struct Stencil {
    std::vector<int> off;
    std::vector<double> c;
  };
  static const Stencil st[] = {
      {{0}, {1.0}},
      {{-1, 1}, {-0.5, 0.5}},
      {{-1, 0, 1}, {1.0, -2.0, 1.0}},
      {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}},
      {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}},
  };
  if (j < 0 || j > 4) throw Error("pair_derivative supports orders 0..4");
  const cplx w0 = std::conj(z);
  auto D = [&](double s) {
    CVec r = CVec::Zero(2 * hf.m + 2);
    for (std::size_t k = 0; k < st[j].off.size(); ++k)
      r += st[j].c[k] * pick(pair_zw(hf, z + double(st[j].off[k]) * s, w0, lambda), w);
    return CVec(r / std::pow(s, j));
  };
  if (j == 0) return D(h);
  return (4.0 * D(h / 2) - D(h)) / 3.0;
}

IsotropyReport isotropy_check(const HolomorphicFrame& hf, Which w, int max_order, const std::vector<cplx>& zs,
                              cplx lambda, double h) {
  IsotropyReport r;
  r.max_order = max_order;
  for (cplx z : zs) {
    const double hs = h * std::max(1.0, std::abs(z));
    std::vector<CVec> d;
    for (int j = 1; j <= max_order; ++j) d.push_back(pair_derivative(hf, z, lambda, w, j, hs));
    for (int a = 0; a < max_order; ++a)
      for (int b = a; b < max_order; ++b) {
        const double v = std::abs(lorentz(d[a], d[b])) / std::max(1.0, d[a].norm() * d[b].norm());
        r.max_residual = std::max(r.max_residual, v);
        if (a == 0 && b == 0) r.conformality = std::max(r.conformality, v);
      }
    ++r.samples;
  }
  return r;
}

bool exact_isotropy(const ExactPair& p, Which w, int max_order, const GaussianRational& lambda) {
  const std::vector<BiPoly> N = p.numerators(w, lambda);
  const BiPoly Dz = d_dz(p.den);
  // k-th derivative of N_i / D is Nk_i / D^(k+1)
  std::vector<std::vector<BiPoly>> d(max_order + 1);
  d[0] = N;
  for (int k = 0; k < max_order; ++k)
    for (const BiPoly& x : d[k]) d[k + 1].push_back(d_dz(x) * p.den - GaussianRational(k + 1) * x * Dz);
  for (int a = 1; a <= max_order; ++a)
    for (int b = a; b <= max_order; ++b) {
      BiPoly s = -(d[a][0] * d[b][0]);
      for (std::size_t i = 1; i < N.size(); ++i) s += d[a][i] * d[b][i];
      if (!s.is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------- degeneracy locus

std::vector<SingularRadius> degeneracy_scan(const HolomorphicFrame& hf, double theta, double r0, double r1,
                                            int steps) {
  if (!(r1 > r0) || r0 < 0) throw Error("degeneracy_scan needs 0 <= r0 < r1");
  const Matrix<BiPoly> rho = rho_polynomial(hf);
  const FloatPolyMatrix R(rho), Rz(rho.map([](const BiPoly& p) { return d_dz(p); })),
      Rw(rho.map([](const BiPoly& p) { return d_dzbar(p); }));
  const cplx e(std::cos(theta), std::sin(theta));
  const int m = hf.m;
  auto det = [&](double r) { return R(r * e, r * std::conj(e)).determinant().real(); };
  // d det / dr = tr(adj(rho) rho_r) with cofactors taken directly
  auto ddet = [&](double r) {
    const cplx z = r * e, w = r * std::conj(e);
    const CMat a = R(z, w), ar = e * Rz(z, w) + std::conj(e) * Rw(z, w);
    if (m == 1) return ar(0, 0).real();
    cplx s = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        CMat mn(m - 1, m - 1);
        for (int p = 0, pp = 0; p < m; ++p) {
          if (p == j) continue;
          for (int q = 0, qq = 0; q < m; ++q) {
            if (q == i) continue;
            mn(pp, qq++) = a(p, q);
          }
          ++pp;
        }
        const cplx cof = (((i + j) % 2) ? -1.0 : 1.0) * mn.determinant();
        s += cof * ar(j, i);
      }
    return s.real();
  };
  auto bisect = [](auto fn, double lo, double hi) {
    double flo = fn(lo);
    while (hi - lo > 1e-11) {
      const double mid = 0.5 * (lo + hi);
      const double fm = fn(mid);
      if ((fm <= 0) == (flo <= 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return std::pair{lo, hi};
  };
  auto hadamard = [&](double r) {
    const CMat a = R(r * e, r * std::conj(e));
    double p = 1.0;
    for (int i = 0; i < m; ++i) p *= a.row(i).norm();
    return p;
  };

  std::vector<SingularRadius> out;
  auto add = [&](double lo, double hi) {
    const double r = 0.5 * (lo + hi);
    for (const auto& s : out)
      if (std::abs(s.r - r) < 1e-8) return;
    out.push_back({r, lo, hi});
  };
  const double dr = (r1 - r0) / steps;
  double pd = det(r0), ps = ddet(r0);
  for (int k = 1; k <= steps; ++k) {
    const double a = r0 + (k - 1) * dr, b = r0 + k * dr;
    const double d = det(b), s = ddet(b);
    if ((pd < 0) != (d < 0) || pd == 0.0) {
      auto [lo, hi] = pd == 0.0 ? std::pair{a, a} : bisect(det, a, b);
      add(lo, hi);
    } else if (ps < 0 && s >= 0) {
      // a local minimum of |det| counts when it touches zero
      auto [lo, hi] = bisect(ddet, a, b);
      const double r = 0.5 * (lo + hi);
      if (std::abs(det(r)) <= 1e-8 * std::max(1.0, hadamard(r))) add(lo, hi);
    }
    pd = d;
    ps = s;
  }
  if (pd == 0.0) add(r1, r1);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.r < y.r; });
  return out;
}

// ---------------------------------------------------------------- branch points

namespace {

// p(1/z, 1/w) = z^-dz w^-dw rev(p)
BiPoly reversed(const BiPoly& p, int dz, int dw) {
  BiPoly r;
  for (const auto& [mono, c] : p.terms()) r.add_term({dz - mono.first, dw - mono.second}, c);
  return r;
}

}  // namespace

RationalFn metric_at_infinity(const RationalFn& metric) {
  const BiPoly& P = metric.num();
  const BiPoly& Q = metric.den();
  if (P.is_zero()) return RationalFn(0);
  const int pz = P.deg_z(), pw = P.deg_w(), qz = Q.deg_z(), qw = Q.deg_w();
  // M(1/z, 1/w) / (z w)^2 = rev(P) / rev(Q) * z^(qz - pz - 2) w^(qw - pw - 2)
  const int ez = qz - pz - 2, ew = qw - pw - 2;
  BiPoly num = reversed(P, pz, pw), den = reversed(Q, qz, qw);
  num = num * BiPoly::monomial(1, std::max(ez, 0), std::max(ew, 0));
  den = den * BiPoly::monomial(1, std::max(-ez, 0), std::max(-ew, 0));
  return RationalFn(num, den);
}

GaussianRational limit_at_origin(const RationalFn& x) {
  const GaussianRational d = x.den().coeff(0, 0), n = x.num().coeff(0, 0);
  if (!d.is_zero()) return n / d;
  if (x.num().is_zero()) return 0;
  throw Error("limit at the origin diverges or depends on the direction of approach");
}

BranchLimits branch_analysis(const SurfacePair& p, const GaussianRational& lambda) {
  if (!p.exact) throw ExactPathRequired("branch analysis needs the exact pair");
  BranchLimits b;
  b.y = limit_at_origin(metric_at_infinity(exact_metric(*p.exact, Which::Y, lambda)));
  b.yhat = limit_at_origin(metric_at_infinity(exact_metric(*p.exact, Which::Yhat, lambda)));
  b.y_branch = b.y.is_zero();
  b.yhat_branch = b.yhat.is_zero();
  return b;
}

double projective_distance(const CVec& a, const CVec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw Error("projective distance of a zero vector");
  const cplx ip = b.dot(a);  // b^H a
  const cplx phase = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1.0);
  return (a / na - phase * b / nb).norm();
}

}  // namespace willmore
