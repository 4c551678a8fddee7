#include "willmore/closed_form.hpp"

#include <cmath>

namespace willmore {

namespace {

using GR = GaussianRational;

GR q(long p, long d = 1) { return GR(mpq_class(p, d)); }
const GR kI = GR::i();
const BiPoly Z = BiPoly::z();
const BiPoly W = BiPoly::w();

// sum_k c_k (z w)^k
BiPoly in_R(const std::vector<GR>& c) {
  BiPoly p;
  for (std::size_t k = 0; k < c.size(); ++k) p.add_term({static_cast<int>(k), static_cast<int>(k)}, c[k]);
  return p;
}

BiPoly zpow(int p) { return BiPoly::monomial(1, p, 0); }
BiPoly wpow(int p) { return BiPoly::monomial(1, 0, p); }

// one component of a lambda-dependent vector: lambda^-1, lambda^0, lambda^1 parts
struct Comp {
  BiPoly m1, c0, p1;
};

Comp constant(const BiPoly& c) { return {BiPoly(), c, BiPoly()}; }
// coef * (lambda^-1 z^p - lambda w^p)
Comp A(int p, const BiPoly& coef) { return {coef * zpow(p), BiPoly(), -(coef * wpow(p))}; }
// coef * (lambda^-1 z^p + lambda w^p)
Comp B(int p, const BiPoly& coef) { return {coef * zpow(p), BiPoly(), coef * wpow(p)}; }

void store(std::map<int, std::vector<BiPoly>>& out, const std::vector<Comp>& v) {
  for (int k : {-1, 0, 1}) {
    std::vector<BiPoly> col;
    bool any = false;
    for (const Comp& c : v) {
      col.push_back(k == -1 ? c.m1 : k == 0 ? c.c0 : c.p1);
      any = any || !col.back().is_zero();
    }
    if (any) out[k] = col;
  }
}

Matrix<BiPoly> mat(int r, int c, std::vector<BiPoly> v) {
  Matrix<BiPoly> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = v[static_cast<std::size_t>(i) * c + j];
  return m;
}

void check_id(int id) {
  if (id != 1 && id != 2) throw Error("example id must be 1 or 2");
}

}  // namespace

NormalizedPotential example_potential(int id) {
  check_id(id);
  if (id == 1)
    return make_potential({{-kI / 2}, {kI / 2}, {0, -kI}}, {{kI / 2}, {kI / 2}, {0, kI}});
  return make_potential({{kI / 2}, {-kI / 2}}, {{kI / 2}, {kI / 2}});
}

BiPoly varsigma(int id) {
  check_id(id);
  if (id == 1) return in_R({1, 0, q(-1, 4), q(-2, 9)});
  return in_R({1, 0, q(-1, 4)});
}

ExactPair closed_form_pair(int id) {
  check_id(id);
  ExactPair p;
  p.den = varsigma(id);
  const BiPoly R = in_R({0, 1});
  if (id == 1) {
    p.m = 3;
    // Y = -(sqrt2 / (2 varsigma)) (...), so the stored numerators carry the minus sign
    std::vector<Comp> y = {
        constant(in_R({1, 1, q(1, 4), q(1, 9)})),
        constant(-in_R({1, -1, q(1, 4), q(1, 9)})),
        A(1, -(kI / 2) * R),
        B(1, q(1, 2) * R),
        A(1, kI),
        B(1, -1),
        A(2, -(kI / 3) * R),
        B(2, q(1, 3) * R),
    };
    const BiPoly t1 = in_R({1, 0, 0, q(1, 9)}), t2 = in_R({1, q(4, 3)}), t3 = in_R({1, 0, q(-1, 12)});
    std::vector<Comp> yh = {
        constant(in_R({1, 1, q(5, 4), q(4, 9), q(1, 36)})),
        constant(in_R({1, -1, q(-3, 4), q(4, 9), q(-1, 36)})),
        A(1, -kI * t1),
        B(1, t1),
        A(1, (kI / 2) * R * t2),
        B(1, -(q(1, 2) * R * t2)),
        A(2, -kI * t3),
        B(2, t3),
    };
    store(p.num[0], y);
    store(p.num[1], yh);
  } else {
    p.m = 2;
    const BiPoly a = in_R({1, q(1, 2)}), b = in_R({1, q(-1, 2)});
    std::vector<Comp> y = {
        constant(a * a), constant(-(b * b)), A(1, kI), B(1, -1), A(1, -(kI / 2) * R), B(1, q(1, 2) * R),
    };
    std::vector<Comp> yh = {
        constant(a * a), constant(b * b), A(1, (kI / 2) * R), B(1, -(q(1, 2) * R)), A(1, -kI), B(1, 1),
    };
    store(p.num[0], y);
    store(p.num[1], yh);
  }
  return p;
}

PrintedFixtures printed_fixtures(int id) {
  check_id(id);
  PrintedFixtures x;
  const BiPoly R = in_R({0, 1});
  const BiPoly s = varsigma(id), s2 = s * s;
  if (id == 1) {
    x.fcheck = mat(3, 2, {1, 0, 0, 1, q(2) * Z, 0});
    x.f = mat(3, 2, {Z, 0, 0, Z, zpow(2), 0});
    x.g = -mat(3, 3, {0, q(1, 2) * zpow(2), 0, q(2, 3) * zpow(3), 0, q(1, 2) * zpow(2), 0, q(1, 3) * zpow(3), 0});
    x.rho = mat(3, 3,
                {in_R({1, 0, 0, q(4, 9)}), R * W, q(1, 3) * R * R * W,  //
                 R * Z, in_R({1, 0, q(1, 4), q(1, 9)}), R,             //
                 q(1, 3) * R * R * Z, R, in_R({1, 0, q(1, 4)})});
    const BiPoly a = in_R({1, 0, q(-1, 4)}), b = in_R({1, 0, q(-1, 8), q(-1, 18)}), c = in_R({1, 0, 0, q(-2, 9)});
    const BiPoly e = in_R({1, 0, q(-1, 12)}), h = in_R({1, 0, 0, q(1, 9)});
    // as printed, including its (1,1) entry, which does not match the adjugate of rho
    x.rho_inv = RatMatrix(mat(3, 3,
                              {a * a + q(4, 9) * R * R * R * in_R({1, 0, q(1, 4)}), -(W * R * e),
                               q(2, 3) * R * R * W * b,  //
                               -(Z * R * e), in_R({1, 0, q(1, 4), q(4, 9)}), -(R * h),  //
                               q(2, 3) * R * R * Z * b, -(R * h),
                               c * c + q(1, 4) * R * R * in_R({1, 0, 0, q(4, 9)})}),
                          s2);
    const BiPoly k = in_R({0, q(-1, 2), q(-2, 3)});
    x.usharp = RatMatrix(Z * mat(2, 3, {-(q(1, 3) * R * Z), 1, -(q(1, 2) * R), Z * e, k, h}), s);
    x.u = RatMatrix(Z * mat(3, 2, {h, -(q(1, 2) * R), k, 1, Z * e, -(q(1, 3) * R * Z)}), s);
    x.q = Matrix<BiPoly>::identity(2);
    Matrix<BiPoly> m1(8, 2), c0(8, 2), p1(8, 2);
    m1.set_block(0, 0, mat(3, 2, {Z * h, -(q(1, 2) * Z * R), -(q(1, 2) * R * Z * in_R({1, q(4, 3)})), Z,
                                  zpow(2) * e, -(q(1, 3) * R * zpow(2))}));
    c0.set_block(3, 0, mat(2, 2, {in_R({1, 0, q(1, 4), q(4, 9)}), -R, -(R * in_R({1, 1, 0, q(1, 36)})),
                                  in_R({1, 0, q(1, 4), q(1, 9)})}));
    p1.set_block(5, 0, mat(3, 2, {wpow(2) * e, -(q(1, 3) * R * wpow(2)), -(q(1, 2) * R * W * in_R({1, q(4, 3)})), W,
                                  W * h, -(q(1, 2) * R * W)}));
    x.middle = {{-1, RatMatrix(m1, s)}, {0, RatMatrix(c0, s)}, {1, RatMatrix(p1, s)}};
  } else {
    x.fcheck = mat(2, 2, {0, 1, 1, 0});
    x.f = mat(2, 2, {0, Z, Z, 0});
    x.g = -(q(1, 2) * zpow(2)) * Matrix<BiPoly>::identity(2);
    const BiPoly d = in_R({1, 0, q(1, 4)});
    x.rho = mat(2, 2, {d, R, R, d});
    x.rho_inv = RatMatrix(mat(2, 2, {d, -R, -R, d}), s2);
    x.usharp = RatMatrix(Z * mat(2, 2, {-(q(1, 2) * R), 1, 1, -(q(1, 2) * R)}), s);
    x.u = x.usharp;
    x.q = Matrix<BiPoly>::identity(2);
    Matrix<BiPoly> m1(6, 2), c0(6, 2), p1(6, 2);
    m1.set_block(0, 0, mat(2, 2, {-(q(1, 2) * Z * R), Z, Z, -(q(1, 2) * Z * R)}));
    c0.set_block(2, 0, mat(2, 2, {d, -R, -R, d}));
    p1.set_block(4, 0, mat(2, 2, {W, -(q(1, 2) * W * R), -(q(1, 2) * W * R), W}));
    x.middle = {{-1, RatMatrix(m1, s)}, {0, RatMatrix(c0, s)}, {1, RatMatrix(p1, s)}};
  }
  return x;
}

RationalFn printed_metric(int id, Which w) {
  check_id(id);
  if (id == 2) {
    const BiPoly d = in_R({1, q(1, 2)});
    return RationalFn(in_R({2, 0, q(1, 2)}), d * d * d * d);
  }
  if (w == Which::Yhat) {
    const BiPoly d = in_R({1, 1, q(5, 4), q(4, 9), q(1, 36)});
    return RationalFn(q(2) * in_R({1, 4, q(1, 4), q(2, 9), q(4, 9), q(1, 36), q(1, 81)}), d * d);
  }
  const BiPoly d = in_R({1, 1, q(1, 4), q(1, 9)});
  return RationalFn(q(2) * in_R({1, 0, q(1, 4), q(4, 9)}), d * d);
}

RationalFn printed_branch_metric(Which w) {
  if (w == Which::Y) {
    const BiPoly d = in_R({q(1, 9), q(1, 4), 1, 1});
    return RationalFn(q(2) * in_R({0, q(4, 9), q(1, 4), 0, 1}), d * d);
  }
  const BiPoly d = in_R({q(1, 36), q(4, 9), q(5, 4), 1, 1});
  return RationalFn(in_R({q(2, 81), q(1, 18), q(8, 9), q(4, 9), q(1, 2), 8, 2}), d * d);
}

double example1_singular_radius() {
  // 36 varsigma = 36 - 9 s^2 - 8 s^3 with s = r^2; p is increasing on s > 0 with p(1) < 0 < p(2)
  auto p = [](double s) { return 8 * s * s * s + 9 * s * s - 36; };
  auto dp = [](double s) { return 24 * s * s + 18 * s; };
  double s = 1.5;
  for (int k = 0; k < 100; ++k) {
    const double step = p(s) / dp(s);
    s -= step;
    if (std::abs(step) < 1e-16 * s) break;
  }
  return std::sqrt(s);
}

}  // namespace willmore
