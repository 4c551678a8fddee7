#pragma once

// Exact scalars over the Gaussian rationals Q(i): constants, bivariate
// polynomials in (z, w) where w stands for z-bar, and quotients of those.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "willmore/errors.hpp"

namespace willmore {

using cplx = std::complex<double>;

// "Approximately zero" policy for the floating backend.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;
  // |den| <= den_floor * (sum of |coefficient * monomial|) counts as vanishing
  double den_floor = 1e-12;

  bool near_zero(double x, double scale = 0.0) const { return x <= abs + rel * scale; }
};

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  GaussianRational(mpq_class re, mpq_class im = 0);
  // "p/q" or decimal notation for each part
  static GaussianRational parse(const std::string& re, const std::string& im = "0");
  static GaussianRational from_double(cplx v);  // exact binary value
  static GaussianRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  cplx to_complex() const;  // rounded to nearest
  std::string str() const;

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

GaussianRational bar(const GaussianRational& x);
inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }

// Polynomial in z and w (= z-bar treated as an independent variable).
class BiPoly {
 public:
  using Mono = std::pair<int, int>;  // (degree in z, degree in w)
  using Terms = std::map<Mono, GaussianRational>;

  BiPoly() = default;
  BiPoly(long c);  // NOLINT
  BiPoly(const GaussianRational& c);  // NOLINT
  static BiPoly monomial(const GaussianRational& c, int dz, int dw);
  static BiPoly z() { return monomial(1, 1, 0); }
  static BiPoly w() { return monomial(1, 0, 1); }
  // polynomial in z alone from coefficients of z^0, z^1, ...
  static BiPoly in_z(const std::vector<GaussianRational>& coeffs);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational coeff(int dz, int dw) const;
  std::size_t size() const { return terms_.size(); }
  int deg_z() const;
  int deg_w() const;
  int total_degree() const;
  Mono leading() const { return terms_.rbegin()->first; }  // lex order, requires nonzero
  Mono min_exponents() const;  // componentwise minimum, requires nonzero

  void add_term(const Mono& m, const GaussianRational& c);

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const GaussianRational& c);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(BiPoly a, const GaussianRational& c) { return a *= c; }
  friend BiPoly operator*(const GaussianRational& c, BiPoly a) { return a *= c; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  BiPoly shift_down(int dz, int dw) const;  // divide by z^dz w^dw, exponents must stay >= 0
  BiPoly swap_vars() const;

  std::string str() const;

 private:
  Terms terms_;
};

BiPoly bar(const BiPoly& p);  // conjugate coefficients and swap z <-> w
inline bool is_zero(const BiPoly& p) { return p.is_zero(); }
BiPoly d_dz(const BiPoly& p);
BiPoly d_dzbar(const BiPoly& p);
BiPoly antiderivative_z(const BiPoly& p);  // zero constant term
BiPoly pow(const BiPoly& p, int k);
std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b);
// substitute z -> c*z, w -> d*w
BiPoly scale_vars(const BiPoly& p, const GaussianRational& c, const GaussianRational& d);

GaussianRational evaluate_exact(const BiPoly& p, const GaussianRational& z, const GaussianRational& w);
// z-bar is bound to conj(z); arbitrary precision, rounded once
cplx evaluate(const BiPoly& p, cplx z);
// independent (z, w) in double arithmetic; used by the analytic continuation paths
cplx evaluate_zw(const BiPoly& p, cplx z, cplx w);
double magnitude_bound(const BiPoly& p, cplx z);

class RationalFn {
 public:
  RationalFn() : den_(1) {}
  RationalFn(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFn(const GaussianRational& c) : num_(c), den_(1) {}  // NOLINT
  RationalFn(BiPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT
  RationalFn(BiPoly num, BiPoly den);

  const BiPoly& num() const { return num_; }
  const BiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // divides num and den by a common polynomial factor when it divides both
  RationalFn cancel(const BiPoly& factor) const;

  RationalFn operator-() const { return {-num_, den_}; }
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  // cross-multiplication equality, no gcd needed
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string str() const;

 private:
  void normalize();
  BiPoly num_;
  BiPoly den_;
};

RationalFn bar(const RationalFn& x);
inline bool is_zero(const RationalFn& x) { return x.is_zero(); }
RationalFn d_dz(const RationalFn& x);
RationalFn d_dzbar(const RationalFn& x);
cplx evaluate(const RationalFn& x, cplx z, const Tolerance& tol = {});

inline cplx bar(cplx x) { return std::conj(x); }
inline bool is_zero(cplx x) { return x == cplx(0.0); }

// Conversion of exact constants into any scalar backend.
template <class S>
S from_constant(const GaussianRational& c) {
  if constexpr (std::is_same_v<S, cplx>) {
    return c.to_complex();
  } else {
    return S(c);
  }
}

}  // namespace willmore
