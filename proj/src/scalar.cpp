#include "willmore/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace willmore {

namespace {

mpq_class parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw Error("empty rational literal");
  auto dot = t.find('.');
  auto exp = t.find_first_of("eE");
  if (dot != std::string::npos || exp != std::string::npos) {
    // decimal literal, converted exactly
    std::string mant = exp == std::string::npos ? t : t.substr(0, exp);
    long e10 = 0;
    if (exp != std::string::npos) e10 = std::stol(t.substr(exp + 1));
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    auto d = mant.find('.');
    std::string digits = mant;
    if (d != std::string::npos) {
      e10 -= static_cast<long>(mant.size() - d - 1);
      digits = mant.substr(0, d) + mant.substr(d + 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error("malformed decimal literal '" + s + "'");
    mpz_class n(digits, 10);
    mpq_class q(n);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e10)));
    if (e10 >= 0) q *= p10; else q /= p10;
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  }
  auto slash = t.find('/');
  auto valid_int = [](const std::string& x) {
    std::size_t k = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    return x.size() > k && x.find_first_not_of("0123456789", k) == std::string::npos;
  };
  std::string a = slash == std::string::npos ? t : t.substr(0, slash);
  std::string b = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b) || b[0] == '-' || b[0] == '+')
    throw Error("malformed rational literal '" + s + "'");
  if (a[0] == '+') a = a.substr(1);
  mpz_class num(a, 10), den(b, 10);
  if (den == 0) throw Error("zero denominator in '" + s + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string qstr(const mpq_class& q) { return q.get_str(); }

// round to nearest double (mpq get_d truncates)
double nearest_double(const mpq_class& q) {
  double d = q.get_d();
  if (!std::isfinite(d)) return d;
  double best = d;
  mpq_class err = abs(q - mpq_class(d));
  for (double c : {std::nextafter(d, HUGE_VAL), std::nextafter(d, -HUGE_VAL)}) {
    if (!std::isfinite(c)) continue;
    mpq_class e = abs(q - mpq_class(c));
    if (e < err) {
      err = e;
      best = c;
    }
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------- GaussianRational

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
  return {parse_rational(re), parse_rational(im)};
}

cplx GaussianRational::to_complex() const { return {nearest_double(re_), nearest_double(im_)}; }

GaussianRational GaussianRational::from_double(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("non-finite value");
  return {mpq_class(v.real()), mpq_class(v.imag())};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw Error("division by zero");
  mpq_class n = o.norm2();
  GaussianRational c = bar(o);
  *this *= c;
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return qstr(re_);
  if (sgn(re_) == 0) return qstr(im_) + "i";
  return "(" + qstr(re_) + (sgn(im_) > 0 ? "+" : "") + qstr(im_) + "i)";
}

GaussianRational bar(const GaussianRational& x) { return {x.re(), -x.im()}; }

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(long c) {
  if (c != 0) terms_[{0, 0}] = GaussianRational(c);
}

BiPoly::BiPoly(const GaussianRational& c) {
  if (!c.is_zero()) terms_[{0, 0}] = c;
}

BiPoly BiPoly::monomial(const GaussianRational& c, int dz, int dw) {
  BiPoly p;
  if (!c.is_zero()) p.terms_[{dz, dw}] = c;
  return p;
}

BiPoly BiPoly::in_z(const std::vector<GaussianRational>& coeffs) {
  BiPoly p;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) p.terms_[{static_cast<int>(k), 0}] = coeffs[k];
  return p;
}

bool BiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0});
}

GaussianRational BiPoly::coeff(int dz, int dw) const {
  auto it = terms_.find({dz, dw});
  return it == terms_.end() ? GaussianRational() : it->second;
}

int BiPoly::deg_z() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first);
  return d;
}

int BiPoly::deg_w() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.second);
  return d;
}

int BiPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
  return d;
}

BiPoly::Mono BiPoly::min_exponents() const {
  Mono r = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    r.first = std::min(r.first, m.first);
    r.second = std::min(r.second, m.second);
  }
  return r;
}

void BiPoly::add_term(const Mono& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.size() == 1 && a.terms_.begin()->first == BiPoly::Mono{0, 0}) return a.terms_.begin()->second * b;
  if (b.size() == 1 && b.terms_.begin()->first == BiPoly::Mono{0, 0}) return b.terms_.begin()->second * a;
  // dense accumulation keeps the map out of the inner loop
  const int dz = a.deg_z() + b.deg_z() + 1;
  const int dw = a.deg_w() + b.deg_w() + 1;
  std::vector<GaussianRational> acc(static_cast<std::size_t>(dz) * dw);
  std::vector<char> used(acc.size(), 0);
  GaussianRational t;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      std::size_t k = static_cast<std::size_t>(ma.first + mb.first) * dw + (ma.second + mb.second);
      t = ca;
      t *= cb;
      acc[k] += t;
      used[k] = 1;
    }
  }
  for (int i = 0; i < dz; ++i)
    for (int j = 0; j < dw; ++j) {
      std::size_t k = static_cast<std::size_t>(i) * dw + j;
      if (used[k] && !acc[k].is_zero()) r.terms_.emplace_hint(r.terms_.end(), BiPoly::Mono{i, j}, std::move(acc[k]));
    }
  return r;
}

BiPoly BiPoly::shift_down(int dz, int dw) const {
  BiPoly r;
  for (const auto& [m, c] : terms_) {
    if (m.first < dz || m.second < dw) throw Error("shift_down would produce negative exponent");
    r.terms_.emplace_hint(r.terms_.end(), Mono{m.first - dz, m.second - dw}, c);
  }
  return r;
}

BiPoly BiPoly::swap_vars() const {
  BiPoly r;
  for (const auto& [m, c] : terms_) r.terms_[{m.second, m.first}] = c;
  return r;
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (m.first) os << "*z^" << m.first;
    if (m.second) os << "*w^" << m.second;
  }
  return os.str();
}

BiPoly bar(const BiPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms()) r.add_term({m.second, m.first}, bar(c));
  return r;
}

BiPoly d_dz(const BiPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms())
    if (m.first > 0) r.add_term({m.first - 1, m.second}, c * GaussianRational(m.first));
  return r;
}

BiPoly d_dzbar(const BiPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms())
    if (m.second > 0) r.add_term({m.first, m.second - 1}, c * GaussianRational(m.second));
  return r;
}

BiPoly antiderivative_z(const BiPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms())
    r.add_term({m.first + 1, m.second}, c / GaussianRational(m.first + 1));
  return r;
}

BiPoly pow(const BiPoly& p, int k) {
  BiPoly r(1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  BiPoly q, r = a;
  const auto lb = b.leading();
  const GaussianRational cb = b.terms().rbegin()->second;
  while (!r.is_zero()) {
    auto lr = r.leading();
    if (lr.first < lb.first || lr.second < lb.second) return std::nullopt;
    BiPoly t = BiPoly::monomial(r.terms().rbegin()->second / cb, lr.first - lb.first, lr.second - lb.second);
    q += t;
    r -= t * b;
  }
  return q;
}

BiPoly scale_vars(const BiPoly& p, const GaussianRational& c, const GaussianRational& d) {
  BiPoly r;
  for (const auto& [m, v] : p.terms()) {
    GaussianRational f = v;
    for (int k = 0; k < m.first; ++k) f *= c;
    for (int k = 0; k < m.second; ++k) f *= d;
    r.add_term(m, f);
  }
  return r;
}

GaussianRational evaluate_exact(const BiPoly& p, const GaussianRational& z, const GaussianRational& w) {
  if (p.is_zero()) return {};
  std::vector<GaussianRational> zp(p.deg_z() + 1, GaussianRational(1)), wp(p.deg_w() + 1, GaussianRational(1));
  for (std::size_t k = 1; k < zp.size(); ++k) zp[k] = zp[k - 1] * z;
  for (std::size_t k = 1; k < wp.size(); ++k) wp[k] = wp[k - 1] * w;
  GaussianRational s;
  for (const auto& [m, c] : p.terms()) s += c * zp[m.first] * wp[m.second];
  return s;
}

cplx evaluate(const BiPoly& p, cplx z) {
  GaussianRational ez = GaussianRational::from_double(z);
  return evaluate_exact(p, ez, bar(ez)).to_complex();
}

cplx evaluate_zw(const BiPoly& p, cplx z, cplx w) {
  if (p.is_zero()) return 0.0;
  std::vector<cplx> zp(p.deg_z() + 1, 1.0), wp(p.deg_w() + 1, 1.0);
  for (std::size_t k = 1; k < zp.size(); ++k) zp[k] = zp[k - 1] * z;
  for (std::size_t k = 1; k < wp.size(); ++k) wp[k] = wp[k - 1] * w;
  cplx s = 0.0;
  for (const auto& [m, c] : p.terms()) s += c.to_complex() * zp[m.first] * wp[m.second];
  return s;
}

double magnitude_bound(const BiPoly& p, cplx z) {
  double a = std::abs(z), s = 0.0;
  for (const auto& [m, c] : p.terms()) s += std::abs(c.to_complex()) * std::pow(a, m.first + m.second);
  return s;
}

// ---------------------------------------------------------------- RationalFn

RationalFn::RationalFn(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DenominatorVanishes("rational function with zero denominator");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = BiPoly(1);
    return;
  }
  // strip the common monomial factor
  auto mn = num_.min_exponents();
  auto md = den_.min_exponents();
  int sz = std::min(mn.first, md.first), sw = std::min(mn.second, md.second);
  if (sz || sw) {
    num_ = num_.shift_down(sz, sw);
    den_ = den_.shift_down(sz, sw);
  }
  // make the denominator monic in lex order
  GaussianRational lc = den_.terms().rbegin()->second;
  if (!lc.is_one()) {
    GaussianRational inv = GaussianRational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
  if (den_.is_constant()) return;
  if (auto q = divide_exact(num_, den_)) {
    num_ = std::move(*q);
    den_ = BiPoly(1);
  }
}

RationalFn RationalFn::cancel(const BiPoly& factor) const {
  auto n = divide_exact(num_, factor);
  auto d = divide_exact(den_, factor);
  if (n && d) return {std::move(*n), std::move(*d)};
  return *this;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else if (o.den_.is_constant()) {
    num_ += o.num_ * den_ * (GaussianRational(1) / o.den_.coeff(0, 0));
  } else if (den_.is_constant()) {
    num_ = num_ * o.den_ * (GaussianRational(1) / den_.coeff(0, 0)) + o.num_;
    den_ = o.den_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
  if (o.num_.is_zero()) throw DenominatorVanishes("division by the zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

std::string RationalFn::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFn bar(const RationalFn& x) { return {bar(x.num()), bar(x.den())}; }

RationalFn d_dz(const RationalFn& x) {
  if (x.den().is_constant()) return {d_dz(x.num()), x.den()};
  return {d_dz(x.num()) * x.den() - x.num() * d_dz(x.den()), x.den() * x.den()};
}

RationalFn d_dzbar(const RationalFn& x) {
  if (x.den().is_constant()) return {d_dzbar(x.num()), x.den()};
  return {d_dzbar(x.num()) * x.den() - x.num() * d_dzbar(x.den()), x.den() * x.den()};
}

cplx evaluate(const RationalFn& x, cplx z, const Tolerance& tol) {
  GaussianRational ez = GaussianRational::from_double(z);
  GaussianRational ew = bar(ez);
  GaussianRational d = evaluate_exact(x.den(), ez, ew);
  double scale = magnitude_bound(x.den(), z);
  if (d.is_zero() || std::abs(d.to_complex()) <= tol.den_floor * scale)
    throw DenominatorVanishes("denominator vanishes at z = (" + std::to_string(z.real()) + ", " +
                              std::to_string(z.imag()) + ")");
  return (evaluate_exact(x.num(), ez, ew) / d).to_complex();
}

}  // namespace willmore
