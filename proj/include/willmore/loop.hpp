#pragma once

// Dense matrices over a scalar backend, Laurent polynomials in the loop
// parameter lambda, and matrices with Laurent entries (stored by lambda power).

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "willmore/scalar.hpp"

namespace willmore {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

template <class S>
class Laurent {
 public:
  Laurent() = default;
  Laurent(const S& c, int power = 0) { set(power, c); }  // NOLINT

  const std::map<int, S>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  S coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? S(0) : it->second;
  }
  void set(int k, const S& v) {
    if (willmore::is_zero(v)) c_.erase(k); else c_[k] = v;
  }
  int min_power() const { return c_.empty() ? 0 : c_.begin()->first; }
  int max_power() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [k, v] : o.c_) set(k, coeff(k) + v);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [k, v] : o.c_) set(k, coeff(k) - v);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [i, x] : a.c_)
      for (const auto& [j, y] : b.c_) r.set(i + j, r.coeff(i + j) + x * y);
    return r;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (const auto& [k, v] : a.c_)
      if (!(b.coeff(k) == v)) return false;
    return true;
  }

 private:
  std::map<int, S> c_;
};

// bar on Laurent series: conjugate coefficients and send lambda^k to lambda^-k
template <class S>
Laurent<S> bar(const Laurent<S>& x) {
  Laurent<S> r;
  for (const auto& [k, v] : x.coeffs()) r.set(-k, bar(v));
  return r;
}

inline cplx lambda_power(cplx lambda, int k) {
  if (lambda == cplx(0.0)) throw LambdaZero("lambda must be nonzero");
  return std::pow(lambda, k);
}

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int r, int c) : r_(r), c_(c), d_(static_cast<std::size_t>(r) * c, S(0)) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  S& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * c_ + j]; }
  const S& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * c_ + j]; }

  bool is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const S& x) { return willmore::is_zero(x); });
  }

  Matrix block(int i0, int j0, int nr, int nc) const {
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }
  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  template <class F>
  auto map(F f) const {
    using T = decltype(f(std::declval<S>()));
    Matrix<T> m(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.d_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += o.d_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] -= o.d_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const S& x = a(i, k);
        if (willmore::is_zero(x)) continue;
        for (int j = 0; j < b.c_; ++j)
          if (!willmore::is_zero(b(k, j))) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend Matrix operator*(const S& s, Matrix a) {
    for (auto& x : a.d_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (std::size_t k = 0; k < a.d_.size(); ++k)
      if (!(a.d_[k] == b.d_[k])) return false;
    return true;
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix shapes differ");
  }
  int r_ = 0, c_ = 0;
  std::vector<S> d_;
};

template <class S>
Matrix<S> bar(const Matrix<S>& m) {
  return m.map([](const S& x) { return bar(x); });
}

// anti-diagonal permutation matrix
template <class S>
Matrix<S> antidiag(int n) {
  Matrix<S> j(n, n);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = S(1);
  return j;
}

// X |-> J2 X^t Jm for m x 2 input, Jm X^t J2 for 2 x m input (index-reversing transpose)
template <class S>
Matrix<S> sharp(const Matrix<S>& x) {
  if (x.cols() != 2 && x.rows() != 2) throw ShapeError("sharp requires an m x 2 or 2 x m matrix");
  Matrix<S> r(x.cols(), x.rows());
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = x(x.rows() - 1 - j, x.cols() - 1 - i);
  return r;
}

inline CMat sharp(const CMat& x) {
  if (x.cols() != 2 && x.rows() != 2) throw ShapeError("sharp requires an m x 2 or 2 x m matrix");
  return x.transpose().colwise().reverse().rowwise().reverse();
}

inline CMat antidiag_c(int n) { return Eigen::MatrixXd::Identity(n, n).rowwise().reverse().cast<cplx>(); }

template <class S>
Matrix<S> constant_matrix(const Matrix<GaussianRational>& c) {
  return c.map([](const GaussianRational& x) { return from_constant<S>(x); });
}

template <class S>
CMat to_cmat(const Matrix<S>& m, cplx z = 0.0) {
  CMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<S, cplx>) {
        r(i, j) = m(i, j);
      } else if constexpr (std::is_same_v<S, GaussianRational>) {
        (void)z;
        r(i, j) = m(i, j).to_complex();
      } else {
        r(i, j) = evaluate(m(i, j), z);
      }
    }
  return r;
}

inline Matrix<cplx> from_cmat(const CMat& m) {
  Matrix<cplx> r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

// Matrix whose entries are Laurent polynomials in lambda; stored as lambda-power -> coefficient matrix.
// The scalar backend is a template parameter, so mixing backends is a compile error.
template <class S>
class LoopMatrix {
 public:
  LoopMatrix() = default;
  LoopMatrix(int rows, int cols) : r_(rows), c_(cols) {}
  explicit LoopMatrix(const Matrix<S>& m, int power = 0) : r_(m.rows()), c_(m.cols()) { set_coeff(power, m); }
  static LoopMatrix identity(int n) { return LoopMatrix(Matrix<S>::identity(n)); }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const std::map<int, Matrix<S>>& coeffs() const { return cs_; }
  bool is_zero() const { return cs_.empty(); }

  Matrix<S> coeff(int k) const {
    auto it = cs_.find(k);
    return it == cs_.end() ? Matrix<S>(r_, c_) : it->second;
  }
  void set_coeff(int k, const Matrix<S>& m) {
    if (m.rows() != r_ || m.cols() != c_) throw DimensionMismatch("loop coefficient has wrong shape");
    if (m.is_zero()) cs_.erase(k); else cs_[k] = m;
  }
  // lambda-degree window of the nonzero coefficients; {0,0} for the zero loop
  std::pair<int, int> window() const {
    if (cs_.empty()) return {0, 0};
    return {cs_.begin()->first, cs_.rbegin()->first};
  }

  Laurent<S> entry(int i, int j) const {
    Laurent<S> e;
    for (const auto& [k, m] : cs_) e.set(k, m(i, j));
    return e;
  }

  LoopMatrix& operator+=(const LoopMatrix& o) {
    check_same(o);
    for (const auto& [k, m] : o.cs_) set_coeff(k, coeff(k) + m);
    return *this;
  }
  LoopMatrix& operator-=(const LoopMatrix& o) {
    check_same(o);
    for (const auto& [k, m] : o.cs_) set_coeff(k, coeff(k) - m);
    return *this;
  }
  friend LoopMatrix operator+(LoopMatrix a, const LoopMatrix& b) { return a += b; }
  friend LoopMatrix operator-(LoopMatrix a, const LoopMatrix& b) { return a -= b; }
  friend LoopMatrix operator*(const LoopMatrix& a, const LoopMatrix& b) {
    if (a.c_ != b.r_) throw DimensionMismatch("loop matrix product: inner dimensions differ");
    LoopMatrix r(a.r_, b.c_);
    std::map<int, Matrix<S>> acc;
    for (const auto& [i, x] : a.cs_)
      for (const auto& [j, y] : b.cs_) {
        auto it = acc.find(i + j);
        if (it == acc.end()) acc.emplace(i + j, x * y); else it->second += x * y;
      }
    for (auto& [k, m] : acc) r.set_coeff(k, m);
    return r;
  }
  friend bool operator==(const LoopMatrix& a, const LoopMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_ || a.cs_.size() != b.cs_.size()) return false;
    for (const auto& [k, m] : a.cs_)
      if (!(b.coeff(k) == m)) return false;
    return true;
  }

  template <class F>
  LoopMatrix map_coeffs(F f) const {
    LoopMatrix r(r_, c_);
    for (const auto& [k, m] : cs_) {
      Matrix<S> x = f(m);
      r.r_ = x.rows();
      r.c_ = x.cols();
      r.set_coeff(k, x);
    }
    if (cs_.empty()) {
      Matrix<S> x = f(Matrix<S>(r_, c_));
      r.r_ = x.rows();
      r.c_ = x.cols();
    }
    return r;
  }
  LoopMatrix transpose() const {
    return map_coeffs([](const Matrix<S>& m) { return m.transpose(); });
  }
  LoopMatrix shifted(int k) const {
    LoopMatrix r(r_, c_);
    for (const auto& [p, m] : cs_) r.set_coeff(p + k, m);
    return r;
  }
  LoopMatrix bar_loop() const {
    LoopMatrix r(r_, c_);
    for (const auto& [k, m] : cs_) r.set_coeff(-k, bar(m));
    return r;
  }

  // numeric value at (z, lambda); z-bar is bound to conj(z)
  CMat evaluate(cplx z, cplx lambda) const {
    if (lambda == cplx(0.0)) throw LambdaZero("lambda must be nonzero");
    CMat r = CMat::Zero(r_, c_);
    for (const auto& [k, m] : cs_) r += lambda_power(lambda, k) * to_cmat(m, z);
    return r;
  }

 private:
  void check_same(const LoopMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("loop matrix shapes differ");
  }
  int r_ = 0, c_ = 0;
  std::map<int, Matrix<S>> cs_;
};

template <class S>
LoopMatrix<S> bar(const LoopMatrix<S>& a) { return a.bar_loop(); }

template <class S>
LoopMatrix<S> conj_transpose(const LoopMatrix<S>& a) { return a.bar_loop().transpose(); }

}  // namespace willmore
