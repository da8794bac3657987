#pragma once

// Fixed-size dense complex linear algebra for one- and two-qubit state
// spaces (N = 2 and N = 4). Everything lives on the stack, row-major.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace geogate {

using cplx = std::complex<double>;
inline constexpr cplx iu{0.0, 1.0};

template <int N>
struct Vec {
  std::array<cplx, N> a{};

  cplx& operator[](int i) { return a[i]; }
  const cplx& operator[](int i) const { return a[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < N; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(cplx c) {
    for (auto& x : a) x *= c;
    return *this;
  }
};

template <int N>
struct Mat {
  std::array<cplx, N * N> a{};

  cplx& operator()(int i, int j) { return a[i * N + j]; }
  const cplx& operator()(int i, int j) const { return a[i * N + j]; }

  Mat& operator+=(const Mat& o) {
    for (int i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (int i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(cplx c) {
    for (auto& x : a) x *= c;
    return *this;
  }
};

template <int N>
Vec<N> operator+(Vec<N> u, const Vec<N>& v) { return u += v; }
template <int N>
Vec<N> operator-(Vec<N> u, const Vec<N>& v) { return u -= v; }
template <int N>
Vec<N> operator*(cplx c, Vec<N> v) { return v *= c; }
template <int N>
Vec<N> operator*(Vec<N> v, cplx c) { return v *= c; }

template <int N>
Mat<N> operator+(Mat<N> x, const Mat<N>& y) { return x += y; }
template <int N>
Mat<N> operator-(Mat<N> x, const Mat<N>& y) { return x -= y; }
template <int N>
Mat<N> operator*(cplx c, Mat<N> m) { return m *= c; }
template <int N>
Mat<N> operator*(Mat<N> m, cplx c) { return m *= c; }

template <int N>
Vec<N> operator*(const Mat<N>& m, const Vec<N>& v) {
  Vec<N> r;
  for (int i = 0; i < N; ++i) {
    cplx s = 0;
    for (int j = 0; j < N; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

template <int N>
Mat<N> operator*(const Mat<N>& x, const Mat<N>& y) {
  Mat<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      cplx s = 0;
      for (int k = 0; k < N; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

template <int N>
Mat<N> identity() {
  Mat<N> m;
  for (int i = 0; i < N; ++i) m(i, i) = 1;
  return m;
}

template <int N>
Mat<N> dagger(const Mat<N>& m) {
  Mat<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

template <int N>
cplx trace(const Mat<N>& m) {
  cplx s = 0;
  for (int i = 0; i < N; ++i) s += m(i, i);
  return s;
}

// <u|v>, antilinear in the first argument
template <int N>
cplx inner(const Vec<N>& u, const Vec<N>& v) {
  cplx s = 0;
  for (int i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

template <int N>
double norm2(const Vec<N>& v) {
  double s = 0;
  for (const auto& x : v.a) s += std::norm(x);
  return s;
}

template <int N>
double norm(const Vec<N>& v) { return std::sqrt(norm2(v)); }

template <int N>
Vec<N> normalized(const Vec<N>& v) {
  double n = norm(v);
  if (n < 1e-150) throw std::runtime_error("normalized: zero vector");
  Vec<N> r = v;
  return r *= cplx(1.0 / n);
}

// |u><v|
template <int N>
Mat<N> outer(const Vec<N>& u, const Vec<N>& v) {
  Mat<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

template <int N>
double frob(const Mat<N>& m) {
  double s = 0;
  for (const auto& x : m.a) s += std::norm(x);
  return std::sqrt(s);
}

// <psi|op|psi>
template <int N>
cplx expect(const Vec<N>& psi, const Mat<N>& op) {
  return inner(psi, op * psi);
}

template <int N>
double expect_re(const Vec<N>& psi, const Mat<N>& op) {
  return std::real(expect(psi, op));
}

template <int N>
Vec<N> basis(int k) {
  Vec<N> v;
  v[k] = 1;
  return v;
}

template <int N>
Vec<N> col(const Mat<N>& m, int j) {
  Vec<N> v;
  for (int i = 0; i < N; ++i) v[i] = m(i, j);
  return v;
}

// Kronecker products; the first factor is the slow index (qubit a in
// the two-qubit ordering |ab>).
inline Mat<4> kron(const Mat<2>& x, const Mat<2>& y) {
  Mat<4> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

inline Vec<4> kron(const Vec<2>& x, const Vec<2>& y) {
  Vec<4> r;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) r[2 * i + k] = x[i] * y[k];
  return r;
}

inline const Mat<2> pauli_x = [] {
  Mat<2> m;
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}();

inline const Mat<2> pauli_y = [] {
  Mat<2> m;
  m(0, 1) = -iu;
  m(1, 0) = iu;
  return m;
}();

inline const Mat<2> pauli_z = [] {
  Mat<2> m;
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}();

// expectation bases: 1q order {I, x, y, z}; 2q entry i*4+j is kron(P_i, P_j)
inline const std::array<Mat<2>, 4>& pauli_table_1q() {
  static const std::array<Mat<2>, 4> t = {identity<2>(), pauli_x, pauli_y, pauli_z};
  return t;
}

inline const std::array<Mat<4>, 16>& pauli_table_2q() {
  static const std::array<Mat<4>, 16> t = [] {
    std::array<Mat<4>, 16> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i * 4 + j] = kron(pauli_table_1q()[i], pauli_table_1q()[j]);
    return out;
  }();
  return t;
}

template <int N>
struct EighResult {
  std::array<double, N> w{};  // ascending
  Mat<N> v;                   // columns are the eigenvectors
};

namespace detail {

template <int N>
double offdiag_frob(const Mat<N>& m) {
  double s = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Each off-diagonal element a_pq = r e^{i phi} is phased real, then a
// real 2x2 rotation zeroes it; sweeps repeat until the off-diagonal
// Frobenius norm falls below 1e-13 relative to the matrix scale.
template <int N>
EighResult<N> eigh(const Mat<N>& m_in) {
  Mat<N> m = m_in;
  Mat<N> v = identity<N>();
  const double scale = std::max(1.0, frob(m_in));
  const double tol = 1e-13 * scale;

  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    if (detail::offdiag_frob(m) <= tol) {
      converged = true;
      break;
    }
    for (int p = 0; p < N - 1; ++p)
      for (int q = p + 1; q < N; ++q) {
        const double r = std::abs(m(p, q));
        if (r <= 1e-18 * scale) continue;
        const cplx ph = m(p, q) / r;  // e^{i phi}
        const double app = std::real(m(p, p));
        const double aqq = std::real(m(q, q));
        const double tau = (aqq - app) / (2 * r);
        // smaller-magnitude root of t^2 + 2 tau t - 1 = 0
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        // embedded 2x2 unitary U = [[ph c, ph s], [-s, c]]
        const cplx upp = ph * c, upq = ph * s;
        for (int k = 0; k < N; ++k) {  // columns: A <- A U, V <- V U
          const cplx akp = m(k, p), akq = m(k, q);
          m(k, p) = upp * akp - s * akq;
          m(k, q) = upq * akp + c * akq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = upp * vkp - s * vkq;
          v(k, q) = upq * vkp + c * vkq;
        }
        for (int k = 0; k < N; ++k) {  // rows: A <- U^dag A
          const cplx apk = m(p, k), aqk = m(q, k);
          m(p, k) = std::conj(upp) * apk - s * aqk;
          m(q, k) = std::conj(upq) * apk + c * aqk;
        }
      }
  }
  if (!converged && detail::offdiag_frob(m) > tol)
    throw std::runtime_error("eigh: jacobi sweep limit reached");

  EighResult<N> out;
  std::array<int, N> idx{};
  for (int i = 0; i < N; ++i) idx[i] = i;
  std::array<double, N> d{};
  for (int i = 0; i < N; ++i) d[i] = std::real(m(i, i));
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
  for (int i = 0; i < N; ++i) {
    out.w[i] = d[idx[i]];
    for (int k = 0; k < N; ++k) out.v(k, i) = v(k, idx[i]);
  }
  return out;
}

// e^{-i h t} for Hermitian h
template <int N>
Mat<N> expm_herm(const Mat<N>& h, double t) {
  const auto ed = eigh(h);
  Mat<N> u;
  for (int k = 0; k < N; ++k) {
    const cplx phase = std::exp(cplx(0, -ed.w[k] * t));
    const Vec<N> vk = col(ed.v, k);
    u += phase * outer(vk, vk);
  }
  return u;
}

// Square root of a positive semidefinite Hermitian matrix. Slightly
// negative eigenvalues from roundoff are clamped to zero.
template <int N>
Mat<N> herm_sqrt(const Mat<N>& m) {
  const auto ed = eigh(m);
  Mat<N> r;
  for (int k = 0; k < N; ++k) {
    const double w = ed.w[k] > 0 ? ed.w[k] : 0.0;
    const Vec<N> vk = col(ed.v, k);
    r += cplx(std::sqrt(w)) * outer(vk, vk);
  }
  return r;
}

}  // namespace geogate
