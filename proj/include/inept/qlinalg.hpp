#pragma once

// Dense complex linear algebra for the fixed small dimensions used by the
// two-qubit analysis. Matrices are stored row-major. For dimension 4 the
// computational basis is ordered |00>, |01>, |10>, |11>, i.e. the flat index
// of |jk> is 2*j + k with j the A qubit and k the B qubit.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>

#include "inept/errors.hpp"

namespace inept {

using Complex = std::complex<double>;

inline constexpr double kHermTol = 1e-9;
inline constexpr double kReconTol = 1e-10;
inline constexpr double kPsdClamp = 1e-10;
inline constexpr double kPsdReject = 1e-8;

inline constexpr double kJacobiTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

template <std::size_t N>
struct CMatrix {
  std::array<Complex, N * N> data{};

  static constexpr std::size_t dim = N;

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return data[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const {
    return data[r * N + c];
  }

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(const std::array<double, N>& d) {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  CMatrix& operator+=(const CMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data[i] += o.data[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data[i] -= o.data[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& x : data) x *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(double s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;
};

using CMatrix2 = CMatrix<2>;
using CMatrix4 = CMatrix<4>;

template <std::size_t N>
CMatrix<N> adjoint(const CMatrix<N>& m) {
  CMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

template <std::size_t N>
CMatrix<N> conjugate(const CMatrix<N>& m) {
  CMatrix<N> r;
  for (std::size_t i = 0; i < N * N; ++i) r.data[i] = std::conj(m.data[i]);
  return r;
}

template <std::size_t N>
Complex trace(const CMatrix<N>& m) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

template <std::size_t N>
double max_abs_diff(const CMatrix<N>& a, const CMatrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a.data[i] - b.data[i]));
  return d;
}

template <std::size_t N>
bool all_finite(const CMatrix<N>& m) {
  return std::all_of(m.data.begin(), m.data.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

/// max_ij |m_ij - conj(m_ji)|
template <std::size_t N>
double hermitian_defect(const CMatrix<N>& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

template <std::size_t N>
bool hermitian_check(const CMatrix<N>& m, double tol = kHermTol) {
  return all_finite(m) && hermitian_defect(m) <= tol;
}

/// Kronecker product a ⊗ b in the |00>,|01>,|10>,|11> ordering.
inline CMatrix4 tensor(const CMatrix2& a, const CMatrix2& b) {
  CMatrix4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

enum class Subsystem { A, B };

/// Reduced state of the kept subsystem.
inline CMatrix2 partial_trace(const CMatrix4& m, Subsystem keep) {
  CMatrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A) {
          r(i, j) += m(2 * i + k, 2 * j + k);
        } else {
          r(i, j) += m(2 * k + i, 2 * k + j);
        }
      }
  return r;
}

template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values{};  // descending
  CMatrix<N> vectors;              // column k pairs with values[k]
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const CMatrix<N>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

template <std::size_t N>
double frobenius_norm(const CMatrix<N>& m) {
  double s = 0.0;
  for (const auto& z : m.data) s += std::norm(z);
  return std::sqrt(s);
}

// Applies A <- G^H A G and V <- V G for the unitary G that is the identity
// outside rows/columns p,q and equals diag(1, ph) * [[c, s], [-s, c]] on them,
// where ph = conj(A_pq)/|A_pq| removes the phase of the pivot before the real
// rotation.
template <std::size_t N>
void jacobi_rotate(CMatrix<N>& a, CMatrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex ph = std::conj(apq) / mag;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c, gpq = s, gqp = -s * ph, gqq = c * ph;

  // A <- A G (columns p, q)
  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  // A <- G^H A (rows p, q)
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace detail

/// Full spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below kJacobiTol
/// times the Frobenius norm of the input, so tiny-scale inputs are resolved to
/// the same relative accuracy as unit-scale ones. Throws ContractViolation for non-Hermitian input and
/// NumericFailure after kJacobiMaxSweeps sweeps.
template <std::size_t N>
EigenDecomposition<N> eig_hermitian(const CMatrix<N>& m) {
  if (!hermitian_check(m, kHermTol)) {
    throw ContractViolation("eig_hermitian: input is not Hermitian (defect " +
                            std::to_string(hermitian_defect(m)) + ")");
  }
  // symmetrize so round-off in the input cannot stall the rotations
  CMatrix<N> a = 0.5 * (m + adjoint(m));
  CMatrix<N> v = CMatrix<N>::identity();
  const double tol = kJacobiTol * detail::frobenius_norm(a);

  int sweep = 0;
  while (detail::off_diagonal_norm(a) > tol) {
    if (++sweep > kJacobiMaxSweeps) {
      throw NumericFailure("eig_hermitian: no convergence after " +
                           std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigenDecomposition<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// V diag(λ) V^H
template <std::size_t N>
CMatrix<N> reconstruct(const EigenDecomposition<N>& e) {
  CMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        r(i, j) += e.vectors(i, k) * e.values[k] * std::conj(e.vectors(j, k));
  return r;
}

/// Hermitian PSD square root. Eigenvalues in [-kPsdReject, 0) are clamped to
/// zero; anything more negative throws ContractViolation.
template <std::size_t N>
CMatrix<N> mat_sqrt_psd(const CMatrix<N>& m) {
  auto e = eig_hermitian(m);
  for (double& l : e.values) {
    if (l < -kPsdReject) {
      throw ContractViolation("mat_sqrt_psd: negative eigenvalue " + std::to_string(l));
    }
    l = std::sqrt(std::max(l, 0.0));
  }
  return reconstruct(e);
}

}  // namespace inept
