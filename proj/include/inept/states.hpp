#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "inept/errors.hpp"
#include "inept/qlinalg.hpp"

namespace inept {

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

/// Preparation amplitude `a` of a|00> + sqrt(1-a^2)|11> and the delivery
/// success probability `s`. Both are checked to lie in [0, 1].
class PrepParams {
 public:
  PrepParams(double a, double s) : a_(a), s_(s) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("amplitude a must lie in [0, 1], got " + std::to_string(a));
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("success probability s must lie in [0, 1], got " + std::to_string(s));
  }

  double a() const noexcept { return a_; }
  double s() const noexcept { return s_; }

 private:
  double a_;
  double s_;
};

/// A validated two-qubit density matrix: Hermitian and unit trace within
/// kHermTol, no eigenvalue below -kPsdReject. Only `validate` constructs one.
class DensityMatrix4 {
 public:
  const CMatrix4& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend DensityMatrix4 validate(const CMatrix4& rho);

 private:
  explicit DensityMatrix4(const CMatrix4& m) : m_(m) {}
  CMatrix4 m_;
};

/// Lists every violated density-matrix invariant with its magnitude. Empty
/// when `rho` is a valid state.
inline std::vector<ValidationIssue> check_state(const CMatrix4& rho) {
  std::vector<ValidationIssue> issues;
  if (!all_finite(rho)) {
    issues.push_back({"finite", std::numeric_limits<double>::infinity()});
    return issues;
  }
  const double herm = hermitian_defect(rho);
  if (herm > kHermTol) issues.push_back({"hermitian", herm});
  const double tr_err = std::abs(trace(rho) - Complex{1.0});
  if (tr_err > kHermTol) issues.push_back({"trace", tr_err});
  if (herm <= kHermTol) {
    const double min_eig = eig_hermitian(rho).values.back();
    if (min_eig < -kPsdReject) issues.push_back({"psd", -min_eig});
  }
  return issues;
}

/// Throws ValidationError naming each failed check.
inline DensityMatrix4 validate(const CMatrix4& rho) {
  auto issues = check_state(rho);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return DensityMatrix4(rho);
}

/// |psi_a><psi_a| for |psi_a> = a|00> + sqrt(1-a^2)|11>.
inline DensityMatrix4 psi_a(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("amplitude a must lie in [0, 1], got " + std::to_string(a));
  const double b = std::sqrt(1.0 - a * a);
  CMatrix4 m;
  m(0, 0) = a * a;
  m(0, 3) = a * b;
  m(3, 0) = a * b;
  m(3, 3) = b * b;
  return validate(m);
}

inline DensityMatrix4 bell_state() { return psi_a(kInvSqrt2); }

/// Werner state (5/12) Bell + (7/12) I/4, which admits a local hidden
/// variable model for all non-sequential measurements.
inline DensityMatrix4 barrett_state() {
  const CMatrix4 mixed = 0.25 * CMatrix4::identity();
  return validate((5.0 / 12.0) * bell_state().matrix() + (7.0 / 12.0) * mixed);
}

enum class Axis { X, Y, Z };

inline CMatrix2 pauli(Axis axis) {
  CMatrix2 m;
  switch (axis) {
    case Axis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::Y:
      m(0, 1) = Complex{0.0, -1.0};
      m(1, 0) = Complex{0.0, 1.0};
      break;
    case Axis::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

inline char axis_name(Axis axis) {
  switch (axis) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

}  // namespace inept
