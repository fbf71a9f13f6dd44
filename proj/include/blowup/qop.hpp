// Copyright 2026 The blowup-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense complex operators: Kronecker products, partial traces, a cyclic
// Jacobi Hermitian eigensolver and spectral matrix functions.
//
// Everything is templated on the real scalar type; `Op` is the double
// precision instantiation used by the rest of the library. Dimensions are
// expected to be tiny (<= 16), so no attempt is made at blocking or sparsity.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "blowup/errors.hpp"

namespace blowup {

using Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Factorization of a bipartite Hilbert space, system factor first.
struct SubsystemDims {
  Index system = 0;
  Index environment = 0;
  friend bool operator==(const SubsystemDims&, const SubsystemDims&) = default;
};

enum class Subsystem { System, Environment };

enum class OperatorRole { General, Observable, Density, Unitary };

template <typename Real>
struct Tolerances {
  // relative, applied as tol * (1 + max|A|)
  static constexpr Real hermitian = Real(1e-12);
  static constexpr Real trace = Real(1e-10);
  static constexpr Real positivity = Real(1e-10);
};

/// Square complex matrix with an optional bipartite structure and a role tag.
template <typename Real>
class Operator {
 public:
  using RealScalar = Real;
  using Scalar = Complex<Real>;
  using Matrix = CMatrix<Real>;

  Operator() = default;

  template <typename Derived>
  explicit Operator(const Eigen::MatrixBase<Derived>& entries,
                    std::optional<SubsystemDims> dims = std::nullopt,
                    OperatorRole role = OperatorRole::General)
      : entries_(entries.template cast<Scalar>()), dims_(dims), role_(role) {
    if (entries_.rows() != entries_.cols()) {
      throw DimensionError("operator must be square, got " +
                           std::to_string(entries_.rows()) + "x" +
                           std::to_string(entries_.cols()));
    }
    if (dims_ && dims_->system * dims_->environment != entries_.rows()) {
      throw DimensionError("subsystem dimensions " +
                           std::to_string(dims_->system) + "x" +
                           std::to_string(dims_->environment) +
                           " do not factor dimension " +
                           std::to_string(entries_.rows()));
    }
  }

  static Operator identity(Index n) { return Operator(Matrix::Identity(n, n)); }
  static Operator zero(Index n) { return Operator(Matrix::Zero(n, n)); }

  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  Scalar operator()(Index i, Index j) const { return entries_(i, j); }

  const std::optional<SubsystemDims>& subsystems() const { return dims_; }
  OperatorRole role() const { return role_; }

  Operator with_subsystems(std::optional<SubsystemDims> dims) const {
    return Operator(entries_, dims, role_);
  }
  Operator with_role(OperatorRole role) const {
    return Operator(entries_, dims_, role);
  }

  Operator adjoint() const { return Operator(entries_.adjoint().eval(), dims_, role_); }
  Scalar trace() const { return entries_.trace(); }

  friend Operator operator+(const Operator& a, const Operator& b) {
    check_same_dim(a, b);
    return Operator((a.entries_ + b.entries_).eval(), merged(a, b));
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    check_same_dim(a, b);
    return Operator((a.entries_ - b.entries_).eval(), merged(a, b));
  }
  friend Operator operator*(const Operator& a, const Operator& b) {
    check_same_dim(a, b);
    return Operator((a.entries_ * b.entries_).eval(), merged(a, b));
  }
  friend Operator operator*(Scalar s, const Operator& a) {
    return Operator((s * a.entries_).eval(), a.dims_);
  }
  friend Operator operator*(Real s, const Operator& a) {
    return Operator((s * a.entries_).eval(), a.dims_);
  }
  friend Operator operator*(const Operator& a, Real s) { return s * a; }

 private:
  static void check_same_dim(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
      throw DimensionError("operator dimensions differ: " +
                           std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()));
    }
  }
  static std::optional<SubsystemDims> merged(const Operator& a, const Operator& b) {
    return a.dims_ ? a.dims_ : b.dims_;
  }

  Matrix entries_;
  std::optional<SubsystemDims> dims_;
  OperatorRole role_ = OperatorRole::General;
};

using Op = Operator<double>;

template <typename Real>
struct SpectralData {
  RVector<Real> eigenvalues;   // ascending
  CMatrix<Real> eigenvectors;  // columns
};

// ---------------------------------------------------------------------------
// Norms and structural checks

template <typename Real>
Real max_abs(const Operator<Real>& a) {
  return a.dim() == 0 ? Real(0) : a.matrix().cwiseAbs().maxCoeff();
}

template <typename Real>
Real frobenius_norm(const Operator<Real>& a) {
  return a.matrix().norm();
}

template <typename Real>
Real frobenius_distance(const Operator<Real>& a, const Operator<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("frobenius_distance: dimension mismatch");
  return (a.matrix() - b.matrix()).norm();
}

template <typename Real>
Real hermiticity_defect(const Operator<Real>& a) {
  return a.dim() == 0 ? Real(0) : (a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
bool is_hermitian(const Operator<Real>& a) {
  return hermiticity_defect(a) <= Tolerances<Real>::hermitian * (Real(1) + max_abs(a));
}

// ---------------------------------------------------------------------------
// Tensor structure

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
template <typename Real>
Operator<Real> kron(const Operator<Real>& a, const Operator<Real>& b) {
  const Index da = a.dim();
  const Index db = b.dim();
  CMatrix<Real> out(da * db, da * db);
  for (Index i = 0; i < da; ++i) {
    for (Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return Operator<Real>(out, SubsystemDims{da, db});
}

/// Traces out the complementary factor and keeps `keep`.
template <typename Real>
Operator<Real> partial_trace(const Operator<Real>& rho, Subsystem keep) {
  if (!rho.subsystems()) {
    throw DimensionError("partial_trace: operator has no subsystem structure");
  }
  const Index ds = rho.subsystems()->system;
  const Index db = rho.subsystems()->environment;
  const auto& m = rho.matrix();
  if (keep == Subsystem::System) {
    CMatrix<Real> out = CMatrix<Real>::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i)
      for (Index j = 0; j < ds; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
    return Operator<Real>(out);
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(db, db);
  for (Index k = 0; k < ds; ++k) out += m.block(k * db, k * db, db, db);
  return Operator<Real>(out);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace detail {

/// Cyclic Jacobi with complex rotations; sweeps pairs (p,q) in row order.
template <typename Real>
SpectralData<Real> jacobi_eigen(CMatrix<Real> a) {
  using C = Complex<Real>;
  const Index n = a.rows();
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);
  const Real scale = a.norm();
  const Real eps = std::numeric_limits<Real>::epsilon();

  auto off_diagonal = [&] {
    Real s = 0;
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    const Real off = off_diagonal();
    if (off == Real(0) || off <= eps * eps * scale) break;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Real r = std::abs(a(p, q));
        if (r <= std::numeric_limits<Real>::min()) continue;
        const C phase = a(p, q) / r;  // e^{i phi}
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        const Real tau = (aqq - app) / (Real(2) * r);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;
        const C ph_conj = std::conj(phase);

        // A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        for (Index k = 0; k < n; ++k) {
          const C akp = a(k, p);
          const C akq = a(k, q);
          a(k, p) = c * akp - s * ph_conj * akq;
          a(k, q) = s * akp + c * ph_conj * akq;
        }
        // A <- G^dagger A
        for (Index k = 0; k < n; ++k) {
          const C apk = a(p, k);
          const C aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(std::real(a(p, p)), 0);
        a(q, q) = C(std::real(a(q, q)), 0);
        for (Index k = 0; k < n; ++k) {
          const C vkp = v(k, p);
          const C vkq = v(k, q);
          v(k, p) = c * vkp - s * ph_conj * vkq;
          v(k, q) = s * vkp + c * ph_conj * vkq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });
  SpectralData<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = std::real(a(order[k], order[k]));
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
template <typename Real>
SpectralData<Real> herm_eig(const Operator<Real>& a) {
  if (!is_hermitian(a)) {
    throw ValidationError("herm_eig: operator is not Hermitian (defect " +
                          std::to_string(static_cast<double>(hermiticity_defect(a))) + ")");
  }
  CMatrix<Real> sym = (a.matrix() + a.matrix().adjoint()) / Real(2);
  return detail::jacobi_eigen<Real>(std::move(sym));
}

// ---------------------------------------------------------------------------
// Spectral functions

/// V diag(f(lambda)) V^dagger for Hermitian `a`. `f` may return a real or a
/// complex value.
template <typename Real, typename F>
Operator<Real> matrix_function(const Operator<Real>& a, F&& f) {
  const SpectralData<Real> spec = herm_eig(a);
  const Index n = a.dim();
  Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1> values(n);
  for (Index k = 0; k < n; ++k) values(k) = Complex<Real>(f(spec.eigenvalues(k)));
  CMatrix<Real> out = spec.eigenvectors * values.asDiagonal() * spec.eigenvectors.adjoint();
  return Operator<Real>(out, a.subsystems());
}

/// a^x for positive semidefinite `a` and x > 0, with 0^x = 0. Eigenvalues in
/// (-1e-10, 0] are clamped to zero.
template <typename Real>
Operator<Real> fractional_power(const Operator<Real>& a, Real x) {
  if (!(x > Real(0))) throw DomainError("fractional_power: exponent must be positive");
  const SpectralData<Real> spec = herm_eig(a);
  if (spec.eigenvalues(0) < -Tolerances<Real>::positivity) {
    throw DomainError("fractional_power: operator has negative eigenvalue " +
                      std::to_string(static_cast<double>(spec.eigenvalues(0))));
  }
  const Index n = a.dim();
  RVector<Real> values(n);
  for (Index k = 0; k < n; ++k) {
    const Real lam = std::max(spec.eigenvalues(k), Real(0));
    values(k) = lam == Real(0) ? Real(0) : std::pow(lam, x);
  }
  CMatrix<Real> out = spec.eigenvectors * values.template cast<Complex<Real>>().asDiagonal() *
                      spec.eigenvectors.adjoint();
  return Operator<Real>(out, a.subsystems());
}

/// U(t) = exp(-i H t), hbar = 1.
template <typename Real>
Operator<Real> propagator(const Operator<Real>& h, Real t) {
  return matrix_function(h, [t](Real lam) {
           return std::exp(Complex<Real>(0, -lam * t));
         }).with_role(OperatorRole::Unitary);
}

/// exp(-beta H) / Tr exp(-beta H), evaluated with the spectrum shifted by its
/// minimum so that no exponent is positive.
template <typename Real>
Operator<Real> gibbs_state(const Operator<Real>& h, Real beta) {
  const SpectralData<Real> spec = herm_eig(h);
  const Index n = h.dim();
  const Real e0 = spec.eigenvalues(0);
  RVector<Real> w(n);
  for (Index k = 0; k < n; ++k) w(k) = std::exp(-beta * (spec.eigenvalues(k) - e0));
  w /= w.sum();
  CMatrix<Real> out = spec.eigenvectors * w.template cast<Complex<Real>>().asDiagonal() *
                      spec.eigenvectors.adjoint();
  return Operator<Real>(out, h.subsystems(), OperatorRole::Density);
}

// ---------------------------------------------------------------------------
// Density matrices

template <typename Real>
struct DensityReport {
  Real hermiticity_defect = 0;
  Real trace_defect = 0;
  Real min_eigenvalue = 0;
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool passed() const { return hermitian && unit_trace && positive; }
  explicit operator bool() const { return passed(); }

  std::string describe() const {
    std::string s;
    if (!hermitian) s += "not Hermitian (defect " + std::to_string(static_cast<double>(hermiticity_defect)) + "); ";
    if (!unit_trace) s += "trace defect " + std::to_string(static_cast<double>(trace_defect)) + "; ";
    if (!positive) s += "negative eigenvalue " + std::to_string(static_cast<double>(min_eigenvalue)) + "; ";
    return s.empty() ? "valid density matrix" : s;
  }
};

template <typename Real>
DensityReport<Real> validate_density(const Operator<Real>& rho) {
  DensityReport<Real> r;
  r.hermiticity_defect = hermiticity_defect(rho);
  r.hermitian = r.hermiticity_defect <= Tolerances<Real>::hermitian * (Real(1) + max_abs(rho));
  r.trace_defect = std::abs(rho.trace() - Complex<Real>(1));
  r.unit_trace = r.trace_defect <= Tolerances<Real>::trace;
  // the spectrum of the Hermitian part is still informative for a failed
  // Hermiticity check
  CMatrix<Real> sym = (rho.matrix() + rho.matrix().adjoint()) / Real(2);
  r.min_eigenvalue = rho.dim() == 0 ? Real(0) : detail::jacobi_eigen<Real>(std::move(sym)).eigenvalues(0);
  r.positive = r.min_eigenvalue >= -Tolerances<Real>::positivity;
  return r;
}

/// Expectation value Tr(rho X), real part.
template <typename Real>
Real expectation(const Operator<Real>& rho, const Operator<Real>& x) {
  if (rho.dim() != x.dim()) throw DimensionError("expectation: dimension mismatch");
  return std::real((rho.matrix() * x.matrix()).trace());
}

}  // namespace blowup
