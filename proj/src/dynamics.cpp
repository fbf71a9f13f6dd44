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

#include "blowup/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace blowup {

namespace {

constexpr double kPropagatorConditionLimit = 1e12;

}  // namespace

Vec4 coefficients(const Op& rho_s) {
  if (rho_s.dim() != 2) {
    throw DimensionError("coefficients: expected a 2x2 operator, got dimension " + std::to_string(rho_s.dim()));
  }
  Vec4 c;
  c(0) = std::real(rho_s.trace());
  c.tail<3>() = bloch_vector(rho_s);
  return c;
}

Op from_coefficients(const Vec4& c) {
  Eigen::Matrix2cd m = c(0) * Eigen::Matrix2cd::Identity();
  for (int i = 0; i < 3; ++i) m += c(i + 1) * pauli::sigma(i).matrix();
  return Op(m / 2.0);
}

Op evolve_total(const Op& rho, const Op& h, double t) {
  if (rho.dim() != h.dim()) {
    throw DimensionError("evolve_total: state has dimension " + std::to_string(rho.dim()) +
                         " but the Hamiltonian has dimension " + std::to_string(h.dim()));
  }
  if (t == 0.0) return rho;
  const Op u = propagator(h, t);
  return Op((u.matrix() * rho.matrix() * u.matrix().adjoint()).eval(), rho.subsystems(), rho.role());
}

Op evolution_hamiltonian(const ModelParams& model, std::optional<double> fz) {
  return hamiltonian(model, fz.value_or(0.0));
}

Op reduced_evolution(const Preparation& prep, const Op& h, const Op& rho_s, double t) {
  const Op total = blow_up(prep, rho_s);
  return partial_trace(evolve_total(total, h, t), Subsystem::System);
}

ReducedAffineMap factorizing_propagator(const Op& h, const Op& rho_b0, double t) {
  if (rho_b0.dim() != 2 || !validate_density(rho_b0)) {
    throw ArgumentError("factorizing_propagator: rho_B0 must be a valid 2x2 density matrix");
  }
  if (h.dim() != 4) throw DimensionError("factorizing_propagator: Hamiltonian must be 4x4");
  const Op u = propagator(h, t);
  ReducedAffineMap g;
  for (int k = 0; k < 4; ++k) {
    const Op basis = from_coefficients(Vec4::Unit(k));  // I/2, sigma^x/2, ...
    const Op total = kron(basis, rho_b0);
    const Op evolved((u.matrix() * total.matrix() * u.matrix().adjoint()).eval(), SubsystemDims{2, 2});
    g.linear_part.col(k) = coefficients(partial_trace(evolved, Subsystem::System));
  }
  g.linear_part.row(0) << 1, 0, 0, 0;
  std::ostringstream meta;
  meta << "factorizing propagator t=" << t;
  g.meta = meta.str();
  return g;
}

ReducedAffineMap invert_propagator(const ReducedAffineMap& g) {
  const Mat3 a = g.bloch_block();
  const Eigen::JacobiSVD<Mat3> svd(a);
  const auto& sv = svd.singularValues();
  const double cond = sv(2) > 0 ? sv(0) / sv(2) : std::numeric_limits<double>::infinity();
  if (!(cond < kPropagatorConditionLimit)) {
    std::ostringstream os;
    os << "reduced propagator is not invertible (Bloch block condition number " << cond << ")";
    throw NonInvertiblePropagatorError(os.str(), cond);
  }
  const Mat3 a_inv = a.inverse();
  ReducedAffineMap inv;
  inv.linear_part.setZero();
  inv.linear_part(0, 0) = 1;
  inv.linear_part.block<3, 3>(1, 1) = a_inv;
  inv.linear_part.block<3, 1>(1, 0) = -a_inv * g.offset();
  inv.meta = "inverse of " + g.meta;
  return inv;
}

ReducedAffineMap compose(const ReducedAffineMap& outer, const ReducedAffineMap& inner) {
  ReducedAffineMap out;
  out.linear_part = outer.linear_part * inner.linear_part;
  out.meta = outer.meta + " o " + inner.meta;
  return out;
}

AffineFitReport fit_affine_map(std::span<const std::pair<Op, Op>> samples, FitOptions options) {
  const auto n = static_cast<Index>(samples.size());
  if (n < 5) {
    throw InsufficientSpanError("fit_affine_map: need at least 5 samples, got " + std::to_string(n), 0);
  }
  Eigen::MatrixXd x(n, 4);
  Eigen::MatrixXd y(n, 4);
  for (Index k = 0; k < n; ++k) {
    x.row(k) = coefficients(samples[static_cast<std::size_t>(k)].first).transpose();
    y.row(k) = coefficients(samples[static_cast<std::size_t>(k)].second).transpose();
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
  const int rank = static_cast<int>(cod.rank());
  if (rank < options.min_rank) {
    throw InsufficientSpanError("fit_affine_map: input samples have rank " + std::to_string(rank) +
                                    ", need " + std::to_string(options.min_rank),
                                rank);
  }
  // minimum-norm least squares for x * M^T = y
  const Eigen::MatrixXd mt = cod.solve(y);

  AffineFitReport report;
  report.map.linear_part = mt.transpose();
  report.map.meta = "least-squares fit";
  report.sample_size = static_cast<int>(n);
  report.input_rank = rank;
  for (Index k = 0; k < n; ++k) {
    const Vec4 fitted = report.map.linear_part * x.row(k).transpose();
    const Op diff = from_coefficients(fitted - y.row(k).transpose());
    report.residual = std::max(report.residual, frobenius_norm(diff));
  }
  return report;
}

}  // namespace blowup
