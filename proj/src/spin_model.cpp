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

#include "blowup/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blowup {

void ModelParams::validate() const {
  if (!(beta > 0) || !std::isfinite(beta)) {
    throw ArgumentError("ModelParams: beta must be positive and finite, got " + std::to_string(beta));
  }
  if (!std::isfinite(e) || !std::isfinite(g)) {
    throw ArgumentError("ModelParams: e and g must be finite");
  }
}

namespace pauli {

namespace {

using C = std::complex<double>;

Op make2(C a, C b, C c, C d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return Op(m);
}

const std::array<Op, 3>& single() {
  static const std::array<Op, 3> s{
      make2(0, 1, 1, 0),
      make2(0, C(0, -1), C(0, 1), 0),
      make2(1, 0, 0, -1),
  };
  return s;
}

const std::array<Op, 3>& embedded_system() {
  static const std::array<Op, 3> s{kron(single()[0], identity2()),
                                   kron(single()[1], identity2()),
                                   kron(single()[2], identity2())};
  return s;
}

const std::array<Op, 3>& embedded_environment() {
  static const std::array<Op, 3> s{kron(identity2(), single()[0]),
                                   kron(identity2(), single()[1]),
                                   kron(identity2(), single()[2])};
  return s;
}

void check_axis(int axis) {
  if (axis < 0 || axis > 2) throw ArgumentError("pauli axis must be 0, 1 or 2");
}

}  // namespace

Op identity2() { return Op::identity(2); }

Op sigma(Axis axis) { return single()[static_cast<std::size_t>(axis)]; }

Op sigma(int axis) {
  check_axis(axis);
  return single()[static_cast<std::size_t>(axis)];
}

Op system(int axis) {
  check_axis(axis);
  return embedded_system()[static_cast<std::size_t>(axis)];
}

Op environment(int axis) {
  check_axis(axis);
  return embedded_environment()[static_cast<std::size_t>(axis)];
}

Op up_projector() { return make2(1, 0, 0, 0); }
Op down_projector() { return make2(0, 0, 0, 1); }

}  // namespace pauli

Op hamiltonian(const ModelParams& p, double fz) {
  using namespace pauli;
  const Op h = (-fz) * system(2) + p.e * environment(2) + p.g * (system(0) * environment(0));
  return h.with_subsystems(SubsystemDims{2, 2}).with_role(OperatorRole::Observable);
}

namespace {

// Basis index of |s1 s2> with s = 0 for up, 1 for down.
Op basis_projector(Index k) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(k, k) = 1.0;
  return Op(m, SubsystemDims{2, 2});
}

constexpr double kDegenerateEnergy = 1e-12;

}  // namespace

AnalyticSpectrum analytic_spectrum(const ModelParams& p, double fz) {
  using namespace pauli;
  const double a = fz - p.e;
  const double b = fz + p.e;
  const double ra = std::hypot(a, p.g);
  const double rb = std::hypot(b, p.g);

  AnalyticSpectrum out;
  out.energies = {-ra, ra, -rb, rb};

  const Op one = Op::identity(4).with_subsystems(SubsystemDims{2, 2});
  const Op zz = system(2) * environment(2);
  const Op xx = system(0) * environment(0);
  const Op yy = system(1) * environment(1);
  const Op z_sum = system(2) + environment(2);
  const Op z_diff = system(2) - environment(2);

  for (int i = 0; i < 2; ++i) {
    const double en = out.energies[static_cast<std::size_t>(i)];
    out.projectors[static_cast<std::size_t>(i)] =
        std::abs(en) < kDegenerateEnergy
            ? basis_projector(i == 0 ? 0 : 3)  // |uu>, then |dd>
            : 0.25 * (one + zz - (a / en) * z_sum + (p.g / en) * (xx - yy));
  }
  for (int i = 2; i < 4; ++i) {
    const double en = out.energies[static_cast<std::size_t>(i)];
    out.projectors[static_cast<std::size_t>(i)] =
        std::abs(en) < kDegenerateEnergy
            ? basis_projector(i == 2 ? 1 : 2)  // |ud>, then |du>
            : 0.25 * (one - zz - (b / en) * z_diff + (p.g / en) * (xx + yy));
  }
  return out;
}

namespace {

// sinh(u)/u * exp(-m), for m >= |u|.
double scaled_sinhc(double u, double m) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return (1.0 + u2 / 6.0 + u2 * u2 / 120.0 + u2 * u2 * u2 / 5040.0) * std::exp(-m);
  }
  return (std::exp(u - m) - std::exp(-u - m)) / (2.0 * u);
}

// cosh(u) * exp(-m), for m >= |u|.
double scaled_cosh(double u, double m) { return (std::exp(u - m) + std::exp(-u - m)) / 2.0; }

}  // namespace

double aux_F(AuxSign sign, double x, double y) {
  // the common factor exp(-max(|x|,|y|)) cancels between numerator and
  // denominator
  const double m = std::max(std::abs(x), std::abs(y));
  const double sx = scaled_sinhc(x, m);
  const double sy = scaled_sinhc(y, m);
  const double den = scaled_cosh(x, m) + scaled_cosh(y, m);
  return (sign == AuxSign::Plus ? sx + sy : sx - sy) / den;
}

double equilibrium_s1z(const ModelParams& p, double fz) {
  const double x = -p.beta * std::hypot(fz - p.e, p.g);
  const double y = -p.beta * std::hypot(fz + p.e, p.g);
  return p.beta * (fz * aux_F(AuxSign::Plus, x, y) - p.e * aux_F(AuxSign::Minus, x, y));
}

EquilibriumCurvePoint equilibrium_observables(const ModelParams& p, double fz) {
  const double x = -p.beta * std::hypot(fz - p.e, p.g);  // beta E_1
  const double y = -p.beta * std::hypot(fz + p.e, p.g);  // beta E_3
  const double fp = aux_F(AuxSign::Plus, x, y);
  const double fm = aux_F(AuxSign::Minus, x, y);
  const double m = std::max(std::abs(x), std::abs(y));
  const double c1 = scaled_cosh(x, m);
  const double c3 = scaled_cosh(y, m);

  EquilibriumCurvePoint pt;
  pt.beta_fz = p.beta * fz;
  pt.s1z = p.beta * (fz * fp - p.e * fm);
  pt.s2z = p.beta * (fz * fm - p.e * fp);
  pt.cxx = -p.beta * p.g * fp;
  pt.cyy = p.beta * p.g * fm;
  pt.czz = (c1 - c3) / (c1 + c3);
  return pt;
}

std::array<double, 4> boltzmann_weights(const ModelParams& p, double fz) {
  const double ra = std::hypot(fz - p.e, p.g);
  const double rb = std::hypot(fz + p.e, p.g);
  const std::array<double, 4> energies{-ra, ra, -rb, rb};
  const double emin = std::min(-ra, -rb);
  std::array<double, 4> w{};
  double z = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    w[i] = std::exp(-p.beta * (energies[i] - emin));
    z += w[i];
  }
  for (double& wi : w) wi /= z;
  return w;
}

BlochDecomposition bloch_decompose(const Op& rho) {
  if (rho.dim() != 4) {
    throw DimensionError("bloch_decompose: expected a 4x4 operator, got dimension " +
                         std::to_string(rho.dim()));
  }
  BlochDecomposition b;
  for (int i = 0; i < 3; ++i) {
    b.s1(i) = expectation(rho, pauli::system(i));
    b.s2(i) = expectation(rho, pauli::environment(i));
    for (int j = 0; j < 3; ++j) {
      b.c(i, j) = expectation(rho, pauli::system(i) * pauli::environment(j));
    }
  }
  return b;
}

Op bloch_compose(const BlochDecomposition& b) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    m += b.s1(i) * pauli::system(i).matrix();
    m += b.s2(i) * pauli::environment(i).matrix();
    for (int j = 0; j < 3; ++j) {
      m += b.c(i, j) * (pauli::system(i) * pauli::environment(j)).matrix();
    }
  }
  return Op(m / 4.0, SubsystemDims{2, 2}, OperatorRole::Density);
}

Vec3 bloch_vector(const Op& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("bloch_vector: expected a 2x2 operator, got dimension " +
                         std::to_string(rho.dim()));
  }
  return Vec3(expectation(rho, pauli::sigma(0)), expectation(rho, pauli::sigma(1)),
              expectation(rho, pauli::sigma(2)));
}

Op reduced_from_bloch(const Vec3& s) {
  if (s.norm() > 1.0 + 1e-10) {
    throw DomainError("reduced_from_bloch: |S| = " + std::to_string(s.norm()) + " exceeds 1");
  }
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  for (int i = 0; i < 3; ++i) m += s(i) * pauli::sigma(i).matrix();
  return Op(m / 2.0, std::nullopt, OperatorRole::Density);
}

}  // namespace blowup
