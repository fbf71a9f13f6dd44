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

// Two spin-1/2 particles: spin 1 is the open system and carries the field
// F_z, spin 2 plays the environment.
//
//   H = -F_z sigma_1^z + e sigma_2^z + g sigma_1^x sigma_2^x
//
// H commutes with sigma_1^z sigma_2^z, so it splits into two 2x2 blocks with
// energies -/+ sqrt((F_z - e)^2 + g^2) (states |uu>, |dd>) and
// -/+ sqrt((F_z + e)^2 + g^2) (states |ud>, |du>). All closed forms below
// follow from that block structure.

#pragma once

#include <Eigen/Dense>

#include <array>

#include "blowup/qop.hpp"

namespace blowup {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct ModelParams {
  double beta = 1.0;
  double e = 1.0;
  double g = 0.0;

  /// Throws ArgumentError unless beta > 0 and e, g are finite.
  void validate() const;
};

namespace pauli {

enum class Axis { X = 0, Y = 1, Z = 2 };

Op identity2();
Op sigma(Axis axis);
Op sigma(int axis);  // 0, 1, 2 for x, y, z

/// sigma^i (x) 1 and 1 (x) sigma^i on the 4-dimensional space.
Op system(int axis);
Op environment(int axis);

/// Projectors onto the sigma^z eigenstates.
Op up_projector();
Op down_projector();

}  // namespace pauli

Op hamiltonian(const ModelParams& p, double fz);

struct AnalyticSpectrum {
  std::array<double, 4> energies;  // E_1..E_4
  std::array<Op, 4> projectors;
};

/// Closed-form energies and eigenprojectors. When an energy of the |uu>,|dd>
/// (or |ud>,|du>) block vanishes the block Hamiltonian is zero and the
/// computational basis states are returned, ordered by <sigma_1^z>
/// descending.
AnalyticSpectrum analytic_spectrum(const ModelParams& p, double fz);

enum class AuxSign { Plus, Minus };

/// (y sinh x +/- x sinh y) / (x y (cosh x + cosh y)), finite at x = 0 or
/// y = 0 and evaluated without overflow for large |x|, |y|.
double aux_F(AuxSign sign, double x, double y);

struct EquilibriumCurvePoint {
  double beta_fz = 0;
  double s1z = 0;
  double s2z = 0;
  double cxx = 0;
  double cyy = 0;
  double czz = 0;
};

/// Closed-form non-zero Bloch and correlation components of exp(-beta H)/Z.
EquilibriumCurvePoint equilibrium_observables(const ModelParams& p, double fz);

/// Closed-form S_1z alone; the hot path of field inversion.
double equilibrium_s1z(const ModelParams& p, double fz);

/// Boltzmann weights of the four analytic levels, max-shifted.
std::array<double, 4> boltzmann_weights(const ModelParams& p, double fz);

struct BlochDecomposition {
  Vec3 s1 = Vec3::Zero();
  Vec3 s2 = Vec3::Zero();
  Mat3 c = Mat3::Zero();
};

/// S_a^i = Tr(rho sigma_a^i), C_ij = Tr(rho sigma_1^i sigma_2^j).
BlochDecomposition bloch_decompose(const Op& rho);

/// (1 + S1.sigma_1 + S2.sigma_2 + sum C_ij sigma_1^i sigma_2^j) / 4.
Op bloch_compose(const BlochDecomposition& b);

/// Bloch vector of a single qubit operator, (Tr rho sigma^x, ...).
Vec3 bloch_vector(const Op& rho);

/// (1 + S.sigma) / 2; DomainError if |S| > 1 + 1e-10.
Op reduced_from_bloch(const Vec3& s);

}  // namespace blowup
