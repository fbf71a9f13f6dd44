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

// Exact propagation of the two-spin system and affine maps on qubit states.
//
// Qubit operators are handled through the real coefficient vector
// c = (Tr rho, Tr rho sigma^x, Tr rho sigma^y, Tr rho sigma^z), so that
// rho = (c_0 + c_x sigma^x + c_y sigma^y + c_z sigma^z) / 2. A trace preserving
// affine map S -> A S + b then is the 4x4 matrix [[1, 0], [b, A]].

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blowup/preparations.hpp"
#include "blowup/qop.hpp"

namespace blowup {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

Vec4 coefficients(const Op& rho_s);
Op from_coefficients(const Vec4& c);

struct ReducedAffineMap {
  Mat4 linear_part = Mat4::Identity();
  std::string meta;

  static ReducedAffineMap identity() { return {}; }

  Mat3 bloch_block() const { return linear_part.block<3, 3>(1, 1); }
  Vec3 offset() const { return linear_part.block<3, 1>(1, 0); }

  Vec4 apply(const Vec4& c) const { return linear_part * c; }
  Op apply(const Op& rho_s) const { return from_coefficients(apply(coefficients(rho_s))); }
};

/// U rho U^dagger with U = exp(-i H t).
Op evolve_total(const Op& rho, const Op& h, double t);

/// Hamiltonian that drives the evolution after preparation; the field is
/// switched off unless `fz` is given.
Op evolution_hamiltonian(const ModelParams& model, std::optional<double> fz = std::nullopt);

/// Tr_B U(t) R(rho_s) U^dagger(t).
Op reduced_evolution(const Preparation& prep, const Op& h, const Op& rho_s, double t);

/// rho_s -> Tr_B U(t) (rho_s (x) rho_b0) U^dagger(t) as an affine map on the
/// coefficient vector.
ReducedAffineMap factorizing_propagator(const Op& h, const Op& rho_b0, double t);

/// x -> A^{-1}(x - b). Throws NonInvertiblePropagatorError when the Bloch
/// block has condition number >= 1e12.
ReducedAffineMap invert_propagator(const ReducedAffineMap& g);

/// Composition `outer` after `inner`.
ReducedAffineMap compose(const ReducedAffineMap& outer, const ReducedAffineMap& inner);

struct AffineFitReport {
  ReducedAffineMap map;
  double residual = 0;  // max Frobenius deviation over the sample
  int sample_size = 0;
  int input_rank = 0;   // rank of the sampled input coefficient vectors
};

struct FitOptions {
  /// Required rank of the input coefficient vectors: 4 spans all qubit
  /// states, 2 suffices for samples on a line (e.g. z-polarized states).
  int min_rank = 4;
};

/// Least-squares affine fit in coefficient space. On a rank-deficient but
/// admissible sample the minimum-norm map is returned; it is exact on the
/// affine hull of the inputs.
AffineFitReport fit_affine_map(std::span<const std::pair<Op, Op>> samples, FitOptions options = {});

}  // namespace blowup
