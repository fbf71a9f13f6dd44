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

// Preparation procedures for the two-spin total state and the blow-up maps
// that send a reduced (spin 1) density matrix to the total density matrix the
// procedure would have produced.

#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "blowup/qop.hpp"
#include "blowup/spin_model.hpp"

namespace blowup {

/// Canonical state of the coupled spins with a field F_z on spin 1; only
/// z-polarized reduced states are reachable.
struct EquilibriumPrep {
  ModelParams model;
};

/// rho_S (x) rho_B with a fixed environment state.
struct FactorizingPrep {
  Op rho_b;
};

/// sum_j (O_j (x) 1) rho^{F_z} (O'_j (x) 1). One total state per
/// configuration.
struct OperatorSandwichPrep {
  ModelParams model;
  double fz = 0;
  std::vector<std::pair<Op, Op>> ops;
};

/// rho_S0 (x) rho_B0 evolved for a waiting time t0 under H(fz_wait).
struct FactorizeAndWaitPrep {
  ModelParams model;
  double fz_wait = 0;
  double t0 = 1;
  Op rho_b0;
};

/// First-order expansion of the equilibrium state in the fields conjugate to
/// `observables` (2x2 system operators).
struct MoriPrep {
  ModelParams model;
  std::vector<Op> observables;
  double beta_field_bound = 0.2;  // trust region on beta |F_i|
};

using Preparation =
    std::variant<EquilibriumPrep, FactorizingPrep, OperatorSandwichPrep, FactorizeAndWaitPrep, MoriPrep>;

std::string preparation_name(const Preparation& prep);

/// Checks the static invariants (valid environment states, t0 > 0, ...).
void validate_preparation(const Preparation& prep);

/// exp(-beta H(F_z)) / Z.
Op equilibrium_state(const ModelParams& model, double fz);

/// sup over F_z of S_1z(F_z). The field term dominates every other energy as
/// F_z -> infinity and polarizes spin 1 completely, so the supremum is 1 and
/// is never attained.
double s1z_supremum(const ModelParams& model);

/// Field F_z with S_1z(F_z) = target to within 1e-12. Throws
/// UnreachableStateError for |target| >= supremum or when the required field
/// is beyond double precision reach.
double invert_field(const ModelParams& model, double target_s1z);

/// Total density matrix assigned to `rho_s` by the preparation. Throws
/// PreparationDomainError when rho_s cannot be produced by it.
Op blow_up(const Preparation& prep, const Op& rho_s);

struct SandwichState {
  Op state;
  DensityReport<double> report;
};

/// The state is returned as computed; a failed report is not renormalized
/// away.
SandwichState operator_sandwich_state(const ModelParams& model, double fz,
                                      const std::vector<std::pair<Op, Op>>& ops);

/// beta * int_0^1 rho0^{1-x} (X - <X>_0) rho0^x dx, evaluated in the
/// eigenbasis of rho0 through the logarithmic mean of its eigenvalues.
Op kubo_integral(const Op& rho0, const Op& x, double beta);

struct SusceptibilityMatrix {
  Eigen::MatrixXd entries;
  double condition_number = 0;
};

/// Canonical correlation matrix of the observables in the zero-field state.
/// Observables may be 2x2 (embedded as X (x) 1) or 4x4.
SusceptibilityMatrix susceptibility(const ModelParams& model, const std::vector<Op>& observables);

struct MoriBlowUp {
  Op state;
  Eigen::VectorXd fields;     // estimated F_i
  bool within_trust_region = true;
};

/// rho0 + sum_i kubo_integral(rho0, X_i) F_i with F = chi^{-1} <X - <X>_0>.
/// Outside the trust region the state is still computed and flagged.
MoriBlowUp mori_blow_up(const ModelParams& model, const std::vector<Op>& observables, const Op& rho_s,
                        double beta_field_bound = 0.2);

/// X (x) 1 for 2x2 input, unchanged for 4x4 input.
Op embed_system_observable(const Op& x);

}  // namespace blowup
