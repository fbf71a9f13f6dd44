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

// Canonical sample designs shared by the command-line front end and the
// acceptance suite. Frozen baselines refer to exactly these designs.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "blowup/dynamics.hpp"
#include "blowup/preparations.hpp"

namespace blowup {

enum class PrepKind { Equilibrium, Factorizing, OperatorSandwich, FactorizeAndWait, Mori };

std::optional<PrepKind> parse_prep_kind(std::string_view name);

struct ScenarioConfig {
  ModelParams model;
  double t0 = 0.7;       // factorize-and-wait waiting time
  double fz_wait = 0.0;  // field during the wait
  double beta_field_bound = 0.2;
};

/// exp(-beta e sigma^z) / Z, the decoupled environment spin at temperature 1/beta.
Op environment_thermal_state(const ModelParams& model);

/// Preparation of the given kind built from `config`. The operator sandwich
/// uses the z-dephasing pair (P_up, P_up), (P_down, P_down) at F_z = 0.
Preparation make_preparation(PrepKind kind, const ScenarioConfig& config);

/// Fields beta F_z = -2, -1, 0, 1, 2.
std::vector<double> canonical_beta_fields();

/// Reduced equilibrium states Tr_B rho^{F_z} at the given beta F_z values.
std::vector<Op> equilibrium_samples_at_fields(const ModelParams& model, const std::vector<double>& beta_fields);

/// `count` deterministic qubit states with Bloch vectors of length <= radius
/// whose directions follow a Fibonacci lattice; spans the state space for
/// count >= 4.
std::vector<Op> bloch_ball_samples(int count, double radius);

/// `count` reduced states inside the domain of the preparation kind.
/// Equilibrium: Chebyshev S_1z targets in (-0.9, 0.9). Factorizing: Bloch
/// ball of radius 0.9. Factorize-and-wait: the factorizing samples pushed
/// through the waiting propagator. Mori: Bloch ball of radius 0.02.
/// Operator sandwich: its single reduced state.
std::vector<Op> domain_samples(PrepKind kind, const ScenarioConfig& config, int count);

/// Evolves every sample for time t under the field-free Hamiltonian and fits
/// an affine map to (rho_S, rho_S(t)).
AffineFitReport evolution_fit(const Preparation& prep, const ModelParams& model, const std::vector<Op>& samples,
                              double t, FitOptions options);

}  // namespace blowup
