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

#include "blowup/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "blowup/analysis.hpp"

namespace blowup {

std::optional<PrepKind> parse_prep_kind(std::string_view name) {
  if (name == "equilibrium") return PrepKind::Equilibrium;
  if (name == "factorizing") return PrepKind::Factorizing;
  if (name == "operator-sandwich") return PrepKind::OperatorSandwich;
  if (name == "factorize-and-wait") return PrepKind::FactorizeAndWait;
  if (name == "mori") return PrepKind::Mori;
  return std::nullopt;
}

Op environment_thermal_state(const ModelParams& model) {
  return reduced_from_bloch(Vec3(0, 0, -std::tanh(model.beta * model.e)));
}

Preparation make_preparation(PrepKind kind, const ScenarioConfig& config) {
  switch (kind) {
    case PrepKind::Equilibrium:
      return EquilibriumPrep{config.model};
    case PrepKind::Factorizing:
      return FactorizingPrep{environment_thermal_state(config.model)};
    case PrepKind::OperatorSandwich:
      return OperatorSandwichPrep{config.model, 0.0,
                                  {{pauli::up_projector(), pauli::up_projector()},
                                   {pauli::down_projector(), pauli::down_projector()}}};
    case PrepKind::FactorizeAndWait:
      return FactorizeAndWaitPrep{config.model, config.fz_wait, config.t0, environment_thermal_state(config.model)};
    case PrepKind::Mori:
      return MoriPrep{config.model, {pauli::sigma(0), pauli::sigma(1), pauli::sigma(2)}, config.beta_field_bound};
  }
  throw ArgumentError("make_preparation: unknown preparation kind");
}

std::vector<double> canonical_beta_fields() { return {-2.0, -1.0, 0.0, 1.0, 2.0}; }

std::vector<Op> equilibrium_samples_at_fields(const ModelParams& model, const std::vector<double>& beta_fields) {
  std::vector<Op> out;
  for (double bf : beta_fields) {
    out.push_back(partial_trace(equilibrium_state(model, bf / model.beta), Subsystem::System));
  }
  return out;
}

std::vector<Op> bloch_ball_samples(int count, double radius) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Op> out;
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double rho = std::sqrt(1.0 - z * z);
    const double phi = golden * k;
    const double r = radius * (0.3 + 0.7 * (k + 1.0) / count);
    out.push_back(reduced_from_bloch(r * Vec3(rho * std::cos(phi), rho * std::sin(phi), z)));
  }
  return out;
}

std::vector<Op> domain_samples(PrepKind kind, const ScenarioConfig& config, int count) {
  switch (kind) {
    case PrepKind::Equilibrium: {
      std::vector<Op> out;
      const double sup = s1z_supremum(config.model);
      for (double s : chebyshev_grid(count, 0.9 * sup)) out.push_back(reduced_from_bloch(Vec3(0, 0, s)));
      return out;
    }
    case PrepKind::Factorizing:
      return bloch_ball_samples(count, 0.9);
    case PrepKind::FactorizeAndWait: {
      const ReducedAffineMap g = factorizing_propagator(hamiltonian(config.model, config.fz_wait),
                                                        environment_thermal_state(config.model), config.t0);
      std::vector<Op> out;
      for (const Op& s : bloch_ball_samples(count, 0.9)) out.push_back(g.apply(s));
      return out;
    }
    case PrepKind::Mori:
      return bloch_ball_samples(count, 0.02);
    case PrepKind::OperatorSandwich: {
      const Preparation variant = make_preparation(kind, config);
      const auto& prep = std::get<OperatorSandwichPrep>(variant);
      const Op reduced =
          partial_trace(operator_sandwich_state(prep.model, prep.fz, prep.ops).state, Subsystem::System);
      return std::vector<Op>(static_cast<std::size_t>(count), reduced);
    }
  }
  throw ArgumentError("domain_samples: unknown preparation kind");
}

AffineFitReport evolution_fit(const Preparation& prep, const ModelParams& model, const std::vector<Op>& samples,
                              double t, FitOptions options) {
  const Op h = evolution_hamiltonian(model);
  std::vector<std::pair<Op, Op>> pairs;
  pairs.reserve(samples.size());
  for (const Op& s : samples) pairs.emplace_back(s, reduced_evolution(prep, h, s, t));
  return fit_affine_map(pairs, options);
}

}  // namespace blowup
