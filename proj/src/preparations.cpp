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

#include "blowup/preparations.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "blowup/dynamics.hpp"

namespace blowup {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTraceBackTol = 1e-10;
constexpr double kAxisTol = 1e-10;
constexpr double kConditionLimit = 1e12;
constexpr double kLogMeanSwitch = 1e-8;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_qubit_density(const Op& rho, const std::string& what) {
  if (rho.dim() != 2) {
    throw DimensionError(what + " must be 2x2, got dimension " + std::to_string(rho.dim()));
  }
  const auto report = validate_density(rho);
  if (!report) throw PreparationDomainError(what + " is not a valid density matrix: " + report.describe());
}

void check_trace_back(const Op& total, const Op& rho_s, const std::string& prep) {
  const double d = frobenius_distance(partial_trace(total, Subsystem::System), rho_s);
  if (d > kTraceBackTol) {
    throw PreparationDomainError(prep + ": reduced state is not reproduced by the preparation (deviation " +
                                 fmt(d) + ")");
  }
}

Op blow_up_equilibrium(const EquilibriumPrep& prep, const Op& rho_s) {
  const Vec3 s = bloch_vector(rho_s);
  if (std::abs(s(0)) > kAxisTol || std::abs(s(1)) > kAxisTol) {
    throw PreparationDomainError("equilibrium preparation: only z-polarized reduced states are preparable, got S = (" +
                                 fmt(s(0)) + ", " + fmt(s(1)) + ", " + fmt(s(2)) + ")");
  }
  double fz = 0;
  try {
    fz = invert_field(prep.model, s(2));
  } catch (const UnreachableStateError& e) {
    throw PreparationDomainError(std::string("equilibrium preparation: ") + e.what());
  }
  return equilibrium_state(prep.model, fz);
}

Op blow_up_sandwich(const OperatorSandwichPrep& prep, const Op& rho_s) {
  SandwichState s = operator_sandwich_state(prep.model, prep.fz, prep.ops);
  if (!s.report) {
    throw PreparationDomainError("operator-sandwich preparation does not yield a density matrix: " +
                                 s.report.describe());
  }
  check_trace_back(s.state, rho_s, "operator-sandwich preparation (single-point class)");
  return s.state;
}

Op blow_up_factorize_and_wait(const FactorizeAndWaitPrep& prep, const Op& rho_s) {
  const Op h = hamiltonian(prep.model, prep.fz_wait);
  const ReducedAffineMap g = factorizing_propagator(h, prep.rho_b0, prep.t0);
  const ReducedAffineMap g_inv = invert_propagator(g);
  const Vec4 c0 = g_inv.apply(coefficients(rho_s));
  const double radius = c0.tail<3>().norm();
  if (radius > 1.0 + 1e-10) {
    throw PreparationDomainError("factorize-and-wait preparation: rho_S lies outside the range of the waiting "
                                 "propagator (initial Bloch radius " + fmt(radius) + ")");
  }
  const Op initial = kron(from_coefficients(c0), prep.rho_b0);
  return evolve_total(initial, h, prep.t0);
}

Op blow_up_mori(const MoriPrep& prep, const Op& rho_s) {
  const MoriBlowUp m = mori_blow_up(prep.model, prep.observables, rho_s, prep.beta_field_bound);
  if (!m.within_trust_region) {
    throw PreparationDomainError("linear-response preparation: estimated fields exceed the trust region beta|F| <= " +
                                 fmt(prep.beta_field_bound));
  }
  check_trace_back(m.state, rho_s, "linear-response preparation");
  const auto report = validate_density(m.state);
  if (!report) {
    throw PreparationDomainError("linear-response preparation: blown-up state is invalid: " + report.describe());
  }
  return m.state;
}

}  // namespace

std::string preparation_name(const Preparation& prep) {
  return std::visit(Overloaded{
                        [](const EquilibriumPrep&) { return std::string("equilibrium"); },
                        [](const FactorizingPrep&) { return std::string("factorizing"); },
                        [](const OperatorSandwichPrep&) { return std::string("operator-sandwich"); },
                        [](const FactorizeAndWaitPrep&) { return std::string("factorize-and-wait"); },
                        [](const MoriPrep&) { return std::string("mori"); },
                    },
                    prep);
}

void validate_preparation(const Preparation& prep) {
  std::visit(Overloaded{
                 [](const EquilibriumPrep& p) { p.model.validate(); },
                 [](const FactorizingPrep& p) {
                   if (p.rho_b.dim() != 2 || !validate_density(p.rho_b)) {
                     throw ArgumentError("factorizing preparation: rho_B must be a valid 2x2 density matrix");
                   }
                 },
                 [](const OperatorSandwichPrep& p) {
                   p.model.validate();
                   if (p.ops.empty()) throw ArgumentError("operator-sandwich preparation: empty operator list");
                 },
                 [](const FactorizeAndWaitPrep& p) {
                   p.model.validate();
                   if (!(p.t0 > 0)) throw ArgumentError("factorize-and-wait preparation: t0 must be positive");
                   if (p.rho_b0.dim() != 2 || !validate_density(p.rho_b0)) {
                     throw ArgumentError("factorize-and-wait preparation: rho_B0 must be a valid 2x2 density matrix");
                   }
                 },
                 [](const MoriPrep& p) {
                   p.model.validate();
                   if (p.observables.empty()) throw ArgumentError("linear-response preparation: no observables");
                   if (!(p.beta_field_bound > 0)) throw ArgumentError("linear-response preparation: bound must be positive");
                 },
             },
             prep);
}

Op equilibrium_state(const ModelParams& model, double fz) {
  model.validate();
  return gibbs_state(hamiltonian(model, fz), model.beta);
}

double s1z_supremum(const ModelParams& model) {
  model.validate();
  return 1.0;
}

double invert_field(const ModelParams& model, double target) {
  const double sup = s1z_supremum(model);
  if (!std::isfinite(target)) throw ArgumentError("invert_field: target must be finite");
  if (std::abs(target) >= sup) {
    throw UnreachableStateError("S_1z = " + fmt(target) + " is not preparable; the reachable interval is (-" +
                                    fmt(sup) + ", " + fmt(sup) + ") with the supremum attained only as F_z -> infinity",
                                sup);
  }
  auto f = [&](double fz) { return equilibrium_s1z(model, fz) - target; };

  // bracket on the strictly increasing curve
  const double max_field = 1e8 / model.beta;
  double lo = -1.0 / model.beta;
  double hi = 1.0 / model.beta;
  while (f(hi) < 0) {
    lo = hi;
    hi *= 2;
    if (hi > max_field) {
      throw UnreachableStateError("S_1z = " + fmt(target) + " needs a field beyond double precision reach (supremum " +
                                      fmt(sup) + ")",
                                  sup);
    }
  }
  while (f(lo) > 0) {
    hi = lo;
    lo *= 2;
    if (lo < -max_field) {
      throw UnreachableStateError("S_1z = " + fmt(target) + " needs a field beyond double precision reach (supremum -" +
                                      fmt(sup) + ")",
                                  sup);
    }
  }

  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double best = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  double best_res = std::abs(f(best));

  // Newton polish with a central-difference slope
  for (int it = 0; it < 3 && best_res > 0; ++it) {
    const double h = 1e-6 * std::max(1.0, std::abs(best));
    const double slope = (f(best + h) - f(best - h)) / (2 * h);
    if (!(slope > 0)) break;
    const double cand = best - f(best) / slope;
    const double cand_res = std::abs(f(cand));
    if (!(cand_res < best_res)) break;
    best = cand;
    best_res = cand_res;
  }
  return best;
}

SandwichState operator_sandwich_state(const ModelParams& model, double fz,
                                      const std::vector<std::pair<Op, Op>>& ops) {
  if (ops.empty()) throw ArgumentError("operator_sandwich_state: empty operator list");
  const Op rho = equilibrium_state(model, fz);
  const Op one = pauli::identity2();
  Op sum = Op::zero(4).with_subsystems(SubsystemDims{2, 2});
  for (const auto& [left, right] : ops) {
    if (left.dim() != 2 || right.dim() != 2) {
      throw DimensionError("operator_sandwich_state: sandwich operators must be 2x2");
    }
    sum = sum + kron(left, one) * rho * kron(right, one);
  }
  SandwichState out{sum.with_subsystems(SubsystemDims{2, 2}), {}};
  out.report = validate_density(out.state);
  return out;
}

Op embed_system_observable(const Op& x) {
  if (x.dim() == 2) return kron(x, pauli::identity2());
  if (x.dim() == 4) return x.with_subsystems(SubsystemDims{2, 2});
  throw DimensionError("observable must be 2x2 (system) or 4x4 (total), got dimension " + std::to_string(x.dim()));
}

Op kubo_integral(const Op& rho0, const Op& x, double beta) {
  if (rho0.dim() != x.dim()) throw DimensionError("kubo_integral: dimension mismatch");
  if (!is_hermitian(x)) throw ValidationError("kubo_integral: observable is not Hermitian");
  const SpectralData<double> spec = herm_eig(rho0);
  const Index n = rho0.dim();
  const double mean = expectation(rho0, x);
  const Eigen::MatrixXcd dx = x.matrix() - mean * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd k = spec.eigenvectors.adjoint() * dx * spec.eigenvectors;

  for (Index m = 0; m < n; ++m) {
    const double pm = std::max(spec.eigenvalues(m), 0.0);
    for (Index l = 0; l < n; ++l) {
      const double pl = std::max(spec.eigenvalues(l), 0.0);
      double kernel = 0;  // int_0^1 pm^{1-x} pl^x dx
      if (pm > 0 && pl > 0) {
        const double d = std::log(pm / pl);
        if (std::abs(d) < kLogMeanSwitch) {
          kernel = std::sqrt(pm * pl) * (1.0 + d * d / 24.0);
        } else {
          kernel = (pm - pl) / d;
        }
      }
      k(m, l) *= beta * kernel;
    }
  }
  const Eigen::MatrixXcd out = spec.eigenvectors * k * spec.eigenvectors.adjoint();
  return Op(out, rho0.subsystems());
}

SusceptibilityMatrix susceptibility(const ModelParams& model, const std::vector<Op>& observables) {
  if (observables.empty()) throw ArgumentError("susceptibility: no observables");
  const Op rho0 = equilibrium_state(model, 0.0);
  const std::size_t n = observables.size();
  std::vector<Op> xs;
  std::vector<Op> ks;
  for (const Op& x : observables) {
    xs.push_back(embed_system_observable(x));
    ks.push_back(kubo_integral(rho0, xs.back(), model.beta));
  }
  SusceptibilityMatrix chi;
  chi.entries.resize(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = expectation(rho0, xs[i]);
    for (std::size_t j = 0; j < n; ++j) {
      // K_j is traceless, so the mean of X_i drops out
      chi.entries(static_cast<Index>(i), static_cast<Index>(j)) = expectation(ks[j], xs[i]) - mean * std::real(ks[j].trace());
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(chi.entries);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  chi.condition_number = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(chi.condition_number <= kConditionLimit)) {
    throw NonInvertibleSusceptibilityError(
        "susceptibility matrix is singular or ill-conditioned (condition number " + fmt(chi.condition_number) + ")",
        chi.condition_number);
  }
  return chi;
}

MoriBlowUp mori_blow_up(const ModelParams& model, const std::vector<Op>& observables, const Op& rho_s,
                        double beta_field_bound) {
  if (rho_s.dim() != 2) throw DimensionError("mori_blow_up: rho_S must be 2x2");
  const SusceptibilityMatrix chi = susceptibility(model, observables);
  const Op rho0 = equilibrium_state(model, 0.0);
  const Op rho0_s = partial_trace(rho0, Subsystem::System);

  const Index n = static_cast<Index>(observables.size());
  Eigen::VectorXd shift(n);
  for (Index j = 0; j < n; ++j) {
    const Op& x = observables[static_cast<std::size_t>(j)];
    if (x.dim() == 2) {
      shift(j) = expectation(rho_s, x) - expectation(rho0_s, x);
    } else {
      throw DimensionError("mori_blow_up: observables must be 2x2 system operators");
    }
  }
  MoriBlowUp out;
  out.fields = chi.entries.partialPivLu().solve(shift);
  Op state = rho0;
  for (Index i = 0; i < n; ++i) {
    const Op k = kubo_integral(rho0, embed_system_observable(observables[static_cast<std::size_t>(i)]), model.beta);
    state = state + out.fields(i) * k;
  }
  out.state = state.with_subsystems(SubsystemDims{2, 2});
  out.within_trust_region = model.beta * out.fields.cwiseAbs().maxCoeff() <= beta_field_bound;
  return out;
}

Op blow_up(const Preparation& prep, const Op& rho_s) {
  validate_preparation(prep);
  require_qubit_density(rho_s, "rho_S");
  return std::visit(Overloaded{
                        [&](const EquilibriumPrep& p) { return blow_up_equilibrium(p, rho_s); },
                        [&](const FactorizingPrep& p) { return kron(rho_s, p.rho_b); },
                        [&](const OperatorSandwichPrep& p) { return blow_up_sandwich(p, rho_s); },
                        [&](const FactorizeAndWaitPrep& p) { return blow_up_factorize_and_wait(p, rho_s); },
                        [&](const MoriPrep& p) { return blow_up_mori(p, rho_s); },
                    },
                    prep);
}

}  // namespace blowup
