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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "blowup/preparations.hpp"
#include "blowup/spin_model.hpp"
#include "test_support.hpp"

using namespace blowup;
using blowup::testing::Generator;
using blowup::testing::max_abs_diff;

namespace {

std::vector<double> sorted_eigenvalues(const Op& h) {
  const auto s = herm_eig(h);
  return {s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size()};
}

// direct transcription, fine for moderate non-zero arguments
double naive_aux(double sign, double x, double y) {
  return (y * std::sinh(x) + sign * x * std::sinh(y)) / (x * y * (std::cosh(x) + std::cosh(y)));
}

}  // namespace

TEST_CASE("hamiltonian special cases") {
  const auto ev = sorted_eigenvalues(hamiltonian(ModelParams{1.0, 1.0, 0.0}, 0.0));
  CHECK(ev == std::vector<double>{-1, -1, 1, 1});

  const Op zero = hamiltonian(ModelParams{1.0, 0.0, 0.0}, 0.0);
  CHECK(max_abs(zero) == 0.0);
  CHECK(is_hermitian(zero));
  CHECK(*zero.subsystems() == SubsystemDims{2, 2});

  const auto ev2 = sorted_eigenvalues(hamiltonian(ModelParams{1.0, 1.0, 1.0}, 2.0));
  const double a = std::sqrt(2.0);
  const double b = std::sqrt(10.0);
  CHECK(std::abs(ev2[0] + b) < 1e-12);
  CHECK(std::abs(ev2[1] + a) < 1e-12);
  CHECK(std::abs(ev2[2] - a) < 1e-12);
  CHECK(std::abs(ev2[3] - b) < 1e-12);
}

TEST_CASE("analytic projectors are complete, idempotent and rank one") {
  const ModelParams p{1.0, 1.0, 1.5};
  const AnalyticSpectrum s = analytic_spectrum(p, 0.7);
  Op sum = Op::zero(4);
  for (const Op& proj : s.projectors) {
    sum = sum + proj;
    CHECK(max_abs_diff(proj * proj, proj) < 1e-12);
    CHECK(std::abs(proj.trace() - 1.0) < 1e-12);
    CHECK(is_hermitian(proj));
  }
  CHECK(max_abs_diff(sum, Op::identity(4)) < 1e-12);
}

TEST_CASE("analytic spectrum reconstructs H and matches the eigensolver") {
  for (double g : {0.0, 0.5, 1.5}) {
    const ModelParams p{1.0, 1.0, g};
    for (int k = 0; k <= 20; ++k) {
      const double fz = -5.0 + 0.5 * k;  // includes F_z = +-e
      const AnalyticSpectrum s = analytic_spectrum(p, fz);
      Op h = Op::zero(4);
      for (std::size_t i = 0; i < 4; ++i) h = h + s.energies[i] * s.projectors[i];
      CHECK(max_abs_diff(h, hamiltonian(p, fz)) < 1e-12);

      std::vector<double> analytic(s.energies.begin(), s.energies.end());
      std::sort(analytic.begin(), analytic.end());
      const auto numeric = sorted_eigenvalues(hamiltonian(p, fz));
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(analytic[i] - numeric[i]) < 1e-12);
    }
  }
}

TEST_CASE("degenerate g = 0, F_z = e projectors") {
  const ModelParams p{1.0, 1.0, 0.0};
  const AnalyticSpectrum s = analytic_spectrum(p, 1.0);
  CHECK(s.energies[0] == 0.0);
  CHECK(s.energies[1] == 0.0);
  // computational basis fallback: |uu> then |dd>
  CHECK(expectation(s.projectors[0], pauli::system(2)) == doctest::Approx(1.0));
  CHECK(expectation(s.projectors[1], pauli::system(2)) == doctest::Approx(-1.0));
  Op sum = Op::zero(4);
  for (const Op& proj : s.projectors) sum = sum + proj;
  CHECK(max_abs_diff(sum, Op::identity(4)) < 1e-15);
}

TEST_CASE("E_1(-F_z) = E_3(F_z)") {
  const ModelParams p{1.0, 0.8, 1.3};
  for (double fz : {0.0, 0.4, 2.5, -1.7}) {
    CHECK(analytic_spectrum(p, -fz).energies[0] == doctest::Approx(analytic_spectrum(p, fz).energies[2]).epsilon(1e-15));
  }
}

TEST_CASE("aux_F identities") {
  for (double x : {-3.0, -0.5, 1e-6, 0.2, 1.0, 4.0}) {
    CHECK(aux_F(AuxSign::Minus, x, x) == 0.0);
  }
  CHECK(std::abs(aux_F(AuxSign::Plus, 1.0, 1.0) - std::tanh(1.0)) < 1e-15);
  CHECK(std::abs(aux_F(AuxSign::Plus, 0.3, 1.7) - aux_F(AuxSign::Plus, 1.7, 0.3)) < 1e-14);
  CHECK(std::abs(aux_F(AuxSign::Minus, 0.3, 1.7) + aux_F(AuxSign::Minus, 1.7, 0.3)) < 1e-14);
}

TEST_CASE("aux_F agrees with the direct formula at moderate arguments") {
  Generator gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = gen.uniform(-6, 6);
    const double y = gen.uniform(-6, 6);
    if (std::abs(x) < 0.05 || std::abs(y) < 0.05) continue;
    CHECK(std::abs(aux_F(AuxSign::Plus, x, y) - naive_aux(+1, x, y)) < 1e-13);
    CHECK(std::abs(aux_F(AuxSign::Minus, x, y) - naive_aux(-1, x, y)) < 1e-13);
  }
}

TEST_CASE("aux_F is continuous through zero and finite at huge arguments") {
  // sinh(u)/u switches to its series at |u| = 1e-4
  const double below = aux_F(AuxSign::Plus, 0.99999e-4, 0.5);
  const double above = aux_F(AuxSign::Plus, 1.00001e-4, 0.5);
  CHECK(std::abs(below - above) < 1e-12);
  CHECK(std::abs(aux_F(AuxSign::Plus, 0.0, 0.0) - 1.0) < 1e-15);

  const double big = aux_F(AuxSign::Plus, -900.0, -902.0);
  CHECK(std::isfinite(big));
  CHECK(big > 0);
  const double expected = (std::exp(-2.0) / 900.0 + 1.0 / 902.0) / (std::exp(-2.0) + 1.0);
  CHECK(std::abs(big - expected) < 1e-15);
}

TEST_CASE("zero field: S_1z and C_zz vanish") {
  for (double beta : {0.5, 1.0, 3.0}) {
    for (double g : {0.0, 0.7, 1.5}) {
      const EquilibriumCurvePoint pt = equilibrium_observables(ModelParams{beta, 0.9, g}, 0.0);
      CHECK(std::abs(pt.s1z) < 1e-15);
      CHECK(std::abs(pt.czz) < 1e-15);
    }
  }
}

TEST_CASE("decoupled environment spin: S_2z = -tanh(beta e)") {
  const ModelParams p{1.0, 1.0, 0.0};
  for (double fz : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
    CHECK(std::abs(equilibrium_observables(p, fz).s2z + std::tanh(1.0)) < 1e-14);
  }
  CHECK(std::tanh(1.0) == doctest::Approx(0.76159).epsilon(1e-5));
}

TEST_CASE("closed-form observables match the numeric Gibbs state") {
  for (double g : {0.0, 0.5, 1.0, 1.5}) {
    const ModelParams p{1.0, 1.0, g};
    for (int k = 0; k <= 40; ++k) {
      const double fz = -5.0 + 0.25 * k;
      const EquilibriumCurvePoint pt = equilibrium_observables(p, fz);
      const BlochDecomposition b = bloch_decompose(equilibrium_state(p, fz));
      CHECK(std::abs(pt.s1z - b.s1(2)) < 1e-10);
      CHECK(std::abs(pt.s2z - b.s2(2)) < 1e-10);
      CHECK(std::abs(pt.cxx - b.c(0, 0)) < 1e-10);
      CHECK(std::abs(pt.cyy - b.c(1, 1)) < 1e-10);
      CHECK(std::abs(pt.czz - b.c(2, 2)) < 1e-10);
      // everything else vanishes
      CHECK(b.s1.head<2>().cwiseAbs().maxCoeff() < 1e-12);
      CHECK(b.s2.head<2>().cwiseAbs().maxCoeff() < 1e-12);
      Mat3 off = b.c;
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("parity of S_1z and C_xx") {
  for (double g : {0.0, 0.5, 1.5}) {
    const ModelParams p{1.0, 1.0, g};
    for (int k = 0; k <= 50; ++k) {
      const double fz = 0.1 * k;
      const auto plus = equilibrium_observables(p, fz);
      const auto minus = equilibrium_observables(p, -fz);
      CHECK(std::abs(plus.s1z + minus.s1z) < 1e-12);
      CHECK(std::abs(plus.cxx - minus.cxx) < 1e-12);
    }
  }
}

TEST_CASE("S_1z is strictly increasing and bounded") {
  for (double g : {0.0, 0.5, 1.0, 1.5, 3.0}) {
    const ModelParams p{1.0, 1.0, g};
    double previous = -2;
    for (int k = 0; k <= 400; ++k) {
      const auto pt = equilibrium_observables(p, -10.0 + 0.05 * k);
      CHECK(pt.s1z > previous);
      previous = pt.s1z;
      for (double v : {pt.s1z, pt.s2z, pt.cxx, pt.cyy, pt.czz}) CHECK(std::abs(v) <= 1 + 1e-10);
    }
  }
}

TEST_CASE("zero-field slope decreases with the coupling") {
  double previous = 1e9;
  for (double g : {0.5, 1.0, 1.5}) {
    const ModelParams p{1.0, 1.0, g};
    const double h = 1e-5;
    const double slope = (equilibrium_s1z(p, h) - equilibrium_s1z(p, -h)) / (2 * h);
    CHECK(slope < previous);
    previous = slope;
  }
}

TEST_CASE("Bloch decomposition basics") {
  const BlochDecomposition zero = bloch_decompose(0.25 * Op::identity(4));
  CHECK(zero.s1.norm() < 1e-15);
  CHECK(zero.s2.norm() < 1e-15);
  CHECK(zero.c.norm() < 1e-15);

  BlochDecomposition up;
  up.s1 = Vec3(0, 0, 1);
  const Op composed = bloch_compose(up);
  const Op expected = kron(pauli::up_projector(), 0.5 * pauli::identity2());
  CHECK(max_abs_diff(composed, expected) < 1e-15);
  CHECK(validate_density(composed).passed());

  CHECK_THROWS_AS(bloch_decompose(Op::identity(2)), DimensionError);
}

TEST_CASE("Bloch round trip on random density matrices") {
  Generator gen(42);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Op rho = gen.density(SubsystemDims{2, 2});
    worst = std::max(worst, frobenius_distance(bloch_compose(bloch_decompose(rho)), rho));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("reduced_from_bloch") {
  CHECK(max_abs_diff(reduced_from_bloch(Vec3::Zero()), 0.5 * Op::identity(2)) == 0.0);
  CHECK(max_abs_diff(reduced_from_bloch(Vec3(0, 0, 1)), pauli::up_projector()) == 0.0);
  CHECK_THROWS_AS(reduced_from_bloch(Vec3(0.8, 0.0, 0.7)), DomainError);

  Generator gen(43);
  for (int trial = 0; trial < 50; ++trial) {
    const BlochDecomposition b = bloch_decompose(gen.density(SubsystemDims{2, 2}));
    CHECK(b.s1.norm() <= 1 + 1e-10);
    CHECK(b.s2.norm() <= 1 + 1e-10);
    const Op reduced = partial_trace(bloch_compose(b), Subsystem::System);
    CHECK(max_abs_diff(reduced, reduced_from_bloch(b.s1)) < 1e-14);
  }
}

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(ModelParams({0.0, 1.0, 1.0}).validate(), ArgumentError);
  CHECK_THROWS_AS(ModelParams({1.0, std::nan(""), 1.0}).validate(), ArgumentError);
  CHECK_NOTHROW(ModelParams({2.0, -1.0, 0.0}).validate());
}
