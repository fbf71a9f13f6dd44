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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "blowup/preparations.hpp"
#include "blowup/qop.hpp"
#include "blowup/spin_model.hpp"
#include "test_support.hpp"

using namespace blowup;
using blowup::testing::Generator;
using blowup::testing::max_abs_diff;

TEST_CASE("kron of identities is the identity") {
  const Op i4 = kron(Op::identity(2), Op::identity(2));
  CHECK(max_abs_diff(i4, Op::identity(4)) == 0.0);
  REQUIRE(i4.subsystems().has_value());
  CHECK(*i4.subsystems() == SubsystemDims{2, 2});
}

TEST_CASE("kron(sigma_x, sigma_x) is the anti-diagonal matrix") {
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 3) = expected(1, 2) = expected(2, 1) = expected(3, 0) = 1.0;
  CHECK(max_abs_diff(kron(pauli::sigma(0), pauli::sigma(0)), Op(expected)) == 0.0);
}

TEST_CASE("trace is multiplicative under kron") {
  Generator gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Op a = gen.hermitian(gen.integer(1, 4));
    const Op b = gen.hermitian(gen.integer(1, 4));
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12 * (1 + std::abs(a.trace() * b.trace())));
  }
}

TEST_CASE("kron block layout") {
  Generator gen(12);
  const Op a = gen.square(2);
  const Op b = gen.square(3);
  const Op k = kron(a, b);
  CHECK(k.dim() == 6);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      CHECK((k.matrix().block(3 * i, 3 * j, 3, 3) - a(i, j) * b.matrix()).norm() == doctest::Approx(0.0));
}

TEST_CASE("partial trace of a product state") {
  Generator gen(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Op rs = gen.density(2);
    const Op rb = gen.density(3);
    const Op total = kron(rs, rb);
    CHECK(max_abs_diff(partial_trace(total, Subsystem::System), rs) < 1e-12);
    CHECK(max_abs_diff(partial_trace(total, Subsystem::Environment), rb) < 1e-12);
  }
}

TEST_CASE("partial trace is linear beyond density matrices") {
  Generator gen(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Op a = gen.square(gen.integer(1, 4));
    const Op b = gen.square(gen.integer(1, 4));
    const Op expected = b.trace() * a;
    CHECK(max_abs_diff(partial_trace(kron(a, b), Subsystem::System), expected) < 1e-12 * (1 + max_abs(expected)));
  }
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
  Eigen::Vector4cd psi(1, 0, 0, 1);
  psi /= std::sqrt(2.0);
  const Op bell(Eigen::Matrix4cd(psi * psi.adjoint()), SubsystemDims{2, 2});
  const Op half = 0.5 * Op::identity(2);
  CHECK(max_abs_diff(partial_trace(bell, Subsystem::System), half) < 1e-15);
  CHECK(max_abs_diff(partial_trace(bell, Subsystem::Environment), half) < 1e-15);
}

TEST_CASE("partial trace preserves trace and Hermiticity") {
  Generator gen(15);
  for (int trial = 0; trial < 10; ++trial) {
    const Op rho = gen.density(SubsystemDims{2, 4});
    const Op r = partial_trace(rho, Subsystem::System);
    CHECK(std::abs(r.trace() - 1.0) < 1e-12);
    CHECK(is_hermitian(r));
  }
}

TEST_CASE("partial trace of the zero-field equilibrium state") {
  // S_1z is odd in F_z, so the reduced state at F_z = 0 is I/2
  const Op rho = equilibrium_state(ModelParams{1.0, 1.0, 1.0}, 0.0);
  CHECK(max_abs_diff(partial_trace(rho, Subsystem::System), 0.5 * Op::identity(2)) < 1e-12);
}

TEST_CASE("partial trace requires subsystem structure") {
  CHECK_THROWS_AS(partial_trace(Op::identity(4), Subsystem::System), DimensionError);
}

TEST_CASE("operator construction rejects bad shapes") {
  CHECK_THROWS_AS(Op(Eigen::MatrixXcd::Zero(2, 3)), DimensionError);
  CHECK_THROWS_AS(Op(Eigen::MatrixXcd::Zero(4, 4), SubsystemDims{3, 2}), DimensionError);
  CHECK_THROWS_AS(Op::identity(2) + Op::identity(3), DimensionError);
}

TEST_CASE("herm_eig on simple inputs") {
  Eigen::Vector3d d(3, 1, 2);
  const SpectralData<double> s = herm_eig(Op(Eigen::MatrixXcd(d.cast<std::complex<double>>().asDiagonal())));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(3.0));

  const SpectralData<double> sx = herm_eig(pauli::sigma(0));
  CHECK(std::abs(sx.eigenvalues(0) + 1.0) < 1e-15);
  CHECK(std::abs(sx.eigenvalues(1) - 1.0) < 1e-15);
}

TEST_CASE("herm_eig reproduces the two-spin spectrum") {
  for (double fz : {0.0, 0.7, 2.0, -3.1}) {
    const ModelParams p{1.0, 1.0, 1.0};
    const SpectralData<double> s = herm_eig(hamiltonian(p, fz));
    std::vector<double> expected{std::hypot(fz - 1, 1.0), -std::hypot(fz - 1, 1.0), std::hypot(fz + 1, 1.0),
                                 -std::hypot(fz + 1, 1.0)};
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s.eigenvalues(k) - expected[static_cast<std::size_t>(k)]) < 1e-12);
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  Eigen::Matrix2cd m;
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(herm_eig(Op(m)), ValidationError);
}

TEST_CASE("herm_eig property: reconstruction, unitarity, agreement with Eigen") {
  Generator gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = gen.integer(1, 16);
    const Op a = gen.hermitian(n);
    const SpectralData<double> s = herm_eig(a);
    const Eigen::MatrixXcd v = s.eigenvectors;
    const Eigen::MatrixXcd rec = v * s.eigenvalues.cast<std::complex<double>>().asDiagonal() * v.adjoint();
    CHECK((rec - a.matrix()).norm() <= 1e-12 * (1 + a.matrix().norm()));
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
    for (Index k = 1; k < n; ++k) CHECK(s.eigenvalues(k - 1) <= s.eigenvalues(k));

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(a.matrix());
    CHECK((ref.eigenvalues() - s.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12 * (1 + a.matrix().norm()));
  }
}

TEST_CASE("herm_eig handles degenerate spectra") {
  Generator gen(22);
  const Op u = gen.unitary(6);
  Eigen::VectorXcd d(6);
  d << 1, 1, 1, -2, -2, 5;
  const Op a(Eigen::MatrixXcd(u.matrix() * d.asDiagonal() * u.matrix().adjoint()));
  const SpectralData<double> s = herm_eig(a);
  const Eigen::MatrixXcd rec =
      s.eigenvectors * s.eigenvalues.cast<std::complex<double>>().asDiagonal() * s.eigenvectors.adjoint();
  CHECK((rec - a.matrix()).norm() < 1e-12 * (1 + a.matrix().norm()));
  CHECK(std::abs(s.eigenvalues(0) + 2) < 1e-12);
  CHECK(std::abs(s.eigenvalues(2) - 1) < 1e-12);
  CHECK(std::abs(s.eigenvalues(5) - 5) < 1e-12);
}

TEST_CASE("fractional powers compose back to the state") {
  Generator gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Op rho = gen.density(gen.integer(2, 6));
    const Op prod = fractional_power(rho, 0.3) * fractional_power(rho, 0.7);
    CHECK(max_abs_diff(prod, rho) < 1e-12);
  }
}

TEST_CASE("fractional power of a pure state uses 0^x = 0") {
  const Op up = pauli::up_projector();
  CHECK(max_abs_diff(fractional_power(up, 0.4), up) < 1e-15);
  Eigen::Matrix2cd slightly_negative;
  slightly_negative << 1.0, 0, 0, -5e-11;
  CHECK_NOTHROW(fractional_power(Op(slightly_negative), 0.5));
}

TEST_CASE("fractional power rejects negative spectrum") {
  Eigen::Matrix2cd m;
  m << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(fractional_power(Op(m), 0.5), DomainError);
}

TEST_CASE("propagator is the identity at t = 0 and unitary otherwise") {
  Generator gen(32);
  const Op h = gen.hermitian(4);
  CHECK(max_abs_diff(propagator(h, 0.0), Op::identity(4)) < 1e-14);
  for (double t : {0.3, 1.0, 7.5}) {
    const Op u = propagator(h, t);
    CHECK((u.matrix() * u.matrix().adjoint() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    const Op rho = gen.density(4);
    const Op evolved(Eigen::MatrixXcd(u.matrix() * rho.matrix() * u.matrix().adjoint()));
    CHECK(std::abs(evolved.trace() - rho.trace()) < 1e-12);
  }
}

TEST_CASE("matrix_function satisfies spectral mapping") {
  Generator gen(33);
  for (int trial = 0; trial < 10; ++trial) {
    const Op a = gen.hermitian(5);
    auto f = [](double x) { return std::sin(x) + x * x; };
    const SpectralData<double> sa = herm_eig(a);
    const SpectralData<double> sf = herm_eig(matrix_function(a, f));
    std::vector<double> mapped;
    for (Index k = 0; k < 5; ++k) mapped.push_back(f(sa.eigenvalues(k)));
    std::sort(mapped.begin(), mapped.end());
    for (Index k = 0; k < 5; ++k) CHECK(std::abs(sf.eigenvalues(k) - mapped[static_cast<std::size_t>(k)]) < 1e-12);
  }
}

TEST_CASE("Gibbs state equals the Boltzmann mixture of the analytic projectors") {
  for (double g : {0.0, 0.5, 1.5}) {
    for (double fz : {-2.0, 0.0, 0.3, 4.0}) {
      const ModelParams p{1.0, 1.0, g};
      const AnalyticSpectrum spec = analytic_spectrum(p, fz);
      const auto w = boltzmann_weights(p, fz);
      Op mixture = Op::zero(4);
      for (std::size_t i = 0; i < 4; ++i) mixture = mixture + w[i] * spec.projectors[i];
      CHECK(max_abs_diff(gibbs_state(hamiltonian(p, fz), p.beta), mixture) < 1e-12);
    }
  }
}

TEST_CASE("validate_density") {
  CHECK(validate_density(0.25 * Op::identity(4)).passed());

  Eigen::Matrix2cd m;
  m << 1.5, 0, 0, -0.5;
  const auto bad = validate_density(Op(m));
  CHECK_FALSE(bad.passed());
  CHECK(bad.hermitian);
  CHECK(bad.unit_trace);
  CHECK_FALSE(bad.positive);
  CHECK(bad.min_eigenvalue == doctest::Approx(-0.5));

  Eigen::Matrix2cd skew;
  skew << 0.5, 0.3, 0, 0.5;
  CHECK_FALSE(validate_density(Op(skew)).hermitian);
  CHECK_FALSE(validate_density(0.5 * Op::identity(4)).unit_trace);
}

TEST_CASE("equilibrium states on a field grid are valid densities") {
  for (int k = 0; k <= 100; ++k) {
    const double fz = -5.0 + 0.1 * k;
    const auto report = validate_density(equilibrium_state(ModelParams{1.0, 1.0, 1.5}, fz));
    CHECK(report.passed());
  }
}
