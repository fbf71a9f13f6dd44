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

// Seeded random operators for property tests.

#pragma once

#include <Eigen/Dense>

#include <random>

#include "blowup/qop.hpp"

namespace blowup::testing {

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Eigen::MatrixXcd ginibre(Index n) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = {normal(rng_), normal(rng_)};
    return m;
  }

  Op square(Index n) { return Op(ginibre(n)); }

  Op hermitian(Index n) {
    const Eigen::MatrixXcd g = ginibre(n);
    return Op(((g + g.adjoint()) / 2.0).eval());
  }

  /// Full-rank density matrix from G G^dagger / Tr.
  Op density(Index n) {
    const Eigen::MatrixXcd g = ginibre(n);
    Eigen::MatrixXcd r = g * g.adjoint();
    r /= r.trace();
    return Op(r);
  }

  Op density(SubsystemDims dims) { return density(dims.system * dims.environment).with_subsystems(dims); }

  Op unitary(Index n) {
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(n));
    return Op(Eigen::MatrixXcd(qr.householderQ()));
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const Op& a, const Op& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

}  // namespace blowup::testing
