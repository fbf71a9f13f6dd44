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

// Diagnostics for (non)linearity of the equilibrium preparation class and of
// general blow-up maps.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "blowup/qop.hpp"
#include "blowup/spin_model.hpp"

namespace blowup {

struct ConvexityTestResult {
  double lambda = 0;
  double f1 = 0;
  double f2 = 0;
  double f3 = 0;  // field preparing the convex combination of S_1z
  double s2_defect = 0;
  double c_defect = 0;  // max over correlation entries
};

/// Prepares lambda S_1z(F1) + (1-lambda) S_1z(F2) with a third field F3 and
/// measures how far S_2z and C at F3 are from the same convex combination.
ConvexityTestResult convexity_test(const ModelParams& model, double f1, double f2, double lambda);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

/// Least-squares straight line through (x_k, y_k); max |y - fit| as residual.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct LinearityReport {
  LineFit s2z;  // A, B
  LineFit cxx;  // D_xx, E_xx
  LineFit cyy;
  LineFit czz;
  std::vector<double> s1z;
  std::vector<double> fields;
};

/// Inverts the field at every S_1z grid point and fits S_2z, C_xx, C_yy, C_zz
/// as affine functions of S_1z.
LinearityReport linearity_scan(const ModelParams& model, std::span<const double> s1z_grid);

/// n Chebyshev nodes on [-half_width, half_width], ascending.
std::vector<double> chebyshev_grid(int n, double half_width);

struct EvennessReport {
  double s1z_parity_defect = 0;  // max |S_1z(F) + S_1z(-F)|
  double cxx_parity_defect = 0;  // max |C_xx(F) - C_xx(-F)|
  double cxx_spread = 0;         // max - min of C_xx over the grid
  bool cxx_constant = false;
};

/// Parity structure behind the g = 0 criterion: S_1z is odd and C_xx even in
/// F_z, so an affine C_xx[S_1z] must be constant. The field grid is made
/// symmetric by construction (both F and -F are evaluated).
EvennessReport evenness_witness(const ModelParams& model, std::span<const double> fz_grid);
EvennessReport evenness_witness(const ModelParams& model);

using OperatorMap = std::function<Op(const Op&)>;

/// Raised when a convex combination of samples falls outside the map's domain.
class AffinityDomainError : public DomainError {
 public:
  AffinityDomainError(const std::string& what, double lambda, std::size_t first, std::size_t second,
                      Op combination)
      : DomainError(what), lambda_(lambda), first_(first), second_(second), combination_(std::move(combination)) {}
  double lambda() const { return lambda_; }
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const Op& combination() const { return combination_; }

 private:
  double lambda_;
  std::size_t first_;
  std::size_t second_;
  Op combination_;
};

/// max over sample pairs and lambdas of
/// ||M(l x + (1-l) y) - l M(x) - (1-l) M(y)||_F.
double affinity_defect(const OperatorMap& map, std::span<const Op> samples, std::span<const double> lambdas);

/// Spread of the central-difference directional derivative DM(x)[d] over the
/// samples; zero for an affine map.
double derivative_spread(const OperatorMap& map, std::span<const Op> samples, const Op& direction, double step);

/// ||rho - Tr_B rho (x) Tr_S rho||_F.
double factorization_residual(const Op& rho);

struct FigureGrid {
  double beta_e = 1.0;
  std::vector<double> beta_g;
  double beta_fz_min = -5.0;
  double beta_fz_max = 5.0;
  int steps = 201;

  void validate() const;
  std::vector<double> beta_fz_values() const;
};

struct SweepRow {
  double beta_g = 0;
  EquilibriumCurvePoint point;
};

/// Equilibrium curves in dimensionless units (beta = 1), ordered by beta_g
/// ascending and then by beta_Fz.
std::vector<SweepRow> figure_sweep(const FigureGrid& grid);

}  // namespace blowup
