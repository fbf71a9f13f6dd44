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

#include "blowup/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blowup/preparations.hpp"

namespace blowup {

ConvexityTestResult convexity_test(const ModelParams& model, double f1, double f2, double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw ArgumentError("convexity_test: lambda must lie in (0, 1)");
  const EquilibriumCurvePoint p1 = equilibrium_observables(model, f1);
  const EquilibriumCurvePoint p2 = equilibrium_observables(model, f2);
  auto mix = [lambda](double a, double b) { return lambda * a + (1 - lambda) * b; };

  ConvexityTestResult r;
  r.lambda = lambda;
  r.f1 = f1;
  r.f2 = f2;
  r.f3 = invert_field(model, mix(p1.s1z, p2.s1z));
  const EquilibriumCurvePoint p3 = equilibrium_observables(model, r.f3);
  r.s2_defect = std::abs(p3.s2z - mix(p1.s2z, p2.s2z));
  // off-diagonal correlations vanish identically in this preparation class
  r.c_defect = std::max({std::abs(p3.cxx - mix(p1.cxx, p2.cxx)), std::abs(p3.cyy - mix(p1.cyy, p2.cyy)),
                         std::abs(p3.czz - mix(p1.czz, p2.czz))});
  return r;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("fit_line: need >= 2 paired points");
  const auto n = static_cast<Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Index k = 0; k < n; ++k) {
    a(k, 0) = x[static_cast<std::size_t>(k)];
    a(k, 1) = 1.0;
    b(k) = y[static_cast<std::size_t>(k)];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  LineFit fit{coef(0), coef(1), 0.0};
  fit.max_residual = (a * coef - b).cwiseAbs().maxCoeff();
  return fit;
}

std::vector<double> chebyshev_grid(int n, double half_width) {
  if (n < 1) throw ArgumentError("chebyshev_grid: n must be positive");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // node n-1-k so that the result ascends
    out[static_cast<std::size_t>(k)] =
        -half_width * std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n));
  }
  return out;
}

LinearityReport linearity_scan(const ModelParams& model, std::span<const double> s1z_grid) {
  if (s1z_grid.size() < 3) throw ArgumentError("linearity_scan: need at least 3 grid points");
  LinearityReport r;
  std::vector<double> s2z;
  std::vector<double> cxx;
  std::vector<double> cyy;
  std::vector<double> czz;
  for (double target : s1z_grid) {
    const double fz = invert_field(model, target);
    const EquilibriumCurvePoint p = equilibrium_observables(model, fz);
    r.fields.push_back(fz);
    r.s1z.push_back(p.s1z);
    s2z.push_back(p.s2z);
    cxx.push_back(p.cxx);
    cyy.push_back(p.cyy);
    czz.push_back(p.czz);
  }
  r.s2z = fit_line(r.s1z, s2z);
  r.cxx = fit_line(r.s1z, cxx);
  r.cyy = fit_line(r.s1z, cyy);
  r.czz = fit_line(r.s1z, czz);
  return r;
}

EvennessReport evenness_witness(const ModelParams& model, std::span<const double> fz_grid) {
  EvennessReport r;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double f : fz_grid) {
    const EquilibriumCurvePoint plus = equilibrium_observables(model, f);
    const EquilibriumCurvePoint minus = equilibrium_observables(model, -f);
    r.s1z_parity_defect = std::max(r.s1z_parity_defect, std::abs(plus.s1z + minus.s1z));
    r.cxx_parity_defect = std::max(r.cxx_parity_defect, std::abs(plus.cxx - minus.cxx));
    lo = std::min({lo, plus.cxx, minus.cxx});
    hi = std::max({hi, plus.cxx, minus.cxx});
  }
  r.cxx_spread = fz_grid.empty() ? 0.0 : hi - lo;
  r.cxx_constant = r.cxx_spread <= 1e-12;
  return r;
}

EvennessReport evenness_witness(const ModelParams& model) {
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(0.1 * k / model.beta);  // beta F_z in [0, 5]
  return evenness_witness(model, grid);
}

double affinity_defect(const OperatorMap& map, std::span<const Op> samples, std::span<const double> lambdas) {
  std::vector<Op> images;
  images.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      images.push_back(map(samples[i]));
    } catch (const Error& e) {
      throw AffinityDomainError(std::string("affinity_defect: sample ") + std::to_string(i) +
                                    " outside the map's domain: " + e.what(),
                                1.0, i, i, samples[i]);
    }
  }
  double defect = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      for (double lam : lambdas) {
        const Op combo = lam * samples[i] + (1 - lam) * samples[j];
        Op image;
        try {
          image = map(combo);
        } catch (const Error& e) {
          std::ostringstream os;
          os << "affinity_defect: combination lambda=" << lam << " of samples " << i << " and " << j
             << " outside the map's domain: " << e.what();
          throw AffinityDomainError(os.str(), lam, i, j, combo);
        }
        const Op expected = lam * images[i] + (1 - lam) * images[j];
        defect = std::max(defect, frobenius_distance(image, expected));
      }
    }
  }
  return defect;
}

double derivative_spread(const OperatorMap& map, std::span<const Op> samples, const Op& direction, double step) {
  if (samples.empty()) return 0.0;
  auto derivative = [&](const Op& x) {
    return (1.0 / (2.0 * step)) * (map(x + step * direction) - map(x - step * direction));
  };
  const Op reference = derivative(samples[0]);
  double spread = 0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    spread = std::max(spread, frobenius_distance(derivative(samples[k]), reference));
  }
  return spread;
}

double factorization_residual(const Op& rho) {
  if (!rho.subsystems()) throw DimensionError("factorization_residual: operator has no subsystem structure");
  const Op rho_s = partial_trace(rho, Subsystem::System);
  const Op chi = partial_trace(rho, Subsystem::Environment);
  return frobenius_distance(rho, kron(rho_s, chi));
}

void FigureGrid::validate() const {
  if (beta_g.empty()) throw ArgumentError("figure grid: beta_g list is empty");
  if (steps < 2) throw ArgumentError("figure grid: need at least 2 field steps");
  if (!std::isfinite(beta_fz_min) || !std::isfinite(beta_fz_max) || !(beta_fz_min < beta_fz_max)) {
    throw ArgumentError("figure grid: field range must be finite with min < max");
  }
  if (!std::isfinite(beta_e)) throw ArgumentError("figure grid: beta_e must be finite");
  for (double g : beta_g) {
    if (!std::isfinite(g)) throw ArgumentError("figure grid: beta_g values must be finite");
  }
}

std::vector<double> FigureGrid::beta_fz_values() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double width = beta_fz_max - beta_fz_min;
  for (int k = 0; k < steps; ++k) {
    out[static_cast<std::size_t>(k)] =
        k == steps - 1 ? beta_fz_max : beta_fz_min + width * static_cast<double>(k) / (steps - 1);
  }
  return out;
}

std::vector<SweepRow> figure_sweep(const FigureGrid& grid) {
  grid.validate();
  std::vector<double> gs = grid.beta_g;
  std::stable_sort(gs.begin(), gs.end());
  const std::vector<double> fields = grid.beta_fz_values();
  std::vector<SweepRow> rows;
  rows.reserve(gs.size() * fields.size());
  for (double g : gs) {
    const ModelParams model{1.0, grid.beta_e, g};
    for (double f : fields) rows.push_back({g, equilibrium_observables(model, f)});
  }
  return rows;
}

}  // namespace blowup
