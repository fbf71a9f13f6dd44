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

#include "blowup/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "blowup/analysis.hpp"
#include "blowup/dynamics.hpp"
#include "blowup/preparations.hpp"
#include "blowup/scenarios.hpp"

namespace blowup::cli {

namespace {

// Pass/fail thresholds; upper bounds and lower bounds alike are multiplied by
// --tolerance-scale.
constexpr double kLinearTol = 1e-9;
constexpr double kNarrowRatio = 10.0;
constexpr double kConvexityZeroTol = 1e-10;
constexpr double kConvexityWitness = 1e-4;
constexpr double kAffineFactorizingTol = 1e-13;
constexpr double kAffineWaitTol = 1e-10;
constexpr double kAffineMoriTol = 1e-12;
constexpr double kAffineEquilibriumWitness = 1e-3;
constexpr double kFitFactorizingTol = 1e-11;
constexpr double kFitLinearTol = 1e-10;
constexpr double kFitNonlinearWitness = 1e-9;
constexpr double kPurityTol = 1e-10;
constexpr double kSusceptibilityTol = 1e-6;
constexpr double kOrderRatio = 4.0;
constexpr double kOrderBand = 0.3;

const std::vector<double> kLambdas{0.25, 0.5, 0.75};

struct Result {
  std::string csv;
  std::vector<std::pair<std::string, std::string>> summary;
  bool pass = true;

  void add(const std::string& key, double v) { summary.emplace_back(key, format_double(v)); }
  void add(const std::string& key, const std::string& v) { summary.emplace_back(key, v); }
  void add(const std::string& key, bool v) { summary.emplace_back(key, v ? "true" : "false"); }
  void check(const std::string& key, bool ok) {
    add(key, ok);
    pass = pass && ok;
  }
};

std::string join_row(std::initializer_list<double> values) {
  std::string s;
  bool first = true;
  for (double v : values) {
    if (!first) s += ',';
    s += format_double(v);
    first = false;
  }
  s += '\n';
  return s;
}

std::string tag(const std::string& prefix, double g) { return prefix + "[g=" + format_double(g) + "]"; }

ModelParams model_for(const RunConfig& cfg, double beta_g) { return ModelParams{1.0, cfg.beta_e, beta_g}; }

const char* kSweepHeader = "beta_g,beta_Fz,S1z,S2z,Cxx,Cyy,Czz\n";

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string csv = kSweepHeader;
  for (const SweepRow& r : rows) {
    csv += join_row({r.beta_g, r.point.beta_fz, r.point.s1z, r.point.s2z, r.point.cxx, r.point.cyy, r.point.czz});
  }
  return csv;
}

FigureGrid grid_for(const RunConfig& cfg) {
  FigureGrid grid;
  grid.beta_e = cfg.beta_e;
  grid.beta_g = cfg.beta_g;
  grid.beta_fz_min = cfg.beta_fz_min;
  grid.beta_fz_max = cfg.beta_fz_max;
  grid.steps = cfg.steps;
  return grid;
}

Result sweep_bloch(const RunConfig& cfg) {
  Result res;
  const std::vector<SweepRow> rows = figure_sweep(grid_for(cfg));
  res.csv = sweep_csv(rows);
  res.add("rows", static_cast<double>(rows.size()));

  bool monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].beta_g == rows[k - 1].beta_g && !(rows[k].point.s1z > rows[k - 1].point.s1z)) monotone = false;
  }
  res.check("monotone", monotone);

  std::vector<double> gs = cfg.beta_g;
  std::sort(gs.begin(), gs.end());
  bool decreasing = true;
  double previous = std::numeric_limits<double>::infinity();
  for (double g : gs) {
    const ModelParams m = model_for(cfg, g);
    const double h = 1e-4;
    const double slope = (equilibrium_s1z(m, h) - equilibrium_s1z(m, -h)) / (2 * h);
    res.add(tag("slope0", g), slope);
    if (!(slope < previous)) decreasing = false;
    previous = slope;
  }
  res.check("slope0_decreasing", decreasing);
  return res;
}

Result sweep_linearity(const RunConfig& cfg) {
  Result res;
  res.csv = sweep_csv(figure_sweep(grid_for(cfg)));
  const double tol = kLinearTol * cfg.tolerance_scale;
  for (double g : cfg.beta_g) {
    const ModelParams m = model_for(cfg, g);
    const double sup = s1z_supremum(m);
    const LinearityReport wide = linearity_scan(m, chebyshev_grid(21, 0.9 * sup));
    const LinearityReport narrow = linearity_scan(m, chebyshev_grid(21, 0.05));
    res.add(tag("A", g), wide.s2z.slope);
    res.add(tag("B", g), wide.s2z.intercept);
    res.add(tag("s2z_residual", g), wide.s2z.max_residual);
    res.add(tag("cxx_residual", g), wide.cxx.max_residual);
    res.add(tag("cyy_residual", g), wide.cyy.max_residual);
    res.add(tag("czz_residual", g), wide.czz.max_residual);
    res.add(tag("cxx_residual_narrow", g), narrow.cxx.max_residual);
    res.add(tag("cyy_residual_narrow", g), narrow.cyy.max_residual);
    if (g == 0.0) {
      res.check(tag("linear", g), wide.s2z.max_residual < tol && wide.cxx.max_residual < tol &&
                                      wide.cyy.max_residual < tol && wide.czz.max_residual < tol);
    } else {
      const double ratio = kNarrowRatio / cfg.tolerance_scale;
      res.check(tag("nonlinear", g), wide.s2z.max_residual > tol);
      res.check(tag("narrow_window_linear", g), narrow.cxx.max_residual * ratio <= wide.cxx.max_residual &&
                                                    narrow.cyy.max_residual * ratio <= wide.cyy.max_residual);
    }
  }
  return res;
}

Result convexity(const RunConfig& cfg) {
  Result res;
  res.csv = "beta_g,beta_F1,beta_F2,lambda,beta_F3,S2_defect,C_defect\n";
  for (double g : cfg.beta_g) {
    const ModelParams m = model_for(cfg, g);
    double worst = 0;
    for (double f1 : canonical_beta_fields()) {
      for (double f2 : canonical_beta_fields()) {
        for (double lam : kLambdas) {
          const ConvexityTestResult r = convexity_test(m, f1, f2, lam);
          res.csv += join_row({g, f1, f2, lam, r.f3, r.s2_defect, r.c_defect});
          worst = std::max({worst, r.s2_defect, r.c_defect});
        }
      }
    }
    res.add(tag("max_defect", g), worst);
    if (g == 0.0) {
      res.check(tag("convex", g), worst < kConvexityZeroTol * cfg.tolerance_scale);
    } else {
      res.check(tag("nonconvex", g), worst > kConvexityWitness * cfg.tolerance_scale);
    }
  }
  return res;
}

std::vector<Op> affinity_samples(PrepKind kind, const ScenarioConfig& sc) {
  if (kind == PrepKind::Equilibrium) return equilibrium_samples_at_fields(sc.model, canonical_beta_fields());
  return domain_samples(kind, sc, 5);
}

Result affinity(const RunConfig& cfg, PrepKind kind) {
  Result res;
  res.csv = "prep,beta_g,defect\n";
  res.add("prep", cfg.prep);
  for (double g : cfg.beta_g) {
    ScenarioConfig sc{model_for(cfg, g), cfg.t0};
    const Preparation prep = make_preparation(kind, sc);
    const std::vector<Op> samples = affinity_samples(kind, sc);
    const double defect = affinity_defect([&](const Op& r) { return blow_up(prep, r); }, samples, kLambdas);
    res.csv += cfg.prep + "," + format_double(g) + "," + format_double(defect) + "\n";
    res.add(tag("defect", g), defect);
    const double s = cfg.tolerance_scale;
    switch (kind) {
      case PrepKind::Factorizing:
        res.check(tag("affine", g), defect < kAffineFactorizingTol * s);
        break;
      case PrepKind::FactorizeAndWait:
        res.check(tag("affine", g), defect < kAffineWaitTol * s);
        break;
      case PrepKind::Mori:
        res.check(tag("affine", g), defect < kAffineMoriTol * s);
        break;
      case PrepKind::Equilibrium:
        if (g == 0.0) {
          res.check(tag("affine", g), defect < kLinearTol * s);
        } else {
          res.check(tag("nonaffine", g), defect > kAffineEquilibriumWitness * s);
        }
        break;
      case PrepKind::OperatorSandwich:
        break;
    }
  }
  return res;
}

Result evolve(const RunConfig& cfg, PrepKind kind) {
  Result res;
  res.csv = "beta_g,t,sample,S1x_in,S1y_in,S1z_in,S1x,S1y,S1z\n";
  res.add("prep", cfg.prep);
  const double s = cfg.tolerance_scale;
  double purity_max = 0;
  for (double g : cfg.beta_g) {
    const ModelParams m = model_for(cfg, g);
    ScenarioConfig sc{m, cfg.t0};
    const Preparation prep = make_preparation(kind, sc);
    const bool on_line = kind == PrepKind::Equilibrium;
    const std::vector<Op> samples =
        on_line ? equilibrium_samples_at_fields(m, canonical_beta_fields()) : domain_samples(kind, sc, 8);
    const Op h = evolution_hamiltonian(m);
    for (double t : cfg.times) {
      std::vector<std::pair<Op, Op>> pairs;
      for (std::size_t k = 0; k < samples.size(); ++k) {
        const Op out = reduced_evolution(prep, h, samples[k], t);
        const Vec3 in_b = bloch_vector(samples[k]);
        const Vec3 out_b = bloch_vector(out);
        purity_max = std::max(purity_max, std::real((out.matrix() * out.matrix()).trace()));
        res.csv += join_row({g, t, static_cast<double>(k), in_b(0), in_b(1), in_b(2), out_b(0), out_b(1), out_b(2)});
        pairs.emplace_back(samples[k], out);
      }
      const AffineFitReport fit = fit_affine_map(pairs, FitOptions{on_line ? 2 : 4});
      const std::string key = "residual[g=" + format_double(g) + ",t=" + format_double(t) + "]";
      res.add(key, fit.residual);
      switch (kind) {
        case PrepKind::Factorizing:
          res.check("affine" + key.substr(8), fit.residual < kFitFactorizingTol * s);
          break;
        case PrepKind::FactorizeAndWait:
        case PrepKind::Mori:
          res.check("affine" + key.substr(8), fit.residual < kFitLinearTol * s);
          break;
        case PrepKind::Equilibrium:
          if (g == 0.0 || t == 0.0) {
            res.check("affine" + key.substr(8), fit.residual < kFitLinearTol * s);
          } else {
            res.check("nonlinear" + key.substr(8), fit.residual > kFitNonlinearWitness * s);
          }
          break;
        case PrepKind::OperatorSandwich:
          break;
      }
    }
  }
  res.add("purity_max", purity_max);
  res.check("purity_bounded", purity_max <= 1.0 + kPurityTol * s);
  return res;
}

Result mori_check(const RunConfig& cfg) {
  Result res;
  res.csv = "beta_g,chi,finite_difference,residual_0.02,residual_0.01,ratio\n";
  const double s = cfg.tolerance_scale;
  for (double g : cfg.beta_g) {
    const ModelParams m = model_for(cfg, g);
    const std::vector<Op> obs{pauli::sigma(2)};
    const double chi = susceptibility(m, obs).entries(0, 0);
    const double h = 1e-4;
    const Op x = pauli::system(2);
    const double fd = (expectation(equilibrium_state(m, h), x) - expectation(equilibrium_state(m, -h), x)) / (2 * h);
    auto residual = [&](double f) {
      const Op exact = equilibrium_state(m, f);
      const Op reduced = partial_trace(exact, Subsystem::System);
      return frobenius_distance(mori_blow_up(m, obs, reduced).state, exact);
    };
    const double r2 = residual(0.02);
    const double r1 = residual(0.01);
    const double ratio = r2 / r1;
    res.csv += join_row({g, chi, fd, r2, r1, ratio});
    res.add(tag("chi", g), chi);
    res.add(tag("finite_difference", g), fd);
    res.add(tag("ratio", g), ratio);
    res.check(tag("chi_matches", g), std::abs(chi - fd) < kSusceptibilityTol * s);
    res.check(tag("second_order", g), std::abs(ratio - kOrderRatio) <= kOrderRatio * kOrderBand * s);
  }
  return res;
}

Result pechukas(const RunConfig& cfg) {
  Result res;
  res.csv = "beta_g,beta_Fz,residual\n";
  std::vector<double> fields = cfg.fields;
  std::sort(fields.begin(), fields.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  for (double g : cfg.beta_g) {
    const ModelParams m = model_for(cfg, g);
    bool decreasing = true;
    double previous = std::numeric_limits<double>::infinity();
    for (double f : fields) {
      const double r = factorization_residual(equilibrium_state(m, f));
      res.csv += join_row({g, f, r});
      res.add("residual[g=" + format_double(g) + ",Fz=" + format_double(f) + "]", r);
      if (!(r < previous)) decreasing = false;
      previous = r;
    }
    res.check(tag("decreasing", g), decreasing);
  }
  return res;
}

std::vector<double> default_beta_g(const std::string& command) {
  if (command == "sweep-bloch") return {0.5, 1.0, 1.5};
  if (command == "sweep-linearity") return {0.0, 0.5, 1.0, 1.5};
  if (command == "convexity") return {0.0, 1.5};
  if (command == "mori-check" || command == "pechukas") return {1.0};
  return {1.5};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void RunConfig::validate() const {
  if (steps < 2) throw ArgumentError("--steps must be at least 2");
  if (!std::isfinite(beta_fz_min) || !std::isfinite(beta_fz_max) || !(beta_fz_min < beta_fz_max)) {
    throw ArgumentError("--fz-min/--fz-max must be finite with fz-min < fz-max");
  }
  if (!std::isfinite(beta_e)) throw ArgumentError("--beta-e must be finite");
  if (beta_g.empty()) throw ArgumentError("--beta-g list is empty");
  for (double g : beta_g) {
    if (!std::isfinite(g)) throw ArgumentError("--beta-g values must be finite");
  }
  if (!(tolerance_scale > 0) || !std::isfinite(tolerance_scale)) {
    throw ArgumentError("--tolerance-scale must be positive");
  }
  if (!(t0 > 0)) throw ArgumentError("--t0 must be positive");
  for (double t : times) {
    if (!std::isfinite(t)) throw ArgumentError("--times values must be finite");
  }
  if (!parse_prep_kind(prep)) throw ArgumentError("unknown --prep '" + prep + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preparation classes and blow-up maps of a two-spin open system", "blowup-lab"};
  RunConfig cfg;
  app.set_config("--config", "", "plain key=value file; command-line flags take precedence");
  app.add_option("--beta-e", cfg.beta_e, "environment splitting beta*e")->capture_default_str();
  app.add_option("--beta-g", cfg.beta_g, "comma-separated couplings beta*g")->delimiter(',');
  app.add_option("--fz-min", cfg.beta_fz_min, "lower end of the beta*F_z sweep")->capture_default_str();
  app.add_option("--fz-max", cfg.beta_fz_max, "upper end of the beta*F_z sweep")->capture_default_str();
  app.add_option("--steps", cfg.steps, "number of beta*F_z grid points")->capture_default_str();
  app.add_option("--prep", cfg.prep,
                 "preparation: equilibrium, factorizing, factorize-and-wait, mori, operator-sandwich")
      ->capture_default_str();
  app.add_option("--times", cfg.times, "comma-separated evolution times")->delimiter(',');
  app.add_option("--fields", cfg.fields, "comma-separated beta*F_z values for pechukas")->delimiter(',');
  app.add_option("--t0", cfg.t0, "factorize-and-wait waiting time")->capture_default_str();
  app.add_option("--out", cfg.out_path, "output file (default: standard output)");
  app.add_option("--tolerance-scale", cfg.tolerance_scale, "multiplies every pass/fail tolerance")
      ->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"sweep-bloch", "equilibrium curves S1z(beta F_z) for several couplings"},
      {"sweep-linearity", "S2z and correlations against S1z, with affine-fit residuals"},
      {"convexity", "convexity defects on a (F1, F2, lambda) lattice"},
      {"affinity", "affinity defect of a preparation's blow-up map"},
      {"evolve", "reduced evolution trajectories and affine-fit residuals"},
      {"mori-check", "susceptibility against finite differences and linear-response order"},
      {"pechukas", "factorization residual of equilibrium states at large fields"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }
  app.require_subcommand(1, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.beta_g.empty()) cfg.beta_g = default_beta_g(cfg.command);

  Result res;
  try {
    cfg.validate();
    const PrepKind kind = *parse_prep_kind(cfg.prep);
    if ((cfg.command == "affinity" || cfg.command == "evolve") && kind == PrepKind::OperatorSandwich) {
      throw ArgumentError("the operator-sandwich preparation is a single state; '" + cfg.command +
                          "' needs a parametrized preparation");
    }
    if (cfg.command == "sweep-bloch") {
      res = sweep_bloch(cfg);
    } else if (cfg.command == "sweep-linearity") {
      res = sweep_linearity(cfg);
    } else if (cfg.command == "convexity") {
      res = convexity(cfg);
    } else if (cfg.command == "affinity") {
      res = affinity(cfg, kind);
    } else if (cfg.command == "evolve") {
      res = evolve(cfg, kind);
    } else if (cfg.command == "mori-check") {
      res = mori_check(cfg);
    } else {
      res = pechukas(cfg);
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    err << "command=" << cfg.command << " status=fail error=computation\n";
    return kPropertyFailure;
  }

  if (cfg.out_path.empty()) {
    out << res.csv;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << cfg.out_path << "'\n";
      return kUsageError;
    }
    file << res.csv;
  }

  err << "command=" << cfg.command << " status=" << (res.pass ? "pass" : "fail")
      << " beta_e=" << format_double(cfg.beta_e) << " tolerance_scale=" << format_double(cfg.tolerance_scale);
  for (const auto& [key, value] : res.summary) err << ' ' << key << '=' << value;
  err << '\n';
  return res.pass ? kPass : kPropertyFailure;
}

}  // namespace blowup::cli
