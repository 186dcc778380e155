// Copyright 2026 The qubench developers
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

#include "qubench/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "qubench/rng.hpp"

namespace qubench {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTol = 1e-12;
constexpr int kBootstrapResamples = 1000;
// Fixed so reruns of identical data reproduce identical intervals.
constexpr std::uint64_t kBootstrapSeed = 0xB007B007ULL;
// F statistic a free asymptote must beat to displace the anchored one.
// On shallow decays the three-parameter model is near-degenerate (any
// trade of A against B * p^m fits almost equally well), and an
// unidentified A can drag p anywhere. Freeing A on weak evidence risks an
// unbounded error in p; keeping it anchored risks only a small bias when
// the true asymptote sits off the floor, so the bar is set well above the
// usual 95% critical value of F(1, n - 3).
constexpr double kFreeAsymptoteF = 10.0;

struct Point {
  double m;
  double value;
};

double sse_of(const std::vector<Point>& pts, double a, double b, double p) {
  double sse = 0.0;
  for (const Point& pt : pts) {
    const double r = a + b * std::pow(p, pt.m) - pt.value;
    sse += r * r;
  }
  return sse;
}

struct CoreFit {
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  double sse = 0.0;
  bool converged = false;
  std::string message;
};

// Levenberg-damped Gauss-Newton on (A, B, p), p projected into [0, 1].
CoreFit solve_decay(const std::vector<Point>& pts, double a0, double b0,
                    double p0) {
  double a = a0;
  double b = b0;
  double p = std::clamp(p0, 0.0, 1.0);
  double sse = sse_of(pts, a, b, p);
  double lambda = 1e-3;
  const int n = static_cast<int>(pts.size());

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Eigen::MatrixXd jac(n, 3);
    Eigen::VectorXd res(n);
    for (int i = 0; i < n; ++i) {
      const double m = pts[i].m;
      const double pm = std::pow(p, m);
      jac(i, 0) = 1.0;
      jac(i, 1) = pm;
      jac(i, 2) = m >= 1.0 ? b * m * std::pow(p, m - 1.0) : 0.0;
      res(i) = a + b * pm - pts[i].value;
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d jtr = jac.transpose() * res;

    bool moved = false;
    for (int damp = 0; damp < 24; ++damp) {
      Eigen::Matrix3d lhs = jtj;
      for (int d = 0; d < 3; ++d) {
        lhs(d, d) += lambda * std::max(jtj(d, d), 1e-12);
      }
      const Eigen::Vector3d step = lhs.ldlt().solve(-jtr);
      const double na = a + step(0);
      const double nb = b + step(1);
      const double np = std::clamp(p + step(2), 0.0, 1.0);
      const double nsse = sse_of(pts, na, nb, np);
      if (nsse <= sse) {
        const double step_norm = std::sqrt(
            (na - a) * (na - a) + (nb - b) * (nb - b) + (np - p) * (np - p));
        a = na;
        b = nb;
        p = np;
        sse = nsse;
        lambda = std::max(lambda / 3.0, 1e-12);
        moved = true;
        if (step_norm < kStepTol) {
          return {a, b, p, sse, true, ""};
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!moved) {
      // Damping exhausted without any acceptable step: local minimum.
      return {a, b, p, sse, true, ""};
    }
  }
  return {a, b, p, sse, false,
          "no convergence after " + std::to_string(kMaxIterations) +
              " iterations"};
}

// Same scheme with A held fixed, leaving a well-conditioned (B, p) problem.
CoreFit solve_decay_anchored(const std::vector<Point>& pts, double a_fixed,
                             double b0, double p0) {
  const double a = a_fixed;
  double b = b0;
  double p = std::clamp(p0, 0.0, 1.0);
  double sse = sse_of(pts, a, b, p);
  double lambda = 1e-3;
  const int n = static_cast<int>(pts.size());

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Eigen::MatrixXd jac(n, 2);
    Eigen::VectorXd res(n);
    for (int i = 0; i < n; ++i) {
      const double m = pts[i].m;
      const double pm = std::pow(p, m);
      jac(i, 0) = pm;
      jac(i, 1) = m >= 1.0 ? b * m * std::pow(p, m - 1.0) : 0.0;
      res(i) = a + b * pm - pts[i].value;
    }
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d jtr = jac.transpose() * res;

    bool moved = false;
    for (int damp = 0; damp < 24; ++damp) {
      Eigen::Matrix2d lhs = jtj;
      for (int d = 0; d < 2; ++d) {
        lhs(d, d) += lambda * std::max(jtj(d, d), 1e-12);
      }
      const Eigen::Vector2d step = lhs.ldlt().solve(-jtr);
      const double nb = b + step(0);
      const double np = std::clamp(p + step(1), 0.0, 1.0);
      const double nsse = sse_of(pts, a, nb, np);
      if (nsse <= sse) {
        const double step_norm =
            std::sqrt((nb - b) * (nb - b) + (np - p) * (np - p));
        b = nb;
        p = np;
        sse = nsse;
        lambda = std::max(lambda / 3.0, 1e-12);
        moved = true;
        if (step_norm < kStepTol) {
          return {a, b, p, sse, true, ""};
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!moved) {
      return {a, b, p, sse, true, ""};
    }
  }
  return {a, b, p, sse, false,
          "no convergence after " + std::to_string(kMaxIterations) +
              " iterations"};
}

// Fits both the anchored and the free-asymptote model and keeps the free
// one only when its residual improvement passes kFreeAsymptoteF. The free
// solve is attempted from the anchored solution and, when given, from an
// extra starting point, keeping whichever lands lower.
CoreFit select_fit(const std::vector<Point>& pts, double floor, double b0,
                   double p0, const double* extra_free_init) {
  const CoreFit anchored = solve_decay_anchored(pts, floor, b0, p0);
  CoreFit free_fit = solve_decay(pts, anchored.a, anchored.b, anchored.p);
  if (extra_free_init != nullptr) {
    const CoreFit alt = solve_decay(pts, extra_free_init[0],
                                    extra_free_init[1], extra_free_init[2]);
    if (alt.sse < free_fit.sse) free_fit = alt;
  }
  if (anchored.sse <= free_fit.sse) return anchored;
  const double dof =
      std::max(static_cast<double>(pts.size()) - 3.0, 1.0);
  if (free_fit.sse < 1e-300) return free_fit;
  const double f_stat = (anchored.sse - free_fit.sse) / (free_fit.sse / dof);
  // A decaying component no larger than the residual scatter is a wiggle,
  // not a decay; p fitted to it would be meaningless however much residual
  // it happens to absorb.
  const double rms = std::sqrt(free_fit.sse / static_cast<double>(pts.size()));
  const bool resolvable = std::abs(free_fit.b) >= 5.0 * rms;
  return (f_stat > kFreeAsymptoteF && resolvable) ? free_fit : anchored;
}

// Initial guess: A at the floor, then a straight-line fit of
// log(mean(m) - floor) against m.
void initial_guess(const std::map<int, std::vector<double>>& by_depth,
                   double floor, double* b0, double* p0) {
  std::vector<Point> logs;
  for (const auto& [m, values] : by_depth) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (mean - floor > 1e-12) {
      logs.push_back({static_cast<double>(m), std::log(mean - floor)});
    }
  }
  if (logs.size() < 2) {
    *b0 = 0.5;
    *p0 = 0.5;
    return;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const Point& pt : logs) {
    sx += pt.m;
    sy += pt.value;
    sxx += pt.m * pt.m;
    sxy += pt.m * pt.value;
  }
  const double k = static_cast<double>(logs.size());
  const double denom = k * sxx - sx * sx;
  const double slope = denom != 0.0 ? (k * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - slope * sx) / k;
  *p0 = std::clamp(std::exp(slope), 1e-9, 1.0);
  *b0 = std::exp(std::clamp(intercept, -30.0, 30.0));
}

std::map<int, std::vector<double>> group_by_depth(
    const std::vector<DecaySample>& samples) {
  std::map<int, std::vector<double>> by_depth;
  for (const DecaySample& s : samples) {
    if (!std::isfinite(s.value)) {
      throw std::invalid_argument("non-finite sample value");
    }
    by_depth[s.depth].push_back(s.value);
  }
  return by_depth;
}

DecayFitResult fit_grouped(const std::map<int, std::vector<double>>& by_depth,
                           double model_floor, int n_samples) {
  if (by_depth.size() < 2) {
    throw std::invalid_argument("need samples at two or more depths");
  }
  double vmin = 1e300;
  double vmax = -1e300;
  std::vector<Point> pts;
  for (const auto& [m, values] : by_depth) {
    for (double v : values) {
      pts.push_back({static_cast<double>(m), v});
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }

  DecayFitResult out;
  out.n_samples = n_samples;
  if (vmax - vmin < 1e-12) {
    // Flat data. On the floor nothing is identifiable; above it the only
    // consistent decay is none at all.
    if (std::abs(vmax - model_floor) < 1e-9) {
      throw FitError("flat data at the model floor pins no decay rate");
    }
    out.A = model_floor;
    out.B = vmax - model_floor;
    out.p = 1.0;
    out.p_ci_low = 1.0;
    out.p_ci_high = 1.0;
    out.converged = true;
    return out;
  }

  double b0, p0;
  initial_guess(by_depth, model_floor, &b0, &p0);
  const double raw_init[3] = {model_floor, b0, p0};
  const CoreFit fit = select_fit(pts, model_floor, b0, p0, raw_init);
  out.A = fit.a;
  out.B = fit.b;
  out.p = fit.p;
  out.p_ci_low = fit.p;
  out.p_ci_high = fit.p;
  out.converged = fit.converged;
  out.message = fit.message;
  out.residual_rms = std::sqrt(fit.sse / static_cast<double>(pts.size()));
  return out;
}

}  // namespace

DecayFitResult fit_decay(const std::vector<DecaySample>& samples,
                         double model_floor) {
  const auto by_depth = group_by_depth(samples);
  DecayFitResult out =
      fit_grouped(by_depth, model_floor, static_cast<int>(samples.size()));

  // Percentile bootstrap over circuit indices: depth d's i-th sample is
  // circuit i, and one resample reuses the same index draw at every depth.
  std::size_t per_depth = 0;
  bool rectangular = true;
  for (const auto& [m, values] : by_depth) {
    if (per_depth == 0) per_depth = values.size();
    rectangular &= values.size() == per_depth;
  }
  if (rectangular && per_depth >= 2 && out.converged) {
    Rng rng(kBootstrapSeed);
    std::vector<double> boot;
    boot.reserve(kBootstrapResamples);
    std::vector<std::size_t> pick(per_depth);
    for (int rep = 0; rep < kBootstrapResamples; ++rep) {
      for (std::size_t i = 0; i < per_depth; ++i) {
        pick[i] = static_cast<std::size_t>(rng.below(per_depth));
      }
      std::vector<Point> pts;
      pts.reserve(by_depth.size() * per_depth);
      double bmin = 1e300, bmax = -1e300;
      for (const auto& [m, values] : by_depth) {
        for (std::size_t i : pick) {
          pts.push_back({static_cast<double>(m), values[i]});
          bmin = std::min(bmin, values[i]);
          bmax = std::max(bmax, values[i]);
        }
      }
      if (bmax - bmin < 1e-12) {
        boot.push_back(1.0);
        continue;
      }
      const double main_init[3] = {out.A, out.B, out.p};
      const CoreFit refit =
          select_fit(pts, model_floor, out.B, out.p, main_init);
      if (refit.converged) boot.push_back(refit.p);
    }
    if (boot.size() >= 100) {
      std::sort(boot.begin(), boot.end());
      const auto pick_q = [&boot](double q) {
        const double pos = q * static_cast<double>(boot.size() - 1);
        return boot[static_cast<std::size_t>(std::llround(pos))];
      };
      out.p_ci_low = std::min(pick_q(0.025), out.p);
      out.p_ci_high = std::max(pick_q(0.975), out.p);
    }
  }
  return out;
}

double error_rate_from_p(double p, int w, Protocol protocol) {
  (void)protocol;
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0, 1]");
  if (w < 1) throw std::invalid_argument("width must be >= 1");
  const double dd = std::pow(4.0, w);
  return (dd - 1.0) / dd * (1.0 - p);
}

CrbFitSummary fit_crb(const std::vector<DecaySample>& samples, int w) {
  std::map<std::string, std::vector<DecaySample>> by_pauli;
  for (const DecaySample& s : samples) {
    if (s.pauli.empty()) {
      throw std::invalid_argument("cycle-RB samples must carry a Pauli tag");
    }
    by_pauli[s.pauli].push_back(s);
  }
  if (by_pauli.empty()) throw std::invalid_argument("no samples");

  CrbFitSummary out;
  double sum_p = 0.0;
  std::size_t per_depth = 0;
  bool rectangular = true;
  std::vector<std::map<int, std::vector<double>>> grouped;
  for (const auto& [pauli, list] : by_pauli) {
    out.paulis.push_back(pauli);
    DecayFitResult fit = fit_decay(list, 0.0);
    fit.r = error_rate_from_p(fit.p, w, Protocol::CRB);
    sum_p += fit.p;
    out.per_pauli.push_back(fit);
    grouped.push_back(group_by_depth(list));
    for (const auto& [m, values] : grouped.back()) {
      if (per_depth == 0) per_depth = values.size();
      rectangular &= values.size() == per_depth;
    }
  }
  out.mean_p = sum_p / static_cast<double>(by_pauli.size());
  out.mean_p_ci_low = out.mean_p;
  out.mean_p_ci_high = out.mean_p;
  out.process_infidelity = error_rate_from_p(out.mean_p, w, Protocol::CRB);

  if (rectangular && per_depth >= 2) {
    Rng rng(kBootstrapSeed);
    std::vector<double> boot;
    boot.reserve(kBootstrapResamples);
    std::vector<std::size_t> pick(per_depth);
    for (int rep = 0; rep < kBootstrapResamples; ++rep) {
      for (std::size_t i = 0; i < per_depth; ++i) {
        pick[i] = static_cast<std::size_t>(rng.below(per_depth));
      }
      double acc = 0.0;
      int ok = 0;
      for (std::size_t g = 0; g < grouped.size(); ++g) {
        std::vector<Point> pts;
        double bmin = 1e300, bmax = -1e300;
        for (const auto& [m, values] : grouped[g]) {
          for (std::size_t i : pick) {
            pts.push_back({static_cast<double>(m), values[i]});
            bmin = std::min(bmin, values[i]);
            bmax = std::max(bmax, values[i]);
          }
        }
        if (bmax - bmin < 1e-12) {
          acc += 1.0;
          ++ok;
          continue;
        }
        const DecayFitResult& base = out.per_pauli[g];
        const double base_init[3] = {base.A, base.B, base.p};
        const CoreFit refit =
            select_fit(pts, 0.0, base.B, base.p, base_init);
        if (refit.converged) {
          acc += refit.p;
          ++ok;
        }
      }
      if (ok == static_cast<int>(grouped.size())) {
        boot.push_back(acc / static_cast<double>(ok));
      }
    }
    if (boot.size() >= 100) {
      std::sort(boot.begin(), boot.end());
      const auto pick_q = [&boot](double q) {
        const double pos = q * static_cast<double>(boot.size() - 1);
        return boot[static_cast<std::size_t>(std::llround(pos))];
      };
      out.mean_p_ci_low = std::min(pick_q(0.025), out.mean_p);
      out.mean_p_ci_high = std::max(pick_q(0.975), out.mean_p);
    }
  }
  return out;
}

}  // namespace qubench
