#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flataff/vector_field.hpp"

namespace flataff {

/// Numeric values for the session parameters. Positive-flagged parameters
/// must be assigned strictly positive values.
struct NumericParamEnv {
  std::map<std::string, double> values;

  static NumericParamEnv defaults() {
    NumericParamEnv env;
    env.values["E"] = 2.718281828459045;
    return env;
  }

  NumericParamEnv& set(const std::string& name, double v) {
    if (is_declared_param(name) && param_is_positive(name) && !(v > 0))
      throw Error("parameter '" + name + "' is declared positive but assigned " +
                  std::to_string(v));
    values[name] = v;
    return *this;
  }

  double value(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw MissingParam("no numeric value for parameter '" + name + "'");
    return it->second;
  }
};

namespace detail {

/// Field compiled to flat arrays of (coefficient, powers, weight) per
/// component for fast evaluation inside the integrator.
struct CompiledField {
  struct Term {
    double coef;
    std::vector<std::pair<int, int>> powers;    // (coordinate, exponent)
    std::vector<std::pair<int, double>> phase;  // (coordinate, weight)
  };
  int dim;
  std::vector<std::vector<Term>> components;

  static CompiledField compile(const VectorField& x, const NumericParamEnv& env) {
    CompiledField out;
    out.dim = x.dim();
    out.components.resize(out.dim);
    for (int i = 0; i < out.dim; ++i)
      for (const auto& [key, coef] : x.component(i).terms()) {
        Term t;
        t.coef = coef.eval_double(env.values);
        for (int j = 0; j < out.dim; ++j) {
          if (key.powers[j] > 0) t.powers.emplace_back(j, key.powers[j]);
          if (key.weight[j] != 0) t.phase.emplace_back(j, to_double(key.weight[j]));
        }
        out.components[i].push_back(std::move(t));
      }
    return out;
  }

  void eval(const double* p, double* out) const {
    for (int i = 0; i < dim; ++i) {
      double acc = 0;
      for (const Term& t : components[i]) {
        double v = t.coef;
        for (const auto& [j, e] : t.powers)
          for (int k = 0; k < e; ++k) v *= p[j];
        if (!t.phase.empty()) {
          double arg = 0;
          for (const auto& [j, w] : t.phase) arg += w * p[j];
          v *= std::exp(arg);
        }
        acc += v;
      }
      out[i] = acc;
    }
  }
};

inline double max_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

} // namespace detail

enum class TrajectoryStatus { completed, escaped_domain, blowup, step_underflow };

inline std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::escaped_domain: return "escaped_domain";
    case TrajectoryStatus::blowup: return "blowup";
    case TrajectoryStatus::step_underflow: return "step_underflow";
  }
  return "?";
}

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  TrajectoryStatus status = TrajectoryStatus::completed;
  double t_event = 0.0;  // termination time (= final time when completed)
  /// times at which |p| first crossed 1e6, 1e7, ..., 1e12 (max norm)
  std::vector<double> decade_crossings;
};

struct IntegrateOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double blowup_norm = 1e12;
  double min_step = 1e-14;
  double escape_refine = 1e-9;
  std::size_t max_steps = 4000000;
};

/// Adaptive Dormand-Prince 4(5) integration of the flow of X from p0 up to
/// the signed time t_final. Terminates early with blowup when |p| exceeds the
/// bound, escaped_domain when leaving the domain (event time refined by
/// bisection), or step_underflow when the accepted step collapses.
inline Trajectory integrate(const VectorField& x, std::vector<double> p0, double t_final,
                            const NumericParamEnv& env, const Domain& dom,
                            const IntegrateOptions& opt = {}) {
  if (static_cast<int>(p0.size()) != x.dim()) throw DimensionMismatch("initial point size");
  if (!dom.contains(p0)) throw PointOutsideDomain("initial point is outside the domain");
  const auto field = detail::CompiledField::compile(x, env);
  const int n = x.dim();

  // Dormand-Prince tableau
  static const double A[6][6] = {
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double B5[7] = {35.0 / 384,      0, 500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784, 11.0 / 84, 0};
  static const double B4[7] = {5179.0 / 57600,    0,           7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.points.push_back(p0);

  const double direction = t_final >= 0 ? 1.0 : -1.0;
  double t = 0.0;
  std::vector<double> p = std::move(p0);
  std::vector<double> k[7];
  for (auto& ki : k) ki.assign(n, 0.0);
  std::vector<double> tmp(n), p_new(n), err(n);

  field.eval(p.data(), k[0].data());
  double h = std::min(1e-3, std::abs(t_final)) * direction;
  if (h == 0) {
    traj.status = TrajectoryStatus::completed;
    return traj;
  }

  int next_decade = 6;
  {
    const double norm0 = detail::max_norm(p);
    while (next_decade <= 12 && norm0 >= std::pow(10.0, next_decade)) ++next_decade;
  }

  std::size_t kept_every = 1, step_count = 0;

  auto single_step = [&](const std::vector<double>& from, double step,
                         std::vector<double>& out) {
    // one 5th-order step without error control, used by escape refinement
    std::vector<double> kk[7], t2(n);
    for (auto& ki : kk) ki.assign(n, 0.0);
    field.eval(from.data(), kk[0].data());
    for (int s = 1; s < 7; ++s) {
      for (int i = 0; i < n; ++i) {
        double acc = from[i];
        for (int m = 0; m < s && m < 6; ++m) acc += step * A[s - 1][m] * kk[m][i];
        t2[i] = acc;
      }
      if (s < 6) field.eval(t2.data(), kk[s].data());
    }
    out = t2;
  };

  for (;;) {
    if (++step_count > opt.max_steps) {
      traj.status = TrajectoryStatus::step_underflow;
      traj.t_event = t;
      return traj;
    }
    // do not overstep the final time
    if (std::abs(t_final - t) <= std::abs(h)) h = t_final - t;
    if (std::abs(h) < opt.min_step) {
      traj.status = TrajectoryStatus::step_underflow;
      traj.t_event = t;
      return traj;
    }

    for (int s = 1; s < 7; ++s) {
      for (int i = 0; i < n; ++i) {
        double acc = p[i];
        for (int m = 0; m < s && m < 6; ++m) acc += h * A[s - 1][m] * k[m][i];
        tmp[i] = acc;
      }
      field.eval(tmp.data(), k[s].data());
      if (s == 6) {
        for (int i = 0; i < n; ++i) p_new[i] = tmp[i];
      }
    }
    double err_norm = 0;
    bool finite = true;
    for (int i = 0; i < n; ++i) {
      double e5 = 0;
      for (int s = 0; s < 7; ++s) e5 += (B5[s] - B4[s]) * k[s][i];
      e5 *= h;
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(p[i]), std::abs(p_new[i]));
      err_norm = std::max(err_norm, std::abs(e5) / sc);
      finite = finite && std::isfinite(p_new[i]);
    }
    if (!finite) {
      h *= 0.25;
      continue;
    }
    if (err_norm > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      continue;
    }

    // accepted
    const double t_new = t + h;
    if (!dom.contains(p_new)) {
      // bisect the step length down to the escape time
      double lo = 0.0, hi = h;
      std::vector<double> inside = p, probe(n);
      while (std::abs(hi - lo) > opt.escape_refine) {
        const double mid = 0.5 * (lo + hi);
        single_step(p, mid, probe);
        if (dom.contains(probe)) {
          lo = mid;
          inside = probe;
        } else {
          hi = mid;
        }
      }
      single_step(p, hi, probe);
      traj.times.push_back(t + hi);
      traj.points.push_back(probe);  // the escape witness, just outside
      traj.status = TrajectoryStatus::escaped_domain;
      traj.t_event = t + hi;
      return traj;
    }

    t = t_new;
    p = p_new;
    for (int i = 0; i < n; ++i) k[0][i] = k[6][i];  // FSAL

    const double norm = detail::max_norm(p);
    while (next_decade <= 12 && norm >= std::pow(10.0, next_decade)) {
      traj.decade_crossings.push_back(t);
      ++next_decade;
    }

    if (step_count % kept_every == 0) {
      traj.times.push_back(t);
      traj.points.push_back(p);
      if (traj.points.size() > 4096) {
        // thin the record; keep endpoints
        std::vector<double> ts;
        std::vector<std::vector<double>> ps;
        for (std::size_t i = 0; i < traj.points.size(); i += 2) {
          ts.push_back(traj.times[i]);
          ps.push_back(traj.points[i]);
        }
        traj.times = std::move(ts);
        traj.points = std::move(ps);
        kept_every *= 2;
      }
    }

    if (norm > opt.blowup_norm) {
      traj.status = TrajectoryStatus::blowup;
      traj.t_event = t;
      if (traj.times.back() != t) {
        traj.times.push_back(t);
        traj.points.push_back(p);
      }
      return traj;
    }
    if (t == t_final) {
      traj.status = TrajectoryStatus::completed;
      traj.t_event = t;
      if (traj.times.back() != t) {
        traj.times.push_back(t);
        traj.points.push_back(p);
      }
      return traj;
    }
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2)));
  }
}

/// Low-discrepancy points inside the domain (R-sequence with a fixed seed).
inline std::vector<std::vector<double>> sample_domain_points(const Domain& dom, std::size_t n,
                                                             std::uint64_t seed = 1) {
  const int d = dom.dim;
  // generalized golden ratio for dimension d
  double g = 1.5;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (d + 1));
  std::vector<double> alpha(d);
  for (int i = 0; i < d; ++i) alpha[i] = std::pow(1.0 / g, i + 1);
  const double offset = 0.5 + 0.61803398874989485 * static_cast<double>(seed % 1024);

  std::vector<std::vector<double>> out;
  std::uint64_t k = 1;
  while (out.size() < n) {
    std::vector<double> u(d), p(d);
    for (int i = 0; i < d; ++i) {
      double v = offset + alpha[i] * static_cast<double>(k);
      u[i] = v - std::floor(v);
    }
    ++k;
    switch (dom.kind) {
      case Domain::Kind::full_space:
        for (int i = 0; i < d; ++i) p[i] = -2.0 + 4.0 * u[i];
        break;
      case Domain::Kind::upper_half_plane:
        p[0] = -2.0 + 4.0 * u[0];
        p[1] = 2.0 * u[1];
        if (p[1] <= 1e-3) continue;
        break;
      case Domain::Kind::quadrant:
        p[0] = 2.0 * u[0];
        p[1] = 2.0 * u[1];
        if (p[0] <= 1e-3 || p[1] <= 1e-3) continue;
        break;
      case Domain::Kind::punctured_plane:
        for (int i = 0; i < d; ++i) p[i] = -2.0 + 4.0 * u[i];
        if (detail::max_norm(p) < 5e-2) continue;
        break;
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Verdict of the numeric completeness probe. Never a completeness proof:
/// no_blowup_observed only reports that no finite-time breakdown was seen.
struct CompletenessVerdict {
  bool incomplete = false;
  std::vector<double> witness_point;  // sample the witness trajectory started from
  double witness_time = 0.0;          // signed event time
  TrajectoryStatus witness_status = TrajectoryStatus::completed;
  Trajectory witness_trajectory;
};

namespace detail {

/// Distinguishes a finite-time pole from mere growth past the blow-up bound:
/// near a pole the gaps between successive decade crossings of |p| shrink
/// geometrically; exponential growth crosses decades at a steady pace.
inline bool blowup_is_finite_time(const Trajectory& t) {
  const auto& c = t.decade_crossings;
  if (c.size() < 3) return true;  // crossed several decades at once
  const double g_prev = std::abs(c[c.size() - 2] - c[c.size() - 3]);
  const double g_last = std::abs(c[c.size() - 1] - c[c.size() - 2]);
  return g_last < 0.5 * g_prev;
}

} // namespace detail

/// Integrates forward and backward from quasi-random domain points and
/// returns the first finite-time breakdown witness.
inline CompletenessVerdict completeness_probe(const VectorField& x, const Domain& dom,
                                              const NumericParamEnv& env, std::size_t n_samples,
                                              double t_max, std::uint64_t seed = 1,
                                              const IntegrateOptions& opt = {}) {
  if (n_samples < 1) throw Error("completeness probe needs at least one sample");
  CompletenessVerdict verdict;
  const auto samples = sample_domain_points(dom, n_samples, seed);
  for (const auto& p0 : samples) {
    for (const double dir : {1.0, -1.0}) {
      Trajectory traj = integrate(x, p0, dir * t_max, env, dom, opt);
      bool witness = false;
      switch (traj.status) {
        case TrajectoryStatus::completed:
          break;
        case TrajectoryStatus::escaped_domain:
        case TrajectoryStatus::step_underflow:
          witness = true;
          break;
        case TrajectoryStatus::blowup:
          witness = detail::blowup_is_finite_time(traj);
          break;
      }
      if (witness) {
        verdict.incomplete = true;
        verdict.witness_point = p0;
        verdict.witness_time = traj.t_event;
        verdict.witness_status = traj.status;
        verdict.witness_trajectory = std::move(traj);
        return verdict;
      }
    }
  }
  return verdict;
}

/// Closed-form flow evaluator: (t, p) -> p', empty when (t, p) is outside the
/// validity region.
using ClosedFlowFn =
    std::function<std::optional<std::vector<double>>(double, const std::vector<double>&)>;

struct FlowGrid {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
};

struct FlowDefectReport {
  double max_defect_ode = 0.0;
  double max_defect_grouplaw = 0.0;
};

/// Checks a closed-form flow against the field (central-difference derivative
/// versus X at the flowed point) and against the one-parameter group law.
inline FlowDefectReport verify_flow(const VectorField& x, const ClosedFlowFn& phi,
                                    const NumericParamEnv& env, const FlowGrid& grid) {
  const auto field = detail::CompiledField::compile(x, env);
  const int n = x.dim();
  const double h = 1e-6;
  FlowDefectReport report;

  auto eval_phi = [&](double t, const std::vector<double>& p) {
    auto q = phi(t, p);
    if (!q) throw EvaluatorDomainError("closed-form flow undefined on the sample grid");
    if (static_cast<int>(q->size()) != n) throw DimensionMismatch("flow evaluator output size");
    return *q;
  };

  for (const auto& p : grid.points) {
    for (double t : grid.times) {
      const auto fw = eval_phi(t + h, p);
      const auto bw = eval_phi(t - h, p);
      const auto at = eval_phi(t, p);
      std::vector<double> xp(n);
      field.eval(at.data(), xp.data());
      for (int i = 0; i < n; ++i) {
        const double deriv = (fw[i] - bw[i]) / (2 * h);
        report.max_defect_ode = std::max(report.max_defect_ode, std::abs(deriv - xp[i]));
      }
    }
    for (double t : grid.times)
      for (double s : grid.times) {
        const auto lhs = eval_phi(t + s, p);
        const auto rhs = eval_phi(t, eval_phi(s, p));
        for (int i = 0; i < n; ++i)
          report.max_defect_grouplaw =
              std::max(report.max_defect_grouplaw, std::abs(lhs[i] - rhs[i]));
      }
  }
  return report;
}

/// Maximum of |T(phi_t(p)) - phi_t(T(p))| over the samples and the probe
/// times: the numeric form of flow/action commutation.
inline double check_equivariance_numeric(const VectorField& x, const AffineMap& t,
                                         const NumericParamEnv& env,
                                         const std::vector<std::vector<double>>& samples,
                                         const Domain& dom,
                                         const std::vector<double>& times = {0.1, -0.1, 0.5,
                                                                             -0.5}) {
  double defect = 0.0;
  for (const auto& p : samples) {
    if (!dom.contains(p)) throw PointOutsideDomain("equivariance sample outside the domain");
    const auto tp = t.apply_double(p, env.values);
    if (!dom.contains(tp)) throw PointOutsideDomain("mapped equivariance sample outside the domain");
    for (double tt : times) {
      const Trajectory a = integrate(x, p, tt, env, dom);
      const Trajectory b = integrate(x, tp, tt, env, dom);
      if (a.status != TrajectoryStatus::completed || b.status != TrajectoryStatus::completed)
        throw EvaluatorDomainError("flow did not complete over the equivariance probe time");
      const auto lhs = t.apply_double(a.points.back(), env.values);
      const auto& rhs = b.points.back();
      for (std::size_t i = 0; i < rhs.size(); ++i)
        defect = std::max(defect, std::abs(lhs[i] - rhs[i]));
    }
  }
  return defect;
}

} // namespace flataff
