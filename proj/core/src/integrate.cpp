#include "a52/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace a52 {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw PreconditionViolated("tolerances must be > 0");
  if (max_steps < 1) throw PreconditionViolated("max_steps must be >= 1");
  if (initial_step < 0.0 || dense_output_stride < 0.0) {
    throw PreconditionViolated("initial_step and dense_output_stride must be >= 0");
  }
}

std::vector<std::string> Trajectory::column_names() const {
  std::vector<std::string> cols{time_name};
  cols.insert(cols.end(), state_names.begin(), state_names.end());
  cols.emplace_back("step");
  cols.insert(cols.end(), diagnostic_names.begin(), diagnostic_names.end());
  return cols;
}

double Trajectory::max_abs_diagnostic(std::size_t k) const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, std::abs(r.diagnostics.at(k)));
  return m;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants.
constexpr double beta = 0.04;
constexpr double expo1 = 0.2 - beta * 0.75;
constexpr double safety = 0.9;
constexpr double fac_min = 0.2;   // largest shrink per step is 5x
constexpr double fac_max = 10.0;  // largest growth per step

double scaled_norm(std::span<const double> e, std::span<const double> y0, std::span<const double> y1,
                   const IntegratorConfig& cfg) {
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = e[i] / sk;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(e.size()));
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Starting step from the initial slope (Hairer, Norsett & Wanner, II.4).
double initial_step(const OdeRhs& rhs, double t0, std::span<const double> y0, std::span<const double> f0,
                    double span, const IntegratorConfig& cfg) {
  const std::size_t n = y0.size();
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sk = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d0 += (y0[i] / sk) * (y0[i] / sk);
    d1 += (f0[i] / sk) * (f0[i] / sk);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, std::abs(span));
  const double dir = span > 0 ? 1.0 : -1.0;
  std::vector<double> y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + dir * h0 * f0[i];
  rhs(t0 + dir * h0, y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sk = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  double h = std::min(100 * h0, h1);
  if (!std::isfinite(h) || h <= 0.0) h = 1e-6 * std::abs(span);
  return std::min(h, std::abs(span));
}

}  // namespace

OdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                          const IntegratorConfig& cfg, std::vector<double> checkpoints, const StepGuard& guard) {
  cfg.validate();
  const double span = t1 - t0;
  if (span == 0.0) throw PreconditionViolated("empty integration interval (t0 == t1)");
  const double dir = span > 0 ? 1.0 : -1.0;
  const std::size_t n = y0.size();

  // Interior stopping points, ordered along the direction of integration.
  if (cfg.dense_output_stride > 0.0) {
    for (double k = 1;; ++k) {
      const double t = t0 + dir * k * cfg.dense_output_stride;
      if (dir * (t1 - t) <= 0.0) break;
      checkpoints.push_back(t);
    }
  }
  std::erase_if(checkpoints, [&](double t) { return !(dir * (t - t0) > 0.0 && dir * (t1 - t) > 0.0); });
  std::sort(checkpoints.begin(), checkpoints.end(), [dir](double a, double b) { return dir * a < dir * b; });
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  checkpoints.push_back(t1);

  OdeSolution sol;
  sol.times.push_back(t0);
  sol.states.push_back(y0);
  sol.steps.push_back(0.0);
  sol.checkpoints.push_back(true);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y1(n), err(n);
  std::vector<double> y = std::move(y0);
  double t = t0;
  rhs(t, y, k1);
  if (!all_finite(k1)) throw StepUnderflow("non-finite derivative at the initial point");

  double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, std::abs(span))
                                    : initial_step(rhs, t, y, k1, span, cfg);
  const double h_floor = 1e-14 * std::abs(span);
  double err_old = 1e-4;
  bool rejected_last = false;
  std::size_t attempts = 0;
  std::size_t next_cp = 0;

  while (true) {
    if (++attempts > cfg.max_steps) {
      throw MaxStepsExceeded("more than " + std::to_string(cfg.max_steps) + " step attempts");
    }
    if (h < h_floor) {
      throw StepUnderflow("step size " + std::to_string(h) + " below floor at t = " + std::to_string(t));
    }
    // Land exactly on the next stopping point when within reach.
    const double target = checkpoints[next_cp];
    bool lands = false;
    double h_try = h;
    if (dir * (t + dir * h_try * 1.0000001 - target) >= 0.0) {
      h_try = std::abs(target - t);
      lands = true;
    }
    const double hs = dir * h_try;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    rhs(t + c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    rhs(t + c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    const double t_new = lands ? target : t + hs;
    rhs(t + hs, tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      y1[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    }
    rhs(t_new, y1, k7);
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }

    double e = scaled_norm(err, y, y1, cfg);
    if (!std::isfinite(e) || !all_finite(y1) || !all_finite(k7)) e = std::numeric_limits<double>::infinity();

    const double fac11 = std::isfinite(e) ? std::pow(e, expo1) : std::numeric_limits<double>::infinity();
    if (e <= 1.0) {
      if (guard) guard(t, y, t_new, y1);
      double fac = fac11 / std::pow(err_old, beta);
      fac = std::clamp(fac / safety, 1.0 / fac_max, 1.0 / fac_min);
      double h_new = h_try / fac;
      if (rejected_last) h_new = std::min(h_new, h_try);
      err_old = std::max(e, 1e-4);
      rejected_last = false;

      t = t_new;
      y.swap(y1);
      k1.swap(k7);
      sol.times.push_back(t);
      sol.states.push_back(y);
      sol.steps.push_back(h_try);
      sol.checkpoints.push_back(lands);
      if (lands) {
        if (++next_cp == checkpoints.size()) break;
        // Landing may have truncated the step; keep the controller's size.
        h = std::max(h_new, h);
      } else {
        h = h_new;
      }
    } else {
      ++sol.rejected;
      rejected_last = true;
      const double shrink = std::isfinite(fac11) ? std::min(1.0 / fac_min, fac11 / safety) : 1.0 / fac_min;
      h = h_try / shrink;
    }
  }
  return sol;
}

namespace {

FState<double> fstate_of(std::span<const double> y) { return {y[0], y[1], y[2], y[3], y[4], y[5]}; }

OdeRhs f_rhs(const Parameters<double>& a) {
  return [a](double, std::span<const double> y, std::span<double> dy) {
    const auto v = f_vector_field(fstate_of(y), a).to_array();
    std::copy(v.begin(), v.end(), dy.begin());
  };
}

OdeRhs qp_rhs(const Parameters<double>& a) {
  return [a](double T, std::span<const double> y, std::span<double> dy) {
    const auto v = qp_vector_field(QPState<double>{y[0], y[1], y[2], y[3], T}, a).to_array();
    std::copy(v.begin(), v.end(), dy.begin());
  };
}

void require_same_side(double T0, double T1) {
  if (T0 == 0.0 || T1 == 0.0 || (T0 > 0.0) != (T1 > 0.0)) {
    throw SingularTime("the T-interval must not touch or cross T = 0");
  }
}

}  // namespace

Trajectory integrate_f(const FState<double>& x0, const Parameters<double>& a, double t0, double t1,
                       const IntegratorConfig& cfg) {
  const auto init = x0.to_array();
  const OdeSolution sol = integrate_ode(f_rhs(a), {init.begin(), init.end()}, t0, t1, cfg);

  Trajectory tr;
  tr.chart = Chart::f;
  tr.time_name = "t";
  tr.state_names.assign(FState<double>::names.begin(), FState<double>::names.end());
  tr.diagnostic_names = {"d1", "d2"};
  tr.rejected_steps = sol.rejected;
  const double lin0 = x0.f3 - x0.f0 - x0.f1;
  const double exp0 = x0.f2 - x0.g1 * x0.g2;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const auto& y = sol.states[k];
    const double lin = y[3] - y[0] - y[1];
    const double ex = (y[2] - y[4] * y[5]) * std::exp(-(sol.times[k] - t0));
    tr.records.push_back({sol.times[k], y, sol.steps[k], {lin - lin0, ex - exp0}, sol.checkpoints[k]});
  }
  tr.termination = "completed";
  return tr;
}

Trajectory integrate_qp(const QPState<double>& x0, const Parameters<double>& a, double T0, double T1,
                        const IntegratorConfig& cfg, const QPOptions& options) {
  require_same_side(T0, T1);
  const OdeSolution sol =
      integrate_ode(qp_rhs(a), {x0.q1, x0.p1, x0.q2, x0.p2}, T0, T1, cfg, options.checkpoints);

  Trajectory tr;
  tr.chart = Chart::qp;
  tr.time_name = "T";
  tr.state_names = {"q1", "p1", "q2", "p2"};
  tr.diagnostic_names = {"H"};
  tr.rejected_steps = sol.rejected;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const auto& y = sol.states[k];
    const double H = hamiltonian(QPState<double>{y[0], y[1], y[2], y[3], sol.times[k]}, a);
    tr.records.push_back({sol.times[k], y, sol.steps[k], {H}, sol.checkpoints[k]});
  }

  if (options.cross_check) {
    if (T0 < 0.0) throw SingularTime("cross-check needs T > 0 (t = log T)");
    // Land the symmetric-form flow on every recorded T.
    std::vector<double> ts;
    for (const auto& r : tr.records) ts.push_back(std::log(r.time));
    const FState<double> lifted = lift_to_f(QPState<double>{x0.q1, x0.p1, x0.q2, x0.p2, T0});
    const auto init = lifted.to_array();
    const OdeSolution fsol = integrate_ode(f_rhs(a), {init.begin(), init.end()}, ts.front(), ts.back(), cfg, ts);
    tr.diagnostic_names.emplace_back("xcheck");
    std::vector<const std::vector<double>*> landed;
    for (std::size_t k = 0; k < fsol.times.size(); ++k) {
      if (fsol.checkpoints[k]) landed.push_back(&fsol.states[k]);
    }
    if (landed.size() != tr.records.size()) throw IntegrationError("cross-check: record times could not be matched");
    for (std::size_t k = 0; k < tr.records.size(); ++k) {
      auto& r = tr.records[k];
      const auto& y = *landed[k];
      const double dev = std::max({std::abs(y[4] - r.state[0]), std::abs(y[0] - r.state[1]),
                                   std::abs(y[5] - r.state[2]), std::abs(y[1] - r.state[3])});
      r.diagnostics.push_back(dev);
    }
  }
  tr.termination = "completed";
  return tr;
}

CrossCheck cross_check_charts(const QPState<double>& x0, const Parameters<double>& a, double T0, double T1,
                              const IntegratorConfig& cfg, std::size_t samples) {
  if (!(T0 > 0.0) || !(T1 > 0.0)) throw SingularTime("cross-check needs T0, T1 > 0");
  if (T0 == T1) return {0.0, 0.0, 1};
  samples = std::max<std::size_t>(samples, 1);

  const double t0 = std::log(T0), t1 = std::log(T1);
  std::vector<double> Ts, ts;
  for (std::size_t k = 1; k < samples; ++k) {
    const double t = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(samples);
    ts.push_back(t);
    Ts.push_back(std::exp(t));
  }

  const OdeSolution qsol = integrate_ode(qp_rhs(a), {x0.q1, x0.p1, x0.q2, x0.p2}, T0, T1, cfg, Ts);
  const auto init = lift_to_f(QPState<double>{x0.q1, x0.p1, x0.q2, x0.p2, T0}).to_array();
  const OdeSolution fsol = integrate_ode(f_rhs(a), {init.begin(), init.end()}, t0, t1, cfg, ts);

  CrossCheck out;
  for (std::size_t k = 0; k < fsol.times.size(); ++k) {
    const auto& f = fsol.states[k];
    out.max_time_drift =
        std::max(out.max_time_drift, std::abs(f[2] - f[4] * f[5] - std::exp(fsol.times[k])));
  }

  // Pair up the checkpoint records of both runs (initial point, the
  // interior matched times, final point).
  std::vector<const std::vector<double>*> qcp, fcp;
  for (std::size_t k = 0; k < qsol.times.size(); ++k) {
    if (qsol.checkpoints[k]) qcp.push_back(&qsol.states[k]);
  }
  for (std::size_t k = 0; k < fsol.times.size(); ++k) {
    if (fsol.checkpoints[k]) fcp.push_back(&fsol.states[k]);
  }
  const std::size_t m = std::min(qcp.size(), fcp.size());
  for (std::size_t k = 0; k < m; ++k) {
    const auto& q = *qcp[k];
    const auto& f = *fcp[k];
    // reduce_to_qp: (q1, p1, q2, p2) = (g1, f0, g2, f1)
    const double dev = std::max({std::abs(f[4] - q[0]), std::abs(f[0] - q[1]), std::abs(f[5] - q[2]),
                                 std::abs(f[1] - q[3])});
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  out.matched_times = m;
  return out;
}

namespace {

struct Denominator {
  const char* divisor;
  double value;
};

std::vector<Denominator> denominators(Generator g, const QPState<double>& x) {
  switch (g) {
    case Generator::s0: return {{"p1", x.p1}};
    case Generator::s1: return {{"p2", x.p2}};
    case Generator::s2: return {{"q1q2+T", x.q1 * x.q2 + x.T}};
    case Generator::s3: return {{"p1+p2-1", x.p1 + x.p2 - 1.0}};
    case Generator::pi: return {};
  }
  return {};
}

void check_pole(Generator g, const QPState<double>& x) {
  if (std::abs(x.T) < pole_threshold) throw SingularTime("T is numerically zero");
  for (const auto& d : denominators(g, x)) {
    if (!(std::abs(d.value) >= pole_threshold)) throw PoleHit(d.divisor);
  }
}

StepGuard pole_guard(Generator g) {
  return [g](double t_prev, std::span<const double> y_prev, double t, std::span<const double> y) {
    const auto before = denominators(g, {y_prev[0], y_prev[1], y_prev[2], y_prev[3], t_prev});
    const auto after = denominators(g, {y[0], y[1], y[2], y[3], t});
    for (std::size_t k = 0; k < after.size(); ++k) {
      if (!(std::abs(after[k].value) >= pole_threshold) || (before[k].value > 0.0) != (after[k].value > 0.0)) {
        throw PoleHit(after[k].divisor);
      }
    }
  };
}

QPState<double> flow_to(const QPState<double>& x, const Parameters<double>& a, double T0, double T1,
                        const IntegratorConfig& cfg, const StepGuard& guard) {
  const OdeSolution sol = integrate_ode(qp_rhs(a), {x.q1, x.p1, x.q2, x.p2}, T0, T1, cfg, {}, guard);
  const auto& y = sol.states.back();
  return {y[0], y[1], y[2], y[3], T1};
}

}  // namespace

double backlund_commutation_check(Generator g, const QPState<double>& x0, const Parameters<double>& a, double T0,
                                  double T1, const IntegratorConfig& cfg) {
  require_same_side(T0, T1);
  const QPState<double> start{x0.q1, x0.p1, x0.q2, x0.p2, T0};
  check_pole(g, start);

  // flow, then g
  const QPState<double> end = flow_to(start, a, T0, T1, cfg, pole_guard(g));
  check_pole(g, end);
  const QPPoint<double> flow_then_g = apply_generator(g, QPPoint<double>{end, a});

  // g, then flow with the transformed parameters
  const QPPoint<double> moved = apply_generator(g, QPPoint<double>{start, a});
  const QPState<double> g_then_flow = flow_to(moved.x, moved.a, T0, T1, cfg, pole_guard(g));

  const auto u = flow_then_g.x.to_array();
  const auto v = g_then_flow.to_array();
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(u[i] - v[i]));
  return dev;
}

void write_csv(std::ostream& os, const Trajectory& tr) {
  const auto cols = tr.column_names();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : tr.records) {
    os << format_float(r.time);
    for (double v : r.state) os << ',' << format_float(v);
    os << ',' << format_float(r.step);
    for (double v : r.diagnostics) os << ',' << format_float(v);
    os << '\n';
  }
}

}  // namespace a52
