#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "a52/symmetries.hpp"

namespace a52 {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 picks a starting step automatically
  std::size_t max_steps = 1'000'000;
  // When > 0, steps also land on t0 + k * stride and those records are
  // marked as checkpoints.
  double dense_output_stride = 0.0;

  void validate() const;  // PreconditionViolated on bad fields
};

struct TrajectoryRecord {
  double time = 0.0;
  std::vector<double> state;
  double step = 0.0;  // size of the step that produced this record (0 for the first)
  std::vector<double> diagnostics;
  bool checkpoint = false;
};

struct Trajectory {
  Chart chart = Chart::f;
  std::string time_name;
  std::vector<std::string> state_names;
  std::vector<std::string> diagnostic_names;
  std::vector<TrajectoryRecord> records;
  std::string termination;
  std::size_t rejected_steps = 0;

  const TrajectoryRecord& back() const { return records.back(); }
  std::vector<std::string> column_names() const;
  /// Maximum |diagnostic[k]| over all records.
  double max_abs_diagnostic(std::size_t k) const;
};

/// Right-hand side y' = f(t, y) of a first-order system.
using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;
/// Called after every accepted step with the previous and the new state;
/// throws to abort the integration.
using StepGuard = std::function<void(double t_prev, std::span<const double> y_prev, double t,
                                     std::span<const double> y)>;

struct OdeSolution {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> steps;
  std::vector<bool> checkpoints;
  std::size_t rejected = 0;
};

/// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with PI step
/// control. Integrates in either direction; every time in `checkpoints`
/// strictly between t0 and t1 becomes a step endpoint.
OdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double t1,
                          const IntegratorConfig& cfg, std::vector<double> checkpoints = {},
                          const StepGuard& guard = {});

/// Symmetric-form flow over t in [t0, t1]. Diagnostics per record:
///   d1 = (f3 - f0 - f1) - (f3 - f0 - f1)|t0
///   d2 = (f2 - g1 g2) e^{-(t - t0)} - (f2 - g1 g2)|t0
Trajectory integrate_f(const FState<double>& x0, const Parameters<double>& a, double t0, double t1,
                       const IntegratorConfig& cfg = {});

struct QPOptions {
  // Also integrate the symmetric-form system from the lifted initial point
  // and record the deviation of its reduction at every record time.
  bool cross_check = false;
  std::vector<double> checkpoints;
};

/// Coupled Painleve III flow over T in [T0, T1]; both ends must be nonzero
/// with the same sign. Diagnostics: H(T) (not conserved), and "xcheck" when
/// options.cross_check is set. x0.T is ignored; the flow starts at T0.
Trajectory integrate_qp(const QPState<double>& x0, const Parameters<double>& a, double T0, double T1,
                        const IntegratorConfig& cfg = {}, const QPOptions& options = {});

struct CrossCheck {
  double max_deviation = 0.0;   // max over matched times and (q1, p1, q2, p2)
  double max_time_drift = 0.0;  // max |f2 - g1 g2 - T| along the lifted flow
  std::size_t matched_times = 0;
};

/// Integrates the coupled system in T and, independently, the symmetric form
/// from lift_to_f(x0) over t in [log T0, log T1] (c = 0), then compares the
/// reduction at `samples` log-spaced matched times. T0, T1 > 0.
CrossCheck cross_check_charts(const QPState<double>& x0, const Parameters<double>& a, double T0, double T1,
                              const IntegratorConfig& cfg = {}, std::size_t samples = 4);

/// Magnitude below which a generator denominator or T counts as a pole
/// during a Baecklund commutation check.
inline constexpr double pole_threshold = 1e-12;

/// Deviation between "flow to T1, then g" and "g, then flow with g(alpha) to
/// T1". Throws PoleHit when a denominator of g vanishes at x0 or crosses zero
/// along either flow.
double backlund_commutation_check(Generator g, const QPState<double>& x0, const Parameters<double>& a, double T0,
                                  double T1, const IntegratorConfig& cfg = {});

/// Delimited-text export: header row, then one row per record with every
/// number in shortest round-trip form.
void write_csv(std::ostream& os, const Trajectory& tr);

}  // namespace a52
