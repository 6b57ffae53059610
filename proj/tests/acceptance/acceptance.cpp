// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "a52/integrate.hpp"
#include "a52/verify.hpp"

using namespace a52;

namespace {

using Clock = std::chrono::steady_clock;

int failed = 0;

void report(int id, const std::string& title, bool ok, double seconds, double limit, const std::string& detail) {
  const bool in_time = seconds < limit;
  const bool pass = ok && in_time;
  if (!pass) ++failed;
  std::printf("%s %2d %s | %.3fs (limit %gs)%s | %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), seconds, limit,
              in_time ? "" : " TIMEOUT", detail.c_str());
  std::fflush(stdout);
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

struct Selection {
  bool ok = true;
  std::size_t claims = 0;
  std::string detail;
};

// Every claim whose id starts with one of the prefixes must pass on exactly
// `points` points.
Selection select(const VerificationReport& r, const std::vector<std::string>& prefixes, std::size_t points) {
  Selection s;
  for (const auto& c : r.claims) {
    bool wanted = false;
    for (const auto& p : prefixes) wanted = wanted || starts_with(c.id, p);
    if (!wanted) continue;
    ++s.claims;
    if (!c.pass() || c.points != points) {
      s.ok = false;
      s.detail += " " + c.id + "(" + std::to_string(c.failures) + "/" + std::to_string(c.points) + ")";
    }
  }
  if (s.claims == 0) s.ok = false;
  s.detail = std::to_string(s.claims) + " claims x " + std::to_string(points) + " points" +
             (s.ok ? "" : ", failing:" + s.detail);
  return s;
}

void suite_criterion(int id, const std::string& title, double limit, std::vector<Suite> suites, SampleConfig cfg,
                     const std::vector<std::string>& prefixes, std::size_t points, std::size_t expected_claims,
                     const std::function<bool(const VerificationReport&, std::string&)>& extra = {}) {
  const auto t0 = Clock::now();
  Selection total{true, 0, ""};
  std::string extra_detail;
  bool extra_ok = true;
  for (Suite s : suites) {
    const auto r = run_suite(s, cfg);
    const auto sel = select(r, prefixes, points);
    total.ok = total.ok && sel.ok;
    total.claims += sel.claims;
    if (!sel.ok) total.detail += " " + sel.detail;
    if (extra) extra_ok = extra(r, extra_detail) && extra_ok;
  }
  const double seconds = since(t0);
  const bool ok = total.ok && extra_ok && total.claims == expected_claims;
  std::string detail = std::to_string(total.claims) + "/" + std::to_string(expected_claims) + " claims at " +
                       std::to_string(points) + " points";
  if (!total.ok) detail += ";" + total.detail;
  if (!extra_detail.empty()) detail += "; " + extra_detail;
  report(id, title, ok, seconds, limit, detail);
}

SampleConfig points(std::size_t n) {
  SampleConfig cfg;
  cfg.points_per_identity = n;
  cfg.relation_points = 50;
  cfg.max_order = 8;
  return cfg;
}

const Parameters<double> kAlpha{0.125, 0.125, 0.0625, 0.125};

char fmt_buf[64];
std::string sci(double x) {
  std::snprintf(fmt_buf, sizeof fmt_buf, "%.3g", x);
  return fmt_buf;
}

// Seeded draws in [-2,2]^6 over t in [0,1]. Many such solutions meet a
// movable pole before t = 1; those end in StepUnderflow, are counted, and are
// excluded from the drift bound.
bool drift_part(std::string& detail) {
  constexpr std::size_t wanted = 20, max_draws = 400;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::size_t completed = 0, draws = 0, poles = 0;
  double worst = 0.0;
  bool ok = true;
  while (completed < wanted && draws < max_draws) {
    ++draws;
    const FState<double> x0{coord(rng), coord(rng), coord(rng), coord(rng), coord(rng), coord(rng)};
    try {
      const auto tr = integrate_f(x0, kAlpha, 0.0, 1.0);
      worst = std::max({worst, tr.max_abs_diagnostic(0), tr.max_abs_diagnostic(1)});
      ++completed;
    } catch (const StepUnderflow&) {
      ++poles;
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string("unexpected ") + e.what() + "; ";
    }
  }
  ok = ok && completed == wanted && worst <= 1e-8;
  detail += "drift " + sci(worst) + " <= 1e-08 over " + std::to_string(completed) + " trajectories (" +
            std::to_string(poles) + " of " + std::to_string(draws) + " draws hit a movable pole)";
  return ok;
}

// Seeded draws in [-1/2,1/2]^4 at T = 1 whose solution stays regular on
// [1, e]; draws that meet a pole are counted and skipped.
struct QPEnsemble {
  std::vector<QPState<double>> points;
  std::size_t draws = 0;
};

const QPEnsemble& generic_qp_points() {
  static const QPEnsemble ensemble = [] {
    constexpr std::size_t wanted = 8, max_draws = 400;
    QPEnsemble e;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-0.5, 0.5);
    while (e.points.size() < wanted && e.draws < max_draws) {
      ++e.draws;
      const QPState<double> x0{coord(rng), coord(rng), coord(rng), coord(rng), 1.0};
      try {
        integrate_qp(x0, kAlpha, 1.0, std::exp(1.0));
        integrate_f(lift_to_f(x0), kAlpha, 0.0, 1.0);
        e.points.push_back(x0);
      } catch (const StepUnderflow&) {
      }
    }
    return e;
  }();
  return ensemble;
}

bool cross_check_part(std::string& detail) {
  double worst = 0.0;
  bool ok = true;
  const auto& ens = generic_qp_points();
  for (const auto& x0 : ens.points) {
    try {
      worst = std::max(worst, cross_check_charts(x0, kAlpha, 1.0, std::exp(1.0)).max_deviation);
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string("unexpected ") + e.what() + "; ";
    }
  }
  detail += "cross-check " + sci(worst) + " <= 1e-07 over " + std::to_string(ens.points.size()) + " points (" +
            std::to_string(ens.draws - ens.points.size()) + " of " + std::to_string(ens.draws) + " draws hit a pole)";
  return ok && ens.points.size() == 8 && worst <= 1e-7;
}

// Deviation reduction per decade, as the geometric mean over rtol 1e-7 ..
// 1e-12 and over the ensemble.
bool refinement_part(std::string& detail) {
  double log_sum = 0.0, min_rate = INFINITY;
  std::size_t n = 0;
  bool ok = true;
  for (const auto& x0 : generic_qp_points().points) {
    try {
      auto dev = [&](int e) {
        IntegratorConfig cfg;
        cfg.rel_tol = std::pow(10.0, -e);
        cfg.abs_tol = cfg.rel_tol / 100;
        return cross_check_charts(x0, kAlpha, 1.0, std::exp(1.0), cfg).max_deviation;
      };
      const double rate = std::pow(dev(7) / dev(12), 1.0 / 5.0);
      log_sum += std::log(rate);
      min_rate = std::min(min_rate, rate);
      ++n;
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string("unexpected ") + e.what() + "; ";
    }
  }
  const double mean = n ? std::exp(log_sum / static_cast<double>(n)) : 0.0;
  detail += "refinement " + sci(mean) + "x per decade >= 8 (per-point min " + sci(min_rate) + ")";
  return ok && n > 0 && mean >= 8.0;
}

}  // namespace

int main() {
  suite_criterion(1, "first integrals", 1.0, {Suite::integrals}, points(200), {"integral."}, 200, 2);
  suite_criterion(2, "invariant divisors", 1.0, {Suite::divisors}, points(200), {"divisor."}, 200, 4);
  suite_criterion(3, "f-chart invariance", 30.0, {Suite::invariance_f}, points(200), {"invariance-f."}, 200, 5);
  suite_criterion(4, "qp-chart invariance", 30.0, {Suite::invariance_qp}, points(200), {"invariance-qp."}, 200, 5);
  suite_criterion(5, "Hamiltonian consistency", 5.0, {Suite::hamiltonian}, points(200), {"hamiltonian."}, 200, 1);
  suite_criterion(6, "reduction", 5.0, {Suite::reduction}, points(200), {"reduction."}, 200, 2);

  suite_criterion(7, "Weyl relations", 60.0, {Suite::relations}, points(200), {"involution-"}, 200, 10,
                  [](const VerificationReport& r, std::string& detail) {
                    const std::vector<std::pair<std::string, int>> table{{"s0s1", 2}, {"s0s3", 2}, {"s1s3", 2},
                                                                         {"s0s2", 3}, {"s1s2", 3}, {"s2s3", 4}};
                    bool ok = true;
                    std::size_t found = 0;
                    for (const auto& [pair, order] : table) {
                      for (const char* chart : {"order-f.", "order-qp."}) {
                        const auto* c = r.find(chart + pair);
                        const bool good = c && c->pass() && c->points == 50 &&
                                          c->detail == "order " + std::to_string(order);
                        found += good;
                        if (!good) detail += std::string(chart) + pair + " wrong; ";
                        ok = ok && good;
                      }
                    }
                    detail += "order table " + std::to_string(found) + "/12 at 50 points, max order 8";
                    return ok;
                  });

  suite_criterion(8, "normalization preservation", 1.0, {Suite::relations}, points(200), {"normalization."}, 200, 5);
  suite_criterion(9, "chart equivariance", 10.0, {Suite::reduction}, points(100), {"equivariance."}, 100, 5);

  {
    const auto t0 = Clock::now();
    std::string detail;
    const bool drift = drift_part(detail);
    detail += "; ";
    const bool xcheck = cross_check_part(detail);
    detail += "; ";
    const bool refine = refinement_part(detail);
    report(10, "numeric drift", drift && xcheck && refine, since(t0), 60.0, detail);
  }

  suite_criterion(11, "bracket report", 1.0, {Suite::bracket}, points(200), {"bracket.f2f3"}, 200, 1,
                  [](const VerificationReport& r, std::string& detail) {
                    bool flagged = false;
                    for (const auto& c : r.flagged) flagged = flagged || (c.id == "bracket.f3g1" && c.flagged);
                    detail += flagged ? "{f3,g1} sign discrepancy flagged" : "{f3,g1} discrepancy not flagged";
                    return flagged && r.pass();
                  });

  std::printf("%s: %d criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
