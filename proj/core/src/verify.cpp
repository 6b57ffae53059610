#include "a52/verify.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

#include "a52/bracket.hpp"
#include "a52/symmetries.hpp"

namespace a52 {

namespace {

using Q = ExactRational;
using Job = std::function<ClaimRecord()>;

std::string describe(const FState<Q>& x) { return "f=(" + format_state(x) + ")"; }
std::string describe(const QPState<Q>& x) { return "qpT=(" + format_state(x) + ")"; }
std::string describe(const Parameters<Q>& a) { return "alpha=(" + format_parameters(a) + ")"; }
template <class Point>
std::string describe(const Point& pt) {
  return describe(pt.x) + " " + describe(pt.a);
}

template <std::size_t N>
std::string describe_residual(const std::array<Q, N>& r) {
  std::vector<Q> v(r.begin(), r.end());
  return "residual=(" + format_rational_list(v) + ")";
}

/// Evaluates `check` at cfg-many fresh points. `check` returns a description
/// of the violation, or nullopt when the identity holds at that point.
/// PoleHit means the point is unusable and it is redrawn.
template <class Draw, class Check>
ClaimRecord pointwise(std::string id, std::string anchor, const SampleConfig& cfg, std::size_t points, Draw draw,
                      Check check) {
  ClaimRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  RationalSampler rng(cfg, r.id);
  std::size_t retries = 0;
  while (r.points < points) {
    const auto pt = draw(rng);
    try {
      const std::optional<std::string> bad = check(pt);
      ++r.points;
      if (bad) {
        ++r.failures;
        if (!r.counterexample) r.counterexample = describe(pt) + " " + *bad;
      }
    } catch (const PoleHit&) {
      if (++retries > cfg.max_retries_on_pole) {
        ++r.failures;
        r.counterexample = "insufficient samples: more than " + std::to_string(cfg.max_retries_on_pole) +
                           " draws landed on a pole";
        break;
      }
    } catch (const Error& e) {
      ++r.points;
      ++r.failures;
      if (!r.counterexample) r.counterexample = describe(pt) + " error: " + e.what();
    }
  }
  return r;
}

auto draw_f(ParameterConstraints pc = {}, FConstraints fc = {}) {
  return [=](RationalSampler& rng) { return FPoint<Q>{sample_fstate(rng, fc), sample_parameters(rng, pc)}; };
}

auto draw_qp() {
  return [](RationalSampler& rng) { return QPPoint<Q>{sample_qpstate(rng), sample_parameters(rng)}; };
}

template <class T>
std::optional<std::string> unless_zero(const T& residual) {
  if (all_zero(residual)) return std::nullopt;
  return describe_residual(residual);
}

// ---------------------------------------------------------------- integrals

std::vector<Job> integral_claims(const SampleConfig& cfg) {
  const std::size_t n = cfg.points_per_identity;
  return {
      [=] {
        return pointwise("integral.linear", "df3/dt = d(f0+f1)/dt along the symmetric-form field", cfg, n, draw_f(),
                         [](const FPoint<Q>& p) {
                           return unless_zero(std::array<Q, 1>{first_integral_residuals(p.x, p.a).linear});
                         });
      },
      [=] {
        return pointwise("integral.exponential", "d(f2 - g1 g2)/dt = f2 - g1 g2 along the symmetric-form field",
                         cfg, n, draw_f(), [](const FPoint<Q>& p) {
                           return unless_zero(std::array<Q, 1>{first_integral_residuals(p.x, p.a).exponential});
                         });
      },
  };
}

// ---------------------------------------------------------------- divisors

std::vector<Job> divisor_claims(const SampleConfig& cfg) {
  std::vector<Job> jobs;
  for (int i = 0; i < 4; ++i) {
    jobs.push_back([=] {
      const std::string f = "f" + std::to_string(i);
      return pointwise("divisor." + f,
                       "{" + f + " = 0} is invariant when alpha" + std::to_string(i) + " = 0", cfg,
                       cfg.points_per_identity, draw_f(ParameterConstraints{i}, FConstraints{i, false}),
                       [i](const FPoint<Q>& p) {
                         return unless_zero(std::array<Q, 1>{divisor_tangency_residual(i, p.x, p.a)});
                       });
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- invariance

std::vector<Job> invariance_f_claims(const SampleConfig& cfg) {
  std::vector<Job> jobs;
  for (Generator g : all_generators) {
    jobs.push_back([=] {
      return pointwise(std::string("invariance-f.") + name(g),
                       std::string("J_") + name(g) + " V = V o " + name(g) + " for the symmetric-form field", cfg,
                       cfg.points_per_identity, draw_f(),
                       [g](const FPoint<Q>& p) { return unless_zero(pushforward_residual(g, p)); });
    });
  }
  return jobs;
}

std::vector<Job> invariance_qp_claims(const SampleConfig& cfg) {
  std::vector<Job> jobs;
  for (Generator g : all_generators) {
    jobs.push_back([=] {
      return pointwise(std::string("invariance-qp.") + name(g),
                       std::string("J_") + name(g) + " V = V o " + name(g) +
                           " for the extended (q, p, T) Hamiltonian-chart field",
                       cfg, cfg.points_per_identity, draw_qp(),
                       [g](const QPPoint<Q>& p) { return unless_zero(pushforward_residual(g, p)); });
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- hamiltonian

std::vector<Job> hamiltonian_claims(const SampleConfig& cfg) {
  return {[=] {
    return pointwise("hamiltonian.vector-field",
                     "(dH/dp1, -dH/dq1, dH/dp2, -dH/dq2) equals the coupled Painleve III field", cfg,
                     cfg.points_per_identity, draw_qp(), [](const QPPoint<Q>& p) -> std::optional<std::string> {
                       const auto h = hamiltonian_vector_field(p.x, p.a).to_array();
                       const auto v = qp_vector_field(p.x, p.a).to_array();
                       std::array<Q, 4> r;
                       for (std::size_t i = 0; i < 4; ++i) r[i] = h[i] - v[i];
                       return unless_zero(r);
                     });
  }};
}

// ---------------------------------------------------------------- reduction

std::vector<Job> reduction_claims(const SampleConfig& cfg) {
  const std::size_t n = cfg.points_per_identity;
  std::vector<Job> jobs{
      [=] {
        return pointwise("reduction.conjugacy",
                         "symmetric-form field on the level set, with d/dt = T d/dT, equals the "
                         "Hamiltonian-chart field; d(f2 - g1 g2)/dt = T",
                         cfg, n, draw_qp(), [](const QPPoint<Q>& p) -> std::optional<std::string> {
                           const auto r = conjugated_field_residual(p.x, p.a);
                           const auto rr = r.rates.to_array();
                           return unless_zero(std::array<Q, 5>{rr[0], rr[1], rr[2], rr[3], r.time_rate});
                         });
      },
      [=] {
        return pointwise("reduction.round-trip", "reduce_to_qp o lift_to_f = id and lift_to_f o reduce_to_qp = id",
                         cfg, n,
                         [](RationalSampler& rng) {
                           return FPoint<Q>{sample_fstate(rng, FConstraints{std::nullopt, true}),
                                            sample_parameters(rng)};
                         },
                         [](const FPoint<Q>& p) -> std::optional<std::string> {
                           const QPState<Q> y = reduce_to_qp(p.x);
                           if (!(lift_to_f(y) == p.x)) return "lift(reduce(x)) != x";
                           if (!(reduce_to_qp(lift_to_f(y)) == y)) return "reduce(lift(y)) != y";
                           return std::nullopt;
                         });
      },
  };
  for (Generator g : all_generators) {
    jobs.push_back([=] {
      return pointwise(std::string("equivariance.") + name(g),
                       std::string("lift_to_f o ") + name(g) + " (qp-chart) = " + name(g) + " (f-chart) o lift_to_f",
                       cfg, n, draw_qp(), [g](const QPPoint<Q>& p) -> std::optional<std::string> {
                         const QPPoint<Q> moved = apply_generator(g, p);
                         const FPoint<Q> via_qp{lift_to_f(moved.x), moved.a};
                         const FPoint<Q> via_f = apply_generator(g, FPoint<Q>{lift_to_f(p.x), p.a});
                         if (via_qp == via_f) return std::nullopt;
                         return "lifted image " + describe(via_qp) + " vs " + describe(via_f);
                       });
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- relations

struct ExpectedOrder {
  Generator a, b;
  int order;
};

constexpr std::array<ExpectedOrder, 6> expected_orders{{{Generator::s0, Generator::s1, 2},
                                                        {Generator::s0, Generator::s3, 2},
                                                        {Generator::s1, Generator::s3, 2},
                                                        {Generator::s0, Generator::s2, 3},
                                                        {Generator::s1, Generator::s2, 3},
                                                        {Generator::s2, Generator::s3, 4}}};

template <class Draw>
ClaimRecord order_claim(const std::string& chart, const ExpectedOrder& e, const SampleConfig& cfg, Draw draw) {
  ClaimRecord r;
  r.id = "order-" + chart + "." + name(e.a) + name(e.b);
  r.anchor = "(" + std::string(name(e.a)) + " " + name(e.b) + ")^" + std::to_string(e.order) + " = 1, minimal (" +
             chart + "-chart)";
  RationalSampler rng(cfg, r.id);
  try {
    const auto m = relation_order(e.a, e.b, [&] { return draw(rng); }, cfg.relation_points, cfg.max_order,
                                  cfg.max_retries_on_pole);
    r.points = cfg.relation_points;
    r.detail = m ? "order " + std::to_string(*m) : "order unbounded (> " + std::to_string(cfg.max_order) + ")";
    if (m != e.order) {
      r.failures = 1;
      r.counterexample = "expected order " + std::to_string(e.order) + ", found " + r.detail;
    }
  } catch (const Error& ex) {
    r.failures = 1;
    r.counterexample = ex.what();
  }
  return r;
}

std::vector<Job> relation_claims(const SampleConfig& cfg) {
  std::vector<Job> jobs;
  for (Generator g : all_generators) {
    jobs.push_back([=] {
      return pointwise(std::string("involution-f.") + name(g), std::string(name(g)) + "^2 = 1 (f-chart)", cfg,
                       cfg.points_per_identity, draw_f(), [g](const FPoint<Q>& p) -> std::optional<std::string> {
                         const auto back = apply_word(Word{g, g}, p);
                         if (back == p) return std::nullopt;
                         return "image " + describe(back);
                       });
    });
    jobs.push_back([=] {
      return pointwise(std::string("involution-qp.") + name(g), std::string(name(g)) + "^2 = 1 (qp-chart)", cfg,
                       cfg.points_per_identity, draw_qp(), [g](const QPPoint<Q>& p) -> std::optional<std::string> {
                         const auto back = apply_word(Word{g, g}, p);
                         if (back == p) return std::nullopt;
                         return "image " + describe(back);
                       });
    });
  }
  for (const auto& e : expected_orders) {
    jobs.push_back([=] {
      return order_claim("f", e, cfg, [](RationalSampler& rng) {
        return FPoint<Q>{sample_fstate(rng), sample_parameters(rng)};
      });
    });
    jobs.push_back([=] {
      return order_claim("qp", e, cfg, [](RationalSampler& rng) {
        return QPPoint<Q>{sample_qpstate(rng), sample_parameters(rng)};
      });
    });
  }
  // Checked on unnormalized parameters: the invariance is of the linear form
  // itself, not only of its zero set.
  SampleConfig relaxed = cfg;
  relaxed.constrain_normalization = false;
  for (Generator g : all_generators) {
    jobs.push_back([=] {
      return pointwise(std::string("normalization.") + name(g),
                       std::string("alpha0 + alpha1 + 2 alpha2 + alpha3 is invariant under ") + name(g), relaxed,
                       relaxed.points_per_identity,
                       [](RationalSampler& rng) { return FPoint<Q>{FState<Q>{}, sample_parameters(rng)}; },
                       [g](const FPoint<Q>& p) -> std::optional<std::string> {
                         const Q before = normalization_residual(p.a);
                         const Q after = normalization_residual(act_on_parameters(g, p.a));
                         if (before == after) return std::nullopt;
                         return "residual " + before.to_string() + " -> " + after.to_string();
                       });
    });
  }
  for (int i = 0; i < 4; ++i) {
    const Generator g = reflections[static_cast<std::size_t>(i)];
    jobs.push_back([=] {
      return pointwise(std::string("reflection.") + name(g),
                       std::string(name(g)) + " sends alpha" + std::to_string(i) + " to -alpha" + std::to_string(i),
                       relaxed, relaxed.points_per_identity,
                       [](RationalSampler& rng) { return FPoint<Q>{FState<Q>{}, sample_parameters(rng)}; },
                       [g, i](const FPoint<Q>& p) -> std::optional<std::string> {
                         if (act_on_parameters(g, p.a)[i] == -p.a[i]) return std::nullopt;
                         return "alpha image " + format_parameters(act_on_parameters(g, p.a));
                       });
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- automorphism

template <class Draw>
std::vector<ClaimRecord> automorphism_records(const std::string& chart, const SampleConfig& cfg, Draw draw) {
  const std::string stream = "automorphism-" + chart;
  RationalSampler rng(cfg, stream);
  std::vector<ClaimRecord> out;
  try {
    for (const auto& id : diagram_automorphism_check([&] { return draw(rng); }, cfg.points_per_identity,
                                                     cfg.max_retries_on_pole)) {
      ClaimRecord r;
      r.id = stream + ".pi" + name(id.conjugated) + "pi";
      r.anchor = std::string("pi ") + name(id.conjugated) + " pi = " + name(id.expected) + " (" + chart + "-chart)";
      r.points = id.points;
      r.failures = id.failures;
      if (id.failures) r.counterexample = std::to_string(id.failures) + " points disagree";
      out.push_back(std::move(r));
    }
  } catch (const Error& e) {
    ClaimRecord r;
    r.id = stream;
    r.anchor = "pi conjugation identities (" + chart + "-chart)";
    r.failures = 1;
    r.counterexample = e.what();
    out.push_back(std::move(r));
  }
  return out;
}

// The automorphism check produces four records from one sampling stream, so
// it is run as a single job and unpacked afterwards.
std::vector<std::function<std::vector<ClaimRecord>()>> automorphism_jobs(const SampleConfig& cfg) {
  return {
      [=] {
        return automorphism_records("f", cfg, [](RationalSampler& rng) {
          return FPoint<Q>{sample_fstate(rng), sample_parameters(rng)};
        });
      },
      [=] {
        return automorphism_records("qp", cfg, [](RationalSampler& rng) {
          return QPPoint<Q>{sample_qpstate(rng), sample_parameters(rng)};
        });
      },
  };
}

// ---------------------------------------------------------------- bracket

struct TriplePoint {
  FState<Q> x;
  Parameters<Q> a;
  std::array<FCoord, 3> coords;
};

auto draw_level_set() {
  return [](RationalSampler& rng) {
    return FPoint<Q>{sample_fstate(rng, FConstraints{std::nullopt, true}), sample_parameters(rng)};
  };
}

ClaimRecord stated_entry_claim(const SampleConfig& cfg, FCoord a, FCoord b, bool flag_on_mismatch) {
  const std::string pair = std::string(name(a)) + name(b);
  ClaimRecord r = pointwise(
      "bracket." + pair,
      std::string("stated {") + name(a) + ", " + name(b) + "} agrees with the bracket pulled back from {q_i, p_i} = 1",
      cfg, cfg.points_per_identity, draw_level_set(), [a, b](const FPoint<Q>& p) -> std::optional<std::string> {
        const BracketTableF<Q> table(p.x);
        const auto& e = table.at(a, b);
        if (!e.sign_discrepancy) return std::nullopt;
        return "stated " + e.stated->to_string() + ", embedding gives " + e.embedded->to_string();
      });
  if (flag_on_mismatch && r.failures > 0) {
    r.flagged = true;
    r.detail = "sign convention discrepancy: " + r.counterexample.value_or("");
  }
  return r;
}

std::vector<Job> bracket_claims(const SampleConfig& cfg) {
  const std::size_t n = cfg.points_per_identity;
  std::vector<Job> jobs{
      [=] { return stated_entry_claim(cfg, FCoord::f2, FCoord::f3, false); },
      [=] { return stated_entry_claim(cfg, FCoord::f3, FCoord::g1, true); },
      [=] { return stated_entry_claim(cfg, FCoord::f3, FCoord::g2, true); },
      [=] {
        return pointwise("bracket.table-antisymmetry", "{u, v} = -{v, u} for every entry of the 6x6 bracket table",
                         cfg, n, draw_level_set(), [](const FPoint<Q>& p) -> std::optional<std::string> {
                           const BracketTableF<Q> t(p.x);
                           for (int i = 0; i < 6; ++i) {
                             for (int j = 0; j < 6; ++j) {
                               const auto& u = t.at(static_cast<FCoord>(i), static_cast<FCoord>(j));
                               const auto& v = t.at(static_cast<FCoord>(j), static_cast<FCoord>(i));
                               if (!u.value || !v.value || !(*u.value == -*v.value)) {
                                 return std::string("entry {") + FState<Q>::names[i] + ", " + FState<Q>::names[j] +
                                        "}";
                               }
                               if (u.stated && !(*u.stated == -*v.stated)) return std::string("stated entry");
                             }
                           }
                           return std::nullopt;
                         });
      },
      [=] {
        return pointwise(
            "bracket.leibniz", "{F, G H} = {F, G} H + G {F, H} and {F, G} = -{G, F} for the pulled-back bracket",
            cfg, n,
            [](RationalSampler& rng) {
              std::uniform_int_distribution<int> coord(0, 5);
              TriplePoint t{sample_fstate(rng, FConstraints{std::nullopt, true}), sample_parameters(rng), {}};
              for (auto& c : t.coords) c = static_cast<FCoord>(coord(rng.engine()));
              return t;
            },
            [](const TriplePoint& p) -> std::optional<std::string> {
              const auto [F, G, H] = p.coords;
              const auto c = [](FCoord k) { return [k](const auto& y) { return coordinate(y, k); }; };
              const Q fg = embedded_bracket(c(F), c(G), p.x);
              const Q gf = embedded_bracket(c(G), c(F), p.x);
              const Q fh = embedded_bracket(c(F), c(H), p.x);
              const Q f_gh = embedded_bracket(
                  c(F), [G, H](const auto& y) { return coordinate(y, G) * coordinate(y, H); }, p.x);
              if (!(fg == -gf)) return std::string("antisymmetry fails");
              if (!(f_gh == fg * coordinate(p.x, H) + coordinate(p.x, G) * fh)) return std::string("Leibniz fails");
              return std::nullopt;
            });
      },
  };
  for (Generator g : all_generators) {
    jobs.push_back([=] {
      return pointwise(std::string("bracket-preservation.") + name(g),
                       std::string("{q_i, p_j} is preserved by ") + name(g) + " (qp-chart, T fixed)", cfg, n,
                       draw_qp(), [g](const QPPoint<Q>& p) -> std::optional<std::string> {
                         const auto component = [g, &p](std::size_t k) {
                           return [g, k, &p](const QPState<Dual<Q>>& y) {
                             return apply_generator(g, QPPoint<Dual<Q>>{y, convert<Dual<Q>>(p.a)}).x.to_array()[k];
                           };
                         };
                         for (std::size_t i = 0; i < 4; ++i) {
                           for (std::size_t j = i + 1; j < 4; ++j) {
                             const Q b = canonical_bracket(component(i), component(j), p.x);
                             // Omega in (q1, p1, q2, p2) order.
                             const Q expected = (i == 0 && j == 1) || (i == 2 && j == 3) ? Q(1) : Q(0);
                             if (!(b == expected)) {
                               return "bracket of image components " + std::to_string(i) + "," +
                                      std::to_string(j) + " = " + b.to_string();
                             }
                           }
                         }
                         return std::nullopt;
                       });
    });
  }
  return jobs;
}

std::vector<Job> jobs_for(Suite s, const SampleConfig& cfg) {
  switch (s) {
    case Suite::integrals: return integral_claims(cfg);
    case Suite::divisors: return divisor_claims(cfg);
    case Suite::invariance_f: return invariance_f_claims(cfg);
    case Suite::invariance_qp: return invariance_qp_claims(cfg);
    case Suite::hamiltonian: return hamiltonian_claims(cfg);
    case Suite::reduction: return reduction_claims(cfg);
    case Suite::relations: return relation_claims(cfg);
    case Suite::bracket: return bracket_claims(cfg);
    case Suite::automorphism:
    case Suite::all: return {};
  }
  return {};
}

template <class F>
auto timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto out = f();
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return std::pair{std::move(out), s};
}

}  // namespace

const char* name(Suite s) {
  switch (s) {
    case Suite::integrals: return "integrals";
    case Suite::divisors: return "divisors";
    case Suite::invariance_f: return "invariance-f";
    case Suite::invariance_qp: return "invariance-qp";
    case Suite::hamiltonian: return "hamiltonian";
    case Suite::reduction: return "reduction";
    case Suite::relations: return "relations";
    case Suite::automorphism: return "automorphism";
    case Suite::bracket: return "bracket";
    case Suite::all: return "all";
  }
  return "?";
}

const std::vector<Suite>& concrete_suites() {
  static const std::vector<Suite> suites{Suite::integrals,   Suite::divisors,  Suite::invariance_f,
                                         Suite::invariance_qp, Suite::hamiltonian, Suite::reduction,
                                         Suite::relations,   Suite::automorphism, Suite::bracket};
  return suites;
}

Suite parse_suite(std::string_view text) {
  for (Suite s : concrete_suites()) {
    if (text == name(s)) return s;
  }
  if (text == "all") return Suite::all;
  throw ParseError("unknown suite '" + std::string(text) + "'");
}

bool VerificationReport::pass() const {
  if (claims.empty()) return false;
  for (const auto& c : claims) {
    if (!c.pass()) return false;
  }
  return true;
}

const ClaimRecord* VerificationReport::find(std::string_view id) const {
  for (const auto* list : {&claims, &flagged}) {
    for (const auto& c : *list) {
      if (c.id == id) return &c;
    }
  }
  return nullptr;
}

VerificationReport run_suite(Suite suite, const SampleConfig& cfg, unsigned threads) {
  cfg.validate();
  using Batch = std::function<std::vector<ClaimRecord>()>;
  std::vector<std::pair<std::string, Batch>> batches;
  const std::vector<Suite> selected = suite == Suite::all ? concrete_suites() : std::vector<Suite>{suite};
  for (Suite s : selected) {
    if (s == Suite::automorphism) {
      for (auto& job : automorphism_jobs(cfg)) batches.emplace_back(name(s), std::move(job));
      continue;
    }
    for (auto& job : jobs_for(s, cfg)) {
      batches.emplace_back(name(s), [job = std::move(job)] { return std::vector<ClaimRecord>{job()}; });
    }
  }

  auto run_one = [](const Batch& b) {
    auto [records, seconds] = timed(b);
    // A batch's wall time is split evenly over the records it produced.
    for (auto& r : records) r.wall_seconds = seconds / static_cast<double>(records.size());
    return records;
  };

  std::vector<std::vector<ClaimRecord>> results(batches.size());
  if (threads <= 1) {
    for (std::size_t k = 0; k < batches.size(); ++k) results[k] = run_one(batches[k].second);
  } else {
    for (std::size_t start = 0; start < batches.size(); start += threads) {
      std::vector<std::future<std::vector<ClaimRecord>>> pending;
      const std::size_t end = std::min(batches.size(), start + threads);
      for (std::size_t k = start; k < end; ++k) {
        pending.push_back(std::async(std::launch::async, run_one, std::cref(batches[k].second)));
      }
      for (std::size_t k = start; k < end; ++k) results[k] = pending[k - start].get();
    }
  }

  VerificationReport report;
  report.suite = name(suite);
  report.config = cfg;
  for (std::size_t k = 0; k < batches.size(); ++k) {
    for (auto& r : results[k]) {
      r.suite = batches[k].first;
      (r.flagged ? report.flagged : report.claims).push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace a52
