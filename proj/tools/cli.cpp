#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "a52/integrate.hpp"
#include "a52/verify.hpp"
#include "plot.hpp"

namespace a52::cli {

namespace {

struct VerifyOptions {
  std::string suite = "all";
  std::size_t points = 200;
  std::uint64_t seed = 42;
  std::int64_t bound = 50;
  std::size_t relation_points = 50;
  int max_order = 8;
  bool relaxed = false;
  unsigned threads = 1;
  std::string format = "text";
  bool timing = true;
};

struct OrbitOptions {
  std::string chart = "qp";
  std::string word;
  std::string state;
  std::string alpha;
  bool relaxed = false;
};

struct IntegrateOptions {
  std::string chart = "qp";
  std::string state;
  std::string alpha;
  std::optional<double> from;
  double to = 0.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 1'000'000;
  double stride = 0.0;
  std::string out;
  bool cross_check = false;
  bool relaxed = false;
};

struct RelationsOptions {
  std::string chart = "both";
  std::size_t points = 50;
  std::uint64_t seed = 42;
  std::int64_t bound = 50;
  int max_order = 8;
};

struct PlotOptions {
  std::string in;
  std::string x;
  std::string y;
  std::string out;
  std::string title;
};

ParameterMode mode_of(bool relaxed) { return relaxed ? ParameterMode::relaxed : ParameterMode::strict; }

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  SampleConfig cfg;
  cfg.seed = o.seed;
  cfg.points_per_identity = o.points;
  cfg.coeff_bound = o.bound;
  cfg.relation_points = o.relation_points;
  cfg.max_order = o.max_order;
  cfg.constrain_normalization = !o.relaxed;
  Suite suite;
  try {
    suite = parse_suite(o.suite);
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  const VerificationReport report = run_suite(suite, cfg, o.threads);
  const ReportFormat fmt{o.timing};
  if (o.format == "structured") {
    out << to_json(report, fmt);
  } else {
    out << "# verify suite=" << o.suite << " points=" << o.points << " relation-points=" << o.relation_points
        << " seed=" << o.seed << " bound=" << o.bound << " max-order=" << o.max_order
        << " normalization=" << (o.relaxed ? "relaxed" : "strict") << " format=" << o.format << '\n';
    out << to_text(report, fmt);
  }
  for (const auto& f : report.flagged) {
    err << "warning: " << f.id << ": " << f.detail << '\n';
  }
  return report.pass() ? exit_ok : exit_fail;
}

int cmd_orbit(const OrbitOptions& o, std::ostream& out, std::ostream& err) {
  Word w;
  try {
    w = parse_word(o.word);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  out << "# orbit chart=" << o.chart << " word=\"" << format_word(w) << "\" state=" << o.state
      << " alpha=" << o.alpha << " normalization=" << (o.relaxed ? "relaxed" : "strict") << '\n';
  try {
    const Parameters<ExactRational> a = parse_parameters(o.alpha, mode_of(o.relaxed));
    if (o.chart == "f") {
      const auto image = apply_word(w, FPoint<ExactRational>{parse_fstate(o.state), a});
      out << "state " << format_state(image.x) << '\n' << "alpha " << format_parameters(image.a) << '\n';
    } else {
      const auto image = apply_word(w, QPPoint<ExactRational>{parse_qpstate(o.state), a});
      out << "state " << format_state(image.x) << '\n' << "alpha " << format_parameters(image.a) << '\n';
    }
  } catch (const PoleHit& e) {
    err << e.what() << " (at step " << e.step() << " of the word)\n";
    return exit_pole;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}

int cmd_integrate(const IntegrateOptions& o, std::ostream& out, std::ostream& err) {
  IntegratorConfig cfg;
  cfg.rel_tol = o.rtol;
  cfg.abs_tol = o.atol;
  cfg.max_steps = o.max_steps;
  cfg.dense_output_stride = o.stride;

  Parameters<double> a;
  std::vector<double> state;
  try {
    a = convert<double>(parse_parameters(o.alpha, mode_of(o.relaxed)));
    for (const auto& v : parse_rational_list(o.state)) state.push_back(v.to_double());
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  const bool f_chart = o.chart == "f";
  const std::size_t expected = f_chart ? 6 : 4;
  if (state.size() != expected && !(!f_chart && state.size() == 5)) {
    err << "error: --state needs " << expected << " values for chart " << o.chart << '\n';
    return exit_usage;
  }
  double from = 0.0;
  if (o.from) {
    from = *o.from;
  } else if (!f_chart && state.size() == 5) {
    from = state[4];
  } else if (!f_chart) {
    err << "error: --from is required for the qp chart unless --state carries T\n";
    return exit_usage;
  }

  out << "# integrate chart=" << o.chart << " state=" << o.state << " alpha=" << o.alpha
      << " from=" << format_float(from) << " to=" << format_float(o.to) << " rtol=" << format_float(o.rtol)
      << " atol=" << format_float(o.atol) << " max-steps=" << o.max_steps << " stride=" << format_float(o.stride)
      << " out=" << (o.out.empty() ? "-" : o.out) << " cross-check=" << (o.cross_check ? "on" : "off") << '\n';

  Trajectory tr;
  std::optional<CrossCheck> xc;
  try {
    if (f_chart) {
      tr = integrate_f(FState<double>{state[0], state[1], state[2], state[3], state[4], state[5]}, a, from, o.to,
                       cfg);
      if (o.cross_check) {
        // Autonomous flow: shift time so that T0 = f2 - g1 g2 at t = from.
        const QPState<double> x0 =
            reduce_to_qp(FState<double>{state[0], state[1], state[2], state[3], state[4], state[5]});
        xc = cross_check_charts(x0, a, x0.T, x0.T * std::exp(o.to - from), cfg);
      }
    } else {
      const QPState<double> x0{state[0], state[1], state[2], state[3], from};
      tr = integrate_qp(x0, a, from, o.to, cfg, QPOptions{o.cross_check, {}});
      if (o.cross_check) xc = cross_check_charts(x0, a, from, o.to, cfg);
    }
  } catch (const OffLevelSet& e) {
    err << "error: --cross-check in the f chart needs f3 = f0 + f1 - 1: " << e.what() << '\n';
    return exit_usage;
  } catch (const IntegrationError& e) {
    err << "integration failed: " << e.what() << '\n';
    return exit_integration;
  } catch (const SingularTime& e) {
    err << "integration failed: SingularTime: " << e.what() << '\n';
    return exit_integration;
  } catch (const Error& e) {
    err << "integration failed: " << e.what() << '\n';
    return exit_integration;
  }

  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) {
      err << "error: cannot write " << o.out << '\n';
      return exit_usage;
    }
    write_csv(file, tr);
  }
  out << "records " << tr.records.size() << " | rejected-steps " << tr.rejected_steps << " | termination "
      << tr.termination << '\n';
  const auto& last = tr.back();
  out << "final " << tr.time_name << "=" << format_float(last.time);
  for (std::size_t i = 0; i < tr.state_names.size(); ++i) {
    out << ' ' << tr.state_names[i] << '=' << format_float(last.state[i]);
  }
  out << '\n';
  if (f_chart) {
    out << "drift max|d1| " << format_float(tr.max_abs_diagnostic(0)) << " | max|d2| "
        << format_float(tr.max_abs_diagnostic(1)) << '\n';
  } else {
    out << "hamiltonian start " << format_float(tr.records.front().diagnostics[0]) << " | end "
        << format_float(last.diagnostics[0]) << '\n';
  }
  if (xc) {
    out << "cross-check max-deviation " << format_float(xc->max_deviation) << " | max|f2-g1g2-T| "
        << format_float(xc->max_time_drift) << " | matched-times " << xc->matched_times << '\n';
  }
  if (o.out.empty()) write_csv(out, tr);
  return exit_ok;
}

int cmd_relations(const RelationsOptions& o, std::ostream& out, std::ostream& err) {
  if (o.chart != "f" && o.chart != "qp" && o.chart != "both") {
    err << "error: --chart must be f, qp or both\n";
    return exit_usage;
  }
  SampleConfig cfg;
  cfg.seed = o.seed;
  cfg.coeff_bound = o.bound;
  cfg.relation_points = o.points;
  cfg.max_order = o.max_order;
  try {
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  out << "# relations chart=" << o.chart << " points=" << o.points << " seed=" << o.seed << " bound=" << o.bound
      << " max-order=" << o.max_order << '\n';
  const VerificationReport report = run_suite(Suite::relations, cfg);
  bool ok = true;
  for (const std::string chart : {"f", "qp"}) {
    if (o.chart != "both" && o.chart != chart) continue;
    for (const auto& c : report.claims) {
      if (c.id.rfind("order-" + chart + ".", 0) != 0) continue;
      out << chart << ' ' << c.id.substr(c.id.find('.') + 1) << ' ' << c.detail << ' '
          << (c.pass() ? "ok" : "MISMATCH") << '\n';
      ok = ok && c.pass();
    }
  }
  return ok ? exit_ok : exit_fail;
}

int cmd_plot(const PlotOptions& o, std::ostream& out, std::ostream& err) {
  out << "# plot in=" << o.in << " x=" << o.x << " y=" << o.y << " out=" << o.out << '\n';
  std::ifstream in(o.in);
  if (!in) {
    err << "error: cannot read " << o.in << '\n';
    return exit_usage;
  }
  try {
    const CsvTable table = CsvTable::read(in);
    std::ostringstream svg;
    write_svg(svg, table, PlotSpec{o.x, split_names(o.y), o.title});
    std::ofstream file(o.out);
    if (!file) {
      err << "error: cannot write " << o.out << '\n';
      return exit_usage;
    }
    file << svg.str();
    out << "wrote " << o.out << " (" << table.rows.size() << " rows)\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symmetry checks and numerics for a coupled Painleve III system", "a52"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check every structural identity by exact evaluation");
  verify->add_option("--suite", vo.suite, "integrals, divisors, invariance-f, invariance-qp, hamiltonian, "
                                           "reduction, relations, automorphism, bracket or all")
      ->capture_default_str();
  verify->add_option("--points", vo.points, "Sample points per identity")->capture_default_str();
  verify->add_option("--relation-points", vo.relation_points, "Sample points per relation order")
      ->capture_default_str();
  verify->add_option("--seed", vo.seed, "Random seed")->capture_default_str();
  verify->add_option("--bound", vo.bound, "Bound on sampled numerators and denominators")->capture_default_str();
  verify->add_option("--max-order", vo.max_order, "Largest relation order searched")->capture_default_str();
  verify->add_flag("--relaxed", vo.relaxed, "Do not normalize sampled parameters");
  verify->add_option("--threads", vo.threads, "Evaluate claims concurrently")->capture_default_str();
  verify->add_option("--format", vo.format, "text or structured (JSON)")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  verify->add_flag("!--no-timing", vo.timing, "Omit wall-time fields");

  OrbitOptions oo;
  auto* orbit = app.add_subcommand("orbit", "Apply a word of Baecklund transformations exactly");
  orbit->add_option("--chart", oo.chart, "f or qp")->check(CLI::IsMember({"f", "qp"}))->capture_default_str();
  orbit->add_option("--word", oo.word, "Generators applied left to right, e.g. \"s2 s3\"")->required();
  orbit->add_option("--state", oo.state, "f0,f1,f2,f3,g1,g2 or q1,p1,q2,p2,T as exact rationals")->required();
  orbit->add_option("--alpha", oo.alpha, "alpha0,alpha1,alpha2,alpha3")->required();
  orbit->add_flag("--relaxed", oo.relaxed, "Allow alpha0 + alpha1 + 2 alpha2 + alpha3 != 1/2");

  IntegrateOptions io;
  auto* integ = app.add_subcommand("integrate", "Integrate a trajectory in floating point");
  integ->add_option("--chart", io.chart, "f or qp")->check(CLI::IsMember({"f", "qp"}))->capture_default_str();
  integ->add_option("--state", io.state, "Initial state (f: 6 values, qp: q1,p1,q2,p2[,T])")->required();
  integ->add_option("--alpha", io.alpha, "alpha0,alpha1,alpha2,alpha3")->required();
  integ->add_option("--from", io.from, "Start time (t for f, T for qp)");
  integ->add_option("--to", io.to, "End time")->required();
  integ->add_option("--rtol", io.rtol, "Relative tolerance")->capture_default_str();
  integ->add_option("--atol", io.atol, "Absolute tolerance")->capture_default_str();
  integ->add_option("--max-steps", io.max_steps, "Step attempt limit")->capture_default_str();
  integ->add_option("--stride", io.stride, "Also record at multiples of this stride")->capture_default_str();
  integ->add_option("--out", io.out, "Trajectory file (CSV); stdout when omitted");
  integ->add_flag("--cross-check", io.cross_check, "Compare against the other chart's flow");
  integ->add_flag("--relaxed", io.relaxed, "Allow unnormalized alpha");

  RelationsOptions ro;
  auto* rel = app.add_subcommand("relations", "Print the relation-order table of the reflections");
  rel->add_option("--chart", ro.chart, "f, qp or both")->capture_default_str();
  rel->add_option("--points", ro.points, "Sample points per relation")->capture_default_str();
  rel->add_option("--seed", ro.seed, "Random seed")->capture_default_str();
  rel->add_option("--bound", ro.bound, "Coefficient bound")->capture_default_str();
  rel->add_option("--max-order", ro.max_order, "Largest order searched")->capture_default_str();

  PlotOptions po;
  auto* plot = app.add_subcommand("plot", "Render trajectory columns to a static SVG chart");
  plot->add_option("--in", po.in, "Trajectory CSV from 'integrate'")->required();
  plot->add_option("--x", po.x, "Column for the horizontal axis")->required();
  plot->add_option("--y", po.y, "Comma-separated columns to draw")->required();
  plot->add_option("--out", po.out, "Output .svg file")->required();
  plot->add_option("--title", po.title, "Chart title");

  std::vector<const char*> argv{"a52"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  if (verify->parsed()) return cmd_verify(vo, out, err);
  if (orbit->parsed()) return cmd_orbit(oo, out, err);
  if (integ->parsed()) return cmd_integrate(io, out, err);
  if (rel->parsed()) return cmd_relations(ro, out, err);
  if (plot->parsed()) return cmd_plot(po, out, err);
  return exit_usage;
}

}  // namespace a52::cli
