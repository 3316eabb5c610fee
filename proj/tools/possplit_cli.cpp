// Command-line driver: weight tables, single integrations, convergence
// studies, and decay monitoring. All file outputs are written atomically
// and with 17-significant-digit floats, so identical invocations produce
// byte-identical files. POSSPLIT_THREADS caps the worker count (0 runs
// sequentially).

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "possplit/benchmarks.hpp"
#include "possplit/possplit.hpp"

using namespace possplit;

namespace {

struct Options {
  std::string variant = "sym";
  std::string sign = "plus";
  std::string format = "rational";
  std::string problem;
  std::string u0;
  std::string out;
  std::string final_state;
  int order = 4;
  std::vector<int> orders;
  double h = 0.1;
  std::vector<double> h_grid;
  double T = 1.0;
  double rate = 1.0;
  bool parallel = false;
  int eta = 0;  // 0: problem default
  // problem parameters, keyed as in the papers
  double omega0 = 1.0;
  double omega1 = 0.5;
  double L = 4 * pi;
  double beta = 0.25;
  double lambda = 1.0;
  int nu0 = 4;
  double r0 = 1.0;
  double theta0 = 0.0;
};

ChainSign parse_sign(const Options& opt) {
  if (opt.sign == "plus") return ChainSign::Plus;
  if (opt.sign == "minus") return ChainSign::Minus;
  throw UsageError("--sign must be plus or minus");
}

Variant parse_variant(const Options& opt) {
  if (opt.variant == "sym") return Variant::Symmetric;
  if (opt.variant == "asym")
    return parse_sign(opt) == ChainSign::Plus ? Variant::AsymmetricPlus
                                              : Variant::AsymmetricMinus;
  throw UsageError("--variant must be sym or asym");
}

SchemeSpec scheme_from(const Options& opt, int order) {
  return scheme_for(parse_variant(opt), order, parse_sign(opt));
}

LambdaOmegaParams rd_params(const Options& opt) {
  LambdaOmegaParams p;
  p.omega0 = opt.omega0;
  p.omega1 = opt.omega1;
  p.period = opt.L;
  p.eta = opt.eta > 0 ? opt.eta : 63;
  p.theta0 = opt.theta0;
  return p;
}

SchrodingerPoissonParams sp_params(const Options& opt) {
  SchrodingerPoissonParams p;
  p.beta = opt.beta;
  p.lambda = opt.lambda;
  p.eta = opt.eta > 0 ? opt.eta : 31;
  p.nu0 = opt.nu0;
  p.r0 = opt.r0;
  p.theta0 = opt.theta0;
  p.validate();
  return p;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    atomic_write(out_path, content);
}

int run_coeffs(const Options& opt) {
  const SchemeSpec spec = scheme_from(opt, opt.order);
  std::string out;
  for (int m = 1; m <= spec.chains; ++m) {
    out += std::to_string(m);
    out += '\t';
    if (opt.format == "rational") {
      out += spec.gamma[m - 1].str();
    } else if (opt.format == "decimal") {
      out += fmt17(to_double(spec.gamma[m - 1]));
    } else {
      throw UsageError("--format must be rational or decimal");
    }
    out += '\n';
  }
  emit(opt.out, out);
  return 0;
}

GridFunction named_datum(const std::string& name, const std::string& problem,
                         const Options& opt) {
  if (problem == "lambdaomega") {
    const auto p = rd_params(opt);
    if (name.empty() || name == "planar") return exact_planar_wave(p, 0.0);
    if (name == "perturbed") return perturbed_rd_datum(p);
    throw UsageError("--u0 for lambdaomega must be planar or perturbed");
  }
  const auto p = sp_params(opt);
  if (name.empty() || name == "monokinetic") return exact_monokinetic(p, 0.0);
  if (name == "constant") return exact_constant(p, 0.0);
  if (name == "odd") return sp_odd_datum(p.grid());
  if (name == "even") return sp_even_datum(p.grid());
  throw UsageError("--u0 for schrodpoisson must be monokinetic, constant, odd or even");
}

FlowPair<GridFunction> grid_flows(const std::string& problem, const Options& opt) {
  if (problem == "lambdaomega") return lambdaomega_flows(rd_params(opt));
  return sp_flows(sp_params(opt));
}

template <StateLike S>
int finish_trajectory(const Trajectory<S>& traj) {
  if (traj.failed_at) {
    std::cerr << "numeric failure at step " << *traj.failed_at << "\n";
    return 2;
  }
  return 0;
}

int run_integrate(const Options& opt) {
  const std::size_t n_steps = checked_step_count(opt.T, opt.h);
  if (opt.problem == "tanrot") {
    TanRotParams p;
    if (!opt.u0.empty()) {
      std::istringstream in(opt.u0);
      double a = 0, b = 0;
      char comma = 0;
      if (!(in >> a >> comma >> b) || comma != ',')
        throw UsageError("--u0 for tanrot must be two comma-separated numbers");
      p.initial = RealVec{a, b};
    }
    const auto method = make_method(scheme_from(opt, opt.order), tanrot_flows(p), opt.parallel);
    const auto traj = integrate(method, p.initial, opt.h, n_steps);
    std::string csv = "t,u1,u2\n";
    for (std::size_t n = 0; n < traj.states.size(); ++n)
      csv += fmt17(traj.times[n]) + "," + fmt17(traj.states[n][0]) + "," +
             fmt17(traj.states[n][1]) + "\n";
    emit(opt.out, csv);
    return finish_trajectory(traj);
  }
  if (opt.problem == "lambdaomega" || opt.problem == "schrodpoisson") {
    const auto method =
        make_method(scheme_from(opt, opt.order), grid_flows(opt.problem, opt), opt.parallel);
    const GridFunction u0 = named_datum(opt.u0, opt.problem, opt);
    const auto traj = integrate(method, u0, opt.h, n_steps);
    std::string csv = "t,l2norm\n";
    for (std::size_t n = 0; n < traj.times.size(); ++n)
      csv += fmt17(traj.times[n]) + "," + fmt17(traj.norms[n]) + "\n";
    emit(opt.out, csv);
    if (!opt.final_state.empty()) atomic_write(opt.final_state, grid_csv(traj.back()));
    return finish_trajectory(traj);
  }
  throw UsageError("--problem must be tanrot, lambdaomega or schrodpoisson");
}

int run_converge(const Options& opt) {
  const Variant variant = parse_variant(opt);
  const ChainSign sign = parse_sign(opt);
  std::vector<int> orders = opt.orders;
  if (orders.empty()) orders = {4, 6, 8};

  std::vector<ConvergenceReport> reports;
  if (opt.problem == "tanrot") {
    std::vector<double> hs = opt.h_grid.empty() ? tanrot_default_h_grid() : opt.h_grid;
    const double h_fine = *std::min_element(hs.begin(), hs.end()) / 100.0;
    const auto prob = tanrot_benchmark(TanRotParams{}, h_fine, opt.T);
    reports = convergence_study<RealVec>(prob, variant, orders, hs, opt.T, opt.parallel, sign);
  } else if (opt.problem == "lambdaomega") {
    std::vector<double> hs = opt.h_grid.empty() ? rd_default_h_grid() : opt.h_grid;
    const auto prob = rd_benchmark(rd_params(opt));
    reports = convergence_study<GridFunction>(prob, variant, orders, hs, opt.T, opt.parallel, sign);
  } else if (opt.problem == "schrodpoisson") {
    std::vector<double> hs = opt.h_grid.empty() ? sp_default_h_grid() : opt.h_grid;
    const auto prob = sp_benchmark(sp_params(opt));
    reports = convergence_study<GridFunction>(prob, variant, orders, hs, opt.T, opt.parallel, sign);
  } else {
    throw UsageError("--problem must be tanrot, lambdaomega or schrodpoisson");
  }

  const std::string out = opt.out.empty() ? "study.csv" : opt.out;
  const std::string stem = out.size() > 4 && out.substr(out.size() - 4) == ".csv"
                               ? out.substr(0, out.size() - 4)
                               : out;
  atomic_write(out, study_csv(reports));
  atomic_write(stem + "_report.csv", report_csv(reports));
  atomic_write(stem + ".gp", study_gnuplot(out, reports));
  std::cout << report_csv(reports);
  return 0;
}

int run_decay(const Options& opt) {
  if (!opt.problem.empty() && opt.problem != "schrodpoisson")
    throw UsageError("decay monitoring is defined for the schrodpoisson problem");
  Options local = opt;
  if (local.eta == 0) local.eta = 255;
  const auto p = sp_params(local);
  const std::string datum = opt.u0.empty() ? "odd" : opt.u0;
  const GridFunction u0 = named_datum(datum, "schrodpoisson", local);
  const auto method = make_method(scheme_from(opt, opt.order), sp_flows(p), opt.parallel);
  const auto traj = integrate(method, u0, opt.h, checked_step_count(opt.T, opt.h));
  const auto violations = decay_monitor(traj, opt.rate);

  std::string csv = "n,t,norm,bound\n";
  const double n0 = traj.norms[0];
  for (std::size_t n = 0; n < traj.times.size(); ++n)
    csv += std::to_string(n) + "," + fmt17(traj.times[n]) + "," + fmt17(traj.norms[n]) + "," +
           fmt17(std::exp(-opt.rate * traj.times[n]) * n0 * (1.0 + 1e-6)) + "\n";
  emit(opt.out, csv);
  std::cout << "violations: " << violations.size() << "\n";
  if (const int rc = finish_trajectory(traj); rc != 0) return rc;
  return violations.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive-step affine splitting integrators"};
  app.set_help_flag("--help", "print help");  // frees -h/--h for the step size
  app.require_subcommand(1);
  Options opt;

  auto add_scheme_flags = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--variant", opt.variant, "sym or asym")
        ->check(CLI::IsMember({"sym", "asym"}));
    cmd->add_option("--sign", opt.sign, "Lie step composition order for asym chains")
        ->check(CLI::IsMember({"plus", "minus"}));
    cmd->set_config("--config", "", "key = value file; flags override it");
  };
  auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--problem", opt.problem, "tanrot, lambdaomega or schrodpoisson")
        ->required();
    cmd->add_option("--eta", opt.eta, "grid points (odd); 0 = problem default");
    cmd->add_option("--omega0", opt.omega0, "RD rotation frequency");
    cmd->add_option("--omega1", opt.omega1, "RD amplitude-dependent frequency");
    cmd->add_option("--L", opt.L, "RD spatial period");
    cmd->add_option("--beta", opt.beta, "SP fractional dissipation exponent");
    cmd->add_option("--lambda", opt.lambda, "SP Poisson kernel parameter");
    cmd->add_option("--nu0", opt.nu0, "SP monokinetic mode");
    cmd->add_option("--r0", opt.r0, "SP monokinetic amplitude");
    cmd->add_option("--theta0", opt.theta0, "initial phase");
    cmd->add_option("--parallel", opt.parallel, "evaluate chains (or runs) concurrently")
        ->expected(0)
        ->default_val(false);
    cmd->add_option("--out", opt.out, "output file (stdout if omitted)");
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "print extrapolation weights");
  add_scheme_flags(coeffs);
  coeffs->add_option("--order", opt.order, "method order q")->required();
  coeffs->add_option("--format", opt.format, "rational or decimal")
      ->check(CLI::IsMember({"rational", "decimal"}));
  coeffs->add_option("--out", opt.out, "output file (stdout if omitted)");

  CLI::App* integrate_cmd = app.add_subcommand("integrate", "run one trajectory");
  add_scheme_flags(integrate_cmd);
  add_problem_flags(integrate_cmd);
  integrate_cmd->add_option("--order", opt.order, "method order q");
  integrate_cmd->add_option("--h", opt.h, "time step")->required();
  integrate_cmd->add_option("--T", opt.T, "final time")->required();
  integrate_cmd->add_option("--u0", opt.u0,
                            "initial state: tanrot 'a,b'; lambdaomega planar|perturbed; "
                            "schrodpoisson monokinetic|constant|odd|even");
  integrate_cmd->add_option("--final-state", opt.final_state,
                            "also write the final grid function as x,re,im rows");

  CLI::App* converge = app.add_subcommand("converge", "convergence study over orders and steps");
  add_scheme_flags(converge);
  add_problem_flags(converge);
  converge->add_option("--orders", opt.orders, "orders to run")->delimiter(',');
  converge->add_option("--h-grid", opt.h_grid, "step sizes")->delimiter(',');
  converge->add_option("--T", opt.T, "final time")->required();

  CLI::App* decay = app.add_subcommand("decay", "check a decay envelope on an SP run");
  add_scheme_flags(decay);
  decay->add_option("--problem", opt.problem, "schrodpoisson");
  decay->add_option("--order", opt.order, "method order q")->default_val(8);
  decay->add_option("--h", opt.h, "time step")->default_val(0.1);
  decay->add_option("--T", opt.T, "final time")->default_val(10.0);
  decay->add_option("--eta", opt.eta, "grid points (odd)");
  decay->add_option("--rate", opt.rate, "envelope rate: |U_n| <= e^{-rate t} |U_0|");
  decay->add_option("--u0", opt.u0, "odd, even, monokinetic or constant");
  decay->add_option("--beta", opt.beta, "SP fractional dissipation exponent");
  decay->add_option("--lambda", opt.lambda, "SP Poisson kernel parameter");
  decay->add_option("--nu0", opt.nu0, "SP monokinetic mode");
  decay->add_option("--r0", opt.r0, "SP monokinetic amplitude");
  decay->add_option("--theta0", opt.theta0, "initial phase");
  decay->add_option("--parallel", opt.parallel, "evaluate chains concurrently")
      ->expected(0)
      ->default_val(false);
  decay->add_option("--out", opt.out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(coeffs)) return run_coeffs(opt);
    if (app.got_subcommand(integrate_cmd)) return run_integrate(opt);
    if (app.got_subcommand(converge)) return run_converge(opt);
    return run_decay(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}
