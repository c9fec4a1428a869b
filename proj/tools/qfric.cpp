#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfric/config.hpp"
#include "qfric/constants.hpp"
#include "qfric/errors.hpp"
#include "qfric/greens.hpp"
#include "qfric/sweep.hpp"
#include "qfric/verify.hpp"

using namespace qfric;

namespace {

struct ConfigArgs {
  std::string file;
  std::string preset;
  std::vector<std::string> overrides;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("-c,--config", args.file, "Flat key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("-p,--preset", args.preset, "Start from a named preset (rb-au-fig2, li-na)");
  cmd->add_option("overrides", args.overrides, "key=value overrides, applied last");
}

// preset, then file, then command-line overrides
KeyValueConfig assemble(const ConfigArgs& args, const std::string& fallback_preset) {
  KeyValueConfig cfg;
  const std::string name = !args.preset.empty() ? args.preset : (args.file.empty() ? fallback_preset : "");
  if (!name.empty()) cfg = preset(name);
  if (!args.file.empty()) cfg.merge(KeyValueConfig::load(args.file));
  for (const std::string& o : args.overrides) cfg.apply_override(o);
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string num(double x) { return format_number(x); }

int cmd_sweep(const ConfigArgs& args, const std::string& output_flag, bool quiet) {
  KeyValueConfig cfg = assemble(args, "rb-au-fig2");
  SweepConfig sc = build_sweep(cfg);
  if (!output_flag.empty()) sc.output = output_flag;
  for (const std::string& w : configuration_warnings(sc.base)) std::cerr << "warning: " << w << "\n";
  const SweepSummary sum = run_sweep(sc, [&](std::size_t done, std::size_t total) {
    if (!quiet) std::cerr << "\r" << done << "/" << total << " points" << std::flush;
  });
  if (!quiet) std::cerr << "\n";
  write_text(sc.output, write_csv(sum.rows));
  for (const std::string& m : sum.messages) std::cerr << "flagged: " << m << "\n";
  if (!quiet) std::fprintf(stderr, "%zu points, %zu flagged, %.1f s\n", sum.rows.size(), sum.n_flagged, sum.seconds);
  return sum.n_flagged ? 3 : 0;
}

int cmd_verify(const ConfigArgs& args, const std::vector<int>& which, bool detail) {
  if (!args.file.empty() || !args.preset.empty() || !args.overrides.empty()) {
    const Scenario s = build_scenario(assemble(args, "rb-au-fig2"));
    for (const std::string& w : configuration_warnings(s)) std::cerr << "warning: " << w << "\n";
  }
  std::size_t failed = 0;
  run_acceptance(which, [&](const CriterionResult& r) {
    std::cout << (detail ? detailed_report(r) : summary_line(r) + "\n") << std::flush;
    failed += !r.pass;
  });
  return failed ? 1 : 0;
}

int cmd_oracle(const ConfigArgs& args) {
  const LowVelocityCoefficients c = lowv_coefficients();
  const double pi3 = std::pow(constants::pi, 3);
  std::printf("low-velocity coefficients (hbar = alpha0 = rho = v = 2za = 1)\n");
  std::printf("  translational  numeric % .10f  closed form % .10f  rel.diff %.2e\n", c.translational,
              -63.0 / pi3, std::abs(c.translational * pi3 / -63.0 - 1.0));
  std::printf("  rotational     numeric % .10f  closed form % .10f  rel.diff %.2e\n", c.rotational, 45.0 / pi3,
              std::abs(c.rotational * pi3 / 45.0 - 1.0));

  const Scenario s = build_scenario(assemble(args, "rb-au-fig2"));
  const ObservableResult full = evaluate(s);
  const ObservableResult asym = evaluate_asymptotic(s);
  std::printf("scenario v = %s m/s, za = %s m, mode %s\n", num(s.v).c_str(), num(s.za).c_str(),
              mode_label(s.mode, s.backaction).c_str());
  std::printf("  %-8s %16s %16s %10s\n", "", "full", "asymptotic", "ratio");
  auto row = [](const char* name, double a, double b) {
    std::printf("  %-8s %16s %16s %10.5f\n", name, num(a).c_str(), num(b).c_str(), a / b);
  };
  row("F_t", full.F_t, asym.F_t);
  row("F_r", full.F_r, asym.F_r);
  row("F_total", full.F_total, asym.F_total);
  row("a", full.a, asym.a);
  row("Omega", full.Omega, asym.Omega);
  std::printf("  converged %s, max quadrature error %.2e\n", full.converged ? "yes" : "no", full.max_quad_err());
  return 0;
}

std::vector<double> omega_grid(double lo_ev, double hi_ev, int points, bool log) {
  if (points < 1) throw std::invalid_argument("--points must be at least 1");
  if (log && !(lo_ev > 0.0 && hi_ev > 0.0)) throw std::invalid_argument("log spacing needs positive bounds");
  std::vector<double> w;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    w.push_back((log ? lo_ev * std::pow(hi_ev / lo_ev, t) : lo_ev + (hi_ev - lo_ev) * t) *
                constants::ev_to_rad_per_s);
  }
  return w;
}

int cmd_dump_spectrum(const ConfigArgs& args, const std::vector<double>& omegas, const std::string& output,
                      const std::string& k_output) {
  const Scenario s = build_scenario(assemble(args, "rb-au-fig2"));
  const SpectrumModel model = s.spectrum_model(s.tol.inner);
  std::string text = "omega_rad_per_s,S_xx,S_yy,S_zz,Re_S_xz,Im_S_xz,trace_S_Ly,quad_err\n";
  std::string ktext = "omega_rad_per_s,v_m_per_s,Re_K_xx,Im_K_xx,Re_K_yy,Im_K_yy,Re_K_zz,Im_K_zz,Re_K_xz,Im_K_xz,rel_err\n";
  const M3C Ly = generator(Axis::y);
  for (double w : omegas) {
    const SpectrumEval e = model.spectrum(w);
    const M3C& S = e.S;
    text += num(w) + "," + num(S(0, 0).real()) + "," + num(S(1, 1).real()) + "," + num(S(2, 2).real()) + "," +
            num(S(0, 2).real()) + "," + num(S(0, 2).imag()) + "," + num(trace_product(S, Ly).real()) + "," +
            num(e.quad_err) + "\n";
    if (!k_output.empty()) {
      const KIntegral k = model.k_integral(w);
      const M3C& K = k.value;
      ktext += num(w) + "," + num(model.v()) + "," + num(K(0, 0).real()) + "," + num(K(0, 0).imag()) + "," +
               num(K(1, 1).real()) + "," + num(K(1, 1).imag()) + "," + num(K(2, 2).real()) + "," +
               num(K(2, 2).imag()) + "," + num(K(0, 2).real()) + "," + num(K(0, 2).imag()) + "," +
               num(k.rel_err) + "\n";
    }
  }
  write_text(output, text);
  if (!k_output.empty()) write_text(k_output, ktext);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum friction and rotation of an atom moving above a surface"};
  app.require_subcommand(1);

  ConfigArgs sweep_args, verify_args, oracle_args, dump_args;
  std::string sweep_output;
  bool quiet = false;
  auto* sweep = app.add_subcommand("sweep", "Evaluate forces, acceleration and spin over a velocity or distance sweep");
  add_config_options(sweep, sweep_args);
  sweep->add_option("-o,--output", sweep_output, "CSV output path (overrides sweep.output; '-' for stdout)");
  sweep->add_flag("-q,--quiet", quiet, "No progress output");

  std::vector<int> criteria;
  bool detail = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria, one pass/fail line each");
  add_config_options(verify, verify_args);
  verify->add_option("-n,--criterion", criteria, "Criterion number(s) to run (default: all)")
      ->check(CLI::Range(1, n_criteria));
  verify->add_flag("-d,--detail", detail, "Print every check with value, target and tolerance");

  auto* oracle = app.add_subcommand("oracle", "Compare the full pipeline with the closed-form low-velocity limits");
  add_config_options(oracle, oracle_args);

  double w_lo = 0.1, w_hi = 3.0;
  int points = 200;
  std::string spacing = "linear", dump_output, dump_k;
  auto* dump = app.add_subcommand("dump-spectrum", "Tabulate the dipole power spectrum S(omega) at the configured v");
  add_config_options(dump, dump_args);
  dump->add_option("--omega-min", w_lo, "Lowest frequency [eV] (may be negative)")->capture_default_str();
  dump->add_option("--omega-max", w_hi, "Highest frequency [eV]")->capture_default_str();
  dump->add_option("--points", points, "Number of frequencies")->capture_default_str();
  dump->add_option("--spacing", spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  dump->add_option("-o,--output", dump_output, "CSV output path (default stdout)");
  dump->add_option("--dump-k", dump_k, "Also write the surface response K(omega, v) on the same grid to this CSV");

  auto* keys = app.add_subcommand("config-keys", "Print the configuration key reference (markdown)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return cmd_sweep(sweep_args, sweep_output, quiet);
    if (*verify) return cmd_verify(verify_args, criteria, detail);
    if (*oracle) return cmd_oracle(oracle_args);
    if (*dump) return cmd_dump_spectrum(dump_args, omega_grid(w_lo, w_hi, points, spacing == "log"), dump_output, dump_k);
    if (*keys) {
      std::cout << config_reference();
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
