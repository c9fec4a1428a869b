#include "qfric/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace qfric {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double parse_field(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return d;
}

}  // namespace

bool OutputRow::flagged() const { return provenance.find(':') != std::string::npos; }

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"v_m_per_s", "za_m",    "F_t_N",      "F_r_N",
                                                "F_total_N", "a_m_per_s2", "Omega_rad_per_s", "L_y_Js",
                                                "mode",      "provenance", "max_quad_err"};
  return cols;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", x);
  return buf;
}

std::string write_csv(const std::vector<OutputRow>& rows) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const OutputRow& r : rows) {
    for (double x : {r.v, r.za, r.F_t, r.F_r, r.F_total, r.a, r.Omega, r.L_y}) out += format_number(x) + ",";
    out += r.mode + "," + r.provenance + "," + format_number(r.max_quad_err) + "\n";
  }
  return out;
}

std::vector<OutputRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<OutputRow> rows;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  std::string expected;
  for (const auto& c : csv_columns()) expected += (expected.empty() ? "" : ",") + c;
  if (line != expected) throw std::invalid_argument("csv: unexpected header '" + line + "'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != csv_columns().size())
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(csv_columns().size()) + " fields");
    OutputRow r;
    double* num[] = {&r.v, &r.za, &r.F_t, &r.F_r, &r.F_total, &r.a, &r.Omega, &r.L_y};
    for (std::size_t i = 0; i < 8; ++i) *num[i] = parse_field(f[i], lineno);
    r.mode = f[8];
    r.provenance = f[9];
    r.max_quad_err = parse_field(f[10], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string mode_label(SolverMode mode, Backaction backaction) {
  std::string m = mode == SolverMode::ness ? "ness" : "lte";
  if (backaction == Backaction::off) m += "-nobackaction";
  return m;
}

OutputRow evaluate_row(const Scenario& s, Provenance provenance, bool with_spin, std::string* error) {
  OutputRow row;
  row.v = s.v;
  row.za = s.za;
  row.mode = mode_label(s.mode, s.backaction);
  row.provenance = to_string(provenance);
  try {
    const ObservableResult o = provenance == Provenance::full ? evaluate(s, with_spin) : evaluate_asymptotic(s);
    row.F_t = o.F_t;
    row.F_r = o.F_r;
    row.F_total = o.F_total;
    row.a = o.a;
    row.Omega = o.Omega;
    row.L_y = o.L_vec[1];
    row.max_quad_err = o.max_quad_err();
    if (!o.converged) row.provenance += ":unconverged";
  } catch (const std::exception& e) {
    row.F_t = row.F_r = row.F_total = row.a = row.Omega = row.L_y = row.max_quad_err = nan;
    row.provenance = to_string(provenance) + ":failed";
    if (error) *error = e.what();
  }
  return row;
}

SweepSummary run_sweep(const SweepConfig& cfg, std::function<void(std::size_t, std::size_t)> progress) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = cfg.values.size();
  SweepSummary out;
  out.rows.resize(n);
  std::vector<std::string> errors(n);

  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      out.rows[i] = evaluate_row(cfg.point(i), cfg.provenance, cfg.with_spin, &errors[i]);
      std::lock_guard<std::mutex> lock(mu);
      ++done;
      if (progress) progress(done, n);
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (!out.rows[i].flagged()) continue;
    ++out.n_flagged;
    std::string msg = "point " + std::to_string(i) + " (v=" + format_number(out.rows[i].v) +
                      " m/s, za=" + format_number(out.rows[i].za) + " m): " + out.rows[i].provenance;
    if (!errors[i].empty()) msg += ": " + errors[i];
    out.messages.push_back(std::move(msg));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace qfric
