#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfric/observables.hpp"

namespace qfric {

/// One numeric comparison inside an acceptance criterion.
struct Check {
  std::string name;
  std::string anchor;  // what the target is tied to
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string rule;  // how value, target and tolerance combine
  bool pass = false;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
  bool pass = false;
};

constexpr int n_criteria = 11;

/// Reference scenarios used by the acceptance suite.
Scenario rb_au_scenario(double v_m_per_s, double za_m = 5e-9);
Scenario li_na_scenario(double v_m_per_s, double za_m = 5e-9);

/// Runs criterion n (1..n_criteria).
CriterionResult run_criterion(int n);

/// Runs the listed criteria (all when empty), reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& which = {},
                                            const std::function<void(const CriterionResult&)>& on_done = {});

/// One line: "[PASS] 3 title: check summary".
std::string summary_line(const CriterionResult& r);
/// Multi-line report with every check's value, target and tolerance.
std::string detailed_report(const CriterionResult& r);

/// Compares a user-configured scenario against its NESS/backaction-on counterpart and
/// returns human-readable warnings when the configuration reproduces the equilibrium
/// (LTE-equivalent) behaviour.
std::vector<std::string> configuration_warnings(const Scenario& configured);

}  // namespace qfric
