#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace resparse {

// Tunable constants. Defaults are the theory-faithful values; every knob is
// overridable from the CLI via --set key=value. Unknown keys are rejected.
struct Params {
  double C_s = 4.0;        // sample-count constant in q = C_s * t * ln(t) / eps^2
  double c_jl = 6.0;       // sketch rows k = ceil(c_jl * ln(n) / eps_jl^2)
  double jl_budget_frac = 0.5;   // eps_jl = frac * eps
  double delta_frac = 0.125;     // solver delta = frac * eps
  double c_rho = 8.0;      // uniform-sampling rho = c_rho * ln(n)
  double c_scale = 1.0;    // tree scale S = ceil(c_scale * log2(n)^2)
  double c_spine = 1.0;    // spine kappa = ceil(c_spine * st * log2(n) / m)
  double c_kappa1 = 1.0;   // kappa_1 = ceil(c_kappa1 * log2(n)^5)
  double c_kappa2 = 1.0;   // kappa_2 = ceil(c_kappa2 * log2(n)^3)
  double c_qcap = 8.0;     // saturation cap q_cap = m * (c_qcap + ln m)
  double c_power = 12.0;   // inverse-power iteration cap multiplier
  double c_pc_kappa = 0.0; // pcg-incremental kappa; 0 = max(4, log2(n)^2)
  double theta = 0.5;      // solver lambda_2 guard factor
  double akpw_beta_c = 2.0;      // ball-growing beta = 1 / (c * ln m)
  double akpw_class_ratio = 4.0; // weight-class ratio between rounds
  double spine_resparsify = 0.0; // nonzero: re-sparsify after spine sampling
  double target_density = 0.0;   // cut sparsifier: override keep probability
  int threads = 1;               // sketch row solves; result is thread-count invariant

  // Applies overrides; throws ConfigError on unknown keys or bad values.
  void apply_overrides(const std::map<std::string, double>& kv);

  // Every constant in a fixed order, for reports ("effective constants").
  std::vector<std::pair<std::string, double>> items() const;
};

}  // namespace resparse
