#include "resparse/params.hpp"

#include <cmath>

#include "resparse/errors.hpp"

namespace resparse {

void Params::apply_overrides(const std::map<std::string, double>& kv) {
  // Stage into a copy first so a rejected override leaves *this untouched.
  Params next = *this;
  for (const auto& [key, value] : kv) {
    if (!std::isfinite(value)) throw ConfigError("constant '" + key + "' must be finite");
    if (key == "C_s") next.C_s = value;
    else if (key == "c_jl") next.c_jl = value;
    else if (key == "jl_budget_frac") next.jl_budget_frac = value;
    else if (key == "delta_frac") next.delta_frac = value;
    else if (key == "c_rho") next.c_rho = value;
    else if (key == "c_scale") next.c_scale = value;
    else if (key == "c_spine") next.c_spine = value;
    else if (key == "c_kappa1") next.c_kappa1 = value;
    else if (key == "c_kappa2") next.c_kappa2 = value;
    else if (key == "c_qcap") next.c_qcap = value;
    else if (key == "c_power") next.c_power = value;
    else if (key == "c_pc_kappa") next.c_pc_kappa = value;
    else if (key == "theta") next.theta = value;
    else if (key == "akpw_beta_c") next.akpw_beta_c = value;
    else if (key == "akpw_class_ratio") next.akpw_class_ratio = value;
    else if (key == "spine_resparsify") next.spine_resparsify = value;
    else if (key == "target_density") next.target_density = value;
    else if (key == "threads") {
      if (value != std::floor(value)) throw ConfigError("threads must be an integer");
      next.threads = static_cast<int>(value);
    }
    else throw ConfigError("unknown constant '" + key + "'");
  }
  if (next.C_s <= 0 || next.c_jl <= 0 || next.c_rho <= 0 || next.c_scale <= 0 ||
      next.c_qcap <= 0 || next.c_power <= 0) {
    throw ConfigError("positive constant required");
  }
  if (next.jl_budget_frac <= 0 || next.jl_budget_frac >= 1 || next.delta_frac <= 0 ||
      next.delta_frac >= 1) {
    throw ConfigError("budget fractions must lie in (0, 1)");
  }
  if (next.theta <= 0 || next.theta > 1) throw ConfigError("theta must lie in (0, 1]");
  if (next.threads < 1) throw ConfigError("threads must be at least 1");
  *this = next;
}

std::vector<std::pair<std::string, double>> Params::items() const {
  return {
      {"C_s", C_s},
      {"c_jl", c_jl},
      {"jl_budget_frac", jl_budget_frac},
      {"delta_frac", delta_frac},
      {"c_rho", c_rho},
      {"c_scale", c_scale},
      {"c_spine", c_spine},
      {"c_kappa1", c_kappa1},
      {"c_kappa2", c_kappa2},
      {"c_qcap", c_qcap},
      {"c_power", c_power},
      {"c_pc_kappa", c_pc_kappa},
      {"theta", theta},
      {"akpw_beta_c", akpw_beta_c},
      {"akpw_class_ratio", akpw_class_ratio},
      {"spine_resparsify", spine_resparsify},
      {"target_density", target_density},
      {"threads", static_cast<double>(threads)},
  };
}

}  // namespace resparse
