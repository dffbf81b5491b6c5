#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "resparse/errors.hpp"
#include "resparse/params.hpp"

using namespace resparse;

TEST_CASE("defaults match the documented constants") {
  Params p;
  CHECK(p.C_s == 4.0);
  CHECK(p.c_jl == 6.0);
  CHECK(p.jl_budget_frac == 0.5);
  CHECK(p.delta_frac == 0.125);
  CHECK(p.c_rho == 8.0);
  CHECK(p.c_scale == 1.0);
  CHECK(p.c_spine == 1.0);
  CHECK(p.c_kappa1 == 1.0);
  CHECK(p.c_kappa2 == 1.0);
  CHECK(p.c_qcap == 8.0);
  CHECK(p.c_power == 12.0);
  CHECK(p.c_pc_kappa == 0.0);
  CHECK(p.theta == 0.5);
  CHECK(p.spine_resparsify == 0.0);
  CHECK(p.target_density == 0.0);
  CHECK(p.threads == 1);
}

TEST_CASE("overrides land on the right fields") {
  Params p;
  p.apply_overrides({{"C_s", 9.0}, {"c_jl", 24.0}, {"threads", 4.0}, {"theta", 1.0}});
  CHECK(p.C_s == 9.0);
  CHECK(p.c_jl == 24.0);
  CHECK(p.threads == 4);
  CHECK(p.theta == 1.0);
  // untouched fields keep defaults
  CHECK(p.c_rho == 8.0);
}

TEST_CASE("unknown keys are rejected") {
  Params p;
  CHECK_THROWS_AS(p.apply_overrides({{"no_such_knob", 1.0}}), ConfigError);
}

TEST_CASE("value validation") {
  Params p;
  CHECK_THROWS_AS(p.apply_overrides({{"C_s", 0.0}}), ConfigError);
  CHECK_THROWS_AS(p.apply_overrides({{"C_s", -2.0}}), ConfigError);
  CHECK_THROWS_AS(p.apply_overrides({{"jl_budget_frac", 1.0}}), ConfigError);
  CHECK_THROWS_AS(p.apply_overrides({{"delta_frac", 0.0}}), ConfigError);
  CHECK_THROWS_AS(p.apply_overrides({{"theta", 1.5}}), ConfigError);
  CHECK_THROWS_AS(p.apply_overrides({{"threads", 0.0}}), ConfigError);
  CHECK_THROWS_AS(p.apply_overrides({{"threads", 2.5}}), ConfigError);
  // spine_resparsify and target_density accept zero (feature off)
  p.apply_overrides({{"spine_resparsify", 0.0}, {"target_density", 0.0}});
  CHECK(p.spine_resparsify == 0.0);
}

TEST_CASE("items() names exactly the overridable knobs, fixed order") {
  Params p;
  auto items = p.items();
  CHECK(items.size() == 18);
  CHECK(items.front().first == "C_s");
  std::set<std::string> seen;
  for (const auto& [name, value] : items) {
    CHECK(seen.insert(name).second);  // no duplicates
    Params q;
    // every reported knob must round-trip through apply_overrides
    if (name == "threads") {
      q.apply_overrides({{name, 2.0}});
    } else if (name == "theta" || name == "jl_budget_frac" || name == "delta_frac") {
      q.apply_overrides({{name, 0.5}});
    } else if (name == "spine_resparsify" || name == "target_density" ||
               name == "c_pc_kappa") {
      q.apply_overrides({{name, value}});
    } else {
      q.apply_overrides({{name, value}});
    }
  }
  // items() reflects current values
  Params r;
  r.apply_overrides({{"C_s", 11.0}});
  CHECK(r.items().front().second == 11.0);
}
