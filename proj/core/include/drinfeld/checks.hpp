#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "drinfeld/lseries.hpp"
#include "drinfeld/ore.hpp"
#include "drinfeld/places.hpp"

namespace drinfeld {

// Randomized invariant suites of every module, runnable outside the unit
// tests (the `check` command and the acceptance run). Each suite draws its
// corpus from a generator seeded by (seed, suite name), so a run is
// reproducible suite by suite.
struct CheckOptions {
  std::uint64_t seed = 20240501;
  int workers = 1;
};

struct CheckOutcome {
  std::string name;
  std::string module;
  std::string statement;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  double seconds = 0;
  bool passed() const { return cases > 0 && failures == 0; }
};

struct CheckInfo {
  std::string name, module, statement;
};
// in run order
std::vector<CheckInfo> check_catalog();
// suites whose name or module equals `selector`; "all" selects everything.
// Throws std::invalid_argument when nothing matches.
std::vector<CheckOutcome> run_checks(std::string_view selector, const CheckOptions& opt = {});

struct EulerPlaceReport {
  Place place;
  KSeries local, dual;
  bool agree = false;
};
// local_factor against the dual-motive factor at every place of degree
// 1..max_degree
std::vector<EulerPlaceReport> check_euler(const DrinfeldModel& m, int max_degree);

}  // namespace drinfeld
