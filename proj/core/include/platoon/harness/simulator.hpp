#pragma once

#include "platoon/harness/run_log.hpp"
#include "platoon/harness/scenario.hpp"

namespace platoon {

struct RunOptions {
  // Runs the per-truck sense/perceive stage on three worker threads. All
  // randomness is keyed per truck and per purpose, so the result is
  // bit-identical to the sequential loop.
  bool parallel_sensing = false;
};

// Executes one scenario tick by tick:
//   sensors -> fault injection -> perception -> comms -> safety -> control
//   -> plant -> log.
// The camera runs on its own period; the last lane estimate holds between
// frames. A collision (ground-truth gap <= 0) or jackknife stops the run
// early with an explanatory event; the partial log is still returned.
RunLog run_scenario(const ScenarioSpec& spec, const RunOptions& opts = {});

}  // namespace platoon
