#pragma once

// Continuous-state cellular automata optimizer: evolution rules, elitist
// neighborhood main loop, benchmark/engineering/identification problem
// suites, and the experiment statistics pipeline.

#include "ccaa/benchmarks.hpp"
#include "ccaa/core.hpp"
#include "ccaa/engineering.hpp"
#include "ccaa/experiment.hpp"
#include "ccaa/iir.hpp"
#include "ccaa/optimizer.hpp"
#include "ccaa/rng.hpp"
#include "ccaa/rules.hpp"
#include "ccaa/stats.hpp"
