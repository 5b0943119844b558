#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "camr/analysis.hpp"
#include "camr/design.hpp"
#include "camr/jobs.hpp"
#include "camr/placement.hpp"
#include "camr/shuffle.hpp"

namespace camr {

// Default aggregate width: the smallest byte count that both the group
// exchanges (k - 1 packets) and whole machine words (8 bytes) divide.
int default_value_bytes(int k);

struct SimConfig {
  int q = 2;
  int k = 3;
  int gamma = 2;
  int value_bytes = 0;  // 0 picks default_value_bytes(k)
  std::uint64_t seed = 0;
  ShuffleMode mode = ShuffleMode::Coded;
  long long point_ceiling = DesignParams{}.point_ceiling;
};

struct SimResult {
  ResolvableDesign design;
  PlacementPlan plan;
  std::vector<JobSpec> corpus;
  std::vector<TransmissionRecord> log;
  std::map<std::pair<int, JobId>, AggregateValue> reduced;
  LoadReport report;
};

// The whole pipeline: design, place, generate, map, shuffle, reduce, then
// check the outputs against the centralized oracle and the measured loads
// against the closed forms. Throws if measured diverges from analytic;
// report.correct records the byte comparison against the oracle.
SimResult run_simulation(const SimConfig& config);

}  // namespace camr
