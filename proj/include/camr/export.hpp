#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "camr/analysis.hpp"
#include "camr/design.hpp"
#include "camr/jobs.hpp"
#include "camr/placement.hpp"
#include "camr/shuffle.hpp"

namespace camr {

// Insertion-ordered so dumps read in declaration order and stay byte-stable.
using Json = nlohmann::ordered_json;

Json design_to_json(const ResolvableDesign& design);
Json placement_to_json(const PlacementPlan& plan);
Json report_to_json(const LoadReport& report);

// One line per record: {stage, kind, sender, receivers, bits, meta}, where
// meta carries the job for per-job stages and the group for stage 2.
std::string log_to_jsonl(const std::vector<TransmissionRecord>& log);

// One line per (job, subfile): payload hash plus per-function counts.
std::string corpus_to_jsonl(const std::vector<JobSpec>& corpus);

}  // namespace camr
