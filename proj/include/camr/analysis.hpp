#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camr/rational.hpp"
#include "camr/shuffle.hpp"

namespace camr {

// Normalized communication loads of a three-stage shuffle: payload bits on
// the wire divided by J * Q * 8 * B.
struct StageLoads {
  Rational stage1, stage2, stage3;
  Rational total() const { return stage1 + stage2 + stage3; }
};

// Closed forms for the coded shuffle on the (q, k) design with K = k q:
//   stage 1: k / (K (k - 1))
//   stage 2: (q - 1) k / (K (k - 1))
//   stage 3: (q - 1) / q
// summing to (k (q - 1) + 1) / (q (k - 1)).
StageLoads camr_loads(int q, int k);

// Per-stage loads when stages 1 and 2 unicast every chunk whole instead of
// exchanging XORs; stage 3 is unchanged: k/K, (q-1)/q, (q-1)/q.
StageLoads uncoded_baseline_stage_loads(int q, int k);

// Total of the uncoded variant: k/K + 2 (q - 1)/q.
Rational uncoded_baseline_load(int q, int k);

// Load of the generic coded distributed-computing scheme at storage fraction
// mu on K servers: (1 - mu) (mu K + 1) / (mu K). Requires mu K integral in
// 1..K-1. At mu = (k - 1)/K it matches the coded shuffle's total.
Rational ccdc_load(const Rational& mu, int K);

// Fewest jobs at which each scheme reaches its load on K = k q servers:
// q^(k-1) for the design here versus C(K, k) for the generic scheme.
struct JobCounts {
  BigInt camr;
  BigInt ccdc_min;
};
JobCounts min_jobs(int q, int k);

// Loads measured from a transmission log, with the raw per-stage bit totals.
struct MeasuredLoads {
  std::int64_t bits1 = 0, bits2 = 0, bits3 = 0;
  StageLoads loads;
};
MeasuredLoads measure_loads(const std::vector<TransmissionRecord>& log,
                            long long jobs, int funcs, int value_bytes);

// Fails loudly on the first stage whose measured load differs from the
// closed form. Exact rational comparison, no tolerance.
void reconcile(const StageLoads& measured, const StageLoads& analytic);

// Everything one simulation reports.
struct LoadReport {
  int q = 0, k = 0, gamma = 0, value_bytes = 0;
  std::uint64_t seed = 0;
  int K = 0;
  long long J = 0;
  int N = 0;
  std::string scheme;  // "coded" or "uncoded"
  Rational mu;
  MeasuredLoads measured;
  StageLoads analytic;
  Rational ccdc;
  Rational baseline;
  BigInt j_camr;
  BigInt j_ccdc_min;
  bool correct = false;
};

std::string report_text(const LoadReport& report);
std::string report_csv_header();
std::string report_csv_row(const LoadReport& report);

}  // namespace camr
