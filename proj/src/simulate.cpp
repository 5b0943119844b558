#include "camr/simulate.hpp"

#include <numeric>
#include <stdexcept>

namespace camr {

int default_value_bytes(int k) {
  if (k < 2) throw std::invalid_argument("value width: needs k >= 2");
  return std::lcm(8, k - 1);
}

SimResult run_simulation(const SimConfig& config) {
  DesignParams params;
  params.q = config.q;
  params.k = config.k;
  params.point_ceiling = config.point_ceiling;
  params.validate();

  const int B = config.value_bytes == 0 ? default_value_bytes(config.k)
                                        : config.value_bytes;
  const Aggregator agg = make_sum_aggregator(B);

  SimResult result;
  result.design = build_design(params);
  result.plan = place(result.design, config.gamma);
  result.corpus =
      generate_corpus(config.seed, result.design, result.plan, B);

  Cluster cluster =
      run_map_phase(result.design, result.plan, result.corpus, agg);
  result.log = run_shuffle(cluster, config.mode);
  result.reduced = reduce_all(cluster);

  const auto oracle = oracle_reduce(agg, result.corpus);

  LoadReport& report = result.report;
  report.q = config.q;
  report.k = config.k;
  report.gamma = config.gamma;
  report.value_bytes = B;
  report.seed = config.seed;
  report.K = params.server_count();
  report.J = params.job_count();
  report.N = result.plan.subfiles_per_job;
  report.scheme = config.mode == ShuffleMode::Coded ? "coded" : "uncoded";
  report.mu = storage_fraction(result.plan);
  report.measured = measure_loads(result.log, report.J, report.K, B);
  report.analytic = config.mode == ShuffleMode::Coded
                        ? camr_loads(config.q, config.k)
                        : uncoded_baseline_stage_loads(config.q, config.k);
  report.ccdc = ccdc_load(report.mu, report.K);
  report.baseline = uncoded_baseline_load(config.q, config.k);
  const JobCounts counts = min_jobs(config.q, config.k);
  report.j_camr = counts.camr;
  report.j_ccdc_min = counts.ccdc_min;
  report.correct = result.reduced == oracle;

  reconcile(report.measured.loads, report.analytic);
  return result;
}

}  // namespace camr
