#include "camr/analysis.hpp"

#include <sstream>
#include <stdexcept>

namespace camr {
namespace {

void check_params(int q, int k, const char* what) {
  if (q < 2 || k < 2)
    throw std::invalid_argument(std::string(what) +
                                ": needs q >= 2 and k >= 2, got q = " +
                                std::to_string(q) + ", k = " +
                                std::to_string(k));
}

}  // namespace

StageLoads camr_loads(int q, int k) {
  check_params(q, k, "loads");
  const int K = k * q;
  StageLoads loads;
  loads.stage1 = Rational(k, K * (k - 1));
  loads.stage2 = Rational((q - 1) * k, K * (k - 1));
  loads.stage3 = Rational(q - 1, q);
  const Rational closed(k * (q - 1) + 1, q * (k - 1));
  if (loads.total() != closed)
    throw std::logic_error("loads: stage forms do not sum to the total form");
  return loads;
}

StageLoads uncoded_baseline_stage_loads(int q, int k) {
  check_params(q, k, "baseline");
  StageLoads loads;
  loads.stage1 = Rational(k, k * q);
  loads.stage2 = Rational(q - 1, q);
  loads.stage3 = Rational(q - 1, q);
  return loads;
}

Rational uncoded_baseline_load(int q, int k) {
  return uncoded_baseline_stage_loads(q, k).total();
}

Rational ccdc_load(const Rational& mu, int K) {
  if (K < 2)
    throw std::invalid_argument("ccdc load: needs K >= 2");
  const Rational muK = mu * K;
  if (boost::multiprecision::denominator(muK) != 1)
    throw std::invalid_argument("ccdc load: mu K = " + rat_str(muK) +
                                " is not an integer");
  const BigInt t = boost::multiprecision::numerator(muK);
  if (t < 1 || t > K - 1)
    throw std::invalid_argument("ccdc load: mu K = " + t.str() +
                                " outside 1.." + std::to_string(K - 1));
  return (Rational(1) - mu) * (muK + 1) / muK;
}

JobCounts min_jobs(int q, int k) {
  check_params(q, k, "job counts");
  JobCounts counts;
  counts.camr = ipow(q, k - 1);
  counts.ccdc_min = binomial(k * q, k);
  if (!(counts.ccdc_min >= ipow(q, k) && ipow(q, k) > counts.camr))
    throw std::logic_error("job counts: ordering C(kq,k) >= q^k > q^(k-1) "
                           "failed");
  return counts;
}

MeasuredLoads measure_loads(const std::vector<TransmissionRecord>& log,
                            long long jobs, int funcs, int value_bytes) {
  if (jobs < 1 || funcs < 1 || value_bytes < 1)
    throw std::invalid_argument("measure: jobs, funcs, and value width must "
                                "be positive");
  MeasuredLoads m;
  for (const TransmissionRecord& rec : log) {
    switch (rec.stage) {
      case 1: m.bits1 += rec.bits; break;
      case 2: m.bits2 += rec.bits; break;
      case 3: m.bits3 += rec.bits; break;
      default:
        throw std::invalid_argument("measure: record with stage " +
                                    std::to_string(rec.stage));
    }
  }
  const Rational denom = Rational(jobs) * funcs * 8 * value_bytes;
  m.loads.stage1 = Rational(m.bits1) / denom;
  m.loads.stage2 = Rational(m.bits2) / denom;
  m.loads.stage3 = Rational(m.bits3) / denom;
  return m;
}

void reconcile(const StageLoads& measured, const StageLoads& analytic) {
  const Rational* got[] = {&measured.stage1, &measured.stage2,
                           &measured.stage3};
  const Rational* want[] = {&analytic.stage1, &analytic.stage2,
                            &analytic.stage3};
  for (int s = 0; s < 3; ++s)
    if (*got[s] != *want[s])
      throw std::runtime_error(
          "load mismatch at stage " + std::to_string(s + 1) + ": measured " +
          rat_str(*got[s]) + ", analytic " + rat_str(*want[s]));
}

std::string report_text(const LoadReport& report) {
  std::ostringstream out;
  out << "scheme " << report.scheme << "  q " << report.q << "  k " << report.k
      << "  gamma " << report.gamma << "  seed " << report.seed << "\n";
  out << "servers " << report.K << "  jobs " << report.J << "  subfiles/job "
      << report.N << "  value bytes " << report.value_bytes << "  mu "
      << rat_str(report.mu) << "\n";
  out << "stage 1 load " << rat_str(report.measured.loads.stage1) << " ("
      << report.measured.bits1 << " bits)\n";
  out << "stage 2 load " << rat_str(report.measured.loads.stage2) << " ("
      << report.measured.bits2 << " bits)\n";
  out << "stage 3 load " << rat_str(report.measured.loads.stage3) << " ("
      << report.measured.bits3 << " bits)\n";
  out << "total load " << rat_str(report.measured.loads.total())
      << "  analytic " << rat_str(report.analytic.total()) << "\n";
  out << "ccdc load at same mu " << rat_str(report.ccdc)
      << "  uncoded baseline " << rat_str(report.baseline) << "\n";
  out << "min jobs " << report.j_camr.str() << "  ccdc min jobs "
      << report.j_ccdc_min.str() << "\n";
  out << "reduce outputs match oracle: " << (report.correct ? "yes" : "no")
      << "\n";
  return out.str();
}

std::string report_csv_header() {
  return "q,k,gamma,L1,L2,L3,L_total,L_ccdc,L_baseline,J_camr,J_ccdc_min,"
         "correct";
}

std::string report_csv_row(const LoadReport& report) {
  std::ostringstream out;
  out << report.q << ',' << report.k << ',' << report.gamma << ','
      << rat_str(report.measured.loads.stage1) << ','
      << rat_str(report.measured.loads.stage2) << ','
      << rat_str(report.measured.loads.stage3) << ','
      << rat_str(report.measured.loads.total()) << ',' << rat_str(report.ccdc)
      << ',' << rat_str(report.baseline) << ',' << report.j_camr.str() << ','
      << report.j_ccdc_min.str() << ','
      << (report.correct ? "true" : "false");
  return out.str();
}

}  // namespace camr
