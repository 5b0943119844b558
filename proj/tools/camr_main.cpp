#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "camr/export.hpp"
#include "camr/simulate.hpp"

namespace {

using namespace camr;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content))
    throw std::runtime_error("cannot write " + path);
}

// Re-derives every structural property of a built design instead of trusting
// the constructor, so the exit status vouches for the object actually printed.
std::vector<std::string> design_problems(const ResolvableDesign& design) {
  std::vector<std::string> problems;
  const int q = design.params.q;
  const int k = design.params.k;
  const long long J = design.params.job_count();

  // rows 1..k-1 hold the base-q digits of j-1, row k the parity sum
  for (JobId j = 1; j <= J; ++j) {
    long long rest = j - 1;
    int parity = 0;
    for (int i = k - 1; i >= 1; --i) {
      const int digit = int(rest % q);
      rest /= q;
      parity = (parity + digit) % q;
      if (design.matrix.symbol(i, j) != digit) {
        problems.push_back("matrix row " + std::to_string(i) + " column " +
                           std::to_string(j) + " is not the message digit");
        break;
      }
    }
    if (design.matrix.symbol(k, j) != parity)
      problems.push_back("matrix parity row wrong at column " +
                         std::to_string(j));
  }

  for (int i = 1; i <= k; ++i) {
    std::vector<int> seen(std::size_t(J), 0);
    for (ServerId s : design.classes[std::size_t(i - 1)]) {
      const Block& block = design.block_of(s);
      if (static_cast<long long>(block.points.size()) * q != J)
        problems.push_back("block of server " + std::to_string(s) +
                           " does not have J/q points");
      for (JobId j : block.points) ++seen[std::size_t(j - 1)];
    }
    for (JobId j = 1; j <= J; ++j)
      if (seen[std::size_t(j - 1)] != 1) {
        problems.push_back("class " + std::to_string(i) +
                           " does not partition the jobs");
        break;
      }
  }

  for (JobId j = 1; j <= J; ++j) {
    const std::vector<ServerId> owners = owners_of_job(design, j);
    for (int i = 1; i <= k; ++i) {
      const ServerId o = owners[std::size_t(i - 1)];
      if (design.class_of(o) != i || !design.server_has_point(o, j)) {
        problems.push_back("owner set of job " + std::to_string(j) +
                           " is not one holder per class");
        break;
      }
    }
  }

  // group enumeration is the one superlinear check; skip it on huge designs
  if (J * (q - 1) <= 1'000'000) {
    const auto groups = enumerate_stage2_groups(design);
    if (static_cast<long long>(groups.size()) != J * (q - 1))
      problems.push_back("expected " + std::to_string(J * (q - 1)) +
                         " exchange groups, enumerated " +
                         std::to_string(groups.size()));
  }
  return problems;
}

int cmd_design(int q, int k, const std::string& format) {
  DesignParams params;
  params.q = q;
  params.k = k;
  params.validate();
  const ResolvableDesign design = build_design(params);
  const std::vector<std::string> problems = design_problems(design);

  if (format == "json") {
    std::cout << design_to_json(design).dump(2) << '\n';
  } else {
    const long long J = params.job_count();
    std::cout << "q " << q << "  k " << k << "  servers "
              << params.server_count() << "  jobs " << J << '\n';
    for (const std::vector<ServerId>& cls : design.classes) {
      const int i = design.class_of(cls.front());
      std::cout << "class " << i << ':';
      for (ServerId s : cls) std::cout << " U_" << s;
      std::cout << '\n';
    }
    for (const Block& block : design.blocks) {
      std::cout << "block U_" << block.server << "  class "
                << block.class_index << "  symbol " << block.symbol
                << "  points";
      for (JobId j : block.points) std::cout << ' ' << j;
      std::cout << '\n';
    }
    if (J <= 4096) {
      for (JobId j = 1; j <= J; ++j) {
        std::cout << "job " << j << " owners";
        for (ServerId o : owners_of_job(design, j)) std::cout << " U_" << o;
        std::cout << '\n';
      }
    } else {
      std::cout << "owner sets omitted (" << J << " jobs)\n";
    }
  }

  for (const std::string& p : problems) std::cerr << "invariant: " << p << '\n';
  return problems.empty() ? 0 : 1;
}

struct SimFlags {
  SimConfig config;
  std::string format = "text";
  std::string dump_design, dump_placement, dump_log, dump_corpus;
};

int cmd_simulate(const SimFlags& flags) {
  if (flags.config.gamma == 1)
    std::cerr << "notice: gamma 1 places single-subfile batches\n";
  const SimResult result = run_simulation(flags.config);

  if (!flags.dump_design.empty())
    write_file(flags.dump_design, design_to_json(result.design).dump(2) + "\n");
  if (!flags.dump_placement.empty())
    write_file(flags.dump_placement,
               placement_to_json(result.plan).dump(2) + "\n");
  if (!flags.dump_log.empty())
    write_file(flags.dump_log, log_to_jsonl(result.log));
  if (!flags.dump_corpus.empty())
    write_file(flags.dump_corpus, corpus_to_jsonl(result.corpus));

  if (flags.format == "json")
    std::cout << report_to_json(result.report).dump(2) << '\n';
  else if (flags.format == "csv")
    std::cout << report_csv_header() << '\n'
              << report_csv_row(result.report) << '\n';
  else
    std::cout << report_text(result.report);
  return result.report.correct ? 0 : 1;
}

int cmd_sweep(const std::vector<int>& qs, const std::vector<int>& ks,
              const std::vector<int>& gammas, std::uint64_t seed,
              const std::string& format) {
  bool all_good = true;
  Json rows = Json::array();
  if (format == "csv") std::cout << report_csv_header() << '\n';
  for (int q : qs)
    for (int k : ks)
      for (int gamma : gammas) {
        if (gamma == 1)
          std::cerr << "notice: gamma 1 places single-subfile batches\n";
        try {
          SimConfig config;
          config.q = q;
          config.k = k;
          config.gamma = gamma;
          config.seed = seed;
          const SimResult result = run_simulation(config);
          if (!result.report.correct) all_good = false;
          if (format == "json")
            rows.push_back(report_to_json(result.report));
          else
            std::cout << report_csv_row(result.report) << '\n';
        } catch (const std::exception& e) {
          all_good = false;
          std::cerr << "sweep point q " << q << " k " << k << " gamma "
                    << gamma << ": " << e.what() << '\n';
        }
      }
  if (format == "json") std::cout << rows.dump(2) << '\n';
  return all_good ? 0 : 1;
}

int cmd_compare(int K, std::vector<int> ks, const std::string& format) {
  if (K < 4)
    throw std::invalid_argument("compare: needs K >= 4 so some k >= 2 "
                                "divides K with K/k >= 2");
  const bool chosen = !ks.empty();
  if (!chosen)
    for (int k = 2; k * 2 <= K; ++k)
      if (K % k == 0) ks.push_back(k);

  Json rows = Json::array();
  if (format == "csv")
    std::cout << "K,k,q,J_camr,J_ccdc_min,L,L_baseline\n";
  else if (format == "text")
    std::cout << "K " << K << '\n';

  int printed = 0;
  for (int k : ks) {
    if (k < 2 || K % k != 0 || K / k < 2) {
      std::cerr << "notice: k " << k << " skipped (needs k >= 2 dividing K "
                << "with K/k >= 2)\n";
      continue;
    }
    const int q = K / k;
    const JobCounts counts = min_jobs(q, k);
    const StageLoads loads = camr_loads(q, k);
    const Rational mu(k - 1, K);
    if (ccdc_load(mu, K) != loads.total())
      throw std::logic_error("compare: scheme loads differ at k " +
                             std::to_string(k));
    const Rational baseline = uncoded_baseline_load(q, k);
    ++printed;
    if (format == "json")
      rows.push_back(Json{{"K", K},
                          {"k", k},
                          {"q", q},
                          {"J_camr", counts.camr.str()},
                          {"J_ccdc_min", counts.ccdc_min.str()},
                          {"L", rat_str(loads.total())},
                          {"L_baseline", rat_str(baseline)}});
    else if (format == "csv")
      std::cout << K << ',' << k << ',' << q << ',' << counts.camr.str()
                << ',' << counts.ccdc_min.str() << ','
                << rat_str(loads.total()) << ',' << rat_str(baseline) << '\n';
    else
      std::cout << "k " << k << "  q " << q << "  jobs " << counts.camr.str()
                << "  ccdc jobs " << counts.ccdc_min.str() << "  load "
                << rat_str(loads.total()) << "  baseline "
                << rat_str(baseline) << '\n';
  }
  if (format == "json") std::cout << rows.dump(2) << '\n';
  return printed > 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded aggregated map-reduce shuffle simulator"};
  app.require_subcommand(1);

  auto* design = app.add_subcommand(
      "design", "build the resolvable design and check its invariants");
  int d_q = 2, d_k = 3;
  std::string d_format = "text";
  design->add_option("--q", d_q, "symbols per code position");
  design->add_option("--k", d_k, "code length (parallel classes)");
  design->add_option("--format", d_format)
      ->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand(
      "simulate", "run one full map, shuffle, reduce round and report loads");
  SimFlags s;
  simulate->add_option("--q", s.config.q, "symbols per code position");
  simulate->add_option("--k", s.config.k, "code length (parallel classes)");
  simulate->add_option("--gamma", s.config.gamma, "subfiles per batch");
  simulate->add_option("--value-bytes", s.config.value_bytes,
                       "aggregate width in bytes (0 = auto)");
  simulate->add_option("--seed", s.config.seed, "corpus seed");
  bool s_uncoded = false;
  simulate->add_flag("--uncoded", s_uncoded,
                     "unicast whole chunks instead of coded multicasts");
  simulate->add_option("--format", s.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  simulate->add_option("--dump-design", s.dump_design, "write design JSON");
  simulate->add_option("--dump-placement", s.dump_placement,
                       "write placement JSON");
  simulate->add_option("--dump-log", s.dump_log, "write transmission JSONL");
  simulate->add_option("--dump-corpus", s.dump_corpus, "write corpus JSONL");

  auto* sweep = app.add_subcommand(
      "sweep", "simulate a parameter grid, one report row per point");
  std::vector<int> w_qs = {2, 3, 4, 5};
  std::vector<int> w_ks = {2, 3, 4};
  std::vector<int> w_gammas = {1, 2, 3};
  std::uint64_t w_seed = 0;
  std::string w_format = "csv";
  sweep->add_option("--q-list", w_qs, "grid of q values")->delimiter(',');
  sweep->add_option("--k-list", w_ks, "grid of k values")->delimiter(',');
  sweep->add_option("--gamma-list", w_gammas, "grid of gamma values")
      ->delimiter(',');
  sweep->add_option("--seed", w_seed, "corpus seed");
  sweep->add_option("--format", w_format)
      ->check(CLI::IsMember({"csv", "json"}));

  auto* compare = app.add_subcommand(
      "compare", "job counts both schemes need at equal load on K servers");
  int c_K = 0;
  std::vector<int> c_ks;
  std::string c_format = "text";
  compare->add_option("--K", c_K, "server count")->required();
  compare->add_option("--k-list,--k", c_ks,
                      "restrict to these k values (default: all divisors)")
      ->delimiter(',');
  compare->add_option("--format", c_format)
      ->check(CLI::IsMember({"text", "json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (design->parsed()) return cmd_design(d_q, d_k, d_format);
    if (simulate->parsed()) {
      if (s_uncoded) s.config.mode = ShuffleMode::Uncoded;
      return cmd_simulate(s);
    }
    if (sweep->parsed()) return cmd_sweep(w_qs, w_ks, w_gammas, w_seed,
                                          w_format);
    return cmd_compare(c_K, c_ks, c_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
