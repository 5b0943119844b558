#include "camr/export.hpp"

#include "camr/bytes.hpp"

namespace camr {

Json design_to_json(const ResolvableDesign& design) {
  Json out;
  out["q"] = design.params.q;
  out["k"] = design.params.k;
  out["K"] = design.params.server_count();
  out["J"] = design.params.job_count();
  out["blocks"] = Json::array();
  for (const Block& block : design.blocks)
    out["blocks"].push_back(Json{{"server", block.server},
                                 {"class", block.class_index},
                                 {"symbol", block.symbol},
                                 {"points", block.points}});
  out["classes"] = design.classes;
  return out;
}

Json placement_to_json(const PlacementPlan& plan) {
  Json out;
  out["jobs"] = Json::array();
  for (const JobPlacement& jp : plan.jobs) {
    Json batches = Json::array();
    for (const auto& [label, subfiles] : jp.batches)
      batches.push_back(Json{{"label", label}, {"subfiles", subfiles}});
    out["jobs"].push_back(Json{{"job", jp.job},
                               {"owners", jp.owners},
                               {"batches", std::move(batches)}});
  }
  out["servers"] = Json::array();
  for (const auto& [server, stored] : plan.server_store) {
    Json pairs = Json::array();
    for (const BatchId& batch : stored)
      pairs.push_back(Json::array({batch.job, batch.owner_label}));
    out["servers"].push_back(
        Json{{"server", server}, {"stored", std::move(pairs)}});
  }
  return out;
}

Json report_to_json(const LoadReport& report) {
  Json out;
  out["scheme"] = report.scheme;
  out["q"] = report.q;
  out["k"] = report.k;
  out["gamma"] = report.gamma;
  out["value_bytes"] = report.value_bytes;
  out["seed"] = report.seed;
  out["K"] = report.K;
  out["J"] = report.J;
  out["N"] = report.N;
  out["mu"] = rat_str(report.mu);
  out["measured"] = Json{{"stage1", rat_str(report.measured.loads.stage1)},
                         {"stage2", rat_str(report.measured.loads.stage2)},
                         {"stage3", rat_str(report.measured.loads.stage3)},
                         {"total", rat_str(report.measured.loads.total())},
                         {"bits1", report.measured.bits1},
                         {"bits2", report.measured.bits2},
                         {"bits3", report.measured.bits3}};
  out["analytic"] = Json{{"stage1", rat_str(report.analytic.stage1)},
                         {"stage2", rat_str(report.analytic.stage2)},
                         {"stage3", rat_str(report.analytic.stage3)},
                         {"total", rat_str(report.analytic.total())}};
  out["ccdc"] = rat_str(report.ccdc);
  out["baseline"] = rat_str(report.baseline);
  out["j_camr"] = report.j_camr.str();
  out["j_ccdc_min"] = report.j_ccdc_min.str();
  out["correct"] = report.correct;
  return out;
}

std::string log_to_jsonl(const std::vector<TransmissionRecord>& log) {
  std::string out;
  for (const TransmissionRecord& rec : log) {
    Json meta;
    if (rec.stage == 2)
      meta["group"] = rec.group;
    else
      meta["job"] = rec.job;
    Json line{{"stage", rec.stage},
              {"kind", tx_kind_name(rec.kind)},
              {"sender", rec.sender},
              {"receivers", rec.receivers},
              {"bits", rec.bits},
              {"meta", std::move(meta)}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string corpus_to_jsonl(const std::vector<JobSpec>& corpus) {
  std::string out;
  for (const JobSpec& spec : corpus) {
    for (int n = 1; n <= int(spec.subfile_payloads.size()); ++n) {
      std::vector<std::uint64_t> counts(spec.vocabulary.size());
      for (const IntermediateValue& v : map_subfile(spec, n))
        counts[std::size_t(v.func - 1)] = v.value;
      const std::string& payload =
          spec.subfile_payloads[std::size_t(n - 1)];
      Json line{{"job", spec.job},
                {"subfile", n},
                {"payload_hash", to_hex(encode_be(fnv1a64(payload), 8))},
                {"counts", counts}};
      out += line.dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace camr
