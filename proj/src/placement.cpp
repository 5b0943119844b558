#include "camr/placement.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace camr {

const JobPlacement& PlacementPlan::job_placement(JobId j) const {
  if (j < 1 || j > jobs_total)
    throw std::invalid_argument("placement: job id " + std::to_string(j) +
                                " out of range 1.." + std::to_string(jobs_total));
  return jobs[std::size_t(j - 1)];
}

const std::vector<int>& PlacementPlan::batch_of(JobId job,
                                                ServerId owner_label) const {
  const JobPlacement& jp = job_placement(job);
  for (const auto& [label, subfiles] : jp.batches)
    if (label == owner_label) return subfiles;
  throw std::invalid_argument("placement: server " + std::to_string(owner_label) +
                              " is not an owner of job " + std::to_string(job));
}

bool PlacementPlan::stores(ServerId server, const BatchId& batch) const {
  auto it = server_store.find(server);
  if (it == server_store.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), batch);
}

std::vector<int> PlacementPlan::stored_subfiles(ServerId server, JobId job) const {
  const JobPlacement& jp = job_placement(job);
  if (std::find(jp.owners.begin(), jp.owners.end(), server) == jp.owners.end())
    return {};  // non-owners store nothing of this job
  std::vector<int> out;
  for (const auto& [label, subfiles] : jp.batches) {
    if (label == server) continue;  // own label is the one missing batch
    out.insert(out.end(), subfiles.begin(), subfiles.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PlacementPlan place(const ResolvableDesign& design, int gamma) {
  if (gamma < 1)
    throw std::invalid_argument("placement: gamma must be >= 1 (got " +
                                std::to_string(gamma) + ")");
  const int k = design.params.k;
  const long long J = design.job_count();

  PlacementPlan plan;
  plan.q = design.params.q;
  plan.k = k;
  plan.gamma = gamma;
  plan.subfiles_per_job = k * gamma;
  plan.jobs_total = J;
  plan.servers_total = design.server_count();

  plan.jobs.reserve(std::size_t(J));
  for (JobId j = 1; j <= J; ++j) {
    JobPlacement jp;
    jp.job = j;
    jp.owners = owners_of_job(design, j);  // ascending
    jp.batches.reserve(std::size_t(k));
    for (int t = 1; t <= k; ++t) {
      std::vector<int> subfiles(static_cast<std::size_t>(gamma), 0);
      for (int i = 0; i < gamma; ++i) subfiles[std::size_t(i)] = (t - 1) * gamma + i + 1;
      ServerId label = jp.owners[std::size_t(t % k)];  // o_((t mod k)+1)
      jp.batches.emplace_back(label, std::move(subfiles));
    }
    plan.jobs.push_back(std::move(jp));
  }

  for (const JobPlacement& jp : plan.jobs) {
    for (ServerId owner : jp.owners) {
      for (const auto& [label, subfiles] : jp.batches) {
        if (label == owner) continue;
        plan.server_store[owner].push_back(BatchId{jp.job, label});
      }
    }
  }
  for (auto& [server, batches] : plan.server_store)
    std::sort(batches.begin(), batches.end());

  return plan;
}

Rational storage_fraction(const PlacementPlan& plan) {
  long long expected = -1;
  for (int s = 1; s <= plan.servers_total; ++s) {
    auto it = plan.server_store.find(s);
    long long stored =
        it == plan.server_store.end()
            ? 0
            : (long long)it->second.size() * plan.gamma;  // subfiles, not batches
    if (expected < 0) expected = stored;
    if (stored != expected)
      throw std::runtime_error(
          "placement: unequal per-server storage (server " + std::to_string(s) +
          " stores " + std::to_string(stored) + " subfiles, server 1 stores " +
          std::to_string(expected) + ")");
  }
  Rational mu(BigInt(expected),
              BigInt(plan.jobs_total) * BigInt(plan.subfiles_per_job));
  return mu;
}

}  // namespace camr
