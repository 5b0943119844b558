#pragma once

#include <map>
#include <vector>

#include "camr/design.hpp"
#include "camr/rational.hpp"

namespace camr {

// A batch is identified by its job and by the owner whose label it carries.
// The labeling owner is exactly the one server that does NOT store the batch.
struct BatchId {
  JobId job = 0;
  ServerId owner_label = 0;

  friend bool operator<(const BatchId& a, const BatchId& b) {
    if (a.job != b.job) return a.job < b.job;
    return a.owner_label < b.owner_label;
  }
  friend bool operator==(const BatchId& a, const BatchId& b) {
    return a.job == b.job && a.owner_label == b.owner_label;
  }
};

struct JobPlacement {
  JobId job = 0;
  std::vector<ServerId> owners;  // ascending, one per class
  // batches in data order: batch t covers subfiles (t-1)*gamma+1 .. t*gamma
  std::vector<std::pair<ServerId, std::vector<int>>> batches;
};

// Output of the file placement: each job's data set split into k batches of
// gamma subfiles, batches labeled by owners, and each server storing all
// batches of its jobs except the one carrying its own label.
struct PlacementPlan {
  int q = 0;
  int k = 0;
  int gamma = 0;
  int subfiles_per_job = 0;  // N = k*gamma
  long long jobs_total = 0;  // J
  int servers_total = 0;     // K

  std::vector<JobPlacement> jobs;                     // index j-1
  std::map<ServerId, std::vector<BatchId>> server_store;  // sorted batch lists

  const JobPlacement& job_placement(JobId j) const;
  // the gamma subfiles of the batch labeled owner_label; owner_label must own job
  const std::vector<int>& batch_of(JobId job, ServerId owner_label) const;
  bool stores(ServerId server, const BatchId& batch) const;
  // sorted subfiles of `job` present on `server` (empty for non-owners)
  std::vector<int> stored_subfiles(ServerId server, JobId job) const;
};

// Deterministic placement: owners sorted ascending (o_1..o_k), batch t gets
// label o_((t mod k)+1). gamma=1 is allowed; the protocol is unaffected.
PlacementPlan place(const ResolvableDesign& design, int gamma);

// stored-subfile count of any server over J*N as an exact rational; equals
// (k-1)/K. Throws if servers store unequal amounts (placement bug).
Rational storage_fraction(const PlacementPlan& plan);

}  // namespace camr
