#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "camr/bytes.hpp"
#include "camr/design.hpp"
#include "camr/jobs.hpp"
#include "camr/placement.hpp"

namespace camr {

// Identity of one aggregate value in flight: reduce function, job, and the
// subfile set the aggregate ranges over (ascending).
struct AggregateMeta {
  int func = 0;
  JobId job = 0;
  std::vector<int> subfiles;

  friend bool operator<(const AggregateMeta& a, const AggregateMeta& b) {
    return std::tie(a.func, a.job, a.subfiles) <
           std::tie(b.func, b.job, b.subfiles);
  }
  friend bool operator==(const AggregateMeta& a, const AggregateMeta& b) {
    return a.func == b.func && a.job == b.job && a.subfiles == b.subfiles;
  }
};

// One value a group exchange delivers: the member left out of the XOR
// association (the one that needs it), what the value is, and its bytes.
struct Chunk {
  ServerId gap = 0;
  AggregateMeta meta;
  Bytes bytes;
};

// One broadcast within a group exchange: the XOR of the sender's associated
// packet from every chunk it holds.
struct CodedPacket {
  ServerId sender = 0;
  std::vector<ServerId> group;
  Bytes payload;
};

enum class TxKind { CodedMulticast, UncodedUnicast };

const char* tx_kind_name(TxKind kind);

// One log entry. bits counts payload bits only; job is set for per-job
// transmissions (stages 1 and 3), group for stage-2 exchanges.
struct TransmissionRecord {
  int stage = 0;
  TxKind kind = TxKind::CodedMulticast;
  ServerId sender = 0;
  std::vector<ServerId> receivers;
  std::int64_t bits = 0;
  JobId job = 0;
  std::vector<ServerId> group;

  bool operator==(const TransmissionRecord&) const = default;
};

// Values received over the wire, keyed by identity. A duplicate insert means
// the protocol delivered the same value twice; that is a bug, not a merge.
class ServerInbox {
 public:
  void insert(const AggregateMeta& meta, Bytes bytes);
  const Bytes* find(const AggregateMeta& meta) const;

  // All received values for one (func, job), in meta order.
  std::vector<std::pair<AggregateMeta, Bytes>> for_func_job(int func,
                                                            JobId job) const;

  const std::map<AggregateMeta, Bytes>& values() const { return values_; }

 private:
  std::map<AggregateMeta, Bytes> values_;
};

struct ServerState {
  ServerId id = 0;
  // Map output per stored (job, subfile): one count per reduce function.
  std::map<std::pair<JobId, int>, std::vector<std::uint64_t>> map_outputs;
  ServerInbox inbox;
};

// What one server can reconstruct from its own shard, as a callable handed to
// the exchange primitives. Returns nullopt when any needed subfile is absent.
using LocalStoreFn =
    std::function<std::optional<Bytes>(ServerId, const AggregateMeta&)>;

// Server fleet after the map phase. Holds views into the design and plan that
// produced it; both must outlive the cluster.
struct Cluster {
  const ResolvableDesign* design = nullptr;
  const PlacementPlan* plan = nullptr;
  Aggregator agg;
  std::vector<ServerState> servers;

  const ServerState& server(ServerId s) const;
  ServerState& server(ServerId s);

  // Aggregate over meta.subfiles from the server's own map outputs, or
  // nullopt if the server does not store every subfile in the set.
  std::optional<Bytes> local_aggregate(ServerId s,
                                       const AggregateMeta& meta) const;
  LocalStoreFn local_store_fn() const;
};

// Runs every mapper once per stored copy: each server evaluates the map
// function on exactly the subfiles it stores.
Cluster run_map_phase(const ResolvableDesign& design, const PlacementPlan& plan,
                      const std::vector<JobSpec>& corpus,
                      const Aggregator& agg);

// One round of the group exchange primitive. Every member broadcasts the XOR
// of its associated packets; every member decodes its missing chunk from the
// others' broadcasts plus values it can reconstruct locally.
//
// pre: group ascending, |group| >= 2; one chunk per member, keyed by gap;
//      all chunks the same width, divisible by |group| - 1.
std::vector<CodedPacket> encode_group(const std::vector<ServerId>& group,
                                      const std::map<ServerId, Chunk>& chunks,
                                      const LocalStoreFn& local_store);

// Decodes the receiver's chunk using only the other members' packets and the
// receiver's own reconstructions of the remaining chunks.
Bytes decode_chunk(const std::vector<ServerId>& group,
                   const std::map<ServerId, Chunk>& chunks, ServerId receiver,
                   const std::vector<CodedPacket>& packets,
                   const LocalStoreFn& local_store);

struct ExchangeResult {
  std::vector<CodedPacket> packets;
  std::map<ServerId, Bytes> decoded;
  std::vector<TransmissionRecord> records;
};

// encode_group + decode_chunk for every member, with one record per
// broadcast. Total traffic for chunk width B: 8 * B * g / (g - 1) bits.
ExchangeResult coded_exchange(const std::vector<ServerId>& group,
                              const std::map<ServerId, Chunk>& chunks,
                              const LocalStoreFn& local_store);

enum class ShuffleMode { Coded, Uncoded };

// Stage 1: per job, its owner group exchanges own-batch aggregates; the owner
// labeled k' receives the aggregate of its stored-out batch for function k'.
std::vector<TransmissionRecord> run_stage1(Cluster& cluster, ShuffleMode mode);

// Stage 2: per non-codeword symbol tuple, the matching server group runs one
// exchange; the member left out of each chunk is the one whose block misses
// the unique job the rest jointly own.
std::vector<TransmissionRecord> run_stage2(Cluster& cluster, ShuffleMode mode);

// Stage 3: same-class pairs unicast whole-job aggregates for each other's
// blocks. Identical in both modes.
std::vector<TransmissionRecord> run_stage3(Cluster& cluster, ShuffleMode mode);

// All three stages in order; the concatenated log.
std::vector<TransmissionRecord> run_shuffle(Cluster& cluster, ShuffleMode mode);

// Every server combines local and received values into its reduce outputs,
// one per (function, job) it is responsible for. Fails loudly if the pieces
// for any output do not partition the job's subfiles.
std::map<std::pair<int, JobId>, AggregateValue> reduce_all(
    const Cluster& cluster);

}  // namespace camr
