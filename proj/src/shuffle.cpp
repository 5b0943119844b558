#include "camr/shuffle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "camr/parallel.hpp"

namespace camr {
namespace {

std::string meta_str(const AggregateMeta& meta) {
  return "func " + std::to_string(meta.func) + " job " +
         std::to_string(meta.job);
}

// Group members other than gap, ascending. Packet slots of gap's chunk are
// assigned to these members in this order.
std::vector<ServerId> others_of(const std::vector<ServerId>& group,
                                ServerId gap) {
  std::vector<ServerId> others;
  others.reserve(group.size() - 1);
  for (ServerId s : group)
    if (s != gap) others.push_back(s);
  return others;
}

int slot_of(const std::vector<ServerId>& others, ServerId member) {
  auto it = std::find(others.begin(), others.end(), member);
  if (it == others.end())
    throw std::logic_error("exchange: server " + std::to_string(member) +
                           " holds no packet slot");
  return int(it - others.begin());
}

void xor_slice(Bytes& dst, const Bytes& src, std::size_t offset,
               std::size_t len) {
  const XorKernel& kernel = active_xor_kernel();
  kernel.fn(dst.data(), src.data() + offset, len);
}

// Validates group and chunk shapes shared by encode and decode.
std::size_t packet_width(const std::vector<ServerId>& group,
                         const std::map<ServerId, Chunk>& chunks) {
  if (group.size() < 2)
    throw std::invalid_argument("exchange: group needs at least 2 servers");
  if (!std::is_sorted(group.begin(), group.end()) ||
      std::adjacent_find(group.begin(), group.end()) != group.end())
    throw std::invalid_argument("exchange: group must be strictly ascending");
  if (chunks.size() != group.size())
    throw std::invalid_argument("exchange: need exactly one chunk per member");
  std::size_t width = 0;
  for (ServerId s : group) {
    auto it = chunks.find(s);
    if (it == chunks.end())
      throw std::invalid_argument("exchange: no chunk for server " +
                                  std::to_string(s));
    if (it->second.gap != s)
      throw std::invalid_argument("exchange: chunk gap does not match its key");
    if (width == 0) width = it->second.bytes.size();
    if (it->second.bytes.size() != width || width == 0)
      throw std::invalid_argument(
          "exchange: chunks must share one nonzero width");
  }
  if (width % (group.size() - 1) != 0)
    throw std::invalid_argument("exchange: chunk width " +
                                std::to_string(width) +
                                " not divisible by group size minus one");
  return width / (group.size() - 1);
}

struct Delivery {
  ServerId to = 0;
  AggregateMeta meta;
  Bytes bytes;
};

struct StageTask {
  std::vector<TransmissionRecord> records;
  std::vector<Delivery> deliveries;
};

void apply_tasks(Cluster& cluster, std::vector<StageTask>& tasks,
                 std::vector<TransmissionRecord>& log) {
  for (StageTask& task : tasks) {
    for (TransmissionRecord& rec : task.records) log.push_back(std::move(rec));
    for (Delivery& d : task.deliveries)
      cluster.server(d.to).inbox.insert(d.meta, std::move(d.bytes));
  }
}

// Canonical bytes of a chunk come from the lowest-id member able to
// reconstruct it; encode later cross-checks every other member against them.
Chunk make_chunk(const Cluster& cluster, const std::vector<ServerId>& holders,
                 ServerId gap, AggregateMeta meta, const char* what) {
  for (ServerId h : holders) {
    if (h == gap) continue;
    auto bytes = cluster.local_aggregate(h, meta);
    if (!bytes)
      throw std::logic_error(std::string(what) + ": server " +
                             std::to_string(h) + " cannot reconstruct " +
                             meta_str(meta));
    return Chunk{gap, std::move(meta), std::move(*bytes)};
  }
  throw std::logic_error(std::string(what) + ": no holder for " +
                         meta_str(meta));
}

// Shared by stages 1 and 2: run one group's exchange, or in uncoded mode let
// the lowest-id other member unicast each chunk whole.
StageTask exchange_task(const Cluster& cluster, ShuffleMode mode, int stage,
                        const std::vector<ServerId>& group,
                        const std::map<ServerId, Chunk>& chunks, JobId job,
                        const std::vector<ServerId>& group_tag) {
  StageTask task;
  if (mode == ShuffleMode::Coded) {
    ExchangeResult er =
        coded_exchange(group, chunks, cluster.local_store_fn());
    for (TransmissionRecord& rec : er.records) {
      rec.stage = stage;
      rec.job = job;
      rec.group = group_tag;
      task.records.push_back(std::move(rec));
    }
    for (ServerId r : group)
      task.deliveries.push_back(
          Delivery{r, chunks.at(r).meta, std::move(er.decoded.at(r))});
  } else {
    for (ServerId gap : group) {
      const Chunk& chunk = chunks.at(gap);
      std::vector<ServerId> others = others_of(group, gap);
      ServerId sender = others.front();
      auto bytes = cluster.local_aggregate(sender, chunk.meta);
      if (!bytes)
        throw std::logic_error("uncoded exchange: sender cannot reconstruct " +
                               meta_str(chunk.meta));
      task.records.push_back(TransmissionRecord{
          stage, TxKind::UncodedUnicast, sender, {gap},
          std::int64_t(8 * bytes->size()), job, group_tag});
      task.deliveries.push_back(Delivery{gap, chunk.meta, std::move(*bytes)});
    }
  }
  return task;
}

}  // namespace

const char* tx_kind_name(TxKind kind) {
  return kind == TxKind::CodedMulticast ? "coded-multicast" : "uncoded-unicast";
}

void ServerInbox::insert(const AggregateMeta& meta, Bytes bytes) {
  auto [it, inserted] = values_.emplace(meta, std::move(bytes));
  (void)it;
  if (!inserted)
    throw std::logic_error("inbox: duplicate delivery of " + meta_str(meta));
}

const Bytes* ServerInbox::find(const AggregateMeta& meta) const {
  auto it = values_.find(meta);
  return it == values_.end() ? nullptr : &it->second;
}

std::vector<std::pair<AggregateMeta, Bytes>> ServerInbox::for_func_job(
    int func, JobId job) const {
  std::vector<std::pair<AggregateMeta, Bytes>> out;
  for (auto it = values_.lower_bound(AggregateMeta{func, job, {}});
       it != values_.end() && it->first.func == func && it->first.job == job;
       ++it)
    out.emplace_back(it->first, it->second);
  return out;
}

const ServerState& Cluster::server(ServerId s) const {
  if (s < 1 || std::size_t(s) > servers.size())
    throw std::invalid_argument("cluster: no server " + std::to_string(s));
  return servers[std::size_t(s - 1)];
}

ServerState& Cluster::server(ServerId s) {
  if (s < 1 || std::size_t(s) > servers.size())
    throw std::invalid_argument("cluster: no server " + std::to_string(s));
  return servers[std::size_t(s - 1)];
}

std::optional<Bytes> Cluster::local_aggregate(ServerId s,
                                              const AggregateMeta& meta) const {
  const ServerState& state = server(s);
  if (meta.func < 1 || std::size_t(meta.func) > servers.size())
    throw std::invalid_argument("cluster: no reduce function " +
                                std::to_string(meta.func));
  Bytes acc = agg.identity();
  for (int n : meta.subfiles) {
    auto it = state.map_outputs.find({meta.job, n});
    if (it == state.map_outputs.end()) return std::nullopt;
    agg.combine_inplace(acc,
                        agg.encode(it->second[std::size_t(meta.func - 1)]));
  }
  return acc;
}

LocalStoreFn Cluster::local_store_fn() const {
  return [this](ServerId s, const AggregateMeta& meta) {
    return local_aggregate(s, meta);
  };
}

Cluster run_map_phase(const ResolvableDesign& design, const PlacementPlan& plan,
                      const std::vector<JobSpec>& corpus,
                      const Aggregator& agg) {
  const int K = design.params.server_count();
  const long long J = design.params.job_count();
  if (static_cast<long long>(corpus.size()) != J)
    throw std::invalid_argument("map phase: corpus has " +
                                std::to_string(corpus.size()) +
                                " jobs, design has " + std::to_string(J));

  Cluster cluster;
  cluster.design = &design;
  cluster.plan = &plan;
  cluster.agg = agg;
  cluster.servers.resize(std::size_t(K));
  for (int s = 1; s <= K; ++s)
    cluster.servers[std::size_t(s - 1)].id = s;

  // One mapper evaluation per (job, subfile); the result is replicated to
  // every server whose shard holds that subfile.
  std::vector<std::vector<std::vector<std::uint64_t>>> counts(
      static_cast<std::size_t>(J));
  parallel_for(std::size_t(J), [&](std::size_t ji) {
    const JobSpec& spec = corpus[ji];
    if (spec.job != JobId(ji) + 1)
      throw std::invalid_argument("map phase: corpus out of job order");
    if (int(spec.vocabulary.size()) != K)
      throw std::invalid_argument(
          "map phase: vocabulary size must match function count");
    const int N = int(spec.subfile_payloads.size());
    counts[ji].resize(std::size_t(N));
    for (int n = 1; n <= N; ++n) {
      std::vector<std::uint64_t> row(static_cast<std::size_t>(K), 0);
      for (const IntermediateValue& v : map_subfile(spec, n))
        row[std::size_t(v.func - 1)] = v.value;
      counts[ji][std::size_t(n - 1)] = std::move(row);
    }
  });

  for (const JobPlacement& jp : plan.jobs)
    for (ServerId owner : jp.owners)
      for (const auto& [label, subfiles] : jp.batches) {
        if (label == owner) continue;
        for (int n : subfiles)
          cluster.server(owner).map_outputs[{jp.job, n}] =
              counts[std::size_t(jp.job - 1)][std::size_t(n - 1)];
      }
  return cluster;
}

std::vector<CodedPacket> encode_group(const std::vector<ServerId>& group,
                                      const std::map<ServerId, Chunk>& chunks,
                                      const LocalStoreFn& local_store) {
  const std::size_t p = packet_width(group, chunks);
  std::vector<CodedPacket> packets;
  packets.reserve(group.size());
  for (ServerId sender : group) {
    Bytes payload(p, 0);
    for (const auto& [gap, chunk] : chunks) {
      if (gap == sender) continue;
      auto copy = local_store(sender, chunk.meta);
      if (!copy)
        throw std::logic_error("exchange grouping bug: server " +
                               std::to_string(sender) +
                               " cannot reconstruct " + meta_str(chunk.meta));
      if (*copy != chunk.bytes)
        throw std::logic_error("exchange data mismatch: server " +
                               std::to_string(sender) + " disagrees on " +
                               meta_str(chunk.meta));
      const int slot = slot_of(others_of(group, gap), sender);
      xor_slice(payload, *copy, std::size_t(slot) * p, p);
    }
    packets.push_back(CodedPacket{sender, group, std::move(payload)});
  }
  return packets;
}

Bytes decode_chunk(const std::vector<ServerId>& group,
                   const std::map<ServerId, Chunk>& chunks, ServerId receiver,
                   const std::vector<CodedPacket>& packets,
                   const LocalStoreFn& local_store) {
  const std::size_t p = packet_width(group, chunks);
  const std::vector<ServerId> own_others = others_of(group, receiver);
  if (std::find(group.begin(), group.end(), receiver) == group.end())
    throw std::invalid_argument("decode: receiver not in group");

  Bytes result(p * own_others.size(), 0);
  for (ServerId sender : group) {
    if (sender == receiver) continue;
    auto pit = std::find_if(
        packets.begin(), packets.end(),
        [&](const CodedPacket& pk) { return pk.sender == sender; });
    if (pit == packets.end() || pit->payload.size() != p)
      throw std::invalid_argument("decode: missing or misshapen packet from " +
                                  std::to_string(sender));

    // Cancel every chunk the sender folded in except the receiver's own; the
    // receiver rebuilds those terms purely from its shard.
    Bytes term = pit->payload;
    for (const auto& [gap, chunk] : chunks) {
      if (gap == sender || gap == receiver) continue;
      auto copy = local_store(receiver, chunk.meta);
      if (!copy)
        throw std::logic_error("exchange precondition violated: server " +
                               std::to_string(receiver) +
                               " cannot reconstruct " + meta_str(chunk.meta));
      const int slot = slot_of(others_of(group, gap), sender);
      xor_slice(term, *copy, std::size_t(slot) * p, p);
    }
    const int own_slot = slot_of(own_others, sender);
    std::copy(term.begin(), term.end(),
              result.begin() + long(own_slot) * long(p));
  }
  return result;
}

ExchangeResult coded_exchange(const std::vector<ServerId>& group,
                              const std::map<ServerId, Chunk>& chunks,
                              const LocalStoreFn& local_store) {
  ExchangeResult er;
  er.packets = encode_group(group, chunks, local_store);
  for (ServerId r : group)
    er.decoded.emplace(r,
                       decode_chunk(group, chunks, r, er.packets, local_store));
  const std::size_t p = packet_width(group, chunks);
  for (ServerId sender : group)
    er.records.push_back(TransmissionRecord{0,
                                            TxKind::CodedMulticast,
                                            sender,
                                            others_of(group, sender),
                                            std::int64_t(8 * p),
                                            0,
                                            {}});
  return er;
}

std::vector<TransmissionRecord> run_stage1(Cluster& cluster,
                                           ShuffleMode mode) {
  const PlacementPlan& plan = *cluster.plan;
  std::vector<StageTask> tasks(plan.jobs.size());
  parallel_for(plan.jobs.size(), [&](std::size_t ji) {
    const JobPlacement& jp = plan.jobs[ji];
    const std::vector<ServerId>& group = jp.owners;
    std::map<ServerId, Chunk> chunks;
    for (ServerId gap : group) {
      AggregateMeta meta{gap, jp.job, plan.batch_of(jp.job, gap)};
      chunks.emplace(gap, make_chunk(cluster, group, gap, std::move(meta),
                                     "stage 1"));
    }
    tasks[ji] = exchange_task(cluster, mode, 1, group, chunks, jp.job, {});
  });

  std::vector<TransmissionRecord> log;
  apply_tasks(cluster, tasks, log);
  return log;
}

std::vector<TransmissionRecord> run_stage2(Cluster& cluster,
                                           ShuffleMode mode) {
  const ResolvableDesign& design = *cluster.design;
  const PlacementPlan& plan = *cluster.plan;
  const std::vector<std::vector<ServerId>> groups =
      enumerate_stage2_groups(design);

  std::vector<StageTask> tasks(groups.size());
  parallel_for(groups.size(), [&](std::size_t gi) {
    const std::vector<ServerId>& group = groups[gi];
    std::map<ServerId, Chunk> chunks;
    for (ServerId gap : group) {
      std::vector<ServerId> rest = others_of(group, gap);
      std::vector<JobId> joint = intersect_blocks(design, rest);
      if (joint.size() != 1)
        throw std::logic_error(
            "design bug: stage-2 subgroup does not own exactly one job");
      const JobId j = joint.front();
      const JobPlacement& jp = plan.job_placement(j);
      // Owners sit one per class in class order, so the gap's class indexes
      // the one owner sharing its class.
      const ServerId l = jp.owners[std::size_t(design.class_of(gap) - 1)];
      if (l == gap)
        throw std::logic_error("design bug: stage-2 gap owns its target job");
      AggregateMeta meta{gap, j, plan.batch_of(j, l)};
      chunks.emplace(gap,
                     make_chunk(cluster, rest, gap, std::move(meta),
                                "stage 2"));
    }
    tasks[gi] = exchange_task(cluster, mode, 2, group, chunks, 0, group);
  });

  std::vector<TransmissionRecord> log;
  apply_tasks(cluster, tasks, log);
  return log;
}

std::vector<TransmissionRecord> run_stage3(Cluster& cluster, ShuffleMode) {
  const ResolvableDesign& design = *cluster.design;
  const PlacementPlan& plan = *cluster.plan;

  // Whole-job unicasts between class mates, in (class, receiver, sender, job)
  // order. Identical in both modes.
  struct Unicast {
    ServerId receiver, sender;
    JobId job;
  };
  std::vector<Unicast> order;
  for (const std::vector<ServerId>& cls : design.classes)
    for (ServerId receiver : cls)
      for (ServerId sender : cls) {
        if (sender == receiver) continue;
        for (JobId j : design.block_of(sender).points)
          order.push_back(Unicast{receiver, sender, j});
      }

  std::vector<StageTask> tasks(order.size());
  parallel_for(order.size(), [&](std::size_t ti) {
    const Unicast& u = order[ti];
    AggregateMeta meta{u.receiver, u.job, plan.stored_subfiles(u.sender, u.job)};
    auto bytes = cluster.local_aggregate(u.sender, meta);
    if (!bytes)
      throw std::logic_error("placement bug: stage-3 sender cannot aggregate " +
                             meta_str(meta));
    tasks[ti].records.push_back(TransmissionRecord{
        3, TxKind::UncodedUnicast, u.sender, {u.receiver},
        std::int64_t(8 * bytes->size()), u.job, {}});
    tasks[ti].deliveries.push_back(
        Delivery{u.receiver, std::move(meta), std::move(*bytes)});
  });

  std::vector<TransmissionRecord> log;
  apply_tasks(cluster, tasks, log);
  return log;
}

std::vector<TransmissionRecord> run_shuffle(Cluster& cluster,
                                            ShuffleMode mode) {
  std::vector<TransmissionRecord> log = run_stage1(cluster, mode);
  std::vector<TransmissionRecord> s2 = run_stage2(cluster, mode);
  std::vector<TransmissionRecord> s3 = run_stage3(cluster, mode);
  log.insert(log.end(), std::make_move_iterator(s2.begin()),
             std::make_move_iterator(s2.end()));
  log.insert(log.end(), std::make_move_iterator(s3.begin()),
             std::make_move_iterator(s3.end()));
  return log;
}

std::map<std::pair<int, JobId>, AggregateValue> reduce_all(
    const Cluster& cluster) {
  const PlacementPlan& plan = *cluster.plan;
  const int K = int(cluster.servers.size());
  const int N = plan.subfiles_per_job;

  std::map<std::pair<int, JobId>, AggregateValue> out;
  for (int m = 1; m <= K; ++m) {
    const ServerState& state = cluster.server(m);
    for (const JobPlacement& jp : plan.jobs) {
      std::vector<AggregateValue> pieces;
      const bool owner =
          std::find(jp.owners.begin(), jp.owners.end(), m) != jp.owners.end();
      if (owner) {
        for (const auto& [label, subfiles] : jp.batches) {
          if (label == m) continue;
          AggregateMeta meta{m, jp.job, subfiles};
          auto bytes = cluster.local_aggregate(m, meta);
          if (!bytes)
            throw std::logic_error("placement bug: owner cannot aggregate " +
                                   meta_str(meta));
          pieces.push_back(
              AggregateValue{m, jp.job, subfiles, std::move(*bytes)});
        }
      }
      for (auto& [meta, bytes] : state.inbox.for_func_job(m, jp.job))
        pieces.push_back(AggregateValue{m, jp.job, meta.subfiles, bytes});

      AggregateValue total = aggregate(cluster.agg, pieces);
      if (int(total.subfiles.size()) != N)
        throw std::logic_error(
            "protocol bug: reduce pieces do not cover job " +
            std::to_string(jp.job) + " for function " + std::to_string(m));
      out.emplace(std::make_pair(m, jp.job), std::move(total));
    }
  }
  return out;
}

}  // namespace camr
