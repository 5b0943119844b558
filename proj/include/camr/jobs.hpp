#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "camr/bytes.hpp"
#include "camr/placement.hpp"

namespace camr {

// One job's synthetic word-count workload: Q target words and N text chunks.
struct JobSpec {
  JobId job = 0;
  std::vector<std::string> vocabulary;        // Q words, index q-1
  std::vector<std::string> subfile_payloads;  // N chunks, index n-1
};

// Map output: occurrences of word `func` in subfile n of `job`. The value is
// always < 2^(8*value_bytes)/N so that whole-job sums never wrap.
struct IntermediateValue {
  int func = 0;  // 1..Q
  JobId job = 0;
  int subfile = 0;  // 1..N
  std::uint64_t value = 0;
};

// A merged value: fixed width no matter how many inputs went in. That fixed
// width is what the shuffle trades on.
struct AggregateValue {
  int func = 0;
  JobId job = 0;
  std::vector<int> subfiles;  // sorted, disjoint union of the inputs
  Bytes bytes;                // exactly value_bytes wide

  bool operator==(const AggregateValue&) const = default;
};

// Associative + commutative combiner over fixed-width byte strings, plus the
// encoding between counts and bytes. The default is mod-2^(8w) addition; any
// combiner with the same laws fits behind this interface.
struct Aggregator {
  int value_bytes = 8;
  std::string name = "sum";
  std::function<void(Bytes&, const Bytes&)> combine_inplace;

  Bytes identity() const { return Bytes(std::size_t(value_bytes), 0); }
  Bytes encode(std::uint64_t v) const { return encode_be(v, value_bytes); }
  std::uint64_t decode(const Bytes& b) const { return decode_be(b); }
};

Aggregator make_sum_aggregator(int value_bytes);
Aggregator make_max_aggregator(int value_bytes);

struct CorpusOptions {
  int max_count_per_word = 9;  // per-subfile occurrence bound for each word
  int max_filler_tokens = 6;   // noise tokens outside the vocabulary
};

// Deterministic synthetic corpora: same seed and parameters give byte-equal
// JobSpecs on every platform. value_bytes must be divisible by k-1 (packet
// splitting) and wide enough that a full job's count cannot wrap.
std::vector<JobSpec> generate_corpus(std::uint64_t seed,
                                     const ResolvableDesign& design,
                                     const PlacementPlan& plan, int value_bytes,
                                     const CorpusOptions& opts = {});

// counts of every vocabulary word in subfile n
std::vector<IntermediateValue> map_subfile(const JobSpec& spec, int subfile);

AggregateValue lift(const Aggregator& agg, const IntermediateValue& v);

// Merge values of the same (func, job) with pairwise disjoint subfile sets.
// Order-independent by the aggregator laws.
AggregateValue aggregate(const Aggregator& agg,
                         std::span<const AggregateValue> values);
AggregateValue aggregate(const Aggregator& agg,
                         std::span<const IntermediateValue> values);

// Centralized ground truth: per (func, job), the aggregate over all N map
// outputs, computed with no placement and no shuffle.
std::map<std::pair<int, JobId>, AggregateValue> oracle_reduce(
    const Aggregator& agg, const std::vector<JobSpec>& specs);

}  // namespace camr
