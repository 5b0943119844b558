#include "camr/jobs.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "camr/rng.hpp"

namespace camr {

Aggregator make_sum_aggregator(int value_bytes) {
  Aggregator a;
  a.value_bytes = value_bytes;
  a.name = "sum";
  a.combine_inplace = [](Bytes& acc, const Bytes& v) { add_be_inplace(acc, v); };
  return a;
}

Aggregator make_max_aggregator(int value_bytes) {
  Aggregator a;
  a.value_bytes = value_bytes;
  a.name = "max";
  a.combine_inplace = [](Bytes& acc, const Bytes& v) { max_be_inplace(acc, v); };
  return a;
}

static std::uint64_t value_cap(int value_bytes, int subfiles_per_job) {
  // largest per-subfile value such that N of them summed stay below 2^(8w)
  if (value_bytes >= 8) return ~std::uint64_t(0) / std::uint64_t(subfiles_per_job);
  std::uint64_t width_max = (std::uint64_t(1) << (8 * value_bytes)) - 1;
  return width_max / std::uint64_t(subfiles_per_job);
}

std::vector<JobSpec> generate_corpus(std::uint64_t seed,
                                     const ResolvableDesign& design,
                                     const PlacementPlan& plan, int value_bytes,
                                     const CorpusOptions& opts) {
  const int k = design.params.k;
  const int Q = design.server_count();
  const int N = plan.subfiles_per_job;
  const long long J = design.job_count();

  if (value_bytes < 1)
    throw std::invalid_argument("corpus: value_bytes must be >= 1");
  if (value_bytes % (k - 1) != 0)
    throw std::invalid_argument("corpus: value_bytes (" +
                                std::to_string(value_bytes) +
                                ") must be divisible by k-1 (" +
                                std::to_string(k - 1) + ")");
  if (opts.max_count_per_word < 1)
    throw std::invalid_argument("corpus: max_count_per_word must be >= 1");
  if (std::uint64_t(opts.max_count_per_word) > value_cap(value_bytes, N))
    throw std::invalid_argument(
        "corpus: value_bytes too small for max_count_per_word " +
        std::to_string(opts.max_count_per_word) + " over " + std::to_string(N) +
        " subfiles");

  std::vector<JobSpec> specs;
  specs.reserve(std::size_t(J));
  for (JobId j = 1; j <= J; ++j) {
    JobSpec spec;
    spec.job = j;
    spec.vocabulary.reserve(std::size_t(Q));
    for (int q = 1; q <= Q; ++q)
      spec.vocabulary.push_back("w" + std::to_string(q) + "j" + std::to_string(j));

    spec.subfile_payloads.reserve(std::size_t(N));
    for (int n = 1; n <= N; ++n) {
      // independent stream per (seed, job, subfile)
      SplitMix64 rng{mix64(mix64(seed ^ std::uint64_t(j)) ^ std::uint64_t(n))};
      std::vector<std::string> tokens;
      for (int q = 1; q <= Q; ++q) {
        auto count = uniform_below(rng, std::uint64_t(opts.max_count_per_word) + 1);
        for (std::uint64_t c = 0; c < count; ++c)
          tokens.push_back(spec.vocabulary[std::size_t(q - 1)]);
      }
      auto fillers = uniform_below(rng, std::uint64_t(opts.max_filler_tokens) + 1);
      for (std::uint64_t f = 0; f < fillers; ++f)
        tokens.push_back("z" + std::to_string(uniform_below(rng, 10)));
      shuffle_vec(tokens, rng);

      std::string payload;
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        if (t) payload.push_back(' ');
        payload += tokens[t];
      }
      spec.subfile_payloads.push_back(std::move(payload));
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<IntermediateValue> map_subfile(const JobSpec& spec, int subfile) {
  const int N = int(spec.subfile_payloads.size());
  if (subfile < 1 || subfile > N)
    throw std::invalid_argument("map: subfile " + std::to_string(subfile) +
                                " out of range 1.." + std::to_string(N));
  std::unordered_map<std::string, int> index;  // word -> function index
  for (std::size_t q = 0; q < spec.vocabulary.size(); ++q)
    index.emplace(spec.vocabulary[q], int(q) + 1);

  std::vector<std::uint64_t> counts(spec.vocabulary.size(), 0);
  const std::string& payload = spec.subfile_payloads[std::size_t(subfile - 1)];
  std::size_t pos = 0;
  while (pos < payload.size()) {
    std::size_t end = payload.find(' ', pos);
    if (end == std::string::npos) end = payload.size();
    if (end > pos) {
      auto it = index.find(payload.substr(pos, end - pos));
      if (it != index.end()) ++counts[std::size_t(it->second - 1)];
    }
    pos = end + 1;
  }

  std::vector<IntermediateValue> out;
  out.reserve(counts.size());
  for (std::size_t q = 0; q < counts.size(); ++q)
    out.push_back(IntermediateValue{int(q) + 1, spec.job, subfile, counts[q]});
  return out;
}

AggregateValue lift(const Aggregator& agg, const IntermediateValue& v) {
  AggregateValue a;
  a.func = v.func;
  a.job = v.job;
  a.subfiles = {v.subfile};
  a.bytes = agg.encode(v.value);
  return a;
}

AggregateValue aggregate(const Aggregator& agg,
                         std::span<const AggregateValue> values) {
  if (values.empty())
    throw std::invalid_argument("aggregate: no values given");
  AggregateValue out;
  out.func = values.front().func;
  out.job = values.front().job;
  out.bytes = agg.identity();
  for (const AggregateValue& v : values) {
    if (v.func != out.func || v.job != out.job)
      throw std::invalid_argument("aggregate: mixed (function, job) inputs");
    if (int(v.bytes.size()) != agg.value_bytes)
      throw std::invalid_argument("aggregate: value width mismatch");
    for (int n : v.subfiles)
      if (std::binary_search(out.subfiles.begin(), out.subfiles.end(), n))
        throw std::invalid_argument("aggregate: overlapping subfile sets at " +
                                    std::to_string(n));
    std::vector<int> merged;
    std::merge(out.subfiles.begin(), out.subfiles.end(), v.subfiles.begin(),
               v.subfiles.end(), std::back_inserter(merged));
    out.subfiles.swap(merged);
    agg.combine_inplace(out.bytes, v.bytes);
  }
  return out;
}

AggregateValue aggregate(const Aggregator& agg,
                         std::span<const IntermediateValue> values) {
  std::vector<AggregateValue> lifted;
  lifted.reserve(values.size());
  for (const IntermediateValue& v : values) lifted.push_back(lift(agg, v));
  return aggregate(agg, lifted);
}

std::map<std::pair<int, JobId>, AggregateValue> oracle_reduce(
    const Aggregator& agg, const std::vector<JobSpec>& specs) {
  std::map<std::pair<int, JobId>, AggregateValue> truth;
  for (const JobSpec& spec : specs) {
    const int N = int(spec.subfile_payloads.size());
    std::vector<std::vector<AggregateValue>> per_func(spec.vocabulary.size());
    for (int n = 1; n <= N; ++n)
      for (const IntermediateValue& v : map_subfile(spec, n))
        per_func[std::size_t(v.func - 1)].push_back(lift(agg, v));
    for (std::size_t q = 0; q < per_func.size(); ++q)
      truth.emplace(std::make_pair(int(q) + 1, spec.job),
                    aggregate(agg, per_func[q]));
  }
  return truth;
}

}  // namespace camr
