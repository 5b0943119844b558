#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "camr/jobs.hpp"
#include "camr/rng.hpp"

using namespace camr;

namespace {

ResolvableDesign design_for(int q, int k) {
  DesignParams p;
  p.q = q;
  p.k = k;
  return build_design(p);
}

// independent tokenizer: stream extraction instead of manual splitting
std::uint64_t oracle_count(const std::string& payload,
                           const std::string& word) {
  std::istringstream in(payload);
  std::string token;
  std::uint64_t count = 0;
  while (in >> token)
    if (token == word) ++count;
  return count;
}

bool same_corpus(const std::vector<JobSpec>& a, const std::vector<JobSpec>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].job != b[i].job || a[i].vocabulary != b[i].vocabulary ||
        a[i].subfile_payloads != b[i].subfile_payloads)
      return false;
  return true;
}

}  // namespace

TEST_CASE("corpus generation is deterministic in the seed") {
  const auto design = design_for(2, 3);
  const auto plan = place(design, 2);
  const auto a = generate_corpus(42, design, plan, 8);
  const auto b = generate_corpus(42, design, plan, 8);
  CHECK(same_corpus(a, b));
  const auto c = generate_corpus(43, design, plan, 8);
  CHECK(!same_corpus(a, c));
}

TEST_CASE("map counts agree with an independent tokenizer") {
  const auto design = design_for(2, 3);
  const auto plan = place(design, 2);
  const auto corpus = generate_corpus(5, design, plan, 8);
  REQUIRE(corpus.size() == 4);
  for (const JobSpec& spec : corpus) {
    REQUIRE(spec.vocabulary.size() == 6);
    for (int n = 1; n <= (int)spec.subfile_payloads.size(); ++n) {
      const auto values = map_subfile(spec, n);
      REQUIRE(values.size() == spec.vocabulary.size());
      for (const IntermediateValue& v : values) {
        CHECK(v.job == spec.job);
        CHECK(v.subfile == n);
        CHECK(v.value ==
              oracle_count(spec.subfile_payloads[std::size_t(n - 1)],
                           spec.vocabulary[std::size_t(v.func - 1)]));
      }
    }
  }
}

TEST_CASE("map_subfile counts a hand-written payload") {
  JobSpec spec;
  spec.job = 1;
  spec.vocabulary = {"a", "b"};
  spec.subfile_payloads = {"a b a", "", "a z9 b z0 a  a"};
  auto v = map_subfile(spec, 1);
  CHECK(v[0].value == 2);
  CHECK(v[1].value == 1);
  v = map_subfile(spec, 2);
  CHECK(v[0].value == 0);
  CHECK(v[1].value == 0);
  v = map_subfile(spec, 3);
  CHECK(v[0].value == 3);
  CHECK(v[1].value == 1);
  CHECK_THROWS_AS(map_subfile(spec, 0), std::invalid_argument);
  CHECK_THROWS_AS(map_subfile(spec, 4), std::invalid_argument);
}

TEST_CASE("sum aggregation of two values keeps the fixed width") {
  const Aggregator agg = make_sum_aggregator(8);
  const AggregateValue a =
      lift(agg, IntermediateValue{1, 1, 1, 3});
  const AggregateValue b =
      lift(agg, IntermediateValue{1, 1, 2, 4});
  const AggregateValue sum = aggregate(agg, std::vector<AggregateValue>{a, b});
  CHECK(sum.subfiles == std::vector<int>{1, 2});
  CHECK((int)sum.bytes.size() == 8);
  CHECK(agg.decode(sum.bytes) == 7);
}

TEST_CASE("aggregate is order-independent") {
  SplitMix64 rng{99};
  for (int width : {1, 2, 3, 8, 9, 16}) {
    for (const auto& agg :
         {make_sum_aggregator(width), make_max_aggregator(width)}) {
      std::vector<AggregateValue> values;
      for (int n = 1; n <= 6; ++n) {
        IntermediateValue v{2, 5, n, uniform_below(rng, 200)};
        values.push_back(lift(agg, v));
      }
      const AggregateValue want = aggregate(agg, values);
      for (int trial = 0; trial < 20; ++trial) {
        shuffle_vec(values, rng);
        const AggregateValue got = aggregate(agg, values);
        CHECK(got.bytes == want.bytes);
        CHECK(got.subfiles == want.subfiles);
      }
    }
  }
}

TEST_CASE("combiners are associative and commutative at the byte level") {
  SplitMix64 rng{123};
  int cases = 0;
  while (cases < 500) {
    const int width = 1 + int(uniform_below(rng, 16));
    for (const auto& agg :
         {make_sum_aggregator(width), make_max_aggregator(width)}) {
      const std::size_t w = std::size_t(width);
      Bytes a(w), b(w), c(w);
      for (int i = 0; i < width; ++i) {
        a[std::size_t(i)] = std::uint8_t(rng.next());
        b[std::size_t(i)] = std::uint8_t(rng.next());
        c[std::size_t(i)] = std::uint8_t(rng.next());
      }
      Bytes left = a;
      agg.combine_inplace(left, b);
      agg.combine_inplace(left, c);
      Bytes right_inner = b;
      agg.combine_inplace(right_inner, c);
      Bytes right = a;
      agg.combine_inplace(right, right_inner);
      CHECK(left == right);

      Bytes ab = a, ba = b;
      agg.combine_inplace(ab, b);
      agg.combine_inplace(ba, a);
      CHECK(ab == ba);
      ++cases;
    }
  }
}

TEST_CASE("aggregate rejects mismatched inputs") {
  const Aggregator agg = make_sum_aggregator(8);
  const AggregateValue a = lift(agg, IntermediateValue{1, 1, 1, 3});
  const AggregateValue other_func = lift(agg, IntermediateValue{2, 1, 2, 3});
  const AggregateValue other_job = lift(agg, IntermediateValue{1, 2, 2, 3});
  const AggregateValue overlap = lift(agg, IntermediateValue{1, 1, 1, 5});
  CHECK_THROWS_AS(
      aggregate(agg, std::vector<AggregateValue>{a, other_func}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      aggregate(agg, std::vector<AggregateValue>{a, other_job}),
      std::invalid_argument);
  CHECK_THROWS_AS(aggregate(agg, std::vector<AggregateValue>{a, overlap}),
                  std::invalid_argument);
  CHECK_THROWS_AS(aggregate(agg, std::vector<AggregateValue>{}),
                  std::invalid_argument);
}

TEST_CASE("whole-job aggregate equals the centralized oracle") {
  const auto design = design_for(3, 3);
  const auto plan = place(design, 2);
  const Aggregator agg = make_sum_aggregator(8);
  const auto corpus = generate_corpus(17, design, plan, 8);
  const auto truth = oracle_reduce(agg, corpus);
  REQUIRE(truth.size() ==
          std::size_t(design.server_count()) * corpus.size());

  for (const JobSpec& spec : corpus) {
    for (int func = 1; func <= (int)spec.vocabulary.size(); ++func) {
      std::vector<IntermediateValue> all;
      std::uint64_t direct = 0;
      for (int n = 1; n <= (int)spec.subfile_payloads.size(); ++n) {
        all.push_back(map_subfile(spec, n)[std::size_t(func - 1)]);
        direct += oracle_count(spec.subfile_payloads[std::size_t(n - 1)],
                               spec.vocabulary[std::size_t(func - 1)]);
      }
      const AggregateValue got = aggregate(agg, all);
      const AggregateValue& want = truth.at({func, spec.job});
      CHECK(got == want);
      CHECK(agg.decode(got.bytes) == direct);
    }
  }
}

TEST_CASE("corpus guards reject unusable widths") {
  const auto design3 = design_for(2, 3);
  const auto plan3 = place(design3, 2);
  // k-1 = 2 must divide the width
  CHECK_THROWS_AS(generate_corpus(0, design3, plan3, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_corpus(0, design3, plan3, 0),
                  std::invalid_argument);
  CHECK_NOTHROW(generate_corpus(0, design3, plan3, 2));

  // width 1 with 60 subfiles per job cannot hold a whole-job count
  const auto design2 = design_for(2, 2);
  const auto plan2 = place(design2, 30);
  CHECK_THROWS_AS(generate_corpus(0, design2, plan2, 1),
                  std::invalid_argument);
  CHECK_NOTHROW(generate_corpus(0, design2, plan2, 2));
}

TEST_CASE("per-subfile counts stay under the per-word bound") {
  const auto design = design_for(2, 3);
  const auto plan = place(design, 2);
  const CorpusOptions opts;
  const auto corpus = generate_corpus(3, design, plan, 8, opts);
  for (const JobSpec& spec : corpus)
    for (int n = 1; n <= (int)spec.subfile_payloads.size(); ++n)
      for (const IntermediateValue& v : map_subfile(spec, n))
        CHECK(v.value <= std::uint64_t(opts.max_count_per_word));
}

TEST_CASE("max aggregator takes numeric maxima") {
  const Aggregator agg = make_max_aggregator(2);
  const AggregateValue a = lift(agg, IntermediateValue{1, 1, 1, 300});
  const AggregateValue b = lift(agg, IntermediateValue{1, 1, 2, 299});
  const AggregateValue m = aggregate(agg, std::vector<AggregateValue>{a, b});
  CHECK(agg.decode(m.bytes) == 300);
}
