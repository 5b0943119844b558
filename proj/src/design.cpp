#include "camr/design.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace camr {

long long DesignParams::job_count() const {
  long long j = 1;
  for (int i = 0; i < k - 1; ++i) {
    j *= q;
    if (j > point_ceiling) return j;  // caller validates
  }
  return j;
}

void DesignParams::validate() const {
  if (q < 2)
    throw std::invalid_argument("design: q must be >= 2 (got " +
                                std::to_string(q) + ")");
  if (k < 2)
    throw std::invalid_argument("design: k must be >= 2 (got " +
                                std::to_string(k) + ")");
  if (point_ceiling < 1)
    throw std::invalid_argument("design: point ceiling must be >= 1");
  long long j = 1;
  for (int i = 0; i < k - 1; ++i) {
    j *= q;
    if (j > point_ceiling)
      throw std::invalid_argument(
          "design: point count q^(k-1) exceeds the ceiling of " +
          std::to_string(point_ceiling) + " (q=" + std::to_string(q) +
          ", k=" + std::to_string(k) + ")");
  }
}

CodewordMatrix build_spc_matrix(const DesignParams& params) {
  params.validate();
  const int q = params.q;
  const int k = params.k;
  const long long cols = params.job_count();

  CodewordMatrix m;
  m.q = q;
  m.k = k;
  m.rows.assign(std::size_t(k), std::vector<int>(std::size_t(cols), 0));

  // column j carries the codeword of message number j-1: its base-q digits,
  // most significant first, then the parity symbol
  for (long long c = 0; c < cols; ++c) {
    long long rem = c;
    int parity = 0;
    for (int i = k - 2; i >= 0; --i) {
      int digit = int(rem % q);
      rem /= q;
      m.rows[std::size_t(i)][std::size_t(c)] = digit;
      parity = (parity + digit) % q;
    }
    m.rows[std::size_t(k - 1)][std::size_t(c)] = parity;
  }
  return m;
}

const Block& ResolvableDesign::block_of(ServerId s) const {
  if (s < 1 || s > server_count())
    throw std::invalid_argument("design: server id " + std::to_string(s) +
                                " out of range 1.." +
                                std::to_string(server_count()));
  return blocks[std::size_t(s - 1)];
}

bool ResolvableDesign::server_has_point(ServerId s, JobId j) const {
  return matrix.symbol(class_of(s), j) == symbol_of(s);
}

ResolvableDesign build_design(const DesignParams& params) {
  ResolvableDesign d;
  d.params = params;
  d.matrix = build_spc_matrix(params);

  const int q = params.q;
  const int k = params.k;
  const long long cols = d.matrix.columns();

  d.blocks.resize(std::size_t(k) * std::size_t(q));
  for (int i = 1; i <= k; ++i) {
    for (int l = 0; l < q; ++l) {
      Block& b = d.blocks[std::size_t((i - 1) * q + l)];
      b.server = d.server_for(i, l);
      b.class_index = i;
      b.symbol = l;
    }
  }
  for (long long j = 1; j <= cols; ++j) {
    for (int i = 1; i <= k; ++i) {
      int l = d.matrix.symbol(i, JobId(j));
      d.blocks[std::size_t((i - 1) * q + l)].points.push_back(JobId(j));
    }
  }

  d.classes.resize(std::size_t(k));
  for (int i = 1; i <= k; ++i) {
    auto& cls = d.classes[std::size_t(i - 1)];
    cls.reserve(std::size_t(q));
    for (int l = 0; l < q; ++l) cls.push_back(d.server_for(i, l));
  }
  return d;
}

std::vector<ServerId> owners_of_job(const ResolvableDesign& design, JobId j) {
  if (j < 1 || j > design.job_count())
    throw std::invalid_argument("design: job id " + std::to_string(j) +
                                " out of range 1.." +
                                std::to_string(design.job_count()));
  std::vector<ServerId> owners;
  owners.reserve(std::size_t(design.params.k));
  // one server per class; ascending class order is ascending server order
  for (int i = 1; i <= design.params.k; ++i)
    owners.push_back(design.server_for(i, design.matrix.symbol(i, j)));
  return owners;
}

std::vector<JobId> intersect_blocks(const ResolvableDesign& design,
                                    const std::vector<ServerId>& servers) {
  if (servers.empty())
    throw std::invalid_argument("intersect_blocks: no servers given");
  std::vector<bool> class_seen(std::size_t(design.params.k) + 1, false);
  for (ServerId s : servers) {
    design.block_of(s);  // range check
    int c = design.class_of(s);
    if (class_seen[std::size_t(c)])
      throw std::invalid_argument(
          "intersect_blocks: two servers from parallel class " +
          std::to_string(c));
    class_seen[std::size_t(c)] = true;
  }
  std::vector<JobId> result = design.block_of(servers.front()).points;
  for (std::size_t i = 1; i < servers.size() && !result.empty(); ++i) {
    const auto& pts = design.block_of(servers[i]).points;
    std::vector<JobId> next;
    std::set_intersection(result.begin(), result.end(), pts.begin(), pts.end(),
                          std::back_inserter(next));
    result.swap(next);
  }
  return result;
}

std::vector<std::vector<ServerId>> enumerate_stage2_groups(
    const ResolvableDesign& design) {
  const int q = design.params.q;
  const int k = design.params.k;
  std::vector<std::vector<ServerId>> groups;
  groups.reserve(std::size_t(design.job_count()) * std::size_t(q - 1));

  // walk symbol tuples (l_1..l_k) in lexicographic order; keep the ones that
  // break the parity relation (those are exactly the empty intersections)
  std::vector<int> symbols(std::size_t(k), 0);
  while (true) {
    int parity = 0;
    for (int i = 0; i < k - 1; ++i) parity = (parity + symbols[std::size_t(i)]) % q;
    if (symbols[std::size_t(k - 1)] != parity) {
      std::vector<ServerId> g;
      g.reserve(std::size_t(k));
      for (int i = 1; i <= k; ++i)
        g.push_back(design.server_for(i, symbols[std::size_t(i - 1)]));
      groups.push_back(std::move(g));
    }
    int pos = k - 1;
    while (pos >= 0 && symbols[std::size_t(pos)] == q - 1) {
      symbols[std::size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++symbols[std::size_t(pos)];
  }
  return groups;
}

}  // namespace camr
