#pragma once

#include <vector>

namespace camr {

using ServerId = int;  // 1..K
using JobId = int;     // 1..J, jobs are the points of the design

// Parameters of the (k, k-1) single-parity-check code over Z_q that the
// design is built from. q need not be prime; everything is mod-q integer
// arithmetic. K = k*q servers, J = q^(k-1) jobs.
struct DesignParams {
  int q = 2;  // alphabet size; blocks per parallel class
  int k = 2;  // code length; number of parallel classes

  // fail-fast guard on the point count, the simulator allocates per-point state
  long long point_ceiling = 1'000'000;

  int server_count() const { return k * q; }
  long long job_count() const;  // q^(k-1), validated against the ceiling

  void validate() const;  // throws std::invalid_argument naming the violation
};

// The k x q^(k-1) matrix whose columns are the SPC codewords: column j is
// the message digits of j-1 (lexicographic order, most significant first)
// followed by their mod-q sum.
struct CodewordMatrix {
  int q = 0;
  int k = 0;
  std::vector<std::vector<int>> rows;  // k rows, each q^(k-1) symbols

  long long columns() const { return rows.empty() ? 0 : (long long)rows[0].size(); }
  int symbol(int row, JobId col) const { return rows[row - 1][col - 1]; }
};

// Block B_{i,l}: the points whose row-i symbol equals l. Also the storage
// footprint of one server.
struct Block {
  ServerId server = 0;
  int class_index = 0;         // i, 1..k
  int symbol = 0;              // l, 0..q-1
  std::vector<JobId> points;   // ascending, size q^(k-2)
};

// Resolvable design (X, A): k*q blocks arranged in k parallel classes, each
// class partitioning the point set [q^(k-1)]. Server U_s maps to block
// B_{ceil(s/q), (s-1) mod q}; that convention is the one all user-visible
// output round-trips through.
struct ResolvableDesign {
  DesignParams params;
  CodewordMatrix matrix;
  std::vector<Block> blocks;                    // index s-1 for server s
  std::vector<std::vector<ServerId>> classes;   // k classes of q servers

  int server_count() const { return params.server_count(); }
  long long job_count() const { return matrix.columns(); }

  const Block& block_of(ServerId s) const;
  int class_of(ServerId s) const { return (s - 1) / params.q + 1; }
  int symbol_of(ServerId s) const { return (s - 1) % params.q; }
  ServerId server_for(int class_index, int symbol) const {
    return (class_index - 1) * params.q + symbol + 1;
  }
  bool server_has_point(ServerId s, JobId j) const;
};

CodewordMatrix build_spc_matrix(const DesignParams& params);

ResolvableDesign build_design(const DesignParams& params);

// The k servers storing job j, exactly one per parallel class, ascending.
std::vector<ServerId> owners_of_job(const ResolvableDesign& design, JobId j);

// Exact intersection of the chosen servers' blocks. The servers must come
// from pairwise distinct parallel classes.
std::vector<JobId> intersect_blocks(const ResolvableDesign& design,
                                    const std::vector<ServerId>& servers);

// All k-tuples (one server per class, class order 1..k) whose blocks have
// empty intersection, i.e. whose symbol tuple violates the parity relation.
// Lexicographic by symbol tuple; exactly q^(k-1)*(q-1) of them.
std::vector<std::vector<ServerId>> enumerate_stage2_groups(
    const ResolvableDesign& design);

}  // namespace camr
