#pragma once

// Construction of the sparse orthogonal factors, level by level.
//
// Factor i (level i -> level i+1 coordinates) is built from factor i-1 in
// two steps.  First the Jucys-Murphy operator J_{i+1} is expressed in the
// level-i basis through the recurrences
//
//   [J_{i+1}] = ([s_i][J_i] + I)[s_i],   [s_i]_i = Q^T [s_i]_{i-1} Q
//
// where Q is factor i-1 read as a change of basis, [s_i]_{i-1} is the
// permutation swapping the first two suffix letters, and [J_i] is diagonal
// with the tableau box contents.  Everything is block-diagonal over the
// coarse keys (blocks of size <= 4), so the work per block is constant.
// Second, each size-<=2 fine block of [J_{i+1}] is diagonalized with its
// exact integer eigenvalues i-a and a-1 (no numerical eigensolver), and the
// normalized eigenvectors become the rows of factor i.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jfft/combinatorics.hpp"
#include "jfft/factor.hpp"

namespace jfft {

/// serialized label -> canonical position, for one level table.
inline std::unordered_map<std::string, int> label_index(const std::vector<BasisLabel>& labels, int n) {
  std::unordered_map<std::string, int> idx;
  idx.reserve(labels.size() * 2);
  for (size_t j = 0; j < labels.size(); ++j) idx.emplace(serialize_label(labels[j], n), static_cast<int>(j));
  return idx;
}

/// Permutation induced by swapping the first two suffix letters; an
/// involution that fixes labels whose first two letters agree.
inline std::vector<int> adjacent_swap_perm(const std::vector<BasisLabel>& labels, int n) {
  auto idx = label_index(labels, n);
  std::vector<int> perm(labels.size());
  for (size_t j = 0; j < labels.size(); ++j) {
    const auto& lab = labels[j];
    if (lab.suffix.size() < 2) throw std::invalid_argument("adjacent_swap_perm: suffix shorter than 2");
    if (lab.suffix[0] == lab.suffix[1]) {
      perm[j] = static_cast<int>(j);
      continue;
    }
    BasisLabel swapped = lab;
    std::swap(swapped.suffix[0], swapped.suffix[1]);
    perm[j] = idx.at(serialize_label(swapped, n));
  }
  return perm;
}

/// Diagonal of the level's own Jucys-Murphy operator: the content of the
/// last tableau box, per label.
inline std::vector<double> jm_diagonal(const std::vector<BasisLabel>& labels) {
  std::vector<double> d(labels.size());
  for (size_t j = 0; j < labels.size(); ++j) d[j] = labels[j].tableau.last_content();
  return d;
}

/// For each upper-level label, its expansion over lower-level labels:
/// the rows of a factor as (column index, entry) lists.
inline std::vector<std::vector<std::pair<int, double>>> row_expansion(const SparseOrthFactor& f) {
  std::vector<std::vector<std::pair<int, double>>> rows(static_cast<size_t>(f.dim));
  for (const auto& b : f.blocks)
    for (int r = 0; r < b.nrows; ++r)
      for (int c = 0; c < b.ncols; ++c)
        rows[static_cast<size_t>(b.rows[static_cast<size_t>(r)])].emplace_back(
            b.cols[static_cast<size_t>(c)], b.at(r, c));
  return rows;
}

/// Symmetric blocks of J_{i+1} over the level-i basis, grouped by the coarse
/// block key.  Blocks hold global column indices in canonical order.
struct JmBlock {
  int size = 0;
  std::array<int, 4> cols{};
  std::array<double, 16> m{};  // size x size row-major

  double at(int r, int c) const { return m[static_cast<size_t>(r * size + c)]; }
};

struct JmBlockMatrix {
  int level = 0;  // expresses J_{level+1} in level coordinates
  std::vector<JmBlock> blocks;
};

/// First construction step: [J_{i+1}] in level-i coordinates, given the
/// expansion of level-i basis vectors over level i-1 (factor i-1, or the
/// word reindexing when i = 1).
inline JmBlockMatrix jm_next_blocks(int n, int i,
                                    const std::vector<BasisLabel>& lower,
                                    const std::vector<BasisLabel>& mid,
                                    const std::vector<std::vector<std::pair<int, double>>>& expansion,
                                    OpCounter* counter = nullptr) {
  if (i < 1 || i > n - 1) throw std::invalid_argument("jm_next_blocks: need 1 <= i <= n-1");
  JmBlockMatrix out;
  out.level = i;

  std::unordered_map<std::string, int> block_of_key;
  std::vector<std::vector<int>> block_cols;
  for (size_t j = 0; j < mid.size(); ++j) {
    BlockKey key = block_key_j(mid[j], i, n);
    auto [it, fresh] = block_of_key.emplace(key, static_cast<int>(block_cols.size()));
    if (fresh) block_cols.emplace_back();
    block_cols[static_cast<size_t>(it->second)].push_back(static_cast<int>(j));
  }
  std::vector<std::vector<int>> block_rows(block_cols.size());
  for (size_t j = 0; j < lower.size(); ++j) {
    BlockKey key = block_key_j(lower[j], i, n);
    auto it = block_of_key.find(key);
    if (it == block_of_key.end())
      throw ConstructionError("jm_next_blocks: lower label in no block: " + serialize_label(lower[j], n));
    block_rows[static_cast<size_t>(it->second)].push_back(static_cast<int>(j));
  }

  auto sperm = adjacent_swap_perm(lower, n);
  std::uint64_t ops = 0;
  out.blocks.reserve(block_cols.size());

  for (size_t bi = 0; bi < block_cols.size(); ++bi) {
    const auto& cols = block_cols[bi];
    const auto& rows = block_rows[bi];
    int m = static_cast<int>(cols.size());
    if (m == 0 || m > 4 || static_cast<int>(rows.size()) != m)
      throw ConstructionError("jm_next_blocks: block with mismatched dimensions");

    auto local_row = [&](int global) {
      for (int r = 0; r < m; ++r)
        if (rows[static_cast<size_t>(r)] == global) return r;
      return -1;
    };

    // Q = factor i-1 restricted to the block, rows lower x cols mid.
    std::array<double, 16> q{};
    for (int c = 0; c < m; ++c) {
      for (auto [parent, coeff] : expansion[static_cast<size_t>(cols[static_cast<size_t>(c)])]) {
        int r = local_row(parent);
        if (r < 0) throw ConstructionError("jm_next_blocks: expansion escapes its block");
        q[static_cast<size_t>(r * m + c)] = coeff;
      }
    }

    // PQ: rows of Q permuted by the swap (a reindex, not counted).
    std::array<double, 16> pq{};
    for (int r = 0; r < m; ++r) {
      int pr = local_row(sperm[static_cast<size_t>(rows[static_cast<size_t>(r)])]);
      if (pr < 0) throw ConstructionError("jm_next_blocks: swap escapes its block");
      for (int c = 0; c < m; ++c) pq[static_cast<size_t>(r * m + c)] = q[static_cast<size_t>(pr * m + c)];
    }

    // S = Q^T (PQ), the swap in level-i coordinates.
    std::array<double, 16> s{};
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        double acc = 0.0;
        for (int t = 0; t < m; ++t)
          acc += q[static_cast<size_t>(t * m + r)] * pq[static_cast<size_t>(t * m + c)];
        s[static_cast<size_t>(r * m + c)] = acc;
      }

    // M = (S diag + I) S.
    std::array<double, 16> sd{};
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        sd[static_cast<size_t>(r * m + c)] =
            s[static_cast<size_t>(r * m + c)] *
            mid[static_cast<size_t>(cols[static_cast<size_t>(c)])].tableau.last_content();
    for (int r = 0; r < m; ++r) sd[static_cast<size_t>(r * m + r)] += 1.0;

    JmBlock blk;
    blk.size = m;
    for (int c = 0; c < m; ++c) blk.cols[static_cast<size_t>(c)] = cols[static_cast<size_t>(c)];
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        double acc = 0.0;
        for (int t = 0; t < m; ++t)
          acc += sd[static_cast<size_t>(r * m + t)] * s[static_cast<size_t>(t * m + c)];
        blk.m[static_cast<size_t>(r * m + c)] = acc;
      }
    ops += static_cast<std::uint64_t>(2 * m * m * m + m * m + m);
    out.blocks.push_back(blk);
  }
  if (counter) counter->add(ops);
  return out;
}

namespace detail {

// Unit eigenvector of a symmetric 2x2 block for an exactly known eigenvalue.
// Of the two analytic null-space candidates the larger one is kept; the sign
// makes the first coordinate strictly positive.
inline std::array<double, 2> block_eigenvector(const std::array<double, 4>& m, double lambda,
                                               std::uint64_t& ops) {
  std::array<double, 2> va{m[1], lambda - m[0]};
  std::array<double, 2> vb{lambda - m[3], m[2]};
  double na = va[0] * va[0] + va[1] * va[1];
  double nb = vb[0] * vb[0] + vb[1] * vb[1];
  ops += 6;
  std::array<double, 2> v = (na >= nb) ? va : vb;
  double norm2 = std::max(na, nb);
  if (norm2 == 0.0)
    throw ConstructionError("factor_from_jm: zero pivot in both eigenvector candidates");
  double inv = 1.0 / std::sqrt(norm2);
  v[0] *= inv;
  v[1] *= inv;
  ops += 4;
  if (v[0] == 0.0)
    throw ConstructionError("factor_from_jm: eigenvector has zero leading coordinate");
  if (v[0] < 0.0) {
    v[0] = -v[0];
    v[1] = -v[1];
  }
  double r0 = m[0] * v[0] + m[1] * v[1] - lambda * v[0];
  double r1 = m[2] * v[0] + m[3] * v[1] - lambda * v[1];
  ops += 8;
  if (std::sqrt(r0 * r0 + r1 * r1) > 1e-8)
    throw ConstructionError("factor_from_jm: eigenvector residual above 1e-8");
  return v;
}

}  // namespace detail

/// Second construction step: factor i (level i -> i+1) from the blocks of
/// [J_{i+1}].  Fine blocks of size one copy through with entry 1; fine
/// blocks of size two split into the eigenvectors for i-a and a-1.
inline SparseOrthFactor factor_from_jm(int n, int k, int i,
                                       const std::vector<BasisLabel>& mid,
                                       const std::vector<BasisLabel>& upper,
                                       const JmBlockMatrix& jm,
                                       OpCounter* counter = nullptr) {
  if (i < 1 || i > n - 1) throw std::invalid_argument("factor_from_jm: need 1 <= i <= n-1");
  auto upper_index = label_index(upper, n);
  SparseOrthFactor f;
  f.level = i;
  f.dim = static_cast<int>(mid.size());
  std::vector<char> row_used(upper.size(), 0);
  std::uint64_t ops = 0;

  for (const auto& blk : jm.blocks) {
    // Partition the block columns by the fine key (full tableau + shorter
    // suffix); each part is one orthogonal block of the factor.
    std::vector<std::pair<BlockKey, std::vector<int>>> parts;
    for (int c = 0; c < blk.size; ++c) {
      int global = blk.cols[static_cast<size_t>(c)];
      BlockKey key = block_key_change(mid[static_cast<size_t>(global)], i + 1, n);
      bool found = false;
      for (auto& [pkey, list] : parts)
        if (pkey == key) {
          list.push_back(c);
          found = true;
          break;
        }
      if (!found) parts.emplace_back(key, std::vector<int>{c});
    }

    for (auto& [pkey, local_cols] : parts) {
      const BasisLabel& lead = mid[static_cast<size_t>(blk.cols[static_cast<size_t>(local_cols[0])])];
      const StandardTableau& t = lead.tableau;
      std::string tail = lead.suffix.substr(1);
      int a = t.shape_row2();

      // Feasible growths, in canonical order: row 2 (content a-1) then row 1
      // (content i-a).
      std::vector<std::pair<int, double>> grow;  // (upper index, eigenvalue)
      if (t.shape_row2() < t.shape_row1()) {
        BasisLabel up{t.grown(2), tail, i + 1};
        if (label_is_feasible(up, n, k)) grow.emplace_back(upper_index.at(serialize_label(up, n)), static_cast<double>(a - 1));
      }
      {
        BasisLabel up{t.grown(1), tail, i + 1};
        if (label_is_feasible(up, n, k)) grow.emplace_back(upper_index.at(serialize_label(up, n)), static_cast<double>(i - a));
      }
      if (grow.size() != local_cols.size())
        throw ConstructionError("factor_from_jm: block rows and columns disagree at level " +
                                std::to_string(i));

      FactorBlock out;
      out.nrows = out.ncols = static_cast<int>(local_cols.size());
      for (int c = 0; c < out.ncols; ++c)
        out.cols[static_cast<size_t>(c)] = blk.cols[static_cast<size_t>(local_cols[static_cast<size_t>(c)])];
      for (int r = 0; r < out.nrows; ++r) {
        out.rows[static_cast<size_t>(r)] = grow[static_cast<size_t>(r)].first;
        if (row_used[static_cast<size_t>(grow[static_cast<size_t>(r)].first)]++)
          throw ConstructionError("factor_from_jm: upper label emitted twice");
      }

      if (out.ncols == 1) {
        double expected = grow[0].second;
        if (std::abs(blk.at(local_cols[0], local_cols[0]) - expected) > 1e-8)
          throw ConstructionError("factor_from_jm: singleton eigenvalue mismatch at level " +
                                  std::to_string(i));
        ops += 1;
        out.entries[0] = 1.0;
      } else {
        std::array<double, 4> msub{blk.at(local_cols[0], local_cols[0]), blk.at(local_cols[0], local_cols[1]),
                                   blk.at(local_cols[1], local_cols[0]), blk.at(local_cols[1], local_cols[1])};
        for (int r = 0; r < 2; ++r) {
          auto v = detail::block_eigenvector(msub, grow[static_cast<size_t>(r)].second, ops);
          out.entries[static_cast<size_t>(2 * r)] = v[0];
          out.entries[static_cast<size_t>(2 * r + 1)] = v[1];
        }
      }
      f.blocks.push_back(out);
    }
  }

  for (char used : row_used)
    if (!used) throw ConstructionError("factor_from_jm: upper label never emitted");
  if (counter) counter->add(ops);
  return f;
}

/// Build the full plan: label tables for levels 0..n, the level-0 -> 1
/// reindexing, and factors 1..n-1.
inline TransformPlan build_plan(int n, int k, std::int64_t max_dim = 1'000'000) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("build_plan: need 0 <= k <= n");
  std::int64_t dim64 = binomial(n, k);
  if (dim64 > max_dim)
    throw ResourceError("build_plan: dimension " + std::to_string(dim64) + " exceeds budget " +
                        std::to_string(max_dim));

  TransformPlan plan;
  plan.n = n;
  plan.k = k;
  plan.dim = static_cast<int>(dim64);
  plan.levels.reserve(static_cast<size_t>(n) + 1);
  for (int lev = 0; lev <= n; ++lev) plan.levels.push_back(enumerate_labels(n, k, lev));

  OpCounter counter;
  if (n >= 1) {
    // Level-1 labels name the same delta functions as level-0 words: the
    // dropped first letter is forced by the ones count.
    auto word_idx = label_index(plan.levels[0], n);
    plan.b1_to_word.resize(plan.levels[1].size());
    for (size_t j = 0; j < plan.levels[1].size(); ++j) {
      const auto& lab = plan.levels[1][j];
      char first = (k - count_ones(lab.suffix) == 1) ? '1' : '2';
      BasisLabel word{StandardTableau{}, first + lab.suffix, 0};
      plan.b1_to_word[j] = word_idx.at(serialize_label(word, n));
    }

    std::vector<std::vector<std::pair<int, double>>> expansion(plan.levels[1].size());
    for (size_t j = 0; j < expansion.size(); ++j)
      expansion[j] = {{plan.b1_to_word[j], 1.0}};

    for (int i = 1; i <= n - 1; ++i) {
      auto jm = jm_next_blocks(n, i, plan.levels[static_cast<size_t>(i) - 1],
                               plan.levels[static_cast<size_t>(i)], expansion, &counter);
      auto f = factor_from_jm(n, k, i, plan.levels[static_cast<size_t>(i)],
                              plan.levels[static_cast<size_t>(i) + 1], jm, &counter);
      expansion = row_expansion(f);
      plan.factors.push_back(std::move(f));
    }
  }

  plan.gt_shape_a.reserve(plan.levels.back().size());
  for (const auto& lab : plan.levels.back()) plan.gt_shape_a.push_back(lab.tableau.shape_row2());
  plan.build_ops = counter.fma;
  return plan;
}

}  // namespace jfft
