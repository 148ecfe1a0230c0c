#pragma once

// Sparse orthogonal factors and the transform plan that owns them.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "jfft/combinatorics.hpp"

namespace jfft {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Counts one fused multiply-add (or comparable scalar operation) as one.
/// Permutations and reindexing are not counted.
struct OpCounter {
  std::uint64_t fma = 0;
  void add(std::uint64_t ops) { fma += ops; }
};

/// One dense block of a block-diagonal orthogonal factor: at most 2 rows
/// (indices into the upper level's label table) and 2 columns (lower level).
struct FactorBlock {
  int nrows = 0;
  int ncols = 0;
  std::array<int, 2> rows{};
  std::array<int, 2> cols{};
  std::array<double, 4> entries{};  // row-major nrows x ncols

  double at(int r, int c) const { return entries[static_cast<size_t>(r * ncols + c)]; }
};

/// Block-diagonal orthogonal change of basis from level `level` coordinates
/// to level `level+1` coordinates.  Every lower index appears in exactly one
/// block's cols and every upper index in exactly one block's rows.
struct SparseOrthFactor {
  int level = 0;
  int dim = 0;
  std::vector<FactorBlock> blocks;

  std::uint64_t apply_cost() const {
    std::uint64_t c = 0;
    for (const auto& b : blocks) c += static_cast<std::uint64_t>(b.nrows) * b.ncols;
    return c;
  }
};

/// Everything needed to run transforms for a fixed (n, k): canonical label
/// tables for every level, the level-0 -> level-1 reindexing, and the sparse
/// factors for levels 1..n-1.  Immutable after construction.
struct TransformPlan {
  int n = 0;
  int k = 0;
  int dim = 0;
  std::vector<std::vector<BasisLabel>> levels;  // size n+1
  std::vector<int> b1_to_word;                  // level-1 index -> level-0 index
  std::vector<SparseOrthFactor> factors;        // factors[i-1] maps level i -> i+1
  std::vector<int> gt_shape_a;                  // per level-n label: row-2 length
  std::uint64_t build_ops = 0;

  int num_components() const { return std::min(k, n - k) + 1; }

  const SparseOrthFactor& factor(int level) const {
    if (level < 1 || level > n - 1) throw std::invalid_argument("factor: level out of range");
    return factors[static_cast<size_t>(level) - 1];
  }
};

}  // namespace jfft
