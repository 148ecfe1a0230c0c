#pragma once

// Applying a plan: forward transform (delta coordinates to Gelfand-Tsetlin
// coordinates), inverse transform, both with counted operations.
//
// Applying one factor costs at most 2*dim fused multiply-adds (every block
// has at most two rows and two columns), so a full transform costs at most
// 2*(n-1)*dim.  The level-0 -> level-1 step is a pure reindexing and is not
// counted, matching the cost model that counts one multiply-add as one
// operation and ignores row/column reordering.

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "jfft/factor.hpp"

namespace jfft {

struct FunctionVector {
  int n = 0;
  int k = 0;
  std::vector<double> values;  // canonical word order
};

struct GtCoefficients {
  int n = 0;
  int k = 0;
  std::vector<double> values;  // canonical level-n label order
};

namespace detail {

template <typename Body>
inline void for_block_range(size_t count, int threads, Body&& body) {
  if (threads <= 1 || count < 2048) {
    body(0, count);
    return;
  }
  size_t nt = std::min<size_t>(static_cast<size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (size_t t = 0; t < nt; ++t) {
    size_t lo = count * t / nt;
    size_t hi = count * (t + 1) / nt;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// y = F x, blockwise.  Blocks write disjoint outputs, so the result does
/// not depend on scheduling.
inline void apply_factor(const SparseOrthFactor& f, const std::vector<double>& x,
                         std::vector<double>& y, OpCounter* counter = nullptr, int threads = 1) {
  if (static_cast<int>(x.size()) != f.dim) throw std::invalid_argument("apply_factor: dimension mismatch");
  y.assign(x.size(), 0.0);
  detail::for_block_range(f.blocks.size(), threads, [&](size_t lo, size_t hi) {
    for (size_t bi = lo; bi < hi; ++bi) {
      const auto& b = f.blocks[bi];
      for (int r = 0; r < b.nrows; ++r) {
        double acc = 0.0;
        for (int c = 0; c < b.ncols; ++c)
          acc += b.at(r, c) * x[static_cast<size_t>(b.cols[static_cast<size_t>(c)])];
        y[static_cast<size_t>(b.rows[static_cast<size_t>(r)])] = acc;
      }
    }
  });
  if (counter) counter->add(f.apply_cost());
}

/// y = F^T x; the inverse direction of one factor.
inline void apply_factor_transpose(const SparseOrthFactor& f, const std::vector<double>& x,
                                   std::vector<double>& y, OpCounter* counter = nullptr,
                                   int threads = 1) {
  if (static_cast<int>(x.size()) != f.dim) throw std::invalid_argument("apply_factor_transpose: dimension mismatch");
  y.assign(x.size(), 0.0);
  detail::for_block_range(f.blocks.size(), threads, [&](size_t lo, size_t hi) {
    for (size_t bi = lo; bi < hi; ++bi) {
      const auto& b = f.blocks[bi];
      for (int c = 0; c < b.ncols; ++c) {
        double acc = 0.0;
        for (int r = 0; r < b.nrows; ++r)
          acc += b.at(r, c) * x[static_cast<size_t>(b.rows[static_cast<size_t>(r)])];
        y[static_cast<size_t>(b.cols[static_cast<size_t>(c)])] = acc;
      }
    }
  });
  if (counter) counter->add(f.apply_cost());
}

inline GtCoefficients forward(const TransformPlan& plan, const FunctionVector& f,
                              OpCounter* counter = nullptr, int threads = 1) {
  if (static_cast<int>(f.values.size()) != plan.dim)
    throw std::invalid_argument("forward: vector length does not match plan dimension");
  GtCoefficients out{plan.n, plan.k, {}};
  if (plan.n == 0) {
    out.values = f.values;
    return out;
  }
  std::vector<double> x(f.values.size());
  for (size_t j = 0; j < x.size(); ++j) x[j] = f.values[static_cast<size_t>(plan.b1_to_word[j])];
  std::vector<double> scratch(x.size());
  for (const auto& factor : plan.factors) {
    apply_factor(factor, x, scratch, counter, threads);
    x.swap(scratch);
  }
  out.values = std::move(x);
  return out;
}

inline FunctionVector inverse(const TransformPlan& plan, const GtCoefficients& c,
                              OpCounter* counter = nullptr, int threads = 1) {
  if (static_cast<int>(c.values.size()) != plan.dim)
    throw std::invalid_argument("inverse: vector length does not match plan dimension");
  FunctionVector out{plan.n, plan.k, {}};
  if (plan.n == 0) {
    out.values = c.values;
    return out;
  }
  std::vector<double> x = c.values;
  std::vector<double> scratch(x.size());
  for (auto it = plan.factors.rbegin(); it != plan.factors.rend(); ++it) {
    apply_factor_transpose(*it, x, scratch, counter, threads);
    x.swap(scratch);
  }
  out.values.assign(x.size(), 0.0);
  for (size_t j = 0; j < x.size(); ++j) out.values[static_cast<size_t>(plan.b1_to_word[j])] = x[j];
  return out;
}

}  // namespace jfft
