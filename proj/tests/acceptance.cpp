// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned in code next to the check it guards.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jfft/jfft.hpp"

using namespace jfft;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& msg) {
    pass = false;
    if (detail.empty()) detail = msg;
  }
};

FunctionVector seeded_function(const TransformPlan& plan, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FunctionVector f{plan.n, plan.k, std::vector<double>(static_cast<size_t>(plan.dim))};
  for (auto& v : f.values) v = dist(rng);
  return f;
}

double norm2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

std::multiset<int> block_sizes(const SparseOrthFactor& f) {
  std::multiset<int> sizes;
  for (const auto& b : f.blocks) sizes.insert(b.ncols);
  return sizes;
}

// 1. Golden structure for n=4, k=2: block size multisets and dense disjoint
//    blocks, i.e. the published 6x6 patterns up to canonical ordering.
Outcome golden_structure() {
  Outcome out;
  TransformPlan plan = build_plan(4, 2);
  if (plan.factors.size() != 3) out.fail("expected 3 factors");
  std::vector<std::multiset<int>> expect{{1, 2, 2, 1}, {2, 1, 1, 2}, {2, 2, 2}};
  for (int i = 1; i <= 3 && out.pass; ++i) {
    const auto& f = plan.factor(i);
    if (block_sizes(f) != expect[static_cast<size_t>(i) - 1]) {
      out.fail("factor " + std::to_string(i) + " block sizes differ");
      break;
    }
    std::vector<char> row_seen(6, 0), col_seen(6, 0);
    for (const auto& b : f.blocks) {
      if (b.nrows != b.ncols) out.fail("non-square block");
      for (int r = 0; r < b.nrows; ++r) row_seen[static_cast<size_t>(b.rows[static_cast<size_t>(r)])]++;
      for (int c = 0; c < b.ncols; ++c) col_seen[static_cast<size_t>(b.cols[static_cast<size_t>(c)])]++;
      for (int r = 0; r < b.nrows; ++r)
        for (int c = 0; c < b.ncols; ++c)
          if (b.at(r, c) == 0.0) out.fail("structural zero inside a block");
    }
    for (int j = 0; j < 6; ++j)
      if (row_seen[static_cast<size_t>(j)] != 1 || col_seen[static_cast<size_t>(j)] != 1)
        out.fail("blocks do not partition the index space");
  }
  return out;
}

// 2. For every (n,k) with n <= 12: blocks of size <= 2 covering each index
//    once, and factor orthogonality below 1e-10.
Outcome sparsity_all() {
  Outcome out;
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      for (const auto& f : plan.factors) {
        std::vector<char> row_seen(static_cast<size_t>(plan.dim), 0);
        std::vector<char> col_seen(static_cast<size_t>(plan.dim), 0);
        double worst = 0.0;
        for (const auto& b : f.blocks) {
          if (b.nrows < 1 || b.nrows > 2 || b.nrows != b.ncols)
            out.fail("block size out of range at n=" + std::to_string(n));
          for (int r = 0; r < b.nrows; ++r) row_seen[static_cast<size_t>(b.rows[static_cast<size_t>(r)])]++;
          for (int c = 0; c < b.ncols; ++c) col_seen[static_cast<size_t>(b.cols[static_cast<size_t>(c)])]++;
          for (int r = 0; r < b.ncols; ++r)
            for (int c = 0; c < b.ncols; ++c) {
              double acc = 0.0;
              for (int t = 0; t < b.nrows; ++t) acc += b.at(t, r) * b.at(t, c);
              worst = std::max(worst, std::abs(acc - (r == c ? 1.0 : 0.0)));
            }
        }
        for (int j = 0; j < plan.dim; ++j)
          if (row_seen[static_cast<size_t>(j)] != 1 || col_seen[static_cast<size_t>(j)] != 1)
            out.fail("coverage failure at n=" + std::to_string(n) + " k=" + std::to_string(k));
        if (worst >= 1e-10)
          out.fail("orthogonality residual " + std::to_string(worst) + " at n=" + std::to_string(n) +
                   " k=" + std::to_string(k));
      }
    }
  return out;
}

// 3. Counted operation bounds, including the build budget, for n in
//    {4,6,8,10,12} and every k.
Outcome op_bounds() {
  Outcome out;
  for (int n : {4, 6, 8, 10, 12})
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      std::uint64_t dim = static_cast<std::uint64_t>(plan.dim);
      if (plan.build_ops > 100ULL * static_cast<std::uint64_t>(n) * dim)
        out.fail("build ops exceed 100*n*C at n=" + std::to_string(n) + " k=" + std::to_string(k));

      FunctionVector f = seeded_function(plan, 1000 + static_cast<std::uint64_t>(n * 100 + k));
      OpCounter fwd;
      GtCoefficients c = forward(plan, f, &fwd);
      if (fwd.fma > 2ULL * static_cast<std::uint64_t>(n - 1) * dim)
        out.fail("forward ops exceed 2(n-1)C at n=" + std::to_string(n) + " k=" + std::to_string(k));

      OpCounter wc;
      weights(plan, f, &wc);
      if (wc.fma > static_cast<std::uint64_t>(2 * n - 1) * dim)
        out.fail("weights ops exceed (2n-1)C at n=" + std::to_string(n) + " k=" + std::to_string(k));

      OpCounter pc;
      project(plan, f, {0}, &pc);
      if (pc.fma > 4ULL * static_cast<std::uint64_t>(n - 1) * dim)
        out.fail("project ops exceed 4(n-1)C at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  return out;
}

// 4. Jucys-Murphy eigenvector oracle for all n <= 9, with the exact content
//    vector of the tableau 134/25.
Outcome jm_oracle() {
  Outcome out;
  StandardTableau reference{{1, 3, 4}, {2, 5}};
  if (reference.contents() != std::vector<int>{0, -1, 1, 2, 0})
    out.fail("content vector of 134/25 is not (0,-1,1,2,0)");
  bool reference_seen = false;

  for (int n = 1; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      oracle::DenseMatrix g = oracle::dense_gt_matrix(plan);
      for (int p = 1; p <= n; ++p) {
        oracle::DenseMatrix jp = oracle::dense_jm(n, k, p);
        for (int row = 0; row < plan.dim; ++row) {
          const auto& tab = plan.levels.back()[static_cast<size_t>(row)].tableau;
          if (n == 5 && tab == reference) reference_seen = true;
          double alpha = tab.contents()[static_cast<size_t>(p) - 1];
          double res = 0.0;
          for (int r = 0; r < plan.dim; ++r) {
            double acc = 0.0;
            for (int x = 0; x < plan.dim; ++x) acc += jp.at(r, x) * g.at(row, x);
            double diff = acc - alpha * g.at(row, r);
            res += diff * diff;
          }
          if (std::sqrt(res) >= 1e-8) {
            out.fail("jm residual " + std::to_string(std::sqrt(res)) + " at n=" + std::to_string(n) +
                     " k=" + std::to_string(k) + " p=" + std::to_string(p));
            return out;
          }
        }
      }
    }
  if (!reference_seen) out.fail("tableau 134/25 never appeared at n=5");
  return out;
}

// 5. Agreement with the adjacency-eigenspace projectors for n <= 9, plus the
//    closed-form delta weights.
Outcome isotypic_agreement() {
  Outcome out;
  for (int n = 1; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      auto projectors = oracle::isotypic_projectors(n, k);
      for (size_t a = 0; a < projectors.size(); ++a) {
        double rank = 0.0;
        for (int j = 0; j < plan.dim; ++j) rank += projectors[a].at(j, j);
        double expect_rank = static_cast<double>(binomial(n, static_cast<int>(a)) -
                                                 binomial(n, static_cast<int>(a) - 1));
        if (std::abs(rank - expect_rank) > 1e-6)
          out.fail("projector rank mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
      }

      FunctionVector f = seeded_function(plan, 77000 + static_cast<std::uint64_t>(n * 100 + k));
      double fn = std::sqrt(norm2(f.values));
      for (size_t a = 0; a < projectors.size(); ++a) {
        FunctionVector fast = project(plan, f, {static_cast<int>(a)});
        double res = 0.0;
        for (int r = 0; r < plan.dim; ++r) {
          double acc = 0.0;
          for (int x = 0; x < plan.dim; ++x) acc += projectors[a].at(r, x) * f.values[static_cast<size_t>(x)];
          double diff = acc - fast.values[static_cast<size_t>(r)];
          res += diff * diff;
        }
        if (std::sqrt(res) >= 1e-8 * fn) {
          out.fail("projection residual at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                   " a=" + std::to_string(a));
          return out;
        }
      }

      FunctionVector delta{n, k, std::vector<double>(static_cast<size_t>(plan.dim), 0.0)};
      for (int x = 0; x < plan.dim; ++x) {
        delta.values[static_cast<size_t>(x)] = 1.0;
        SpectralReport rep = weights(plan, delta);
        for (size_t a = 0; a < rep.weights.size(); ++a) {
          double expect = static_cast<double>(binomial(n, static_cast<int>(a)) -
                                              binomial(n, static_cast<int>(a) - 1)) /
                          static_cast<double>(plan.dim);
          if (std::abs(rep.weights[a] - expect) >= 1e-9) {
            out.fail("delta weight mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
            return out;
          }
        }
        delta.values[static_cast<size_t>(x)] = 0.0;
      }
    }
  return out;
}

// 6. Round trip and Parseval for every (n,k) with n <= 14 and C(n,k) <= 3500.
Outcome round_trip_parseval() {
  Outcome out;
  for (int n = 1; n <= 14; ++n)
    for (int k = 0; k <= n; ++k) {
      if (binomial(n, k) > 3500) continue;
      TransformPlan plan = build_plan(n, k);
      FunctionVector f = seeded_function(plan, 31000 + static_cast<std::uint64_t>(n * 100 + k));
      GtCoefficients c = forward(plan, f);
      double f2 = norm2(f.values);
      if (std::abs(norm2(c.values) - f2) >= 1e-10 * f2)
        out.fail("parseval failure at n=" + std::to_string(n) + " k=" + std::to_string(k));
      FunctionVector back = inverse(plan, c);
      double worst = 0.0;
      for (int j = 0; j < plan.dim; ++j)
        worst = std::max(worst, std::abs(back.values[static_cast<size_t>(j)] - f.values[static_cast<size_t>(j)]));
      if (worst >= 1e-9 * std::sqrt(f2))
        out.fail("round trip failure at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  return out;
}

// 7. Scaling smoke test: n=16, k=8 builds and transforms in under five
//    seconds with the forward count inside 386100.
Outcome scaling_smoke() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  TransformPlan plan = build_plan(16, 8);
  FunctionVector f = seeded_function(plan, 161616);
  OpCounter counter;
  GtCoefficients c = forward(plan, f, &counter);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::uint64_t bound = 2ULL * 15 * 12870;
  if (bound != 386100) out.fail("bound arithmetic broke");
  if (plan.dim != 12870) out.fail("C(16,8) is not 12870?");
  if (counter.fma > bound) out.fail("forward ops " + std::to_string(counter.fma) + " exceed 386100");
  if (seconds >= 5.0) out.fail("build+forward took " + std::to_string(seconds) + " s");
  out.detail = "build+forward " + std::to_string(seconds) + " s, ops " + std::to_string(counter.fma) +
               " <= 386100";
  (void)c;
  return out;
}

// 8. The Robinson-Schensted chain of every word (n <= 10) is feasible and
//    consecutive labels share a change-block key.
Outcome rs_structural() {
  Outcome out;
  for (int n = 1; n <= 10; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& w : enumerate_words(n, k)) {
        RsState st;
        BasisLabel prev{StandardTableau{}, w, 0};
        for (int i = 1; i <= n; ++i) {
          st = rs_step(st, w[static_cast<size_t>(i) - 1], i);
          BasisLabel cur{st.recording, w.substr(static_cast<size_t>(i)), i};
          if (!label_is_feasible(cur, n, k)) {
            out.fail("infeasible rs label for word " + w + " at level " + std::to_string(i));
            return out;
          }
          if (block_key_change(prev, i, n) != block_key_change(cur, i, n)) {
            out.fail("rs chain key mismatch for word " + w + " at level " + std::to_string(i));
            return out;
          }
          prev = cur;
        }
      }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"1 golden structure n=4 k=2", golden_structure},
      {"2 sparsity and orthogonality for all n <= 12", sparsity_all},
      {"3 counted operation bounds", op_bounds},
      {"4 jucys-murphy eigenvector oracle n <= 9", jm_oracle},
      {"5 isotypic projector agreement n <= 9", isotypic_agreement},
      {"6 round trip and parseval n <= 14", round_trip_parseval},
      {"7 scaling smoke test n=16 k=8", scaling_smoke},
      {"8 robinson-schensted structural test n <= 10", rs_structural},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out = c.run();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %-46s %s (%.2f s)%s%s\n", c.name, out.pass ? "PASS" : "FAIL", seconds,
                out.detail.empty() ? "" : " -- ", out.detail.c_str());
    if (!out.pass) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
