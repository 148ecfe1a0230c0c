#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jfft/build.hpp"
#include "jfft/oracle.hpp"
#include "jfft/plan_io.hpp"

using namespace jfft;

namespace {

std::multiset<int> block_sizes(const SparseOrthFactor& f) {
  std::multiset<int> sizes;
  for (const auto& b : f.blocks) {
    REQUIRE(b.nrows == b.ncols);
    sizes.insert(b.ncols);
  }
  return sizes;
}

// Expansion of level-i basis vectors over level i-1, as used by the builder.
std::vector<std::vector<std::pair<int, double>>> expansion_at(const TransformPlan& plan, int i) {
  if (i == 1) {
    std::vector<std::vector<std::pair<int, double>>> e(plan.levels[1].size());
    for (size_t j = 0; j < e.size(); ++j) e[j] = {{plan.b1_to_word[j], 1.0}};
    return e;
  }
  return row_expansion(plan.factor(i - 1));
}

double factor_orthogonality_residual(const SparseOrthFactor& f) {
  double worst = 0.0;
  for (const auto& b : f.blocks)
    for (int r = 0; r < b.ncols; ++r) {
      double row_sum = 0.0;
      for (int c = 0; c < b.ncols; ++c) {
        double acc = 0.0;
        for (int t = 0; t < b.nrows; ++t) acc += b.at(t, r) * b.at(t, c);
        row_sum += std::abs(acc - (r == c ? 1.0 : 0.0));
      }
      worst = std::max(worst, row_sum);
    }
  return worst;
}

}  // namespace

TEST_CASE("adjacent swap permutation on words", "[build]") {
  auto words = enumerate_labels(4, 2, 0);
  auto perm = adjacent_swap_perm(words, 4);
  auto idx_of = [&](const std::string& w) {
    for (size_t j = 0; j < words.size(); ++j)
      if (words[j].suffix == w) return static_cast<int>(j);
    return -1;
  };
  CHECK(perm[static_cast<size_t>(idx_of("1122"))] == idx_of("1122"));
  CHECK(perm[static_cast<size_t>(idx_of("1212"))] == idx_of("2112"));
  CHECK(perm[static_cast<size_t>(idx_of("1221"))] == idx_of("2121"));
  CHECK(perm[static_cast<size_t>(idx_of("2211"))] == idx_of("2211"));
}

TEST_CASE("adjacent swap permutation is an involution with the right fixed points", "[build]") {
  for (int n = 2; n <= 7; ++n)
    for (int k = 0; k <= n; ++k)
      for (int i = 1; i <= n - 1; ++i) {
        auto labels = enumerate_labels(n, k, i - 1);
        auto perm = adjacent_swap_perm(labels, n);
        int fixed = 0;
        for (size_t j = 0; j < labels.size(); ++j) {
          CHECK(perm[static_cast<size_t>(perm[j])] == static_cast<int>(j));
          if (perm[j] == static_cast<int>(j)) ++fixed;
        }
        int expect = 0;
        for (const auto& lab : labels)
          if (lab.suffix[0] == lab.suffix[1]) ++expect;
        CHECK(fixed == expect);
      }
}

TEST_CASE("jm diagonal is zero at level one", "[build]") {
  auto d = jm_diagonal(enumerate_labels(5, 2, 1));
  for (double v : d) CHECK(v == 0.0);
}

TEST_CASE("jm diagonal reads the last box content", "[build]") {
  StandardTableau t{{1, 3, 4}, {2, 5}};
  std::vector<BasisLabel> labels{BasisLabel{t, "", 5}};
  CHECK(jm_diagonal(labels) == std::vector<double>{0.0});
}

TEST_CASE("first jm blocks for n=4 k=2 split into the swap eigenvalues", "[build]") {
  TransformPlan plan = build_plan(4, 2);
  auto jm = jm_next_blocks(4, 1, plan.levels[0], plan.levels[1], expansion_at(plan, 1));
  std::multiset<int> sizes;
  for (const auto& blk : jm.blocks) {
    sizes.insert(blk.size);
    if (blk.size == 1) {
      CHECK(blk.at(0, 0) == Catch::Approx(1.0).margin(1e-12));
    } else {
      REQUIRE(blk.size == 2);
      double tr = blk.at(0, 0) + blk.at(1, 1);
      double det = blk.at(0, 0) * blk.at(1, 1) - blk.at(0, 1) * blk.at(1, 0);
      CHECK(tr == Catch::Approx(0.0).margin(1e-12));
      CHECK(det == Catch::Approx(-1.0).margin(1e-12));
    }
  }
  CHECK(sizes == std::multiset<int>{1, 1, 2, 2});
}

TEST_CASE("jm blocks are symmetric and match the dense trace", "[build]") {
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      for (int i = 1; i <= n - 1; ++i) {
        auto jm = jm_next_blocks(n, i, plan.levels[static_cast<size_t>(i) - 1],
                                 plan.levels[static_cast<size_t>(i)], expansion_at(plan, i));
        double trace = 0.0;
        for (const auto& blk : jm.blocks)
          for (int r = 0; r < blk.size; ++r) {
            trace += blk.at(r, r);
            for (int c = 0; c < blk.size; ++c)
              CHECK(std::abs(blk.at(r, c) - blk.at(c, r)) < 1e-10);
          }
        auto dense = oracle::dense_jm(n, k, i + 1);
        double dense_trace = 0.0;
        for (int j = 0; j < dense.dim; ++j) dense_trace += dense.at(j, j);
        CHECK(trace == Catch::Approx(dense_trace).margin(1e-8));
      }
    }
}

TEST_CASE("golden factor structure for n=4 k=2", "[build]") {
  TransformPlan plan = build_plan(4, 2);
  REQUIRE(plan.factors.size() == 3);
  CHECK(block_sizes(plan.factor(1)) == std::multiset<int>{1, 1, 2, 2});
  CHECK(block_sizes(plan.factor(2)) == std::multiset<int>{1, 1, 2, 2});
  CHECK(block_sizes(plan.factor(3)) == std::multiset<int>{2, 2, 2});
  for (const auto& f : plan.factors)
    for (const auto& b : f.blocks)
      for (int r = 0; r < b.nrows; ++r)
        for (int c = 0; c < b.ncols; ++c) CHECK(b.at(r, c) != 0.0);
}

TEST_CASE("two-set factor is the normalized sign/average block", "[build]") {
  TransformPlan plan = build_plan(2, 1);
  REQUIRE(plan.factors.size() == 1);
  const auto& f = plan.factor(1);
  REQUIRE(f.blocks.size() == 1);
  const auto& b = f.blocks[0];
  REQUIRE(b.nrows == 2);
  double s = 1.0 / std::sqrt(2.0);
  // Row 0 belongs to the column-shape tableau (label order by content), so it
  // is the sign vector; the sign rule makes the first column positive.
  CHECK(plan.levels[2][static_cast<size_t>(b.rows[0])].tableau.shape_row2() == 1);
  CHECK(b.at(0, 0) == Catch::Approx(s));
  CHECK(b.at(0, 1) == Catch::Approx(-s));
  CHECK(b.at(1, 0) == Catch::Approx(s));
  CHECK(b.at(1, 1) == Catch::Approx(s));
}

TEST_CASE("factors are orthogonal and cover every index once", "[build]") {
  for (int n = 1; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      REQUIRE(static_cast<int>(plan.factors.size()) == std::max(0, n - 1));
      for (const auto& f : plan.factors) {
        CHECK(factor_orthogonality_residual(f) < 1e-10);
        std::vector<char> row_seen(static_cast<size_t>(plan.dim), 0);
        std::vector<char> col_seen(static_cast<size_t>(plan.dim), 0);
        for (const auto& b : f.blocks) {
          CHECK(b.nrows >= 1);
          CHECK(b.nrows <= 2);
          CHECK(b.nrows == b.ncols);
          // Sign rule: every row is strictly positive on the first column.
          for (int r = 0; r < b.nrows; ++r) CHECK(b.at(r, 0) > 0.0);
          for (int r = 0; r < b.nrows; ++r) row_seen[static_cast<size_t>(b.rows[static_cast<size_t>(r)])]++;
          for (int c = 0; c < b.ncols; ++c) col_seen[static_cast<size_t>(b.cols[static_cast<size_t>(c)])]++;
        }
        for (int j = 0; j < plan.dim; ++j) {
          CHECK(row_seen[static_cast<size_t>(j)] == 1);
          CHECK(col_seen[static_cast<size_t>(j)] == 1);
        }
      }
    }
}

TEST_CASE("eigenvector rows satisfy their jm blocks", "[build]") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      for (int i = 1; i <= n - 1; ++i) {
        auto jm = jm_next_blocks(n, i, plan.levels[static_cast<size_t>(i) - 1],
                                 plan.levels[static_cast<size_t>(i)], expansion_at(plan, i));
        // Map each level-i index to its position inside its jm block.
        std::map<int, std::pair<const JmBlock*, int>> where;
        for (const auto& blk : jm.blocks)
          for (int c = 0; c < blk.size; ++c)
            where[blk.cols[static_cast<size_t>(c)]] = {&blk, c};
        const auto& upper = plan.levels[static_cast<size_t>(i) + 1];
        for (const auto& b : plan.factor(i).blocks) {
          for (int r = 0; r < b.nrows; ++r) {
            const auto& lab = upper[static_cast<size_t>(b.rows[static_cast<size_t>(r)])];
            double lambda = lab.tableau.last_content();
            for (int c = 0; c < b.ncols; ++c) {
              auto [blk, pc] = where.at(b.cols[static_cast<size_t>(c)]);
              double acc = 0.0;
              for (int c2 = 0; c2 < b.ncols; ++c2) {
                auto [blk2, pc2] = where.at(b.cols[static_cast<size_t>(c2)]);
                REQUIRE(blk2 == blk);
                acc += blk->at(pc, pc2) * b.at(r, c2);
              }
              CHECK(std::abs(acc - lambda * b.at(r, c)) < 1e-8);
            }
          }
        }
      }
    }
}

TEST_CASE("blocks with equal tableau keys and letter patterns share entries", "[build]") {
  // Suffixes with the same ones count name the same smaller Johnson graph,
  // so blocks agreeing in tableau, free-letter pattern and tail ones count
  // must be built from bitwise identical arithmetic.
  for (int n = 3; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      for (int i = 1; i <= n - 1; ++i) {
        const auto& mid = plan.levels[static_cast<size_t>(i)];
        std::map<std::string, const FactorBlock*> rep;
        for (const auto& b : plan.factor(i).blocks) {
          std::string key = serialize_tableau(mid[static_cast<size_t>(b.cols[0])].tableau, n);
          key += '|';
          for (int c = 0; c < b.ncols; ++c) key += mid[static_cast<size_t>(b.cols[static_cast<size_t>(c)])].suffix[0];
          key += '|';
          key += std::to_string(count_ones(mid[static_cast<size_t>(b.cols[0])].suffix.substr(1)));
          auto [it, fresh] = rep.try_emplace(key, &b);
          if (!fresh) {
            const FactorBlock* first = it->second;
            REQUIRE(first->nrows == b.nrows);
            REQUIRE(first->ncols == b.ncols);
            for (int r = 0; r < b.nrows; ++r)
              for (int c = 0; c < b.ncols; ++c) CHECK(first->at(r, c) == b.at(r, c));
          }
        }
      }
    }
}

TEST_CASE("final labels carry component dimensions", "[build]") {
  TransformPlan plan = build_plan(6, 3);
  CHECK(plan.dim == 20);
  std::map<int, int> by_shape;
  for (int a : plan.gt_shape_a) by_shape[a] += 1;
  CHECK(by_shape == std::map<int, int>{{0, 1}, {1, 5}, {2, 9}, {3, 5}});
}

TEST_CASE("degenerate subsets build identity factors", "[build]") {
  for (int n : {1, 3, 5})
    for (int k : {0, n}) {
      TransformPlan plan = build_plan(n, k);
      CHECK(plan.dim == 1);
      for (const auto& f : plan.factors) {
        REQUIRE(f.blocks.size() == 1);
        CHECK(f.blocks[0].nrows == 1);
        CHECK(f.blocks[0].at(0, 0) == 1.0);
      }
    }
}

TEST_CASE("build respects the op budget", "[build]") {
  for (int n : {4, 6, 8, 10})
    for (int k = 0; k <= n; ++k) {
      TransformPlan plan = build_plan(n, k);
      CHECK(plan.build_ops <= 100ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(plan.dim));
    }
}

TEST_CASE("build rejects plans beyond the dimension budget", "[build]") {
  CHECK_THROWS_AS(build_plan(20, 10, 1000), ResourceError);
  CHECK_THROWS_AS(build_plan(4, 5), std::invalid_argument);
}

TEST_CASE("building twice yields identical plans", "[build]") {
  TransformPlan a = build_plan(7, 3);
  TransformPlan b = build_plan(7, 3);
  std::ostringstream sa, sb;
  write_plan(a, sa);
  write_plan(b, sb);
  CHECK(sa.str() == sb.str());
}
