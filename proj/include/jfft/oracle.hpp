#pragma once

// Brute-force verification, independent of the sparse construction.
//
// Everything here works with dense matrices over the word (delta) basis:
// Jucys-Murphy operators as sums of explicit transposition actions, the
// Johnson-graph adjacency operator and its eigenspace projectors via a
// self-contained Jacobi eigensolver, and the dense accumulation of a plan's
// factors.  The only shared ingredients with the fast path are the label
// tables and their canonical order.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "jfft/build.hpp"
#include "jfft/spectral.hpp"

namespace jfft::oracle {

inline constexpr int kDenseBudget = 2048;

struct DenseMatrix {
  int dim = 0;
  std::vector<double> a;  // row-major dim x dim

  DenseMatrix() = default;
  explicit DenseMatrix(int d) : dim(d), a(static_cast<size_t>(d) * static_cast<size_t>(d), 0.0) {}

  double& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

  static DenseMatrix identity(int d) {
    DenseMatrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline void check_dense_budget(std::int64_t dim, const char* who) {
  if (dim > kDenseBudget)
    throw ResourceError(std::string(who) + ": dimension " + std::to_string(dim) +
                        " exceeds the dense budget " + std::to_string(kDenseBudget));
}

inline std::unordered_map<std::string, int> word_index(const std::vector<Word>& words) {
  std::unordered_map<std::string, int> idx;
  idx.reserve(words.size() * 2);
  for (size_t j = 0; j < words.size(); ++j) idx.emplace(words[j], static_cast<int>(j));
  return idx;
}

/// Dense J_p: the sum of the transpositions (j p), j < p, acting on words.
inline DenseMatrix dense_jm(int n, int k, int p) {
  if (p < 1 || p > n) throw std::invalid_argument("dense_jm: need 1 <= p <= n");
  auto words = enumerate_words(n, k);
  check_dense_budget(static_cast<std::int64_t>(words.size()), "dense_jm");
  auto idx = word_index(words);
  DenseMatrix m(static_cast<int>(words.size()));
  for (size_t x = 0; x < words.size(); ++x) {
    for (int j = 1; j < p; ++j) {
      Word w = words[x];
      std::swap(w[static_cast<size_t>(j) - 1], w[static_cast<size_t>(p) - 1]);
      m.at(idx.at(w), static_cast<int>(x)) += 1.0;
    }
  }
  return m;
}

/// Johnson graph adjacency: words joined when they differ by one 1<->2 swap.
inline DenseMatrix adjacency(int n, int k) {
  auto words = enumerate_words(n, k);
  check_dense_budget(static_cast<std::int64_t>(words.size()), "adjacency");
  auto idx = word_index(words);
  DenseMatrix m(static_cast<int>(words.size()));
  for (size_t x = 0; x < words.size(); ++x) {
    for (int i = 0; i < n; ++i) {
      if (words[x][static_cast<size_t>(i)] != '1') continue;
      for (int j = 0; j < n; ++j) {
        if (words[x][static_cast<size_t>(j)] != '2') continue;
        Word w = words[x];
        std::swap(w[static_cast<size_t>(i)], w[static_cast<size_t>(j)]);
        m.at(idx.at(w), static_cast<int>(x)) = 1.0;
      }
    }
  }
  return m;
}

struct EigResult {
  std::vector<double> values;
  DenseMatrix vectors;  // column j is the eigenvector for values[j]
};

/// Cyclic Jacobi sweeps until the off-diagonal norm falls below
/// 1e-12 * max(1, ||M||_F).
inline EigResult symmetric_eig(const DenseMatrix& m) {
  int d = m.dim;
  double scale = 0.0;
  for (double v : m.a) scale += v * v;
  scale = std::sqrt(scale);
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c)
      if (std::abs(m.at(r, c) - m.at(c, r)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("symmetric_eig: matrix is not symmetric");

  DenseMatrix a = m;
  DenseMatrix v = DenseMatrix::identity(d);
  double tol = 1e-12 * std::max(1.0, scale);
  const int max_sweeps = 64;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = r + 1; c < d; ++c) off += 2.0 * a.at(r, c) * a.at(r, c);
    if (std::sqrt(off) < tol) {
      converged = true;
      break;
    }
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        double apq = a.at(p, q);
        if (apq == 0.0) continue;
        double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int j = 0; j < d; ++j) {
          double ajp = a.at(j, p), ajq = a.at(j, q);
          a.at(j, p) = c * ajp - s * ajq;
          a.at(j, q) = s * ajp + c * ajq;
        }
        for (int j = 0; j < d; ++j) {
          double apj = a.at(p, j), aqj = a.at(q, j);
          a.at(p, j) = c * apj - s * aqj;
          a.at(q, j) = s * apj + c * aqj;
        }
        for (int j = 0; j < d; ++j) {
          double vjp = v.at(j, p), vjq = v.at(j, q);
          v.at(j, p) = c * vjp - s * vjq;
          v.at(j, q) = s * vjp + c * vjq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (int r = 0; r < d; ++r)
      for (int c = r + 1; c < d; ++c) off += 2.0 * a.at(r, c) * a.at(r, c);
    if (std::sqrt(off) >= tol)
      throw std::runtime_error("symmetric_eig: no convergence within sweep budget");
  }
  EigResult out;
  out.values.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) out.values[static_cast<size_t>(j)] = a.at(j, j);
  out.vectors = std::move(v);
  return out;
}

/// Spectral projectors of the adjacency operator, grouped by eigenvalue and
/// ordered by decreasing eigenvalue, which is exactly the component order
/// a = 0..s; projector a has rank C(n,a) - C(n,a-1).
inline std::vector<DenseMatrix> isotypic_projectors(int n, int k) {
  DenseMatrix adj = adjacency(n, k);
  EigResult eig = symmetric_eig(adj);
  int d = adj.dim;

  std::vector<int> order(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) order[static_cast<size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return eig.values[static_cast<size_t>(x)] > eig.values[static_cast<size_t>(y)];
  });

  std::vector<std::vector<int>> clusters;
  for (int j : order) {
    double lam = eig.values[static_cast<size_t>(j)];
    if (clusters.empty() ||
        std::abs(eig.values[static_cast<size_t>(clusters.back().front())] - lam) > 1e-6)
      clusters.emplace_back();
    clusters.back().push_back(j);
  }

  int s = std::min(k, n - k);
  if (static_cast<int>(clusters.size()) != s + 1)
    throw std::runtime_error("isotypic_projectors: found " + std::to_string(clusters.size()) +
                             " eigenvalue clusters, expected " + std::to_string(s + 1));
  for (int a = 0; a <= s; ++a) {
    std::int64_t expect = binomial(n, a) - binomial(n, a - 1);
    if (static_cast<std::int64_t>(clusters[static_cast<size_t>(a)].size()) != expect)
      throw std::runtime_error("isotypic_projectors: cluster " + std::to_string(a) +
                               " has multiplicity " + std::to_string(clusters[static_cast<size_t>(a)].size()) +
                               ", expected " + std::to_string(expect));
  }

  std::vector<DenseMatrix> projectors;
  projectors.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    DenseMatrix p(d);
    for (int j : cluster)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          p.at(r, c) += eig.vectors.at(r, j) * eig.vectors.at(c, j);
    projectors.push_back(std::move(p));
  }
  return projectors;
}

/// Accumulated product of the plan's factors as one dense matrix: applied to
/// a vector in word coordinates it yields the level-n coordinates.
inline DenseMatrix dense_gt_matrix(const TransformPlan& plan) {
  check_dense_budget(plan.dim, "dense_gt_matrix");
  DenseMatrix g(plan.dim);
  if (plan.n == 0) return DenseMatrix::identity(plan.dim);
  for (int j = 0; j < plan.dim; ++j) g.at(j, plan.b1_to_word[static_cast<size_t>(j)]) = 1.0;
  for (const auto& f : plan.factors) {
    DenseMatrix next(plan.dim);
    for (const auto& b : f.blocks)
      for (int r = 0; r < b.nrows; ++r)
        for (int c = 0; c < b.ncols; ++c) {
          double e = b.at(r, c);
          const double* src = &g.a[static_cast<size_t>(b.cols[static_cast<size_t>(c)]) * plan.dim];
          double* dst = &next.a[static_cast<size_t>(b.rows[static_cast<size_t>(r)]) * plan.dim];
          for (int j = 0; j < plan.dim; ++j) dst[j] += e * src[j];
        }
    g = std::move(next);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Plan verification.
// ---------------------------------------------------------------------------

struct VerificationCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << c.name << "  max_residual=" << c.max_residual << "  tol=" << c.tolerance << "  "
         << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
  }
};

/// Checks a plan against the dense oracle: factor orthogonality, global
/// orthogonality of the accumulated matrix, the Jucys-Murphy eigenvector
/// property of every final basis vector, projector agreement on a seeded
/// random function, and the closed-form delta weights.
inline VerificationReport verify_plan(const TransformPlan& plan) {
  check_dense_budget(plan.dim, "verify_plan");
  VerificationReport rep;
  auto add_check = [&rep](const std::string& name, double residual, double tol) {
    rep.checks.push_back({name, residual, tol, residual < tol});
  };
  int d = plan.dim;
  int n = plan.n;

  {
    double worst = 0.0;
    for (const auto& f : plan.factors)
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
    add_check("factor-orthogonality", worst, 1e-10);
  }

  DenseMatrix g = dense_gt_matrix(plan);
  {
    double worst = 0.0;
    for (int r = 0; r < d; ++r) {
      double row_sum = 0.0;
      for (int c = 0; c < d; ++c) {
        double acc = 0.0;
        for (int t = 0; t < d; ++t) acc += g.at(r, t) * g.at(c, t);
        row_sum += std::abs(acc - (r == c ? 1.0 : 0.0));
      }
      worst = std::max(worst, row_sum);
    }
    add_check("gt-matrix-orthogonality", worst, 1e-9);
  }

  {
    // J_p applied through its transposition action; rows of g are the final
    // basis vectors in word coordinates.
    auto words = enumerate_words(plan.n, plan.k);
    auto idx = word_index(words);
    double worst = 0.0;
    std::vector<double> jmv(static_cast<size_t>(d));
    for (int p = 1; p <= n; ++p) {
      std::vector<std::vector<int>> actions;
      for (int j = 1; j < p; ++j) {
        std::vector<int> act(static_cast<size_t>(d));
        for (int x = 0; x < d; ++x) {
          Word w = words[static_cast<size_t>(x)];
          std::swap(w[static_cast<size_t>(j) - 1], w[static_cast<size_t>(p) - 1]);
          act[static_cast<size_t>(x)] = idx.at(w);
        }
        actions.push_back(std::move(act));
      }
      for (int row = 0; row < d; ++row) {
        const double* v = &g.a[static_cast<size_t>(row) * d];
        double alpha = plan.levels.back()[static_cast<size_t>(row)].tableau.contents()[static_cast<size_t>(p) - 1];
        std::fill(jmv.begin(), jmv.end(), 0.0);
        for (const auto& act : actions)
          for (int x = 0; x < d; ++x) jmv[static_cast<size_t>(act[static_cast<size_t>(x)])] += v[x];
        double res = 0.0;
        for (int x = 0; x < d; ++x) {
          double diff = jmv[static_cast<size_t>(x)] - alpha * v[x];
          res += diff * diff;
        }
        worst = std::max(worst, std::sqrt(res));
      }
    }
    add_check("jm-eigenvector", worst, 1e-8);
    rep.notes.push_back(
        "jm-eigenvector is insensitive to per-vector sign; the sign convention is not checked here");
  }

  {
    auto projectors = isotypic_projectors(plan.n, plan.k);
    double rank_worst = 0.0;
    for (size_t a = 0; a < projectors.size(); ++a) {
      double tr = 0.0;
      for (int j = 0; j < d; ++j) tr += projectors[a].at(j, j);
      double expect = static_cast<double>(binomial(plan.n, static_cast<int>(a)) -
                                          binomial(plan.n, static_cast<int>(a) - 1));
      rank_worst = std::max(rank_worst, std::abs(tr - expect));
    }
    add_check("projector-rank", rank_worst, 1e-6);

    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FunctionVector f{plan.n, plan.k, std::vector<double>(static_cast<size_t>(d))};
    for (auto& v : f.values) v = dist(rng);
    double fnorm = 0.0;
    for (double v : f.values) fnorm += v * v;
    fnorm = std::sqrt(fnorm);
    double worst = 0.0;
    for (size_t a = 0; a < projectors.size(); ++a) {
      FunctionVector fast = project(plan, f, {static_cast<int>(a)});
      double res = 0.0;
      for (int r = 0; r < d; ++r) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) acc += projectors[a].at(r, c) * f.values[static_cast<size_t>(c)];
        double diff = acc - fast.values[static_cast<size_t>(r)];
        res += diff * diff;
      }
      worst = std::max(worst, std::sqrt(res) / fnorm);
    }
    add_check("isotypic-projection", worst, 1e-8);
  }

  {
    // weights of a delta function: component a carries dim_a / dim exactly.
    double worst = 0.0;
    FunctionVector delta{plan.n, plan.k, std::vector<double>(static_cast<size_t>(d), 0.0)};
    for (int x = 0; x < d; ++x) {
      delta.values[static_cast<size_t>(x)] = 1.0;
      SpectralReport w = weights(plan, delta);
      for (size_t a = 0; a < w.weights.size(); ++a) {
        double expect = static_cast<double>(binomial(plan.n, static_cast<int>(a)) -
                                            binomial(plan.n, static_cast<int>(a) - 1)) /
                        static_cast<double>(d);
        worst = std::max(worst, std::abs(w.weights[a] - expect));
      }
      delta.values[static_cast<size_t>(x)] = 0.0;
    }
    add_check("delta-weights", worst, 1e-9);
  }

  return rep;
}

}  // namespace jfft::oracle
