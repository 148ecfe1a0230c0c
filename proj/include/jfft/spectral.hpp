#pragma once

// Spectral analysis of functions on k-subsets: the squared weights of the
// s+1 isotypic components and band-pass projections, both through the fast
// transform.  Weights never reconstruct the component functions; projections
// zero coefficients outside the band and transform back.

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "jfft/transform.hpp"

namespace jfft {

struct SpectralReport {
  std::vector<double> weights;  // ||f_a||^2 for a = 0..s
  double total = 0.0;           // ||f||^2
  std::vector<double> shares;   // weights / total (zero vector when total == 0)
};

/// Weights of all isotypic components.  Costs at most (2n-1)*dim operations:
/// one forward transform plus one multiply-add per coefficient.
inline SpectralReport weights(const TransformPlan& plan, const FunctionVector& f,
                              OpCounter* counter = nullptr, int threads = 1) {
  GtCoefficients c = forward(plan, f, counter, threads);
  SpectralReport rep;
  rep.weights.assign(static_cast<size_t>(plan.num_components()), 0.0);
  for (size_t j = 0; j < c.values.size(); ++j)
    rep.weights[static_cast<size_t>(plan.gt_shape_a[j])] += c.values[j] * c.values[j];
  if (counter) counter->add(c.values.size());
  for (double w : rep.weights) rep.total += w;
  rep.shares.assign(rep.weights.size(), 0.0);
  if (rep.total > 0.0)
    for (size_t a = 0; a < rep.weights.size(); ++a) rep.shares[a] = rep.weights[a] / rep.total;
  return rep;
}

/// Band-pass projection onto the components listed in `h`.  Costs at most
/// 4*(n-1)*dim operations: forward, zero out-of-band coefficients, inverse.
inline FunctionVector project(const TransformPlan& plan, const FunctionVector& f,
                              const std::set<int>& h, OpCounter* counter = nullptr,
                              int threads = 1) {
  int s = plan.num_components() - 1;
  for (int a : h)
    if (a < 0 || a > s)
      throw std::invalid_argument("project: component index " + std::to_string(a) +
                                  " outside 0.." + std::to_string(s));
  GtCoefficients c = forward(plan, f, counter, threads);
  for (size_t j = 0; j < c.values.size(); ++j)
    if (!h.count(plan.gt_shape_a[j])) c.values[j] = 0.0;
  return inverse(plan, c, counter, threads);
}

}  // namespace jfft
