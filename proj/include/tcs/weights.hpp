#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace tcs {

/// Rank-indexed weights g(0), g(1), ... for the discrete topological model.
struct DiscreteWeights {
    std::vector<double> table;
};

/// A nonnegative rate function on [0,1] of the normalized separation, with
/// its integral and the constants the stability estimates need.
class NormalizedKernel {
  public:
    /// g(s) = c.
    static NormalizedKernel constant(double c);
    /// g(s) = (scale/length) exp(-s/length).
    static NormalizedKernel exponential(double scale, double length);
    /// g(s) = c0 + c1 (1 - s).
    static NormalizedKernel affine(double c0, double c1);
    /// Arbitrary function; gamma by 1024-interval composite Simpson, Lipschitz
    /// constant and sup norm by sampling on a 4096-point grid.
    static NormalizedKernel custom(std::function<double(double)> g);

    double operator()(double s) const { return g_(s); }
    double gamma() const { return gamma_; }
    double lipschitz() const { return lipschitz_; }
    double sup() const { return sup_; }
    double inf() const { return inf_; }
    const std::string& family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

  private:
    NormalizedKernel(std::string family, std::vector<double> params, std::function<double(double)> g);

    std::string family_;
    std::vector<double> params_;
    std::function<double(double)> g_;
    double gamma_ = 0.0;
    double lipschitz_ = 0.0;
    double sup_ = 0.0;
    double inf_ = 0.0;
};

/// Classical metric rate g(r) = lambda / (sigma^2 + r^2)^beta.
struct MetricWeights {
    double lambda = 1.0;
    double sigma = 1.0;
    double beta = 0.25;

    double operator()(double r) const;
};

enum class WeightMode { topological_discrete, topological_normalized, metric };

/// Communication-rate specification for one of the three interaction modes.
class WeightFunction {
  public:
    static WeightFunction discrete(std::vector<double> table);
    static WeightFunction normalized(NormalizedKernel kernel);
    static WeightFunction metric(double lambda, double sigma, double beta);

    WeightMode mode() const;

    /// Sum of g(0..n-1); requires a discrete table of length >= n.
    double gamma_n(std::size_t n) const;
    /// Row normalizer for N agents: gamma_N for discrete tables, the sum of
    /// g(k/N) for normalized kernels, N for the metric rate.
    double row_normalizer(std::size_t n) const;
    /// Weight of rank `rank` among `n` agents (topological modes only).
    double rank_weight(std::size_t rank, std::size_t n) const;

    const DiscreteWeights& as_discrete() const { return std::get<DiscreteWeights>(spec_); }
    const NormalizedKernel& as_normalized() const { return std::get<NormalizedKernel>(spec_); }
    const MetricWeights& as_metric() const { return std::get<MetricWeights>(spec_); }

  private:
    explicit WeightFunction(std::variant<DiscreteWeights, NormalizedKernel, MetricWeights> spec)
        : spec_(std::move(spec))
    {
    }

    std::variant<DiscreteWeights, NormalizedKernel, MetricWeights> spec_;
};

} // namespace tcs
