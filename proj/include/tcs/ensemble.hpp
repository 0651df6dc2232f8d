#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tcs {

/// Positions and velocities of N agents in R^d, stored agent-major
/// (agent i occupies entries [i*d, (i+1)*d) of each array).
class AgentEnsemble {
  public:
    AgentEnsemble() = default;

    AgentEnsemble(std::size_t dim, std::vector<double> positions, std::vector<double> velocities)
        : dim_(dim), positions_(std::move(positions)), velocities_(std::move(velocities))
    {
        if (dim_ < 1 || dim_ > 3)
            throw std::invalid_argument("AgentEnsemble: dimension must be 1, 2 or 3");
        if (positions_.empty() || positions_.size() % dim_ != 0)
            throw std::invalid_argument("AgentEnsemble: positions must hold N >= 1 points of length d");
        if (velocities_.size() != positions_.size())
            throw std::invalid_argument("AgentEnsemble: positions and velocities differ in length");
        for (double value : positions_)
            if (!std::isfinite(value))
                throw std::invalid_argument("AgentEnsemble: non-finite position coordinate");
        for (double value : velocities_)
            if (!std::isfinite(value))
                throw std::invalid_argument("AgentEnsemble: non-finite velocity coordinate");
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : positions_.size() / dim_; }

    std::span<const double> position(std::size_t i) const { return {positions_.data() + i * dim_, dim_}; }
    std::span<const double> velocity(std::size_t i) const { return {velocities_.data() + i * dim_, dim_}; }
    std::span<double> position(std::size_t i) { return {positions_.data() + i * dim_, dim_}; }
    std::span<double> velocity(std::size_t i) { return {velocities_.data() + i * dim_, dim_}; }

    const std::vector<double>& positions() const { return positions_; }
    const std::vector<double>& velocities() const { return velocities_; }
    std::vector<double>& positions() { return positions_; }
    std::vector<double>& velocities() { return velocities_; }

    bool all_finite() const
    {
        for (double value : positions_)
            if (!std::isfinite(value))
                return false;
        for (double value : velocities_)
            if (!std::isfinite(value))
                return false;
        return true;
    }

    friend bool operator==(const AgentEnsemble&, const AgentEnsemble&) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<double> positions_;
    std::vector<double> velocities_;
};

inline double distance(std::span<const double> a, std::span<const double> b)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double diff = a[c] - b[c];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

inline double norm(std::span<const double> a)
{
    double sum = 0.0;
    for (double value : a)
        sum += value * value;
    return std::sqrt(sum);
}

} // namespace tcs
