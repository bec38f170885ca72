#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperselect/normed.hpp"

namespace hyperselect {

using RealVector = Eigen::VectorXd;

// Finite stand-in for a compact metric domain.
class DiscreteDomain {
public:
    DiscreteDomain(std::vector<RealVector> points, NormSpec metric = NormSpec::l2());

    // Tensor grid over the box [lo, hi] with counts[i] points along axis i.
    static DiscreteDomain grid(const RealVector& lo, const RealVector& hi,
                               const std::vector<std::size_t>& counts,
                               NormSpec metric = NormSpec::l2());

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.front().size()); }
    const std::vector<RealVector>& points() const noexcept { return points_; }
    const RealVector& point(std::size_t i) const { return points_[i]; }
    const NormSpec& metric() const noexcept { return metric_; }
    double mesh() const noexcept { return h_; }  // max nearest-neighbour spacing

    double distance(std::size_t i, std::size_t j) const;
    // d(x_i, X \ U) for U given as a membership mask; +inf when U is everything.
    double complement_distance(std::size_t i, const std::vector<char>& member) const;
    // Unordered pairs at distance <= mesh.
    std::vector<std::pair<std::size_t, std::size_t>> adjacent_pairs() const;

private:
    std::vector<RealVector> points_;
    NormSpec metric_;
    double h_ = 0.0;
    // Neighbour order by distance, kept for small domains.
    std::vector<std::vector<std::uint32_t>> order_;
};

double real_distance(const RealVector& a, const RealVector& b, const NormSpec& spec);

// Open cover of a discrete domain by membership lists.
class OpenCover {
public:
    explicit OpenCover(std::vector<std::vector<std::uint32_t>> members);

    // Open balls {x : d(x, c) < r}.
    static OpenCover from_balls(const DiscreteDomain& x, const std::vector<RealVector>& centers,
                                const std::vector<double>& radii);

    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<std::uint32_t>& members(std::size_t i) const { return members_[i]; }

    // Throws NotACover naming the first uncovered point.
    void require_covers(const DiscreteDomain& x) const;

private:
    std::vector<std::vector<std::uint32_t>> members_;
};

// rho_n for each cover element n, stored sparsely.
class PartitionOfUnity {
public:
    std::size_t elements() const noexcept { return values_.size(); }
    std::size_t points() const noexcept { return support_count_.size(); }
    const std::vector<std::pair<std::uint32_t, double>>& values(std::size_t n) const {
        return values_[n];
    }
    // (element, weight) pairs with positive weight at point i, by element index.
    const std::vector<std::pair<std::uint32_t, double>>& at(std::size_t i) const { return at_[i]; }
    std::size_t support_count(std::size_t i) const { return support_count_[i]; }
    std::size_t max_support() const noexcept { return max_support_; }

private:
    friend PartitionOfUnity build_partition_of_unity(const DiscreteDomain&, const OpenCover&);
    std::vector<std::vector<std::pair<std::uint32_t, double>>> values_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> at_;
    std::vector<std::size_t> support_count_;
    std::size_t max_support_ = 0;
};

// g_n = 2^-n min(1, d(x, X \ U_n)) with n counted from 1, g = sup g_n,
// f_n = max(0, g_n - g/2), rho_n = f_n / sum f. Evaluated relative to the dominant term so
// that large cover indices do not underflow.
PartitionOfUnity build_partition_of_unity(const DiscreteDomain& x, const OpenCover& cover);

}  // namespace hyperselect
