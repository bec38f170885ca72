#pragma once

#include <functional>
#include <vector>

#include "hyperselect/partition.hpp"

namespace hyperselect {

// Convex hull of finitely many real generator points, held in a local chart of its affine
// hull (affine dimension at most 2).
class ConvexValue {
public:
    explicit ConvexValue(std::vector<RealVector> generators);

    // Intersection with the closed ball B(center, radius) of `norm`. Euclidean balls are
    // replaced by an inscribed 256-gon when the hull is two-dimensional.
    ConvexValue clip_ball(const RealVector& center, double radius, const NormSpec& norm) const;

    std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(origin_.size()); }
    int affine_dim() const noexcept { return static_cast<int>(chart_.cols()); }
    const std::vector<RealVector>& generators() const noexcept { return generators_; }
    // Extreme points in ambient coordinates.
    std::vector<RealVector> vertices() const;

    RealVector nearest(const RealVector& v, const NormSpec& norm) const;
    double distance(const RealVector& v, const NormSpec& norm) const;

    // Grid samples (chart spacing `mesh`) together with the vertices, boundary points at
    // spacing `mesh`, and the nearest point to `center`, filtered to norm(y - center) < radius.
    std::vector<RealVector> sample_near(const RealVector& center, double radius, double mesh,
                                        const NormSpec& norm) const;
    std::vector<RealVector> sample(double mesh) const;

private:
    using P2 = Eigen::Vector2d;
    RealVector to_ambient(const Eigen::VectorXd& local) const { return origin_ + chart_ * local; }
    Eigen::VectorXd to_local(const RealVector& v) const { return chart_.transpose() * (v - origin_); }
    bool inside(const P2& q) const;
    std::pair<double, double> slice(double u) const;
    std::vector<RealVector> sample_impl(const RealVector* center, double radius, double mesh,
                                        const NormSpec& norm) const;

    std::vector<RealVector> generators_;
    RealVector origin_;
    Eigen::MatrixXd chart_;  // ambient x affine_dim, orthonormal columns
    double lo_ = 0.0, hi_ = 0.0;  // interval in the chart (affine dimension 1)
    std::vector<P2> polygon_;     // counter-clockwise hull (affine dimension 2)
};

// Golden-section minimizer of a convex function on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, int iters,
                  double* arg = nullptr);

}  // namespace hyperselect
