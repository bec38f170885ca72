#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "hyperselect/normed.hpp"

namespace hyperselect {

enum class Side { Primal, Dual };

// Linear subspace of E (Primal) or E* (Dual) with a Euclidean-orthonormal basis.
// `ambient` is the norm of the space the subspace lives in.
class Subspace {
public:
    // Orthonormalizes the generators; dependent generators are dropped.
    static Subspace span(const std::vector<Vector>& generators, std::size_t ambient_dim,
                         NormSpec ambient, Side side, ScalarField field = ScalarField::Real);
    static Subspace whole(std::size_t ambient_dim, NormSpec ambient, Side side,
                          ScalarField field = ScalarField::Real);

    const std::vector<Vector>& basis() const noexcept { return basis_; }
    Matrix basis_matrix() const;  // ambient_dim x dim
    std::size_t dim() const noexcept { return basis_.size(); }
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    const NormSpec& ambient() const noexcept { return ambient_; }
    Side side() const noexcept { return side_; }
    ScalarField field() const noexcept { return field_; }

    Vector project(const Vector& v) const;
    // Coordinates of the orthogonal projection in the basis.
    Vector coordinates(const Vector& v) const;
    Vector point(const Vector& coords) const;
    // Euclidean distance from v to the subspace.
    double residual(const Vector& v) const;

private:
    std::vector<Vector> basis_;
    std::size_t ambient_dim_ = 0;
    NormSpec ambient_;
    Side side_ = Side::Primal;
    ScalarField field_ = ScalarField::Real;
};

// Largest principal angle between two subspaces of equal dimension (radians).
double principal_angle(const Subspace& a, const Subspace& b);

// Closed unit ball of a subspace in the subspace's ambient norm.
struct SubspaceBall {
    Subspace subspace;
};

// {lambda * direction : |lambda| <= radius}, lambda real or complex per `field`.
struct DiscFamily {
    Vector direction;
    double radius = 1.0;
    ScalarField field = ScalarField::Complex;
};

using ExactSet = std::variant<SubspaceBall, DiscFamily>;

struct SetFlags {
    bool convex = false;
    bool balanced = false;
};

// Finite sample standing in for a nonempty closed set.
class SampledSet {
public:
    SampledSet(std::vector<Vector> points, SetFlags flags = {},
               ScalarField field = ScalarField::Real, std::optional<ExactSet> exact = {});

    const std::vector<Vector>& points() const noexcept { return points_; }
    const SetFlags& flags() const noexcept { return flags_; }
    ScalarField field() const noexcept { return field_; }
    const std::optional<ExactSet>& exact() const noexcept { return exact_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.front().size()); }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<Vector> points_;
    SetFlags flags_;
    ScalarField field_;
    std::optional<ExactSet> exact_;
};

bool exact_contains(const ExactSet& set, const Vector& y, double tol = 1e-9);
std::size_t exact_dim(const ExactSet& set);

// d(x, exact set) under `spec`. Closed forms where available, otherwise a pattern search
// over the set's parameters started from `start` (a point of the set) with final step
// below 1e-4.
double exact_distance(const Vector& x, const ExactSet& set, const NormSpec& spec,
                      const Vector* start = nullptr);

// Minimum over samples, refined on the exact descriptor when one is present.
double min_distance_oracle(const Vector& x, const SampledSet& s, const NormSpec& spec);

// Samples-only minimum and the index of the nearest sample.
std::pair<double, std::size_t> nearest_sample(const Vector& x, const SampledSet& s,
                                              const NormSpec& spec);

// Unit ball of a subspace sampled on the coordinate grid of step `mesh` (real), or on a
// polar grid per coordinate (complex, one-dimensional), with points outside the ball
// pushed radially onto its boundary.
SampledSet sample_subspace_ball(const Subspace& v, double mesh);

// Disc family sampled on `rings` radii and `phases` angles (complex) or a uniform
// segment grid (real).
SampledSet sample_disc(const DiscFamily& disc, std::size_t rings = 16, std::size_t phases = 64);

}  // namespace hyperselect
