#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hyperselect/sampled_set.hpp"

namespace hyperselect {

// Test points and weights of a truncated Wijsman pseudometric.
class WijsmanProbe {
public:
    // Weights default to 2^-(i+1); supplied weights must be positive with sum <= 1.
    explicit WijsmanProbe(std::vector<Vector> probes, std::vector<double> weights = {});

    // `count` points drawn uniformly from [-radius, radius]^dim (real) or the complex
    // analogue, fixed by `seed`.
    static WijsmanProbe random(std::size_t dim, std::size_t count, double radius,
                               std::uint64_t seed, ScalarField field = ScalarField::Real);

    const std::vector<Vector>& probes() const noexcept { return probes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return probes_.size(); }

private:
    std::vector<Vector> probes_;
    std::vector<double> weights_;
};

double hausdorff_distance(const SampledSet& a, const SampledSet& b, const NormSpec& spec);

double wijsman_gap(const SampledSet& a, const SampledSet& b, const WijsmanProbe& probe,
                   const NormSpec& spec);

// d(x, F) < r - 1e-12.
bool hits_open_ball(const SampledSet& f, const Vector& x, double r, const NormSpec& spec);

enum class MapKind { General, Linear };

// Image samples. Convexity and balancedness survive only linear maps; the exact
// descriptor is dropped.
SampledSet pushforward(const std::function<Vector(const Vector&)>& f, const SampledSet& s,
                       MapKind kind = MapKind::General);

// Samples of F at distance < r from x. Throws EmptyIntersection when none qualify.
SampledSet fatten_intersect(const Vector& x, const SampledSet& f, double r, const NormSpec& spec);

struct ShapeReport {
    bool balanced = false;
    bool convex = false;
    double balance_defect = 0.0;  // worst distance of lambda * p to F
    double convex_defect = 0.0;   // worst distance of a midpoint to F
};

// Balancedness over a grid of scalars |lambda| <= 1 (real: 9 values in [-1, 1]; complex:
// 4 radii x 16 phases plus 0); convexity over midpoints of all pairs. Samples with more
// than 256 points are checked on 512 seeded points and 32768 seeded pairs.
ShapeReport shape_report(const SampledSet& f, double tol, const NormSpec& spec = NormSpec::l2());

}  // namespace hyperselect
