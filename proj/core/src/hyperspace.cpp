#include "hyperselect/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hyperselect {

WijsmanProbe::WijsmanProbe(std::vector<Vector> probes, std::vector<double> weights)
    : probes_(std::move(probes)), weights_(std::move(weights)) {
    if (probes_.empty()) throw PreconditionError("Wijsman probe needs at least one point");
    if (weights_.empty()) {
        for (std::size_t i = 0; i < probes_.size(); ++i)
            weights_.push_back(std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(i + 1, 1000))));
    }
    if (weights_.size() != probes_.size()) throw PreconditionError("one weight per probe point");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw PreconditionError("Wijsman weights must be positive");
        sum += w;
    }
    if (sum > 1.0 + 1e-12) throw PreconditionError("Wijsman weights sum above 1");
}

WijsmanProbe WijsmanProbe::random(std::size_t dim, std::size_t count, double radius,
                                  std::uint64_t seed, ScalarField field) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Vector> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vector v(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            double re = u(rng);
            double im = field == ScalarField::Complex ? u(rng) : 0.0;
            v[j] = {re, im};
        }
        pts.push_back(std::move(v));
    }
    return WijsmanProbe(std::move(pts));
}

double hausdorff_distance(const SampledSet& a, const SampledSet& b, const NormSpec& spec) {
    if (a.dim() != b.dim()) throw DimensionMismatch("Hausdorff distance across dimensions");
    double h = 0.0;
    for (const auto& p : a.points()) h = std::max(h, min_distance_oracle(p, b, spec));
    for (const auto& p : b.points()) h = std::max(h, min_distance_oracle(p, a, spec));
    return h;
}

double wijsman_gap(const SampledSet& a, const SampledSet& b, const WijsmanProbe& probe,
                   const NormSpec& spec) {
    double gap = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
        const auto& p = probe.probes()[i];
        gap += probe.weights()[i] *
               std::abs(min_distance_oracle(p, a, spec) - min_distance_oracle(p, b, spec));
    }
    return gap;
}

bool hits_open_ball(const SampledSet& f, const Vector& x, double r, const NormSpec& spec) {
    if (!(r > 0.0)) throw PreconditionError("ball radius must be positive");
    return min_distance_oracle(x, f, spec) < r - 1e-12;
}

SampledSet pushforward(const std::function<Vector(const Vector&)>& f, const SampledSet& s,
                       MapKind kind) {
    std::vector<Vector> img;
    img.reserve(s.size());
    for (const auto& p : s.points()) img.push_back(f(p));
    SetFlags flags = kind == MapKind::Linear ? s.flags() : SetFlags{};
    return SampledSet(std::move(img), flags, s.field());
}

SampledSet fatten_intersect(const Vector& x, const SampledSet& f, double r, const NormSpec& spec) {
    if (!(r > 0.0)) throw PreconditionError("fattening radius must be positive");
    std::vector<Vector> kept;
    for (const auto& p : f.points())
        if (distance(x, p, spec) < r) kept.push_back(p);
    if (kept.empty()) throw EmptyIntersection("no sample within the fattening radius");
    return SampledSet(std::move(kept), {}, f.field());
}

ShapeReport shape_report(const SampledSet& f, double tol, const NormSpec& spec) {
    ShapeReport rep;
    std::vector<Scalar> lambdas;
    if (f.field() == ScalarField::Real) {
        for (int i = -4; i <= 4; ++i) lambdas.emplace_back(i / 4.0, 0.0);
    } else {
        lambdas.emplace_back(0.0, 0.0);
        for (int r = 1; r <= 4; ++r)
            for (int a = 0; a < 16; ++a)
                lambdas.push_back(std::polar(r / 4.0, 2.0 * std::numbers::pi * a / 16.0));
    }
    const auto& pts = f.points();
    const std::size_t n = pts.size();
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    auto balance = [&](const Vector& p) {
        for (const auto& l : lambdas)
            rep.balance_defect =
                std::max(rep.balance_defect, nearest_sample(Vector(l * p), f, spec).first);
    };
    if (n <= 256) {
        for (const auto& p : pts) balance(p);
    } else {
        for (int t = 0; t < 512; ++t) balance(pts[pick(rng)]);
    }

    auto mid = [&](std::size_t i, std::size_t j) {
        Vector m = 0.5 * (pts[i] + pts[j]);
        rep.convex_defect = std::max(rep.convex_defect, nearest_sample(m, f, spec).first);
    };
    if (n <= 256) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) mid(i, j);
    } else {
        for (int t = 0; t < 32768; ++t) mid(pick(rng), pick(rng));
    }
    rep.balanced = rep.balance_defect <= tol;
    rep.convex = rep.convex_defect <= tol;
    return rep;
}

}  // namespace hyperselect
