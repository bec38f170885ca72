#include <doctest.h>

#include <random>

#include "hyperselect/errors.hpp"
#include "hyperselect/hyperspace.hpp"

using namespace hyperselect;

namespace {

Vector rv(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

SampledSet points(std::initializer_list<std::initializer_list<double>> ps) {
    std::vector<Vector> out;
    for (auto p : ps) out.push_back(rv(p));
    return SampledSet(std::move(out));
}

SampledSet segment(double lo, double hi, double mesh) {
    std::vector<Vector> out;
    const auto n = static_cast<long>(std::llround((hi - lo) / mesh));
    for (long i = 0; i <= n; ++i) out.push_back(rv({lo + (hi - lo) * double(i) / double(n)}));
    return SampledSet(std::move(out));
}

// Brute-force Hausdorff distance written independently of the library.
double brute_hausdorff(const SampledSet& a, const SampledSet& b) {
    auto one = [](const SampledSet& x, const SampledSet& y) {
        double h = 0.0;
        for (const auto& p : x.points()) {
            double d = 1e300;
            for (const auto& q : y.points()) d = std::min(d, (p - q).norm());
            h = std::max(h, d);
        }
        return h;
    };
    return std::max(one(a, b), one(b, a));
}

SampledSet random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vector> ps;
    for (std::size_t i = 0; i < n; ++i) {
        Vector p(dim);
        for (std::size_t j = 0; j < dim; ++j) p[j] = u(rng);
        ps.push_back(p);
    }
    return SampledSet(std::move(ps));
}

}  // namespace

TEST_CASE("min distance oracle") {
    const auto s = points({{0, 0}, {1, 2}});
    CHECK(min_distance_oracle(rv({1, 2}), s, NormSpec::l2()) == 0.0);
    CHECK(min_distance_oracle(rv({3, 4}), points({{0, 0}}), NormSpec::l2()) == doctest::Approx(5.0));
    const Subspace diag = Subspace::span({rv({1, 1})}, 2, NormSpec::linf(), Side::Primal);
    const SampledSet ball = sample_subspace_ball(diag, 0.05);
    // min over t of max(|1 - t|, |t|), by a fine scan.
    double oracle = 1e300;
    for (int i = 0; i <= 100000; ++i) {
        const double t = -1.0 + 2.0 * i / 100000.0;
        oracle = std::min(oracle, std::max(std::abs(1 - t), std::abs(t)));
    }
    CHECK(min_distance_oracle(rv({1, 0}), ball, NormSpec::linf()) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("hausdorff distance") {
    const auto a = points({{0}, {1}});
    CHECK(hausdorff_distance(a, a, NormSpec::l2()) == 0.0);
    CHECK(hausdorff_distance(points({{0}}), a, NormSpec::l2()) == doctest::Approx(1.0));
    const Vector e0 = Vector::Unit(3, 0);
    const auto unit = sample_disc(DiscFamily{e0, 1.0, ScalarField::Real}, 1000);
    const auto half = sample_disc(DiscFamily{e0, 0.5, ScalarField::Real}, 500);
    CHECK(std::abs(hausdorff_distance(unit, half, NormSpec::l2()) - 0.5) <= 1e-3);
}

TEST_CASE("hausdorff is a metric on samples and dominates wijsman gaps") {
    std::mt19937_64 rng(21);
    const auto probe = WijsmanProbe::random(2, 12, 2.0, 3);
    for (int t = 0; t < 100; ++t) {
        const auto a = random_cloud(rng, 6, 2), b = random_cloud(rng, 7, 2), c = random_cloud(rng, 5, 2);
        const double ab = hausdorff_distance(a, b, NormSpec::l2());
        CHECK(ab == hausdorff_distance(b, a, NormSpec::l2()));
        CHECK(ab == doctest::Approx(brute_hausdorff(a, b)).epsilon(1e-12));
        CHECK(hausdorff_distance(a, c, NormSpec::l2()) <= ab + hausdorff_distance(b, c, NormSpec::l2()) + 1e-12);
        CHECK(wijsman_gap(a, b, probe, NormSpec::l2()) <= ab + 1e-12);
    }
}

TEST_CASE("wijsman gap") {
    const auto a = points({{0}, {1}});
    const WijsmanProbe two({rv({0}), rv({1})}, {0.5, 0.5});
    CHECK(wijsman_gap(a, a, two, NormSpec::l2()) == 0.0);
    CHECK(wijsman_gap(points({{0}}), points({{1}}), two, NormSpec::l2()) == doctest::Approx(1.0));

    const auto line = [](double th) {
        return sample_subspace_ball(
            Subspace::span({rv({std::cos(th), std::sin(th)})}, 2, NormSpec::l2(), Side::Primal), 0.01);
    };
    const auto probe = WijsmanProbe::random(2, 16, 2.0, 7);
    const auto v0 = line(0.0);
    CHECK(wijsman_gap(line(0.1), v0, probe, NormSpec::l2()) < wijsman_gap(line(0.5), v0, probe, NormSpec::l2()));
    CHECK_THROWS(WijsmanProbe({rv({0})}, {1.5}));
}

TEST_CASE("open ball hits") {
    const auto s = points({{0, 0}});
    CHECK(hits_open_ball(s, rv({0, 0}), 0.1, NormSpec::l2()));
    CHECK_FALSE(hits_open_ball(s, rv({3, 4}), 5.0, NormSpec::l2()));
    const auto ball =
        sample_subspace_ball(Subspace::span({rv({1, 1})}, 2, NormSpec::linf(), Side::Primal), 0.05);
    CHECK(hits_open_ball(ball, rv({1, 0}), 0.6, NormSpec::linf()));
    CHECK_FALSE(hits_open_ball(ball, rv({1, 0}), 0.5, NormSpec::linf()));
}

TEST_CASE("pushforward") {
    const auto s = points({{1, 0}, {0, 2}});
    const auto same = pushforward([](const Vector& v) { return v; }, s);
    CHECK(same.points() == s.points());
    const auto twice = pushforward([](const Vector& v) { return Vector(2.0 * v); }, points({{1, 0}}));
    CHECK((twice.points()[0] - rv({2, 0})).norm() == 0.0);

    // Flags survive linear maps only.
    const auto ball = sample_subspace_ball(Subspace::whole(2, NormSpec::l2(), Side::Primal), 0.2);
    CHECK(pushforward([](const Vector& v) { return Vector(3.0 * v); }, ball, MapKind::Linear).flags().convex);
    CHECK_FALSE(pushforward([](const Vector& v) { return v; }, ball).flags().convex);
    CHECK_FALSE(pushforward([](const Vector& v) { return v; }, ball, MapKind::Linear).exact());
}

TEST_CASE("pushforward gaps") {
    // Isometries carry the gap over on image probes.
    std::mt19937_64 rng(22);
    const double th = 0.7;
    auto rot = [th](const Vector& v) {
        return rv({std::cos(th) * v[0].real() - std::sin(th) * v[1].real(),
                   std::sin(th) * v[0].real() + std::cos(th) * v[1].real()});
    };
    const auto probe = WijsmanProbe::random(2, 10, 2.0, 5);
    std::vector<Vector> moved;
    for (const auto& p : probe.probes()) moved.push_back(rot(p));
    const WijsmanProbe image(moved, probe.weights());
    for (int t = 0; t < 50; ++t) {
        const auto a = random_cloud(rng, 5, 2), b = random_cloud(rng, 5, 2);
        CHECK(wijsman_gap(pushforward(rot, a, MapKind::Linear), pushforward(rot, b, MapKind::Linear), image,
                          NormSpec::l2()) == doctest::Approx(wijsman_gap(a, b, probe, NormSpec::l2())).epsilon(1e-9));
    }
    // A 1-Lipschitz projection can create a gap on matched probes where none existed.
    const auto a = points({{1, 1}}), b = points({{-1, -1}});
    const WijsmanProbe p({rv({1, -1})}, {1.0});
    auto proj = [](const Vector& v) { return rv({v[0].real()}); };
    const WijsmanProbe q({rv({1})}, {1.0});
    CHECK(wijsman_gap(a, b, p, NormSpec::l2()) == 0.0);
    CHECK(wijsman_gap(pushforward(proj, a), pushforward(proj, b), q, NormSpec::l2()) == doctest::Approx(2.0));
}

TEST_CASE("fattened intersection") {
    const auto f = points({{0}, {1}, {2}});
    CHECK(fatten_intersect(rv({0}), f, 10.0, NormSpec::l2()).size() == 3);
    const auto g = fatten_intersect(rv({0}), f, 1.5, NormSpec::l2());
    REQUIRE(g.size() == 2);
    CHECK(g.points()[0][0].real() == 0.0);
    CHECK(g.points()[1][0].real() == 1.0);

    const auto seg = fatten_intersect(rv({0.9}), segment(0.0, 1.0, 1e-3), 0.25, NormSpec::l2());
    double lo = 1e300, hi = -1e300;
    for (const auto& p : seg.points()) {
        lo = std::min(lo, p[0].real());
        hi = std::max(hi, p[0].real());
        CHECK(p[0].real() > 0.65);
    }
    CHECK(lo - 0.65 <= 1e-3 + 1e-12);
    CHECK(1.0 - hi <= 1e-3 + 1e-12);
    CHECK_THROWS_AS(fatten_intersect(rv({5}), f, 1.0, NormSpec::l2()), EmptyIntersection);
}

TEST_CASE("shape report") {
    const auto ball = sample_subspace_ball(Subspace::whole(2, NormSpec::l2(), Side::Primal), 0.05);
    const auto r = shape_report(ball, 0.1);
    CHECK(r.balanced);
    CHECK(r.convex);
    CHECK_FALSE(shape_report(points({{1, 0}}), 0.1).balanced);
    const auto two = shape_report(points({{0}, {1}}), 0.1);
    CHECK_FALSE(two.convex);
    CHECK(two.convex_defect == doctest::Approx(0.5));
}
