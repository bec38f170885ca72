#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hyperselect/errors.hpp"
#include "hyperselect/selection.hpp"

using namespace hyperselect;

namespace {

RealVector r1(double a) { return RealVector::Constant(1, a); }
RealVector r2(double a, double b) { return (RealVector(2) << a, b).finished(); }

DiscreteDomain interval(std::size_t n) { return DiscreteDomain::grid(r1(0.0), r1(1.0), {n}); }

SetValuedMap on_interval(std::size_t n, const std::function<std::vector<RealVector>(double)>& gens,
                         TargetBox box, NormSpec norm = NormSpec::l2()) {
    auto dom = interval(n);
    std::vector<ConvexValue> vals;
    for (const auto& p : dom.points()) vals.emplace_back(gens(p[0]));
    return SetValuedMap(std::move(dom), std::move(vals), std::move(norm), std::move(box));
}

std::vector<RealVector> line_net(double lo, double hi, std::size_t n) {
    std::vector<RealVector> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(r1(lo + (hi - lo) * double(i) / double(n - 1)));
    return out;
}

}  // namespace

TEST_CASE("partition of unity on a two-set cover") {
    const auto x = interval(1001);
    std::vector<std::uint32_t> u1, u2, all;
    for (std::uint32_t i = 0; i < x.size(); ++i) {
        const double t = x.point(i)[0];
        if (t < 0.6) u1.push_back(i);
        if (t > 0.4) u2.push_back(i);
        all.push_back(i);
    }
    const auto single = build_partition_of_unity(x, OpenCover({all}));
    for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE(single.at(i).size() == 1);
        CHECK(single.at(i)[0].second == 1.0);
    }

    const auto pu = build_partition_of_unity(x, OpenCover({u1, u2}));
    // At x = 0.5: g1 = 0.05, g2 = 0.025, so f2 = 0.
    REQUIRE(pu.at(500).size() == 1);
    CHECK(pu.at(500)[0].first == 0);
    CHECK(pu.at(500)[0].second == doctest::Approx(1.0).epsilon(1e-12));
    // At x = 1: g1 = 0, g2 = 0.15.
    REQUIRE(pu.at(1000).size() == 1);
    CHECK(pu.at(1000)[0].first == 1);
    CHECK(pu.at(1000)[0].second == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(build_partition_of_unity(x, OpenCover({u1})), NotACover);
}

TEST_CASE("partition of unity axioms on ball covers") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto x = DiscreteDomain::grid(r2(0, 0), r2(1, 1), {15, 15});
    for (int t = 0; t < 10; ++t) {
        std::vector<RealVector> centers;
        std::vector<double> radii;
        for (int k = 0; k < 30; ++k) {
            centers.push_back(r2(u(rng), u(rng)));
            radii.push_back(0.2 + 0.3 * u(rng));
        }
        centers.push_back(r2(0.5, 0.5));
        radii.push_back(1.0);
        const auto cover = OpenCover::from_balls(x, centers, radii);
        const auto pu = build_partition_of_unity(x, cover);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double sum = 0.0;
            for (auto [n, w] : pu.at(i)) {
                CHECK(w > 0.0);
                CHECK(w <= 1.0);
                const auto& m = cover.members(n);
                CHECK(std::binary_search(m.begin(), m.end(), static_cast<std::uint32_t>(i)));
                sum += w;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
            CHECK(pu.support_count(i) == pu.at(i).size());
        }
    }
}

TEST_CASE("convex value nearest points against a scan") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    const ConvexValue seg({r2(0, 0), r2(1, 0.5)});
    const ConvexValue tri({r2(0, 0), r2(1, 0), r2(0.3, 1)});
    for (const auto& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
        for (int t = 0; t < 30; ++t) {
            const RealVector v = r2(u(rng), u(rng));
            double best_seg = 1e300, best_tri = 1e300;
            for (int i = 0; i <= 400; ++i) {
                const double a = i / 400.0;
                best_seg = std::min(best_seg, real_distance(v, r2(a, 0.5 * a), norm));
                for (int j = 0; j <= 400 - i; ++j) {
                    const double b = j / 400.0;
                    const RealVector p = a * r2(1, 0) + b * r2(0.3, 1);
                    best_tri = std::min(best_tri, real_distance(v, p, norm));
                }
            }
            CHECK(seg.distance(v, norm) <= best_seg + 1e-9);
            CHECK(seg.distance(v, norm) >= best_seg - 5e-3);
            CHECK(tri.distance(v, norm) <= best_tri + 1e-9);
            CHECK(tri.distance(v, norm) >= best_tri - 5e-3);
        }
    }
}

TEST_CASE("convex value clipping") {
    const ConvexValue seg({r1(0.0), r1(1.0)});
    const auto c = seg.clip_ball(r1(0.9), 0.25, NormSpec::l2());
    CHECK(c.distance(r1(0.65), NormSpec::l2()) <= 1e-12);
    CHECK(c.distance(r1(1.0), NormSpec::l2()) <= 1e-12);
    CHECK(c.distance(r1(0.5), NormSpec::l2()) == doctest::Approx(0.15));
    CHECK_THROWS_AS(seg.clip_ball(r1(3.0), 0.5, NormSpec::l2()), EmptyIntersection);
    CHECK_THROWS(ConvexValue({r2(0, 0)}).clip_ball(r2(0, 0), 1.0, NormSpec::probe(NormKind::ProbeStrong,
                                                                                   ProbeSequence::standard(2, 2))));
}

TEST_CASE("approximate selection") {
    const auto f = on_interval(21, [](double x) { return std::vector<RealVector>{r1(0.3 + 0.2 * x)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    const auto s = approx_selection(f, 0.1, line_net(0.0, 1.0, 41));
    for (std::size_t x = 0; x < f.domain().size(); ++x) {
        CHECK(f.value(x).distance(s.values[x], f.norm()) < 0.1);
        double sum = 0.0;
        for (auto [n, c] : s.coefficients[x]) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }

    const double inf = std::numeric_limits<double>::infinity();
    const auto g = on_interval(51, [](double x) { return std::vector<RealVector>{r1(x), r1(1.0)}; },
                               TargetBox{r1(-inf), r1(inf)});
    const auto a = approx_selection(g, 0.5, line_net(-1.0, 2.0, 31));
    for (std::size_t x = 0; x < g.domain().size(); ++x) {
        const double v = a.values[x][0], t = g.domain().point(x)[0];
        CHECK(v > t - 0.5);
        CHECK(v < 1.5);
    }
    CHECK_THROWS_AS(approx_selection(g, 0.01, {r1(5.0)}), NetTooCoarse);
}

TEST_CASE("michael iteration") {
    const auto f = on_interval(101, [](double x) { return std::vector<RealVector>{r1(x), r1(1.0)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    const auto r = michael_selection(f, 1e-3);
    for (std::size_t x = 0; x < f.domain().size(); ++x) {
        CHECK(r.selection[x][0] >= f.domain().point(x)[0] - 1e-3);
        CHECK(r.selection[x][0] <= 1.0 + 1e-3);
    }
    REQUIRE_FALSE(r.log.empty());
    for (const auto& rec : r.log) {
        CHECK(rec.max_step <= rec.step_bound);
        CHECK(rec.step_bound == std::ldexp(1.0, -rec.k));
        CHECK(rec.max_defect <= 2.0 * rec.step_bound);
    }

    // Singleton values: the selection is the function itself.
    const auto g = on_interval(51, [](double x) { return std::vector<RealVector>{r1(0.2 + 0.5 * x * x)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    const auto rg = michael_selection(g, 1e-3);
    for (std::size_t x = 0; x < g.domain().size(); ++x) {
        const double t = g.domain().point(x)[0];
        CHECK(std::abs(rg.selection[x][0] - (0.2 + 0.5 * t * t)) <= 1e-3);
    }
    CHECK(static_cast<double>(rg.log.size()) <= std::ceil(std::log2(1e3)) + 4);

    const auto v = on_interval(41, [](double x) { return std::vector<RealVector>{r2(x, 0), r2(x, 1)}; },
                               TargetBox{r2(0, 0), r2(1, 1)});
    const auto rv = michael_selection(v, 1e-3);
    for (const auto& p : rv.selection) {
        CHECK(p[0] >= -1e-12);
        CHECK(p[0] <= 1 + 1e-12);
        CHECK(p[1] >= -1e-12);
        CHECK(p[1] <= 1 + 1e-12);
    }
    CHECK(selection_modulus(v, rv.selection) <= 10.0 * v.domain().mesh());
}

TEST_CASE("dense selection family") {
    const auto f = on_interval(21, [](double) { return std::vector<RealVector>{r1(0.0), r1(1.0)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    const auto net = line_net(0.0, 1.0, 3);
    const auto fam2 = dense_selection_family(f, net, 2, 2, 1e-3);
    CHECK(fam2.front().n == -1);
    // Every net point of F(x) has a member value within 1/2 + tol.
    for (std::size_t x = 0; x < f.domain().size(); ++x)
        for (const auto& w : net) {
            double best = 1e300;
            for (const auto& m : fam2) best = std::min(best, std::abs(m.selection[x][0] - w[0]));
            CHECK(best <= 0.5 + 1e-3);
        }
    for (const auto& m : fam2) CHECK(max_defect(f, m.selection) <= 1e-3);
    const auto fam4 = dense_selection_family(f, line_net(0.0, 1.0, 9), 4, 4, 1e-3);
    CHECK(density_audit(f, fam4) <= density_audit(f, dense_selection_family(f, line_net(0.0, 1.0, 9), 2, 2, 1e-3)));
    CHECK(density_audit(f, fam4) <= 0.25 + 2e-3);

    const auto g = on_interval(21, [](double x) { return std::vector<RealVector>{r1(0.5 * x)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    for (const auto& m : dense_selection_family(g, net, 2, 2, 1e-3))
        for (std::size_t x = 0; x < g.domain().size(); ++x)
            CHECK(std::abs(m.selection[x][0] - 0.5 * g.domain().point(x)[0]) <= 1e-3);
}

TEST_CASE("lower continuity") {
    const auto c = on_interval(51, [](double) { return std::vector<RealVector>{r1(0.2), r1(0.7)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    const auto probes = box_probes(c.target(), 9);
    const auto rc = check_lower_continuity(c, probes, 0.0);
    CHECK(rc.ok);
    CHECK(rc.defect == 0.0);
    const auto u = on_interval(51, [](double x) { return std::vector<RealVector>{r1(x), r1(1.0)}; },
                               TargetBox{r1(0.0), r1(1.0)});
    CHECK(check_lower_continuity(u, probes, 1.0).ok);
    const auto jump = jump_map(101);
    const auto rj = check_lower_continuity(jump.map, probes, jump.slope);
    CHECK_FALSE(rj.ok);
    CHECK(rj.defect == doctest::Approx(0.99).epsilon(1e-9));
}

TEST_CASE("bundled suite is lower continuous") {
    const auto suite = selection_suite(41);
    CHECK(suite.size() == 10);
    for (const auto& s : suite) CHECK(check_lower_continuity(s.map, box_probes(s.map.target(), 7), s.slope).ok);
}
