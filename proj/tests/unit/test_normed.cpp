#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "hyperselect/errors.hpp"
#include "hyperselect/normed.hpp"

using namespace hyperselect;

namespace {

Vector real_vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

Vector random_vec(std::mt19937_64& rng, std::size_t n, bool complex) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {g(rng), complex ? g(rng) : 0.0};
    return v;
}

Matrix random_ball_matrix(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    Eigen::JacobiSVD<Matrix> svd(m);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return m * (u(rng) / svd.singularValues()(0));
}

}  // namespace

TEST_CASE("coordinate and matrix norms") {
    CHECK(eval_norm(real_vec({1, -2, 3}), NormSpec::linf()) == 3.0);
    CHECK(eval_norm(real_vec({1, -2, 3}), NormSpec::l1()) == 6.0);
    CHECK(eval_norm(real_vec({3, 4}), NormSpec::l2()) == doctest::Approx(5.0));
    CHECK(eval_norm(Matrix(Matrix::Identity(2, 2)), NormSpec::trace_norm()) == doctest::Approx(2.0));
    CHECK(eval_norm(Matrix(Matrix::Identity(3, 3)), NormSpec::operator_norm()) == doctest::Approx(1.0));
}

TEST_CASE("strong-star probe norm of a matrix unit") {
    const NormSpec spec = NormSpec::probe(NormKind::ProbeStrongStar, ProbeSequence::standard(4, 4));
    Matrix e11 = Matrix::Zero(4, 4);
    e11(0, 0) = 1.0;
    // Only the first probe sees e11: 2^-1 (1 + 1) / 2.
    CHECK(eval_norm(e11, spec) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("weak probe norm has one nonzero term on e12") {
    const ProbeSequence ps = ProbeSequence::standard(2, 2);
    const NormSpec spec = NormSpec::probe(NormKind::ProbeWeak, ps);
    Matrix e12 = Matrix::Zero(2, 2);
    e12(0, 1) = 1.0;
    double expect = 0.0;
    int nonzero = 0;
    for (std::size_t m = 0; m < spec.term_count(); ++m) {
        const auto [k, l] = ps.pairs()[m];
        const Scalar t = ps.vectors()[l].dot(e12 * ps.vectors()[k]);
        if (std::abs(t) > 0) ++nonzero;
        expect += std::ldexp(1.0, -static_cast<int>(m) - 1) * std::abs(t);
    }
    CHECK(nonzero == 1);
    CHECK(expect > 0.0);
    CHECK(eval_norm(e12, spec) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(probe_metric(e12, Matrix::Zero(2, 2), spec) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("dual norms") {
    CHECK(eval_dual_norm(real_vec({1, -2, 3}), NormSpec::l1()) == doctest::Approx(3.0));
    CHECK(eval_dual_norm(real_vec({3, 4}), NormSpec::l2()) == doctest::Approx(5.0));
    CHECK(eval_dual_norm(real_vec({1, 1, -1}), NormSpec::linf()) == doctest::Approx(3.0));
}

TEST_CASE("homogeneity over every norm kind") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    const std::vector<NormSpec> specs = {
        NormSpec::l1(), NormSpec::l2(), NormSpec::linf(), NormSpec::operator_norm(), NormSpec::trace_norm(),
        NormSpec::probe(NormKind::ProbeWeak, ProbeSequence::standard(3, 6)),
        NormSpec::probe(NormKind::ProbeStrong, ProbeSequence::standard(3, 6)),
        NormSpec::probe(NormKind::ProbeStrongStar, ProbeSequence::standard(3, 6))};
    for (const auto& spec : specs) {
        for (int t = 0; t < 200; ++t) {
            const Vector v = random_vec(rng, 9, true);
            const Scalar lambda{g(rng), g(rng)};
            const double lhs = eval_norm(Vector(lambda * v), spec);
            const double rhs = std::abs(lambda) * eval_norm(v, spec);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("dual norm against sampled predual ball") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto kind : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
        const NormSpec spec = NormSpec::of(kind);
        std::vector<Vector> ball;
        // Uniform directions pushed onto the sphere, plus the vertices for polyhedral norms.
        while (ball.size() < 10000) {
            Vector p(3);
            for (int i = 0; i < 3; ++i) p[i] = u(rng);
            const double n = eval_norm(p, spec);
            if (n > 0) ball.push_back(p / n);
        }
        for (int i = 0; i < 3; ++i)
            for (double s : {-1.0, 1.0}) ball.push_back(Vector::Unit(3, i) * s);
        for (int t = 0; t < 200; ++t) {
            Vector w = random_vec(rng, 3, false);
            double sampled = 0.0;
            for (const auto& p : ball) sampled = std::max(sampled, std::abs(pair(w, p)));
            const double exact = eval_dual_norm(w, spec);
            CHECK(exact >= sampled - 1e-12);
            CHECK(exact - sampled <= 2e-2 * std::max(1.0, exact));
        }
    }
}

TEST_CASE("probe metric axioms and domination") {
    std::mt19937_64 rng(13);
    const NormSpec spec = NormSpec::probe(NormKind::ProbeStrongStar, ProbeSequence::standard(3, 8, 5));
    const NormSpec weak = NormSpec::probe(NormKind::ProbeWeak, ProbeSequence::standard(3, 4));
    for (int t = 0; t < 100; ++t) {
        const Matrix a = random_ball_matrix(rng, 3), b = random_ball_matrix(rng, 3),
                     c = random_ball_matrix(rng, 3);
        CHECK(probe_metric(a, a, spec) == 0.0);
        CHECK(probe_metric(a, c, spec) <= probe_metric(a, b, spec) + probe_metric(b, c, spec) + 1e-12);
        CHECK(probe_metric(a, c, weak) <= probe_metric(a, b, weak) + probe_metric(b, c, weak) + 1e-12);
        CHECK(probe_metric(a, b, spec) <= 2.0 * operator_norm(a - b) + 1e-12);
    }
    CHECK_THROWS_AS(probe_metric(Matrix(2.0 * Matrix::Identity(3, 3)), Matrix::Zero(3, 3), spec),
                    PreconditionError);
}

TEST_CASE("probe sequence prefixes are stable") {
    const auto a = ProbeSequence::standard(3, 5, 9);
    const auto b = ProbeSequence::standard(3, 20, 9);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a.vectors()[i] - b.vectors()[i]).norm() == 0.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK((b.vectors()[i] - Vector::Unit(3, i)).norm() == 0.0);
    CHECK_THROWS_AS(ProbeSequence({}, {}), MissingProbes);
}

TEST_CASE("cantor enumeration covers pairs") {
    const auto p0 = cantor_unpair(0);
    CHECK(p0.k == 0);
    CHECK(p0.l == 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t m = 0; m < 15; ++m) {
        const auto p = cantor_unpair(m);
        seen.insert({p.k, p.l});
    }
    CHECK(seen.size() == 15);
    for (std::size_t s = 0; s < 5; ++s)
        for (std::size_t k = 0; k <= s; ++k) CHECK(seen.count({k, s - k}) == 1);
}

TEST_CASE("norm kind names round-trip") {
    for (auto k : {NormKind::L1, NormKind::L2, NormKind::Linf, NormKind::OperatorNorm, NormKind::TraceNorm,
                   NormKind::ProbeWeak, NormKind::ProbeStrong, NormKind::ProbeStrongStar})
        CHECK(norm_kind_from_string(to_string(k)) == k);
    CHECK_THROWS(norm_kind_from_string("L3"));
    CHECK_THROWS_AS(eval_norm(Matrix(Matrix::Zero(2, 2)), NormSpec::probe(NormKind::ProbeStrong,
                                                                         ProbeSequence::standard(3, 3))),
                    DimensionMismatch);
}
