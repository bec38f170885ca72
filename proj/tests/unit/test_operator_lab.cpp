#include <doctest.h>

#include <random>

#include "hyperselect/errors.hpp"
#include "hyperselect/operator_lab.hpp"

using namespace hyperselect;

namespace {

Matrix mat2(Scalar a, Scalar b, Scalar c, Scalar d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double svd_trace_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

Matrix ginibre(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

MatrixAlgebra diagonal(std::size_t n) {
    std::vector<Matrix> b;
    for (std::size_t k = 0; k < n; ++k) b.push_back(matrix_unit(n, k, k));
    return MatrixAlgebra(n, b);
}

MatrixAlgebra full(std::size_t n) {
    std::vector<Matrix> b;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) b.push_back(matrix_unit(n, k, l));
    return MatrixAlgebra(n, b);
}

MatrixAlgebra rotated(double th) {
    const Matrix u = mat2(std::cos(th), -std::sin(th), std::sin(th), std::cos(th));
    return MatrixAlgebra(2, {u * matrix_unit(2, 0, 0) * u.adjoint(), u * matrix_unit(2, 1, 1) * u.adjoint()});
}

SampledSet vec_samples(const std::vector<Matrix>& ms) {
    std::vector<Vector> v;
    for (const auto& m : ms) v.push_back(vec(m));
    return SampledSet(v, {}, ScalarField::Complex);
}

SampledSet ball_of(const MatrixAlgebra& a, std::size_t count, std::uint64_t seed) {
    std::vector<Vector> v;
    for (const auto& m : unit_ball_sample(a, count, seed)) v.push_back(vec(m));
    return SampledSet(v, {true, true}, ScalarField::Complex, SubspaceBall{a.as_subspace()});
}

}  // namespace

TEST_CASE("generated algebras") {
    const auto scalars = generate_algebra({}, 3);
    CHECK(scalars.dim() == 1);
    CHECK(scalars.unital());
    CHECK(generate_algebra({matrix_unit(2, 0, 1)}, 2).dim() == 4);
    CHECK(generate_algebra({mat2(1, 0, 0, 2)}, 2).dim() == 2);
    CHECK(generate_algebra({matrix_unit(3, 0, 1), matrix_unit(3, 1, 2)}, 3).dim() == 9);
    CHECK_THROWS_AS(generate_algebra({}, 13), CapExceeded);
    CHECK_THROWS_AS(generate_algebra({Matrix::Zero(2, 2)}, 3), DimensionMismatch);
}

TEST_CASE("unit ball samples") {
    std::mt19937_64 rng(51);
    const auto a = generate_algebra({mat2(1, 2, 0, 1)}, 2);
    const auto s = unit_ball_sample(a, 200, 4);
    REQUIRE(s.size() == 200);
    CHECK((s.front() - Matrix::Identity(2, 2)).norm() == 0.0);
    for (const auto& m : s) {
        CHECK(operator_norm(m) <= 1.0 + 1e-9);
        CHECK(a.residual(m) <= 1e-9);
    }
    const auto m2 = full(2);
    const auto big = unit_ball_sample(m2, 10000, 5);
    for (int t = 0; t < 5; ++t) {
        const Matrix x = ginibre(rng, 2);
        double best = 0.0;
        for (const auto& b : big) best = std::max(best, std::abs((b * x).trace()));
        CHECK(svd_trace_norm(x) - best <= 5e-2);
        CHECK(best <= svd_trace_norm(x) + 1e-9);
    }
}

TEST_CASE("support closed form") {
    CHECK(marechal_support(full(2), Matrix::Identity(2, 2)) == doctest::Approx(2.0));
    CHECK(marechal_support(diagonal(2), mat2(1, 1, 1, -1)) == doctest::Approx(2.0));
    CHECK(marechal_support(generate_algebra({}, 2), matrix_unit(2, 0, 1)) <= 1e-12);
    const auto sample = unit_ball_sample(diagonal(2), 2000, 3);
    CHECK(sampled_support(diagonal(2), mat2(1, 1, 1, -1), sample) >= 2.0 - 5e-2);

    std::mt19937_64 rng(52);
    for (int t = 0; t < 10; ++t) {
        const auto a = generate_algebra({ginibre(rng, 3) * Matrix(matrix_unit(3, 0, 0))}, 3);
        const auto s = unit_ball_sample(a, 2000, 9 + t);
        const Matrix x = ginibre(rng, 3);
        const double closed = marechal_support(a, x);
        CHECK(closed == doctest::Approx(svd_trace_norm(a.project(x))).epsilon(1e-10));
        const double sampled = sampled_support(a, x, s);
        CHECK(sampled <= closed + 1e-9);
        CHECK(closed <= sampled + 5e-2);
    }
}

TEST_CASE("support under unitary conjugation") {
    std::mt19937_64 rng(53);
    const Matrix u = random_unitary(3, 8);
    const auto d3 = diagonal(3);
    std::vector<Matrix> conj;
    for (const auto& b : d3.basis()) conj.push_back(u * b * u.adjoint());
    const MatrixAlgebra c(3, conj);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = ginibre(rng, 3);
        CHECK(std::abs(marechal_support(c, x) - marechal_support(d3, u.adjoint() * x * u)) <= 1e-9);
    }
}

TEST_CASE("support pseudometric") {
    const auto probes = marechal_probes(2, 4, 0);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK((probes[2 * l + k] - matrix_unit(2, k, l)).norm() == 0.0);
    CHECK(marechal_pseudometric(full(2), full(2), probes) == 0.0);
    double prev = 1e300;
    for (int i = 16; i >= 0; --i) {
        const double th = M_PI / 8 * i / 16.0;
        const double d = marechal_pseudometric(rotated(th), rotated(0), probes);
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
    CHECK(prev <= 1e-12);
    // e12 separates: support 0 in the diagonal algebra, 1 in M_2.
    CHECK(marechal_support(diagonal(2), matrix_unit(2, 0, 1)) <= 1e-15);
    CHECK(marechal_support(full(2), matrix_unit(2, 0, 1)) == doctest::Approx(1.0));
    CHECK(marechal_pseudometric(diagonal(2), full(2), probes) > 0.0);

    std::mt19937_64 rng(54);
    const auto pr = marechal_probes(2, 8, 3);
    std::vector<MatrixAlgebra> algs = {diagonal(2), full(2), rotated(0.3), generate_algebra({}, 2)};
    for (const auto& a : algs)
        for (const auto& b : algs) {
            CHECK(marechal_pseudometric(a, b, pr) == marechal_pseudometric(b, a, pr));
            for (const auto& c : algs)
                CHECK(marechal_pseudometric(a, c, pr) <=
                      marechal_pseudometric(a, b, pr) + marechal_pseudometric(b, c, pr) + 1e-12);
        }
}

TEST_CASE("algebra laws") {
    const auto a = generate_algebra({mat2(0, 1, 1, 0)}, 2);
    const auto laws = algebra_laws_report(ball_of(a, 40, 2), 1e-6);
    CHECK(laws.adjoint_closed);
    CHECK(laws.has_unit);
    CHECK(laws.mult_closed);

    std::vector<Matrix> line, sym;
    for (int i = -10; i <= 10; ++i) {
        line.push_back(Scalar(i / 10.0) * matrix_unit(2, 0, 1));
        sym.push_back(Scalar(i / 10.0) * mat2(0, 1, 1, 0));
    }
    const auto l = algebra_laws_report(vec_samples(line), 1e-6);
    CHECK(l.mult_closed);
    CHECK_FALSE(l.has_unit);
    const auto s = algebra_laws_report(vec_samples(sym), 1e-6);
    CHECK(s.adjoint_closed);
    CHECK_FALSE(s.mult_closed);

    std::vector<std::uint64_t> masks = {0b01, 0b11};
    const auto fs = build_fS(SubsetSeq(2, masks));
    const auto fl = algebra_laws_report(ball_of(fs.algebra, 60, 1), 1e-9);
    CHECK(fl.adjoint_closed);
    CHECK(fl.has_unit);
    CHECK(fl.mult_closed);
}

TEST_CASE("adjoint modulus") {
    const std::vector<double> eps = {0.1, 0.3};
    const auto c1 = adjoint_modulus(generate_algebra({}, 2), eps, 200, 1,
                                    NormSpec::probe(NormKind::ProbeStrong, ProbeSequence::standard(2, 2)));
    for (const auto& p : c1) {
        CHECK(p.delta > p.eps);
        CHECK(p.delta <= p.eps + 0.05);
    }
    // The matrix unit e_{1k} has d(x, 0) = 2^-k while d(x*, 0) = 1/2.
    double prev = 2.0;
    for (std::size_t m = 2; m <= 4; ++m) {
        const auto d = adjoint_modulus(full(m), {0.1}, 100, 1,
                                       NormSpec::probe(NormKind::ProbeStrong, ProbeSequence::standard(m, m)));
        CHECK(d[0].delta <= std::ldexp(1.0, -static_cast<int>(m)) + 1e-15);
        CHECK(d[0].delta < prev);
        prev = d[0].delta;
    }
    auto block = [](std::size_t b) {
        std::vector<std::uint64_t> masks(8, 0);
        masks[0] = (1ULL << b) - 1;
        const auto fs = build_fS(SubsetSeq(8, masks));
        return adjoint_modulus(fs.algebra, {0.1}, 200, 7,
                               NormSpec::probe(NormKind::ProbeStrong, ProbeSequence::standard(64, 16)))[0]
            .delta;
    };
    CHECK(block(1) > block(8));
    CHECK_THROWS_AS(adjoint_modulus(full(2), eps, 10, 1, NormSpec::operator_norm()), UnsupportedNorm);
}

TEST_CASE("block algebras") {
    const auto empty = build_fS(SubsetSeq(2, {0, 0}));
    CHECK(empty.algebra.dim() == 1);
    CHECK(empty.pi.norm() == 0.0);
    const auto fs = build_fS(SubsetSeq(2, {0b01, 0b11}));
    CHECK(fs.algebra.dim() == 6);
    Matrix pi = Matrix::Zero(4, 4);
    pi(0, 0) = 1;
    pi(2, 2) = 1;
    pi(3, 3) = 1;
    CHECK((fs.pi - pi).norm() == 0.0);
    CHECK(build_fS(SubsetSeq(2, {0b11, 0b11})).algebra.dim() > fs.algebra.dim());
    CHECK(build_fS(SubsetSeq(2, {0b01, 0b01})).algebra.dim() < fs.algebra.dim());
    CHECK_THROWS(SubsetSeq(2, {0b100, 0}));
}

TEST_CASE("functional norm on block algebras") {
    const SubsetSeq s(2, {0b01, 0b11});
    const Vector e0 = Vector::Unit(2, 0), e1 = Vector::Unit(2, 1);
    const auto a = functional_norm_on_fS({2, {{0, 0, e0, e0}}}, s);
    CHECK_FALSE(a.form_mismatch);
    CHECK(a.value == doctest::Approx(1.0));
    CHECK(functional_norm_on_fS({2, {{0, 0, e1, e1}}}, s).value == doctest::Approx(1.0));
    const FunctionalSpec cross{2, {{0, 0, e0, e1}}};
    CHECK(functional_norm_on_fS(cross, s).value == 0.0);
    const auto fs = build_fS(s);
    CHECK(sampled_support(fs.algebra, cross.matrix(), unit_ball_sample(fs.algebra, 2000, 1)) <= 5e-2);

    const auto twice = functional_norm_on_fS({2, {{0, 0, e0, e0}, {0, 0, e1, e1}}}, s, 500);
    CHECK(twice.form_mismatch);

    // Terms on index 0 do not see S_1.
    const FunctionalSpec w{3, {{0, 0, Vector::Constant(3, 0.5), Vector::Constant(3, Scalar(0.2, 0.1))}}};
    const double base = functional_norm_on_fS(w, SubsetSeq(3, {0b011, 0b001, 0b000})).value;
    CHECK(functional_norm_on_fS(w, SubsetSeq(3, {0b011, 0b111, 0b101})).value == base);
    // omega(x) = Tr(W x) against the defining sum of vector functionals.
    std::mt19937_64 rng(55);
    const Matrix x = ginibre(rng, 9);
    Scalar direct = 0.0;
    for (const auto& t : w.terms) {
        Vector a9 = Vector::Zero(9), b9 = Vector::Zero(9);
        a9.segment(t.i * 3, 3) = t.xi;
        b9.segment(t.j * 3, 3) = t.eta;
        direct += b9.dot(x * a9);
    }
    CHECK(std::abs(w.apply(x) - direct) <= 1e-12);
}

TEST_CASE("isometry ball bound") {
    std::mt19937_64 rng(56);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng() % 6;
        const Matrix u = random_unitary(n, rng());
        const Matrix x = random_contraction(n, rng());
        Vector xi = ginibre(rng, n).col(0);
        xi.normalize();
        for (bool adj : {false, true}) {
            const auto b = isometry_ball_bound(u, x, xi, adj);
            const Matrix uu = adj ? Matrix(u.adjoint()) : u, xx = adj ? Matrix(x.adjoint()) : x;
            CHECK(b.lhs == doctest::Approx(((xx - uu) * xi).squaredNorm()).epsilon(1e-12));
            CHECK(b.rhs == doctest::Approx(2.0 * ((uu - xx) * xi).dot(uu * xi).real()).epsilon(1e-12));
            CHECK(b.lhs <= b.rhs + 1e-9);
        }
    }
    // A partial isometry and a non-contraction are rejected.
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = 1.0;
    CHECK_THROWS_AS(isometry_ball_bound(v, Matrix::Zero(2, 2), Vector::Unit(2, 0)), PreconditionError);
    CHECK_THROWS_AS(isometry_ball_bound(Matrix::Identity(2, 2), Matrix(2.0 * Matrix::Identity(2, 2)),
                                        Vector::Unit(2, 0)),
                    PreconditionError);
}
