#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hyperselect/borel_lab.hpp"
#include "hyperselect/duality.hpp"
#include "hyperselect/operator_lab.hpp"
#include "hyperselect/selection.hpp"

using namespace hyperselect;

namespace {

Vector gaussian(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(rng);
    return v;
}

Matrix ginibre(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

void quotient(benchmark::State& state, NormKind kind) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    const NormSpec spec = NormSpec::of(kind);
    std::vector<Vector> gens{gaussian(rng, dim), gaussian(rng, dim)};
    const Subspace sub = Subspace::span(gens, dim, spec, Side::Primal);
    const Vector x = gaussian(rng, dim);
    for (auto _ : state) benchmark::DoNotOptimize(quotient_distance(x, sub, spec, 1.0));
}
BENCHMARK_CAPTURE(quotient, l2, NormKind::L2)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(quotient, l1, NormKind::L1)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(quotient, linf, NormKind::Linf)->Arg(4)->Arg(8);

void partition_of_unity(benchmark::State& state) {
    const auto side = static_cast<std::size_t>(state.range(0));
    const auto x = DiscreteDomain::grid(RealVector::Zero(2), RealVector::Ones(2), {side, side});
    std::vector<RealVector> centers;
    std::vector<double> radii;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            centers.push_back((RealVector(2) << 0.25 * (i + 1), 0.25 * (j + 1)).finished());
            radii.push_back(0.4);
        }
    const auto cover = OpenCover::from_balls(x, centers, radii);
    for (auto _ : state) benchmark::DoNotOptimize(build_partition_of_unity(x, cover));
}
BENCHMARK(partition_of_unity)->Arg(11)->Arg(21);

void michael(benchmark::State& state) {
    const auto suite = selection_suite(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        for (const auto& s : suite) benchmark::DoNotOptimize(michael_selection(s.map, 1e-3));
}
BENCHMARK(michael)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void support_closed_form(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    const auto a = generate_algebra({ginibre(rng, n)}, n);
    const Matrix x = ginibre(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(marechal_support(a, x));
}
BENCHMARK(support_closed_form)->Arg(2)->Arg(4);

void support_sampled(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    const auto a = generate_algebra({ginibre(rng, n)}, n);
    const auto sample = unit_ball_sample(a, 10000, 4);
    const Matrix x = ginibre(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(sampled_support(a, x, sample));
}
BENCHMARK(support_sampled)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void sigma2(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto inst = certified_instances().front();
    const auto family = inst.family(d);
    const auto x = TruncPoint::from(inst.x, d);
    for (auto _ : state) benchmark::DoNotOptimize(sigma2_reduce(family, x));
}
BENCHMARK(sigma2)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
