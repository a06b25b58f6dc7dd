#include <benchmark/benchmark.h>

#include "framemul/generators.hpp"
#include "framemul/multiplier.hpp"
#include "framemul/perturbation.hpp"
#include "framemul/rng.hpp"

using namespace framemul;

namespace {

MultiplierSpec make_spec(std::size_t dim, std::size_t count) {
    GenSpec g;
    g.kind = FamilyKind::random_bessel;
    g.dim = dim;
    g.count = count;
    g.seed = 1;
    const VectorFamily psi = generate(g);
    g.seed = 2;
    const VectorFamily phi = generate(g);
    GaussianRng rng(3);
    std::vector<cx> entries(count);
    for (auto& z : entries) z = rng.cgauss();
    return MultiplierSpec(Symbol(std::move(entries)), psi, phi);
}

void BM_build(benchmark::State& state) {
    const auto spec = make_spec(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(build(spec));
}
BENCHMARK(BM_build)->Args({8, 16})->Args({16, 48})->Args({32, 64});

void BM_norms(benchmark::State& state) {
    GaussianRng rng(4);
    const LinOperator o = rng.matrix(static_cast<std::size_t>(state.range(0)),
                                     static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(norms(o));
}
BENCHMARK(BM_norms)->Arg(8)->Arg(32)->Arg(128);

void BM_classify(benchmark::State& state) {
    GenSpec g;
    g.kind = FamilyKind::random_frame;
    g.dim = static_cast<std::size_t>(state.range(0));
    g.count = static_cast<std::size_t>(state.range(1));
    g.seed = 5;
    const VectorFamily f = generate(g);
    for (auto _ : state) benchmark::DoNotOptimize(classify(f));
}
BENCHMARK(BM_classify)->Args({8, 16})->Args({16, 48});

void BM_certify_bounds(benchmark::State& state) {
    const auto spec = make_spec(16, 48);
    for (auto _ : state) benchmark::DoNotOptimize(certify_bounds(spec));
}
BENCHMARK(BM_certify_bounds);

void BM_continuity_step(benchmark::State& state) {
    const auto spec = make_spec(8, 16);
    ContinuityOptions opts;
    opts.steps = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(continuity_experiment(spec, ContinuityMode::family_l2, opts));
}
BENCHMARK(BM_continuity_step);

} // namespace

BENCHMARK_MAIN();
