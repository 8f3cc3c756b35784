#include <benchmark/benchmark.h>

#include "gen.hpp"
#include "nij/differential.hpp"
#include "nij/frame.hpp"
#include "nij/hodge.hpp"
#include "nij/jordan.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"
#ifdef NIJ_HAVE_REPORT
#include "report/commands.hpp"
#endif

using namespace nij;

static void PolynomialProduct(benchmark::State& state) {
    gen::Rng rng(1);
    auto nv = static_cast<std::size_t>(state.range(0));
    Polynomial a = rng.polynomial(nv, 4, 8), b = rng.polynomial(nv, 4, 8);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(PolynomialProduct)->DenseRange(2, 6, 2);

static void FieldArithmetic(benchmark::State& state) {
    gen::Rng rng(2);
    ScalarField f = rng.field(3, 2, 100), g = rng.field(3, 2, 100);
    for (auto _ : state) benchmark::DoNotOptimize((f + g) * f / g);
}
BENCHMARK(FieldArithmetic);

static void GenericRank(benchmark::State& state) {
    gen::Rng rng(3);
    Chart c = Chart::standard(static_cast<std::size_t>(state.range(0)));
    auto m = rng.field_matrix(c, 1);
    for (auto _ : state) benchmark::DoNotOptimize(generic_rank(m));
}
BENCHMARK(GenericRank)->DenseRange(2, 5);

static void NijenhuisTensor(benchmark::State& state) {
    gen::Rng rng(4);
    Chart c = Chart::standard(static_cast<std::size_t>(state.range(0)));
    TensorField theta = rng.endomorphism(c, 2);
    for (auto _ : state) benchmark::DoNotOptimize(nijenhuis_11(theta));
}
BENCHMARK(NijenhuisTensor)->DenseRange(2, 5);

static void FrameNijenhuis(benchmark::State& state) {
    int p = static_cast<int>(state.range(0));
    LieFrameSpec alg = build_prop81(p, p, p + 1);
    for (auto _ : state) benchmark::DoNotOptimize(frame_nijenhuis_vanishes(alg).holds);
}
BENCHMARK(FrameNijenhuis)->DenseRange(1, 3);

static void ControlledVerifier(benchmark::State& state) {
    auto profiles = all_profiles(static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (const auto& p : profiles) benchmark::DoNotOptimize(controlled_type_verifier(p, 8).controlled);
    state.counters["profiles"] = static_cast<double>(profiles.size());
}
BENCHMARK(ControlledVerifier)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void NHatContravariant(benchmark::State& state) {
    Chart c = Chart::standard(4);
    auto samples = default_samples(4);
    TensorField omega = basis_form(c, {0, 1}) + (c.constant(Rational(1)) + c.coordinate(0)) * basis_form(c, {2, 3});
    TensorField theta = TensorField::bilinear(c, inverse(omega.as_matrix()), true, Symmetry::antisymmetric);
    RiemannianBackground bg(c);
    for (auto _ : state) benchmark::DoNotOptimize(n_hat(theta, 4, bg, samples).vanishes());
}
BENCHMARK(NHatContravariant)->Unit(benchmark::kMillisecond);

#ifdef NIJ_HAVE_REPORT
static void ReportPipeline(benchmark::State& state) {
    const std::string text = R"({"kind":"tensor11","chart":["x1","x2","x3","x4"],
        "components":{"1;2":"1","1;3":"-1/2*x4","1;4":"1/2*x3"},"sample_points":[["1/2","1/3","2/5","3/7"]]})";
    for (auto _ : state) {
        auto rep = report::run_command("analyze-11", report::parse_spec(text));
        benchmark::DoNotOptimize(rep.dump());
    }
}
BENCHMARK(ReportPipeline)->Unit(benchmark::kMillisecond);
#endif

BENCHMARK_MAIN();
