// Serial reference against the OpenMP version of each hot loop.

#include "degenkit/cohomology.hpp"
#include "degenkit/datum.hpp"
#include "degenkit/kernels.hpp"
#include "degenkit/voronoi.hpp"

#include <benchmark/benchmark.h>

using namespace degenkit;

namespace {

IntMatrix lattice(long k)
{
    IntMatrix L = IntMatrix::identity(3).scaled(k);
    L(0, 1) = 1;
    L(1, 2) = -1;
    return L;
}

void count_classes(benchmark::State& st, bool parallel)
{
    IntMatrix L = lattice(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(parallel ? count_classes_parallel(L) : count_classes_serial(L));
}

void theta_sum(benchmark::State& st, bool parallel)
{
    CMatrix W = {{Complex(0.1, 1.0), Complex(0, 0.2)}, {Complex(0, 0.2), Complex(-0.3, 1.1)}};
    std::vector<double> shift{0, 0.5};
    std::vector<Complex> dz{Complex(0.1, 0.02), Complex(-0.2, 0)};
    auto pts = norm_ordered_points(2, st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(parallel ? theta_sum_parallel(W, shift, dz, pts) : theta_sum_serial(W, shift, dz, pts));
}

void cocycle_triples(benchmark::State& st, bool parallel)
{
    auto phi = psi_cocycle(ValuedScalar::parse("1 * 3^(1/2) * t^(1)"), st.range(0));
    const auto& H = phi.H;
    for (auto _ : st) {
        auto r = parallel ? cocycle_triples_parallel(H.size(), H.add_table(), phi.table, phi.act)
                          : cocycle_triples_serial(H.size(), H.add_table(), phi.table, phi.act);
        benchmark::DoNotOptimize(r.found);
    }
}

void d_checks(benchmark::State& st, bool parallel)
{
    auto d = make_datum(IntMatrix::identity(2), IntMatrix::identity(2));
    d.mu_override = IntMatrix::from_rows({{2, 1}, {1, 2}});
    d.plain_normalization = true;
    auto f = VoronoiForm::of_kit(nefc_kit(d, 1));
    for (auto _ : st) {
        auto r = parallel ? d_function_checks_parallel(f, st.range(0), 2) : d_function_checks(f, st.range(0), 2);
        benchmark::DoNotOptimize(r.identities);
    }
}

}  // namespace

BENCHMARK_CAPTURE(count_classes, serial, false)->Arg(8)->Arg(16);
BENCHMARK_CAPTURE(count_classes, parallel, true)->Arg(8)->Arg(16);
BENCHMARK_CAPTURE(theta_sum, serial, false)->Arg(8)->Arg(20);
BENCHMARK_CAPTURE(theta_sum, parallel, true)->Arg(8)->Arg(20);
BENCHMARK_CAPTURE(cocycle_triples, serial, false)->Arg(8)->Arg(24);
BENCHMARK_CAPTURE(cocycle_triples, parallel, true)->Arg(8)->Arg(24);
BENCHMARK_CAPTURE(d_checks, serial, false)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(d_checks, parallel, true)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
