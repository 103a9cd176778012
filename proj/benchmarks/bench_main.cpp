#include "butson/construct.hpp"
#include "butson/equiv.hpp"
#include "butson/graph.hpp"
#include "butson/sites.hpp"
#include "butson/trades.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

using namespace butson;

namespace {

std::string data_file(const char* name) { return std::string(BUTSON_DATA_DIR) + "/" + name; }

Monomial random_monomial(int n, int k, std::mt19937& rng) {
    Monomial m = Monomial::identity(n);
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    for (int i = 0; i < n; ++i) m.scales[static_cast<size_t>(i)] = int(rng() % unsigned(k));
    return m;
}

void BM_hadamard_check(benchmark::State& state) {
    BHMatrix h = read_bh_file(data_file("bh12_4.bh"));
    for (auto _ : state) benchmark::DoNotOptimize(is_butson_hadamard(h));
}
BENCHMARK(BM_hadamard_check);

void BM_certificate(benchmark::State& state) {
    BHMatrix m = state.range(0) == 3 ? read_bh_file(data_file("bh12_3.bh"))
                                     : read_bh_file(data_file("bh12_4.bh"));
    std::mt19937 rng(1);
    for (auto _ : state) {
        state.PauseTiming();
        BHMatrix s = apply_monomial(m, random_monomial(12, m.root_order(), rng),
                                    random_monomial(12, m.root_order(), rng));
        state.ResumeTiming();
        benchmark::DoNotOptimize(certificate(s));
    }
}
BENCHMARK(BM_certificate)->Arg(3)->Arg(4);

void BM_equivalence(benchmark::State& state) {
    BHMatrix h = read_bh_file(data_file("bh12_4.bh"));
    std::mt19937 rng(2);
    BHMatrix s = apply_monomial(h, random_monomial(12, 4, rng), random_monomial(12, 4, rng));
    for (auto _ : state) benchmark::DoNotOptimize(equivalent_monomial(h, s));
}
BENCHMARK(BM_equivalence);

void BM_fourier_sites(benchmark::State& state) {
    BHMatrix h = read_bh_file(data_file("f9_rowperm.bh"));
    for (auto _ : state) benchmark::DoNotOptimize(find_fourier_sites(h));
}
BENCHMARK(BM_fourier_sites);

void BM_char_poly(benchmark::State& state) {
    std::mt19937 rng(3);
    SimpleGraph g(10);
    for (int u = 0; u < 10; ++u)
        for (int v = u + 1; v < 10; ++v)
            if (rng() & 1) g.add_edge(u, v);
    auto a = adjacency_matrix(g);
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_char_poly);

void BM_min_trade(benchmark::State& state) {
    BHMatrix h = kronecker(fourier(2), fourier(2));
    for (auto _ : state) benchmark::DoNotOptimize(min_trade_size(h, 5, 100000000));
}
BENCHMARK(BM_min_trade);

} // namespace

BENCHMARK_MAIN();
