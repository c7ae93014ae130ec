#include <benchmark/benchmark.h>

#include <random>

#include "cohomdyn/degrees.hpp"
#include "cohomdyn/entropy_sim.hpp"
#include "cohomdyn/hodge.hpp"

using namespace cohomdyn;

namespace {

GaussMat cat() {
  GaussMat a(2, 2);
  a(0, 0) = GaussRat(Rat(2));
  a(0, 1) = a(1, 0) = a(1, 1) = GaussRat(Rat(1));
  return a;
}

RatMat random_int_mat(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  RatMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rat(d(rng));
  return m;
}

void BM_char_poly(benchmark::State& state) {
  std::mt19937_64 rng(1);
  RatMat m = random_int_mat((int)state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(m));
}
BENCHMARK(BM_char_poly)->Arg(4)->Arg(8)->Arg(12);

void BM_spectral_radius_h11(benchmark::State& state) {
  TorusAut f(TorusModel(2), cat());
  GaussMat h11 = action_on_Hpq(f, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(h11));
}
BENCHMARK(BM_spectral_radius_h11);

void BM_exterior_power(benchmark::State& state) {
  std::mt19937_64 rng(2);
  RatMat m = random_int_mat(8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exterior_power(m, 4));
}
BENCHMARK(BM_exterior_power);

void BM_wedge_k3(benchmark::State& state) {
  TorusModel m(3);
  std::mt19937_64 rng(3);
  CohomClass w0 = standard_kahler(m);
  CohomClass c = kahler_class(m, random_kahler_form(3, rng));
  for (auto _ : state) benchmark::DoNotOptimize(wedge(w0, c));
}
BENCHMARK(BM_wedge_k3);

void BM_signature_gram_k3(benchmark::State& state) {
  TorusModel m(3);
  HRForm form = q_form(m, {standard_kahler(m)});
  for (auto _ : state) benchmark::DoNotOptimize(signature(form.gram));
}
BENCHMARK(BM_signature_gram_k3);

void BM_separated_count(benchmark::State& state) {
  TorusMap map(2, {2, 1, 1, 1});
  for (auto _ : state)
    benchmark::DoNotOptimize(separated_count(map, make_rat(1, 20), 6, 256));
}
BENCHMARK(BM_separated_count);

void BM_spectral_radius_9x9_direct(benchmark::State& state) {
  GaussMat a(3, 3);
  long rows[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 3, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = GaussRat(Rat(rows[i][j]));
  TorusAut f(TorusModel(3), a);
  GaussMat h11 = action_on_Hpq(f, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(h11));
}
BENCHMARK(BM_spectral_radius_9x9_direct);

void BM_degree_profile_cubic_word(benchmark::State& state) {
  GaussMat a(3, 3);
  long rows[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 3, 0}};  // companion of x^3-3x-1
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = GaussRat(Rat(rows[i][j]));
  TorusAut f(TorusModel(3), a);
  for (auto _ : state) benchmark::DoNotOptimize(degree_profile(f));
}
BENCHMARK(BM_degree_profile_cubic_word);

}  // namespace

BENCHMARK_MAIN();
