// Serial reference kernels against their OpenMP counterparts on the bundled synthetic data.
// Thread-count arguments select the OpenMP worker count; 0 runs the serial reference.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "heartml/arff.hpp"
#include "heartml/cfs.hpp"
#include "heartml/cv.hpp"
#include "heartml/forest.hpp"

using namespace heartml;

namespace {

const Dataset& heart() {
    static const Dataset ds = [] {
        std::ifstream is(HEARTML_DATA_DIR "/heart_synthetic.arff");
        std::ostringstream ss;
        ss << is.rdbuf();
        return parse_arff(ss.str());
    }();
    return ds;
}

void BM_SuMatrix(benchmark::State& state) {
    const auto& ds = heart();
    const auto dmap = build_discretization(ds);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        if (threads == 0) {
            benchmark::DoNotOptimize(reference::su_matrix_serial(ds, dmap));
        } else {
            CorrelationCache cache(ds, dmap);
            cache.fill(threads);
            benchmark::DoNotOptimize(cache.matrix());
        }
    }
}
BENCHMARK(BM_SuMatrix)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond)->UseRealTime();

void BM_Forest(benchmark::State& state) {
    const auto& ds = heart();
    ForestParams p;
    p.trees = 100;
    p.seed = 42;
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        if (threads == 0)
            benchmark::DoNotOptimize(reference::train_forest_serial(ds, p));
        else
            benchmark::DoNotOptimize(train_forest(ds, p, threads));
    }
}
BENCHMARK(BM_Forest)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CrossValidate(benchmark::State& state) {
    const auto& ds = heart();
    ClassifierSpec spec;
    spec.kind = ClassifierKind::J48;
    spec.threads = 1;
    const auto trainer = make_trainer(spec);
    const auto plan = make_cv_plan(ds, 10, 42);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        if (threads == 0)
            benchmark::DoNotOptimize(reference::cross_validate_serial(ds, trainer, plan));
        else
            benchmark::DoNotOptimize(cross_validate(ds, trainer, plan, {.positive_class = 1, .threads = threads}));
    }
}
BENCHMARK(BM_CrossValidate)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
