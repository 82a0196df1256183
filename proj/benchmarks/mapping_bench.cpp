#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "ccq/decision.hpp"
#include "ccq/explicit_wave.hpp"
#include "ccq/mapping.hpp"
#include "ccq/text_io.hpp"
#include "ccq/transforms.hpp"

namespace {

ccq::Query fixture(const std::string& name) {
    std::ifstream in(std::string(CCQ_FIXTURE_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ccq::parseQuery(buf.str(), name);
}

void BM_CvmSearchHit(benchmark::State& state) {
    ccq::Query src = fixture("ex4_1_q.ccq");
    ccq::Query tgt = fixture("ex4_1_qp.ccq");
    for (auto _ : state) {
        auto m = ccq::findMapping(ccq::MappingKind::Cvm, src, tgt);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_CvmSearchHit);

void BM_CvmSearchMiss(benchmark::State& state) {
    ccq::Query src = fixture("ex4_1_qp.ccq");
    ccq::Query tgt = fixture("ex4_1_q.ccq");
    for (auto _ : state) {
        auto m = ccq::findMapping(ccq::MappingKind::Cvm, src, tgt);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_CvmSearchMiss);

void BM_SelfGcmEnumeration(benchmark::State& state) {
    ccq::Query qce = ccq::copyEnhanced(fixture("ex4_1_q.ccq"));
    for (auto _ : state) {
        auto gcms = ccq::enumerateGcms(qce, qce);
        benchmark::DoNotOptimize(gcms);
    }
}
BENCHMARK(BM_SelfGcmEnumeration);

void BM_ExplicitWaveCheck(benchmark::State& state) {
    ccq::Query q = fixture("ex4_1_q.ccq");
    for (auto _ : state) {
        auto r = ccq::explicitWaveCheck(q);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_ExplicitWaveCheck);

void BM_DecideEquivalence(benchmark::State& state) {
    ccq::Query q1 = fixture("qc2.ccq");
    ccq::Query q2 = fixture("qc2min.ccq");
    for (auto _ : state) {
        auto v = ccq::decideEquivalence(q1, q2);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_DecideEquivalence);

}  // namespace

BENCHMARK_MAIN();
