#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "ccq/evaluator.hpp"
#include "ccq/text_io.hpp"
#include "ccq/wave_analysis.hpp"

namespace {

ccq::Query fixture(const std::string& name) {
    std::ifstream in(std::string(CCQ_FIXTURE_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ccq::parseQuery(buf.str(), name);
}

void BM_EvalFamilyDatabase(benchmark::State& state) {
    ccq::Query q = fixture("ex4_1_q.ccq");
    ccq::DbFamilySpec spec = ccq::familySpec(q);
    const std::int64_t scale = state.range(0);
    ccq::BagDatabase d = ccq::buildDatabase(spec, {scale, scale, scale, scale});
    for (auto _ : state) {
        auto bag = ccq::eval(q, d);
        benchmark::DoNotOptimize(bag);
    }
}
BENCHMARK(BM_EvalFamilyDatabase)->Arg(2)->Arg(3)->Arg(4);

void BM_MonomialClassEnumeration(benchmark::State& state) {
    ccq::Query q = fixture("ex4_1_q.ccq");
    ccq::DbFamilySpec spec = ccq::familySpec(q);
    const std::int64_t scale = state.range(0);
    for (auto _ : state) {
        auto classes = ccq::enumerateMonomialClasses(spec, q, {scale, scale, scale, scale});
        benchmark::DoNotOptimize(classes);
    }
}
BENCHMARK(BM_MonomialClassEnumeration)->Arg(1)->Arg(2)->Arg(3);

}  // namespace
