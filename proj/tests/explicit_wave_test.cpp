#include <doctest.h>

#include "ccq/explicit_wave.hpp"
#include "ccq/text_io.hpp"
#include "support/generators.hpp"
#include "support/test_support.hpp"

using namespace ccq;
using ccqtest::fixtureQuery;

TEST_CASE("fast path") {
    // No set variables at all.
    CHECK(fastExplicitWave(fixtureQuery("qc.ccq")) == std::optional<bool>(true));
    // Zero copy-sensitive subgoals.
    CHECK(fastExplicitWave(fixtureQuery("set_query.ccq")) == std::optional<bool>(true));
    // Two copy-sensitive subgoals, each with a set variable, and a self-join:
    // inconclusive.
    CHECK_FALSE(fastExplicitWave(fixtureQuery("ex4_1_q.ccq")).has_value());
    // No self-joins.
    CHECK(fastExplicitWave(parseQuery("Q(X) <- p(X,Y;I), q(X,Z;J), {I,J}.")) ==
          std::optional<bool>(true));
}

TEST_CASE("the asymmetric pair: Q implicit, Q' explicit") {
    ExplicitWaveResult q = explicitWaveCheck(fixtureQuery("ex4_1_q.ccq"));
    CHECK_FALSE(q.explicitWave);
    REQUIRE(q.witness.has_value());

    // The witness re-verifies: both GCMs check out, they agree on the
    // noncopy bijection, and the two templates genuinely differ.
    const ImplicitWaveWitness& w = *q.witness;
    CHECK(checkMapping(w.gcm1));
    CHECK(checkMapping(w.gcm2));
    for (const auto& [from, to] : w.noncopyBijection) {
        CHECK(w.gcm1.apply(from) == to);
        CHECK(w.gcm2.apply(from) == to);
    }
    CHECK(w.gcm1.apply(w.subgoal).relationalTemplate() == w.template1);
    CHECK(w.gcm2.apply(w.subgoal).relationalTemplate() == w.template2);
    CHECK(w.template1 != w.template2);

    CHECK(explicitWaveCheck(fixtureQuery("ex4_1_qp.ccq")).explicitWave);
}

TEST_CASE("single copy-sensitive subgoal is explicit-wave by the first clause") {
    CHECK(isExplicitWave(fixtureQuery("ex3_1_q.ccq")));
    CHECK(isExplicitWave(fixtureQuery("ex3_2_q.ccq")));
}

TEST_CASE("set, bag and bag-set fixtures are explicit-wave") {
    for (const char* name : {"set_query.ccq", "bag_query.ccq", "bagset_query.ccq", "qc.ccq",
                             "qc2.ccq", "qc2min.ccq"})
        CHECK(isExplicitWave(fixtureQuery(name)));
}

TEST_CASE("the fast path never contradicts the full check") {
    ccqtest::QueryGen gen(1);
    for (int i = 0; i < 400; ++i) {
        Query q = gen.next();
        auto fast = fastExplicitWave(q);
        if (fast.has_value()) {
            CAPTURE(printQuery(q));
            CHECK(*fast == explicitWaveCheck(q).explicitWave);
        }
    }
}

TEST_CASE("classification is alpha-renaming invariant") {
    ccqtest::QueryGen gen(2);
    for (int i = 0; i < 100; ++i) {
        Query q = gen.next();
        CHECK(isExplicitWave(q) == isExplicitWave(gen.alphaRename(q)));
    }
}

TEST_CASE("budget propagates as the explicit-wave budget error") {
    ExplicitWaveOptions opts;
    opts.gcmBudget = 1;
    CHECK_THROWS_AS(explicitWaveCheck(fixtureQuery("ex4_1_q.ccq"), opts), BudgetError);
}
