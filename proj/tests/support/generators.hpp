#ifndef CCQ_TEST_GENERATORS_HPP
#define CCQ_TEST_GENERATORS_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ccq/errors.hpp"
#include "ccq/oracle.hpp"
#include "ccq/query.hpp"
#include "ccq/transforms.hpp"

namespace ccqtest {

/// Seeded query generator for property tests: small conjunctive queries
/// (by default up to 3 subgoals over up to 4 variables) with a controllable
/// mix of copy-sensitive subgoals, set variables and constants.
class QueryGen {
public:
    struct Options {
        int maxSubgoals = 3;
        int maxVars = 4;
        int maxArity = 3;
        int maxHeadArity = 2;
        bool allowConstants = true;
        bool allowCopySensitive = true;
        bool distinctHeadVars = true;
        /// Force a class: 0 none, 1 set, 2 bag, 3 bag-set.
        int forceClass = 0;
    };

    explicit QueryGen(std::uint64_t seed) : rng_(seed), options_() {}
    QueryGen(std::uint64_t seed, const Options& options) : rng_(seed), options_(options) {}

    ccq::Query next() {
        for (;;) {
            ccq::RawQuery raw = candidate();
            try {
                return ccq::Query::validate(std::move(raw));
            } catch (const ccq::ValidationError&) {
                // Extremely rare with this construction; just redraw.
            }
        }
    }

    /// An alpha-renamed copy of q (fresh variable names, same structure).
    ccq::Query alphaRename(const ccq::Query& q) {
        std::map<ccq::Term, ccq::Term> renaming;
        int counter = 0;
        auto rename = [&](const ccq::Term& t) {
            if (t.isConstant()) return t;
            auto it = renaming.find(t);
            if (it != renaming.end()) return it->second;
            ccq::Term fresh = ccq::Term::variable("R" + std::to_string(counter++));
            renaming.emplace(t, fresh);
            return fresh;
        };
        ccq::RawQuery raw;
        raw.name = q.name();
        for (const ccq::Term& t : q.head()) raw.head.push_back(rename(t));
        for (const ccq::Atom& a : q.condition()) {
            ccq::Atom b;
            b.predicate = a.predicate;
            for (const ccq::Term& t : a.args) b.args.push_back(rename(t));
            if (a.copyVar) b.copyVar = rename(*a.copyVar);
            raw.condition.push_back(std::move(b));
        }
        for (const ccq::Term& v : q.multisetVars()) raw.multisetVars.push_back(rename(v));
        return ccq::Query::validate(std::move(raw));
    }

    /// A structural mutation of q: duplicate a subgoal, add a relational
    /// template of a copy-sensitive subgoal, drop a subgoal when legal, or
    /// rename. Used to produce related query pairs with both answers.
    ccq::Query mutate(const ccq::Query& q) {
        ccq::RawQuery raw;
        raw.name = q.name();
        raw.head = q.head();
        raw.condition = q.condition();
        raw.multisetVars = q.multisetVars();
        switch (rng_.nextIn(3)) {
            case 1: {  // duplicate a relational subgoal
                std::vector<size_t> relational;
                for (size_t i = 0; i < raw.condition.size(); ++i)
                    if (!raw.condition[i].isCopySensitive()) relational.push_back(i);
                if (!relational.empty()) {
                    size_t pick = relational[static_cast<size_t>(
                        rng_.nextIn(static_cast<std::int64_t>(relational.size())) - 1)];
                    raw.condition.push_back(raw.condition[pick]);
                }
                break;
            }
            case 2: {  // add the relational template of a copy-sensitive subgoal
                std::vector<size_t> copySensitive;
                for (size_t i = 0; i < raw.condition.size(); ++i)
                    if (raw.condition[i].isCopySensitive()) copySensitive.push_back(i);
                if (!copySensitive.empty()) {
                    size_t pick = copySensitive[static_cast<size_t>(
                        rng_.nextIn(static_cast<std::int64_t>(copySensitive.size())) - 1)];
                    raw.condition.push_back(raw.condition[pick].relationalTemplate());
                }
                break;
            }
            default: {  // drop a subgoal if that stays well-formed
                if (raw.condition.size() > 1) {
                    size_t pick = static_cast<size_t>(
                        rng_.nextIn(static_cast<std::int64_t>(raw.condition.size())) - 1);
                    ccq::RawQuery dropped = raw;
                    dropped.condition.erase(dropped.condition.begin() +
                                            static_cast<std::ptrdiff_t>(pick));
                    // M and the head must survive the removal.
                    try {
                        return ccq::Query::validate(std::move(dropped));
                    } catch (const ccq::ValidationError&) {
                    }
                }
                break;
            }
        }
        try {
            return ccq::Query::validate(std::move(raw));
        } catch (const ccq::ValidationError&) {
            return q;
        }
    }

    /// An unregularized version of q: the regularized condition plus random
    /// duplicates of existing relational subgoals and/or relational templates
    /// of copy-sensitive subgoals (a semantics-preserving extension).
    ccq::Query unregularize(const ccq::Query& q) {
        ccq::Query base = ccq::regularized(q);
        ccq::RawQuery raw;
        raw.name = base.name();
        raw.head = base.head();
        raw.condition = base.condition();
        raw.multisetVars = base.multisetVars();

        std::vector<ccq::Atom> pool;
        for (const ccq::Atom& a : base.condition())
            if (!a.isCopySensitive()) pool.push_back(a);
        for (const ccq::Atom& t : ccq::templateSet(base)) pool.push_back(t);
        if (!pool.empty()) {
            const int extras = static_cast<int>(rng_.nextIn(3));
            for (int k = 0; k < extras; ++k)
                raw.condition.push_back(
                    pool[static_cast<size_t>(
                        rng_.nextIn(static_cast<std::int64_t>(pool.size())) - 1)]);
        }
        return ccq::Query::validate(std::move(raw));
    }

    ccq::Lcg& rng() { return rng_; }

private:
    ccq::RawQuery candidate() {
        ccq::RawQuery raw;
        raw.name = "Q";

        const int subgoals = static_cast<int>(rng_.nextIn(options_.maxSubgoals));
        const int varCount = static_cast<int>(rng_.nextIn(options_.maxVars));
        std::vector<ccq::Term> vars;
        for (int i = 0; i < varCount; ++i) vars.push_back(ccq::Term::variable("V" + std::to_string(i)));

        const char* predicates[] = {"p", "q", "r"};
        int copyCounter = 0;
        std::vector<ccq::Term> copyVars;
        std::map<std::string, size_t> arityOf;

        for (int s = 0; s < subgoals; ++s) {
            ccq::Atom a;
            a.predicate = predicates[rng_.nextIn(3) - 1];
            auto it = arityOf.find(a.predicate);
            size_t arity = it != arityOf.end()
                               ? it->second
                               : static_cast<size_t>(rng_.nextIn(options_.maxArity));
            arityOf.emplace(a.predicate, arity);
            for (size_t k = 0; k < arity; ++k) {
                if (options_.allowConstants && rng_.nextIn(8) == 1) {
                    a.args.push_back(rng_.nextBool()
                                         ? ccq::Term::constant(ccq::Constant::symbol("c"))
                                         : ccq::Term::constant(ccq::Constant::integer(1)));
                } else {
                    a.args.push_back(vars[static_cast<size_t>(rng_.nextIn(varCount) - 1)]);
                }
            }
            const bool copySensitive =
                options_.forceClass == 2 ||
                (options_.forceClass == 0 && options_.allowCopySensitive && rng_.nextBool());
            if (copySensitive) {
                ccq::Term cv = ccq::Term::variable("I" + std::to_string(copyCounter++));
                a.copyVar = cv;
                copyVars.push_back(cv);
            }
            raw.condition.push_back(std::move(a));
        }

        // Head: variables that occur in the condition.
        std::vector<ccq::Term> bodyVars;
        for (const ccq::Atom& a : raw.condition)
            for (const ccq::Term& t : a.args)
                if (t.isVariable() &&
                    std::find(bodyVars.begin(), bodyVars.end(), t) == bodyVars.end())
                    bodyVars.push_back(t);
        if (!bodyVars.empty()) {
            int headArity = static_cast<int>(rng_.nextIn(options_.maxHeadArity + 1)) - 1;
            for (int k = 0; k < headArity; ++k) {
                const ccq::Term& v =
                    bodyVars[static_cast<size_t>(rng_.nextIn(
                                 static_cast<std::int64_t>(bodyVars.size())) -
                             1)];
                if (options_.distinctHeadVars &&
                    std::find(raw.head.begin(), raw.head.end(), v) != raw.head.end())
                    continue;
                raw.head.push_back(v);
            }
        }

        // M: all copy variables, plus nondistinguished variables as directed.
        raw.multisetVars = copyVars;
        for (const ccq::Term& v : bodyVars) {
            if (std::find(raw.head.begin(), raw.head.end(), v) != raw.head.end()) continue;
            const bool include = options_.forceClass == 2 || options_.forceClass == 3
                                     ? true                          // multiset query: no set vars
                                     : (options_.forceClass == 1 ? false : rng_.nextBool());
            if (include) raw.multisetVars.push_back(v);
        }
        if (options_.forceClass == 1) raw.multisetVars.clear();
        return raw;
    }

    ccq::Lcg rng_;
    Options options_;
};

/// Seeded database over the predicates of the given queries.
inline ccq::BagDatabase randomDatabaseFor(const ccq::Query& q1, const ccq::Query& q2, int adomSize,
                                          int maxCopy, std::uint64_t seed, std::size_t index) {
    return ccq::randomDatabase(q1, q2, adomSize, maxCopy, seed, index);
}

}  // namespace ccqtest

#endif
