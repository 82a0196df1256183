#include "ccq/evaluator.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ccq/errors.hpp"

namespace ccq {

namespace {

struct Candidate {
    const GroundAtom* atom;
    std::int64_t copies;
};

class Enumerator {
public:
    Enumerator(const Query& q, const BagDatabase& d,
               const std::function<bool(const Assignment&)>& visit)
        : q_(q), visit_(visit) {
        for (const auto& [atom, n] : d.facts()) byPredicate_[atom.predicate].push_back({&atom, n});
    }

    void run() { descend(0); }

private:
    // Returns false once the visitor asked to stop.
    bool descend(size_t atomIndex) {
        if (atomIndex == q_.condition().size()) {
            Assignment a;
            for (const auto& [var, value] : bindings_) a.bind(var, value);
            return visit_(a);
        }
        const Atom& goal = q_.condition()[atomIndex];
        auto it = byPredicate_.find(goal.predicate);
        if (it == byPredicate_.end()) return true;
        for (const Candidate& c : it->second) {
            if (c.atom->args.size() != goal.args.size()) continue;
            std::vector<Term> bound;
            if (!unify(goal, *c.atom, bound)) {
                retract(bound);
                continue;
            }
            bool keepGoing = true;
            if (goal.copyVar) {
                // Copy variable last, over 1..N.
                for (std::int64_t i = 1; i <= c.copies && keepGoing; ++i) {
                    bindings_.insert_or_assign(*goal.copyVar, Constant::integer(i));
                    keepGoing = descend(atomIndex + 1);
                }
                bindings_.erase(*goal.copyVar);
            } else {
                keepGoing = descend(atomIndex + 1);
            }
            retract(bound);
            if (!keepGoing) return false;
        }
        return true;
    }

    bool unify(const Atom& goal, const GroundAtom& fact, std::vector<Term>& bound) {
        for (size_t k = 0; k < goal.args.size(); ++k) {
            const Term& t = goal.args[k];
            const Constant& v = fact.args[k];
            if (t.isConstant()) {
                if (t.asConstant() != v) return false;
                continue;
            }
            auto it = bindings_.find(t);
            if (it != bindings_.end()) {
                if (it->second != v) return false;
            } else {
                bindings_.emplace(t, v);
                bound.push_back(t);
            }
        }
        return true;
    }

    void retract(const std::vector<Term>& bound) {
        for (const Term& t : bound) bindings_.erase(t);
    }

    const Query& q_;
    const std::function<bool(const Assignment&)>& visit_;
    std::map<std::string, std::vector<Candidate>> byPredicate_;
    std::map<Term, Constant> bindings_;
};

}  // namespace

void forEachSatisfyingAssignment(const Query& q, const BagDatabase& d,
                                 const std::function<bool(const Assignment&)>& visit) {
    Enumerator(q, d, visit).run();
}

std::vector<Assignment> satisfyingAssignments(const Query& q, const BagDatabase& d) {
    std::vector<Assignment> out;
    forEachSatisfyingAssignment(q, d, [&](const Assignment& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

AnswerBag eval(const Query& q, const BagDatabase& d) {
    // Multiplicity counts distinct restrictions to the nonset variables, i.e.
    // the set projection over set variables of the combined semantics.
    std::set<std::vector<Constant>> footprints;
    forEachSatisfyingAssignment(q, d, [&](const Assignment& a) {
        footprints.insert(a.apply(q.nonsetVars()));
        return true;
    });

    // The head tuple may repeat variables or contain constants; rebuild it
    // from the footprint per head term.
    std::vector<size_t> headSlots;
    headSlots.reserve(q.head().size());
    for (const Term& t : q.head()) {
        if (t.isConstant()) {
            headSlots.push_back(SIZE_MAX);
        } else {
            auto it = std::find(q.nonsetVars().begin(), q.nonsetVars().end(), t);
            headSlots.push_back(static_cast<size_t>(it - q.nonsetVars().begin()));
        }
    }

    std::map<std::vector<Constant>, std::int64_t> grouped;
    for (const auto& fp : footprints) {
        std::vector<Constant> tuple;
        tuple.reserve(q.head().size());
        for (size_t k = 0; k < q.head().size(); ++k)
            tuple.push_back(headSlots[k] == SIZE_MAX ? q.head()[k].asConstant() : fp[headSlots[k]]);
        grouped[std::move(tuple)] += 1;
    }

    AnswerBag result;
    for (auto& [tuple, count] : grouped) result.add(tuple, count);
    return result;
}

std::int64_t multiplicity(const Query& q, const BagDatabase& d, const std::vector<Constant>& t) {
    if (t.size() != q.headArity())
        throw DomainError(DomainCode::ArityMismatch,
                          "tuple arity " + std::to_string(t.size()) + " does not match head arity " +
                              std::to_string(q.headArity()));
    return eval(q, d).multiplicity(t);
}

bool bagLeq(const AnswerBag& a, const AnswerBag& b) {
    for (const auto& [tuple, n] : a.entries())
        if (n > b.multiplicity(tuple)) return false;
    return true;
}

}  // namespace ccq
