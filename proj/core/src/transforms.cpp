#include "ccq/transforms.hpp"

#include <algorithm>
#include <set>

namespace ccq {

namespace {

Query rebuild(const Query& q, std::vector<Atom> condition, std::vector<Term> multisetVars) {
    RawQuery raw;
    raw.name = q.name();
    raw.head = q.head();
    raw.condition = std::move(condition);
    raw.multisetVars = std::move(multisetVars);
    return Query::validate(std::move(raw));
}

}  // namespace

Query canonical(const Query& q) {
    std::vector<Atom> kept;
    for (const Atom& a : q.condition())
        if (std::find(kept.begin(), kept.end(), a) == kept.end()) kept.push_back(a);
    return rebuild(q, std::move(kept), q.multisetVars());
}

std::vector<Atom> templateSet(const Query& q) {
    std::vector<Atom> templates;
    for (const Atom& a : q.condition()) {
        if (!a.isCopySensitive()) continue;
        Atom t = a.relationalTemplate();
        if (std::find(templates.begin(), templates.end(), t) == templates.end())
            templates.push_back(std::move(t));
    }
    return templates;
}

Query regularized(const Query& q) {
    const std::vector<Atom> templates = templateSet(q);
    std::vector<Atom> kept;
    for (const Atom& a : q.condition()) {
        if (std::find(kept.begin(), kept.end(), a) != kept.end()) continue;  // duplicate
        if (!a.isCopySensitive() &&
            std::find(templates.begin(), templates.end(), a) != templates.end())
            continue;  // element of T(Q)
        kept.push_back(a);
    }
    return rebuild(q, std::move(kept), q.multisetVars());
}

Query deregularized(const Query& q) {
    Query r = regularized(q);
    std::vector<Atom> condition = r.condition();
    for (Atom t : templateSet(q)) condition.push_back(std::move(t));
    return rebuild(q, std::move(condition), q.multisetVars());
}

Query copyEnhanced(const Query& q) {
    std::set<std::string> used;
    for (const Term& v : q.allVars()) used.insert(v.varName());

    int counter = 1;
    auto freshVar = [&]() {
        for (;;) {
            std::string name = "K" + std::to_string(counter++);
            if (used.insert(name).second) return Term::variable(name);
        }
    };

    std::vector<Atom> condition;
    std::vector<Term> multisetVars = q.multisetVars();
    for (const Atom& a : q.condition()) {
        Atom next = a;
        if (!next.isCopySensitive()) {
            Term k = freshVar();
            next.copyVar = k;
            multisetVars.push_back(k);
        }
        condition.push_back(std::move(next));
    }
    return rebuild(q, std::move(condition), std::move(multisetVars));
}

SubgoalClasses representativeSubgoals(const Query& q) {
    SubgoalClasses out;
    out.regularizedQuery = regularized(q);
    const auto& condition = out.regularizedQuery.condition();

    // Relational subgoals: one class each, in source order.
    for (size_t i = 0; i < condition.size(); ++i) {
        if (condition[i].isCopySensitive()) continue;
        out.classes.push_back({i});
        out.representatives.push_back(condition[i]);
        ++out.relationalClassCount;
    }

    // Copy-sensitive subgoals grouped by relational template, classes ordered
    // by first occurrence, representative = first member.
    std::vector<Atom> seenTemplates;
    for (size_t i = 0; i < condition.size(); ++i) {
        if (!condition[i].isCopySensitive()) continue;
        Atom t = condition[i].relationalTemplate();
        auto it = std::find(seenTemplates.begin(), seenTemplates.end(), t);
        if (it == seenTemplates.end()) {
            seenTemplates.push_back(std::move(t));
            out.classes.push_back({i});
            out.representatives.push_back(condition[i]);
            ++out.copySensitiveClassCount;
        } else {
            size_t classIndex =
                out.relationalClassCount + static_cast<size_t>(it - seenTemplates.begin());
            out.classes[classIndex].push_back(i);
        }
    }
    return out;
}

}  // namespace ccq
