#include "ccq/explicit_wave.hpp"

#include <algorithm>
#include <set>

#include "ccq/errors.hpp"
#include "ccq/transforms.hpp"

namespace ccq {

std::optional<bool> fastExplicitWave(const Query& q) {
    size_t copySensitive = 0;
    for (const Atom& a : q.condition())
        if (a.isCopySensitive()) ++copySensitive;
    if (copySensitive <= 1) return true;

    bool copyAtomHasSetVar = false;
    for (const Atom& a : q.condition()) {
        if (!a.isCopySensitive()) continue;
        for (const Term& t : a.args)
            if (t.isVariable() && q.isSetVar(t)) copyAtomHasSetVar = true;
    }
    if (!copyAtomHasSetVar) return true;

    std::set<std::string> predicates;
    bool selfJoin = false;
    for (const Atom& a : q.condition())
        if (!predicates.insert(a.predicate).second) selfJoin = true;
    if (!selfJoin) return true;

    return std::nullopt;
}

namespace {

/// Restriction of a self-GCM of Q_ce to M_noncopy; present only when that
/// restriction is a bijection from M_noncopy to itself.
std::optional<std::map<Term, Term>> noncopyPermutation(const TermMapping& gcm,
                                                       const std::vector<Term>& noncopy) {
    std::map<Term, Term> pi;
    std::set<Term> image;
    for (const Term& v : noncopy) {
        Term to = gcm.apply(v);
        if (std::find(noncopy.begin(), noncopy.end(), to) == noncopy.end()) return std::nullopt;
        if (!image.insert(to).second) return std::nullopt;
        pi.emplace(v, to);
    }
    return pi;
}

}  // namespace

ExplicitWaveResult explicitWaveCheck(const Query& q, const ExplicitWaveOptions& options) {
    if (fastExplicitWave(q).value_or(false)) return {true, std::nullopt};

    const Query qce = copyEnhanced(q);
    SearchOptions search;
    if (options.gcmBudget) search.nodeBudget = options.gcmBudget;

    std::vector<TermMapping> gcms;
    try {
        gcms = enumerateGcms(qce, qce, search);
    } catch (const BudgetError&) {
        throw BudgetError(BudgetKind::ExplicitWave,
                          "explicit-wave check exceeded the GCM enumeration budget");
    }

    // Original copy-sensitive subgoals: present in both Q and Q_ce.
    std::vector<Atom> originals;
    for (const Atom& a : q.condition())
        if (a.isCopySensitive()) originals.push_back(a);

    // Group the noncopy-permuting GCMs by their M_noncopy bijection; within a
    // group every original copy-sensitive subgoal must keep one template.
    struct Group {
        std::vector<const TermMapping*> members;
    };
    std::map<std::map<Term, Term>, Group> groups;
    for (const TermMapping& g : gcms) {
        auto pi = noncopyPermutation(g, qce.noncopyVars());
        if (!pi) continue;
        groups[*pi].members.push_back(&g);
    }

    for (const auto& [pi, group] : groups) {
        for (const Atom& s : originals) {
            const TermMapping* first = nullptr;
            Atom firstTemplate;
            for (const TermMapping* g : group.members) {
                Atom image = g->apply(s).relationalTemplate();
                if (!first) {
                    first = g;
                    firstTemplate = image;
                } else if (image != firstTemplate) {
                    ImplicitWaveWitness w;
                    w.noncopyBijection = pi;
                    w.gcm1 = *first;
                    w.gcm2 = *g;
                    w.subgoal = s;
                    w.template1 = firstTemplate;
                    w.template2 = image;
                    return {false, std::move(w)};
                }
            }
        }
    }
    return {true, std::nullopt};
}

bool isExplicitWave(const Query& q, const ExplicitWaveOptions& options) {
    return explicitWaveCheck(q, options).explicitWave;
}

}  // namespace ccq
