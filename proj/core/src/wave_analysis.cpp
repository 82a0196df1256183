#include "ccq/wave_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

#include "ccq/errors.hpp"
#include "ccq/text_io.hpp"

namespace ccq {

std::int64_t Monomial::evaluate(const NVector& n) const {
    std::int64_t value = 1;
    for (const auto& [idx, exp] : exponents_) {
        for (int e = 0; e < exp; ++e) value *= n.at(idx - 1);
    }
    return value;
}

std::string Monomial::str() const {
    if (exponents_.empty()) return "1";
    std::string out;
    for (const auto& [idx, exp] : exponents_) {
        for (int e = 0; e < exp; ++e) {
            if (!out.empty()) out += "*";
            out += "N" + std::to_string(idx);
        }
    }
    return out;
}

namespace {

Constant freshConstant(size_t& counter, const std::set<Constant>& reserved) {
    for (;;) {
        Constant c = Constant::symbol("#a" + std::to_string(counter++));
        if (!reserved.count(c)) return c;
    }
}

size_t copyClassOf(const DbFamilySpec& spec, const Term& copyVar) {
    auto it = spec.nuCopy.find(copyVar);
    if (it == spec.nuCopy.end()) throw std::logic_error("unlabelled copy variable");
    return it->second;  // 1-based N index in {m+1..m+w}
}

}  // namespace

DbFamilySpec familySpec(const Query& q) {
    std::set<Term> seenHead;
    for (const Term& t : q.head())
        if (!t.isVariable() || !seenHead.insert(t).second)
            throw DomainError(DomainCode::NonDistinctHead,
                              "the database family needs a head of pairwise distinct variables");

    DbFamilySpec spec;
    spec.originalQuery = q;
    spec.classes = representativeSubgoals(q);
    spec.baseQuery = spec.classes.regularizedQuery;
    spec.m = spec.baseQuery.noncopyVars().size();
    spec.w = spec.classes.copySensitiveClassCount;
    spec.noncopyOrder = spec.baseQuery.noncopyVars();

    std::set<Constant> reserved(spec.baseQuery.constants().begin(),
                                spec.baseQuery.constants().end());
    size_t counter = 0;
    for (const Term& v : spec.baseQuery.headVars())
        spec.nu0.emplace(v, freshConstant(counter, reserved));
    for (const Term& v : spec.baseQuery.setVars())
        spec.nu0.emplace(v, freshConstant(counter, reserved));

    for (const Term& t : spec.baseQuery.head()) spec.tStar.push_back(spec.nu0.at(t));

    // nu_Q^copy: the representative of copy-sensitive class j is labelled
    // N_{m+j}; every other copy variable inherits its class representative's
    // label.
    const size_t v = spec.classes.relationalClassCount;
    for (size_t j = 0; j < spec.w; ++j) {
        const Atom& rep = spec.classes.representatives[v + j];
        spec.nuCopy.emplace(*rep.copyVar, spec.m + j + 1);
        spec.copyOrder.push_back(*rep.copyVar);
    }
    for (size_t j = 0; j < spec.w; ++j) {
        for (size_t idx : spec.classes.classes[v + j]) {
            const Atom& member = spec.baseQuery.condition()[idx];
            if (*member.copyVar == spec.copyOrder[j]) continue;
            spec.nuCopy.emplace(*member.copyVar, spec.m + j + 1);
        }
    }
    // Non-representative copy variables follow in source order.
    for (const Atom& a : spec.baseQuery.condition()) {
        if (!a.isCopySensitive()) continue;
        if (std::find(spec.copyOrder.begin(), spec.copyOrder.end(), *a.copyVar) ==
            spec.copyOrder.end())
            spec.copyOrder.push_back(*a.copyVar);
    }
    return spec;
}

FamilyDatabase buildFamilyDatabase(const DbFamilySpec& spec, const NVector& n) {
    if (n.size() != spec.nVarCount())
        throw std::invalid_argument("N vector must have " + std::to_string(spec.nVarCount()) +
                                    " entries");
    for (std::int64_t e : n)
        if (e < 1) throw std::invalid_argument("N vector entries must be positive");

    FamilyDatabase fam;
    fam.n = n;

    // Domains S_j of the multiset noncopy variables: n_j fresh constants
    // each, pairwise disjoint, disjoint from nu0's range and the query's
    // constants.
    std::set<Constant> reserved(spec.baseQuery.constants().begin(),
                                spec.baseQuery.constants().end());
    for (const auto& [term, c] : spec.nu0) {
        (void)term;
        reserved.insert(c);
    }
    size_t counter = 0;  // collisions with nu0's range are skipped
    std::vector<std::vector<Constant>> domains(spec.m);
    for (size_t j = 0; j < spec.m; ++j)
        for (std::int64_t k = 0; k < n[j]; ++k)
            domains[j].push_back(freshConstant(counter, reserved));

    for (const auto& [term, c] : spec.nu0) fam.nuInverse.emplace(c, term);
    for (const Constant& c : spec.baseQuery.constants())
        fam.nuInverse.emplace(c, Term::constant(c));
    for (size_t j = 0; j < spec.m; ++j)
        for (const Constant& c : domains[j])
            fam.nuInverse.emplace(c, spec.noncopyOrder[j]);

    // Main construction cycle: one copy-neutral canonical database per tuple
    // of S_1 x ... x S_m.
    std::map<GroundAtom, std::pair<std::int64_t, size_t>> built;
    std::vector<size_t> odometer(spec.m, 0);
    for (;;) {
        std::map<Term, Constant> nuT;
        for (const auto& [term, c] : spec.nu0) nuT.emplace(term, c);
        for (size_t j = 0; j < spec.m; ++j) nuT.emplace(spec.noncopyOrder[j], domains[j][odometer[j]]);

        for (size_t c = 0; c < spec.classes.representatives.size(); ++c) {
            const Atom& rep = spec.classes.representatives[c];
            GroundAtom ground;
            ground.predicate = rep.predicate;
            for (const Term& t : rep.args)
                ground.args.push_back(t.isConstant() ? t.asConstant() : nuT.at(t));
            std::int64_t copies = 1;
            if (rep.isCopySensitive()) {
                size_t rank = c - spec.classes.relationalClassCount;  // 0-based class rank
                copies = n[spec.m + rank];
            }
            auto [it, inserted] = built.emplace(ground, std::make_pair(copies, c));
            if (!inserted && (it->second.first != copies || it->second.second != c))
                throw std::logic_error("family construction produced an inconsistent atom");
        }

        size_t j = 0;
        for (; j < spec.m; ++j) {
            if (++odometer[j] < domains[j].size()) break;
            odometer[j] = 0;
        }
        if (j == spec.m) break;
    }

    for (const auto& [ground, meta] : built) {
        fam.db.add(ground, meta.first);
        fam.atoms.push_back(ground);
        fam.copies.push_back(meta.first);
        fam.generatorRep.push_back(meta.second);
    }
    return fam;
}

BagDatabase buildDatabase(const DbFamilySpec& spec, const NVector& n) {
    return buildFamilyDatabase(spec, n).db;
}

namespace {

std::vector<size_t> orderedSubgoals(const Query& analyzed) {
    std::vector<size_t> order;
    for (size_t i = 0; i < analyzed.condition().size(); ++i)
        if (analyzed.condition()[i].isCopySensitive()) order.push_back(i);
    for (size_t i = 0; i < analyzed.condition().size(); ++i)
        if (!analyzed.condition()[i].isCopySensitive()) order.push_back(i);
    return order;
}

/// The unity assignment of an association on the non-copy terms; nothing if
/// the association admits no valid assignment mapping.
std::optional<std::map<Term, Constant>> unifyAssociation(const MonomialClassSet& set,
                                                         const Query& analyzed,
                                                         const AssociationRecord& record) {
    std::map<Term, Constant> binding;
    for (size_t k = 0; k < set.subgoalOrder.size(); ++k) {
        const Atom& goal = analyzed.condition()[set.subgoalOrder[k]];
        const GroundAtom& fact = set.family.atoms[record.atomChoice[k]];
        if (goal.predicate != fact.predicate || goal.args.size() != fact.args.size())
            return std::nullopt;
        for (size_t p = 0; p < goal.args.size(); ++p) {
            const Term& t = goal.args[p];
            if (t.isConstant()) {
                if (t.asConstant() != fact.args[p]) return std::nullopt;
                continue;
            }
            auto [it, inserted] = binding.emplace(t, fact.args[p]);
            if (!inserted && it->second != fact.args[p]) return std::nullopt;
        }
    }
    return binding;
}

void requireScaleCompatible(const DbFamilySpec& spec, const Query& analyzed) {
    if (!(scaleSignature(analyzed) == scaleSignature(spec.baseQuery)))
        throw DomainError(DomainCode::ScaleMismatch,
                          "the analyzed query is not equivalence-compatible with the base query");
}

}  // namespace

namespace {

/// Backtracking enumeration of the t*-valid associations whose first ordered
/// subgoal maps to a fixed database atom. Each worker owns one instance, so
/// the partitioned runs share nothing.
class AssociationWalker {
public:
    AssociationWalker(const DbFamilySpec& spec, const Query& analyzed, const MonomialClassSet& set)
        : spec_(spec), analyzed_(analyzed), set_(set), choice_(analyzed.condition().size(), 0) {}

    std::map<std::vector<size_t>, MonomialClass> runFrom(size_t firstAtom) {
        bySignature_.clear();
        const Atom& goal = analyzed_.condition()[set_.subgoalOrder[0]];
        tryAtom(goal, firstAtom, 0);
        return std::move(bySignature_);
    }

private:
    void tryAtom(const Atom& goal, size_t f, size_t k) {
        const GroundAtom& fact = set_.family.atoms[f];
        if (fact.predicate != goal.predicate || fact.args.size() != goal.args.size()) return;
        size_t mark = trail_.size();
        bool ok = true;
        for (size_t p = 0; ok && p < goal.args.size(); ++p) {
            const Term& t = goal.args[p];
            if (t.isConstant()) {
                ok = t.asConstant() == fact.args[p];
                continue;
            }
            auto [it, inserted] = binding_.emplace(t, fact.args[p]);
            if (inserted)
                trail_.push_back(t);
            else
                ok = it->second == fact.args[p];
        }
        if (ok) {
            choice_[k] = f;
            descend(k + 1);
        }
        while (trail_.size() > mark) {
            binding_.erase(trail_.back());
            trail_.pop_back();
        }
    }

    void descend(size_t k) {
        if (k == choice_.size()) {
            record();
            return;
        }
        const Atom& goal = analyzed_.condition()[set_.subgoalOrder[k]];
        for (size_t f = 0; f < set_.family.atoms.size(); ++f) tryAtom(goal, f, k);
    }

    void record() {
        for (size_t k = 0; k < analyzed_.head().size(); ++k) {
            const Term& t = analyzed_.head()[k];
            Constant image = t.isConstant() ? t.asConstant() : binding_.at(t);
            if (image != spec_.tStar[k]) return;
        }
        std::vector<size_t> signature(choice_.size());
        for (size_t i = 0; i < choice_.size(); ++i)
            signature[i] = set_.family.generatorRep[choice_[i]];
        auto [it, inserted] = bySignature_.try_emplace(signature);
        MonomialClass& cls = it->second;
        if (inserted) {
            cls.atomSignature = signature;
            for (size_t j = 0; j < spec_.m; ++j) {
                const Term& yj = analyzed_.noncopyVars()[j];
                cls.noncopySignature.push_back(set_.family.nuInverse.at(binding_.at(yj)));
            }
            const size_t r = analyzed_.copyVars().size();
            for (size_t i = 0; i < r; ++i) {
                size_t rep = signature[i];
                if (rep < spec_.classes.relationalClassCount)
                    cls.copySignature.push_back(std::nullopt);
                else
                    cls.copySignature.push_back(spec_.m +
                                                (rep - spec_.classes.relationalClassCount) + 1);
            }
        }
        cls.members.push_back(AssociationRecord{choice_});
    }

    const DbFamilySpec& spec_;
    const Query& analyzed_;
    const MonomialClassSet& set_;
    std::vector<size_t> choice_;
    std::map<Term, Constant> binding_;
    std::vector<Term> trail_;
    std::map<std::vector<size_t>, MonomialClass> bySignature_;
};

void mergeClassMaps(std::map<std::vector<size_t>, MonomialClass>& into,
                    std::map<std::vector<size_t>, MonomialClass>&& from) {
    for (auto& [signature, cls] : from) {
        auto [it, inserted] = into.try_emplace(signature, std::move(cls));
        if (!inserted)
            it->second.members.insert(it->second.members.end(), cls.members.begin(),
                                      cls.members.end());
    }
}

}  // namespace

MonomialClassSet enumerateMonomialClasses(const DbFamilySpec& spec, const Query& analyzed,
                                          const NVector& n, const EnumerationOptions& options) {
    requireScaleCompatible(spec, analyzed);

    MonomialClassSet out;
    out.family = buildFamilyDatabase(spec, n);
    out.subgoalOrder = orderedSubgoals(analyzed);

    const size_t F = out.family.atoms.size();
    const size_t G = analyzed.condition().size();
    std::uint64_t space = 1;
    for (size_t g = 0; g < G; ++g) {
        if (space > options.associationBudget / std::max<std::uint64_t>(F, 1)) {
            throw BudgetError(BudgetKind::Enumeration,
                              "association space exceeds the budget of " +
                                  std::to_string(options.associationBudget));
        }
        space *= F;
    }
    if (space > options.associationBudget)
        throw BudgetError(BudgetKind::Enumeration, "association space exceeds the budget");

    // Partitioned by the first subgoal's target atom; merging in atom order
    // keeps the result identical for every worker count.
    std::map<std::vector<size_t>, MonomialClass> bySignature;
    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1 || F < 2) {
        AssociationWalker walker(spec, analyzed, out);
        for (size_t f = 0; f < F; ++f) mergeClassMaps(bySignature, walker.runFrom(f));
    } else {
        std::vector<std::map<std::vector<size_t>, MonomialClass>> partial(F);
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < std::min<size_t>(jobs, F); ++t) {
            workers.emplace_back([&]() {
                AssociationWalker walker(spec, analyzed, out);
                for (;;) {
                    size_t f = next.fetch_add(1);
                    if (f >= F) return;
                    partial[f] = walker.runFrom(f);
                }
            });
        }
        for (auto& w : workers) w.join();
        for (size_t f = 0; f < F; ++f) mergeClassMaps(bySignature, std::move(partial[f]));
    }

    for (auto& [signature, cls] : bySignature) out.classes.push_back(std::move(cls));

    // All member associations of a class must agree on the signatures; this
    // is a structural property of the family, so a mismatch is a bug.
    for (const MonomialClass& cls : out.classes) {
        for (const AssociationRecord& rec : cls.members) {
            auto theta = unifyAssociation(out, analyzed, rec);
            if (!theta) throw std::logic_error("stored association fails re-unification");
            for (size_t j = 0; j < spec.m; ++j) {
                const Term& yj = analyzed.noncopyVars()[j];
                if (out.family.nuInverse.at(theta->at(yj)) != cls.noncopySignature[j])
                    throw std::logic_error("association disagrees with its class noncopy signature");
            }
        }
    }
    return out;
}

Monomial multiplicityMonomial(const MonomialClass& c, const DbFamilySpec& spec) {
    Monomial monomial;
    for (const Term& entry : c.noncopySignature) {
        auto it = std::find(spec.noncopyOrder.begin(), spec.noncopyOrder.end(), entry);
        if (it != spec.noncopyOrder.end())
            monomial.multiplyBy(static_cast<size_t>(it - spec.noncopyOrder.begin()) + 1);
        // Head variables, set variables and constants label a singleton
        // domain and contribute the factor 1.
    }
    for (const auto& entry : c.copySignature)
        if (entry) monomial.multiplyBy(*entry);
    return monomial;
}

std::set<std::vector<Constant>> classTuples(const MonomialClass& c, const MonomialClassSet& set,
                                            const Query& analyzed) {
    std::set<std::vector<Constant>> tuples;
    const size_t r = analyzed.copyVars().size();

    for (const AssociationRecord& rec : c.members) {
        auto theta = unifyAssociation(set, analyzed, rec);
        if (!theta) throw std::logic_error("stored association fails re-unification");

        // Copy variable of the k-th ordered subgoal ranges over 1..copies of
        // its associated atom.
        std::vector<Term> copyVars;
        std::vector<std::int64_t> ranges;
        for (size_t k = 0; k < r; ++k) {
            copyVars.push_back(*analyzed.condition()[set.subgoalOrder[k]].copyVar);
            ranges.push_back(set.family.copies[rec.atomChoice[k]]);
        }

        std::vector<std::int64_t> counters(r, 1);
        for (;;) {
            std::vector<Constant> tuple;
            tuple.reserve(analyzed.nonsetVars().size());
            for (const Term& v : analyzed.nonsetVars()) {
                auto cvIt = std::find(copyVars.begin(), copyVars.end(), v);
                if (cvIt != copyVars.end())
                    tuple.push_back(Constant::integer(
                        counters[static_cast<size_t>(cvIt - copyVars.begin())]));
                else
                    tuple.push_back(theta->at(v));
            }
            tuples.insert(std::move(tuple));

            size_t k = 0;
            for (; k < r; ++k) {
                if (++counters[k] <= ranges[k]) break;
                counters[k] = 1;
            }
            if (k == r) break;
        }
    }
    return tuples;
}

bool classCardinalityCheck(const MonomialClass& c, const DbFamilySpec& spec,
                           const MonomialClassSet& set, const Query& analyzed) {
    const auto tuples = classTuples(c, set, analyzed);
    const std::int64_t expected = multiplicityMonomial(c, spec).evaluate(set.family.n);
    return static_cast<std::int64_t>(tuples.size()) == expected;
}

Monomial wave(const DbFamilySpec& spec) {
    Monomial monomial;
    for (size_t j = 1; j <= spec.m; ++j) monomial.multiplyBy(j);
    for (const Term& cv : spec.copyOrder) monomial.multiplyBy(copyClassOf(spec, cv));
    return monomial;
}

std::optional<TermMapping> waveClassScvm(const DbFamilySpec& spec, const Query& analyzed,
                                         const EnumerationOptions& options) {
    requireScaleCompatible(spec, analyzed);

    NVector ones(spec.nVarCount(), 1);
    MonomialClassSet classes = enumerateMonomialClasses(spec, analyzed, ones, options);
    const Monomial waveMonomial = wave(spec);

    const MonomialClass* waveClass = nullptr;
    for (const MonomialClass& c : classes.classes) {
        if (multiplicityMonomial(c, spec) == waveMonomial) {
            waveClass = &c;
            break;
        }
    }
    if (!waveClass) return std::nullopt;

    const AssociationRecord& rec = waveClass->members.front();
    auto theta = unifyAssociation(classes, analyzed, rec);
    if (!theta) throw std::logic_error("wave-class association fails re-unification");

    TermMapping m;
    m.source = analyzed;
    m.target = spec.originalQuery;
    m.kind = MappingKind::Scvm;
    for (const auto& [var, value] : *theta) m.map.emplace(var, classes.family.nuInverse.at(value));
    for (const Constant& c : analyzed.constants()) {
        Term t = Term::constant(c);
        m.map.emplace(t, t);
    }

    // Copy variables: the j-th occurrence (left to right) of a class label in
    // the copy signature goes to the j-th copy variable of that class.
    const size_t r = analyzed.copyVars().size();
    for (size_t k = 0; k < r; ++k) {
        const Term& sourceCopyVar = *analyzed.condition()[classes.subgoalOrder[k]].copyVar;
        if (!waveClass->copySignature[k])
            throw std::logic_error("wave class has a unit copy-signature entry");
        const size_t label = *waveClass->copySignature[k];
        size_t rank = 0;
        for (size_t k2 = 0; k2 < k; ++k2)
            if (waveClass->copySignature[k2] && *waveClass->copySignature[k2] == label) ++rank;

        // Copy variables of the class with this label, in copyOrder order.
        std::vector<Term> classCopyVars;
        for (const Term& cv : spec.copyOrder)
            if (copyClassOf(spec, cv) == label) classCopyVars.push_back(cv);
        if (rank >= classCopyVars.size())
            throw std::logic_error("copy-signature rank exceeds the class size");
        m.map.emplace(sourceCopyVar, classCopyVars[rank]);
    }

    CheckResult verified = checkMappingDetailed(m);
    if (!verified.ok)
        throw std::logic_error("extracted wave-class mapping failed verification: " +
                               verified.firstViolation);
    return m;
}

}  // namespace ccq
