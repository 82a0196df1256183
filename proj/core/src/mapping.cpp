#include "ccq/mapping.hpp"

#include <algorithm>
#include <set>

#include "ccq/errors.hpp"
#include "ccq/text_io.hpp"
#include "ccq/transforms.hpp"

namespace ccq {

const char* mappingKindName(MappingKind k) {
    switch (k) {
        case MappingKind::Hom: return "Hom";
        case MappingKind::Cm: return "CM";
        case MappingKind::Gcm: return "GCM";
        case MappingKind::MultisetHom: return "MultisetHom";
        case MappingKind::Cvm: return "CVM";
        case MappingKind::Scvm: return "SCVM";
        case MappingKind::Iso: return "Iso";
    }
    return "?";
}

Term TermMapping::apply(const Term& t) const {
    auto it = map.find(t);
    if (it != map.end()) return it->second;
    if (t.isConstant()) return t;
    throw std::logic_error("mapping undefined on term " + t.lexeme());
}

Atom TermMapping::apply(const Atom& a) const {
    Atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply(t));
    if (a.copyVar) out.copyVar = apply(*a.copyVar);
    return out;
}

namespace {

bool conditionContains(const Query& q, const Atom& a) {
    return std::find(q.condition().begin(), q.condition().end(), a) != q.condition().end();
}

bool containsTerm(const std::vector<Term>& terms, const Term& t) {
    return std::find(terms.begin(), terms.end(), t) != terms.end();
}

bool sameScale(const Query& a, const Query& b) {
    return scaleSignature(a) == scaleSignature(b);
}

std::set<Term> imageOf(const TermMapping& m, const std::vector<Term>& terms) {
    std::set<Term> image;
    for (const Term& t : terms) image.insert(m.apply(t));
    return image;
}

CheckResult fail(std::string why) { return {false, std::move(why)}; }

CheckResult checkTotality(const TermMapping& m) {
    for (const Term& t : m.source.allTerms())
        if (t.isVariable() && !m.map.count(t))
            return fail("mapping is not total: no image for " + t.lexeme());
    return {true, {}};
}

CheckResult checkConstantIdentity(const TermMapping& m) {
    for (const auto& [from, to] : m.map)
        if (from.isConstant() && from != to)
            return fail("constant " + from.lexeme() + " is not mapped to itself");
    return {true, {}};
}

CheckResult checkHead(const TermMapping& m) {
    if (m.source.headArity() != m.target.headArity())
        return fail("head arities differ");
    for (size_t k = 0; k < m.source.head().size(); ++k)
        if (m.apply(m.source.head()[k]) != m.target.head()[k])
            return fail("head position " + std::to_string(k + 1) + " maps to " +
                        m.apply(m.source.head()[k]).lexeme() + ", expected " +
                        m.target.head()[k].lexeme());
    return {true, {}};
}

/// Images of all source subgoals are atoms of the target condition.
CheckResult checkAtomImages(const TermMapping& m) {
    for (const Atom& a : m.source.condition()) {
        Atom image = m.apply(a);
        if (!conditionContains(m.target, image))
            return fail("image " + printAtom(image) + " of subgoal " + printAtom(a) +
                        " is not a subgoal of the target");
    }
    return {true, {}};
}

CheckResult checkGcm(const TermMapping& m) {
    if (auto r = checkHead(m); !r.ok) return fail("GCM condition (1): " + r.firstViolation);
    if (auto r = checkConstantIdentity(m); !r.ok)
        return fail("GCM condition (2): " + r.firstViolation);
    if (auto r = checkAtomImages(m); !r.ok) return fail("GCM condition (3): " + r.firstViolation);
    return {true, {}};
}

CheckResult checkMultisetHom(const TermMapping& m) {
    if (auto r = checkGcm(m); !r.ok) return r;
    std::set<Term> seen;
    for (const Term& v : m.source.multisetVars()) {
        Term image = m.apply(v);
        if (!m.target.isMultisetVar(image))
            return fail("multiset-homomorphism condition (4): " + v.lexeme() +
                        " maps outside the target multiset variables");
        if (!seen.insert(image).second)
            return fail("multiset-homomorphism condition (5): two multiset variables share the image " +
                        image.lexeme());
    }
    return {true, {}};
}

CheckResult checkCvm(const TermMapping& m) {
    if (auto r = checkConstantIdentity(m); !r.ok)
        return fail("CVM condition (1): " + r.firstViolation);
    if (auto r = checkHead(m); !r.ok) return fail("CVM condition (2): " + r.firstViolation);

    std::set<Term> copyImage = imageOf(m, m.source.copyVars());
    std::set<Term> targetCopy(m.target.copyVars().begin(), m.target.copyVars().end());
    if (copyImage != targetCopy)
        return fail("CVM condition (3): image of the copy variables is not exactly the target's");
    std::set<Term> noncopyImage = imageOf(m, m.source.noncopyVars());
    for (const Term& v : m.target.noncopyVars())
        if (!noncopyImage.count(v))
            return fail("CVM condition (3): target multiset variable " + v.lexeme() +
                        " is not covered");

    for (const Atom& a : m.source.condition()) {
        if (a.isCopySensitive()) {
            Atom image = m.apply(a);
            if (!conditionContains(m.target, image))
                return fail("CVM condition (5): no target subgoal " + printAtom(image));
        } else {
            Atom image = m.apply(a);
            bool found = conditionContains(m.target, image);
            if (!found) {
                for (const Atom& b : m.target.condition()) {
                    if (!b.isCopySensitive()) continue;
                    if (b.predicate == image.predicate && b.args == image.args) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found)
                return fail("CVM condition (4): no relational or copy-sensitive target match for " +
                            printAtom(image));
        }
    }
    return {true, {}};
}

CheckResult checkScvm(const TermMapping& m) {
    if (!sameScale(m.source, m.target))
        return fail("SCVM requires an equivalence-compatible pair");
    if (auto r = checkCvm(m); !r.ok) return r;
    // Bijection on the multiset variables, implied but re-verified.
    std::set<Term> image = imageOf(m, m.source.multisetVars());
    std::set<Term> targetM(m.target.multisetVars().begin(), m.target.multisetVars().end());
    if (image.size() != m.source.multisetVars().size() || image != targetM)
        return fail("SCVM is not a bijection between the multiset-variable sets");
    return {true, {}};
}

CheckResult checkIso(const TermMapping& m) {
    if (auto r = checkTotality(m); !r.ok) return r;
    if (auto r = checkConstantIdentity(m); !r.ok) return r;
    if (auto r = checkHead(m); !r.ok) return r;

    // One-to-one and onto on terms.
    std::set<Term> image;
    for (const Term& t : m.source.allTerms()) {
        if (!image.insert(m.apply(t)).second)
            return fail("mapping is not one-to-one on terms");
    }
    for (const Term& t : m.target.allTerms())
        if (!image.count(t)) return fail("mapping is not onto: " + t.lexeme() + " is not an image");

    // Bijection between the multiset-variable sets.
    std::set<Term> mImage = imageOf(m, m.source.multisetVars());
    std::set<Term> targetM(m.target.multisetVars().begin(), m.target.multisetVars().end());
    if (mImage != targetM)
        return fail("mapping does not induce a bijection between the multiset-variable sets");

    // The condition bags correspond one-to-one, respecting multiplicities.
    if (m.source.condition().size() != m.target.condition().size())
        return fail("subgoal counts differ");
    auto countIn = [](const Query& q, const Atom& a) {
        return std::count(q.condition().begin(), q.condition().end(), a);
    };
    for (const Atom& a : m.source.condition()) {
        Atom image2 = m.apply(a);
        if (countIn(m.source, a) != countIn(m.target, image2))
            return fail("subgoal multiplicities differ for " + printAtom(a));
    }
    return {true, {}};
}

}  // namespace

CheckResult checkMappingDetailed(const TermMapping& m) {
    if (auto r = checkTotality(m); !r.ok) return r;
    switch (m.kind) {
        case MappingKind::Hom: {
            if (auto r = checkConstantIdentity(m); !r.ok) return r;
            return checkAtomImages(m);
        }
        case MappingKind::Cm: {
            if (auto r = checkConstantIdentity(m); !r.ok) return r;
            if (auto r = checkHead(m); !r.ok) return r;
            return checkAtomImages(m);
        }
        case MappingKind::Gcm: return checkGcm(m);
        case MappingKind::MultisetHom: return checkMultisetHom(m);
        case MappingKind::Cvm: return checkCvm(m);
        case MappingKind::Scvm: return checkScvm(m);
        case MappingKind::Iso: return checkIso(m);
    }
    return fail("unknown mapping kind");
}

bool checkMapping(const TermMapping& m) { return checkMappingDetailed(m).ok; }

namespace {

/// Subgoal-driven backtracking search. Complete: every mapping of the kind
/// arises from some choice of a target atom per source subgoal, because all
/// source variables occur in the condition and atom images are pinned by the
/// kind's conditions.
class MappingSearch {
public:
    MappingSearch(MappingKind kind, const Query& src, const Query& tgt,
                  const SearchOptions& options)
        : kind_(kind), src_(src), tgt_(tgt), options_(options) {
        for (const Atom& a : tgt_.condition())
            if (std::find_if(distinctTargets_.begin(), distinctTargets_.end(),
                             [&](const Atom* b) { return *b == a; }) == distinctTargets_.end())
                distinctTargets_.push_back(&a);
    }

    std::optional<TermMapping> findFirst() {
        std::optional<TermMapping> found;
        run([&](TermMapping m) {
            found = std::move(m);
            return false;  // stop at the first witness
        });
        return found;
    }

    std::vector<TermMapping> findAll() {
        std::vector<TermMapping> all;
        std::set<std::map<Term, Term>> seen;
        run([&](TermMapping m) {
            if (seen.insert(m.map).second) all.push_back(std::move(m));
            return true;
        });
        return all;
    }

private:
    void run(const std::function<bool(TermMapping)>& emit) {
        binding_.clear();
        if (usesHead() && !bindHead()) return;
        // Most constrained subgoal first: fewer candidate target atoms, ties
        // broken by source order.
        order_.clear();
        for (size_t i = 0; i < src_.condition().size(); ++i) order_.push_back(i);
        std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) {
            return candidatesFor(src_.condition()[a]).size() <
                   candidatesFor(src_.condition()[b]).size();
        });
        emit_ = &emit;
        stopped_ = false;
        descend(0);
    }

    bool usesHead() const { return kind_ != MappingKind::Hom; }

    bool bindHead() {
        if (src_.headArity() != tgt_.headArity()) return false;
        for (size_t k = 0; k < src_.head().size(); ++k) {
            if (!bindTerm(src_.head()[k], tgt_.head()[k])) return false;
        }
        return true;
    }

    bool bindTerm(const Term& from, const Term& to) {
        if (from.isConstant()) return from == to;
        auto it = binding_.find(from);
        if (it != binding_.end()) return it->second == to;
        binding_.emplace(from, to);
        trail_.push_back(from);
        return true;
    }

    std::vector<const Atom*> candidatesFor(const Atom& goal) const {
        std::vector<const Atom*> out;
        const bool cvmLike = kind_ == MappingKind::Cvm || kind_ == MappingKind::Scvm;
        for (const Atom* b : distinctTargets_) {
            if (b->predicate != goal.predicate || b->args.size() != goal.args.size()) continue;
            if (goal.isCopySensitive()) {
                if (!b->isCopySensitive()) continue;  // copy variables map to copy variables
            } else if (!cvmLike && b->isCopySensitive()) {
                continue;  // image must literally be a subgoal for GCM-like kinds
            }
            out.push_back(b);
        }
        return out;
    }

    void descend(size_t k) {
        if (stopped_) return;
        if (k == order_.size()) {
            complete();
            return;
        }
        const Atom& goal = src_.condition()[order_[k]];
        for (const Atom* b : candidatesFor(goal)) {
            countNode();
            size_t mark = trail_.size();
            if (match(goal, *b)) descend(k + 1);
            unwind(mark);
            if (stopped_) return;
        }
    }

    bool match(const Atom& goal, const Atom& b) {
        for (size_t k = 0; k < goal.args.size(); ++k)
            if (!bindTerm(goal.args[k], b.args[k])) return false;
        if (goal.isCopySensitive() && b.isCopySensitive())
            return bindTerm(*goal.copyVar, *b.copyVar);
        // A relational subgoal matched by a copy-sensitive target atom binds
        // no copy variable (CVM condition (4)).
        return true;
    }

    void unwind(size_t mark) {
        while (trail_.size() > mark) {
            binding_.erase(trail_.back());
            trail_.pop_back();
        }
    }

    void complete() {
        TermMapping m;
        m.source = src_;
        m.target = tgt_;
        m.kind = kind_;
        m.map = binding_;
        for (const Constant& c : src_.constants()) {
            Term t = Term::constant(c);
            m.map.emplace(t, t);
        }
        if (!checkMappingDetailed(m).ok) return;
        if (!(*emit_)(std::move(m))) stopped_ = true;
    }

    void countNode() {
        ++nodes_;
        if (options_.nodeBudget && nodes_ > *options_.nodeBudget)
            throw BudgetError(BudgetKind::Search,
                              "mapping search exceeded the node budget of " +
                                  std::to_string(*options_.nodeBudget));
    }

    MappingKind kind_;
    const Query& src_;
    const Query& tgt_;
    SearchOptions options_;
    std::vector<const Atom*> distinctTargets_;
    std::vector<size_t> order_;
    std::map<Term, Term> binding_;
    std::vector<Term> trail_;
    const std::function<bool(TermMapping)>* emit_ = nullptr;
    bool stopped_ = false;
    std::uint64_t nodes_ = 0;
};

/// Bijective atom-by-atom search for isomorphisms.
class IsoSearch {
public:
    IsoSearch(const Query& q1, const Query& q2, const SearchOptions& options)
        : q1_(q1), q2_(q2), options_(options) {
        collectDistinct(q1_, atoms1_, counts1_);
        collectDistinct(q2_, atoms2_, counts2_);
    }

    std::optional<TermMapping> find() {
        if (q1_.condition().size() != q2_.condition().size()) return std::nullopt;
        if (atoms1_.size() != atoms2_.size()) return std::nullopt;
        if (q1_.headArity() != q2_.headArity()) return std::nullopt;
        if (q1_.multisetVars().size() != q2_.multisetVars().size()) return std::nullopt;
        if (!bindHead()) return std::nullopt;
        used_.assign(atoms2_.size(), false);
        if (!descend(0)) return std::nullopt;
        TermMapping m;
        m.source = q1_;
        m.target = q2_;
        m.kind = MappingKind::Iso;
        m.map = forward_;
        for (const Constant& c : q1_.constants()) {
            Term t = Term::constant(c);
            m.map.emplace(t, t);
        }
        if (!checkMappingDetailed(m).ok) return std::nullopt;
        return m;
    }

private:
    static void collectDistinct(const Query& q, std::vector<Atom>& atoms,
                                std::vector<long>& counts) {
        for (const Atom& a : q.condition()) {
            auto it = std::find(atoms.begin(), atoms.end(), a);
            if (it == atoms.end()) {
                atoms.push_back(a);
                counts.push_back(1);
            } else {
                ++counts[static_cast<size_t>(it - atoms.begin())];
            }
        }
    }

    bool bindHead() {
        for (size_t k = 0; k < q1_.head().size(); ++k)
            if (!bind(q1_.head()[k], q2_.head()[k])) return false;
        return true;
    }

    bool bind(const Term& from, const Term& to) {
        if (from.isConstant() || to.isConstant()) return from == to;
        auto f = forward_.find(from);
        if (f != forward_.end()) return f->second == to;
        auto r = reverse_.find(to);
        if (r != reverse_.end()) return false;  // two-to-one, not injective
        forward_.emplace(from, to);
        reverse_.emplace(to, from);
        trail_.push_back({from, to});
        return true;
    }

    bool descend(size_t i) {
        if (i == atoms1_.size()) return checkM();
        const Atom& a = atoms1_[i];
        for (size_t j = 0; j < atoms2_.size(); ++j) {
            if (used_[j]) continue;
            const Atom& b = atoms2_[j];
            countNode();
            if (counts1_[i] != counts2_[j]) continue;
            if (a.predicate != b.predicate || a.args.size() != b.args.size()) continue;
            if (a.isCopySensitive() != b.isCopySensitive()) continue;
            size_t mark = trail_.size();
            bool ok = true;
            for (size_t k = 0; ok && k < a.args.size(); ++k) ok = bind(a.args[k], b.args[k]);
            if (ok && a.isCopySensitive()) ok = bind(*a.copyVar, *b.copyVar);
            if (ok) {
                used_[j] = true;
                if (descend(i + 1)) return true;
                used_[j] = false;
            }
            unwind(mark);
        }
        return false;
    }

    bool checkM() {
        std::set<Term> image;
        for (const Term& v : q1_.multisetVars()) {
            auto it = forward_.find(v);
            if (it == forward_.end()) return false;
            image.insert(it->second);
        }
        std::set<Term> m2(q2_.multisetVars().begin(), q2_.multisetVars().end());
        return image == m2;
    }

    void unwind(size_t mark) {
        while (trail_.size() > mark) {
            forward_.erase(trail_.back().first);
            reverse_.erase(trail_.back().second);
            trail_.pop_back();
        }
    }

    void countNode() {
        ++nodes_;
        if (options_.nodeBudget && nodes_ > *options_.nodeBudget)
            throw BudgetError(BudgetKind::Search,
                              "isomorphism search exceeded the node budget of " +
                                  std::to_string(*options_.nodeBudget));
    }

    const Query& q1_;
    const Query& q2_;
    SearchOptions options_;
    std::vector<Atom> atoms1_, atoms2_;
    std::vector<long> counts1_, counts2_;
    std::vector<bool> used_;
    std::map<Term, Term> forward_;
    std::map<Term, Term> reverse_;
    std::vector<std::pair<Term, Term>> trail_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<TermMapping> findMapping(MappingKind kind, const Query& src, const Query& tgt,
                                       const SearchOptions& options) {
    if (kind == MappingKind::Iso) return findIsomorphism(src, tgt, IsoMode::Bag, options);
    if (kind == MappingKind::Scvm && !sameScale(src, tgt)) return std::nullopt;
    return MappingSearch(kind, src, tgt, options).findFirst();
}

std::vector<TermMapping> enumerateGcms(const Query& src, const Query& tgt,
                                       const SearchOptions& options) {
    return MappingSearch(MappingKind::Gcm, src, tgt, options).findAll();
}

std::optional<TermMapping> findIsomorphism(const Query& q1, const Query& q2, IsoMode mode,
                                           const SearchOptions& options) {
    if (mode == IsoMode::BagSet) {
        Query c1 = canonical(q1);
        Query c2 = canonical(q2);
        return IsoSearch(c1, c2, options).find();
    }
    return IsoSearch(q1, q2, options).find();
}

bool checkIsomorphic(const Query& q1, const Query& q2, IsoMode mode, const SearchOptions& options) {
    return findIsomorphism(q1, q2, mode, options).has_value();
}

}  // namespace ccq
