#include "ccq/query.hpp"

#include <algorithm>
#include <set>

namespace ccq {

const char* queryClassName(QueryClass c) {
    switch (c) {
        case QueryClass::Set: return "set";
        case QueryClass::Bag: return "bag";
        case QueryClass::BagSet: return "bag-set";
        case QueryClass::General: return "general";
    }
    return "?";
}

namespace {

void pushUnique(std::vector<Term>& out, const Term& t) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

}  // namespace

Query Query::validate(RawQuery raw) {
    if (raw.condition.empty())
        throw ValidationError(ValidationCode::EmptyCondition, "query '" + raw.name +
                                                                  "' has an empty condition");

    // Copy variables: in copy position of exactly one atom, nowhere else.
    std::vector<Term> copyVars;
    for (const Atom& a : raw.condition) {
        if (!a.copyVar) continue;
        const Term& cv = *a.copyVar;
        if (std::find(copyVars.begin(), copyVars.end(), cv) != copyVars.end())
            throw ValidationError(ValidationCode::CopyVarReuse,
                                  "copy variable " + cv.lexeme() + " appears in two atoms");
        copyVars.push_back(cv);
    }
    for (const Atom& a : raw.condition)
        for (const Term& t : a.args)
            if (t.isVariable() &&
                std::find(copyVars.begin(), copyVars.end(), t) != copyVars.end())
                throw ValidationError(ValidationCode::CopyVarReuse,
                                      "copy variable " + t.lexeme() + " used in argument position");
    for (const Term& t : raw.head)
        if (t.isVariable() && std::find(copyVars.begin(), copyVars.end(), t) != copyVars.end())
            throw ValidationError(ValidationCode::CopyVarReuse,
                                  "copy variable " + t.lexeme() + " used in the head");

    // Variables of the condition, first-occurrence order.
    std::vector<Term> bodyVars;
    for (const Atom& a : raw.condition) {
        for (const Term& t : a.args)
            if (t.isVariable()) pushUnique(bodyVars, t);
        if (a.copyVar) pushUnique(bodyVars, *a.copyVar);
    }

    // Safety: every head variable occurs in the condition.
    std::vector<Term> headVars;
    for (const Term& t : raw.head) {
        if (!t.isVariable()) continue;
        if (std::find(bodyVars.begin(), bodyVars.end(), t) == bodyVars.end())
            throw ValidationError(ValidationCode::UnsafeHead,
                                  "head variable " + t.lexeme() + " does not occur in the body");
        pushUnique(headVars, t);
    }

    // M: a set of nondistinguished variables of the condition, containing all
    // copy variables.
    std::vector<Term> m;
    for (const Term& t : raw.multisetVars) {
        if (!t.isVariable())
            throw ValidationError(ValidationCode::MNotNondistinguished,
                                  "M contains the constant " + t.lexeme());
        if (std::find(headVars.begin(), headVars.end(), t) != headVars.end())
            throw ValidationError(ValidationCode::MNotNondistinguished,
                                  "M contains the head variable " + t.lexeme());
        if (std::find(bodyVars.begin(), bodyVars.end(), t) == bodyVars.end())
            throw ValidationError(ValidationCode::MNotNondistinguished,
                                  "M contains " + t.lexeme() + ", which is not a condition variable");
        pushUnique(m, t);
    }
    for (const Term& cv : copyVars)
        if (std::find(m.begin(), m.end(), cv) == m.end())
            throw ValidationError(ValidationCode::MissingCopyVarInM,
                                  "copy variable " + cv.lexeme() + " is missing from M");

    Query q;
    q.name_ = std::move(raw.name);
    q.head_ = std::move(raw.head);
    q.condition_ = std::move(raw.condition);
    q.multisetVars_ = std::move(m);
    q.multisetVarsSorted_ = q.multisetVars_;
    std::sort(q.multisetVarsSorted_.begin(), q.multisetVarsSorted_.end());
    q.headVars_ = std::move(headVars);

    // Partitions, all in first-occurrence order.
    for (const Term& v : bodyVars) {
        const bool inM =
            std::find(q.multisetVars_.begin(), q.multisetVars_.end(), v) != q.multisetVars_.end();
        const bool isCopy = std::find(copyVars.begin(), copyVars.end(), v) != copyVars.end();
        const bool isHead = std::find(q.headVars_.begin(), q.headVars_.end(), v) != q.headVars_.end();
        if (isCopy)
            q.mCopy_.push_back(v);
        else if (inM)
            q.mNoncopy_.push_back(v);
        else if (!isHead)
            q.setVars_.push_back(v);
    }

    q.allVars_ = q.headVars_;
    for (const Term& v : bodyVars) pushUnique(q.allVars_, v);

    q.nonsetVars_ = q.headVars_;
    for (const Term& v : q.mNoncopy_) q.nonsetVars_.push_back(v);
    for (const Term& v : q.mCopy_) q.nonsetVars_.push_back(v);

    std::set<Constant> seen;
    auto noteConstant = [&](const Term& t) {
        if (t.isConstant() && seen.insert(t.asConstant()).second)
            q.constants_.push_back(t.asConstant());
    };
    for (const Term& t : q.head_) noteConstant(t);
    for (const Atom& a : q.condition_)
        for (const Term& t : a.args) noteConstant(t);

    q.allTerms_ = q.allVars_;
    for (const Constant& c : q.constants_) q.allTerms_.push_back(Term::constant(c));

    return q;
}

bool Query::isMultisetVar(const Term& v) const {
    return std::binary_search(multisetVarsSorted_.begin(), multisetVarsSorted_.end(), v);
}

bool Query::isCopyVar(const Term& v) const {
    return std::find(mCopy_.begin(), mCopy_.end(), v) != mCopy_.end();
}

bool Query::isSetVar(const Term& v) const {
    return std::find(setVars_.begin(), setVars_.end(), v) != setVars_.end();
}

bool Query::isHeadVar(const Term& v) const {
    return std::find(headVars_.begin(), headVars_.end(), v) != headVars_.end();
}

QueryClass classify(const Query& q) {
    if (q.multisetVars().empty()) return QueryClass::Set;
    if (!q.setVars().empty()) return QueryClass::General;
    bool allCopy = true;
    bool allRelational = true;
    for (const Atom& a : q.condition()) {
        if (a.isCopySensitive())
            allRelational = false;
        else
            allCopy = false;
    }
    if (allCopy) return QueryClass::Bag;
    if (allRelational) return QueryClass::BagSet;
    return QueryClass::General;
}

ScaleSignature scaleSignature(const Query& q) {
    return ScaleSignature{q.headArity(), q.copyVars().size(), q.noncopyVars().size()};
}

}  // namespace ccq
