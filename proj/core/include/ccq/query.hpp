#ifndef CCQ_QUERY_HPP
#define CCQ_QUERY_HPP

#include <string>
#include <vector>

#include "ccq/errors.hpp"
#include "ccq/term.hpp"

namespace ccq {

/// An unvalidated query as produced by a parser or a test generator.
struct RawQuery {
    std::string name;
    std::vector<Term> head;
    std::vector<Atom> condition;       // a bag: order and duplicates preserved
    std::vector<Term> multisetVars;    // declared set M, in source order
};

enum class QueryClass { Set, Bag, BagSet, General };

const char* queryClassName(QueryClass c);

/// A validated CCQ query. Immutable after construction; safe to share across
/// threads. Derived variable partitions are computed once at validation and
/// iterate in first-occurrence order, so every downstream search is
/// deterministic.
class Query {
public:
    /// An empty placeholder; every operation expects a query built through
    /// validate().
    Query() = default;

    /// Validates a raw query: safety of the head, M a set of nondistinguished
    /// variables containing all copy variables, copy variables unique to one
    /// atom and confined to copy position, nonempty condition.
    static Query validate(RawQuery raw);

    const std::string& name() const { return name_; }
    const std::vector<Term>& head() const { return head_; }
    const std::vector<Atom>& condition() const { return condition_; }
    const std::vector<Term>& multisetVars() const { return multisetVars_; }

    // Derived partitions. Together with the head variables they partition
    // the variable set of the query.
    const std::vector<Term>& headVars() const { return headVars_; }
    const std::vector<Term>& copyVars() const { return mCopy_; }
    const std::vector<Term>& noncopyVars() const { return mNoncopy_; }
    const std::vector<Term>& setVars() const { return setVars_; }
    /// All variables in first-occurrence order (head first, then condition).
    const std::vector<Term>& allVars() const { return allVars_; }
    /// All terms of the query: variables first, then constants.
    const std::vector<Term>& allTerms() const { return allTerms_; }
    /// Constants used anywhere in the query (the paper's set P).
    const std::vector<Constant>& constants() const { return constants_; }

    bool isMultisetVar(const Term& v) const;
    bool isCopyVar(const Term& v) const;
    bool isSetVar(const Term& v) const;
    bool isHeadVar(const Term& v) const;

    size_t headArity() const { return head_.size(); }

    /// Nonset variables: head variables followed by multiset variables, the
    /// fixed order used for answer-multiplicity grouping.
    const std::vector<Term>& nonsetVars() const { return nonsetVars_; }

    friend bool operator==(const Query& a, const Query& b) {
        return a.name_ == b.name_ && a.head_ == b.head_ && a.condition_ == b.condition_ &&
               a.multisetVarsSorted_ == b.multisetVarsSorted_;
    }
    friend bool operator!=(const Query& a, const Query& b) { return !(a == b); }

private:
    std::string name_;
    std::vector<Term> head_;
    std::vector<Atom> condition_;
    std::vector<Term> multisetVars_;
    std::vector<Term> multisetVarsSorted_;  // M as a set, for equality

    std::vector<Term> headVars_;
    std::vector<Term> mCopy_;
    std::vector<Term> mNoncopy_;
    std::vector<Term> setVars_;
    std::vector<Term> allVars_;
    std::vector<Term> allTerms_;
    std::vector<Term> nonsetVars_;
    std::vector<Constant> constants_;
};

/// Structural classification: Set (M empty), Bag (no set variables, all
/// subgoals copy-sensitive), BagSet (no set variables, all subgoals
/// relational), General otherwise.
QueryClass classify(const Query& q);

struct ScaleSignature {
    size_t headArity = 0;
    size_t nCopy = 0;
    size_t nNoncopy = 0;

    friend bool operator==(const ScaleSignature&, const ScaleSignature&) = default;
};

/// (head arity, |M_copy|, |M_noncopy|).
ScaleSignature scaleSignature(const Query& q);

}  // namespace ccq

#endif
