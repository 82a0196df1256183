#ifndef CCQ_TRANSFORMS_HPP
#define CCQ_TRANSFORMS_HPP

#include <vector>

#include "ccq/query.hpp"

namespace ccq {

/// Canonical representation: the condition with duplicate atoms removed.
/// Copy-sensitive atoms are never duplicates of each other (copy variables
/// are unique per atom), so only relational duplicates collapse.
Query canonical(const Query& q);

/// T(Q): relational templates of all copy-sensitive subgoals, deduplicated,
/// in first-occurrence order.
std::vector<Atom> templateSet(const Query& q);

/// Regularized version Q_r: canonical(q) minus the atoms of T(Q).
Query regularized(const Query& q);

/// Deregularized version Q_d: Q_r plus every element of T(Q) once.
Query deregularized(const Query& q);

/// Copy-enhanced version Q_ce: every relational subgoal gains a fresh copy
/// variable, which joins M. Fresh names are K1, K2, ... with suffix
/// escalation on collision, so the construction is deterministic.
Query copyEnhanced(const Query& q);

/// Equivalence classes of the subgoals of the regularized version: one class
/// per relational subgoal, copy-sensitive subgoals grouped by relational
/// template. Relational classes come first, matching the database-family
/// layout.
struct SubgoalClasses {
    Query regularizedQuery;
    /// Indices into regularizedQuery.condition(), one vector per class;
    /// relational classes first, then copy-sensitive classes.
    std::vector<std::vector<size_t>> classes;
    /// Representative subgoal per class: the first member in source order
    /// (copy-sensitive classes contain only copy-sensitive atoms).
    std::vector<Atom> representatives;
    size_t relationalClassCount = 0;   // v
    size_t copySensitiveClassCount = 0;  // w
};

SubgoalClasses representativeSubgoals(const Query& q);

}  // namespace ccq

#endif
