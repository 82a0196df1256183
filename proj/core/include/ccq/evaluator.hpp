#ifndef CCQ_EVALUATOR_HPP
#define CCQ_EVALUATOR_HPP

#include <functional>
#include <vector>

#include "ccq/database.hpp"
#include "ccq/query.hpp"

namespace ccq {

/// Enumerates the set Gamma(Q,D) of satisfying assignments: identity on
/// constants, every relational atom matched by some stored atom, every
/// copy-sensitive atom p(T;i) matched with 1 <= i <= N for a stored atom with
/// copy number N. The visitor may return false to stop early.
///
/// Backtracking join over the atoms in source order with forward checking on
/// bound variables; copy variables are enumerated last per atom.
void forEachSatisfyingAssignment(const Query& q, const BagDatabase& d,
                                 const std::function<bool(const Assignment&)>& visit);

std::vector<Assignment> satisfyingAssignments(const Query& q, const BagDatabase& d);

/// Res_C(Q,D): multiplicity of a tuple is the number of distinct restrictions
/// to the nonset variables (head plus multiset variables) among satisfying
/// assignments whose head image is that tuple. A Boolean query answers with
/// copies of the empty tuple.
AnswerBag eval(const Query& q, const BagDatabase& d);

/// Multiplicity of one tuple in eval(q,d); 0 if absent.
/// Throws DomainError(ArityMismatch) if |t| differs from the head arity.
std::int64_t multiplicity(const Query& q, const BagDatabase& d,
                          const std::vector<Constant>& t);

/// Sub-bag test: every multiplicity in `a` is at most the one in `b`.
bool bagLeq(const AnswerBag& a, const AnswerBag& b);

}  // namespace ccq

#endif
