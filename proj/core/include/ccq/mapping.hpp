#ifndef CCQ_MAPPING_HPP
#define CCQ_MAPPING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccq/query.hpp"

namespace ccq {

/// The structural mappings between two queries. A mapping of any kind maps
/// the terms of the source query to terms of the target query.
///
///  - Hom:         homomorphism between the conditions.
///  - Cm:          containment mapping (head-preserving homomorphism).
///  - Gcm:         generalized containment mapping (head, constants,
///                 core-set inclusion of atom images).
///  - MultisetHom: GCM injective from the source multiset variables into the
///                 target's.
///  - Cvm:         covering mapping; maps the source copy variables onto
///                 exactly the target's, covers the target multiset noncopy
///                 variables, and lets a relational subgoal land on a
///                 copy-sensitive counterpart.
///  - Scvm:        CVM between an equivalence-compatible pair; bijective on
///                 multiset variables.
///  - Iso:         one-to-one onto containment mapping inducing a bijection
///                 between the multiset-variable sets, both directions.
enum class MappingKind { Hom, Cm, Gcm, MultisetHom, Cvm, Scvm, Iso };

const char* mappingKindName(MappingKind k);

struct TermMapping {
    Query source;
    Query target;
    std::map<Term, Term> map;  // total on source terms; identity on constants
    MappingKind kind = MappingKind::Hom;

    /// Image of a term; constants not listed map to themselves.
    Term apply(const Term& t) const;
    /// Image of an atom (copy variable mapped along).
    Atom apply(const Atom& a) const;
};

struct CheckResult {
    bool ok = false;
    std::string firstViolation;  // empty when ok
};

/// Verifies every condition of the tagged kind; on failure reports the first
/// violated condition.
CheckResult checkMappingDetailed(const TermMapping& m);
bool checkMapping(const TermMapping& m);

struct SearchOptions {
    /// Cap on backtracking nodes; unlimited when absent.
    std::optional<std::uint64_t> nodeBudget;
};

/// Complete deterministic backtracking search for a mapping of the given
/// kind from src to tgt; returns the first witness in search order, or
/// nothing when no mapping of that kind exists.
/// Throws BudgetError(Search) when a configured node cap is hit.
std::optional<TermMapping> findMapping(MappingKind kind, const Query& src, const Query& tgt,
                                       const SearchOptions& options = {});

/// All GCMs from src to tgt, deduplicated extensionally, in deterministic
/// order.
std::vector<TermMapping> enumerateGcms(const Query& src, const Query& tgt,
                                       const SearchOptions& options = {});

enum class IsoMode { Bag, BagSet };

/// Bag mode tests the queries as given; bag-set mode tests their canonical
/// representations.
bool checkIsomorphic(const Query& q1, const Query& q2, IsoMode mode,
                     const SearchOptions& options = {});

/// The isomorphism witness, when one exists (on the canonical representations
/// in BagSet mode).
std::optional<TermMapping> findIsomorphism(const Query& q1, const Query& q2, IsoMode mode,
                                           const SearchOptions& options = {});

}  // namespace ccq

#endif
