#ifndef CCQ_EXPLICIT_WAVE_HPP
#define CCQ_EXPLICIT_WAVE_HPP

#include <map>
#include <optional>

#include "ccq/mapping.hpp"
#include "ccq/query.hpp"

namespace ccq {

/// Syntactic sufficient conditions for a query to be explicit-wave:
/// at most one copy-sensitive subgoal, or no copy-sensitive subgoal carrying
/// a set variable, or no self-joins. Returns true when one of them fires,
/// nothing when inconclusive; never returns false.
std::optional<bool> fastExplicitWave(const Query& q);

/// Witness that a query is implicit-wave: two noncopy-permuting GCMs from
/// Q_ce to itself that agree on the multiset noncopy variables yet send an
/// original copy-sensitive subgoal to different relational templates.
struct ImplicitWaveWitness {
    std::map<Term, Term> noncopyBijection;
    TermMapping gcm1;
    TermMapping gcm2;
    Atom subgoal;
    Atom template1;
    Atom template2;
};

struct ExplicitWaveOptions {
    /// Cap on GCM-enumeration search nodes; unlimited when absent.
    std::optional<std::uint64_t> gcmBudget;
};

struct ExplicitWaveResult {
    bool explicitWave = false;
    std::optional<ImplicitWaveWitness> witness;  // present iff implicit
};

/// Full membership check. The fast path runs first; otherwise all
/// noncopy-permuting self-GCMs of the copy-enhanced version are grouped by
/// their multiset-noncopy bijection and each group must send every original
/// copy-sensitive subgoal to a single relational template. Membership is in
/// co-NP; no attempt is made to beat that bound.
/// Throws BudgetError(ExplicitWave) when the GCM cap is hit.
ExplicitWaveResult explicitWaveCheck(const Query& q, const ExplicitWaveOptions& options = {});

bool isExplicitWave(const Query& q, const ExplicitWaveOptions& options = {});

}  // namespace ccq

#endif
