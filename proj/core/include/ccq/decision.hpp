#ifndef CCQ_DECISION_HPP
#define CCQ_DECISION_HPP

#include <optional>
#include <string>
#include <vector>

#include "ccq/database.hpp"
#include "ccq/explicit_wave.hpp"
#include "ccq/mapping.hpp"
#include "ccq/query.hpp"

namespace ccq {

enum class Question { Equivalence, Containment };
enum class Answer { Yes, No, Unknown };

enum class Reason {
    ScaleMismatch,
    CvmBothWays,
    CvmOneWay,
    ExplicitWaveNoCvm,
    ImplicitWaveInconclusive,
    NoGcmCopyEnhanced,
    IsomorphismTest,
};

const char* answerName(Answer a);
const char* reasonName(Reason r);

struct Counterexample {
    BagDatabase database;
    std::vector<Constant> tuple;
    std::int64_t mult1 = 0;
    std::int64_t mult2 = 0;
};

/// Decision output. YES verdicts carry mapping witnesses that re-verify; NO
/// verdicts carry either a compatibility reason or, when the oracle ran, a
/// counterexample database on which the multiplicities differ. UNKNOWN is a
/// first-class answer: a missing CVM is inconclusive for implicit-wave
/// targets, and conflating it with NO would be unsound.
struct Verdict {
    Question question = Question::Equivalence;
    Answer answer = Answer::Unknown;
    Reason reason = Reason::ImplicitWaveInconclusive;
    std::vector<TermMapping> witnesses;
    std::optional<Counterexample> counterexample;
};

enum class CompatMode { Containment, Equivalence };

/// Containment mode: equal head arities, |M_copy(q1)| <= |M_copy(q2)| and
/// |M_noncopy(q1)| <= |M_noncopy(q2)|. Equivalence mode: both directions.
bool compatible(const Query& q1, const Query& q2, CompatMode mode);

struct DecideOptions {
    SearchOptions search;
    ExplicitWaveOptions wave;
    /// Escalate UNKNOWN to NO when the oracle finds a counterexample.
    bool oracleEscalation = false;
    std::int64_t oracleFamilyNMax = 3;
    int oracleSamples = 500;
    int oracleAdomSize = 4;
    int oracleMaxCopy = 3;
    std::uint64_t oracleSeed = 1;
    unsigned jobs = 1;
};

/// The equivalence procedure: the scale gate is always-sound NO; CVMs both
/// ways is always-sound YES; for a pair of explicit-wave queries a missing
/// CVM is a sound NO; anything else is UNKNOWN, optionally escalated to NO
/// by the counterexample search.
Verdict decideEquivalence(const Query& q1, const Query& q2, const DecideOptions& options = {});

/// The classical complete tests for same-class pairs: set queries via
/// containment mappings both ways, bag queries via isomorphism, bag-set
/// queries via isomorphism of the canonical representations.
/// Throws DomainError(ClassMismatch) unless both queries have the same class
/// in {Set, Bag, BagSet}.
Verdict decideEquivalenceClassical(const Query& q1, const Query& q2,
                                   const SearchOptions& options = {});

/// Containment q1 in q2: YES when a CVM from q2 to q1 exists (sufficient),
/// NO when containment compatibility fails or no GCM from copy_enhanced(q2)
/// to copy_enhanced(q1) exists, UNKNOWN otherwise.
Verdict checkContainment(const Query& q1, const Query& q2, const SearchOptions& options = {});

/// Verdict as a JSON document (single line).
std::string printVerdict(const Verdict& v);

}  // namespace ccq

#endif
