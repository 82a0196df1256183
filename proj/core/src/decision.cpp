#include "ccq/decision.hpp"

#include "ccq/errors.hpp"
#include "ccq/oracle.hpp"
#include "ccq/transforms.hpp"

namespace ccq {

const char* answerName(Answer a) {
    switch (a) {
        case Answer::Yes: return "YES";
        case Answer::No: return "NO";
        case Answer::Unknown: return "UNKNOWN";
    }
    return "?";
}

const char* reasonName(Reason r) {
    switch (r) {
        case Reason::ScaleMismatch: return "ScaleMismatch";
        case Reason::CvmBothWays: return "CvmBothWays";
        case Reason::CvmOneWay: return "CvmOneWay";
        case Reason::ExplicitWaveNoCvm: return "ExplicitWaveNoCvm";
        case Reason::ImplicitWaveInconclusive: return "ImplicitWaveInconclusive";
        case Reason::NoGcmCopyEnhanced: return "NoGcmCopyEnhanced";
        case Reason::IsomorphismTest: return "IsomorphismTest";
    }
    return "?";
}

bool compatible(const Query& q1, const Query& q2, CompatMode mode) {
    if (q1.headArity() != q2.headArity()) return false;
    const bool forward = q1.copyVars().size() <= q2.copyVars().size() &&
                         q1.noncopyVars().size() <= q2.noncopyVars().size();
    if (mode == CompatMode::Containment) return forward;
    return forward && q2.copyVars().size() <= q1.copyVars().size() &&
           q2.noncopyVars().size() <= q1.noncopyVars().size();
}

Verdict decideEquivalence(const Query& q1, const Query& q2, const DecideOptions& options) {
    Verdict v;
    v.question = Question::Equivalence;

    // Step 1: the scale gate is sound for all queries.
    if (!compatible(q1, q2, CompatMode::Equivalence)) {
        v.answer = Answer::No;
        v.reason = Reason::ScaleMismatch;
        return v;
    }

    // Step 3 first: CVMs both ways certify equivalence outright.
    auto cvm21 = findMapping(MappingKind::Cvm, q2, q1, options.search);  // q1 contained in q2
    auto cvm12 = findMapping(MappingKind::Cvm, q1, q2, options.search);  // q2 contained in q1
    if (cvm21 && cvm12) {
        v.answer = Answer::Yes;
        v.reason = Reason::CvmBothWays;
        v.witnesses.push_back(std::move(*cvm21));
        v.witnesses.push_back(std::move(*cvm12));
        return v;
    }

    // Step 2: a missing CVM refutes equivalence only against an explicit-wave
    // target.
    const bool ew1 = explicitWaveCheck(q1, options.wave).explicitWave;
    const bool ew2 = explicitWaveCheck(q2, options.wave).explicitWave;
    if (ew1 && ew2) {
        v.answer = Answer::No;
        v.reason = Reason::ExplicitWaveNoCvm;
        return v;
    }

    v.answer = Answer::Unknown;
    v.reason = Reason::ImplicitWaveInconclusive;
    if (cvm21)
        v.witnesses.push_back(std::move(*cvm21));
    else if (cvm12)
        v.witnesses.push_back(std::move(*cvm12));

    if (options.oracleEscalation) {
        std::optional<Counterexample> found;
        try {
            if (auto fam = counterexampleFamily(q1, q2, options.oracleFamilyNMax, options.jobs))
                found = Counterexample{std::move(fam->database), std::move(fam->tuple), fam->mult1,
                                       fam->mult2};
        } catch (const DomainError&) {
            // No family for this head shape; the random search still runs.
        }
        if (!found) {
            if (auto rnd =
                    falsifyRandom(q1, q2, options.oracleSamples, options.oracleAdomSize,
                                  options.oracleMaxCopy, options.oracleSeed, options.jobs))
                found = Counterexample{std::move(rnd->database), std::move(rnd->tuple), rnd->mult1,
                                       rnd->mult2};
        }
        if (found) {
            v.answer = Answer::No;
            v.counterexample = std::move(found);
        }
    }
    return v;
}

Verdict decideEquivalenceClassical(const Query& q1, const Query& q2,
                                   const SearchOptions& options) {
    const QueryClass c1 = classify(q1);
    const QueryClass c2 = classify(q2);
    if (c1 != c2 || c1 == QueryClass::General)
        throw DomainError(DomainCode::ClassMismatch,
                          "classical tests need two queries of one class in {set, bag, bag-set}");

    Verdict v;
    v.question = Question::Equivalence;
    if (c1 == QueryClass::Set) {
        auto cm21 = findMapping(MappingKind::Cm, q2, q1, options);
        auto cm12 = findMapping(MappingKind::Cm, q1, q2, options);
        if (cm21 && cm12) {
            v.answer = Answer::Yes;
            v.reason = Reason::CvmBothWays;
            v.witnesses.push_back(std::move(*cm21));
            v.witnesses.push_back(std::move(*cm12));
        } else {
            v.answer = Answer::No;
            v.reason = Reason::ExplicitWaveNoCvm;
        }
        return v;
    }

    const IsoMode mode = c1 == QueryClass::Bag ? IsoMode::Bag : IsoMode::BagSet;
    auto iso = findIsomorphism(q1, q2, mode, options);
    v.reason = Reason::IsomorphismTest;
    if (iso) {
        v.answer = Answer::Yes;
        v.witnesses.push_back(std::move(*iso));
    } else {
        v.answer = Answer::No;
    }
    return v;
}

Verdict checkContainment(const Query& q1, const Query& q2, const SearchOptions& options) {
    Verdict v;
    v.question = Question::Containment;

    if (!compatible(q1, q2, CompatMode::Containment)) {
        v.answer = Answer::No;
        v.reason = Reason::ScaleMismatch;
        return v;
    }
    if (auto cvm = findMapping(MappingKind::Cvm, q2, q1, options)) {
        v.answer = Answer::Yes;
        v.reason = Reason::CvmOneWay;
        v.witnesses.push_back(std::move(*cvm));
        return v;
    }
    const Query ce1 = copyEnhanced(q1);
    const Query ce2 = copyEnhanced(q2);
    if (!findMapping(MappingKind::Gcm, ce2, ce1, options)) {
        v.answer = Answer::No;
        v.reason = Reason::NoGcmCopyEnhanced;
        return v;
    }
    v.answer = Answer::Unknown;
    v.reason = Reason::ImplicitWaveInconclusive;
    return v;
}

}  // namespace ccq
