#ifndef CCQ_WAVE_ANALYSIS_HPP
#define CCQ_WAVE_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ccq/database.hpp"
#include "ccq/mapping.hpp"
#include "ccq/query.hpp"
#include "ccq/transforms.hpp"

namespace ccq {

/// Positive multiplicities for the database family, one entry per symbolic
/// variable N_1..N_{m+w}.
using NVector = std::vector<std::int64_t>;

/// A product of symbolic variables N_j with positive exponents; the empty
/// product is the constant 1. Indices are 1-based.
class Monomial {
public:
    void multiplyBy(size_t nIndex, int exponent = 1) { exponents_[nIndex] += exponent; }
    const std::map<size_t, int>& exponents() const { return exponents_; }
    bool isOne() const { return exponents_.empty(); }

    std::int64_t evaluate(const NVector& n) const;
    std::string str() const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponents_ == b.exponents_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::map<size_t, int> exponents_;
};

/// The deterministic recipe for the database family of a query: the fixed
/// assignment nu0 on head variables, set variables and constants; the
/// representative subgoals; and the copy-variable labelling nu_Q^copy into
/// the N variables.
struct DbFamilySpec {
    Query originalQuery;
    Query baseQuery;  // regularized version; the family is built from it
    SubgoalClasses classes;

    std::map<Term, Constant> nu0;      // head and set variables -> fresh constants
    std::vector<Constant> tStar;       // nu0 applied to the head
    size_t m = 0;                      // |M_noncopy|
    size_t w = 0;                      // copy-sensitive class count
    std::vector<Term> noncopyOrder;    // Y_1..Y_m, first-occurrence order
    /// Copy variables ordered Y_{m+1}..Y_{m+r}: class representatives first
    /// (class order), then the remaining copy variables in source order.
    std::vector<Term> copyOrder;
    /// nu_Q^copy: copy variable -> 1-based N index in {m+1..m+w}.
    std::map<Term, size_t> nuCopy;

    size_t nVarCount() const { return m + w; }
};

/// Builds the family spec. The head must consist of pairwise distinct
/// variables; otherwise DomainError(NonDistinctHead).
DbFamilySpec familySpec(const Query& q);

/// One concrete member of the family, with the provenance needed by the
/// association analysis: which representative generated each ground atom,
/// and the inverse constant labelling nu_Q^(i).
struct FamilyDatabase {
    BagDatabase db;
    NVector n;
    std::vector<GroundAtom> atoms;        // in db.facts() order
    std::vector<std::int64_t> copies;     // per atom
    std::vector<size_t> generatorRep;     // per atom: representative index
    std::map<Constant, Term> nuInverse;   // adom constant -> term of baseQuery
};

FamilyDatabase buildFamilyDatabase(const DbFamilySpec& spec, const NVector& n);

/// D_{n}(Q): one copy-neutral canonical database per tuple of the cross
/// product S_1 x ... x S_m, merged as a set. Relational representatives get
/// copy number 1, the representative of copy-sensitive class j gets n_{m+j}.
BagDatabase buildDatabase(const DbFamilySpec& spec, const NVector& n);

/// An association assigns one database atom to every subgoal of the analyzed
/// query (in the fixed ordering: copy-sensitive subgoals first).
struct AssociationRecord {
    std::vector<size_t> atomChoice;  // per ordered subgoal: atom index
};

struct MonomialClass {
    std::vector<size_t> atomSignature;                // per ordered subgoal: representative index
    std::vector<Term> noncopySignature;               // length m; terms of the base query
    std::vector<std::optional<size_t>> copySignature; // length r; N index, or nullopt for 1
    std::vector<AssociationRecord> members;
};

struct EnumerationOptions {
    /// Hard cap on the size F^G of the association space.
    std::uint64_t associationBudget = 10'000'000;
    /// Worker parallelism; the enumeration is partitioned by the first
    /// subgoal's target atom and merged in atom order, so the result is
    /// independent of the worker count.
    unsigned jobs = 1;
};

struct MonomialClassSet {
    FamilyDatabase family;
    /// Indices into analyzed.condition(), copy-sensitive subgoals first
    /// (source order within each block).
    std::vector<size_t> subgoalOrder;
    std::vector<MonomialClass> classes;  // sorted by atom signature
};

/// Enumerates the nonempty monomial classes of `analyzed` with respect to
/// D_n(spec): groups the t*-valid associations by atom signature. The class
/// set is independent of n; recomputation on a second vector must agree.
/// Throws DomainError(ScaleMismatch) when the pair is not
/// equivalence-compatible and BudgetError(Enumeration) past the budget.
MonomialClassSet enumerateMonomialClasses(const DbFamilySpec& spec, const Query& analyzed,
                                          const NVector& n,
                                          const EnumerationOptions& options = {});

/// Product over the noncopy signature of the domain labels (N_j for multiset
/// noncopy variable Y_j, 1 otherwise) times the product over the copy
/// signature.
Monomial multiplicityMonomial(const MonomialClass& c, const DbFamilySpec& spec);

/// Distinct nonset-variable restrictions contributed by the class's member
/// associations.
std::set<std::vector<Constant>> classTuples(const MonomialClass& c, const MonomialClassSet& set,
                                            const Query& analyzed);

/// |Gamma^(i)[c]| equals the multiplicity monomial evaluated at n.
bool classCardinalityCheck(const MonomialClass& c, const DbFamilySpec& spec,
                           const MonomialClassSet& set, const Query& analyzed);

/// The wave of Q: product of N_1..N_m and of nu_Q^copy over all r copy
/// variables.
Monomial wave(const DbFamilySpec& spec);

/// If some nonempty monomial class of `analyzed` has the wave of the spec's
/// query as its multiplicity monomial, extracts a same-scale covering mapping
/// from `analyzed` to the spec's query and verifies it before returning.
/// Returns nothing when no wave class exists.
std::optional<TermMapping> waveClassScvm(const DbFamilySpec& spec, const Query& analyzed,
                                         const EnumerationOptions& options = {});

}  // namespace ccq

#endif
