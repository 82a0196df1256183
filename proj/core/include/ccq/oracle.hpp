#ifndef CCQ_ORACLE_HPP
#define CCQ_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccq/database.hpp"
#include "ccq/query.hpp"
#include "ccq/wave_analysis.hpp"

namespace ccq {

/// Splittable 64-bit generator: per-stream state seeded with
/// seed + index * 0x9E3779B97F4A7C15, stepped by the linear congruence
/// x <- x * 6364136223846793005 + 1442695040888963407 (mod 2^64), output
/// taken from the high 32 bits. Fixed here so counterexample searches are
/// reproducible across implementations and platforms.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(seed + stream * 0x9E3779B97F4A7C15ull) {
        next();
    }

    std::uint32_t next() {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::uint32_t>(state_ >> 32);
    }

    bool nextBool() { return (next() & 1u) != 0; }

    /// Uniform value in 1..bound.
    std::int64_t nextIn(std::int64_t bound) {
        return 1 + static_cast<std::int64_t>(next() % static_cast<std::uint32_t>(bound));
    }

private:
    std::uint64_t state_;
};

struct FamilyCounterexample {
    NVector n;
    BagDatabase database;
    std::vector<Constant> tuple;  // t* of q1's family
    std::int64_t mult1 = 0;
    std::int64_t mult2 = 0;
};

/// Searches the database family of q1 for a vector where the multiplicity of
/// t*_{q1} under q1 and q2 disagree. Vectors with entries 1..nMax are tried
/// in increasing max-norm, then lexicographic, order; the first disagreement
/// wins. Absence within the bound proves nothing.
/// Throws DomainError(ScaleMismatch) for a non-equivalence-compatible pair
/// and DomainError(NonDistinctHead) when q1 admits no family.
std::optional<FamilyCounterexample> counterexampleFamily(const Query& q1, const Query& q2,
                                                         std::int64_t nMax, unsigned jobs = 1);

struct RandomCounterexample {
    std::size_t sampleIndex = 0;
    BagDatabase database;
    std::vector<Constant> tuple;
    std::int64_t mult1 = 0;
    std::int64_t mult2 = 0;
};

/// Seeded pseudo-random search: databases over the predicates of both
/// queries, active domain {1..adomSize}, each candidate fact included with
/// probability 1/2 and a copy number uniform in 1..maxCopy. `seedDatabases`
/// are tried first, occupying the low sample indices. First-found semantics
/// are by candidate index, so the result is independent of `jobs`.
std::optional<RandomCounterexample> falsifyRandom(const Query& q1, const Query& q2, int samples,
                                                  int adomSize, int maxCopy, std::uint64_t seed,
                                                  unsigned jobs = 1,
                                                  std::span<const BagDatabase> seedDatabases = {});

/// The sample a given index would draw (exposed for reproducibility tests).
BagDatabase randomDatabase(const Query& q1, const Query& q2, int adomSize, int maxCopy,
                           std::uint64_t seed, std::size_t index);

}  // namespace ccq

#endif
