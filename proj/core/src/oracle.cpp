#include "ccq/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

#include "ccq/errors.hpp"
#include "ccq/evaluator.hpp"

namespace ccq {

namespace {

/// Runs fn(0..count-1) across `jobs` workers and returns the smallest index
/// with a hit; candidate order, not wall clock, decides.
template <typename Result>
std::optional<std::pair<std::size_t, Result>> firstHitByIndex(
    std::size_t count, unsigned jobs, const std::function<std::optional<Result>(std::size_t)>& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            if (auto r = fn(i)) return std::make_pair(i, std::move(*r));
        return std::nullopt;
    }

    std::atomic<std::size_t> nextIndex{0};
    std::atomic<std::size_t> bestIndex{count};
    std::vector<std::optional<Result>> results(count);
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex errorLock;

    auto work = [&]() {
        try {
            for (;;) {
                std::size_t i = nextIndex.fetch_add(1);
                if (i >= count || i >= bestIndex.load()) return;
                if (auto r = fn(i)) {
                    results[i] = std::move(r);
                    std::size_t cur = bestIndex.load();
                    while (i < cur && !bestIndex.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> guard(errorLock);
            if (!error) error = std::current_exception();
        }
    };
    for (unsigned t = 0; t < jobs; ++t) workers.emplace_back(work);
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);

    // The winner is the smallest index with a hit; indices below the recorded
    // best may have been computed by a straggler, so rescan.
    for (std::size_t i = 0; i < count; ++i)
        if (results[i]) return std::make_pair(i, std::move(*results[i]));
    return std::nullopt;
}

std::vector<NVector> familyVectors(std::size_t length, std::int64_t nMax) {
    std::vector<NVector> out;
    if (length == 0) {
        out.push_back({});
        return out;
    }
    for (std::int64_t norm = 1; norm <= nMax; ++norm) {
        // Lexicographic enumeration of {1..norm}^length, keeping max == norm.
        NVector v(length, 1);
        for (;;) {
            if (*std::max_element(v.begin(), v.end()) == norm) out.push_back(v);
            std::size_t j = length;
            while (j > 0) {
                --j;
                if (++v[j] <= norm) break;
                v[j] = 1;
                if (j == 0) {
                    j = length;
                    break;
                }
            }
            if (j == length) break;
        }
    }
    return out;
}

}  // namespace

std::optional<FamilyCounterexample> counterexampleFamily(const Query& q1, const Query& q2,
                                                         std::int64_t nMax, unsigned jobs) {
    if (!(scaleSignature(q1) == scaleSignature(q2)))
        throw DomainError(DomainCode::ScaleMismatch,
                          "the family search needs an equivalence-compatible pair");
    const DbFamilySpec spec = familySpec(q1);
    const std::vector<NVector> vectors = familyVectors(spec.nVarCount(), nMax);

    auto probe = [&](std::size_t i) -> std::optional<FamilyCounterexample> {
        const NVector& n = vectors[i];
        BagDatabase db = buildDatabase(spec, n);
        std::int64_t m1 = multiplicity(q1, db, spec.tStar);
        std::int64_t m2 = multiplicity(q2, db, spec.tStar);
        if (m1 == m2) return std::nullopt;
        return FamilyCounterexample{n, std::move(db), spec.tStar, m1, m2};
    };
    auto hit = firstHitByIndex<FamilyCounterexample>(vectors.size(), jobs, probe);
    if (!hit) return std::nullopt;
    return std::move(hit->second);
}

namespace {

std::vector<std::pair<std::string, std::size_t>> relationSchema(const Query& q1, const Query& q2) {
    std::vector<std::pair<std::string, std::size_t>> schema;
    auto harvest = [&](const Query& q) {
        for (const Atom& a : q.condition()) {
            auto key = std::make_pair(a.predicate, a.args.size());
            if (std::find(schema.begin(), schema.end(), key) == schema.end())
                schema.push_back(key);
        }
    };
    harvest(q1);
    harvest(q2);
    return schema;
}

}  // namespace

BagDatabase randomDatabase(const Query& q1, const Query& q2, int adomSize, int maxCopy,
                           std::uint64_t seed, std::size_t index) {
    if (adomSize < 1 || maxCopy < 1)
        throw std::invalid_argument("random search needs adomSize >= 1 and maxCopy >= 1");
    const auto schema = relationSchema(q1, q2);
    Lcg rng(seed, index);
    BagDatabase db;
    for (const auto& [predicate, arity] : schema) {
        std::vector<std::int64_t> tuple(arity, 1);
        for (;;) {
            if (rng.nextBool()) {
                GroundAtom atom;
                atom.predicate = predicate;
                for (std::int64_t v : tuple) atom.args.push_back(Constant::integer(v));
                db.add(std::move(atom), maxCopy > 1 ? rng.nextIn(maxCopy) : 1);
            }
            std::size_t j = arity;
            while (j > 0) {
                --j;
                if (++tuple[j] <= adomSize) break;
                tuple[j] = 1;
                if (j == 0) {
                    j = arity;
                    break;
                }
            }
            if (j == arity || arity == 0) break;
        }
    }
    return db;
}

std::optional<RandomCounterexample> falsifyRandom(const Query& q1, const Query& q2, int samples,
                                                  int adomSize, int maxCopy, std::uint64_t seed,
                                                  unsigned jobs,
                                                  std::span<const BagDatabase> seedDatabases) {
    const std::size_t total = seedDatabases.size() + static_cast<std::size_t>(std::max(samples, 0));

    auto probe = [&](std::size_t i) -> std::optional<RandomCounterexample> {
        BagDatabase db = i < seedDatabases.size()
                             ? seedDatabases[i]
                             : randomDatabase(q1, q2, adomSize, maxCopy, seed,
                                              i - seedDatabases.size());
        AnswerBag b1 = eval(q1, db);
        AnswerBag b2 = eval(q2, db);
        if (b1 == b2) return std::nullopt;
        // Deterministic differing tuple: the smallest key of either bag where
        // the multiplicities disagree.
        std::vector<Constant> tuple;
        std::int64_t m1 = 0;
        std::int64_t m2 = 0;
        bool found = false;
        for (const auto& [t, n] : b1.entries()) {
            if (n != b2.multiplicity(t)) {
                tuple = t;
                m1 = n;
                m2 = b2.multiplicity(t);
                found = true;
                break;
            }
        }
        if (!found) {
            for (const auto& [t, n] : b2.entries()) {
                if (n != b1.multiplicity(t)) {
                    tuple = t;
                    m1 = b1.multiplicity(t);
                    m2 = n;
                    break;
                }
            }
        }
        return RandomCounterexample{i, std::move(db), std::move(tuple), m1, m2};
    };

    auto hit = firstHitByIndex<RandomCounterexample>(total, jobs, probe);
    if (!hit) return std::nullopt;
    return std::move(hit->second);
}

}  // namespace ccq
