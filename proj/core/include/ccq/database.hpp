#ifndef CCQ_DATABASE_HPP
#define CCQ_DATABASE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccq/term.hpp"

namespace ccq {

/// A ground atom template: predicate plus constant arguments, without the
/// copy number.
struct GroundAtom {
    std::string predicate;
    std::vector<Constant> args;

    friend bool operator==(const GroundAtom& a, const GroundAtom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
    friend bool operator<(const GroundAtom& a, const GroundAtom& b) {
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return a.args < b.args;
    }
};

/// A finite bag database in consolidated representation: each distinct ground
/// atom carries one positive copy number.
class BagDatabase {
public:
    BagDatabase() = default;

    /// Adds `copies` further copies of the atom (merging by summation).
    void add(GroundAtom atom, std::int64_t copies = 1) {
        if (copies <= 0) throw std::invalid_argument("copy number must be positive");
        facts_[std::move(atom)] += copies;
    }

    /// Copy number of the atom, 0 if absent.
    std::int64_t copies(const GroundAtom& atom) const {
        auto it = facts_.find(atom);
        return it == facts_.end() ? 0 : it->second;
    }

    bool empty() const { return facts_.empty(); }
    size_t size() const { return facts_.size(); }

    const std::map<GroundAtom, std::int64_t>& facts() const { return facts_; }

    /// Constants appearing as arguments. Copy numbers enter the active domain
    /// only when they also appear as arguments, which this definition gives
    /// for free.
    std::set<Constant> activeDomain() const {
        std::set<Constant> adom;
        for (const auto& [atom, n] : facts_)
            adom.insert(atom.args.begin(), atom.args.end());
        return adom;
    }

    friend bool operator==(const BagDatabase& a, const BagDatabase& b) {
        return a.facts_ == b.facts_;
    }

private:
    std::map<GroundAtom, std::int64_t> facts_;
};

/// A satisfying assignment: variables to active-domain constants, copy
/// variables to positive integers (stored as integer constants). Identity on
/// constants is implicit.
class Assignment {
public:
    void bind(const Term& var, Constant value) { map_.insert_or_assign(var, std::move(value)); }

    const Constant* lookup(const Term& var) const {
        auto it = map_.find(var);
        return it == map_.end() ? nullptr : &it->second;
    }

    /// Applies the assignment to a term; constants map to themselves.
    Constant apply(const Term& t) const {
        if (t.isConstant()) return t.asConstant();
        auto it = map_.find(t);
        if (it == map_.end()) throw std::logic_error("assignment undefined on " + t.lexeme());
        return it->second;
    }

    std::vector<Constant> apply(const std::vector<Term>& terms) const {
        std::vector<Constant> out;
        out.reserve(terms.size());
        for (const Term& t : terms) out.push_back(apply(t));
        return out;
    }

    const std::map<Term, Constant>& bindings() const { return map_; }

    friend bool operator==(const Assignment& a, const Assignment& b) { return a.map_ == b.map_; }
    friend bool operator<(const Assignment& a, const Assignment& b) { return a.map_ < b.map_; }

private:
    std::map<Term, Constant> map_;
};

/// The result of combined-semantics evaluation: tuples with multiplicities.
class AnswerBag {
public:
    void add(std::vector<Constant> tuple, std::int64_t count = 1) {
        if (count <= 0) throw std::invalid_argument("multiplicity must be positive");
        entries_[std::move(tuple)] += count;
    }

    std::int64_t multiplicity(const std::vector<Constant>& tuple) const {
        auto it = entries_.find(tuple);
        return it == entries_.end() ? 0 : it->second;
    }

    bool empty() const { return entries_.empty(); }
    const std::map<std::vector<Constant>, std::int64_t>& entries() const { return entries_; }

    friend bool operator==(const AnswerBag& a, const AnswerBag& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const AnswerBag& a, const AnswerBag& b) { return !(a == b); }

private:
    std::map<std::vector<Constant>, std::int64_t> entries_;
};

}  // namespace ccq

#endif
