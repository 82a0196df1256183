#ifndef CCQ_TERM_HPP
#define CCQ_TERM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace ccq {

/// A constant in a query or database: a lowercase symbol, an integer, or a
/// quoted text literal. Symbols beginning with '#' live in a reserved
/// namespace used for machine-generated constants; the surface grammar never
/// produces them from user identifiers.
class Constant {
public:
    enum class Kind { Symbol, Integer, Text };

    static Constant symbol(std::string name) { return Constant(Kind::Symbol, std::move(name), 0); }
    static Constant integer(std::int64_t value) { return Constant(Kind::Integer, {}, value); }
    static Constant text(std::string value) { return Constant(Kind::Text, std::move(value), 0); }

    Kind kind() const { return kind_; }
    bool isInteger() const { return kind_ == Kind::Integer; }
    std::int64_t intValue() const { return value_; }
    const std::string& textValue() const { return text_; }

    /// Lexeme as it appears in the text formats.
    std::string lexeme() const;

    // Constants of different kinds are never equal: a symbolic constant and
    // an integer always compare unequal.
    friend bool operator==(const Constant& a, const Constant& b) {
        return a.kind_ == b.kind_ && a.value_ == b.value_ && a.text_ == b.text_;
    }
    friend bool operator!=(const Constant& a, const Constant& b) { return !(a == b); }
    friend bool operator<(const Constant& a, const Constant& b) {
        return std::tie(a.kind_, a.value_, a.text_) < std::tie(b.kind_, b.value_, b.text_);
    }

private:
    Constant(Kind kind, std::string text, std::int64_t value)
        : kind_(kind), text_(std::move(text)), value_(value) {}

    Kind kind_;
    std::string text_;
    std::int64_t value_;
};

/// A term is a variable or a constant. Variable names and constant lexemes
/// are disjoint lexical classes (variables start uppercase).
class Term {
public:
    static Term variable(std::string name) { return Term(Variable{std::move(name)}); }
    static Term constant(Constant c) { return Term(std::move(c)); }

    bool isVariable() const { return std::holds_alternative<Variable>(rep_); }
    bool isConstant() const { return !isVariable(); }
    const std::string& varName() const { return std::get<Variable>(rep_).name; }
    const Constant& asConstant() const { return std::get<Constant>(rep_); }

    std::string lexeme() const { return isVariable() ? varName() : asConstant().lexeme(); }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.isVariable() != b.isVariable()) return false;
        if (a.isVariable()) return a.varName() == b.varName();
        return a.asConstant() == b.asConstant();
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    friend bool operator<(const Term& a, const Term& b) {
        if (a.isVariable() != b.isVariable()) return a.isVariable() < b.isVariable();
        if (a.isVariable()) return a.varName() < b.varName();
        return a.asConstant() < b.asConstant();
    }

private:
    struct Variable {
        std::string name;
    };
    explicit Term(Variable v) : rep_(std::move(v)) {}
    explicit Term(Constant c) : rep_(std::move(c)) {}

    std::variant<Variable, Constant> rep_;
};

/// One subgoal: a relational atom p(args) or a copy-sensitive atom
/// p(args; copyVar). The copy variable, when present, occurs only here.
struct Atom {
    std::string predicate;
    std::vector<Term> args;
    std::optional<Term> copyVar;  // always a variable when present

    bool isCopySensitive() const { return copyVar.has_value(); }

    /// The atom with its copy variable stripped.
    Atom relationalTemplate() const { return Atom{predicate, args, std::nullopt}; }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args && a.copyVar == b.copyVar;
    }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
    friend bool operator<(const Atom& a, const Atom& b) {
        return std::tie(a.predicate, a.args, a.copyVar) < std::tie(b.predicate, b.args, b.copyVar);
    }
};

}  // namespace ccq

#endif
