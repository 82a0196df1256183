#ifndef CCQ_ERRORS_HPP
#define CCQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ccq {

/// Location of a token in a source text; attached to every parse error.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;

    std::string str() const {
        return file + ":" + std::to_string(line) + ":" + std::to_string(column);
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourceSpan span, const std::string& message)
        : std::runtime_error(span.str() + ": " + message), span_(std::move(span)) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

enum class ValidationCode {
    UnsafeHead,
    CopyVarReuse,
    MNotNondistinguished,
    MissingCopyVarInM,
    EmptyCondition,
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    ValidationCode code() const { return code_; }

private:
    ValidationCode code_;
};

/// Precondition violations of individual operations (arity mismatch on a
/// multiplicity probe, scale mismatch in the wave analysis, and so on).
enum class DomainCode {
    ArityMismatch,
    ScaleMismatch,
    ClassMismatch,
    NonDistinctHead,
};

class DomainError : public std::runtime_error {
public:
    DomainError(DomainCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    DomainCode code() const { return code_; }

private:
    DomainCode code_;
};

/// A configured node or association cap was hit.
enum class BudgetKind {
    Search,        // mapping search nodes
    Enumeration,   // association enumeration in the wave analysis
    ExplicitWave,  // GCM enumeration in the explicit-wave check
};

class BudgetError : public std::runtime_error {
public:
    BudgetError(BudgetKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    BudgetKind kind() const { return kind_; }

private:
    BudgetKind kind_;
};

}  // namespace ccq

#endif
