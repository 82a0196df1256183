#include "ccq/text_io.hpp"

#include <cctype>
#include <sstream>

namespace ccq {

namespace {

enum class TokKind {
    Ident,      // starts with a letter or '#'
    Integer,    // [-]?digits
    Quoted,     // '...'
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Dot,
    Arrow,      // <-
    End,
};

struct Token {
    TokKind kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string filename)
        : text_(text), file_(std::move(filename)) {}

    Token next() {
        skipTrivia();
        SourceSpan span{file_, line_, column_};
        if (pos_ >= text_.size()) return {TokKind::End, "", span};
        char c = text_[pos_];
        if (c == '(') return take(TokKind::LParen, span);
        if (c == ')') return take(TokKind::RParen, span);
        if (c == '{') return take(TokKind::LBrace, span);
        if (c == '}') return take(TokKind::RBrace, span);
        if (c == ',') return take(TokKind::Comma, span);
        if (c == ';') return take(TokKind::Semicolon, span);
        if (c == '.') return take(TokKind::Dot, span);
        if (c == '<') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                advance();
                advance();
                return {TokKind::Arrow, "<-", span};
            }
            throw ParseError(span, "expected '<-'");
        }
        if (c == '\'') {
            advance();
            std::string value;
            while (pos_ < text_.size() && text_[pos_] != '\'' && text_[pos_] != '\n') {
                value.push_back(text_[pos_]);
                advance();
            }
            if (pos_ >= text_.size() || text_[pos_] != '\'')
                throw ParseError(span, "unterminated quoted constant");
            advance();
            return {TokKind::Quoted, value, span};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::string digits;
            if (c == '-') {
                digits.push_back(c);
                advance();
            }
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits.push_back(text_[pos_]);
                advance();
            }
            return {TokKind::Integer, digits, span};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
            std::string ident(1, c);
            advance();
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
                    ident.push_back(d);
                    advance();
                } else {
                    break;
                }
            }
            return {TokKind::Ident, ident, span};
        }
        throw ParseError(span, std::string("unexpected character '") + c + "'");
    }

private:
    Token take(TokKind kind, SourceSpan span) {
        std::string t(1, text_[pos_]);
        advance();
        return {kind, t, span};
    }

    void skipTrivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, std::string filename)
        : lexer_(text, std::move(filename)) {
        bump();
    }

    Query query() {
        SourceSpan start = tok_.span;
        RawQuery raw;
        raw.name = expectUpperIdent("query name");
        expect(TokKind::LParen, "'('");
        if (tok_.kind != TokKind::RParen) raw.head = termList();
        expect(TokKind::RParen, "')'");
        expect(TokKind::Arrow, "'<-'");
        if (tok_.kind == TokKind::Dot || tok_.kind == TokKind::LBrace)
            throw ParseError(tok_.span, "empty condition");
        raw.condition.push_back(atom());
        for (;;) {
            expect(TokKind::Comma, "','");
            if (tok_.kind == TokKind::LBrace) break;
            raw.condition.push_back(atom());
        }
        expect(TokKind::LBrace, "'{'");
        if (tok_.kind != TokKind::RBrace) {
            raw.multisetVars.push_back(variable());
            while (tok_.kind == TokKind::Comma) {
                bump();
                raw.multisetVars.push_back(variable());
            }
        }
        expect(TokKind::RBrace, "'}'");
        expect(TokKind::Dot, "'.'");
        expect(TokKind::End, "end of input");
        try {
            return Query::validate(std::move(raw));
        } catch (const ValidationError& e) {
            throw ParseError(start, e.what());
        }
    }

    BagDatabase database() {
        BagDatabase d;
        while (tok_.kind != TokKind::End) {
            GroundAtom atom;
            atom.predicate = expectLowerIdent("predicate");
            expect(TokKind::LParen, "'('");
            atom.args.push_back(constantTok());
            while (tok_.kind == TokKind::Comma) {
                bump();
                atom.args.push_back(constantTok());
            }
            std::int64_t copies = 1;
            if (tok_.kind == TokKind::Semicolon) {
                bump();
                SourceSpan nSpan = tok_.span;
                if (tok_.kind != TokKind::Integer)
                    throw ParseError(nSpan, "expected copy number, got '" + tok_.text + "'");
                copies = std::stoll(tok_.text);
                if (copies <= 0)
                    throw ParseError(nSpan, "NonPositiveCopyNumber: copy number must be >= 1");
                bump();
            }
            expect(TokKind::RParen, "')'");
            expect(TokKind::Dot, "'.'");
            d.add(std::move(atom), copies);
        }
        return d;
    }

private:
    Atom atom() {
        Atom a;
        a.predicate = expectLowerIdent("predicate");
        expect(TokKind::LParen, "'('");
        a.args = termList();
        if (tok_.kind == TokKind::Semicolon) {
            bump();
            a.copyVar = variable();
        }
        expect(TokKind::RParen, "')'");
        return a;
    }

    std::vector<Term> termList() {
        std::vector<Term> terms;
        terms.push_back(term());
        while (tok_.kind == TokKind::Comma) {
            bump();
            terms.push_back(term());
        }
        return terms;
    }

    Term term() {
        if (tok_.kind == TokKind::Integer) {
            Term t = Term::constant(Constant::integer(std::stoll(tok_.text)));
            bump();
            return t;
        }
        if (tok_.kind == TokKind::Quoted) {
            Term t = Term::constant(Constant::text(tok_.text));
            bump();
            return t;
        }
        if (tok_.kind == TokKind::Ident) {
            Term t = std::isupper(static_cast<unsigned char>(tok_.text[0]))
                         ? Term::variable(tok_.text)
                         : Term::constant(Constant::symbol(tok_.text));
            bump();
            return t;
        }
        throw ParseError(tok_.span, "expected term, got '" + tok_.text + "'");
    }

    Term variable() {
        if (tok_.kind != TokKind::Ident || !std::isupper(static_cast<unsigned char>(tok_.text[0])))
            throw ParseError(tok_.span, "expected variable, got '" + tok_.text + "'");
        Term t = Term::variable(tok_.text);
        bump();
        return t;
    }

    Constant constantTok() {
        if (tok_.kind == TokKind::Integer) {
            Constant c = Constant::integer(std::stoll(tok_.text));
            bump();
            return c;
        }
        if (tok_.kind == TokKind::Quoted) {
            Constant c = Constant::text(tok_.text);
            bump();
            return c;
        }
        if (tok_.kind == TokKind::Ident &&
            !std::isupper(static_cast<unsigned char>(tok_.text[0]))) {
            Constant c = Constant::symbol(tok_.text);
            bump();
            return c;
        }
        throw ParseError(tok_.span, "expected constant, got '" + tok_.text + "'");
    }

    std::string expectUpperIdent(const std::string& what) {
        if (tok_.kind != TokKind::Ident || !std::isupper(static_cast<unsigned char>(tok_.text[0])))
            throw ParseError(tok_.span, "expected " + what + " (uppercase identifier), got '" +
                                            tok_.text + "'");
        std::string s = tok_.text;
        bump();
        return s;
    }

    std::string expectLowerIdent(const std::string& what) {
        if (tok_.kind != TokKind::Ident || std::isupper(static_cast<unsigned char>(tok_.text[0])))
            throw ParseError(tok_.span, "expected " + what + " (lowercase identifier), got '" +
                                            tok_.text + "'");
        std::string s = tok_.text;
        bump();
        return s;
    }

    void expect(TokKind kind, const std::string& what) {
        if (tok_.kind != kind)
            throw ParseError(tok_.span, "expected " + what + ", got '" +
                                            (tok_.kind == TokKind::End ? "<eof>" : tok_.text) + "'");
        bump();
    }

    void bump() { tok_ = lexer_.next(); }

    Lexer lexer_;
    Token tok_{TokKind::End, "", {}};
};

}  // namespace

Query parseQuery(std::string_view text, const std::string& filename) {
    return Parser(text, filename).query();
}

BagDatabase parseDatabase(std::string_view text, const std::string& filename) {
    return Parser(text, filename).database();
}

std::string Constant::lexeme() const {
    switch (kind_) {
        case Kind::Symbol: return text_;
        case Kind::Integer: return std::to_string(value_);
        case Kind::Text: return "'" + text_ + "'";
    }
    return "?";
}

std::string printConstant(const Constant& c) { return c.lexeme(); }

std::string printAtom(const Atom& a) {
    std::ostringstream out;
    out << a.predicate << "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (i) out << ",";
        out << a.args[i].lexeme();
    }
    if (a.copyVar) out << ";" << a.copyVar->lexeme();
    out << ")";
    return out.str();
}

std::string printQuery(const Query& q) {
    std::ostringstream out;
    out << q.name() << "(";
    for (size_t i = 0; i < q.head().size(); ++i) {
        if (i) out << ",";
        out << q.head()[i].lexeme();
    }
    out << ") <- ";
    for (size_t i = 0; i < q.condition().size(); ++i) {
        if (i) out << ", ";
        out << printAtom(q.condition()[i]);
    }
    out << ", {";
    for (size_t i = 0; i < q.multisetVars().size(); ++i) {
        if (i) out << ",";
        out << q.multisetVars()[i].lexeme();
    }
    out << "}.";
    return out.str();
}

std::string printGroundAtom(const GroundAtom& atom, std::int64_t copies) {
    std::ostringstream out;
    out << atom.predicate << "(";
    for (size_t i = 0; i < atom.args.size(); ++i) {
        if (i) out << ",";
        out << atom.args[i].lexeme();
    }
    if (copies != 1) out << ";" << copies;
    out << ").";
    return out.str();
}

std::string printDatabase(const BagDatabase& d) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [atom, copies] : d.facts()) {
        if (!first) out << "\n";
        first = false;
        out << printGroundAtom(atom, copies);
    }
    return out.str();
}

std::string printTuple(const std::vector<Constant>& t) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) out << ",";
        out << t[i].lexeme();
    }
    out << ")";
    return out.str();
}

}  // namespace ccq
