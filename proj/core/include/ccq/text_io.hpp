#ifndef CCQ_TEXT_IO_HPP
#define CCQ_TEXT_IO_HPP

#include <string>
#include <string_view>

#include "ccq/database.hpp"
#include "ccq/errors.hpp"
#include "ccq/query.hpp"

namespace ccq {

/// Parses one query in the .ccq surface syntax:
///
///   query := IDENTu "(" [terms] ")" "<-" atom {"," atom} "," "{" [vars] "}" "."
///   atom  := IDENTl "(" terms [";" VAR] ")"
///   term  := VAR | CONST
///   VAR   := identifier starting uppercase
///   CONST := identifier starting lowercase | integer | single-quoted string
///
/// '%' starts a comment running to end of line. Constants beginning with '#'
/// (the reserved machine namespace) are also accepted. The result is
/// validated through Query::validate; validation failures surface as
/// ParseError with the query's span.
Query parseQuery(std::string_view text, const std::string& filename = "<input>");

/// Parses a database: a sequence of facts `IDENTl "(" consts [";" POSINT] ")" "."`.
/// The copy number defaults to 1; repeated identical templates merge by
/// summing copy numbers. A zero copy number is a NonPositiveCopyNumber error.
BagDatabase parseDatabase(std::string_view text, const std::string& filename = "<input>");

/// Round-trip stable printers: parse(print(x)) is structurally equal to x.
std::string printQuery(const Query& q);

/// Atoms sorted lexicographically by (predicate, args); ";1" omitted.
std::string printDatabase(const BagDatabase& d);

std::string printConstant(const Constant& c);
std::string printAtom(const Atom& a);
std::string printGroundAtom(const GroundAtom& atom, std::int64_t copies);
std::string printTuple(const std::vector<Constant>& t);

}  // namespace ccq

#endif
