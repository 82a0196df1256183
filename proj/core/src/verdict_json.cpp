#include <json.hpp>

#include "ccq/decision.hpp"
#include "ccq/text_io.hpp"

namespace ccq {

namespace {

nlohmann::json mappingJson(const TermMapping& m) {
    nlohmann::json map = nlohmann::json::object();
    for (const auto& [from, to] : m.map) map[from.lexeme()] = to.lexeme();
    return nlohmann::json{{"kind", mappingKindName(m.kind)}, {"map", map}};
}

nlohmann::json tupleJson(const std::vector<Constant>& t) {
    nlohmann::json out = nlohmann::json::array();
    for (const Constant& c : t) out.push_back(c.lexeme());
    return out;
}

nlohmann::json databaseJson(const BagDatabase& d) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [atom, copies] : d.facts()) out.push_back(printGroundAtom(atom, copies));
    return out;
}

}  // namespace

std::string printVerdict(const Verdict& v) {
    nlohmann::json out;
    out["question"] = v.question == Question::Equivalence ? "equivalence" : "containment";
    out["answer"] = answerName(v.answer);
    out["reason"] = reasonName(v.reason);
    out["witnesses"] = nlohmann::json::array();
    for (const TermMapping& m : v.witnesses) out["witnesses"].push_back(mappingJson(m));
    if (v.counterexample) {
        out["counterexample"] = nlohmann::json{{"database", databaseJson(v.counterexample->database)},
                                               {"tuple", tupleJson(v.counterexample->tuple)},
                                               {"mult1", v.counterexample->mult1},
                                               {"mult2", v.counterexample->mult2}};
    }
    return out.dump();
}

}  // namespace ccq
