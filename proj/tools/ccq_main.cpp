// Command-line front end: parse, evaluate, search for mappings, classify
// waves, decide equivalence/containment, and hunt for counterexamples.
// One JSON document per invocation on stdout; diagnostics on stderr.
//
// Exit codes: 0 success (YES for decide), 1 parse/validation error,
// 2 budget exhaustion, 3 NO, 4 UNKNOWN.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccq/decision.hpp"
#include "ccq/errors.hpp"
#include "ccq/evaluator.hpp"
#include "ccq/explicit_wave.hpp"
#include "ccq/oracle.hpp"
#include "ccq/text_io.hpp"
#include "ccq/transforms.hpp"
#include "ccq/wave_analysis.hpp"

namespace {

constexpr const char* kEngineVersion = "0.1.0";
constexpr const char* kGrammarVersion = "1";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ccq::Query loadQuery(const std::string& path) { return ccq::parseQuery(slurp(path), path); }

ccq::BagDatabase loadDatabase(const std::string& path) {
    return ccq::parseDatabase(slurp(path), path);
}

nlohmann::json tupleKeyBag(const ccq::AnswerBag& bag) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [tuple, count] : bag.entries()) out[ccq::printTuple(tuple)] = count;
    return out;
}

nlohmann::json mappingJson(const ccq::TermMapping& m) {
    nlohmann::json map = nlohmann::json::object();
    for (const auto& [from, to] : m.map) map[from.lexeme()] = to.lexeme();
    return nlohmann::json{{"kind", ccq::mappingKindName(m.kind)}, {"map", map}};
}

nlohmann::json databaseJson(const ccq::BagDatabase& d) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [atom, copies] : d.facts())
        out.push_back(ccq::printGroundAtom(atom, copies));
    return out;
}

nlohmann::json tupleJson(const std::vector<ccq::Constant>& t) {
    nlohmann::json out = nlohmann::json::array();
    for (const ccq::Constant& c : t) out.push_back(c.lexeme());
    return out;
}

ccq::NVector parseNVector(const std::string& text) {
    ccq::NVector n;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) n.push_back(std::stoll(item));
    return n;
}

int answerExitCode(const ccq::Verdict& v) {
    switch (v.answer) {
        case ccq::Answer::Yes: return 0;
        case ccq::Answer::No: return 3;
        case ccq::Answer::Unknown: return 4;
    }
    return 1;
}

struct GlobalOptions {
    std::optional<std::uint64_t> budget;
    unsigned jobs = 1;
};

ccq::SearchOptions searchOptions(const GlobalOptions& g) {
    ccq::SearchOptions s;
    s.nodeBudget = g.budget;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combined-semantics CCQ query analysis"};
    app.require_subcommand(0, 1);

    GlobalOptions global;
    std::uint64_t budgetArg = 0;
    bool haveBudget = false;
    app.add_option("--budget", budgetArg, "cap on search nodes / association count")
        ->each([&](const std::string&) { haveBudget = true; });
    app.add_option("--jobs", global.jobs, "worker parallelism for oracle and wave analysis");
    bool showVersion = false;
    app.add_flag("--version", showVersion, "print engine and grammar versions");

    // check
    auto* cmdCheck = app.add_subcommand("check", "parse, validate and classify a query");
    std::string checkQueryPath;
    cmdCheck->add_option("--query", checkQueryPath, "query file (.ccq)")->required();

    // eval
    auto* cmdEval = app.add_subcommand("eval", "evaluate a query on a bag database");
    std::string evalQueryPath, evalDbPath;
    cmdEval->add_option("--query", evalQueryPath)->required();
    cmdEval->add_option("--db", evalDbPath)->required();

    // map
    auto* cmdMap = app.add_subcommand("map", "search for a structural mapping");
    std::string mapKind, mapFromPath, mapToPath;
    cmdMap->add_option("--kind", mapKind, "cm|gcm|mhom|cvm|scvm|iso")->required();
    cmdMap->add_option("--from", mapFromPath, "source query")->required();
    cmdMap->add_option("--to", mapToPath, "target query")->required();

    // wave
    auto* cmdWave = app.add_subcommand("wave", "explicit-wave classification / class analysis");
    bool waveClassify = false, waveAnalyze = false;
    std::string waveQueryPath, waveAgainstPath, waveN;
    cmdWave->add_flag("--classify", waveClassify);
    cmdWave->add_flag("--analyze", waveAnalyze);
    cmdWave->add_option("--query", waveQueryPath)->required();
    cmdWave->add_option("--against", waveAgainstPath, "analyzed query (defaults to --query)");
    cmdWave->add_option("--n", waveN, "comma-separated N vector, e.g. 2,3");

    // decide
    auto* cmdDecide = app.add_subcommand("decide", "decide combined-semantics equivalence");
    std::string decideQ1, decideQ2;
    bool decideOracle = false, decideClassical = false, decideContainment = false;
    cmdDecide->add_option("--q1", decideQ1)->required();
    cmdDecide->add_option("--q2", decideQ2)->required();
    cmdDecide->add_flag("--oracle", decideOracle, "escalate UNKNOWN via counterexample search");
    cmdDecide->add_flag("--classical", decideClassical, "classical same-class test");
    cmdDecide->add_flag("--containment", decideContainment, "containment of q1 in q2");

    // oracle
    auto* cmdOracle = app.add_subcommand("oracle", "counterexample search");
    std::string oracleQ1, oracleQ2;
    std::int64_t oracleFamilyNMax = 0;
    std::vector<std::string> oracleRandom;
    cmdOracle->add_option("--q1", oracleQ1)->required();
    cmdOracle->add_option("--q2", oracleQ2)->required();
    cmdOracle->add_option("--family", oracleFamilyNMax, "family search up to this entry bound");
    cmdOracle
        ->add_option("--random", oracleRandom,
                     "random search: SAMPLES ADOM MAX-COPY SEED")
        ->expected(4);

    // transform
    auto* cmdTransform = app.add_subcommand("transform", "print a rewritten query");
    std::string transformTo, transformQueryPath;
    cmdTransform->add_option("--to", transformTo, "canonical|regularized|deregularized|copy-enhanced")
        ->required();
    cmdTransform->add_option("--query", transformQueryPath)->required();

    CLI11_PARSE(app, argc, argv);

    if (haveBudget) global.budget = budgetArg;

    try {
        if (showVersion) {
            std::cout << nlohmann::json{{"engine", kEngineVersion}, {"grammar", kGrammarVersion}}
                             .dump()
                      << "\n";
            return 0;
        }

        if (cmdCheck->parsed()) {
            ccq::Query q = loadQuery(checkQueryPath);
            ccq::ScaleSignature s = scaleSignature(q);
            nlohmann::json out{{"query", ccq::printQuery(q)},
                               {"class", ccq::queryClassName(classify(q))},
                               {"scale",
                                {{"head_arity", s.headArity},
                                 {"copy", s.nCopy},
                                 {"noncopy", s.nNoncopy}}},
                               {"valid", true}};
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (cmdEval->parsed()) {
            ccq::Query q = loadQuery(evalQueryPath);
            ccq::BagDatabase d = loadDatabase(evalDbPath);
            std::cout << tupleKeyBag(ccq::eval(q, d)).dump() << "\n";
            return 0;
        }

        if (cmdMap->parsed()) {
            ccq::Query src = loadQuery(mapFromPath);
            ccq::Query tgt = loadQuery(mapToPath);
            ccq::MappingKind kind;
            if (mapKind == "cm")
                kind = ccq::MappingKind::Cm;
            else if (mapKind == "gcm")
                kind = ccq::MappingKind::Gcm;
            else if (mapKind == "mhom")
                kind = ccq::MappingKind::MultisetHom;
            else if (mapKind == "cvm")
                kind = ccq::MappingKind::Cvm;
            else if (mapKind == "scvm")
                kind = ccq::MappingKind::Scvm;
            else if (mapKind == "iso")
                kind = ccq::MappingKind::Iso;
            else
                throw std::runtime_error("unknown mapping kind: " + mapKind);
            auto m = ccq::findMapping(kind, src, tgt, searchOptions(global));
            nlohmann::json out{{"kind", mapKind}, {"found", m.has_value()}};
            if (m) out["mapping"] = mappingJson(*m);
            std::cout << out.dump() << "\n";
            return m ? 0 : 3;
        }

        if (cmdWave->parsed()) {
            ccq::Query q = loadQuery(waveQueryPath);
            if (waveAnalyze) {
                ccq::Query analyzed = waveAgainstPath.empty() ? q : loadQuery(waveAgainstPath);
                ccq::DbFamilySpec spec = ccq::familySpec(q);
                ccq::NVector n = waveN.empty() ? ccq::NVector(spec.nVarCount(), 1)
                                               : parseNVector(waveN);
                ccq::EnumerationOptions enumOpts;
                if (global.budget) enumOpts.associationBudget = *global.budget;
                enumOpts.jobs = global.jobs;
                ccq::MonomialClassSet classes =
                    ccq::enumerateMonomialClasses(spec, analyzed, n, enumOpts);

                nlohmann::json table = nlohmann::json::array();
                for (size_t i = 0; i < classes.classes.size(); ++i) {
                    const ccq::MonomialClass& c = classes.classes[i];
                    nlohmann::json row;
                    row["id"] = "C" + std::to_string(i + 1);
                    nlohmann::json dbAtoms = nlohmann::json::array();
                    for (const auto& member : c.members) {
                        nlohmann::json assoc = nlohmann::json::array();
                        for (size_t atomIdx : member.atomChoice)
                            assoc.push_back(ccq::printGroundAtom(
                                classes.family.atoms[atomIdx], classes.family.copies[atomIdx]));
                        dbAtoms.push_back(assoc);
                    }
                    row["associations"] = dbAtoms;
                    nlohmann::json atomSig = nlohmann::json::array();
                    for (size_t rep : c.atomSignature)
                        atomSig.push_back(ccq::printAtom(spec.classes.representatives[rep]));
                    row["atom_signature"] = atomSig;
                    nlohmann::json noncopySig = nlohmann::json::array();
                    for (const ccq::Term& t : c.noncopySignature) noncopySig.push_back(t.lexeme());
                    row["noncopy_signature"] = noncopySig;
                    nlohmann::json copySig = nlohmann::json::array();
                    for (const auto& e : c.copySignature)
                        copySig.push_back(e ? "N" + std::to_string(*e) : "1");
                    row["copy_signature"] = copySig;
                    row["multiplicity_monomial"] = ccq::multiplicityMonomial(c, spec).str();
                    nlohmann::json tuples = nlohmann::json::array();
                    for (const auto& t : ccq::classTuples(c, classes, analyzed))
                        tuples.push_back(ccq::printTuple(t));
                    row["tuples"] = tuples;
                    table.push_back(row);
                }
                nlohmann::json out{{"database", databaseJson(classes.family.db)},
                                   {"t_star", tupleJson(spec.tStar)},
                                   {"wave", ccq::wave(spec).str()},
                                   {"classes", table}};
                std::cout << out.dump() << "\n";
                return 0;
            }

            // --classify (the default)
            ccq::ExplicitWaveOptions opts;
            if (global.budget) opts.gcmBudget = global.budget;
            ccq::ExplicitWaveResult r = ccq::explicitWaveCheck(q, opts);
            nlohmann::json out{{"wave", r.explicitWave ? "explicit" : "implicit"}};
            if (r.witness) {
                nlohmann::json pi = nlohmann::json::object();
                for (const auto& [from, to] : r.witness->noncopyBijection)
                    pi[from.lexeme()] = to.lexeme();
                out["witness"] = nlohmann::json{
                    {"noncopy_bijection", pi},
                    {"gcm1", mappingJson(r.witness->gcm1)},
                    {"gcm2", mappingJson(r.witness->gcm2)},
                    {"subgoal", ccq::printAtom(r.witness->subgoal)},
                    {"template1", ccq::printAtom(r.witness->template1)},
                    {"template2", ccq::printAtom(r.witness->template2)}};
            }
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (cmdDecide->parsed()) {
            ccq::Query q1 = loadQuery(decideQ1);
            ccq::Query q2 = loadQuery(decideQ2);
            ccq::Verdict v;
            if (decideContainment) {
                v = ccq::checkContainment(q1, q2, searchOptions(global));
            } else if (decideClassical) {
                v = ccq::decideEquivalenceClassical(q1, q2, searchOptions(global));
            } else {
                ccq::DecideOptions opts;
                opts.search = searchOptions(global);
                if (global.budget) opts.wave.gcmBudget = global.budget;
                opts.oracleEscalation = decideOracle;
                opts.jobs = global.jobs;
                v = ccq::decideEquivalence(q1, q2, opts);
            }
            std::cout << ccq::printVerdict(v) << "\n";
            return answerExitCode(v);
        }

        if (cmdOracle->parsed()) {
            ccq::Query q1 = loadQuery(oracleQ1);
            ccq::Query q2 = loadQuery(oracleQ2);
            nlohmann::json out;
            if (oracleFamilyNMax > 0) {
                auto found = ccq::counterexampleFamily(q1, q2, oracleFamilyNMax, global.jobs);
                out["found"] = found.has_value();
                if (found) {
                    out["n"] = found->n;
                    out["database"] = databaseJson(found->database);
                    out["tuple"] = tupleJson(found->tuple);
                    out["mult1"] = found->mult1;
                    out["mult2"] = found->mult2;
                }
            } else if (!oracleRandom.empty()) {
                int samples = std::stoi(oracleRandom[0]);
                int adom = std::stoi(oracleRandom[1]);
                int maxCopy = std::stoi(oracleRandom[2]);
                std::uint64_t seed = std::stoull(oracleRandom[3]);
                auto found = ccq::falsifyRandom(q1, q2, samples, adom, maxCopy, seed, global.jobs);
                out["found"] = found.has_value();
                if (found) {
                    out["sample"] = found->sampleIndex;
                    out["database"] = databaseJson(found->database);
                    out["tuple"] = tupleJson(found->tuple);
                    out["mult1"] = found->mult1;
                    out["mult2"] = found->mult2;
                }
            } else {
                throw std::runtime_error("oracle needs --family or --random");
            }
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (cmdTransform->parsed()) {
            ccq::Query q = loadQuery(transformQueryPath);
            ccq::Query out = [&] {
                if (transformTo == "canonical") return ccq::canonical(q);
                if (transformTo == "regularized") return ccq::regularized(q);
                if (transformTo == "deregularized") return ccq::deregularized(q);
                if (transformTo == "copy-enhanced") return ccq::copyEnhanced(q);
                throw std::runtime_error("unknown transform: " + transformTo);
            }();
            std::cout << nlohmann::json{{"query", ccq::printQuery(out)}}.dump() << "\n";
            return 0;
        }

        std::cerr << app.help() << "\n";
        return 1;
    } catch (const ccq::BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 2;
    } catch (const ccq::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
