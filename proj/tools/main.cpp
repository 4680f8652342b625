#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "deltamod/bounds.hpp"
#include "deltamod/constructions.hpp"
#include "deltamod/linalg.hpp"
#include "deltamod/modularity.hpp"
#include "deltamod/proximity.hpp"
#include "deltamod/search.hpp"
#include "deltamod/structure.hpp"

using namespace deltamod;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "deltamod/1";

void emit(const Json& doc, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(outPath);
        if (!out) throw std::runtime_error("cannot open output file: " + outPath);
        out << doc.dump(2) << "\n";
    }
}

Json matrixJson(const IntMatrix& m) { return Json::parse(formatMatrixJson(m)); }

Json ratJson(const Rat& r) { return r.get_str(); }

IntMatrix loadMatrix(const std::string& path) {
    if (path == "-") return parseMatrix(std::cin);
    return readMatrixFile(path);
}

std::string loadText(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int runDelta(const std::string& inPath, const std::string& outPath, const std::string& format) {
    IntMatrix a = loadMatrix(inPath);
    DeltaReport rep = delta(a);
    if (format == "text") {
        std::cout << rep.delta.get_str() << "\n";
        return 0;
    }
    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = "delta";
    doc["delta"] = rep.delta.get_str();
    doc["witnessBasis"] = rep.witnessBasis;
    doc["minorsEvaluated"] = rep.minorsEvaluated;
    emit(doc, outPath);
    return 0;
}

int runCheck(const std::string& inPath, long bound, const std::string& outPath) {
    IntMatrix a = loadMatrix(inPath);
    ModularityCheck mod = isDeltaModular(a, bound);
    DifferingCheck diff = hasDifferingColumns(a);
    bool rankOk = rank(a) == a.rows();

    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = "check";
    doc["bound"] = bound;
    doc["deltaModular"] = mod.modular;
    if (mod.violation) doc["violatingColumns"] = *mod.violation;
    doc["differingColumns"] = diff.differing;
    if (diff.violation) doc["violatingPair"] = {diff.violation->first, diff.violation->second};
    doc["fullRowRank"] = rankOk;
    bool pass = mod.modular && diff.differing && rankOk;
    doc["pass"] = pass;
    emit(doc, outPath);
    return pass ? 0 : 1;
}

int runConstruct(const std::string& familyName, long deltaArg, int mArg,
                 const std::string& outPath, bool json) {
    IntMatrix a = constructFamily(familyFromName(familyName), deltaArg, mArg);
    if (outPath.empty())
        std::cout << (json ? formatMatrixJson(a) + "\n" : formatMatrixText(a));
    else
        writeMatrixFile(outPath, a, json);
    return 0;
}

Json boundsRowJson(const BoundsRow& r) {
    Json row;
    row["delta"] = r.delta;
    row["m"] = r.m;
    row["lower"] = r.lower.get_str();
    row["thmUpper"] = r.thmUpper.get_str();
    row["glanzer"] = r.glanzer.get_str();
    row["glanzerExact"] = r.glanzerExact;
    row["recursive"] = r.recursive.get_str();
    row["naive3m"] = r.naive3m.get_str();
    row["proximityUpper"] = r.proximityUpper.get_str();
    return row;
}

int runBounds(long deltaArg, long mArg, bool table, long maxDelta, long maxM,
              const std::string& format, const std::string& outPath) {
    if (!table) {
        Json doc;
        doc["schema"] = kSchema;
        doc["command"] = "bounds";
        doc["row"] = boundsRowJson(boundsRow(deltaArg, mArg));
        emit(doc, outPath);
        return 0;
    }
    std::vector<BoundsRow> rows = boundsTable(maxDelta, maxM);
    if (format == "csv") {
        std::ostringstream out;
        out << "delta,m,lower,thmUpper,glanzer,glanzerExact,recursive,naive3m,proximityUpper\n";
        for (const BoundsRow& r : rows)
            out << r.delta << ',' << r.m << ',' << r.lower.get_str() << ','
                << r.thmUpper.get_str() << ',' << r.glanzer.get_str() << ','
                << (r.glanzerExact ? 1 : 0) << ',' << r.recursive.get_str() << ','
                << r.naive3m.get_str() << ',' << r.proximityUpper.get_str() << '\n';
        if (outPath.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(outPath);
            if (!f) throw std::runtime_error("cannot open output file: " + outPath);
            f << out.str();
        }
        return 0;
    }
    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = "bounds";
    Json arr = Json::array();
    for (const BoundsRow& r : rows) arr.push_back(boundsRowJson(r));
    doc["table"] = std::move(arr);
    emit(doc, outPath);
    return 0;
}

Json predicateJson(const PredicateReport& rep) {
    Json arr = Json::array();
    for (const PredicateCheck& c : rep.checks) {
        Json entry;
        entry["id"] = c.id;
        entry["applicable"] = c.applicable;
        entry["presupposesMaximality"] = c.presupposesMaximality;
        entry["pass"] = c.pass;
        entry["detail"] = c.detail;
        arr.push_back(std::move(entry));
    }
    return arr;
}

int runStructure(const std::string& action, const std::string& inPath, int pivot, int maxSize,
                 const std::string& outPath) {
    IntMatrix a = loadMatrix(inPath);
    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = "structure:" + action;

    if (action == "contract") {
        ContractionReport rep = contract(a, pivot);
        doc["pivotIndex"] = rep.pivotIndex;
        doc["transform"] = matrixJson(rep.transform);
        doc["contracted"] = matrixJson(rep.contractedMatrix());
        Json originals = Json::array();
        for (const auto& group : rep.originals) originals.push_back(group);
        doc["originals"] = std::move(originals);
        doc["zeroOriginals"] = rep.zeroOriginals;
        doc["multipleOriginalIndices"] = rep.multiIndices;
        doc["mSize"] = rep.mSize();
        emit(doc, outPath);
        return 0;
    }
    if (action == "circuits") {
        ColumnMultiset ms = normalize(a);
        Json arr = Json::array();
        for (const Circuit& c : enumerateCircuits(ms, maxSize)) {
            Json entry;
            entry["columns"] = c.columnIndices;
            Json dep = Json::array();
            for (const Int& v : c.dependence) dep.push_back(v.get_str());
            entry["dependence"] = std::move(dep);
            arr.push_back(std::move(entry));
        }
        doc["normalizedColumns"] = matrixJson(ms.asMatrix());
        doc["circuits"] = std::move(arr);
        emit(doc, outPath);
        return 0;
    }
    if (action == "bstar") {
        auto b = findBStar(a);
        doc["found"] = b.has_value();
        if (b) {
            doc["size"] = b->columnIndices.size();
            doc["columns"] = matrixJson(b->columns);
            Json half = Json::array();
            for (const Int& v : b->halfSum) half.push_back(v.get_str());
            doc["halfSum"] = std::move(half);
        }
        emit(doc, outPath);
        return 0;
    }
    if (action == "check") {
        PredicateReport rep = checkStructuralLemmas(a);
        doc["checks"] = predicateJson(rep);
        doc["pass"] = rep.allPass();
        emit(doc, outPath);
        return rep.allPass() ? 0 : 1;
    }
    throw std::invalid_argument("structure: unknown action " + action);
}

int runSearch(long deltaArg, int mArg, long long budgetNodes, double budgetSecs, int threads,
              bool noSeed, const std::string& outPath) {
    SearchLimits limits;
    limits.maxNodes = budgetNodes;
    limits.maxSeconds = budgetSecs;
    limits.threads = threads;
    limits.seedWitness = !noSeed;
    SearchResult r = maxDifferingColumns(deltaArg, mArg, limits);

    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = "search";
    doc["delta"] = r.delta;
    doc["m"] = r.m;
    doc["value"] = r.value;
    doc["exhaustive"] = r.exhaustive;
    doc["witness"] = matrixJson(r.witness);
    Json timing;
    timing["nodesExplored"] = r.nodesExplored;
    timing["wallSeconds"] = r.wallSeconds;
    doc["timing"] = std::move(timing);
    emit(doc, outPath);
    return 0;
}

Json proximityJson(const ProximityReport& rep) {
    Json doc;
    doc["ipEmpty"] = rep.ipEmpty;
    doc["pi"] = ratJson(rep.pi);
    doc["delta"] = rep.deltaValue.get_str();
    Json verts = Json::array();
    for (const auto& v : rep.vertices) {
        Json point = Json::array();
        for (const Rat& x : v) point.push_back(ratJson(x));
        verts.push_back(std::move(point));
    }
    doc["vertices"] = std::move(verts);
    Json nearest = Json::array();
    for (const auto& np : rep.perVertexNearest) {
        Json entry;
        Json z = Json::array();
        for (const Int& x : np.z) z.push_back(x.get_str());
        entry["z"] = std::move(z);
        entry["distance"] = ratJson(np.distance);
        nearest.push_back(std::move(entry));
    }
    doc["perVertexNearest"] = std::move(nearest);
    doc["columnBound"] = rep.columnBound.get_str();
    doc["cookBound"] = rep.cookBound.get_str();
    doc["columnBoundSatisfied"] = rep.columnBoundSatisfied;
    doc["cookBoundSatisfied"] = rep.cookBoundSatisfied;
    return doc;
}

int runProximity(const std::string& inPath, long window, bool hasWindow, long suite,
                 unsigned long long seed, const std::string& outPath) {
    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = "proximity";
    std::optional<Int> windowRadius;
    if (hasWindow) windowRadius = Int(window);

    if (suite > 0) {
        doc["suite"] = suite;
        doc["seed"] = seed;
        Json arr = Json::array();
        bool allOk = true;
        for (long i = 0; i < suite; ++i) {
            IPInstance inst = randomFeasibleInstance(seed + static_cast<unsigned long long>(i));
            ProximityReport rep = proximity(inst, windowRadius);
            bool ok = !rep.ipEmpty && rep.columnBoundSatisfied && rep.cookBoundSatisfied &&
                      (rep.deltaValue != 1 || rep.pi == Rat(0));
            allOk = allOk && ok;
            Json entry;
            entry["instance"] = Json::parse(formatInstanceJson(inst));
            entry["pi"] = ratJson(rep.pi);
            entry["delta"] = rep.deltaValue.get_str();
            entry["ok"] = ok;
            arr.push_back(std::move(entry));
        }
        doc["instances"] = std::move(arr);
        doc["pass"] = allOk;
        emit(doc, outPath);
        return allOk ? 0 : 1;
    }

    IPInstance inst = parseInstanceJson(loadText(inPath));
    ProximityReport rep = proximity(inst, windowRadius);
    doc["report"] = proximityJson(rep);
    emit(doc, outPath);
    return 0;
}

int runVerifyCatalog() {
    bool allPass = true;
    std::printf("%-26s %5s  %5s  %10s  %6s  %6s  %s\n", "matrix", "cols", "rank", "differing",
                "delta", "count", "result");
    for (const CatalogEntry& entry : extremalCatalog()) {
        VerificationReport rep =
            verifyConstruction(entry.matrix, entry.expectedDelta, entry.expectedCount);
        auto checkOf = [&rep](const std::string& name) {
            for (const auto& c : rep.checks)
                if (c.name == name) return c.pass;
            return false;
        };
        bool pass = rep.allPass();
        allPass = allPass && pass;
        std::printf("%-26s %5d  %5s  %10s  %6s  %6s  %s%s\n", entry.name.c_str(),
                    entry.matrix.cols(), checkOf("rank") ? "ok" : "FAIL",
                    checkOf("differing-columns") ? "ok" : "FAIL",
                    checkOf("delta-equals") ? "ok" : "FAIL",
                    checkOf("column-count") ? "ok" : "FAIL", pass ? "PASS" : "FAIL",
                    entry.claimedMaximal ? "" : "  (best known)");
    }
    std::printf("%s\n", allPass ? "all catalog checks passed" : "catalog checks FAILED");
    return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for integer matrices with bounded minors"};
    app.require_subcommand(1);

    std::string inPath, outPath, format = "json", familyName, structureAction;
    long deltaArg = 1, mArg = 1, window = 0, suite = 0, maxDelta = 10, maxM = 10;
    long long budgetNodes = -1;
    double budgetSecs = -1;
    int threads = 1, pivot = 0, maxSize = 6;
    unsigned long long seed = 42;
    bool table = false, jsonOut = false, noSeed = false;

    CLI::App* cmdDelta = app.add_subcommand("delta", "largest absolute m x m minor");
    cmdDelta->add_option("--in", inPath, "matrix file (text or JSON), - for stdin")->required();
    cmdDelta->add_option("--format", format, "text | json");
    cmdDelta->add_option("--out", outPath, "output file");

    CLI::App* cmdCheck = app.add_subcommand("check", "delta-modularity and differing-column check");
    cmdCheck->add_option("--in", inPath)->required();
    cmdCheck->add_option("--delta", deltaArg, "bound to check against")->required();
    cmdCheck->add_option("--out", outPath);

    CLI::App* cmdConstruct = app.add_subcommand("construct", "emit a catalog or family matrix");
    cmdConstruct->add_option("--family", familyName)->required();
    cmdConstruct->add_option("--delta", deltaArg);
    cmdConstruct->add_option("--m", mArg);
    cmdConstruct->add_option("--out", outPath);
    cmdConstruct->add_flag("--json", jsonOut, "emit the JSON matrix format");

    CLI::App* cmdBounds = app.add_subcommand("bounds", "evaluate the bound formulas");
    cmdBounds->add_option("--delta", deltaArg);
    cmdBounds->add_option("--m", mArg);
    cmdBounds->add_flag("--table", table, "emit a sweep table");
    cmdBounds->add_option("--max-delta", maxDelta);
    cmdBounds->add_option("--max-m", maxM);
    cmdBounds->add_option("--format", format, "json | csv");
    cmdBounds->add_option("--out", outPath);

    CLI::App* cmdStructure = app.add_subcommand("structure", "bimodular structure analysis");
    cmdStructure->add_option("action", structureAction, "contract | circuits | bstar | check")
        ->required();
    cmdStructure->add_option("--in", inPath)->required();
    cmdStructure->add_option("--pivot", pivot, "pivot column for contract");
    cmdStructure->add_option("--max-size", maxSize, "circuit size cap");
    cmdStructure->add_option("--out", outPath);

    CLI::App* cmdSearch = app.add_subcommand("search", "exhaustive differing-column maximum");
    cmdSearch->add_option("--delta", deltaArg)->required();
    cmdSearch->add_option("--m", mArg)->required();
    cmdSearch->add_option("--budget-nodes", budgetNodes);
    cmdSearch->add_option("--budget-secs", budgetSecs);
    cmdSearch->add_option("--threads", threads);
    cmdSearch->add_flag("--no-seed", noSeed, "do not seed with the lower-bound construction");
    cmdSearch->add_option("--out", outPath);

    CLI::App* cmdProx = app.add_subcommand("proximity", "exact LP to IP proximity");
    CLI::Option* proxIn = cmdProx->add_option("--in", inPath, "instance JSON");
    CLI::Option* proxWindow = cmdProx->add_option("--window", window, "window radius");
    cmdProx->add_option("--suite", suite, "run a seeded random property suite of this size");
    cmdProx->add_option("--seed", seed, "suite seed");
    cmdProx->add_option("--out", outPath);

    CLI::App* cmdCatalog = app.add_subcommand("verify-catalog", "check every catalog matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmdDelta->parsed()) return runDelta(inPath, outPath, format);
        if (cmdCheck->parsed()) return runCheck(inPath, deltaArg, outPath);
        if (cmdConstruct->parsed())
            return runConstruct(familyName, deltaArg, static_cast<int>(mArg), outPath, jsonOut);
        if (cmdBounds->parsed())
            return runBounds(deltaArg, mArg, table, maxDelta, maxM, format, outPath);
        if (cmdStructure->parsed())
            return runStructure(structureAction, inPath, pivot, maxSize, outPath);
        if (cmdSearch->parsed())
            return runSearch(deltaArg, static_cast<int>(mArg), budgetNodes, budgetSecs, threads,
                             noSeed, outPath);
        if (cmdProx->parsed()) {
            if (suite == 0 && proxIn->count() == 0)
                throw std::invalid_argument("proximity needs --in or --suite");
            return runProximity(inPath, window, proxWindow->count() > 0, suite, seed, outPath);
        }
        if (cmdCatalog->parsed()) return runVerifyCatalog();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
