#include "deltamod/constructions.hpp"

#include <sstream>
#include <stdexcept>

#include "deltamod/linalg.hpp"
#include "deltamod/modularity.hpp"

namespace deltamod {

namespace {

IntVec unit(int m, int i) {
    IntVec v(m, Int(0));
    v[i] = 1;
    return v;
}

IntVec combine(int m, std::initializer_list<std::pair<int, long>> terms) {
    IntVec v(m, Int(0));
    for (auto [i, c] : terms) v[i] += c;
    return v;
}

// e^i - e^j columns of the directed complete graph, i < j lexicographic,
// optionally skipping the edge (0, 1).
void appendIncidence(std::vector<IntVec>& cols, int m, bool skipFirstEdge) {
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (skipFirstEdge && i == 0 && j == 1) continue;
            cols.push_back(combine(m, {{i, 1}, {j, -1}}));
        }
}

void appendIdentity(std::vector<IntVec>& cols, int m, int firstIndex = 0) {
    for (int i = firstIndex; i < m; ++i) cols.push_back(unit(m, i));
}

}  // namespace

IntMatrix lowerBoundMatrix(long delta, int m) {
    if (delta < 1 || m < 1) throw std::invalid_argument("lowerBoundMatrix: delta, m >= 1 required");
    std::vector<IntVec> cols;
    for (int i = 0; i < m; ++i) cols.push_back(unit(m, i));
    for (long k = 2; k <= delta; ++k) cols.push_back(combine(m, {{0, k}}));
    for (long k = 1; k <= delta; ++k)
        for (int i = 1; i < m; ++i) cols.push_back(combine(m, {{0, k}, {i, -1}}));
    for (int i = 1; i < m; ++i)
        for (int j = i + 1; j < m; ++j) cols.push_back(combine(m, {{i, 1}, {j, -1}}));
    return IntMatrix::fromColumns(m, cols);
}

IntMatrix tightBimodularExample(int m, TightVariant variant) {
    switch (variant) {
        case TightVariant::Claim1: {
            if (m != 3) throw std::invalid_argument("claim1 example requires m = 3");
            return IntMatrix::fromRows({
                {1, 1, 0, 1, 0, 1, 1, 2, 1},
                {0, 2, 1, 1, 0, 0, 2, 2, 1},
                {0, 0, 0, 0, 1, 1, 1, 1, 1},
            });
        }
        case TightVariant::Primitive: {
            if (m != 5) throw std::invalid_argument("primitive example requires m = 5");
            return IntMatrix::fromRows({
                {1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1},
                {0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1},
                {0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, -1, 0, 0, 1},
                {0, 0, 0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, -1, -1, 1, 1},
                {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1},
            });
        }
        case TightVariant::BSpan: {
            if (m != 4) throw std::invalid_argument("bspan example requires m = 4");
            std::vector<IntVec> cols;
            cols.push_back(unit(4, 0));
            cols.push_back(unit(4, 1));
            cols.push_back(unit(4, 2));
            cols.push_back(combine(4, {{0, 1}, {1, 1}, {2, 1}, {3, 2}}));
            for (int bits = 0; bits < 8; ++bits) {
                IntVec v = unit(4, 3);
                for (int i = 0; i < 3; ++i)
                    if (bits & (1 << i)) v[i] = 1;
                cols.push_back(std::move(v));
            }
            return IntMatrix::fromColumns(4, cols);
        }
        case TightVariant::Example: {
            if (m != 6) throw std::invalid_argument("m6 example requires m = 6");
            std::vector<IntVec> cols;
            appendIncidence(cols, 6, false);
            appendIdentity(cols, 6, 2);  // identity except e^1, e^2
            for (int i = 2; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j)
                    cols.push_back(combine(6, {{0, -1}, {i, 1}, {j, 1}}));
            return IntMatrix::fromColumns(6, cols);
        }
        case TightVariant::General: {
            if (m < 7) throw std::invalid_argument("general example requires m >= 7");
            std::vector<IntVec> cols;
            appendIncidence(cols, m, true);  // without e^1 - e^2
            appendIdentity(cols, m);
            for (int i = 2; i < m; ++i) cols.push_back(combine(m, {{0, 1}, {1, 1}, {i, -1}}));
            return IntMatrix::fromColumns(m, cols);
        }
    }
    throw std::invalid_argument("unknown tight example variant");
}

IntMatrix constructFamily(Family family, long delta, int m) {
    switch (family) {
        case Family::LowerBound:
            return lowerBoundMatrix(delta, m);
        case Family::Heller:
            return lowerBoundMatrix(1, m);
        case Family::BimodularTight:
            return lowerBoundMatrix(2, m);
        case Family::PrimitiveTight: {
            if (m == 3) return tightBimodularExample(3, TightVariant::Claim1);
            if (m == 5) return tightBimodularExample(5, TightVariant::Primitive);
            if (m < 2) throw std::invalid_argument("primitiveTight requires m >= 2");
            std::vector<IntVec> cols;
            appendIncidence(cols, m, false);
            appendIdentity(cols, m);
            for (int i = 1; i < m; ++i) cols.push_back(combine(m, {{0, 1}, {i, 1}}));
            return IntMatrix::fromColumns(m, cols);
        }
        case Family::Claim1:
            return tightBimodularExample(3, TightVariant::Claim1);
        case Family::M5Primitive:
            return tightBimodularExample(5, TightVariant::Primitive);
        case Family::M6Example:
            return tightBimodularExample(6, TightVariant::Example);
        case Family::GeneralPrimitive:
            return tightBimodularExample(m, TightVariant::General);
    }
    throw std::invalid_argument("unknown family");
}

Family familyFromName(const std::string& name) {
    if (name == "lowerBound") return Family::LowerBound;
    if (name == "heller") return Family::Heller;
    if (name == "bimodularTight") return Family::BimodularTight;
    if (name == "primitiveTight") return Family::PrimitiveTight;
    if (name == "claim1") return Family::Claim1;
    if (name == "m5Primitive") return Family::M5Primitive;
    if (name == "m6Example") return Family::M6Example;
    if (name == "generalPrimitive") return Family::GeneralPrimitive;
    throw std::invalid_argument("unknown family name: " + name);
}

std::vector<std::string> familyNames() {
    return {"lowerBound",  "heller",      "bimodularTight", "primitiveTight",
            "claim1",      "m5Primitive", "m6Example",      "generalPrimitive"};
}

std::vector<CatalogEntry> extremalCatalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"lower-bound(delta=3,m=4)", lowerBoundMatrix(3, 4), 3, 18, true, false});
    out.push_back({"claim1(m=3)", tightBimodularExample(3, TightVariant::Claim1), 2, 9, true, true});
    out.push_back({"bspan(m=4)", tightBimodularExample(4, TightVariant::BSpan), 2, 12, true, true});
    out.push_back(
        {"primitive(m=5)", tightBimodularExample(5, TightVariant::Primitive), 2, 20, true, true});
    out.push_back(
        {"example(m=6)", tightBimodularExample(6, TightVariant::Example), 2, 25, false, true});
    out.push_back(
        {"general(m=7)", tightBimodularExample(7, TightVariant::General), 2, 32, false, true});
    return out;
}

bool VerificationReport::allPass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

VerificationReport verifyConstruction(const IntMatrix& a, const Int& expectedDelta,
                                      long long expectedCount) {
    VerificationReport r;
    auto add = [&r](const std::string& name, bool pass, const std::string& detail) {
        r.checks.push_back({name, pass, detail});
    };

    const int m = a.rows();
    int rk = rank(a);
    add("rank", rk == m, "rank " + std::to_string(rk) + " of " + std::to_string(m));

    DifferingCheck diff = hasDifferingColumns(a);
    std::string detail = "ok";
    if (!diff.differing) {
        std::ostringstream os;
        os << "columns " << diff.violation->first << " and " << diff.violation->second;
        detail = os.str();
    }
    add("differing-columns", diff.differing, detail);

    if (a.cols() >= a.rows()) {
        DeltaReport d = delta(a);
        add("delta-at-most", d.delta <= expectedDelta,
            "delta = " + d.delta.get_str() + ", expected <= " + expectedDelta.get_str());
        add("delta-equals", d.delta == expectedDelta,
            "delta = " + d.delta.get_str() + ", expected " + expectedDelta.get_str());
    } else {
        add("delta-at-most", false, "n < m");
        add("delta-equals", false, "n < m");
    }

    add("column-count", a.cols() == expectedCount,
        std::to_string(a.cols()) + " of " + std::to_string(expectedCount));
    return r;
}

}  // namespace deltamod
