#pragma once
// Reports, result cache, manifests: the layer shared by the CLI and tests.

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lensgrid/algebra.hpp"
#include "lensgrid/grid.hpp"
#include "lensgrid/invariants.hpp"

namespace lensgrid {

inline constexpr const char* kFormatVersion = "lensgrid-report v1";
inline constexpr const char* kCacheVersion = "lensgrid-cache v1";

enum class Format { table, machine };

struct KnotReport {
    int p = 1, q = 0, n = 1;
    int homClass = 0;
    HomologyTable hfk, tilde, oBlocked;
    TauProfile profile;
    Rational locality;
    LPrime lprime = LPrime::Unknown;
    bool fromCache = false;
};

class ResultCache {
public:
    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}
    bool enabled() const { return !dir_.empty(); }
    std::optional<KnotReport> load(const GridDiagram& d) const;
    void store(const GridDiagram& d, const KnotReport& r);
    static std::string key(const GridDiagram& d);

private:
    std::string dir_;
    std::mutex mu_;
};

std::string serializeReport(const GridDiagram& d, const KnotReport& r);
KnotReport deserializeReport(const std::string& text, const GridDiagram* expect);

struct ComputeOptions {
    int threads = 1;
    ResultCache* cache = nullptr;
    EngineOptions engine;
};
KnotReport computeReport(const GridDiagram& d, const ComputeOptions& opt = {});

std::string formatReport(const KnotReport& r, Format f, std::optional<int> spinc = {});

struct PairReport {
    std::vector<Rational> shiftedA, shiftedB;
    Verdict verdict = Verdict::Inconclusive;
    long distance = 0, bound = 0;
};
// throws ValidationError for different lens spaces or homology classes
PairReport distinguish(const KnotReport& a, const KnotReport& b);
std::string formatPair(const PairReport& r, Format f);

// "family:<name>[:key=val,...]" or a knot file path
GridDiagram resolveSource(const std::string& src, const std::string& baseDir = "");

struct ManifestEntry {
    std::string name, source;
};
std::vector<ManifestEntry> parseManifest(const std::string& text);

struct MatrixResult {
    std::string text;
    int exitCode = 0;
    int cacheHits = 0;
};
MatrixResult runMatrix(const std::vector<ManifestEntry>& entries, const std::string& baseDir, Format f,
                       const ComputeOptions& opt);

std::string vecString(const std::vector<Rational>& v, const char* sep);

}  // namespace lensgrid
