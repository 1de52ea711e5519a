#include "lensgrid/invariants.hpp"

#include <algorithm>
#include <cstdlib>

#include "lensgrid/constructions.hpp"

namespace lensgrid {

std::vector<Rational> simpleKnotReference(int p, int q, int k, const EngineOptions& opt) {
    std::vector<Rational> r(p, Rational(0));
    if (k % p == 0) return r;
    auto res = analyzeDiagram(simpleKnotDiagram(p, q, k), opt);
    for (auto& [key, rank] : res.hfk.entries) r[std::get<0>(key)] = std::get<2>(key);
    return r;
}

Rational shiftAmount(const std::vector<Rational>& tau) {
    if (tau.empty()) return Rational(0);
    for (auto& t : tau)
        if (!(t - tau[0]).isInteger()) throw ValidationError("tau entries do not differ by integers");
    auto mn = *std::min_element(tau.begin(), tau.end());
    return -mn;
}

std::vector<Rational> tauShifted(const std::vector<Rational>& tau) {
    auto sh = shiftAmount(tau);
    std::vector<Rational> out;
    for (auto& t : tau) out.push_back(t + sh);
    return out;
}

TauProfile profileFromTau(int p, int q, int homClass, std::vector<Rational> tau, std::vector<Rational> reference) {
    TauProfile t;
    t.p = p;
    t.q = q;
    t.homClass = homClass;
    t.tau = std::move(tau);
    t.reference = std::move(reference);
    std::vector<Rational> norm;
    for (std::size_t s = 0; s < t.tau.size(); ++s) norm.push_back(t.tau[s] - t.reference[s]);
    t.shift = shiftAmount(norm);
    for (auto& v : norm) t.tauShifted.push_back(v + t.shift);
    return t;
}

TauProfile tauProfile(const GridDiagram& d, const EngineOptions& opt) {
    auto res = analyzeDiagram(d, opt);
    return profileFromTau(d.p, d.q, res.homClass, res.tau, simpleKnotReference(d.p, d.q, res.homClass, opt));
}

Rational localityObstruction(const TauProfile& t) {
    // normalized entries: a simple knot in a nonzero class must read as local
    if (t.tauShifted.empty()) return Rational(0);
    auto [lo, hi] = std::minmax_element(t.tauShifted.begin(), t.tauShifted.end());
    return *hi - *lo;
}

long latticeDistance(const std::vector<long>& x, const std::vector<long>& y) {
    if (x.size() != y.size()) throw ValidationError("latticeDistance: length mismatch");
    long d = 0;
    for (std::size_t i = 1; i < x.size(); ++i) d = std::max(d, std::labs((x[i] - x[0]) - (y[i] - y[0])));
    return d;
}

long latticeDistance(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    if (x.size() != y.size()) throw ValidationError("latticeDistance: length mismatch");
    std::vector<long> a, b;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational dx = x[i] - x[0], dy = y[i] - y[0];
        if (!dx.isInteger() || !dy.isInteger()) throw ValidationError("latticeDistance: entries must differ by integers");
        a.push_back(dx.num());
        b.push_back(dy.num());
    }
    return latticeDistance(a, b);
}

static void requireComparable(const TauProfile& a, const TauProfile& b) {
    if (a.p != b.p || a.q != b.q) throw ValidationError("knots live in different lens spaces");
    if (a.homClass != b.homClass) throw ValidationError("knots represent different homology classes");
}

long plGenusLowerBound(const TauProfile& a, const TauProfile& b) {
    requireComparable(a, b);
    return latticeDistance(a.tauShifted, b.tauShifted);
}

const char* verdictName(Verdict v) { return v == Verdict::Distinguished ? "Distinguished" : "Inconclusive"; }

Verdict almostConcordanceReport(const TauProfile& a, const TauProfile& b) {
    requireComparable(a, b);
    return a.tauShifted != b.tauShifted ? Verdict::Distinguished : Verdict::Inconclusive;
}

const char* lPrimeName(LPrime c) { return c == LPrime::LPrime ? "LPrime" : "Unknown"; }

LPrime lPrimeCertificate(const HomologyTable& hfk) {
    std::map<int, long> ranks;
    for (auto& [k, r] : hfk.entries) ranks[std::get<0>(k)] += r;
    bool one = false, other = false;
    for (auto& [s, r] : ranks) (r == 1 ? one : other) = true;
    return one && other ? LPrime::LPrime : LPrime::Unknown;
}

}  // namespace lensgrid
