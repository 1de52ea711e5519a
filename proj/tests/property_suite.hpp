#pragma once
// Randomized invariant sweep shared by the unit tests and the acceptance
// binary. Returns one message per violated property; empty means clean.

#include <random>
#include <sstream>

#include "lensgrid/constructions.hpp"
#include "lensgrid/engine.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/invariants.hpp"
#include "oracles.hpp"

namespace props {

using namespace lensgrid;

inline long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// tau straight from the definition on the unreduced complex
inline std::vector<Rational> tauByDefinition(const GridDiagram& d) {
    auto full = buildComplex(d, Flavor::oBlocked);
    std::vector<Rational> tau;
    for (int s = 0; s < d.p; ++s) {
        std::set<Rational> levels;
        for (auto& b : full.basis)
            if (b.spinc == s) levels.insert(b.alexander);
        auto fh = filteredHomology(full, s);
        Rational top = fh.at(0).maslov;
        for (auto& e : fh) top = std::max(top, e.maslov);
        for (auto& a : levels) {
            auto im = inducedImage(filtrationSublevel(full, s, a), full, s);
            if (std::any_of(im.begin(), im.end(), [&](const ImageClass& c) { return c.maslov == top; })) {
                tau.push_back(a);
                break;
            }
        }
    }
    return tau;
}

struct Summary {
    int diagrams = 0, stabilized = 0;
    long rectangles = 0;
    std::vector<std::string> failures;
};

inline Summary runDiagrams(unsigned seed, int count) {
    std::mt19937 rng(seed);
    Summary out;
    auto fail = [&](const GridDiagram& d, const std::string& what) {
        std::ostringstream o;
        o << what << " on p=" << d.p << " q=" << d.q << " X=";
        for (int c : d.X) o << c << ' ';
        o << "O=";
        for (int c : d.O) o << c << ' ';
        out.failures.push_back(o.str());
    };
    while (out.diagrams < count) {
        int p = 1 + static_cast<int>(rng() % 5);
        int n = 1 + static_cast<int>(rng() % 3);
        int q = oracle::randomQ(rng, p);
        if (n == 1 && p == 1) continue;
        GridDiagram d = oracle::randomKnot(rng, p, q, n);
        ++out.diagrams;
        try {
            for (Flavor f : {Flavor::tilde, Flavor::oBlocked, Flavor::graded}) {
                auto c = buildComplex(d, f);
                if (!squaresToZero(c)) fail(d, std::string("d^2 != 0 in ") + flavorName(f));
                checkComplex(c);
            }
            auto classes = spincPartition(d);
            if (classes.size() != static_cast<std::size_t>(p)) fail(d, "class count");
            for (auto& c : classes)
                if (c.members.size() != classes[0].members.size()) fail(d, "unequal classes");

            auto r = analyzeDiagram(d, {});
            for (int s = 0; s < p; ++s) {
                auto ob = r.oBlocked.restrict(s);
                if (ob.rank() != (1L << (n - 1))) fail(d, "O-blocked rank");
                std::map<Rational, long> byM, want;
                for (auto& [k, v] : ob.entries) byM[std::get<1>(k)] += v;
                for (int k = 0; k < n; ++k) want[correctionTerm(p, q, s) - k] = binom(n - 1, k);
                if (byM != want) fail(d, "O-blocked Maslov pattern");
            }
            if (r.tilde != convolve(r.hfk, n - 1)) fail(d, "tilde vs hfk tensor factor");
            if (r.tau != tauByDefinition(d)) fail(d, "tau differs from the definition");

            auto g = anchorGradings(d);
            std::map<Generator, std::size_t> at;
            for (std::size_t k = 0; k < g.gens.size(); ++k) at[g.gens[k]] = k;
            for (std::size_t k = 0; k < g.gens.size(); k += (n == 3 ? 5 : 1))
                for (auto& rect : rectanglesFrom(d, g.gens[k])) {
                    ++out.rectangles;
                    std::size_t y = at.at(rect.to);
                    if (g.spinc[y] != g.spinc[k]) fail(d, "rectangle changes Spin^c");
                    if (g.maslov[k] - g.maslov[y] != Rational(1 - 2 * rect.oCount + 2 * rect.interiorHits))
                        fail(d, "Maslov difference");
                    if (g.alexander[k] - g.alexander[y] != Rational(rect.xCount - rect.oCount))
                        fail(d, "Alexander difference");
                }
            if (r.homClass == 0)
                for (auto& a : g.alexander)
                    if (a.den() != 1) { fail(d, "fractional Alexander degree"); break; }

            if (n <= 2 || out.diagrams % 3 == 0) {
                ++out.stabilized;
                GridDiagram st = stabilize(d);
                if (homologyClass(st) != r.homClass) fail(d, "stabilization changes the class");
                auto rs = analyzeDiagram(st, {});
                if (rs.tilde != convolve(r.tilde, 1)) fail(d, "stabilization tensor factor");
                if (rs.hfk != r.hfk) fail(d, "stabilization changes HFK");
                if (rs.tau != r.tau) fail(d, "stabilization changes tau");
            }
        } catch (const std::exception& e) {
            fail(d, std::string("exception: ") + e.what());
        }
    }
    return out;
}

inline std::vector<std::string> runLattice(unsigned seed, int pairs) {
    std::mt19937 rng(seed);
    std::vector<std::string> bad;
    auto vec = [&](std::size_t len) {
        std::vector<long> v(len);
        for (auto& x : v) x = static_cast<long>(rng() % 41) - 20;
        return v;
    };
    auto asRat = [](const std::vector<long>& v) { return std::vector<Rational>(v.begin(), v.end()); };
    for (int t = 0; t < pairs; ++t) {
        std::size_t len = 2 + rng() % 6;
        auto x = vec(len), y = vec(len), z = vec(len);
        long dxy = latticeDistance(x, y);
        if (dxy < 0) bad.push_back("negative");
        if (dxy != latticeDistance(y, x)) bad.push_back("asymmetric");
        if ((dxy == 0) != (tauShifted(asRat(x)) == tauShifted(asRat(y)))) bad.push_back("identity of indiscernibles");
        if (latticeDistance(x, x) != 0) bad.push_back("D(x,x) != 0");
        if (latticeDistance(x, z) > dxy + latticeDistance(y, z)) bad.push_back("triangle inequality");
        long c = static_cast<long>(rng() % 21) - 10;
        auto xs = x;
        for (auto& e : xs) e += c;
        if (latticeDistance(xs, y) != dxy) bad.push_back("shift invariance");
    }
    return bad;
}

}  // namespace props
