#include <doctest.h>

#include <deque>
#include <random>

#include "lensgrid/constructions.hpp"
#include "lensgrid/invariants.hpp"
#include "oracles.hpp"

using namespace lensgrid;
using oracle::R;

namespace {

std::vector<Rational> rv(std::initializer_list<long> l) {
    std::vector<Rational> v;
    for (long x : l) v.push_back(Rational(x));
    return v;
}

// shortest path between difference vectors on Z^k with all 3^k - 1 unit
// steps, searched breadth-first inside a box
long kingBfs(std::vector<long> a, std::vector<long> b) {
    const std::size_t k = a.size() - 1;
    std::vector<long> from(k), to(k);
    for (std::size_t i = 0; i < k; ++i) {
        from[i] = a[i + 1] - a[0];
        to[i] = b[i + 1] - b[0];
    }
    const long lo = -12, span = 25;
    auto enc = [&](const std::vector<long>& v) {
        long c = 0;
        for (long x : v) c = c * span + (x - lo);
        return c;
    };
    std::map<long, long> dist{{enc(from), 0}};
    std::deque<std::vector<long>> q{from};
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        long dv = dist[enc(v)];
        if (v == to) return dv;
        std::vector<int> step(k, -1);
        for (;;) {
            auto w = v;
            bool moved = false, inside = true;
            for (std::size_t i = 0; i < k; ++i) {
                w[i] += step[i];
                moved |= step[i] != 0;
                inside &= w[i] >= lo && w[i] < lo + span;
            }
            if (moved && inside && !dist.count(enc(w))) {
                dist[enc(w)] = dv + 1;
                q.push_back(w);
            }
            std::size_t i = 0;
            while (i < k && step[i] == 1) step[i++] = -1;
            if (i == k) break;
            ++step[i];
        }
    }
    return -1;
}

HomologyTable tensor(const HomologyTable& a, const HomologyTable& b) {
    HomologyTable t;
    for (auto& [ka, ra] : a.entries)
        for (auto& [kb, rb] : b.entries)
            t.add(std::get<0>(ka), std::get<1>(ka) + std::get<1>(kb), std::get<2>(ka) + std::get<2>(kb), ra * rb);
    return t;
}

}  // namespace

TEST_CASE("tau of the worked knot") {
    auto t = tauProfile(kpDiagram(3));
    CHECK(t.tau == rv({-1, 0, 0}));
    CHECK(t.tauShifted == rv({0, 1, 1}));
    CHECK(t.shift == 1);
    CHECK(t.homClass == 0);
    CHECK(localityObstruction(t) == 1);
}

TEST_CASE("shifted tau") {
    CHECK(tauShifted(rv({-1, 0, 0})) == rv({0, 1, 1}));
    CHECK(tauShifted(rv({0, 0, 0, 0})) == rv({0, 0, 0, 0}));
    CHECK(tauShifted(rv({1, 0, 0})) == rv({1, 0, 0}));
    CHECK(tauShifted({R("1/3"), R("4/3")}) == rv({0, 1}));
    CHECK_THROWS_AS(tauShifted({Rational(0), R("1/2")}), ValidationError);
}

TEST_CASE("locality obstruction") {
    CHECK(localityObstruction(tauProfile(unknotDiagram(5, 2))) == 0);
    CHECK(localityObstruction(tauProfile(mirror(kpDiagram(3)))) == 1);
    for (int k = 1; k < 5; ++k) {
        auto t = tauProfile(simpleKnotDiagram(5, 2, k));
        CHECK(localityObstruction(t) == 0);
        CHECK(t.homClass == k);
    }
}

TEST_CASE("lattice distance") {
    CHECK(latticeDistance(std::vector<long>{3, 1, 4}, std::vector<long>{3, 1, 4}) == 0);
    CHECK(latticeDistance(std::vector<long>{-1, 0, 0}, std::vector<long>{0, 0, 0}) == 1);
    CHECK(latticeDistance(std::vector<long>{0, 5, 0}, std::vector<long>{0, 0, 0}) == 5);
    CHECK(kingBfs({0, 5, 0}, {0, 0, 0}) == 5);
    CHECK_THROWS_AS(latticeDistance(std::vector<long>{0, 1}, std::vector<long>{0, 1, 2}), ValidationError);
    CHECK_THROWS_AS(latticeDistance(std::vector<Rational>{0, R("1/2")}, rv({0, 0})), ValidationError);
    CHECK(latticeDistance(std::vector<Rational>{R("1/3"), R("4/3")}, std::vector<Rational>{R("2/3"), R("2/3")}) == 1);
    std::mt19937 rng(11);
    for (int t = 0; t < 60; ++t) {
        std::size_t len = 2 + rng() % 3;
        std::vector<long> a(len), b(len);
        for (auto& x : a) x = static_cast<long>(rng() % 7) - 3;
        for (auto& x : b) x = static_cast<long>(rng() % 7) - 3;
        CHECK(latticeDistance(a, b) == kingBfs(a, b));
    }
}

TEST_CASE("PL genus bound and verdicts") {
    auto k = tauProfile(kpDiagram(3));
    auto u = tauProfile(unknotDiagram(3, 1));
    auto ku = tauProfile(connectedSum(kpDiagram(3), unknotDiagram(1, 0)));
    CHECK(plGenusLowerBound(k, u) == 1);
    CHECK(plGenusLowerBound(k, k) == 0);
    CHECK(plGenusLowerBound(ku, k) == 0);
    CHECK(almostConcordanceReport(k, u) == Verdict::Distinguished);
    CHECK(almostConcordanceReport(k, ku) == Verdict::Inconclusive);
    CHECK(almostConcordanceReport(u, u) == Verdict::Inconclusive);
    CHECK_THROWS_AS(plGenusLowerBound(k, tauProfile(kpDiagram(4))), ValidationError);
    CHECK_THROWS_AS(almostConcordanceReport(u, tauProfile(simpleKnotDiagram(3, 1, 1))), ValidationError);
    CHECK(std::string(verdictName(Verdict::Inconclusive)) == "Inconclusive");
}

TEST_CASE("l-prime certificate") {
    CHECK(lPrimeCertificate(analyzeDiagram(kpDiagram(3), {}).hfk) == LPrime::LPrime);
    CHECK(lPrimeCertificate(analyzeDiagram(unknotDiagram(3, 1), {}).hfk) == LPrime::Unknown);
    HomologyTable threes;
    for (int s = 0; s < 3; ++s) threes.add(s, 0, 0, 3);
    CHECK(lPrimeCertificate(threes) == LPrime::Unknown);
}

TEST_CASE("non-nullhomologous knots are normalized by the simple knot") {
    auto t = tauProfile(simpleKnotDiagram(5, 2, 2));
    CHECK(t.reference == t.tau);
    CHECK(t.tauShifted == rv({0, 0, 0, 0, 0}));
    auto s = tauProfile(stabilize(simpleKnotDiagram(5, 2, 2)));
    CHECK(s.tau == t.tau);
    CHECK(s.tauShifted == t.tauShifted);
}

// simple knot in a nonzero class, summed with the trefoil
TEST_CASE("additivity and Kunneth against the trefoil") {
    GridDiagram g = simpleKnotDiagram(3, 1, 1);
    GridDiagram sum = connectedSum(g, trefoilDiagram());
    REQUIRE(sum.n == 6);
    auto a = analyzeDiagram(g, {});
    auto h = analyzeDiagram(trefoilDiagram(), {});
    auto r = analyzeDiagram(sum, {});
    CHECK(r.homClass == 1);
    for (int s = 0; s < 3; ++s) CHECK(r.tau[s] == a.tau[s] + h.tau[0]);
    CHECK(r.hfk == tensor(a.hfk, h.hfk));
    auto ts = tauProfile(sum);
    CHECK(ts.tauShifted == tauProfile(g).tauShifted);
}
