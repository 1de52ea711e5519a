#include "lensgrid/gradings.hpp"

#include <deque>
#include <numeric>

#include "lensgrid/engine.hpp"

namespace lensgrid {

Rational correctionTermRec(int p, int q, int i) {
    if (p == 1) return Rational(0);
    long long t = 2LL * i + 1 - p - q;
    return Rational(t * t - 1LL * p * q, 4LL * p * q) - correctionTermRec(q, p % q, i % q);
}

int correctionIndex(int p, int q, int s) {
    if (p == 1) return 0;
    // labels for q > p/2 are the mirror images of those for p - q
    return 2 * q <= p ? s : ((-s - 1) % p + p) % p;
}

Rational correctionTerm(int p, int q, int s) {
    bool ok = p >= 1 && s >= 0 && s < p && (p == 1 ? q == 0 : (q >= 1 && q < p && std::gcd(p, q) == 1));
    if (!ok) throw ValidationError("correctionTerm: invalid (p,q,s)");
    return -correctionTermRec(p, q, correctionIndex(p, q, s));
}

LiftGradings::LiftGradings(const GridDiagram& d) : p_(d.p), n_(d.n), N_(d.width()), shift_(d.shift()) {
    const int N = N_, n = n_;
    if (N > 512) throw ValidationError("lift too large (p*n must be at most 512)");
    LX_.resize(N);
    LO_.resize(N);
    for (int v = 0; v < N; ++v) {
        long long sh = static_cast<long long>(v / n) * shift_;
        LX_[v] = static_cast<int>((d.X[v % n] + sh) % N);
        LO_[v] = static_cast<int>((d.O[v % n] + sh) % N);
    }
    std::vector<int> rowX(N, -1), rowO(N, -1);
    for (int v = 0; v < N; ++v) { rowX[LX_[v]] = v; rowO[LO_[v]] = v; }
    for (int c = 0; c < N; ++c)
        if (rowX[c] < 0 || rowO[c] < 0) throw InternalError("lifted grid is not a permutation grid");
    // winding number of the lifted knot around lattice point (u, v)
    wind_.assign((N + 1) * (N + 1), 0);
    for (int u = 1; u <= N; ++u) {
        int c = u - 1, ro = rowO[c], rx = rowX[c];
        int lo = std::min(ro, rx), hi = std::max(ro, rx), sg = rx > ro ? 1 : -1;
        for (int v = 0; v <= N; ++v) wind_[u * (N + 1) + v] = wind_[(u - 1) * (N + 1) + v] + ((lo < v && v <= hi) ? sg : 0);
    }
    for (int v = 0; v < N; ++v)
        for (int c : {LX_[v], LO_[v]}) cornerSum_ += w(c, v) + w(c + 1, v) + w(c, v + 1) + w(c + 1, v + 1);
    // 2 J(O,O) with O at cell centres
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (LO_[a] < LO_[b] && a < b) oo2_ += 2;
}

std::int64_t LiftGradings::alexander8p(const int* x) const {
    std::int64_t s = 0;
    for (int v = 0; v < N_; ++v) {
        int u = static_cast<int>((x[v % n_] + static_cast<long long>(v / n_) * shift_) % N_);
        s += w(u, v);
    }
    return -8 * s + cornerSum_ - 4LL * p_ * (n_ - 1);
}

Rational LiftGradings::alexander(const int* x) const { return Rational(alexander8p(x), 8LL * p_); }

std::int64_t LiftGradings::maslovCover2(const int* x) const {
    const int N = N_;
    int U[512];
    for (int v = 0; v < N; ++v) U[v] = static_cast<int>((x[v % n_] + static_cast<long long>(v / n_) * shift_) % N);
    std::int64_t pp = 0, po = 0;
    for (int a = 0; a < N; ++a) {
        for (int b = a + 1; b < N; ++b) pp += U[a] < U[b];
        // pairs (point a, O at row b): point below-left of O, or O below-left of point
        for (int b = 0; b < N; ++b) {
            if (U[a] <= LO_[b] && a <= b) ++po;
            else if (LO_[b] < U[a] && b < a) ++po;
        }
    }
    // 2 * (J(P,P) - 2 J(P,O) + J(O,O) + 1)
    return 2 * pp - 2 * po + oo2_ + 2;
}

RelativeGradings integrateRelative(const GridDiagram& d) {
    RelativeGradings R;
    R.gens = enumerateGenerators(d);
    GeneratorIndex gi(d);
    RectangleWalker walk(d);
    const std::size_t N = R.gens.size();
    R.component.assign(N, -1);
    R.maslov.assign(N, Rational(0));
    R.alexander.assign(N, Rational(0));
    std::vector<int> y(d.n);
    int comp = 0;
    for (std::size_t root = 0; root < N; ++root) {
        if (R.component[root] >= 0) continue;
        R.component[root] = comp;
        std::deque<std::size_t> dq{root};
        while (!dq.empty()) {
            auto z = dq.front();
            dq.pop_front();
            const auto& zc = R.gens[z].cols;
            walk.visit(zc.data(), false, [&](const RectMove& mv) {
                std::copy(zc.begin(), zc.end(), y.begin());
                y[mv.i] = mv.ci;
                y[mv.j] = mv.cj;
                auto t = gi.rank(y.data());
                Rational m = R.maslov[z] - Rational(1 - 2 * mv.oCount + 2 * mv.hits);
                Rational a = R.alexander[z] - Rational(mv.xCount - mv.oCount);
                if (R.component[t] < 0) {
                    R.component[t] = comp;
                    R.maslov[t] = m;
                    R.alexander[t] = a;
                    dq.push_back(t);
                } else if (R.maslov[t] != m || R.alexander[t] != a) {
                    throw InternalError("inconsistent relative gradings around a rectangle cycle");
                }
            });
        }
        ++comp;
    }
    return R;
}

GradingAssignment anchorGradings(const GridDiagram& d) {
    requireValid(d);
    auto rel = integrateRelative(d);
    LiftGradings lift(d);
    auto res = analyzeDiagram(d, EngineOptions{});
    GradingAssignment g;
    g.gens = rel.gens;
    const std::size_t N = g.gens.size();
    g.spinc.resize(N);
    g.maslov.resize(N);
    g.alexander.resize(N);
    std::vector<std::size_t> root(res.classes.size(), SIZE_MAX);
    std::vector<int> compLabel(d.p, -1);
    for (std::size_t k = 0; k < N; ++k) {
        const int* x = g.gens[k].cols.data();
        int s = spincLabel(d, x);
        int c = rel.component[k];
        if (c >= d.p) throw InternalError("more rectangle classes than Spin^c structures");
        if (compLabel[c] < 0) compLabel[c] = s;
        else if (compLabel[c] != s) throw InternalError("Spin^c label not constant on a rectangle class");
        g.spinc[k] = s;
        if (root[s] == SIZE_MAX) root[s] = k;
        const int* r = g.gens[root[s]].cols.data();
        // the integrated and closed-form gradings must agree up to one constant per class
        Rational dm(lift.maslovCover2(x) - lift.maslovCover2(r), 2LL * d.p);
        Rational da = lift.alexander(x) - lift.alexander(r);
        if (dm != rel.maslov[k] - rel.maslov[root[s]] || da != rel.alexander[k] - rel.alexander[root[s]])
            throw InternalError("closed-form gradings disagree with rectangle integration");
        g.maslov[k] = res.classes[s].maslovAt(lift.maslovCover2(x));
        g.alexander[k] = lift.alexander(x);
    }
    return g;
}

}  // namespace lensgrid
