#include "lensgrid/constructions.hpp"

#include <numeric>

namespace lensgrid {

GridDiagram kpDiagram(int p) {
    if (p < 2) throw ValidationError("kpDiagram needs p >= 2");
    if (p == 2) return GridDiagram{2, 1, 3, {0, 1, 2}, {2, 3, 4}};
    return GridDiagram{p, 1, 2, {2, 3}, {5, 0}};
}

GridDiagram expand(const GridDiagram& d) {
    requireValid(d);
    if (d.q != 1) throw ValidationError("expansion needs q = 1");
    GridDiagram e = d;
    e.p = d.p + 1;
    return e;
}

GridDiagram mirror(const GridDiagram& d) {
    requireValid(d);
    GridDiagram m = d;
    const int W = d.width();
    m.q = d.p == 1 ? 0 : d.p - d.q;
    for (auto& c : m.X) c = W - 1 - c;
    for (auto& c : m.O) c = W - 1 - c;
    return m;
}

GridDiagram simpleKnotDiagram(int p, int q, int k) {
    bool ok = p >= 1 && (p == 1 ? q == 0 : (q >= 1 && q < p && std::gcd(p, q) == 1)) && k >= 0 && k < p;
    if (!ok) throw ValidationError("simpleKnotDiagram: invalid (p,q,k)");
    if (k == 0) return GridDiagram{p, q, 2, {0, 1}, {1, 0}};
    // climbing from O wraps k times before meeting X
    return GridDiagram{p, q, 1, {static_cast<int>((1LL * k * q) % p)}, {0}};
}

GridDiagram unknotDiagram(int p, int q) { return simpleKnotDiagram(p, q, 0); }

namespace {

// Insert m new rows above row R and m new beta residues after residue J.
struct Insertion {
    int n, m, R, J;
    int col(int c) const {
        int j = c % n, t = c / n;
        return (j <= J ? j : j + m) + (n + m) * t;
    }
    int row(int i) const { return i <= R ? i : i + m; }
};

}  // namespace

GridDiagram stabilize(const GridDiagram& d) {
    requireValid(d);
    const int R = 0, C = d.X[0];
    Insertion ins{d.n, 1, R, C % d.n};
    GridDiagram s{d.p, d.q, d.n + 1, std::vector<int>(d.n + 1), std::vector<int>(d.n + 1)};
    for (int i = 0; i < d.n; ++i) {
        s.X[ins.row(i)] = ins.col(d.X[i]);
        s.O[ins.row(i)] = ins.col(d.O[i]);
    }
    const int Cn = ins.col(C);
    s.X[R] = Cn + 1;
    s.X[R + 1] = Cn;
    s.O[R + 1] = Cn + 1;
    requireValid(s);
    return s;
}

GridDiagram connectedSum(const GridDiagram& g, const GridDiagram& h) {
    requireValid(g);
    requireValid(h);
    if (h.p != 1) throw ValidationError("connectedSum: second summand must be a p = 1 diagram");
    const int m = h.n, R = 0, C = g.X[0];
    Insertion ins{g.n, m, R, C % g.n};
    GridDiagram s{g.p, g.q, g.n + m, std::vector<int>(g.n + m), std::vector<int>(g.n + m)};
    for (int i = 0; i < g.n; ++i) {
        s.X[ins.row(i)] = ins.col(g.X[i]);
        s.O[ins.row(i)] = ins.col(g.O[i]);
    }
    // h as a diagonal block whose row-0 X sits in the first new column
    const int base = ins.col(C) + 1;
    for (int i = 0; i < m; ++i) {
        s.X[R + 1 + i] = base + (h.X[i] - h.X[0] + m) % m;
        s.O[R + 1 + i] = base + (h.O[i] - h.X[0] + m) % m;
    }
    std::swap(s.X[R], s.X[R + 1]);
    requireValid(s);
    return s;
}

GridDiagram rotateRows(const GridDiagram& d) {
    const int n = d.n, W = d.width();
    GridDiagram r = d;
    for (int i = 0; i + 1 < n; ++i) { r.X[i] = d.X[i + 1]; r.O[i] = d.O[i + 1]; }
    // old row 0 now sits one level up
    r.X[n - 1] = (d.X[0] + d.shift()) % W;
    r.O[n - 1] = (d.O[0] + d.shift()) % W;
    return r;
}

GridDiagram rotateColumns(const GridDiagram& d, int k) {
    const int W = d.width();
    GridDiagram r = d;
    for (auto& c : r.X) c = ((c + k) % W + W) % W;
    for (auto& c : r.O) c = ((c + k) % W + W) % W;
    return r;
}

GridDiagram trefoilDiagram() { return GridDiagram{1, 0, 5, {2, 1, 0, 4, 3}, {4, 3, 2, 1, 0}}; }

GridDiagram familyDiagram(const FamilySpec& f) {
    if (f.family == "kp") return kpDiagram(f.p);
    if (f.family == "unknot") return unknotDiagram(f.p, f.q);
    if (f.family == "simple") return simpleKnotDiagram(f.p, f.q, f.k);
    if (f.family == "trefoil") return trefoilDiagram();
    throw ParseError("unknown family '" + f.family + "'");
}

}  // namespace lensgrid
