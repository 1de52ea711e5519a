#include "lensgrid/grid.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace lensgrid {

ValidationReport validate(const GridDiagram& d) {
    ValidationReport r;
    auto bad = [&](std::string s) { r.problems.push_back(std::move(s)); };
    if (d.p < 1) { bad("p must be positive"); return r; }
    if (d.n < 1) { bad("n must be positive"); return r; }
    if (d.p == 1) {
        if (d.q != 0) bad("q must be 0 when p = 1");
    } else {
        if (d.q < 1 || d.q >= d.p) bad("q must lie in [1, p)");
        else if (std::gcd(d.p, d.q) != 1) bad("gcd(p, q) must be 1");
    }
    const int n = d.n, W = d.width();
    if ((int)d.X.size() != n) bad("X must list one column per row");
    if ((int)d.O.size() != n) bad("O must list one column per row");
    if (!r.ok()) return r;
    bool inRange = true;
    for (int i = 0; i < n; ++i) {
        if (d.X[i] < 0 || d.X[i] >= W) { bad("X column " + std::to_string(d.X[i]) + " out of range"); inRange = false; }
        if (d.O[i] < 0 || d.O[i] >= W) { bad("O column " + std::to_string(d.O[i]) + " out of range"); inRange = false; }
    }
    if (!inRange) return r;
    std::vector<int> rx(n, 0), ro(n, 0);
    for (int i = 0; i < n; ++i) { ++rx[d.X[i] % n]; ++ro[d.O[i] % n]; }
    bool perms = true;
    for (int k = 0; k < n; ++k) {
        if (rx[k] != 1) { bad("X residues mod n are not a permutation (residue " + std::to_string(k) + ")"); perms = false; break; }
    }
    for (int k = 0; k < n; ++k) {
        if (ro[k] != 1) { bad("O residues mod n are not a permutation (residue " + std::to_string(k) + ")"); perms = false; break; }
    }
    for (int i = 0; i < n; ++i)
        if (d.X[i] == d.O[i]) bad("X and O share a cell in row " + std::to_string(i));
    if (perms && r.ok()) {
        int c = componentCount(d);
        if (c != 1) bad("markings describe a link with " + std::to_string(c) + " components");
    }
    return r;
}

void requireValid(const GridDiagram& d) {
    auto r = validate(d);
    if (!r.ok()) {
        std::string msg = "invalid diagram:";
        for (auto& s : r.problems) msg += " " + s + ";";
        throw ValidationError(msg);
    }
}

std::vector<int> Generator::perm(int n) const {
    std::vector<int> v(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) v[i] = cols[i] % n;
    return v;
}
std::vector<int> Generator::twist(int n) const {
    std::vector<int> v(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) v[i] = cols[i] / n;
    return v;
}

GeneratorIndex::GeneratorIndex(const GridDiagram& d) : n_(d.n), p_(d.p) {
    fact_.assign(n_ + 1, 1);
    for (int k = 1; k <= n_; ++k) fact_[k] = fact_[k - 1] * k;
    nperm_ = fact_[n_];
    ptwist_ = 1;
    for (int k = 0; k < n_; ++k) ptwist_ *= p_;
    std::vector<std::uint8_t> pm(n_);
    std::iota(pm.begin(), pm.end(), 0);
    perms_.reserve(nperm_ * n_);
    do perms_.insert(perms_.end(), pm.begin(), pm.end());
    while (std::next_permutation(pm.begin(), pm.end()));
}

std::uint64_t GeneratorIndex::permRank(const int* perm) const {
    std::uint64_t r = 0;
    for (int i = 0; i < n_; ++i) {
        int smaller = 0;
        for (int k = i + 1; k < n_; ++k) smaller += perm[k] < perm[i];
        r += smaller * fact_[n_ - 1 - i];
    }
    return r;
}

std::uint64_t GeneratorIndex::rank(const int* cols) const {
    int perm[64];
    std::uint64_t t = 0;
    for (int i = 0; i < n_; ++i) { perm[i] = cols[i] % n_; t = t * p_ + cols[i] / n_; }
    return permRank(perm) * ptwist_ + t;
}

void GeneratorIndex::unrank(std::uint64_t r, int* cols) const {
    std::uint64_t pr = r / ptwist_, t = r % ptwist_;
    const std::uint8_t* pm = perms_.data() + pr * n_;
    for (int i = n_ - 1; i >= 0; --i) {
        cols[i] = pm[i] + n_ * static_cast<int>(t % p_);
        t /= p_;
    }
}

std::vector<Generator> enumerateGenerators(const GridDiagram& d) {
    requireValid(d);
    GeneratorIndex gi(d);
    std::vector<Generator> out(gi.size());
    for (std::uint64_t r = 0; r < gi.size(); ++r) {
        out[r].cols.resize(d.n);
        gi.unrank(r, out[r].cols.data());
    }
    return out;
}

static Rectangle materialize(const GridDiagram& d, const Generator& x, const RectMove& mv) {
    Rectangle R;
    R.from = x;
    R.to = x;
    R.to.cols[mv.i] = mv.ci;
    R.to.cols[mv.j] = mv.cj;
    R.row = mv.row; R.height = mv.height; R.col = mv.col; R.width = mv.width;
    R.xCount = mv.xCount; R.oCount = mv.oCount; R.interiorHits = mv.hits;
    const int n = d.n, W = d.width(), s = d.shift();
    for (int v = mv.row; v < mv.row + mv.height; ++v) {
        const int lev = v / n;
        for (int u = mv.col; u < mv.col + mv.width; ++u) {
            long long c = ((u - static_cast<long long>(lev) * s) % W + W) % W;
            R.cells.emplace_back(v % n, static_cast<int>(c));
        }
    }
    return R;
}

std::vector<Rectangle> rectanglesFrom(const GridDiagram& d, const Generator& x) {
    RectangleWalker walk(d);
    std::vector<Rectangle> out;
    walk.visit(x.cols.data(), false, [&](const RectMove& mv) { out.push_back(materialize(d, x, mv)); });
    return out;
}

std::vector<Rectangle> rectanglesBetween(const GridDiagram& d, const Generator& x, const Generator& y) {
    std::vector<Rectangle> out;
    if (x == y) return out;
    int diff = 0;
    for (size_t i = 0; i < x.cols.size(); ++i) diff += x.cols[i] != y.cols[i];
    if (diff != 2) return out;
    for (auto& R : rectanglesFrom(d, x))
        if (R.to == y) out.push_back(std::move(R));
    return out;
}

int spincLabel(const GridDiagram& d, const int* cols) {
    if (d.p == 1) return 0;
    long long s = 0;
    for (int i = 0; i < d.n; ++i) s += cols[i] - d.O[i];
    // s is divisible by n: both column sets have permutation residues
    long long L = ((s / d.n) % d.p + d.p) % d.p;
    long long i = (L + d.q - 1) % d.p;
    return 2 * d.q <= d.p ? static_cast<int>(i) : static_cast<int>(((-i - 1) % d.p + d.p) % d.p);
}

std::vector<SpincClass> spincPartition(const GridDiagram& d) {
    auto gens = enumerateGenerators(d);
    GeneratorIndex gi(d);
    RectangleWalker walk(d);
    const std::uint64_t N = gens.size();
    std::vector<int> comp(N, -1);
    int ncomp = 0;
    std::vector<int> y(d.n);
    for (std::uint64_t s = 0; s < N; ++s) {
        if (comp[s] >= 0) continue;
        std::deque<std::uint64_t> dq{s};
        comp[s] = ncomp;
        while (!dq.empty()) {
            auto z = dq.front();
            dq.pop_front();
            const auto& zc = gens[z].cols;
            walk.visit(zc.data(), false, [&](const RectMove& mv) {
                std::copy(zc.begin(), zc.end(), y.begin());
                y[mv.i] = mv.ci; y[mv.j] = mv.cj;
                auto r = gi.rank(y.data());
                if (comp[r] < 0) { comp[r] = ncomp; dq.push_back(r); }
            });
        }
        ++ncomp;
    }
    if (ncomp != d.p)
        throw InternalError("rectangle connectivity gives " + std::to_string(ncomp) + " classes, expected " + std::to_string(d.p));
    std::vector<SpincClass> cls(ncomp);
    std::vector<int> seen(ncomp, 0);
    for (std::uint64_t r = 0; r < N; ++r) {
        int lab = spincLabel(d, gens[r].cols.data());
        auto& C = cls[comp[r]];
        if (C.members.empty()) C.label = lab;
        else if (C.label != lab) throw InternalError("Spin^c label not constant on a connected class");
        C.members.push_back(gens[r]);
    }
    std::sort(cls.begin(), cls.end(), [](auto& a, auto& b) { return a.label < b.label; });
    for (int k = 0; k < ncomp; ++k) {
        if (cls[k].label != k) throw InternalError("Spin^c labels are not a bijection onto Z/p");
        if (cls[k].members.size() != cls[0].members.size()) throw InternalError("unequal Spin^c class sizes");
    }
    return cls;
}

// target row of the vertical arc leaving row i's O
static std::vector<int> verticalTargets(const GridDiagram& d) {
    std::vector<int> byResidue(d.n, -1), t(d.n);
    for (int k = 0; k < d.n; ++k) byResidue[d.X[k] % d.n] = k;
    for (int i = 0; i < d.n; ++i) t[i] = byResidue[d.O[i] % d.n];
    return t;
}

int componentCount(const GridDiagram& d) {
    auto t = verticalTargets(d);
    std::vector<char> seen(d.n, 0);
    int c = 0;
    for (int i = 0; i < d.n; ++i) {
        if (seen[i]) continue;
        ++c;
        for (int v = i; !seen[v]; v = t[v]) seen[v] = 1;
    }
    return c;
}

int homologyClass(const GridDiagram& d) {
    requireValid(d);
    if (d.p == 1) return 0;
    auto t = verticalTargets(d);
    const int n = d.n, W = d.width(), s = d.shift();
    long long tot = 0;
    for (int i = 0; i < n; ++i) {
        // climb the beta annulus from O's cell to X's cell
        int r = i, c = d.O[i], guard = 0;
        for (;;) {
            if (++r == n) { r = 0; c = (c + s) % W; ++tot; }
            if (r == t[i] && c == d.X[t[i]]) break;
            if (++guard > W + n) throw InternalError("vertical arc does not close");
        }
    }
    return static_cast<int>(tot % d.p);
}

GridDiagram parseKnot(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (!tok.empty()) rows.push_back(tok);
    }
    if (rows.size() != 4) throw ParseError("expected 4 non-comment lines, found " + std::to_string(rows.size()));
    if (rows[0] != std::vector<std::string>{"lensknot", "v1"}) throw ParseError("missing 'lensknot v1' header");
    GridDiagram d;
    std::map<std::string, int> kv;
    for (auto& t : rows[1]) {
        auto e = t.find('=');
        if (e == std::string::npos) throw ParseError("bad parameter token '" + t + "'");
        try {
            size_t used = 0;
            kv[t.substr(0, e)] = std::stoi(t.substr(e + 1), &used);
            if (used != t.size() - e - 1) throw ParseError("bad integer in '" + t + "'");
        } catch (const std::logic_error&) { throw ParseError("bad integer in '" + t + "'"); }
    }
    if (kv.size() != 3 || !kv.count("p") || !kv.count("q") || !kv.count("n")) throw ParseError("parameter line must be 'p=<int> q=<int> n=<int>'");
    d.p = kv["p"]; d.q = kv["q"]; d.n = kv["n"];
    if (d.p < 1 || d.n < 1 || d.n > 12) throw ParseError("p and n must be positive (n at most 12)");
    auto readCols = [&](const std::vector<std::string>& r, const char* tag) {
        if (r[0] != tag) throw ParseError(std::string("expected line starting with ") + tag);
        std::vector<int> v;
        for (size_t k = 1; k < r.size(); ++k) {
            int c;
            try {
                size_t used = 0;
                c = std::stoi(r[k], &used);
                if (used != r[k].size()) throw ParseError("bad column '" + r[k] + "'");
            } catch (const std::logic_error&) { throw ParseError("bad column '" + r[k] + "'"); }
            if (c < 0 || c >= d.p * d.n) throw ParseError(std::string(tag) + " column " + r[k] + " out of range [0," + std::to_string(d.p * d.n) + ")");
            v.push_back(c);
        }
        if ((int)v.size() != d.n) throw ParseError(std::string(tag) + " line needs exactly n columns");
        return v;
    };
    d.X = readCols(rows[2], "X");
    d.O = readCols(rows[3], "O");
    return d;
}

GridDiagram readKnotFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parseKnot(ss.str());
}

std::string formatKnot(const GridDiagram& d) {
    std::ostringstream o;
    o << "lensknot v1\np=" << d.p << " q=" << d.q << " n=" << d.n << "\nX";
    for (int c : d.X) o << ' ' << c;
    o << "\nO";
    for (int c : d.O) o << ' ' << c;
    o << "\n";
    return o.str();
}

GridDiagram canonicalForm(const GridDiagram& d) {
    const int W = d.width();
    GridDiagram best = d;
    for (int k = 1; k < W; ++k) {
        GridDiagram e = d;
        for (auto& c : e.X) c = (c + k) % W;
        for (auto& c : e.O) c = (c + k) % W;
        if (std::tie(e.X, e.O) < std::tie(best.X, best.O)) best = e;
    }
    return best;
}

std::string canonicalEncoding(const GridDiagram& d) { return formatKnot(canonicalForm(d)); }

}  // namespace lensgrid
