#include "lensgrid/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lensgrid/grid.hpp"

namespace lensgrid {

const char* flavorName(Flavor f) {
    switch (f) {
        case Flavor::tilde: return "tilde";
        case Flavor::oBlocked: return "oBlocked";
        case Flavor::graded: return "graded";
    }
    return "?";
}

int FilteredComplex::find(std::uint64_t id) const {
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k].id == id) return static_cast<int>(k);
    return -1;
}

long HomologyTable::rank() const {
    long r = 0;
    for (auto& [k, v] : entries) r += v;
    return r;
}
long HomologyTable::rank(int s) const {
    long r = 0;
    for (auto& [k, v] : entries)
        if (std::get<0>(k) == s) r += v;
    return r;
}
HomologyTable HomologyTable::restrict(int s) const {
    HomologyTable h;
    for (auto& [k, v] : entries)
        if (std::get<0>(k) == s) h.entries[k] = v;
    return h;
}
void HomologyTable::add(int s, Rational m, Rational a, long r) {
    auto key = std::make_tuple(s, m, a);
    long& v = entries[key];
    v += r;
    if (v == 0) entries.erase(key);
}

// ---------------------------------------------------------------- checks

void checkComplex(const FilteredComplex& c) {
    const bool graded = c.flavor != Flavor::oBlocked;
    for (std::size_t x = 0; x < c.size(); ++x) {
        const auto& bx = c.basis[x];
        for (auto y : c.diff[x]) {
            const auto& by = c.basis[y];
            if (by.spinc != bx.spinc) throw InternalError("differential changes Spin^c class");
            if (bx.maslov - by.maslov != Rational(1)) throw InternalError("differential does not drop Maslov degree by 1");
            if (by.alexander > bx.alexander) throw InternalError("differential raises Alexander filtration");
            if (graded && by.alexander != bx.alexander) throw InternalError("graded differential changes Alexander degree");
        }
    }
    if (!squaresToZero(c)) throw InternalError("d^2 != 0");
}

bool squaresToZero(const FilteredComplex& c) {
    std::vector<std::uint32_t> acc, tmp;
    for (std::size_t x = 0; x < c.size(); ++x) {
        acc.clear();
        for (auto y : c.diff[x]) {
            tmp.clear();
            std::set_symmetric_difference(acc.begin(), acc.end(), c.diff[y].begin(), c.diff[y].end(), std::back_inserter(tmp));
            acc.swap(tmp);
        }
        if (!acc.empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------- dense GF(2)

namespace {

using Bits = std::vector<std::uint64_t>;

inline int topBit(const Bits& v) {
    for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k)
        if (v[k]) return k * 64 + 63 - __builtin_clzll(v[k]);
    return -1;
}
inline void xorInto(Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] ^= b[k];
}

// Row echelon form keyed by leading bit; optionally carries a combination
// vector alongside each row.
struct Echelon {
    std::vector<Bits> rows, combos;
    std::vector<int> pivot;
    explicit Echelon(int nbits) : pivot(nbits, -1) {}

    // returns true if v was independent (and is now stored)
    bool insert(Bits v, Bits* combo = nullptr) {
        for (;;) {
            int t = topBit(v);
            if (t < 0) return false;
            int r = pivot[t];
            if (r < 0) {
                pivot[t] = static_cast<int>(rows.size());
                rows.push_back(std::move(v));
                if (combo) combos.push_back(*combo);
                return true;
            }
            xorInto(v, rows[r]);
            if (combo) xorInto(*combo, combos[r]);
        }
    }
};

// Homology classes of `full` (class s) represented by cycles supported on the
// elements flagged in `inSub`, with the filtration level at which each is
// born. Sorting by Alexander makes every prefix basis of the kernel a basis of
// the sublevel kernel.
std::vector<ImageClass> bornClasses(const FilteredComplex& full, const std::vector<char>& inSub, int s) {
    std::map<Rational, std::vector<std::uint32_t>> byDeg;
    for (std::uint32_t k = 0; k < full.size(); ++k)
        if (full.basis[k].spinc == s) byDeg[full.basis[k].maslov].push_back(k);
    std::vector<int> pos(full.size(), -1);
    for (auto& [m, v] : byDeg) {
        std::sort(v.begin(), v.end(), [&](auto a, auto b) {
            auto& A = full.basis[a]; auto& B = full.basis[b];
            return std::tie(A.alexander, A.id) < std::tie(B.alexander, B.id);
        });
        for (std::size_t k = 0; k < v.size(); ++k) pos[v[k]] = static_cast<int>(k);
    }
    auto words = [](std::size_t nb) { return (nb + 63) / 64; };
    std::vector<ImageClass> out;
    for (auto& [m, elems] : byDeg) {
        const std::size_t nb = elems.size();
        auto lower = byDeg.find(m - Rational(1));
        auto upper = byDeg.find(m + Rational(1));
        const std::size_t nl = lower == byDeg.end() ? 0 : lower->second.size();
        // kernel of d on sub elements of degree m, in filtration order
        Echelon img(static_cast<int>(std::max<std::size_t>(nl, 1)));
        std::vector<std::pair<Bits, Rational>> kernel;
        for (std::size_t k = 0; k < nb; ++k) {
            auto e = elems[k];
            if (!inSub[e]) continue;
            Bits v(words(std::max<std::size_t>(nl, 1)), 0), combo(words(nb), 0);
            for (auto t : full.diff[e]) v[pos[t] / 64] ^= 1ull << (pos[t] % 64);
            combo[k / 64] |= 1ull << (k % 64);
            // a dependent boundary leaves its reduced combination as a cycle
            if (!img.insert(v, &combo)) kernel.emplace_back(combo, full.basis[e].alexander);
        }
        if (kernel.empty()) continue;
        Echelon bd(static_cast<int>(nb));
        if (upper != byDeg.end()) {
            for (auto e : upper->second) {
                Bits v(words(nb), 0);
                for (auto t : full.diff[e]) v[pos[t] / 64] ^= 1ull << (pos[t] % 64);
                bd.insert(std::move(v));
            }
        }
        for (auto& [z, lev] : kernel)
            if (bd.insert(z)) out.push_back({m, lev});
    }
    return out;
}

}  // namespace

std::vector<LevelEntry> filteredHomology(const FilteredComplex& c, int s) {
    std::vector<char> all(c.size(), 1);
    std::map<std::pair<Rational, Rational>, long> cnt;
    for (auto& ic : bornClasses(c, all, s)) ++cnt[{ic.maslov, ic.level}];
    std::vector<LevelEntry> out;
    for (auto& [k, r] : cnt) out.push_back({k.first, k.second, r});
    return out;
}

// ---------------------------------------------------------------- reduction

namespace {

struct Reducer {
    FilteredComplex& c;
    std::vector<std::vector<std::uint32_t>> in;
    std::vector<char> alive;
    std::vector<std::uint32_t> tmp;

    explicit Reducer(FilteredComplex& cc) : c(cc), in(cc.size()), alive(cc.size(), 1) {
        std::vector<std::uint32_t> deg(c.size(), 0);
        for (auto& o : c.diff)
            for (auto y : o) ++deg[y];
        for (std::size_t y = 0; y < c.size(); ++y) in[y].reserve(deg[y]);
        for (std::uint32_t x = 0; x < c.size(); ++x)
            for (auto y : c.diff[x]) in[y].push_back(x);
    }

    void symdiff(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        tmp.clear();
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
        a.swap(tmp);
        if (a.capacity() > 4 * a.size() + 16) a.shrink_to_fit();
    }
    static void erase(std::vector<std::uint32_t>& v, std::uint32_t e) {
        auto it = std::lower_bound(v.begin(), v.end(), e);
        if (it != v.end() && *it == e) v.erase(it);
    }

    void cancel(std::uint32_t x, std::uint32_t y) {
        auto& ox = c.diff[x];
        if (!std::binary_search(ox.begin(), ox.end(), y)) throw InternalError("cancelPair: y is not in the boundary of x");
        std::vector<std::uint32_t> outX = ox, inY = in[y];
        for (auto z : inY)
            if (z != x) symdiff(c.diff[z], outX);
        for (auto w : outX)
            if (w != y) symdiff(in[w], inY);
        for (auto u : in[x]) erase(c.diff[u], x);
        for (auto w : c.diff[y]) erase(in[w], y);
        for (auto v : {x, y}) {
            std::vector<std::uint32_t>().swap(c.diff[v]);
            std::vector<std::uint32_t>().swap(in[v]);
            alive[v] = 0;
        }
    }

    void compact() {
        std::vector<std::uint32_t> remap(c.size(), UINT32_MAX);
        std::uint32_t k = 0;
        for (std::size_t v = 0; v < c.size(); ++v)
            if (alive[v]) remap[v] = k++;
        std::vector<BasisElement> nb;
        std::vector<std::vector<std::uint32_t>> nd;
        nb.reserve(k);
        nd.reserve(k);
        for (std::size_t v = 0; v < c.size(); ++v) {
            if (!alive[v]) continue;
            nb.push_back(c.basis[v]);
            auto& o = c.diff[v];
            for (auto& y : o) y = remap[y];
            nd.push_back(std::move(o));
        }
        c.basis.swap(nb);
        c.diff.swap(nd);
        in.clear();
        alive.clear();
    }
};

}  // namespace

FilteredComplex cancelPair(const FilteredComplex& c, std::uint32_t x, std::uint32_t y) {
    if (x >= c.size() || y >= c.size()) throw InternalError("cancelPair: index out of range");
    FilteredComplex r = c;
    Reducer red(r);
    red.cancel(x, y);
    red.compact();
    return r;
}

void reduceInPlace(FilteredComplex& c) {
    Reducer red(c);
    std::vector<std::uint32_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        auto& A = c.basis[a]; auto& B = c.basis[b];
        return std::tie(A.alexander, A.maslov, A.id) < std::tie(B.alexander, B.maslov, B.id);
    });
    for (bool progress = true; progress;) {
        progress = false;
        for (auto x : order) {
            if (!red.alive[x]) continue;
            const auto& ax = c.basis[x].alexander;
            std::uint32_t best = UINT32_MAX;
            std::size_t bestDeg = SIZE_MAX;
            for (auto y : c.diff[x]) {
                if (c.basis[y].alexander != ax) continue;
                if (red.in[y].size() < bestDeg) { bestDeg = red.in[y].size(); best = y; }
            }
            if (best == UINT32_MAX) continue;
            red.cancel(x, best);
            progress = true;
        }
    }
    red.compact();
}

FilteredComplex reduce(const FilteredComplex& c) {
    FilteredComplex r = c;
    reduceInPlace(r);
    return r;
}

// ---------------------------------------------------------------- homology

HomologyTable deconvolve(const HomologyTable& h, int k) {
    HomologyTable rest = h, out;
    std::vector<long> binom(k + 1, 1);
    for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;
    while (!rest.entries.empty()) {
        // the top Alexander entry on some diagonal M - A must be a free generator
        auto top = rest.entries.begin();
        for (auto it = rest.entries.begin(); it != rest.entries.end(); ++it) {
            auto& [s, m, a] = it->first;
            auto& [s0, m0, a0] = top->first;
            if (std::tie(s, a) > std::tie(s0, a0)) top = it;
        }
        auto [s, m, a] = top->first;
        long r = top->second;
        out.add(s, m, a, r);
        for (int j = 0; j <= k; ++j) {
            auto key = std::make_tuple(s, m - Rational(j), a - Rational(j));
            auto it = rest.entries.find(key);
            long have = it == rest.entries.end() ? 0 : it->second;
            if (have < binom[j] * r) throw InternalError("tilde homology is not a multiple of the tensor factor");
            rest.add(s, std::get<1>(key), std::get<2>(key), -binom[j] * r);
        }
    }
    return out;
}

HomologyTable convolve(const HomologyTable& h, int k) {
    HomologyTable out;
    std::vector<long> binom(k + 1, 1);
    for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;
    for (auto& [key, r] : h.entries) {
        auto& [s, m, a] = key;
        for (int j = 0; j <= k; ++j) out.add(s, m - Rational(j), a - Rational(j), binom[j] * r);
    }
    return out;
}

HomologyTable homology(const FilteredComplex& c) {
    if (!squaresToZero(c)) throw InternalError("d^2 != 0");
    FilteredComplex r = reduce(c);
    std::vector<int> classes;
    for (auto& b : r.basis) classes.push_back(b.spinc);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    HomologyTable h;
    for (int s : classes)
        for (auto& e : filteredHomology(r, s)) h.add(s, e.maslov, e.level, e.rank);
    if (c.flavor == Flavor::graded) return deconvolve(h, c.tensorFactors);
    return h;
}

FilteredComplex filtrationSublevel(const FilteredComplex& c, int s, const Rational& a) {
    FilteredComplex r;
    r.flavor = c.flavor;
    r.tensorFactors = c.tensorFactors;
    std::vector<std::uint32_t> remap(c.size(), UINT32_MAX);
    for (std::uint32_t k = 0; k < c.size(); ++k) {
        auto& b = c.basis[k];
        if (b.spinc == s && b.alexander <= a) {
            remap[k] = static_cast<std::uint32_t>(r.basis.size());
            r.basis.push_back(b);
        }
    }
    for (std::uint32_t k = 0; k < c.size(); ++k) {
        if (remap[k] == UINT32_MAX) continue;
        std::vector<std::uint32_t> o;
        for (auto y : c.diff[k]) {
            if (remap[y] == UINT32_MAX) throw InternalError("differential raises Alexander filtration");
            o.push_back(remap[y]);
        }
        std::sort(o.begin(), o.end());
        r.diff.push_back(std::move(o));
    }
    return r;
}

std::vector<ImageClass> inducedImage(const FilteredComplex& sub, const FilteredComplex& full, int s) {
    std::unordered_map<std::uint64_t, std::uint32_t> where;
    for (std::uint32_t k = 0; k < full.size(); ++k) where[full.basis[k].id] = k;
    std::vector<char> inSub(full.size(), 0);
    for (auto& b : sub.basis) {
        auto it = where.find(b.id);
        if (it == where.end()) throw InternalError("inducedImage: element not in the ambient complex");
        if (b.spinc == s) inSub[it->second] = 1;
    }
    for (std::uint32_t k = 0; k < full.size(); ++k) {
        if (!inSub[k]) continue;
        for (auto y : full.diff[k])
            if (!inSub[y]) throw InternalError("inducedImage: not a subcomplex");
    }
    return bornClasses(full, inSub, s);
}

// ---------------------------------------------------------------- dump

std::string dumpComplex(const FilteredComplex& c) {
    std::ostringstream o;
    o << "complex " << flavorName(c.flavor) << " " << c.tensorFactors << "\n";
    for (auto& b : c.basis)
        o << "elem " << b.id << ' ' << b.spinc << ' ' << b.maslov.num() << '/' << b.maslov.den() << ' '
          << b.alexander.num() << '/' << b.alexander.den() << "\n";
    for (std::size_t x = 0; x < c.size(); ++x)
        for (auto y : c.diff[x]) o << "arrow " << c.basis[x].id << ' ' << c.basis[y].id << "\n";
    return o.str();
}

FilteredComplex parseDump(const std::string& text) {
    FilteredComplex c;
    std::istringstream in(text);
    std::unordered_map<std::uint64_t, std::uint32_t> where;
    std::string tag;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows;
    while (in >> tag) {
        if (tag == "complex") {
            std::string f;
            in >> f >> c.tensorFactors;
            c.flavor = f == "tilde" ? Flavor::tilde : f == "graded" ? Flavor::graded : Flavor::oBlocked;
        } else if (tag == "elem") {
            BasisElement b;
            std::string m, a;
            in >> b.id >> b.spinc >> m >> a;
            b.maslov = Rational::parse(m);
            b.alexander = Rational::parse(a);
            where[b.id] = static_cast<std::uint32_t>(c.basis.size());
            c.basis.push_back(b);
        } else if (tag == "arrow") {
            std::uint64_t u, v;
            in >> u >> v;
            arrows.emplace_back(u, v);
        } else {
            throw ParseError("bad dump record '" + tag + "'");
        }
    }
    c.diff.assign(c.basis.size(), {});
    for (auto [u, v] : arrows) {
        if (!where.count(u) || !where.count(v)) throw ParseError("arrow references unknown element");
        c.diff[where[u]].push_back(where[v]);
    }
    for (auto& o : c.diff) std::sort(o.begin(), o.end());
    return c;
}

}  // namespace lensgrid
