#include "lensgrid/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <mutex>

#include "lensgrid/gradings.hpp"

namespace lensgrid {

namespace {

struct Shared {
    const GridDiagram& d;
    GeneratorIndex gi;
    LiftGradings lift;
    std::vector<int> twLabel;              // label of each twist vector (perm-independent)
    std::vector<std::uint32_t> twSlot;     // position among twists of the same label
    std::vector<std::vector<std::uint32_t>> twOfLabel;

    explicit Shared(const GridDiagram& dd) : d(dd), gi(dd), lift(dd) {
        const std::uint64_t T = gi.twistCount();
        twLabel.resize(T);
        twSlot.resize(T);
        twOfLabel.assign(d.p, {});
        std::vector<int> cols(d.n);
        for (std::uint64_t t = 0; t < T; ++t) {
            gi.unrank(t, cols.data());  // identity permutation, twist t
            int s = spincLabel(d, cols.data());
            twLabel[t] = s;
            twSlot[t] = static_cast<std::uint32_t>(twOfLabel[s].size());
            twOfLabel[s].push_back(static_cast<std::uint32_t>(t));
        }
        for (int s = 0; s < d.p; ++s)
            if (twOfLabel[s].size() != twOfLabel[0].size()) throw InternalError("Spin^c labels do not split twists evenly");
    }
};

void say(const EngineOptions& opt, const std::string& s) {
    if (opt.log) opt.log(s);
}

ClassResult runClass(const Shared& sh, int s, const EngineOptions& opt) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto secs = [&] { return std::to_string(std::chrono::duration<double>(clock::now() - t0).count()); };
    const GridDiagram& d = sh.d;
    const int n = d.n, p = d.p;
    const std::uint64_t T = sh.gi.twistCount(), P = sh.gi.permCount();
    const auto& tws = sh.twOfLabel[s];
    const std::uint64_t m = tws.size(), M = P * m;
    if (M >= UINT32_MAX) throw InternalError("class too large for 32-bit indices");

    ClassResult R;
    R.spinc = s;
    R.p = p;
    R.generators = M;
    FilteredComplex c;
    c.flavor = Flavor::oBlocked;
    c.tensorFactors = n - 1;
    c.basis.resize(M);
    c.diff.resize(M);
    std::vector<std::int32_t> cov(M), a8(M);
    int cols[64], y[64];
    for (std::uint64_t u = 0; u < M; ++u) {
        sh.gi.unrank((u / m) * T + tws[u % m], cols);
        cov[u] = static_cast<std::int32_t>(sh.lift.maslovCover2(cols));
        a8[u] = static_cast<std::int32_t>(sh.lift.alexander8p(cols));
    }
    R.rootCover2 = cov[0];
    say(opt, "class " + std::to_string(s) + ": " + std::to_string(M) + " generators graded (" + secs() + "s)");

    RectangleWalker walk(d);
    std::vector<std::pair<std::uint32_t, int>> buf;
    std::uint64_t arrows = 0;
    for (std::uint64_t u = 0; u < M; ++u) {
        const std::uint64_t g = (u / m) * T + tws[u % m];
        sh.gi.unrank(g, cols);
        buf.clear();
        walk.visit(cols, true, [&](const RectMove& mv) {
            std::copy(cols, cols + n, y);
            y[mv.i] = mv.ci;
            y[mv.j] = mv.cj;
            std::uint64_t r = sh.gi.rank(y);
            std::uint64_t tt = r % T;
            if (sh.twLabel[tt] != s) throw InternalError("rectangle leaves its Spin^c class");
            buf.emplace_back(static_cast<std::uint32_t>((r / T) * m + sh.twSlot[tt]), mv.xCount);
        });
        std::sort(buf.begin(), buf.end());
        auto& out = c.diff[u];
        for (std::size_t k = 0; k < buf.size();) {
            std::size_t e = k;
            while (e < buf.size() && buf[e].first == buf[k].first) ++e;
            if ((e - k) & 1) {
                auto v = buf[k].first;
                if (cov[u] - cov[v] != 2 * p || a8[u] - a8[v] != 8 * p * buf[k].second)
                    throw InternalError("closed-form gradings disagree with an empty rectangle");
                out.push_back(v);
            }
            k = e;
        }
        out.shrink_to_fit();
        arrows += out.size();
        auto& b = c.basis[u];
        b.id = g;
        b.spinc = s;
        std::int64_t dm = cov[u] - R.rootCover2;
        if (dm % (2 * p) != 0) throw InternalError("Maslov degrees within a class are not integral");
        b.maslov = Rational(dm / (2 * p));
        b.alexander = Rational(a8[u], 8LL * p);
    }
    R.arrows = arrows;
    std::vector<std::int32_t>().swap(cov);
    std::vector<std::int32_t>().swap(a8);
    say(opt, "class " + std::to_string(s) + ": " + std::to_string(arrows) + " arrows (" + secs() + "s)");

    if (opt.checkSquare && !squaresToZero(c)) throw InternalError("d^2 != 0 on the O-blocked complex");
    if (opt.keepFull) R.full = c;
    reduceInPlace(c);
    say(opt, "class " + std::to_string(s) + ": reduced to " + std::to_string(c.size()) + " (" + secs() + "s)");

    auto lev = filteredHomology(c, s);
    long total = 0;
    for (auto& e : lev) total += e.rank;
    if (total != (1L << (n - 1)))
        throw InternalError("O-blocked homology of class " + std::to_string(s) + " has rank " + std::to_string(total) +
                            ", expected " + std::to_string(1L << (n - 1)));
    auto top = std::max_element(lev.begin(), lev.end(), [](auto& a, auto& b) { return a.maslov < b.maslov; });
    if (top->rank != 1) throw InternalError("top Maslov class is not unique");
    R.maslovShift = correctionTerm(p, d.q, s) - top->maslov;
    R.tau = top->level;
    for (auto& e : lev) e.maslov += R.maslovShift;
    for (auto& b : c.basis) b.maslov += R.maslovShift;
    for (auto& b : R.full.basis) b.maslov += R.maslovShift;
    R.oBlocked = std::move(lev);
    R.reduced = std::move(c);
    return R;
}

}  // namespace

DiagramResult analyzeDiagram(const GridDiagram& d, const EngineOptions& opt) {
    requireValid(d);
    DiagramResult out;
    out.diagram = d;
    out.homClass = homologyClass(d);
    Shared sh(d);
    std::vector<int> todo = opt.classes;
    if (todo.empty())
        for (int s = 0; s < d.p; ++s) todo.push_back(s);
    for (int s : todo)
        if (s < 0 || s >= d.p) throw ValidationError("Spin^c label out of range");
    out.classes.resize(d.p);
    const int threads = std::max(1, opt.threads);
    if (threads == 1 || todo.size() == 1) {
        for (int s : todo) out.classes[s] = runClass(sh, s, opt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> fs;
        for (int t = 0; t < std::min<int>(threads, static_cast<int>(todo.size())); ++t)
            fs.push_back(std::async(std::launch::async, [&] {
                for (std::size_t k; (k = next++) < todo.size();) out.classes[todo[k]] = runClass(sh, todo[k], opt);
            }));
        for (auto& f : fs) f.get();
    }
    out.tau.assign(d.p, Rational(0));
    for (int s : todo) {
        auto& C = out.classes[s];
        for (auto& b : C.reduced.basis) out.tilde.add(s, b.maslov, b.alexander, 1);
        for (auto& e : C.oBlocked) out.oBlocked.add(s, e.maslov, e.level, e.rank);
        out.tau[s] = C.tau;
    }
    out.hfk = deconvolve(out.tilde, d.n - 1);
    return out;
}

FilteredComplex buildComplex(const GridDiagram& d, Flavor flavor) {
    EngineOptions opt;
    opt.keepFull = true;
    auto res = analyzeDiagram(d, opt);
    FilteredComplex c;
    c.flavor = flavor;
    c.tensorFactors = d.n - 1;
    for (auto& C : res.classes) {
        const auto base = static_cast<std::uint32_t>(c.basis.size());
        for (std::size_t k = 0; k < C.full.size(); ++k) {
            c.basis.push_back(C.full.basis[k]);
            std::vector<std::uint32_t> o;
            for (auto v : C.full.diff[k]) {
                if (flavor != Flavor::oBlocked && C.full.basis[v].alexander != C.full.basis[k].alexander) continue;
                o.push_back(base + v);
            }
            c.diff.push_back(std::move(o));
        }
    }
    checkComplex(c);
    return c;
}

}  // namespace lensgrid
