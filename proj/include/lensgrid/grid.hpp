#pragma once
// Twisted grid diagrams for knots in L(p,q).
//
// Cells are (row, col) with row in [0,n) and col in [0,p*n). Walking off the top
// edge lands in row 0 with columns shifted by +n*q (mod p*n); the horizontal
// direction is an ordinary circle. A generator puts one point on the lower-left
// corner of a cell in every row, i.e. on a column line; its column is
// perm(i) + n*twist[i].

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lensgrid {

struct GridDiagram {
    int p = 1, q = 0, n = 1;
    std::vector<int> X, O;  // marking columns, indexed by row

    int width() const { return p * n; }
    int shift() const { return p == 1 ? 0 : (n * q) % (p * n); }
    friend bool operator==(const GridDiagram&, const GridDiagram&) = default;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

ValidationReport validate(const GridDiagram& d);
void requireValid(const GridDiagram& d);  // throws ValidationError

struct ParseError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ValidationError : std::runtime_error { using std::runtime_error::runtime_error; };
struct InternalError : std::runtime_error { using std::runtime_error::runtime_error; };

struct Generator {
    std::vector<int> cols;
    std::vector<int> perm(int n) const;
    std::vector<int> twist(int n) const;
    friend bool operator==(const Generator&, const Generator&) = default;
    friend auto operator<=>(const Generator&, const Generator&) = default;
};

// Lexicographic on (perm, twist); rank/unrank are mutually inverse bijections
// onto [0, n! p^n).
class GeneratorIndex {
public:
    explicit GeneratorIndex(const GridDiagram& d);
    std::uint64_t size() const { return nperm_ * ptwist_; }
    std::uint64_t rank(const int* cols) const;
    void unrank(std::uint64_t r, int* cols) const;
    std::uint64_t permCount() const { return nperm_; }
    std::uint64_t twistCount() const { return ptwist_; }
    const std::vector<std::uint8_t>& permTable() const { return perms_; }
    std::uint64_t permRank(const int* perm) const;

private:
    int n_, p_;
    std::uint64_t nperm_, ptwist_;
    std::vector<std::uint8_t> perms_;  // all perms, lex order, n bytes each
    std::vector<std::uint64_t> fact_;
};

std::vector<Generator> enumerateGenerators(const GridDiagram& d);

struct Rectangle {
    Generator from, to;
    int row = 0, height = 0, col = 0, width = 0;  // lower-left cell, extent
    std::vector<std::pair<int, int>> cells;         // (row, col), projected
    int xCount = 0, oCount = 0, interiorHits = 0;
    bool empty() const { return xCount == 0 && oCount == 0 && interiorHits == 0; }
};

// Raw rectangle data handed to callbacks: the moved points (rows i, j get new
// columns ci, cj) plus marking and interior counts.
struct RectMove {
    int i, j, ci, cj;
    int row, height, col, width;
    int xCount, oCount, hits;
};

// Visits every embedded rectangle starting at x. With oFree set, rectangles
// containing an O or an interior point are skipped early.
class RectangleWalker {
public:
    explicit RectangleWalker(const GridDiagram& d);
    template <class F>
    void visit(const int* x, bool oFree, F&& f) const;

private:
    const GridDiagram& d_;
    int n_, W_;
    std::vector<int> levelShift_;  // (m*shift) % W
    std::vector<int> minSym_;      // min over 1..m of the symmetric column offset
};

std::vector<Rectangle> rectanglesFrom(const GridDiagram& d, const Generator& x);
std::vector<Rectangle> rectanglesBetween(const GridDiagram& d, const Generator& x, const Generator& y);

// Calibrated Spin^c label of a generator, see gradings for the matching
// correction-term index.
int spincLabel(const GridDiagram& d, const int* cols);

struct SpincClass {
    int label = 0;
    std::vector<Generator> members;
};

// Connectivity under all rectangles; throws InternalError unless there are
// exactly p classes of equal size with distinct labels.
std::vector<SpincClass> spincPartition(const GridDiagram& d);

int homologyClass(const GridDiagram& d);
int componentCount(const GridDiagram& d);

GridDiagram parseKnot(const std::string& text);
GridDiagram readKnotFile(const std::string& path);
std::string formatKnot(const GridDiagram& d);
// rotation-minimal encoding, used as cache key
GridDiagram canonicalForm(const GridDiagram& d);
std::string canonicalEncoding(const GridDiagram& d);

// ---- template body

inline RectangleWalker::RectangleWalker(const GridDiagram& d) : d_(d), n_(d.n), W_(d.width()) {
    const int s = d.shift();
    const int levels = 2 * d.p + 2;
    levelShift_.resize(levels + 1);
    for (int m = 0; m <= levels; ++m) levelShift_[m] = static_cast<int>((static_cast<long long>(m) * s) % W_);
    minSym_.assign(levels + 1, W_);
    for (int m = 1; m <= levels; ++m) {
        int v = levelShift_[m];
        minSym_[m] = std::min(minSym_[m - 1], std::min(v, W_ - v));
    }
}

template <class F>
void RectangleWalker::visit(const int* x, bool oFree, F&& f) const {
    const int n = n_, W = W_;
    const int* X = d_.X.data();
    const int* O = d_.O.data();
    for (int i = 0; i < n; ++i) {
        const int a = x[i];
        for (int h = 1; h < W; ++h) {
            const int r2 = i + h;
            const int j = r2 % n;
            if (j == i) continue;
            const int m = r2 / n;
            const int b0 = (x[j] + levelShift_[m]) % W;
            const int w = (b0 - a + W) % W;
            if (w == 0) continue;
            const int wraps = (h - 1) / n;
            if (wraps >= 1 && minSym_[wraps] < w) continue;
            int xc = 0, oc = 0, hits = 0;
            bool skip = false;
            for (int v = i; v < r2; ++v) {
                const int k = v % n, base = levelShift_[v / n];
                if ((O[k] + base - a + 2 * W) % W < w) {
                    ++oc;
                    if (oFree) { skip = true; break; }
                }
                if ((X[k] + base - a + 2 * W) % W < w) ++xc;
                if (v > i) {
                    const int off = (x[k] + base - a + 2 * W) % W;
                    if (off > 0 && off < w) {
                        ++hits;
                        if (oFree) { skip = true; break; }
                    }
                }
            }
            if (skip) continue;
            const int cj = ((a - levelShift_[m]) % W + W) % W;
            f(RectMove{i, j, b0, cj, i, h, a, w, xc, oc, hits});
        }
    }
}

}  // namespace lensgrid
