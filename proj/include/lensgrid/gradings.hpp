#pragma once
// Maslov/Alexander gradings and lens-space correction terms.

#include <cstdint>
#include <vector>

#include "lensgrid/grid.hpp"
#include "lensgrid/rational.hpp"

namespace lensgrid {

// Recursion in its own labeling: d(1,0,0)=0,
// d(p,q,i) = ((2i+1-p-q)^2 - pq)/(4pq) - d(q, p mod q, i mod q).
Rational correctionTermRec(int p, int q, int i);
// recursion index carrying Spin^c label s
int correctionIndex(int p, int q, int s);
// correction term of label s, for L(p,q) = -p/q surgery on the unknot
Rational correctionTerm(int p, int q, int s);

// Closed-form gradings read off the p-fold lift to a classical pn x pn grid.
class LiftGradings {
public:
    explicit LiftGradings(const GridDiagram& d);
    // 8p * A(x), absolute
    std::int64_t alexander8p(const int* cols) const;
    Rational alexander(const int* cols) const;
    // 2 * classical Maslov grading of the lifted generator; within a Spin^c
    // class, M(x) - M(y) = (cover(x) - cover(y)) / 2p
    std::int64_t maslovCover2(const int* cols) const;

private:
    int p_, n_, N_, shift_;
    std::vector<int> LX_, LO_, wind_;  // wind_ is (N+1)x(N+1)
    std::int64_t cornerSum_ = 0, oo2_ = 0;
    int w(int u, int v) const { return wind_[u * (N_ + 1) + v]; }
};

struct RelativeGradings {
    std::vector<Generator> gens;  // canonical order
    std::vector<int> component;   // rectangle-connected class index
    std::vector<Rational> maslov, alexander;  // relative to the first member of each class
};
// Spanning-tree integration over all rectangles; any cycle with nonzero total
// drop is an InternalError.
RelativeGradings integrateRelative(const GridDiagram& d);

struct GradingAssignment {
    std::vector<Generator> gens;
    std::vector<int> spinc;
    std::vector<Rational> maslov, alexander;
};
GradingAssignment anchorGradings(const GridDiagram& d);

}  // namespace lensgrid
