#pragma once
// Builders for knot families and diagram operations.

#include <string>

#include "lensgrid/grid.hpp"

namespace lensgrid {

// p >= 3: markings X=(2,3), O=(5,0) in L(p,1); p = 2: the 3-row diagram.
GridDiagram kpDiagram(int p);
// add an n x n block on the right: a diagram in L(p+1,1)
GridDiagram expand(const GridDiagram& d);
// reflect columns, q -> p - q
GridDiagram mirror(const GridDiagram& d);
// grid number 1 for k != 0; the unknot (k = 0) needs two rows
GridDiagram simpleKnotDiagram(int p, int q, int k);
GridDiagram unknotDiagram(int p, int q);
// h must be a p = 1 diagram; spliced in next to the X of row 0
GridDiagram connectedSum(const GridDiagram& g, const GridDiagram& h);
GridDiagram stabilize(const GridDiagram& d);
// move row 0 to the top, keeping the knot
GridDiagram rotateRows(const GridDiagram& d);
GridDiagram rotateColumns(const GridDiagram& d, int k);
// right-handed trefoil on a 5 x 5 classical grid
GridDiagram trefoilDiagram();

struct FamilySpec {
    std::string family;  // unknot | simple | kp
    int p = 1, q = 0, k = 0;
};
GridDiagram familyDiagram(const FamilySpec& f);

}  // namespace lensgrid
