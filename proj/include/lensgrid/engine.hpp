#pragma once
// Per-Spin^c pipeline: assemble the O-blocked complex with closed-form
// gradings, cancel Alexander-preserving arrows, anchor Maslov degrees on the
// top homology class, read off tilde homology and tau.

#include <functional>
#include <string>
#include <vector>

#include "lensgrid/algebra.hpp"
#include "lensgrid/grid.hpp"

namespace lensgrid {

struct EngineOptions {
    int threads = 1;
    bool keepFull = false;        // retain the unreduced anchored complex
    bool checkSquare = true;      // verify d^2 = 0 on the assembled complex
    std::vector<int> classes;     // empty: all
    std::function<void(const std::string&)> log;
};

struct ClassResult {
    int spinc = 0;
    std::uint64_t generators = 0, arrows = 0;
    std::int64_t rootCover2 = 0;
    Rational maslovShift;         // M = (cover2 - rootCover2)/2p + maslovShift
    int p = 1;
    FilteredComplex reduced;      // anchored; only Alexander-dropping arrows remain
    FilteredComplex full;         // anchored, when keepFull
    std::vector<LevelEntry> oBlocked;
    Rational tau;
    Rational maslovAt(std::int64_t cover2) const { return Rational(cover2 - rootCover2, 2LL * p) + maslovShift; }
};

struct DiagramResult {
    GridDiagram diagram;
    int homClass = 0;
    std::vector<ClassResult> classes;  // indexed by label (only computed ones filled)
    HomologyTable tilde, oBlocked, hfk;
    std::vector<Rational> tau;
};

DiagramResult analyzeDiagram(const GridDiagram& d, const EngineOptions& opt);

// Complex of one flavor over all classes, anchored.
FilteredComplex buildComplex(const GridDiagram& d, Flavor flavor);

}  // namespace lensgrid
