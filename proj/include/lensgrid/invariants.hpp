#pragma once
// tau vectors and the obstructions derived from them.

#include <string>
#include <vector>

#include "lensgrid/algebra.hpp"
#include "lensgrid/engine.hpp"
#include "lensgrid/grid.hpp"
#include "lensgrid/rational.hpp"

namespace lensgrid {

struct TauProfile {
    int p = 1, q = 0;
    int homClass = 0;
    std::vector<Rational> tau;         // raw, per Spin^c label
    std::vector<Rational> reference;   // r_s subtracted before shifting (zero when nullhomologous)
    std::vector<Rational> tauShifted;  // tau - r + shift, minimum 0
    Rational shift;
};

// Runs the engine. For a knot in a nonzero class the simple knot of the same
// class is computed too, to normalize tau.
TauProfile tauProfile(const GridDiagram& d, const EngineOptions& opt = {});
TauProfile profileFromTau(int p, int q, int homClass, std::vector<Rational> tau, std::vector<Rational> reference);
// Alexander degree of the simple knot's generator in each class.
std::vector<Rational> simpleKnotReference(int p, int q, int k, const EngineOptions& opt = {});

// Shift by the unique integer making the minimum 0; throws ValidationError
// when pairwise differences are not integers.
std::vector<Rational> tauShifted(const std::vector<Rational>& tau);
Rational shiftAmount(const std::vector<Rational>& tau);

Rational localityObstruction(const TauProfile& t);

long latticeDistance(const std::vector<long>& x, const std::vector<long>& y);
long latticeDistance(const std::vector<Rational>& x, const std::vector<Rational>& y);

long plGenusLowerBound(const TauProfile& a, const TauProfile& b);

enum class Verdict { Distinguished, Inconclusive };
const char* verdictName(Verdict v);
Verdict almostConcordanceReport(const TauProfile& a, const TauProfile& b);

enum class LPrime { LPrime, Unknown };
const char* lPrimeName(LPrime c);
LPrime lPrimeCertificate(const HomologyTable& hfk);

}  // namespace lensgrid
