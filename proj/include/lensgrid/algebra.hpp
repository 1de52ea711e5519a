#pragma once
// Bigraded, filtered chain complexes over F_2.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "lensgrid/rational.hpp"

namespace lensgrid {

struct GridDiagram;

enum class Flavor { tilde, oBlocked, graded };
const char* flavorName(Flavor f);

struct BasisElement {
    std::uint64_t id = 0;  // generator rank for grid complexes
    int spinc = 0;
    Rational maslov, alexander;
};

struct FilteredComplex {
    Flavor flavor = Flavor::oBlocked;
    int tensorFactors = 0;  // n-1 extra V factors carried by a grid complex
    std::vector<BasisElement> basis;
    std::vector<std::vector<std::uint32_t>> diff;  // sorted successor lists

    std::size_t size() const { return basis.size(); }
    int find(std::uint64_t id) const;  // index of basis element with this id, or -1
};

// (spinc, maslov, alexander) -> rank
struct HomologyTable {
    std::map<std::tuple<int, Rational, Rational>, long> entries;

    long rank() const;
    long rank(int spinc) const;
    HomologyTable restrict(int spinc) const;
    void add(int s, Rational m, Rational a, long r);
    friend bool operator==(const HomologyTable&, const HomologyTable&) = default;
};

// Throws InternalError on a grading or d^2 violation.
void checkComplex(const FilteredComplex& c);
bool squaresToZero(const FilteredComplex& c);

// tilde: bigraded homology. oBlocked: ranks of the associated graded of
// homology for the Alexander filtration. graded: tilde homology with the
// tensorFactors copies of F_(0,0) + F_(-1,-1) divided out.
HomologyTable homology(const FilteredComplex& c);

FilteredComplex filtrationSublevel(const FilteredComplex& c, int s, const Rational& a);

struct ImageClass {
    Rational maslov, level;  // level: least sublevel of `full` carrying the class
};
std::vector<ImageClass> inducedImage(const FilteredComplex& sub, const FilteredComplex& full, int s);

FilteredComplex cancelPair(const FilteredComplex& c, std::uint32_t x, std::uint32_t y);
FilteredComplex reduce(const FilteredComplex& c);
void reduceInPlace(FilteredComplex& c);

// Peel a (M,A) table by (1 + t)^k with t the (-1,-1) shift.
HomologyTable deconvolve(const HomologyTable& h, int k);
HomologyTable convolve(const HomologyTable& h, int k);

std::string dumpComplex(const FilteredComplex& c);
FilteredComplex parseDump(const std::string& text);

// E-infinity style data of one Spin^c class: for each Maslov degree, the
// filtration levels at which homology classes are born.
struct LevelEntry {
    Rational maslov, level;
    long rank;
};
std::vector<LevelEntry> filteredHomology(const FilteredComplex& c, int s);

}  // namespace lensgrid
