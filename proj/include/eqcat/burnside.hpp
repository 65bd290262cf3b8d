#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqcat/gset.hpp"

namespace eqcat {

// Element of the Burnside ring: coefficients in subgroup_classes order.
struct BurnsideElement {
    GroupPtr group;
    std::vector<std::int64_t> coefficients;
};

BurnsideElement burnside_class(const FinGSet& a);
// [G/H] for the class with the given index.
BurnsideElement burnside_basis(GroupPtr group, int class_index);
BurnsideElement burnside_add(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement burnside_mul(const BurnsideElement& a, const BurnsideElement& b);

using MarksTable = std::vector<std::vector<std::int64_t>>;

// m[i][k] = number of points of G/H_i fixed by H_k.
MarksTable table_of_marks(const FiniteGroup& g);
// Marks of an element: sum of coefficient times row.
std::vector<std::int64_t> marks(const BurnsideElement& a, const MarksTable& table);

std::string marks_text(const FiniteGroup& g, const MarksTable& table);
std::string marks_csv(const FiniteGroup& g, const MarksTable& table);

struct TomDieckPi0 {
    std::vector<std::int64_t> ranks;          // |X^H / WH| per class
    std::int64_t total = 0;
    std::vector<std::int64_t> oracle_ranks;   // classes of orbits G/H -> X over X, per class
    bool pass() const { return ranks == oracle_ranks; }
};

// Ranks of the pi_0 splitting, cross-checked against iso classes of orbits
// over X found by exhaustive search of equivariant maps.
TomDieckPi0 tom_dieck_pi0(const FinGSet& x);

// All equivariant maps a -> b, by backtracking over point images.
std::vector<std::vector<int>> equivariant_maps(const FinGSet& a, const FinGSet& b);

}  // namespace eqcat
