#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqcat/group.hpp"

namespace eqcat {

// A finite G-set on points {0,...,size-1}; files and reports use 1-based points.
class FinGSet {
public:
    // action[g][x] is g.x; must be a homomorphism G -> Sigma_size.
    FinGSet(GroupPtr group, int size, std::vector<std::vector<int>> action);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    int size() const { return size_; }
    int act(int g, int x) const { return action_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
    const std::vector<int>& perm(int g) const { return action_[static_cast<std::size_t>(g)]; }

private:
    GroupPtr group_;
    int size_;
    std::vector<std::vector<int>> action_;
};

FinGSet make_gset(GroupPtr group, int size, std::vector<std::vector<int>> action);
FinGSet empty_gset(GroupPtr group);
FinGSet trivial_gset(GroupPtr group, int size);
FinGSet regular_gset(GroupPtr group);
// G/H with cosets ordered by least element; point 0 is the coset eH.
FinGSet coset_gset(GroupPtr group, const Subgroup& h);

// {"group": name, "size": int, "action": {element: [1-based images]}}.
// Elements missing from "action" are filled in only when they are products
// of listed ones; the result is then validated as a homomorphism.
FinGSet load_gset(std::string_view json_text, const std::function<GroupPtr(const std::string&)>& resolve);
std::string gset_to_json(const FinGSet& a);

// Orbits sorted by least point; each orbit sorted.
std::vector<std::vector<int>> orbits(const FinGSet& a);
Subgroup isotropy(const FinGSet& a, int x);

struct OrbitTypeDecomposition {
    // (index into subgroup_classes, number of orbits of that type), by class index.
    std::vector<std::pair<int, int>> entries;
    friend bool operator==(const OrbitTypeDecomposition&, const OrbitTypeDecomposition&) = default;
};

OrbitTypeDecomposition orbit_type(const FinGSet& a);
OrbitTypeDecomposition orbit_type(const FinGSet& a, const std::vector<SubgroupClass>& classes);

struct GMap {
    std::vector<int> values;
};

bool is_equivariant(const FinGSet& a, const FinGSet& b, const std::vector<int>& f);

// An equivariant bijection a -> b when one exists.
std::optional<GMap> gset_iso(const FinGSet& a, const FinGSet& b);

FinGSet disjoint_union(const FinGSet& a, const FinGSet& b);
// Point (x, y) sits at x * b.size() + y.
FinGSet product_gset(const FinGSet& a, const FinGSet& b);
std::vector<int> fixed_points(const FinGSet& a, const Subgroup& h);
// Result is a set over subgroup_as_group(G, h).
FinGSet restrict(const FinGSet& a, const Subgroup& h);

struct HomClass {
    std::vector<int> representative;
    int class_size;
    int centralizer_order;
};

// Homomorphisms h -> pi up to pi-conjugacy; representative is the
// lexicographically least member, classes in order of representatives.
std::vector<HomClass> hom_classes(const FiniteGroup& h, const FiniteGroup& pi);

// Homomorphism G -> Sigma_n (as group element indices of symmetric_group(n))
// turned into a G-set.
FinGSet gset_from_hom(GroupPtr group, int n, const std::vector<int>& hom);

// Every G-set of the given size whose restriction to h is isomorphic to target.
std::vector<FinGSet> extensions_of_restriction(GroupPtr group, const Subgroup& h, const FinGSet& target);

}  // namespace eqcat
