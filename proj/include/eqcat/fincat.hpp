#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eqcat/group.hpp"

namespace eqcat {

struct MorphismSpec {
    std::string name;
    int src;
    int tgt;
};

// Permutations of objects and morphisms induced by one group element.
struct CatAction {
    std::vector<int> objects;
    std::vector<int> morphisms;
};

// Finite category with an optional strict action of a finite group by functors.
class GFinCat {
public:
    GFinCat() = default;
    // compose lists (g, f, g.f) for every composable pair; validated.  The
    // cubic associativity check may be skipped when composition is inherited
    // from an associative operation, such as composing permutations.
    GFinCat(std::vector<std::string> objects, std::vector<MorphismSpec> morphisms, std::vector<int> identities,
            const std::vector<std::array<int, 3>>& compose, GroupPtr group = nullptr,
            std::vector<CatAction> action = {}, bool check_associativity = true);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }
    const std::string& object_name(int o) const { return objects_[static_cast<std::size_t>(o)]; }
    const std::string& morphism_name(int m) const { return morphisms_[static_cast<std::size_t>(m)].name; }
    int src(int m) const { return morphisms_[static_cast<std::size_t>(m)].src; }
    int tgt(int m) const { return morphisms_[static_cast<std::size_t>(m)].tgt; }
    int identity(int o) const { return identities_[static_cast<std::size_t>(o)]; }
    // g after f; requires src(g) == tgt(f).
    int compose(int g, int f) const;
    const std::vector<int>& hom(int a, int b) const;

    bool has_action() const { return group_ != nullptr; }
    const GroupPtr& group() const { return group_; }
    int act_object(int g, int o) const { return action_[static_cast<std::size_t>(g)].objects[static_cast<std::size_t>(o)]; }
    int act_morphism(int g, int m) const {
        return action_[static_cast<std::size_t>(g)].morphisms[static_cast<std::size_t>(m)];
    }
    const std::vector<CatAction>& action() const { return action_; }

    std::optional<int> find_object(std::string_view name) const;
    bool is_groupoid() const;
    std::optional<int> inverse(int m) const;

private:
    void validate(bool check_associativity);

    std::vector<std::string> objects_;
    std::vector<MorphismSpec> morphisms_;
    std::vector<int> identities_;
    std::unordered_map<std::uint64_t, int> compose_;
    std::vector<std::vector<int>> homs_;
    GroupPtr group_;
    std::vector<CatAction> action_;
};

// JSON format documented in the README; action elements resolved by name.
GFinCat load_category(std::string_view json_text, GroupPtr group = nullptr);

GFinCat terminal_category();
GFinCat discrete_category(int n);
GFinCat group_as_category(const FiniteGroup& g);
// Objects are points; one morphism y <- x per ordered pair, named "y<-x".
// With a group, point_action[g] permutes the points and morphisms move diagonally.
GFinCat chaotic(int n, GroupPtr group = nullptr, const std::vector<std::vector<int>>& point_action = {});
GFinCat chaotic(const std::vector<std::string>& names, GroupPtr group = nullptr,
                const std::vector<std::vector<int>>& point_action = {});
// The translation G-category on G.
GFinCat chaotic_group(GroupPtr group);

// Actions combine when both sides carry the same group.
GFinCat product(const GFinCat& a, const GFinCat& b);
GFinCat coproduct(const GFinCat& a, const GFinCat& b);

struct FunctorVal {
    std::shared_ptr<const GFinCat> source;
    std::shared_ptr<const GFinCat> target;
    std::vector<int> object_map;
    std::vector<int> morphism_map;
};

std::optional<std::string> functor_failure(const GFinCat& a, const GFinCat& b, const std::vector<int>& objects,
                                           const std::vector<int>& morphisms);
FunctorVal identity_functor(std::shared_ptr<const GFinCat> c);

struct NatTrans {
    int source;
    int target;
    std::vector<int> components;
};

struct FunctorCategory {
    GFinCat category;
    std::vector<FunctorVal> functors;
    std::vector<NatTrans> transformations;
};

constexpr std::int64_t kDefaultFunctorBudget = 100000;

// Functors a -> b and natural transformations; conjugation action when
// either side carries one.
FunctorCategory functor_category(std::shared_ptr<const GFinCat> a, std::shared_ptr<const GFinCat> b,
                                 std::int64_t budget = kDefaultFunctorBudget);

// The functor Cat(a, b) -> Cat(a, c) given by composing with p: b -> c.
FunctorVal postcompose(const FunctorCategory& ab, const FunctorCategory& ac, const FunctorVal& p);

struct TwistedHom {
    FunctorCategory hom;
    FunctorVal iota;
};

// Cat(G~, a) with conjugation action and the inclusion of constant functors.
TwistedHom twisted_hom(GroupPtr group, std::shared_ptr<const GFinCat> a,
                       std::int64_t budget = kDefaultFunctorBudget);

struct FixedSubcategory {
    GFinCat category;
    std::vector<int> objects;    // indices in the ambient category
    std::vector<int> morphisms;
};

FixedSubcategory fixed_subcategory(const GFinCat& c, const Subgroup& h);

// Quotient by a free action of pi given as functor permutations.
GFinCat orbit_category(const GFinCat& c, const FiniteGroup& pi, const std::vector<CatAction>& action);

struct SkeletonClass {
    int representative;
    int size;
    std::int64_t automorphisms;
    friend bool operator==(const SkeletonClass&, const SkeletonClass&) = default;
};

// Connected components of a groupoid, keyed by least object.
std::vector<SkeletonClass> skeleton(const GFinCat& c);
// Full subcategory on the class representatives.
GFinCat skeleton_category(const GFinCat& c);

struct EquivalenceVerdict {
    bool essentially_surjective = true;
    bool fully_faithful = true;
    std::string witness;
    bool equivalence() const { return essentially_surjective && fully_faithful; }
};

EquivalenceVerdict check_equivalence(const FunctorVal& f);

// Inclusion of a full subcategory given by object indices.
FunctorVal full_inclusion(std::shared_ptr<const GFinCat> c, const std::vector<int>& objects);
FunctorVal restrict_functor(const FunctorVal& f, const FixedSubcategory& src, const FixedSubcategory& dst);

}  // namespace eqcat
