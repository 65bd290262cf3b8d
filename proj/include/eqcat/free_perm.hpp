#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "eqcat/fincat.hpp"
#include "eqcat/gset.hpp"
#include "eqcat/operad.hpp"
#include "eqcat/report.hpp"

namespace eqcat {

// (s y)_{s(i)} = y_i: the left action of Sigma_j on j-tuples.
std::vector<int> act_tuple(const Perm& s, const std::vector<int>& y);

// Groupoid whose morphisms a -> b are labelled by permutations, composed as
// functions; built from explicit object lists, for the models below.
struct PermGroupoid {
    std::shared_ptr<const GFinCat> category;
    std::vector<Perm> labels;  // per morphism
    std::map<std::tuple<int, int, Perm>, int> index;
    int morphism(int a, int b, const Perm& s) const { return index.at({a, b, s}); }
};

// Objects 0..n-1 with the given hom sets; G acts through act_obj and act_mor.
PermGroupoid perm_groupoid(std::vector<std::string> names, const std::function<std::vector<Perm>(int, int)>& hom,
                           GroupPtr group = nullptr, const std::function<int(int, int)>& act_obj = {},
                           const std::function<Perm(int, int, int, const Perm&)>& act_mor = {});

// An object of the free category in arity j: a function alpha: G -> Sigma_j
// with alpha(e) = id, and a j-tuple of points of X.  A morphism a -> b is a
// permutation s with act_tuple(s, a.x) == b.x.
struct FreeObject {
    OpObject alpha;
    std::vector<int> x;
    int arity() const { return static_cast<int>(x.size()); }
    friend bool operator==(const FreeObject&, const FreeObject&) = default;
    friend std::strong_ordering operator<=>(const FreeObject& a, const FreeObject& b) {
        if (auto c = a.alpha <=> b.alpha; c != 0) return c;
        return a.x <=> b.x;
    }
};

std::string format_free_object(const FreeObject& a);

// The free genuine permutative G-category on X, arities 0..jmax, each
// component the balanced product of the operad component with X^j.
class FreeOG {
public:
    FreeOG(FinGSet x, int jmax);

    const FiniteGroup& group() const { return x_.group(); }
    const GroupPtr& group_ptr() const { return x_.group_ptr(); }
    const FinGSet& generator() const { return x_; }
    const CatOperad& operad() const { return op_; }
    int jmax() const { return jmax_; }

    // (j!)^(|G|-1) |X|^j; SizeBudgetExceeded past 2^62.
    std::uint64_t object_count(int j) const;
    FreeObject object(int j, std::uint64_t index) const;
    // The representative with alpha(e) = id of the orbit of (phi, z).
    FreeObject normalize(const OpObject& phi, const std::vector<int>& z) const;

    FreeObject act(int g, const FreeObject& a) const;
    bool is_morphism(const FreeObject& a, const FreeObject& b, const Perm& s) const;
    std::vector<Perm> hom(const FreeObject& a, const FreeObject& b) const;
    // g(s: a -> b) = b(g^-1) s a(g^-1)^-1 : ga -> gb.
    Perm act_morphism(int g, const FreeObject& a, const FreeObject& b, const Perm& s) const;

    // Every object of arity <= jmax.
    std::vector<FreeObject> objects() const;
    // Whole category with its G-action; throws past the object budget.
    PermGroupoid category(std::uint64_t object_budget = 400) const;

private:
    FinGSet x_;
    int jmax_;
    CatOperad op_;
};

// Index of an object in FreeOG::objects() order.
int free_object_index(const FreeOG& f, const FreeObject& a);

// H-fixed part of arity j, found twice: by applying the action, and from the
// characterization (alpha anti-homomorphic along H, the point map equivariant).
constexpr std::size_t kFixedGroupoidLimit = 150;

struct FixedFree {
    std::vector<FreeObject> objects;
    PermGroupoid groupoid;  // only built, and morphisms only compared, up to kFixedGroupoidLimit objects
    std::uint64_t scanned = 0;
    bool routes_agree = true;
    std::string witness;
};

FixedFree fixed_free(const FreeOG& f, const Subgroup& h, int j);

// Objects of the fixed category of j-pointed G-sets over X: a homomorphism
// rho: G -> Sigma_j and an equivariant map p: j -> X.
struct FGXObject {
    std::vector<Perm> rho;
    std::vector<int> p;
    int arity() const { return static_cast<int>(p.size()); }
    friend bool operator==(const FGXObject&, const FGXObject&) = default;
    friend auto operator<=>(const FGXObject&, const FGXObject&) = default;
};

struct FGXCat {
    std::vector<FGXObject> objects;
    PermGroupoid groupoid;  // morphisms are G-bijections f with p' f = p
};

FGXCat fgx_over(const FinGSet& x, int j);
std::vector<Perm> fgx_hom(const FGXObject& a, const FGXObject& b);

struct CatOneReport {
    LawReport laws;
    std::uint64_t source_objects = 0, target_objects = 0;
    std::uint64_t source_morphisms = 0, target_morphisms = 0;
};

// (alpha, x) -> (g -> alpha(g)^-1, i -> x_i), identity on permutations;
// checks it is a well-defined bijective functor.
CatOneReport catone_check(const FinGSet& x, int j);

// One class of the wreath-product skeleton: per subgroup class, a multiset
// of WH-orbits of X^H, with each orbit named by its least point.
struct SkeletonEntry {
    std::vector<std::pair<int, int>> signature;  // sorted (class index, orbit)
    int arity = 0;
    std::int64_t automorphisms = 0;          // prod k! |Stab_WH(x)|^k
    std::int64_t weyl_automorphisms = 0;     // prod k! |WH|^k
};

std::vector<SkeletonEntry> wreath_skeleton(const FinGSet& x, int jmax);
// Signature of the G-set over X given by (rho, p).
std::vector<std::pair<int, int>> orbit_signature(const FinGSet& x, const FGXObject& a);

struct CatTwoReport {
    LawReport laws;  // agreement of the three skeleta; literal Weyl orders separately
    std::uint64_t classes = 0;
};

CatTwoReport cattwo_check(const FinGSet& x, int jmax);

// f_!: apply a G-map to tuple entries; identity on permutations.
FreeObject shriek_object(const FreeObject& a, const std::vector<int>& f);
FunctorVal f_shriek(const FreeOG& src, const PermGroupoid& src_cat, const FreeOG& dst, const PermGroupoid& dst_cat,
                    const std::vector<int>& f);

// i^* for an injective G-map i: A -> B.  Entries outside the image are
// deleted, and alpha restricts to the kept positions, renumbered in order.
FreeObject istar_object(const FreeOG& a_side, const FreeObject& b, const std::vector<int>& i);
// The restriction of s: a -> b to the kept positions.
Perm istar_morphism(const FreeObject& a, const Perm& s, const std::vector<int>& i);
FunctorVal i_star(const FreeOG& b_side, const PermGroupoid& b_cat, const FreeOG& a_side, const PermGroupoid& a_cat,
                  const std::vector<int>& i);
void require_inclusion(const FinGSet& a, const FinGSet& b, const std::vector<int>& i);

// Pairing into the free category on X x Y: (phi box psi, lexicographic pairs).
FreeObject pair_objects(const FreeObject& a, const FreeObject& b, int y_size);

// Spans A -> B are objects over B x A.  Composition pairs, restricts along
// the diagonal of B, then projects B away.
struct SpanSets {
    GroupPtr group;
    std::vector<FinGSet> sets;  // candidates for A, B, C, D
};

FreeObject span_unit(const FinGSet& b);
FreeObject span_compose(const FinGSet& a, const FinGSet& b, const FreeObject& t, const FreeObject& s);
Perm span_compose_morphism(const FinGSet& a, const FinGSet& b, const FreeObject& t, const FreeObject& s,
                           const Perm& tau, const Perm& sigma);

struct SpanReport {
    LawReport laws;
    std::uint64_t boundary_excluded = 0;  // triples whose intermediate arity exceeds the cap
};

SpanReport span_laws(const SpanSets& sets, int jmax);

}  // namespace eqcat
