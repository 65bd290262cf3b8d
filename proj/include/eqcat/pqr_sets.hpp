#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "eqcat/fincat.hpp"
#include "eqcat/free_perm.hpp"
#include "eqcat/gset.hpp"
#include "eqcat/report.hpp"

namespace eqcat {

// A point of U: a coset of the class representative in a numbered copy of
// that orbit.  Ordered by (class, copy, coset).
struct UPoint {
    int cls = 0;
    std::int64_t copy = 0;
    int coset = 0;
    friend auto operator<=>(const UPoint&, const UPoint&) = default;
};

// A point of the copower ^jU (slot, one coordinate) or of the power U^j
// (slot 0, j coordinates).  A point of U is slot 0 with one coordinate.
struct Elem {
    int slot = 0;
    std::vector<UPoint> coords;
    friend auto operator<=>(const Elem&, const Elem&) = default;
};

struct Shape {
    bool power = false;
    int n = 1;
    friend bool operator==(const Shape& a, const Shape& b) {
        return a.n == b.n && (a.power == b.power || a.n == 1);
    }
};

inline Shape copower_shape(int j) { return {false, j}; }
inline Shape power_shape(int j) { return {true, j}; }
inline constexpr Shape kUnitShape{false, 1};

// An equivariant bijection between countable H-sets given in finite H-stable
// shells.  The k-th orbit of a type in the source goes to the k-th orbit of
// that type in the target; base points (least in their orbit) are aligned by
// least conjugators.  Forward needs every source type to recur in the target,
// backward the converse.
class OrbitMatching {
public:
    using Act = std::function<Elem(int, const Elem&)>;
    struct Side {
        Act act;
        std::function<std::vector<Elem>(int)> shell;
        std::function<int(const Elem&)> level;
    };

    OrbitMatching(FiniteGroup group, Side source, Side target);

    Elem forward(const Elem& x);
    Elem backward(const Elem& y);

private:
    struct Orbit {
        Elem base;
        int conj;  // conj Stab(base) conj^-1 is the class representative
    };
    struct Memo {
        Side side;
        int processed = 0;
        std::map<Elem, std::pair<int, int>> index;  // base -> (type, position)
        std::vector<std::vector<Orbit>> by_type;
    };

    void process(Memo& m, int level);
    void reach(Memo& m, int type, std::size_t count);
    Elem carry(Memo& from, Memo& to, const Elem& x);

    FiniteGroup group_;
    std::vector<SubgroupClass> classes_;
    Memo source_, target_;
};

class Universe;

// The canonical based G-bijection U^j -> U.  A tuple lies in a finite block
// fixed by its classes and copies.  Orbits of type K across the block
// patterns are numbered, and the tuple lands in the copy of G/K given by a
// rank of its copy numbers and that number; base points are aligned by least
// conjugators.
class CanonicalPower {
public:
    CanonicalPower(const Universe& u, int j);
    Elem forward(const Elem& x) const;
    Elem backward(const Elem& y) const;

private:
    struct BlockOrbit {
        std::vector<int> base;  // least coset tuple
        int type = 0;
        int conj = 0;           // conj Stab(base) conj^-1 is the class representative
        std::int64_t position = 0;
    };
    struct Pattern {
        std::vector<BlockOrbit> orbits;
        std::map<std::vector<int>, int> by_base;
    };

    const Universe& u_;
    int j_;
    std::map<std::vector<int>, Pattern> patterns_;                   // by class tuple
    std::vector<std::vector<std::pair<std::vector<int>, int>>> by_type_;  // (class tuple, orbit)
    std::vector<int> base_coset_;                                    // coset fixed exactly by the representative
};

// U = disjoint union over subgroup classes of copies 0, 1, ... of G/H.
// Shells are whole copies, so U is enumerated in order type omega.
class Universe {
public:
    Universe(GroupPtr group, int depth);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    const std::vector<SubgroupClass>& classes() const { return classes_; }
    int depth() const { return depth_; }
    int copy_size() const { return copy_size_; }

    UPoint act(int g, const UPoint& u) const;
    Elem act(int g, const Elem& x) const;
    UPoint basepoint() const;
    Subgroup isotropy(const UPoint& u) const;
    std::vector<UPoint> copy_points(int copy) const;
    // Copies 0..depth-1, in point order.
    std::vector<UPoint> prefix(int depth) const;
    std::vector<UPoint> prefix() const { return prefix(depth_); }
    std::string format(const UPoint& u) const;
    std::string format(const Elem& x) const;

    // Memoized per arity.
    const CanonicalPower& power(int j) const;

private:
    GroupPtr group_;
    int depth_;
    std::vector<SubgroupClass> classes_;
    std::vector<FinGSet> orbits_;
    int copy_size_ = 0;
    mutable std::map<int, std::unique_ptr<CanonicalPower>> powers_;
};

using UniversePtr = std::shared_ptr<const Universe>;
UniversePtr universe(GroupPtr group, int depth);

enum class ExprOp {
    Identity,
    Interleave,    // ^jU -> U, (i, (H,n,c)) -> (H, j n + i, c)
    Deinterleave,  // its inverse
    InjectSlot,    // U -> ^jU, u -> (i, u)
    Translate,     // g on every coordinate
    Compose,       // args[0] after args[1]
    Coproduct,
    Product,
    SigmaCopower,  // (i, u) -> (s(i), u)
    SigmaPower,    // (s y)_{s(i)} = y_i
    Power,         // canonical U^j -> U
    PowerInverse,
    Cases,         // (i, u) -> args[i](u)
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprOp op;
    Shape dom, cod;
    int j = 0;
    int slot = 0;
    int g = 0;
    Perm sigma;
    std::vector<ExprPtr> args;
};

ExprPtr expr_identity(Shape s = kUnitShape);
ExprPtr expr_interleave(int j);
ExprPtr expr_deinterleave(int j);
ExprPtr expr_inject(int j, int slot);
ExprPtr expr_translate(int g, Shape s = kUnitShape);
ExprPtr expr_compose(ExprPtr f, ExprPtr g);
ExprPtr expr_compose(std::initializer_list<ExprPtr> chain);  // leftmost applied last
ExprPtr expr_coproduct(std::vector<ExprPtr> parts);
ExprPtr expr_product(std::vector<ExprPtr> parts);
ExprPtr expr_sigma_copower(const Perm& s);
ExprPtr expr_sigma_power(const Perm& s);
ExprPtr expr_power(int j);
ExprPtr expr_power_inverse(int j);
ExprPtr expr_cases(std::vector<ExprPtr> parts);
// Inverse of an expression built from bijective generators; ShapeMismatch otherwise.
ExprPtr expr_inverse(const FiniteGroup& g, const ExprPtr& f);
std::string format_expr(const ExprPtr& f);

Elem evaluate(const Universe& u, const ExprPtr& f, const Elem& x);
inline Elem upoint(const UPoint& u) { return Elem{0, {u}}; }

// Operad structure.  P(j): injections ^jU -> U; Q(j): based injections
// U^j -> U; R(j): based bijections U^j -> U.
ExprPtr pg_gamma(const ExprPtr& psi, const std::vector<ExprPtr>& phis);
ExprPtr qg_gamma(const ExprPtr& psi, const std::vector<ExprPtr>& phis);
ExprPtr pg_sigma(const ExprPtr& phi, const Perm& s);
ExprPtr qg_sigma(const ExprPtr& phi, const Perm& s);
// g phi g^-1.
ExprPtr conjugate_expr(const FiniteGroup& group, int g, const ExprPtr& phi);
ExprPtr rg_bijection(int j);
// On the I-th copy (lexicographic) psi (phi_{i_1} x ... x phi_{i_k}) psi^-1.
ExprPtr lambda_action(const FiniteGroup& group, const ExprPtr& psi, const std::vector<ExprPtr>& phis);

// Random elements, for extensional checks.
Elem sample_point(const Universe& u, Shape s, std::mt19937_64& rng);
ExprPtr sample_unary(const Universe& u, std::mt19937_64& rng, bool based);
ExprPtr sample_pg(const Universe& u, int j, std::mt19937_64& rng);
ExprPtr sample_qg(const Universe& u, int j, std::mt19937_64& rng);
ExprPtr sample_rg(const Universe& u, int k, std::mt19937_64& rng);

struct PqrOptions {
    int depth = 3;
    int samples = 500;
    std::uint64_t seed = 1;
};

// Operad laws for P and Q, and the canonical bijections of R.
LawReport pq_laws(GroupPtr group, const PqrOptions& opt);
// The interchange conditions of the action of R on P.
LawReport lambda_laws(GroupPtr group, const PqrOptions& opt);
// Graph subgroups of Sigma_j x G fix an injection; subgroups meeting Sigma_j fix none.
LawReport fixed_object_dichotomy(GroupPtr group, int jmax, const PqrOptions& opt);

// A Lambda-equivariant injection ^jU -> U for Lambda the graph of rho: K -> Sigma_j,
// tabulated on ^jP for the prefix P.  Index slot * |P| + position in P.
std::vector<UPoint> graph_fixed_injection(const Universe& u, const Subgroup& k, const std::vector<Perm>& rho, int j);

// Finite sets of U and bijections.
using USubset = std::vector<UPoint>;         // sorted
using UBijection = std::map<UPoint, UPoint>;

// Largest morphism count materialized by e_category and egx_category.
constexpr std::uint64_t kSubsetMorphismLimit = 20000;

struct ECat {
    std::vector<USubset> objects;
    PermGroupoid groupoid;  // s: A -> B sends a_m to b_{s(m)}
};
ECat e_category(const Universe& u, const std::vector<UPoint>& points, int nmax);

struct EGXObject {
    USubset a;
    std::vector<int> p;  // label of a[m]
    friend auto operator<=>(const EGXObject&, const EGXObject&) = default;
};
struct EGXCat {
    std::vector<EGXObject> objects;
    PermGroupoid groupoid;
};
EGXCat egx_category(const Universe& u, const FinGSet& x, const std::vector<UPoint>& points, int nmax);

USubset theta_E(const Universe& u, const ExprPtr& phi, const std::vector<USubset>& parts);
// psi (alpha_1 + ... + alpha_j) phi^-1 : theta(phi; A) -> theta(psi; B).
UBijection theta_E_morphism(const Universe& u, const ExprPtr& phi, const ExprPtr& psi,
                            const std::vector<UBijection>& parts);
USubset xi_E(const Universe& u, const ExprPtr& phi, const std::vector<USubset>& parts);
UBijection xi_E_morphism(const Universe& u, const ExprPtr& phi, const ExprPtr& psi,
                         const std::vector<UBijection>& parts);
EGXObject theta_EGX(const Universe& u, const ExprPtr& phi, const std::vector<EGXObject>& parts);

// Action diagrams for theta and xi: exhaustive over subsets of a 4-point
// prefix for arities <= 2, sampled at arity 3.
LawReport e_action_laws(GroupPtr group, const PqrOptions& opt);
// The finite-set models against the G-set models, and the fixed objects over X.
LawReport e_model_laws(const FinGSet& x, int nmax, int depth);

struct OmegaSlice {
    Subgroup h;
    int arity = 0;
    std::uint64_t source_classes = 0;
    std::uint64_t target_classes = 0;
};
struct OmegaReport {
    LawReport laws;
    std::vector<OmegaSlice> slices;
};
// For every H <= G and j <= jmax: the H-fixed skeleton of the free side
// (truncated injections times X^j mod Sigma_j) against that of finite sets
// over X, through phi -> phi(1 + ... + 1).
OmegaReport omega_check(const FinGSet& x, int jmax);

}  // namespace eqcat
