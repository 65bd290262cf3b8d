#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "eqcat/fincat.hpp"
#include "eqcat/group.hpp"
#include "eqcat/perm.hpp"
#include "eqcat/report.hpp"

namespace eqcat {

// (q, r) -> (s q, t r) on j x k in lexicographic order.
Perm tensor_perm(const Perm& s, const Perm& t);
// Sends the block-ordered union over lexicographic (q, r) of h_q x i_r to
// (union h_q) x (union i_r) in lexicographic order.
Perm delta_perm(std::span<const int> h, std::span<const int> i);
// Sends position of (q, r) in lex(j x k) to the position of (r, q) in lex(k x j).
Perm tau_perm(int j, int k);

// An object of arity j: one permutation in Sigma_j per group element.  With
// the trivial group this is a single permutation.  Stored inline, since the
// verifiers build hundreds of millions of these.
class OpObject {
public:
    static constexpr int kMaxGroupOrder = 8;

    OpObject() = default;
    explicit OpObject(std::size_t n, const Perm& p = Perm());
    OpObject(std::initializer_list<Perm> perms);

    std::size_t size() const { return n_; }
    Perm& operator[](std::size_t h) { return p_[h]; }
    const Perm& operator[](std::size_t h) const { return p_[h]; }
    const Perm& front() const { return p_[0]; }
    const Perm* begin() const { return p_.data(); }
    const Perm* end() const { return p_.data() + n_; }

    friend bool operator==(const OpObject& a, const OpObject& b) {
        return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
    }
    friend std::strong_ordering operator<=>(const OpObject& a, const OpObject& b) {
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::uint8_t n_ = 0;
    std::array<Perm, kMaxGroupOrder> p_{};
};

std::string format_object(const OpObject& c);

// The operad of functors G~ -> Sigma~_j; every component is chaotic, so the
// structure is carried by objects.  G trivial gives the Barratt-Eccles operad.
// Groups of order above OpObject::kMaxGroupOrder are rejected.
class CatOperad {
public:
    CatOperad(GroupPtr group, int jmax);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    int jmax() const { return jmax_; }

    // (j!)^|G|; SizeBudgetExceeded past 2^62.
    std::uint64_t object_count(int j) const;
    OpObject object(int j, std::uint64_t index) const;
    std::uint64_t index_of(const OpObject& c) const;
    static int arity(const OpObject& c) { return c.front().degree(); }

    OpObject unit() const { return constant(Perm(1)); }
    // The constant function at p: the inclusion of the non-equivariant operad.
    OpObject constant(const Perm& p) const;
    OpObject gamma(const OpObject& c, std::span<const OpObject> d) const;
    OpObject act_sigma(const OpObject& c, const Perm& s) const;
    // (g c)(h) = c(g^-1 h).
    OpObject act_group(int g, const OpObject& c) const;

    // Component j as a chaotic G-category (object names from format_object).
    GFinCat component(int j, std::uint64_t budget = 5000) const;

    // Replace gamma at one input tuple; used to exercise the verifier.
    void override_gamma(const OpObject& c, const std::vector<OpObject>& d, OpObject value);

private:
    GroupPtr group_;
    int jmax_;
    std::map<std::vector<OpObject>, OpObject> gamma_override_;
};

CatOperad barratt_eccles(int jmax);
CatOperad og_operad(GroupPtr group, int jmax);

struct VerifyBounds {
    int jmax = 3;
    // Families of input tuples larger than this are sampled rather than exhausted.
    std::uint64_t family_budget = 12'000'000;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 20240601;
};

// Unit, associativity, Sigma-equivariance, and (for nontrivial G)
// G-equivariance of gamma on every input tuple within the bounds.
LawReport verify_operad(const CatOperad& op, const VerifyBounds& bounds);

// Explicit model of the quotient of arity j by Sigma_j: objects are functions
// a: G -> Sigma_j with a(e) = e, morphisms a -> b are all s in Sigma_j.
struct QuotientModel {
    GFinCat quotient;
    std::vector<OpObject> functions;  // object index -> a
    FixedSubcategory fixed;
    // Every H-fixed object restricts to an anti-homomorphism on H, and every
    // function satisfying the fixed-point equation is present.
    bool fixed_are_antihoms = false;
};

QuotientModel og_quotient_and_fixed(GroupPtr group, int j, const Subgroup& h, std::uint64_t triple_budget = 5'000'000);

// Self-pairing of an operad of the above kind; objects pair by tensor_perm pointwise.
class Pairing {
public:
    explicit Pairing(const CatOperad& op) : op_(op) {}
    const CatOperad& operad() const { return op_; }
    OpObject box(const OpObject& c, const OpObject& d) const;
    void override_box(const OpObject& c, const OpObject& d, OpObject value);

private:
    const CatOperad& op_;
    std::map<std::pair<OpObject, OpObject>, OpObject> box_override_;
};

struct PairingBounds {
    int jk_max = 3;     // arities j, k of the paired objects
    int inner_max = 3;  // bound on sum h_q and on sum i_r in the distributivity law
    // Also admit larger inner sums whose product stays within this.
    int inner_product_max = 6;
};

// Equivariance, unit, distributivity through delta_perm, and the symmetry
// law through tau_perm.
LawReport verify_pairing(const Pairing& p, const PairingBounds& bounds);

}  // namespace eqcat
