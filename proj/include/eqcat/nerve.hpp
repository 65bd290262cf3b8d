#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "eqcat/fincat.hpp"
#include "eqcat/group.hpp"

namespace eqcat {

// Levels 0..qmax of the nerve.  A q-simplex is a chain of q composable
// morphisms f_1, ..., f_q with tgt(f_i) == src(f_{i+1}); a 0-simplex is
// stored as the one-element chain {object}.
struct SimplicialTruncation {
    int qmax = 0;
    std::vector<std::vector<std::vector<int>>> simplices;
    // face[q][s][i] = d_i of simplex s at level q, an index into level q - 1 (q >= 1).
    std::vector<std::vector<std::vector<int>>> face;
    // degeneracy[q][s][i] = s_i of simplex s at level q, into level q + 1 (q < qmax).
    std::vector<std::vector<std::vector<int>>> degeneracy;

    std::size_t size(int q) const { return simplices[static_cast<std::size_t>(q)].size(); }
};

constexpr std::uint64_t kDefaultNerveBudget = 2'000'000;

SimplicialTruncation nerve_truncated(const GFinCat& c, int qmax, std::uint64_t budget = kDefaultNerveBudget);

// First simplicial identity violated on the stored range, if any.
std::optional<std::string> simplicial_identity_failure(const SimplicialTruncation& n);

// Nondegenerate simplices: chains containing no identity.
std::vector<std::vector<int>> nondegenerate(const GFinCat& c, const SimplicialTruncation& n);

struct Component {
    int representative;
    int size;
    std::int64_t vertex_order;
    friend bool operator==(const Component&, const Component&) = default;
};

// Connected components of a groupoid, keyed by least object; NotAGroupoid otherwise.
std::vector<Component> pi0_and_vertex(const GFinCat& c);

// Finitely generated abelian group Z^rank + sum of Z/t.
struct AbelianGroup {
    int rank = 0;
    std::vector<std::int64_t> torsion;  // invariant factors > 1, each dividing the next
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

std::string format_abelian(const AbelianGroup& a);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Nonzero invariant factors of an integer matrix, ascending.
std::vector<std::int64_t> smith_invariants(IntMatrix m);

struct Homology {
    std::vector<AbelianGroup> groups;  // degrees 0..qmax-1, unaffected by truncation
    AbelianGroup top;                  // degree qmax of the truncated complex
    // boundary[q] maps normalized q-chains to (q-1)-chains; rows index level q - 1.
    std::vector<IntMatrix> boundary;
    std::vector<int> chain_ranks;      // nondegenerate simplices per level
};

Homology homology(const GFinCat& c, int qmax = 3, std::uint64_t budget = kDefaultNerveBudget);

// Boundary matrices as integer CSV, one block per degree headed by "# d<q> rows x cols".
void write_chains_csv(std::ostream& out, const Homology& h);

// Components and vertex orders of the H-fixed part of Cat(G~, Pi) against
// homomorphism classes H -> Pi and their centralizers.
struct FixedPointCheck {
    int components = 0;
    std::multiset<std::int64_t> vertex_orders;
    int expected_components = 0;
    std::multiset<std::int64_t> expected_orders;
    std::uint64_t fixed_objects = 0;
    bool explicit_model = false;  // built the full functor category rather than the orbit model
    std::string witness;          // internal inconsistency of the orbit model, if any
    bool pass() const {
        return witness.empty() && components == expected_components && vertex_orders == expected_orders;
    }
};

// Functor categories with at most this many functors are built explicitly.
constexpr std::uint64_t kExplicitFunctorLimit = 12;

FixedPointCheck bgpi_fixed_check(GroupPtr g, const FiniteGroup& pi, const Subgroup& h,
                                 std::uint64_t object_budget = 50'000'000);
// Same computation forcing one model; the explicit one is bounded by kExplicitFunctorLimit.
FixedPointCheck bgpi_fixed_check_explicit(GroupPtr g, const FiniteGroup& pi, const Subgroup& h);
FixedPointCheck bgpi_fixed_check_orbit(GroupPtr g, const FiniteGroup& pi, const Subgroup& h,
                                       std::uint64_t object_budget = 50'000'000);

}  // namespace eqcat
