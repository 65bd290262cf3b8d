#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "eqcat/errors.hpp"
#include "eqcat/operad.hpp"

using namespace eqcat;

namespace {

GroupPtr grp(const std::string& name) { return std::make_shared<const FiniteGroup>(preset_group(name)); }

// Permutation from 1-based image list.
Perm one_based(std::initializer_list<int> images) {
    std::vector<int> v;
    for (int x : images) v.push_back(x - 1);
    return Perm(std::span<const int>(v));
}

bool law_passes(const LawReport& r, const std::string& name) {
    for (const auto& l : r.laws)
        if (l.law == name) return l.pass;
    ADD_FAILURE() << "no law " << name;
    return false;
}

// Brute force: homomorphisms H -> Sigma_j up to conjugacy, with centralizer orders.
std::multiset<std::int64_t> hom_class_centralizers(const FiniteGroup& g, const Subgroup& h, int j) {
    const auto members = h.members();
    const auto sig = all_perms(j);
    std::vector<std::vector<Perm>> homs;
    std::vector<std::size_t> pick(members.size(), 0);
    while (true) {
        bool ok = true;
        for (std::size_t a = 0; a < members.size() && ok; ++a)
            for (std::size_t b = 0; b < members.size() && ok; ++b) {
                const int ab = g.mul(members[a], members[b]);
                const auto c = static_cast<std::size_t>(std::find(members.begin(), members.end(), ab) - members.begin());
                if (sig[pick[c]] != sig[pick[a]] * sig[pick[b]]) ok = false;
            }
        if (ok) {
            std::vector<Perm> f;
            for (auto p : pick) f.push_back(sig[p]);
            homs.push_back(f);
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == sig.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    std::multiset<std::int64_t> out;
    std::vector<bool> seen(homs.size(), false);
    for (std::size_t a = 0; a < homs.size(); ++a) {
        if (seen[a]) continue;
        std::int64_t centralizer = 0;
        for (const auto& s : sig) {
            std::vector<Perm> conj;
            for (const auto& p : homs[a]) conj.push_back(s * p * s.inverse());
            if (conj == homs[a]) ++centralizer;
            for (std::size_t b = 0; b < homs.size(); ++b)
                if (homs[b] == conj) seen[b] = true;
        }
        out.insert(centralizer);
    }
    return out;
}

}  // namespace

TEST(OperadCore, TensorExamples) {
    EXPECT_EQ(tensor_perm(one_based({2, 1}), Perm(2)).cycles(), "(1 3)(2 4)");
    EXPECT_EQ(tensor_perm(Perm(2), one_based({2, 1})).cycles(), "(1 2)(3 4)");
    EXPECT_EQ(tensor_perm(Perm(0), Perm(3)).degree(), 0);
}

TEST(OperadCore, TensorIsHomomorphism) {
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k)
            for (const auto& a : all_perms(j))
                for (const auto& b : all_perms(j))
                    for (const auto& c : all_perms(k))
                        for (const auto& d : all_perms(k))
                            ASSERT_EQ(tensor_perm(a * b, c * d), tensor_perm(a, c) * tensor_perm(b, d));
}

TEST(OperadCore, DeltaExamples) {
    const std::vector<int> two{2}, ones{1, 1};
    EXPECT_EQ(delta_perm(two, ones), one_based({1, 3, 2, 4}));
    EXPECT_TRUE(delta_perm(ones, two).is_identity());
    EXPECT_TRUE(delta_perm(ones, ones).is_identity());
}

TEST(OperadCore, TauExamples) {
    EXPECT_EQ(tau_perm(2, 2), one_based({1, 3, 2, 4}));
    for (int k = 0; k <= 4; ++k) EXPECT_TRUE(tau_perm(1, k).is_identity());
    for (int j = 0; j <= 4; ++j)
        for (int k = 0; k <= 4; ++k) EXPECT_TRUE((tau_perm(k, j) * tau_perm(j, k)).is_identity());
}

TEST(OperadCore, BarrattEcclesGammaExamples) {
    const auto op = barratt_eccles(4);
    const OpObject swap{one_based({2, 1})};
    const OpObject id2{Perm(2)}, id1{Perm(1)}, id0{Perm(0)};
    // Swapping a block of two with a single point.
    const std::vector<OpObject> d{id2, id1};
    EXPECT_EQ(op.gamma(swap, d)[0], one_based({2, 3, 1}));
    // Inputs permuted inside their blocks.
    const std::vector<OpObject> inner{swap, id1};
    EXPECT_EQ(op.gamma(OpObject{Perm(2)}, inner)[0], one_based({2, 1, 3}));
    // Nullary input drops a slot.
    const std::vector<OpObject> nul{id0, id1};
    EXPECT_EQ(op.gamma(swap, nul)[0], Perm(1));
    EXPECT_THROW(op.gamma(swap, std::vector<OpObject>{id1}), ShapeMismatch);
}

TEST(OperadCore, TrivialGroupMatchesBarrattEccles) {
    const auto be = barratt_eccles(3);
    const auto og = og_operad(grp("trivial"), 3);
    for (int k = 0; k <= 3; ++k) {
        ASSERT_EQ(be.object_count(k), og.object_count(k));
        for (std::uint64_t i = 0; i < be.object_count(k); ++i) {
            const auto c = be.object(k, i);
            ASSERT_EQ(c, og.object(k, i));
            ASSERT_EQ(be.index_of(c), i);
        }
    }
}

TEST(OperadCore, ArityTwoForZ2) {
    const auto op = og_operad(grp("C2"), 3);
    EXPECT_EQ(op.object_count(2), 4u);
    int fixed = 0;
    for (std::uint64_t i = 0; i < 4; ++i) {
        const auto c = op.object(2, i);
        if (op.act_group(1, c) == c) {
            ++fixed;
            EXPECT_EQ(c[0], c[1]);
        }
    }
    EXPECT_EQ(fixed, 2);
    const auto comp = op.component(2);
    EXPECT_EQ(comp.object_count(), 4);
    EXPECT_EQ(comp.morphism_count(), 16);
}

TEST(OperadCore, ObjectBudget) {
    EXPECT_THROW(og_operad(grp("Q8"), 3).object_count(16), SizeBudgetExceeded);
    EXPECT_THROW(og_operad(std::make_shared<const FiniteGroup>(cyclic_group(9)), 3), SizeBudgetExceeded);
}

TEST(OperadVerify, BarrattEcclesAndZ2Pass) {
    VerifyBounds b;
    const auto be = verify_operad(barratt_eccles(3), b);
    EXPECT_TRUE(be.pass()) << report_text(be);
    const auto z2 = verify_operad(og_operad(grp("C2"), 3), b);
    EXPECT_TRUE(z2.pass()) << report_text(z2);
    for (const auto& l : z2.laws) EXPECT_EQ(l.sampled, 0u) << l.law;
}

TEST(OperadVerify, CorruptedGammaGivesWitness) {
    auto op = barratt_eccles(3);
    const OpObject id1{Perm(1)};
    op.override_gamma(OpObject{Perm(2)}, {id1, id1}, OpObject{one_based({2, 1})});
    VerifyBounds b;
    b.jmax = 2;
    const auto r = verify_operad(op, b);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(law_passes(r, "unit-right"));
    for (const auto& l : r.laws)
        if (l.law == "unit-right") EXPECT_EQ(l.witness, "id2");
}

TEST(OperadVerify, SamplesOverBudgetFamilies) {
    VerifyBounds b;
    b.family_budget = 10;
    b.samples = 50;
    const auto r = verify_operad(barratt_eccles(3), b);
    EXPECT_TRUE(r.pass());
    for (const auto& l : r.laws)
        if (l.law == "associativity") EXPECT_GT(l.sampled, 0u);
}

TEST(OperadQuotient, ArityOneIsPoint) {
    const auto g = grp("C3");
    const auto m = og_quotient_and_fixed(g, 1, Subgroup::whole(*g));
    EXPECT_EQ(m.quotient.object_count(), 1);
    EXPECT_EQ(m.quotient.morphism_count(), 1);
    EXPECT_EQ(m.fixed.objects.size(), 1u);
}

TEST(OperadQuotient, Z2ArityTwo) {
    const auto g = grp("C2");
    const auto m = og_quotient_and_fixed(g, 2, Subgroup::whole(*g));
    EXPECT_EQ(m.quotient.object_count(), 2);
    EXPECT_EQ(m.fixed.objects.size(), 2u);
    const auto classes = skeleton(m.fixed.category);
    ASSERT_EQ(classes.size(), 2u);
    for (const auto& c : classes) EXPECT_EQ(c.automorphisms, 2);
    EXPECT_TRUE(m.fixed_are_antihoms);
}

TEST(OperadQuotient, Z3ArityTwo) {
    const auto g = grp("C3");
    const auto m = og_quotient_and_fixed(g, 2, Subgroup::whole(*g));
    const auto classes = skeleton(m.fixed.category);
    ASSERT_EQ(classes.size(), 1u);
    EXPECT_EQ(classes[0].automorphisms, 2);
    EXPECT_TRUE(m.fixed_are_antihoms);
}

// Fixed skeleta match conjugacy classes of homomorphisms into the symmetric group.
TEST(OperadQuotient, FixedSkeletonMatchesHomClasses) {
    const std::vector<std::pair<std::string, int>> grid{{"C2", 1}, {"C2", 2}, {"C2", 3}, {"C3", 2}, {"C4", 2}, {"C2xC2", 2}};
    for (const auto& [name, j] : grid) {
        const auto g = grp(name);
        for (const auto& h : all_subgroups(*g)) {
            const auto m = og_quotient_and_fixed(g, j, h);
            EXPECT_TRUE(m.fixed_are_antihoms) << name << " j=" << j;
            std::multiset<std::int64_t> auts;
            for (const auto& c : skeleton(m.fixed.category)) auts.insert(c.automorphisms);
            EXPECT_EQ(auts, hom_class_centralizers(*g, h, j)) << name << " j=" << j << " |H|=" << h.order();
        }
    }
}

TEST(OperadQuotient, Budget) {
    const auto g = grp("S3");
    EXPECT_THROW(og_quotient_and_fixed(g, 3, Subgroup::whole(*g)), SizeBudgetExceeded);
}

TEST(PairingTest, BoxExamples) {
    const auto op = barratt_eccles(4);
    const Pairing p(op);
    const OpObject swap{one_based({2, 1})}, id2{Perm(2)};
    EXPECT_EQ(p.box(swap, id2)[0].cycles(), "(1 3)(2 4)");
    EXPECT_EQ(p.box(op.unit(), swap), swap);
}

TEST(PairingTest, RelabeledLawsPassLiteralFail) {
    const auto op = barratt_eccles(9);
    const Pairing p(op);
    const auto r = verify_pairing(p, PairingBounds{});
    for (const char* law : {"equivariance", "unit", "distributivity-up-to-relabeling", "symmetry-up-to-relabeling",
                            "pairing-associativity", "pairing-unit"})
        EXPECT_TRUE(law_passes(r, law)) << law << "\n" << report_text(r);
    // With all inputs identities the literal forms demand delta = id and tau = id.
    EXPECT_FALSE(law_passes(r, "distributivity"));
    EXPECT_FALSE(law_passes(r, "symmetry"));
}

TEST(PairingTest, CorruptedBoxBreaksEquivariance) {
    const auto op = barratt_eccles(9);
    Pairing p(op);
    p.override_box(OpObject{Perm(2)}, OpObject{Perm(2)}, OpObject{one_based({2, 1, 3, 4})});
    PairingBounds b;
    b.jk_max = 2;
    const auto r = verify_pairing(p, b);
    EXPECT_FALSE(law_passes(r, "equivariance"));
}
