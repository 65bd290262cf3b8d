#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "eqcat/errors.hpp"
#include "eqcat/gset.hpp"
#include "eqcat/perm.hpp"

using namespace eqcat;

namespace {

GroupPtr grp(const std::string& name) { return std::make_shared<const FiniteGroup>(preset_group(name)); }

// Oracle: search all bijections for an equivariant one.
bool iso_by_search(const FinGSet& a, const FinGSet& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> f(static_cast<std::size_t>(a.size()));
    std::iota(f.begin(), f.end(), 0);
    do {
        if (is_equivariant(a, b, f)) return true;
    } while (std::next_permutation(f.begin(), f.end()));
    return false;
}

// Every G-set of size n, via all homomorphisms G -> Sigma_n.
std::vector<FinGSet> all_gsets(const GroupPtr& g, int n) {
    std::vector<FinGSet> out;
    for (const auto& hom : all_homomorphisms(*g, symmetric_group(n))) out.push_back(gset_from_hom(g, n, hom));
    return out;
}

}  // namespace

TEST(GSet, MakeAndReject) {
    auto c2 = grp("C2");
    EXPECT_EQ(make_gset(c2, 0, {{}, {}}).size(), 0);
    auto free2 = make_gset(c2, 2, {{0, 1}, {1, 0}});
    EXPECT_EQ(orbits(free2).size(), 1u);
    EXPECT_THROW(make_gset(c2, 3, {{0, 1, 2}, {1, 2, 0}}), NotAHomomorphism);
}

TEST(GSet, LoadFileFormat) {
    auto resolve = [](const std::string& n) { return grp(n); };
    auto a = load_gset(R"({"group":"C2","size":4,"action":{"g":[1,2,4,3]}})", resolve);
    EXPECT_EQ(a.size(), 4);
    EXPECT_EQ(a.act(1, 2), 3);
    auto back = load_gset(gset_to_json(a), resolve);
    EXPECT_EQ(back.perm(1), a.perm(1));
    EXPECT_THROW(load_gset(R"({"group":"C2","size":3,"action":{"g":[2,3,1]}})", resolve), NotAHomomorphism);
    EXPECT_THROW(load_gset(R"({"group":"C2","size":2,"action":{"h":[2,1]}})", resolve), ParseError);
}

TEST(GSet, OrbitTypes) {
    auto c2 = grp("C2");
    auto a = disjoint_union(trivial_gset(c2, 2), regular_gset(c2));
    EXPECT_EQ(orbit_type(a).entries, (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));
    EXPECT_TRUE(orbit_type(empty_gset(c2)).entries.empty());
    auto s3 = grp("S3");
    EXPECT_EQ(orbit_type(regular_gset(s3)).entries, (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(GSet, IsoCases) {
    auto c2 = grp("C2");
    auto free2 = regular_gset(c2);
    auto id = gset_iso(free2, free2);
    ASSERT_TRUE(id);
    EXPECT_EQ(id->values, (std::vector<int>{0, 1}));
    EXPECT_FALSE(gset_iso(trivial_gset(c2, 2), free2));
    EXPECT_THROW(gset_iso(free2, regular_gset(grp("C3"))), GroupMismatch);
}

TEST(GSet, IsoAgreesWithSearchAndOrbitType) {
    for (const auto& name : std::vector<std::string>{"C2", "C3", "S3", "C2xC2"}) {
        auto g = grp(name);
        for (int n = 0; n <= 4; ++n) {
            auto sets = all_gsets(g, n);
            for (const auto& a : sets)
                for (const auto& b : sets) {
                    const bool search = iso_by_search(a, b);
                    auto f = gset_iso(a, b);
                    EXPECT_EQ(f.has_value(), search);
                    EXPECT_EQ(orbit_type(a) == orbit_type(b), search);
                    if (f) EXPECT_TRUE(is_equivariant(a, b, f->values));
                }
        }
    }
}

TEST(GSet, UnionAndProduct) {
    auto c2 = grp("C2");
    auto free2 = regular_gset(c2);
    auto pt = trivial_gset(c2, 1);
    EXPECT_TRUE(gset_iso(disjoint_union(free2, empty_gset(c2)), free2));
    EXPECT_EQ(orbit_type(disjoint_union(free2, free2)).entries, (std::vector<std::pair<int, int>>{{0, 2}}));
    auto u = disjoint_union(pt, free2);
    EXPECT_EQ(u.size(), 3);
    EXPECT_EQ(orbit_type(u).entries, (std::vector<std::pair<int, int>>{{0, 1}, {1, 1}}));
    EXPECT_TRUE(gset_iso(product_gset(free2, pt), free2));
    EXPECT_EQ(orbit_type(product_gset(free2, free2)).entries, (std::vector<std::pair<int, int>>{{0, 2}}));
    EXPECT_EQ(orbit_type(product_gset(free2, pt)).entries, (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(GSet, UnionProductCommutativeAssociative) {
    auto g = grp("S3");
    std::vector<FinGSet> sets;
    for (int n = 0; n <= 3; ++n)
        for (auto& s : all_gsets(g, n)) sets.push_back(s);
    for (const auto& a : sets)
        for (const auto& b : sets) {
            EXPECT_TRUE(gset_iso(disjoint_union(a, b), disjoint_union(b, a)));
            EXPECT_TRUE(gset_iso(product_gset(a, b), product_gset(b, a)));
        }
    for (std::size_t i = 0; i < sets.size(); i += 3)
        for (std::size_t j = 0; j < sets.size(); j += 3)
            for (std::size_t k = 0; k < sets.size(); k += 3) {
                const auto &a = sets[i], &b = sets[j], &c = sets[k];
                EXPECT_TRUE(gset_iso(disjoint_union(disjoint_union(a, b), c), disjoint_union(a, disjoint_union(b, c))));
                EXPECT_TRUE(gset_iso(product_gset(product_gset(a, b), c), product_gset(a, product_gset(b, c))));
            }
}

TEST(GSet, FixedPointsAndRestrict) {
    auto c2 = grp("C2");
    auto free2 = regular_gset(c2);
    EXPECT_EQ(fixed_points(free2, Subgroup::trivial()).size(), 2u);
    EXPECT_TRUE(fixed_points(free2, Subgroup::whole(*c2)).empty());
    auto s3 = grp("S3");
    auto classes = subgroup_classes(*s3);
    const Subgroup c3 = classes[2].representative;
    auto g_mod_c3 = coset_gset(s3, c3);
    EXPECT_EQ(g_mod_c3.size(), 2);
    EXPECT_EQ(fixed_points(g_mod_c3, c3).size(), 2u);
    EXPECT_THROW(fixed_points(g_mod_c3, Subgroup(0b110)), NotASubgroup);

    auto r = restrict(free2, Subgroup::trivial());
    EXPECT_EQ(orbits(r).size(), 2u);
    auto whole = restrict(free2, Subgroup::whole(*c2));
    EXPECT_EQ(whole.perm(1), free2.perm(1));

    auto q8 = grp("Q8");
    auto center = subgroup_classes(*q8)[1].representative;
    auto rq = restrict(regular_gset(q8), center);
    auto types = orbit_type(rq);
    ASSERT_EQ(types.entries.size(), 1u);
    EXPECT_EQ(types.entries[0], (std::pair<int, int>{0, 4}));
}

TEST(GSet, MarksConsistency) {
    for (const auto& name : std::vector<std::string>{"C2", "C4", "S3", "Q8", "C2xC2"}) {
        auto g = grp(name);
        auto classes = subgroup_classes(*g);
        for (const auto& h : classes) {
            auto orbit = coset_gset(g, h.representative);
            EXPECT_EQ(static_cast<int>(fixed_points(orbit, h.representative).size()), h.weyl.order());
            for (const auto& k : classes)
                if (!subconjugate(*g, k.representative, h.representative))
                    EXPECT_TRUE(fixed_points(orbit, k.representative).empty());
        }
    }
}

TEST(GSet, HomClasses) {
    auto trivial = preset_group("trivial");
    auto s3 = symmetric_group(3);
    auto t = hom_classes(trivial, s3);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].centralizer_order, 6);
    auto c2 = preset_group("C2");
    auto s2 = hom_classes(c2, symmetric_group(2));
    EXPECT_EQ(s2.size(), 2u);
    auto z = hom_classes(c2, s3);
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z[0].centralizer_order, 6);
    EXPECT_EQ(z[1].centralizer_order, 2);
    EXPECT_EQ(z[0].class_size + z[1].class_size, 4);
}

TEST(GSet, H1CountsIsoClassesOfHSets) {
    for (const auto& name : std::vector<std::string>{"trivial", "C2", "C3", "C4", "C2xC2", "S3"}) {
        auto h = grp(name);
        for (int j = 0; j <= 4; ++j) {
            auto sets = all_gsets(h, j);
            std::vector<FinGSet> reps;
            for (const auto& s : sets)
                if (std::none_of(reps.begin(), reps.end(), [&](const FinGSet& r) { return iso_by_search(r, s); }))
                    reps.push_back(s);
            EXPECT_EQ(hom_classes(*h, symmetric_group(j)).size(), reps.size()) << name << " j=" << j;
        }
    }
}

TEST(GSet, Q8Obstruction) {
    auto q8 = grp("Q8");
    auto center = subgroup_classes(*q8)[1].representative;
    auto center_group = std::make_shared<const FiniteGroup>(subgroup_as_group(*q8, center));
    auto free_center = regular_gset(center_group);
    EXPECT_EQ(all_homomorphisms(*q8, symmetric_group(2)).size(), 4u);
    EXPECT_TRUE(extensions_of_restriction(q8, center, free_center).empty());
    // Control: the same search finds extensions over C4 with its order-2 subgroup.
    auto c4 = grp("C4");
    auto sub = subgroup_classes(*c4)[1].representative;
    auto free_sub = regular_gset(std::make_shared<const FiniteGroup>(subgroup_as_group(*c4, sub)));
    EXPECT_TRUE(extensions_of_restriction(c4, sub, free_sub).empty());
    auto c2xc2 = grp("C2xC2");
    auto sub2 = Subgroup::from_members(std::vector<int>{0, 1});
    auto free_sub2 = regular_gset(std::make_shared<const FiniteGroup>(subgroup_as_group(*c2xc2, sub2)));
    EXPECT_FALSE(extensions_of_restriction(c2xc2, sub2, free_sub2).empty());
}
