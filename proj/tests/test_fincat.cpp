#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "eqcat/errors.hpp"
#include "eqcat/fincat.hpp"
#include "eqcat/perm.hpp"

using namespace eqcat;

namespace {

GroupPtr grp(const std::string& name) { return std::make_shared<const FiniteGroup>(preset_group(name)); }
std::shared_ptr<const GFinCat> share(GFinCat c) { return std::make_shared<const GFinCat>(std::move(c)); }

// Sigma_n as a chaotic category on its elements, no action.
GFinCat chaotic_perm_group(int n) { return chaotic(symmetric_group(n).elements()); }

// Groupoid of j-element G-sets: objects are homomorphisms G -> Sigma_j,
// morphisms are bijections intertwining them.
GFinCat gsets_groupoid(const FiniteGroup& g, int j) {
    const auto sj = symmetric_group(j);
    const auto homs = all_homomorphisms(g, sj);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < homs.size(); ++i) names.push_back("rho" + std::to_string(i));
    std::vector<MorphismSpec> mors;
    std::vector<int> perm_of;
    std::map<std::tuple<int, int, int>, int> index;
    for (std::size_t a = 0; a < homs.size(); ++a)
        for (std::size_t b = 0; b < homs.size(); ++b)
            for (int f = 0; f < sj.order(); ++f) {
                bool ok = true;
                for (int x = 0; x < g.order(); ++x)
                    if (sj.mul(f, homs[a][static_cast<std::size_t>(x)]) != sj.mul(homs[b][static_cast<std::size_t>(x)], f)) ok = false;
                if (!ok) continue;
                index[{static_cast<int>(a), static_cast<int>(b), f}] = static_cast<int>(mors.size());
                mors.push_back({sj.element_name(f), static_cast<int>(a), static_cast<int>(b)});
                perm_of.push_back(f);
            }
    std::vector<int> ids;
    for (std::size_t a = 0; a < homs.size(); ++a) ids.push_back(index.at({static_cast<int>(a), static_cast<int>(a), 0}));
    std::vector<std::array<int, 3>> comp;
    for (int f = 0; f < static_cast<int>(mors.size()); ++f)
        for (int h = 0; h < static_cast<int>(mors.size()); ++h)
            if (mors[static_cast<std::size_t>(h)].src == mors[static_cast<std::size_t>(f)].tgt)
                comp.push_back({h, f,
                                index.at({mors[static_cast<std::size_t>(f)].src, mors[static_cast<std::size_t>(h)].tgt,
                                          sj.mul(perm_of[static_cast<std::size_t>(h)], perm_of[static_cast<std::size_t>(f)])})});
    return GFinCat(std::move(names), std::move(mors), std::move(ids), comp);
}

// Right translation of a chaotic group category's functors by sigma.
std::vector<CatAction> right_translation(const FunctorCategory& fc, const FiniteGroup& pi, const GFinCat& pt) {
    const int n = pi.order();
    auto shift_mor = [&](int m, int s) {
        const int x = pt.src(m), y = pt.tgt(m);
        return pi.mul(y, s) * n + pi.mul(x, s);
    };
    std::map<std::vector<int>, int> fidx;
    for (std::size_t i = 0; i < fc.functors.size(); ++i) fidx[fc.functors[i].morphism_map] = static_cast<int>(i);
    std::map<std::tuple<int, int, std::vector<int>>, int> tidx;
    for (std::size_t i = 0; i < fc.transformations.size(); ++i)
        tidx[{fc.transformations[i].source, fc.transformations[i].target, fc.transformations[i].components}] = static_cast<int>(i);
    std::vector<CatAction> out;
    for (int s = 0; s < n; ++s) {
        CatAction a;
        for (const auto& f : fc.functors) {
            std::vector<int> m;
            for (int x : f.morphism_map) m.push_back(shift_mor(x, s));
            a.objects.push_back(fidx.at(m));
        }
        for (const auto& t : fc.transformations) {
            std::vector<int> c;
            for (int x : t.components) c.push_back(shift_mor(x, s));
            a.morphisms.push_back(tidx.at({a.objects[static_cast<std::size_t>(t.source)], a.objects[static_cast<std::size_t>(t.target)], c}));
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST(FinCat, Presets) {
    auto t = terminal_category();
    EXPECT_EQ(t.object_count(), 1);
    EXPECT_EQ(t.morphism_count(), 1);
    auto c2 = preset_group("C2");
    auto z = group_as_category(c2);
    EXPECT_EQ(z.object_count(), 1);
    EXPECT_EQ(z.morphism_count(), 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_EQ(z.compose(a, b), c2.mul(a, b));
    EXPECT_EQ(discrete_category(3).morphism_count(), 3);
}

TEST(FinCat, RejectsNonAssociative) {
    // One object, morphisms e, a, b with a Latin-square table that fails associativity.
    std::vector<MorphismSpec> mors{{"e", 0, 0}, {"a", 0, 0}, {"b", 0, 0}};
    std::vector<std::array<int, 3>> comp;
    const int table[3][3] = {{0, 1, 2}, {1, 1, 0}, {2, 0, 2}};
    for (int g = 0; g < 3; ++g)
        for (int f = 0; f < 3; ++f) comp.push_back({g, f, table[g][f]});
    try {
        GFinCat c({"*"}, mors, {0}, comp);
        FAIL() << "expected NotACategory";
    } catch (const NotACategory& e) {
        EXPECT_EQ(e.axiom(), "associativity");
        EXPECT_EQ(e.witness().size(), 3u);
    }
}

TEST(FinCat, LoadFile) {
    const char* text = R"({"objects":["x","y"],
      "morphisms":[{"id":"1x","src":"x","tgt":"x"},{"id":"1y","src":"y","tgt":"y"},{"id":"f","src":"x","tgt":"y"}],
      "identities":{"x":"1x","y":"1y"},
      "compose":[["1x","1x","1x"],["1y","1y","1y"],["f","1x","f"],["1y","f","f"]]})";
    auto c = load_category(text);
    EXPECT_EQ(c.object_count(), 2);
    EXPECT_EQ(c.hom(0, 1).size(), 1u);
    EXPECT_FALSE(c.is_groupoid());
    EXPECT_THROW(load_category(R"({"objects":["x"]})"), ParseError);
    const char* bad = R"({"objects":["x"],"morphisms":[{"id":"1x","src":"x","tgt":"x"}],"identities":{"x":"1x"},"compose":[]})";
    EXPECT_THROW(load_category(bad), NotACategory);
}

TEST(FinCat, ActionFromFile) {
    const char* text = R"({"objects":["x","y"],
      "morphisms":[{"id":"1x","src":"x","tgt":"x"},{"id":"1y","src":"y","tgt":"y"}],
      "identities":{"x":"1x","y":"1y"},
      "compose":[["1x","1x","1x"],["1y","1y","1y"]],
      "action":{"g":{"objects":{"x":"y","y":"x"},"morphisms":{"1x":"1y","1y":"1x"}}}})";
    auto c = load_category(text, grp("C2"));
    ASSERT_TRUE(c.has_action());
    EXPECT_EQ(c.act_object(1, 0), 1);
    EXPECT_TRUE(fixed_subcategory(c, Subgroup::whole(*c.group())).objects.empty());
}

TEST(FinCat, Chaotic) {
    auto one = chaotic(1);
    EXPECT_EQ(one.object_count(), 1);
    EXPECT_EQ(one.morphism_count(), 1);
    for (int n = 1; n <= 5; ++n) {
        auto c = chaotic(n);
        EXPECT_EQ(c.morphism_count(), n * n);
        EXPECT_TRUE(c.is_groupoid());
    }
    auto gt = chaotic_group(grp("C3"));
    ASSERT_TRUE(gt.has_action());
    for (int g = 1; g < 3; ++g)
        for (int o = 0; o < 3; ++o) EXPECT_NE(gt.act_object(g, o), o);
}

TEST(FinCat, ChaoticEquivalentToPoint) {
    auto pt = share(terminal_category());
    for (int n = 1; n <= 5; ++n) {
        auto c = share(chaotic(n));
        FunctorVal to_pt{c, pt, std::vector<int>(static_cast<std::size_t>(n), 0),
                         std::vector<int>(static_cast<std::size_t>(n * n), 0)};
        EXPECT_TRUE(check_equivalence(to_pt).equivalence()) << n;
        FunctorVal from_pt{pt, c, {0}, {c->identity(0)}};
        EXPECT_TRUE(check_equivalence(from_pt).equivalence()) << n;
    }
}

TEST(FinCat, FunctorCategoryFromPoint) {
    auto b = share(group_as_category(preset_group("S3")));
    auto fc = functor_category(share(terminal_category()), b);
    EXPECT_EQ(fc.category.object_count(), b->object_count());
    EXPECT_EQ(fc.category.morphism_count(), b->morphism_count());
    // Composition matches under the evident bijection.
    for (int x = 0; x < fc.category.morphism_count(); ++x)
        for (int y = 0; y < fc.category.morphism_count(); ++y)
            EXPECT_EQ(fc.transformations[static_cast<std::size_t>(fc.category.compose(x, y))].components[0],
                      b->compose(fc.transformations[static_cast<std::size_t>(x)].components[0],
                                 fc.transformations[static_cast<std::size_t>(y)].components[0]));
}

TEST(FinCat, FunctionsIntoChaoticSigma2) {
    auto gt = share(chaotic_group(grp("C2")));
    auto fc = functor_category(gt, share(chaotic_perm_group(2)));
    EXPECT_EQ(fc.category.object_count(), 4);
    EXPECT_EQ(fc.category.morphism_count(), 16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) EXPECT_EQ(fc.category.hom(a, b).size(), 1u);
}

TEST(FinCat, ProductAdjunctionCounts) {
    auto c2 = preset_group("C2");
    auto z = share(group_as_category(c2));
    auto lhs = functor_category(share(product(*z, *z)), z);
    auto inner = functor_category(z, z);
    auto rhs = functor_category(z, share(inner.category));
    EXPECT_EQ(lhs.category.object_count(), rhs.category.object_count());
    // Oracle: functors out of a one-object category are homomorphisms.
    auto c2xc2 = preset_group("C2xC2");
    EXPECT_EQ(lhs.category.object_count(), static_cast<int>(all_homomorphisms(c2xc2, c2).size()));
}

TEST(FinCat, FunctorBudget) {
    EXPECT_THROW(functor_category(share(discrete_category(6)), share(discrete_category(10)), 1000), SizeBudgetExceeded);
}

TEST(FinCat, TwistedHomIota) {
    auto triv = grp("trivial");
    auto a = share(chaotic_perm_group(2));
    auto th = twisted_hom(triv, a);
    EXPECT_EQ(th.hom.category.object_count(), 2);
    std::vector<bool> hit(2, false);
    for (int o : th.iota.object_map) hit[static_cast<std::size_t>(o)] = true;
    EXPECT_TRUE(hit[0] && hit[1]);
    EXPECT_TRUE(check_equivalence(th.iota).equivalence());

    auto z2 = twisted_hom(grp("C2"), a);
    EXPECT_EQ(z2.hom.category.object_count(), 4);
    std::set<int> img(z2.iota.object_map.begin(), z2.iota.object_map.end());
    EXPECT_EQ(img.size(), 2u);
    EXPECT_FALSE(functor_failure(*z2.iota.source, *z2.iota.target, z2.iota.object_map, z2.iota.morphism_map));
}

TEST(FinCat, TwistedHomIdempotent) {
    auto g = grp("C2");
    auto once = twisted_hom(g, share(chaotic_perm_group(2)));
    auto inner = share(once.hom.category);
    auto twice = twisted_hom(g, inner);
    EXPECT_TRUE(check_equivalence(twice.iota).equivalence());
    // Equivariance of iota, then equivalence on every fixed subcategory.
    for (int x = 0; x < g->order(); ++x)
        for (int o = 0; o < inner->object_count(); ++o)
            EXPECT_EQ(twice.iota.object_map[static_cast<std::size_t>(inner->act_object(x, o))],
                      twice.hom.category.act_object(x, twice.iota.object_map[static_cast<std::size_t>(o)]));
    for (const auto& h : all_subgroups(*g)) {
        auto src = fixed_subcategory(*inner, h);
        auto dst = fixed_subcategory(twice.hom.category, h);
        auto restricted = restrict_functor(twice.iota, src, dst);
        EXPECT_TRUE(check_equivalence(restricted).equivalence()) << h.order();
    }
}

TEST(FinCat, FixedSubcategoryExamples) {
    auto c = chaotic(3);
    auto f = fixed_subcategory(c, Subgroup::trivial());
    EXPECT_EQ(f.category.object_count(), 3);
    EXPECT_EQ(f.category.morphism_count(), 9);

    auto g = grp("C2");
    auto gt = chaotic_group(g);
    EXPECT_EQ(fixed_subcategory(gt, Subgroup::whole(*g)).category.object_count(), 0);

    // Fixed functors G~ -> Sigma~2 under conjugation; oracle: direct search
    // for functors invariant under the conjugation formula.
    auto th = twisted_hom(g, share(chaotic_perm_group(2)));
    auto fixed = fixed_subcategory(th.hom.category, Subgroup::whole(*g));
    int oracle = 0;
    for (const auto& fn : th.hom.functors) {
        bool inv = true;
        for (int x = 0; x < g->order(); ++x)
            for (int h = 0; h < g->order(); ++h)
                if (fn.object_map[static_cast<std::size_t>(g->mul(g->inv(x), h))] != fn.object_map[static_cast<std::size_t>(h)]) inv = false;
        oracle += inv;
    }
    EXPECT_EQ(fixed.category.object_count(), oracle);
    EXPECT_EQ(oracle, 2);
}

TEST(FinCat, FixedCommutesWithProductAndCoproduct) {
    auto g = grp("C2");
    std::vector<GFinCat> cats{chaotic_group(g), chaotic(2, g, {{0, 1}, {0, 1}}),
                              chaotic(3, g, {{0, 1, 2}, {0, 2, 1}})};
    for (const auto& a : cats)
        for (const auto& b : cats)
            for (const auto& h : all_subgroups(*g)) {
                auto fa = fixed_subcategory(a, h).category, fb = fixed_subcategory(b, h).category;
                auto fp = fixed_subcategory(product(a, b), h).category;
                auto pf = product(fa, fb);
                EXPECT_EQ(fp.object_count(), pf.object_count());
                EXPECT_EQ(fp.morphism_count(), pf.morphism_count());
                for (int o = 0; o < fp.object_count(); ++o) EXPECT_EQ(fp.object_name(o), pf.object_name(o));
                auto fc = fixed_subcategory(coproduct(a, b), h).category;
                auto cf = coproduct(fa, fb);
                EXPECT_EQ(fc.object_count(), cf.object_count());
                EXPECT_EQ(fc.morphism_count(), cf.morphism_count());
                for (int m = 0; m < fc.morphism_count(); ++m) EXPECT_EQ(fc.morphism_name(m), cf.morphism_name(m));
            }
}

TEST(FinCat, OrbitCategory) {
    auto triv = preset_group("trivial");
    auto c = chaotic(3);
    auto same = orbit_category(c, triv, {{{0, 1, 2}, [] {
                                              std::vector<int> v(9);
                                              std::iota(v.begin(), v.end(), 0);
                                              return v;
                                          }()}});
    EXPECT_EQ(same.object_count(), 3);
    EXPECT_EQ(same.morphism_count(), 9);

    auto s2 = grp("S2");
    auto st = chaotic_group(s2);
    auto q = orbit_category(st, *s2, st.action());
    EXPECT_EQ(q.object_count(), 1);
    EXPECT_EQ(q.morphism_count(), 2);
    auto z = group_as_category(*s2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_EQ(q.compose(a, b) == q.identity(0), z.compose(a, b) == z.identity(0));

    std::vector<CatAction> id_action(2, CatAction{{0, 1}, {0, 1, 2, 3}});
    EXPECT_THROW(orbit_category(chaotic(2), *s2, id_action), ActionNotFree);
}

TEST(FinCat, OperadArityTwoModSigma) {
    auto g = grp("C2");
    auto pt = chaotic_perm_group(2);
    auto fc = functor_category(share(chaotic_group(g)), share(pt));
    auto s2 = symmetric_group(2);
    auto q = orbit_category(fc.category, s2, right_translation(fc, s2, pt));
    EXPECT_EQ(q.object_count(), 2);
    ASSERT_TRUE(q.has_action());
}

TEST(FinCat, Skeleton) {
    auto s = skeleton(chaotic(4));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].automorphisms, 1);
    EXPECT_EQ(s[0].size, 4);
    auto s3 = skeleton(group_as_category(preset_group("S3")));
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_EQ(s3[0].automorphisms, 6);
    auto two = skeleton(gsets_groupoid(preset_group("C2"), 2));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].automorphisms, 2);
    EXPECT_EQ(two[1].automorphisms, 2);
    EXPECT_THROW(skeleton(load_category(R"({"objects":["x","y"],
      "morphisms":[{"id":"1x","src":"x","tgt":"x"},{"id":"1y","src":"y","tgt":"y"},{"id":"f","src":"x","tgt":"y"}],
      "identities":{"x":"1x","y":"1y"},
      "compose":[["1x","1x","1x"],["1y","1y","1y"],["f","1x","f"],["1y","f","f"]]})")),
                 NotAGroupoid);
}

TEST(FinCat, SkeletonIdempotentAndInclusionIsEquivalence) {
    std::vector<GFinCat> cats{chaotic(3), group_as_category(preset_group("S3")), gsets_groupoid(preset_group("C2"), 2),
                              gsets_groupoid(preset_group("C3"), 3), coproduct(chaotic(2), group_as_category(preset_group("C4")))};
    for (const auto& c : cats) {
        auto sk = skeleton_category(c);
        auto again = skeleton(sk);
        auto first = skeleton(c);
        ASSERT_EQ(again.size(), first.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            EXPECT_EQ(again[i].automorphisms, first[i].automorphisms);
            EXPECT_EQ(again[i].size, 1);
        }
        EXPECT_EQ(skeleton(skeleton_category(sk)), again);
        std::vector<int> reps;
        for (const auto& cls : first) reps.push_back(cls.representative);
        EXPECT_TRUE(check_equivalence(full_inclusion(share(c), reps)).equivalence());
    }
}

TEST(FinCat, EquivalenceWitnesses) {
    auto c = share(coproduct(group_as_category(preset_group("C2")), group_as_category(preset_group("C2"))));
    EXPECT_TRUE(check_equivalence(identity_functor(c)).equivalence());
    FunctorVal to_pt{c, share(terminal_category()), {0, 0}, {0, 0, 0, 0}};
    auto v = check_equivalence(to_pt);
    EXPECT_FALSE(v.equivalence());
    EXPECT_FALSE(v.fully_faithful);
    EXPECT_FALSE(v.witness.empty());
    FunctorVal incl = full_inclusion(c, {0});
    auto w = check_equivalence(incl);
    EXPECT_FALSE(w.essentially_surjective);
    EXPECT_NE(w.witness.find("not isomorphic"), std::string::npos);
}

// Functors G~ -> Pi~ modulo right translation by Pi are isomorphic to
// functors G~ -> Pi, via postcomposition with Pi~ -> Pi, (x -> y) |-> y x^-1.
TEST(FinCat, OrbitOfChaoticFunctorsMatchesGroupTarget) {
    auto g = grp("C2");
    auto pi = symmetric_group(2);
    auto gt = share(chaotic_group(g));
    auto pt = share(chaotic_perm_group(2));
    auto pcat = share(group_as_category(pi));
    auto chaotic_side = functor_category(gt, pt);
    auto group_side = functor_category(gt, pcat);
    FunctorVal p{pt, pcat, {0, 0}, {}};
    for (int m = 0; m < pt->morphism_count(); ++m) p.morphism_map.push_back(pi.mul(pt->tgt(m), pi.inv(pt->src(m))));
    ASSERT_FALSE(functor_failure(*p.source, *p.target, p.object_map, p.morphism_map));
    auto xi = postcompose(chaotic_side, group_side, p);
    auto translate = right_translation(chaotic_side, pi, *pt);
    auto quotient = orbit_category(chaotic_side.category, pi, translate);

    // xi is constant on orbits and induces bijections.
    std::map<int, int> obj_orbit_image, mor_orbit_image;
    for (const auto& a : translate)
        for (int o = 0; o < chaotic_side.category.object_count(); ++o)
            EXPECT_EQ(xi.object_map[static_cast<std::size_t>(a.objects[static_cast<std::size_t>(o)])], xi.object_map[static_cast<std::size_t>(o)]);
    for (const auto& a : translate)
        for (int m = 0; m < chaotic_side.category.morphism_count(); ++m)
            EXPECT_EQ(xi.morphism_map[static_cast<std::size_t>(a.morphisms[static_cast<std::size_t>(m)])], xi.morphism_map[static_cast<std::size_t>(m)]);
    std::set<int> obj_images(xi.object_map.begin(), xi.object_map.end());
    std::set<int> mor_images(xi.morphism_map.begin(), xi.morphism_map.end());
    EXPECT_EQ(static_cast<int>(obj_images.size()), quotient.object_count());
    EXPECT_EQ(static_cast<int>(obj_images.size()), group_side.category.object_count());
    EXPECT_EQ(static_cast<int>(mor_images.size()), quotient.morphism_count());
    EXPECT_EQ(static_cast<int>(mor_images.size()), group_side.category.morphism_count());
    EXPECT_EQ(quotient.object_count(), 2);
    EXPECT_EQ(quotient.morphism_count(), 8);
    // G-equivariance.
    for (int x = 0; x < g->order(); ++x)
        for (int o = 0; o < chaotic_side.category.object_count(); ++o)
            EXPECT_EQ(xi.object_map[static_cast<std::size_t>(chaotic_side.category.act_object(x, o))],
                      group_side.category.act_object(x, xi.object_map[static_cast<std::size_t>(o)]));
    for (int x = 0; x < g->order(); ++x)
        for (int m = 0; m < chaotic_side.category.morphism_count(); ++m)
            EXPECT_EQ(xi.morphism_map[static_cast<std::size_t>(chaotic_side.category.act_morphism(x, m))],
                      group_side.category.act_morphism(x, xi.morphism_map[static_cast<std::size_t>(m)]));
}
