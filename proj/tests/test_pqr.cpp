#include <gtest/gtest.h>

#include <set>

#include "eqcat/errors.hpp"
#include "eqcat/pqr_sets.hpp"

using namespace eqcat;

namespace {

GroupPtr grp(const std::string& name) { return std::make_shared<const FiniteGroup>(preset_group(name)); }

void expect_all_pass(const LawReport& r, const std::string& context) {
    EXPECT_TRUE(r.pass()) << context << "\n" << report_text(r);
    for (const auto& law : r.laws) EXPECT_GT(law.checked + law.sampled, 0u) << context << ": " << law.law;
}

}  // namespace

TEST(Universe, Prefix) {
    const Universe triv(grp("trivial"), 4);
    EXPECT_EQ(triv.prefix().size(), 4u);
    const Universe u(grp("C2"), 2);
    const auto pts = u.prefix();
    EXPECT_EQ(pts.size(), 6u);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    std::multiset<int> sizes;
    for (const auto& p : pts) sizes.insert(u.isotropy(p).order());
    EXPECT_EQ(sizes, (std::multiset<int>{1, 1, 1, 1, 2, 2}));
    for (int g = 0; g < 2; ++g) EXPECT_EQ(u.act(g, u.basepoint()), u.basepoint());
}

TEST(Universe, ActionIsAnAction) {
    for (const auto& name : {"C3", "S3"}) {
        const auto g = grp(name);
        const Universe u(g, 2);
        for (const auto& p : u.prefix())
            for (int a = 0; a < g->order(); ++a) {
                EXPECT_EQ(u.act(0, p), p);
                for (int b = 0; b < g->order(); ++b) EXPECT_EQ(u.act(a, u.act(b, p)), u.act(g->mul(a, b), p));
            }
    }
}

TEST(Expr, Examples) {
    const Universe u(grp("C2"), 2);
    const UPoint x{0, 0, 1};
    EXPECT_EQ(evaluate(u, expr_identity(), upoint(x)), upoint(x));
    EXPECT_EQ(evaluate(u, expr_interleave(2), Elem{1, {x}}), upoint(UPoint{0, 1, 1}));
    EXPECT_EQ(evaluate(u, expr_deinterleave(2), upoint(UPoint{0, 5, 1})), (Elem{1, {UPoint{0, 2, 1}}}));
    EXPECT_THROW(evaluate(u, expr_interleave(2), Elem{0, {x, x}}), DomainShapeMismatch);
    const Elem ones{0, {u.basepoint(), u.basepoint()}};
    EXPECT_EQ(evaluate(u, rg_bijection(2), ones), upoint(u.basepoint()));
    const auto one = rg_bijection(1);
    for (const auto& p : u.prefix()) EXPECT_EQ(evaluate(u, one, upoint(p)), upoint(p));
}

TEST(Expr, CanonicalPowerRoundTripsAndPreservesIsotropy) {
    for (const auto& name : {"C2", "S3"}) {
        const Universe u(grp(name), 2);
        std::mt19937_64 rng(3);
        const auto f = rg_bijection(2), inv = expr_power_inverse(2);
        for (int s = 0; s < 500; ++s) {
            const auto x = sample_point(u, power_shape(2), rng);
            const auto y = evaluate(u, f, x);
            EXPECT_EQ(evaluate(u, inv, y), x);
            const Subgroup stab(u.isotropy(x.coords[0]).mask() & u.isotropy(x.coords[1]).mask());
            EXPECT_EQ(stab.order(), u.isotropy(y.coords[0]).order());
        }
    }
}

// A translation by a non-central element is not equivariant, so the
// conjugation used by the equivariance laws separates it from itself.
TEST(Expr, ConjugationDetectsNonEquivariantMaps) {
    const auto g = grp("S3");
    const Universe u(g, 1);
    bool moved = false;
    for (int a = 0; a < g->order() && !moved; ++a) {
        const auto f = expr_translate(a);
        for (int h = 0; h < g->order() && !moved; ++h)
            for (const auto& p : u.prefix())
                if (evaluate(u, conjugate_expr(*g, h, f), upoint(p)) != evaluate(u, f, upoint(p))) moved = true;
    }
    EXPECT_TRUE(moved);
    // Sigma_2 acts freely on the canonical bijection.
    const Universe v(grp("C2"), 2);
    std::mt19937_64 rng(5);
    const auto swapped = expr_compose(rg_bijection(2), expr_sigma_power(Perm{1, 0}));
    bool differs = false;
    for (int s = 0; s < 100 && !differs; ++s) {
        const auto x = sample_point(v, power_shape(2), rng);
        differs = evaluate(v, swapped, x) != evaluate(v, rg_bijection(2), x);
    }
    EXPECT_TRUE(differs);
}

TEST(Operads, PQLaws) {
    for (const auto& name : {"trivial", "C2", "C3", "S3"}) expect_all_pass(pq_laws(grp(name), PqrOptions{}), name);
}

TEST(Operads, LambdaLaws) {
    for (const auto& name : {"trivial", "C2", "C3", "S3"}) expect_all_pass(lambda_laws(grp(name), PqrOptions{}), name);
}

TEST(Operads, FixedObjectDichotomy) {
    for (const auto& name : {"trivial", "C2", "C3", "C4", "C2xC2"})
        expect_all_pass(fixed_object_dichotomy(grp(name), 2, PqrOptions{}), name);
}

TEST(FiniteSets, ThetaAndXiExamples) {
    const auto g = grp("C2");
    const Universe u(g, 2);
    std::mt19937_64 rng(7);
    EXPECT_TRUE(theta_E(u, sample_pg(u, 0, rng), {}).empty());
    const USubset a{UPoint{0, 0, 0}}, b{UPoint{1, 0, 0}};
    for (int s = 0; s < 20; ++s) {
        EXPECT_EQ(theta_E(u, sample_pg(u, 2, rng), {a, b}).size(), 2u);
        EXPECT_EQ(xi_E(u, sample_qg(u, 2, rng), {a, b}).size(), 1u);
        EXPECT_TRUE(xi_E(u, sample_qg(u, 2, rng), {a, {}}).empty());
    }
    EXPECT_THROW(theta_E(u, sample_pg(u, 2, rng), {a}), ShapeMismatch);
}

TEST(FiniteSets, ThetaOverXRecordsBothLabels) {
    const auto g = grp("C2");
    const Universe u(g, 2);
    std::mt19937_64 rng(9);
    const EGXObject a{{UPoint{0, 0, 0}}, {0}}, b{{UPoint{0, 0, 1}}, {1}};
    for (int s = 0; s < 20; ++s) {
        const auto c = theta_EGX(u, sample_pg(u, 2, rng), {a, b});
        ASSERT_EQ(c.a.size(), 2u);
        EXPECT_EQ(std::multiset<int>(c.p.begin(), c.p.end()), (std::multiset<int>{0, 1}));
    }
}

TEST(FiniteSets, ActionLaws) {
    PqrOptions opt;
    opt.samples = 200;
    for (const auto& name : {"C2", "C3", "S3"}) expect_all_pass(e_action_laws(grp(name), opt), name);
}

TEST(FiniteSets, Categories) {
    const auto g = grp("C2");
    const Universe u(g, 2);
    const auto e = e_category(u, u.prefix(), 2);
    EXPECT_EQ(e.objects.size(), 1u + 6u + 15u);
    EXPECT_TRUE(e.groupoid.category->has_action());
    const auto ex = egx_category(u, trivial_gset(g, 1), u.prefix(), 2);
    EXPECT_EQ(ex.objects.size(), e.objects.size());
    EXPECT_THROW(e_category(u, {UPoint{0, 0, 0}}, 1), ShapeMismatch);
    const Universe big(grp("S3"), 2);
    EXPECT_THROW(e_category(big, big.prefix(), 2), SizeBudgetExceeded);
}

TEST(FiniteSets, ModelLaws) {
    for (const auto& name : {"C2", "C3"}) {
        const auto g = grp(name);
        for (const auto& x : {trivial_gset(g, 1), regular_gset(g)}) expect_all_pass(e_model_laws(x, 2, 2), name);
    }
}

TEST(Omega, C2OverPoint) {
    const auto g = grp("C2");
    const auto r = omega_check(trivial_gset(g, 1), 2);
    expect_all_pass(r.laws, "C2");
    for (const auto& s : r.slices) {
        EXPECT_EQ(s.source_classes, s.target_classes);
        if (s.arity == 0 || s.h.order() == 1) EXPECT_EQ(s.source_classes, 1u);
        if (s.arity == 2 && s.h.order() == 2) EXPECT_EQ(s.source_classes, 2u);
    }
    EXPECT_EQ(r.slices.size(), 6u);
}

TEST(Omega, SkeletaAgree) {
    for (const auto& name : {"C2", "C3", "C4", "S3"}) {
        const auto g = grp(name);
        for (const auto& x : {empty_gset(g), trivial_gset(g, 1), regular_gset(g), trivial_gset(g, 2)})
            expect_all_pass(omega_check(x, 2).laws, name + std::string(" |X|=") + std::to_string(x.size()));
    }
}
