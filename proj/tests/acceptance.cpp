// One PASS/FAIL line per acceptance criterion, with timings.  Exits 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "eqcat/burnside.hpp"
#include "eqcat/free_perm.hpp"
#include "eqcat/nerve.hpp"
#include "eqcat/operad.hpp"
#include "eqcat/pqr_sets.hpp"

using namespace eqcat;

namespace {

GroupPtr grp(const std::string& name) { return std::make_shared<const FiniteGroup>(preset_group(name)); }

std::vector<std::pair<std::string, FinGSet>> grid_sets(const GroupPtr& g) {
    return {{"empty", empty_gset(g)}, {"point", trivial_gset(g, 1)}, {"regular", regular_gset(g)}, {"fixed2", trivial_gset(g, 2)}};
}

struct Verdict {
    bool pass = true;
    std::string note;
    void fail(const std::string& why) {
        if (pass) note = why;
        else if (note.size() < 400) note += "; " + why;
        pass = false;
    }
};

std::string failed_laws(const LawReport& r) {
    std::string out;
    for (const auto& l : r.laws)
        if (!l.pass) out += (out.empty() ? "" : ", ") + l.law;
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict operad_laws() {
    Verdict v;
    struct Case {
        std::string name;
        int jmax;
    };
    for (const Case& c : {Case{"trivial", 4}, Case{"C2", 3}, Case{"C3", 3}, Case{"S3", 3}}) {
        const auto g = grp(c.name);
        VerifyBounds b;
        b.jmax = c.jmax;
        // S3 cannot be exhausted in time; a smaller budget keeps its sampled run short.
        if (c.name == "S3") b.family_budget = 2'000'000;
        const auto t0 = std::chrono::steady_clock::now();
        const auto op = g->order() == 1 ? barratt_eccles(c.jmax) : og_operad(g, c.jmax);
        const auto r = verify_operad(op, b);
        const double s = seconds_since(t0);
        std::uint64_t sampled = 0;
        for (const auto& l : r.laws) sampled += l.sampled;
        std::cerr << "  operad " << c.name << " jmax " << c.jmax << ": " << s << " s, sampled " << sampled << "\n";
        if (!r.pass()) v.fail(c.name + ": " + failed_laws(r));
        if (sampled) v.fail(c.name + ": families over the budget were sampled, not exhausted (" + std::to_string(sampled) + " samples)");
        if (s >= 60) v.fail(c.name + ": took " + std::to_string(s) + " s");
    }
    return v;
}

Verdict pairing_laws() {
    Verdict v;
    const auto op = barratt_eccles(9);
    const Pairing p(op);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify_pairing(p, PairingBounds{});
    const double s = seconds_since(t0);
    std::cerr << report_text(r);
    if (!r.pass()) v.fail("literal forms fail: " + failed_laws(r));
    if (s >= 30) v.fail("took " + std::to_string(s) + " s");
    return v;
}

Verdict catone_grid() {
    Verdict v;
    for (const auto& name : {"C2", "C3", "S3"}) {
        const auto g = grp(name);
        for (const auto& [xname, x] : grid_sets(g))
            for (int j = 0; j <= 3; ++j) {
                const auto r = catone_check(x, j);
                const std::string at = std::string(name) + " X=" + xname + " j=" + std::to_string(j);
                if (!r.laws.pass()) v.fail(at + ": " + failed_laws(r.laws));
                if (r.source_objects != r.target_objects || r.source_morphisms != r.target_morphisms) v.fail(at + ": counts differ");
            }
    }
    return v;
}

Verdict cattwo_grid() {
    Verdict v;
    for (const auto& name : {"C2", "C3", "S3"}) {
        const auto g = grp(name);
        for (const auto& [xname, x] : grid_sets(g)) {
            const auto r = cattwo_check(x, 3);
            if (!r.laws.pass()) v.fail(std::string(name) + " X=" + xname + ": " + failed_laws(r.laws));
        }
    }
    return v;
}

Verdict fixedcat() {
    Verdict v;
    for (const auto& name : {"trivial", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3"}) {
        const auto g = grp(name);
        for (const auto& pn : {"S2", "S3", "S4"}) {
            const auto pi = preset_group(pn);
            for (const auto& h : all_subgroups(*g)) {
                const auto r = bgpi_fixed_check(g, pi, h);
                if (!r.pass())
                    v.fail(std::string(name) + "/" + pn + " |H|=" + std::to_string(h.order()) + ": " +
                           std::to_string(r.components) + " components vs " + std::to_string(r.expected_components));
            }
        }
    }
    const auto z2 = grp("C2");
    const auto r = bgpi_fixed_check(z2, preset_group("S3"), Subgroup::whole(*z2));
    if (r.components != 2 || r.vertex_orders != std::multiset<std::int64_t>{6, 2}) v.fail("C2/S3 at G is not 2 components with {6,2}");
    return v;
}

// Conjugacy classes of subgroups counted directly from the subgroup list.
int subgroup_class_count(const FiniteGroup& g) {
    std::set<std::set<std::uint64_t>> classes;
    for (const auto& h : all_subgroups(g)) {
        std::set<std::uint64_t> cls;
        for (int x = 0; x < g.order(); ++x) cls.insert(conjugate(g, h, x).mask());
        classes.insert(cls);
    }
    return static_cast<int>(classes.size());
}

Verdict burnside() {
    Verdict v;
    const std::vector<std::pair<std::string, int>> groups{{"C2", 2}, {"C3", 2}, {"C4", 3}, {"C2xC2", 5}, {"S3", 4}, {"Q8", 6}};
    for (const auto& [name, classes] : groups) {
        const auto g = grp(name);
        for (const auto& x : {empty_gset(g), trivial_gset(g, 1), regular_gset(g)})
            if (!tom_dieck_pi0(x).pass()) v.fail(name + " |X|=" + std::to_string(x.size()) + ": cross-check");
        const auto total = tom_dieck_pi0(trivial_gset(g, 1)).total;
        if (total != classes || subgroup_class_count(*g) != classes)
            v.fail(name + ": total " + std::to_string(total) + ", wanted " + std::to_string(classes));
        const auto table = table_of_marks(*g);
        const auto cls = subgroup_classes(*g);
        for (std::size_t i = 0; i < table.size(); ++i)
            for (std::size_t k = 0; k < table.size(); ++k) {
                const auto& rep = cls[i].representative;
                const std::int64_t weyl = normalizer(*g, rep).order() / rep.order();
                if ((k > i && table[i][k] != 0) || (k == i && table[i][k] != weyl)) v.fail(name + ": marks not triangular with diagonal |WH|");
            }
    }
    return v;
}

Verdict q8_obstruction() {
    Verdict v;
    const auto q8 = grp("Q8");
    Subgroup center;
    for (const auto& h : all_subgroups(*q8))
        if (h.order() == 2) center = h;
    const auto free_center = regular_gset(std::make_shared<const FiniteGroup>(subgroup_as_group(*q8, center)));
    const auto found = extensions_of_restriction(q8, center, free_center);
    if (!found.empty()) v.fail(std::to_string(found.size()) + " extensions found");
    return v;
}

Verdict omega() {
    Verdict v;
    for (const auto& name : {"C2", "C3"}) {
        const auto g = grp(name);
        for (const auto& x : {trivial_gset(g, 1), regular_gset(g)}) {
            const auto r = omega_check(x, 2);
            if (!r.laws.pass()) v.fail(std::string(name) + " |X|=" + std::to_string(x.size()) + ": " + failed_laws(r.laws));
            for (const auto& s : r.slices)
                if (s.source_classes != s.target_classes) v.fail(std::string(name) + ": slice class counts differ");
        }
    }
    return v;
}

Verdict lambda() {
    Verdict v;
    PqrOptions opt;
    for (const auto& name : {"trivial", "C2", "C3", "C2xC2", "S3"}) {
        const auto g = grp(name);
        LawReport r = pq_laws(g, opt);
        r.merge(lambda_laws(g, opt));
        if (g->order() <= 4) r.merge(fixed_object_dichotomy(g, 2, opt));
        if (!r.pass()) v.fail(std::string(name) + ": " + failed_laws(r));
        for (const auto& l : r.laws) {
            if (l.sampled > 0 && l.sampled < 500) v.fail(std::string(name) + ": " + l.law + " sampled only " + std::to_string(l.sampled));
            if (l.sampled == 0 && l.checked == 0) v.fail(std::string(name) + ": " + l.law + " never exercised");
        }
    }
    return v;
}

int components(const GFinCat& c) {
    std::vector<int> parent(static_cast<std::size_t>(c.object_count()));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]); };
    int n = c.object_count();
    for (int m = 0; m < c.morphism_count(); ++m) {
        const int a = find(c.src(m)), b = find(c.tgt(m));
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --n;
        }
    }
    return n;
}

Verdict homology_sanity() {
    Verdict v;
    const AbelianGroup zero{}, z2{0, {2}};
    if (homology(group_as_category(preset_group("C2")), 3).groups[1] != z2) v.fail("H1 of C2 is not Z/2");
    for (int n = 1; n <= 4; ++n) {
        const auto h = homology(chaotic(n), 3);
        if (h.groups[1] != zero || h.groups[2] != zero) v.fail("chaotic(" + std::to_string(n) + ") has homology");
    }
    const auto arrow = load_category(R"({"objects": ["a", "b"],
        "morphisms": [{"id": "1a", "src": "a", "tgt": "a"}, {"id": "1b", "src": "b", "tgt": "b"}, {"id": "f", "src": "a", "tgt": "b"}],
        "identities": {"a": "1a", "b": "1b"},
        "compose": [["1a", "1a", "1a"], ["1b", "1b", "1b"], ["f", "1a", "f"], ["1b", "f", "f"]]})");
    const std::vector<std::pair<std::string, GFinCat>> corpus{
        {"terminal", terminal_category()},
        {"discrete(3)", discrete_category(3)},
        {"chaotic(3)", chaotic(3)},
        {"C2", group_as_category(preset_group("C2"))},
        {"S3", group_as_category(preset_group("S3"))},
        {"arrow", arrow},
        {"chaotic(2)+C3", coproduct(chaotic(2), group_as_category(preset_group("C3")))},
        {"discrete(2)xchaotic(2)", product(discrete_category(2), chaotic(2))},
    };
    for (const auto& [name, c] : corpus)
        if (homology(c, 3).groups[0] != AbelianGroup{components(c), {}}) v.fail(name + ": H0 rank differs from component count");
    return v;
}

Verdict spans() {
    Verdict v;
    const auto z2 = grp("C2");
    const auto r = span_laws({z2, {trivial_gset(z2, 1), regular_gset(z2)}}, 2);
    if (!r.laws.pass()) v.fail(failed_laws(r.laws));
    for (const auto& l : r.laws.laws)
        if (l.checked == 0) v.fail(l.law + " never exercised");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"operad laws, exhaustive and under 60 s", operad_laws},
        {"pairing laws and permutativity, under 30 s", pairing_laws},
        {"explicit functor is an isomorphism on the grid", catone_grid},
        {"fixed free, wreath and G-set skeleta agree on the grid", cattwo_grid},
        {"fixed components and vertex orders for |G| <= 6", fixedcat},
        {"Burnside and tom Dieck pi0", burnside},
        {"no 2-element Q8-set restricts to the free center-set", q8_obstruction},
        {"omega skeleton agreement", omega},
        {"lambda-action and P/Q laws", lambda},
        {"homology sanity", homology_sanity},
        {"span bicategory laws", spans},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("error: ") + e.what());
        }
        std::ostringstream line;
        line << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << std::fixed
             << std::setprecision(1) << seconds_since(t0) << " s)";
        if (!v.pass) line << ": " << v.note;
        std::cout << line.str() << std::endl;
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
