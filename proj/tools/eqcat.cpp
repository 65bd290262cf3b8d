#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqcat/burnside.hpp"
#include "eqcat/errors.hpp"
#include "eqcat/free_perm.hpp"
#include "eqcat/nerve.hpp"
#include "eqcat/operad.hpp"
#include "eqcat/pqr_sets.hpp"

using namespace eqcat;
using nlohmann::json;

namespace {

struct Flags {
    std::string group = "C2";
    std::string gset;
    std::string pi = "S3";
    std::string category;
    std::string box_override;
    std::string dump_chains;
    std::optional<int> jmax;
    int depth = 3;
    int qmax = 3;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> budget;
    bool json = false;
    bool csv = false;
};

struct Check {
    std::string law;
    std::string domain;
    bool pass = true;
    std::string witness;
};

struct Outcome {
    json params = json::object();
    std::vector<std::string> lines;
    std::vector<Check> checks;

    void add(const LawReport& r, const std::string& domain) {
        for (const auto& l : r.laws) {
            std::string d = domain + (domain.empty() ? "" : ", ") + "checked=" + std::to_string(l.checked);
            if (l.sampled) d += " sampled=" + std::to_string(l.sampled);
            checks.push_back({l.law, d, l.pass, l.witness});
        }
    }
    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_file(const std::string& s) { return s.find('/') != std::string::npos || s.ends_with(".json"); }

GroupPtr load_group_arg(const std::string& spec) {
    auto g = is_file(spec) ? load_group(read_file(spec)) : preset_group(spec);
    return std::make_shared<const FiniteGroup>(std::move(g));
}

// Keywords for the standard test sets, or a G-set file.
FinGSet load_gset_arg(const std::string& spec, const GroupPtr& group) {
    if (spec == "empty") return empty_gset(group);
    if (spec == "point") return trivial_gset(group, 1);
    if (spec == "regular") return regular_gset(group);
    if (spec == "fixed2") return trivial_gset(group, 2);
    return load_gset(read_file(spec), [&](const std::string& name) {
        if (name == group->name()) return group;
        auto g = std::make_shared<const FiniteGroup>(preset_group(name));
        if (!(*g == *group)) throw GroupMismatch("G-set is over " + name + ", not " + group->name());
        return GroupPtr(g);
    });
}

// The given set, or the four standard ones.
std::vector<std::pair<std::string, FinGSet>> gset_grid(const Flags& f, const GroupPtr& g) {
    if (!f.gset.empty()) return {{f.gset, load_gset_arg(f.gset, g)}};
    std::vector<std::pair<std::string, FinGSet>> out;
    for (const char* k : {"empty", "point", "regular", "fixed2"}) out.emplace_back(k, load_gset_arg(k, g));
    return out;
}

std::string members_text(const FiniteGroup& g, const Subgroup& h) {
    std::string out = "{";
    bool first = true;
    for (int m : h.members()) {
        out += (first ? "" : ",") + g.element_name(m);
        first = false;
    }
    return out + "}";
}

std::string list_text(const std::vector<std::int64_t>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "]";
}

std::string multiset_text(const std::multiset<std::int64_t>& v) {
    return list_text(std::vector<std::int64_t>(v.begin(), v.end()));
}

Outcome group_info(const Flags& f) {
    const auto g = load_group_arg(f.group);
    Outcome o;
    o.params = {{"group", f.group}};
    o.lines.push_back("group " + g->name() + " of order " + std::to_string(g->order()));
    std::string elems = "elements:";
    for (const auto& e : g->elements()) elems += " " + e;
    o.lines.push_back(elems);
    const auto classes = subgroup_classes(*g);
    o.lines.push_back(std::to_string(all_subgroups(*g).size()) + " subgroups in " + std::to_string(classes.size()) +
                      " conjugacy classes");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        o.lines.push_back("  class " + std::to_string(i + 1) + ": order " + std::to_string(c.representative.order()) +
                          ", conjugates " + std::to_string(c.members.size()) + ", |WH| " +
                          std::to_string(c.weyl.order()) + ", representative " + members_text(*g, c.representative));
    }
    return o;
}

Outcome gset_classify(const Flags& f) {
    if (f.gset.empty()) throw ParseError("gset classify needs --gset");
    const auto g = load_group_arg(f.group);
    const auto x = load_gset_arg(f.gset, g);
    const auto classes = subgroup_classes(*g);
    Outcome o;
    o.params = {{"group", f.group}, {"gset", f.gset}};
    o.lines.push_back("G-set of size " + std::to_string(x.size()) + " over " + g->name() + " with " +
                      std::to_string(orbits(x).size()) + " orbits");
    for (const auto& [k, n] : orbit_type(x, classes).entries)
        o.lines.push_back("  " + std::to_string(n) + " x G/H, H of order " +
                          std::to_string(classes[static_cast<std::size_t>(k)].representative.order()) + " (class " +
                          std::to_string(k + 1) + ")");
    return o;
}

Outcome burnside_marks(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const auto table = table_of_marks(*g);
    const auto classes = subgroup_classes(*g);
    Outcome o;
    o.params = {{"group", f.group}};
    o.lines.push_back(json(table).dump());
    std::istringstream body(f.csv ? marks_csv(*g, table) : marks_text(*g, table));
    for (std::string line; std::getline(body, line);) o.lines.push_back(line);
    Check c{"lower triangular with diagonal |WH|", "G=" + g->name(), true, {}};
    for (std::size_t i = 0; i < table.size() && c.pass; ++i)
        for (std::size_t k = 0; k < table.size() && c.pass; ++k) {
            const std::int64_t want = k == i ? classes[i].weyl.order() : table[i][k];
            if ((k > i && table[i][k] != 0) || table[i][k] != want) {
                c.pass = false;
                c.witness = "entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")";
            }
        }
    o.checks.push_back(c);
    return o;
}

Outcome burnside_tomdieck(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const std::string spec = f.gset.empty() ? "point" : f.gset;
    const auto x = load_gset_arg(spec, g);
    const auto r = tom_dieck_pi0(x);
    Outcome o;
    o.params = {{"group", f.group}, {"gset", spec}};
    o.lines.push_back("ranks |X^H/WH| per subgroup class: " + list_text(r.ranks));
    o.lines.push_back("total " + std::to_string(r.total));
    o.checks.push_back({"ranks match orbits over X found by search", "G=" + g->name() + " X=" + spec, r.pass(),
                        r.pass() ? "" : "search gives " + list_text(r.oracle_ranks)});
    return o;
}

Outcome verify_operad_cmd(const Flags& f) {
    const auto g = load_group_arg(f.group);
    VerifyBounds b;
    b.jmax = f.jmax.value_or(3);
    if (f.budget) b.family_budget = *f.budget;
    if (f.samples) b.samples = *f.samples;
    b.seed = f.seed;
    const auto op = g->order() == 1 ? barratt_eccles(b.jmax) : og_operad(g, b.jmax);
    Outcome o;
    o.params = {{"group", f.group}, {"jmax", b.jmax}, {"budget", b.family_budget}, {"samples", b.samples}, {"seed", b.seed}};
    o.add(verify_operad(op, b), "G=" + g->name() + " j<=" + std::to_string(b.jmax));
    return o;
}

// {"overrides": [{"c": [..], "d": [..], "value": [..]}]} with 1-based permutations.
void apply_box_overrides(Pairing& p, const std::string& path) {
    const auto doc = json::parse(read_file(path));
    auto perm = [](const json& v) {
        std::vector<int> img;
        for (int x : v.get<std::vector<int>>()) img.push_back(x - 1);
        return OpObject{Perm(img)};
    };
    for (const auto& e : doc.at("overrides")) p.override_box(perm(e.at("c")), perm(e.at("d")), perm(e.at("value")));
}

Outcome verify_pairing_cmd(const Flags& f) {
    PairingBounds b;
    b.jk_max = f.jmax.value_or(3);
    const auto op = barratt_eccles(std::max(9, b.jk_max * b.jk_max));
    Pairing p(op);
    if (!f.box_override.empty()) apply_box_overrides(p, f.box_override);
    Outcome o;
    o.params = {{"jmax", b.jk_max}, {"box_override", f.box_override}};
    o.add(verify_pairing(p, b), "j,k<=" + std::to_string(b.jk_max));
    return o;
}

Outcome verify_catone(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const int jmax = f.jmax.value_or(3);
    Outcome o;
    o.params = {{"group", f.group}, {"gset", f.gset}, {"jmax", jmax}};
    for (const auto& [name, x] : gset_grid(f, g))
        for (int j = 0; j <= jmax; ++j) {
            const auto r = catone_check(x, j);
            o.add(r.laws, "G=" + g->name() + " X=" + name + " j=" + std::to_string(j) + " objects=" +
                              std::to_string(r.source_objects) + " morphisms=" + std::to_string(r.source_morphisms));
        }
    return o;
}

Outcome verify_cattwo(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const int jmax = f.jmax.value_or(3);
    Outcome o;
    o.params = {{"group", f.group}, {"gset", f.gset}, {"jmax", jmax}};
    for (const auto& [name, x] : gset_grid(f, g)) {
        const auto r = cattwo_check(x, jmax);
        o.lines.push_back("X=" + name + ": " + std::to_string(r.classes) + " classes");
        std::map<int, std::vector<std::int64_t>> by_arity;
        for (const auto& e : wreath_skeleton(x, jmax)) by_arity[e.arity].push_back(e.automorphisms);
        for (auto& [j, orders] : by_arity) {
            std::sort(orders.begin(), orders.end());
            o.lines.push_back("  arity " + std::to_string(j) + ": automorphism orders " + list_text(orders));
        }
        o.add(r.laws, "G=" + g->name() + " X=" + name + " j<=" + std::to_string(jmax));
    }
    return o;
}

Outcome verify_fixedcat(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const auto pi = load_group_arg(f.pi);
    Outcome o;
    o.params = {{"group", f.group}, {"pi", f.pi}};
    for (const auto& h : all_subgroups(*g)) {
        const auto r = f.budget ? bgpi_fixed_check(g, *pi, h, *f.budget) : bgpi_fixed_check(g, *pi, h);
        const std::string got = std::to_string(r.components) + " components, vertex orders " + multiset_text(r.vertex_orders);
        const std::string want = std::to_string(r.expected_components) + " classes, centralizers " + multiset_text(r.expected_orders);
        o.lines.push_back("H=" + members_text(*g, h) + ": " + got);
        o.checks.push_back({"components and vertex orders match H^1(H;Pi) and centralizers",
                            "G=" + g->name() + " Pi=" + pi->name() + " H=" + members_text(*g, h), r.pass(),
                            r.pass() ? "" : (r.witness.empty() ? got + " vs " + want : r.witness)});
    }
    return o;
}

Outcome verify_omega(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const int jmax = f.jmax.value_or(2);
    Outcome o;
    o.params = {{"group", f.group}, {"gset", f.gset}, {"jmax", jmax}};
    auto sets = gset_grid(f, g);
    for (const auto& [name, x] : sets) {
        const auto r = omega_check(x, jmax);
        for (const auto& s : r.slices)
            o.lines.push_back("X=" + name + " H=" + members_text(*g, s.h) + " j=" + std::to_string(s.arity) + ": " +
                              std::to_string(s.source_classes) + " free classes, " + std::to_string(s.target_classes) +
                              " finite-set classes");
        o.add(r.laws, "G=" + g->name() + " X=" + name + " j<=" + std::to_string(jmax) + " all H");
        // The finite-set model only needs as many copies as points.
        if (x.size() > 0)
            o.add(e_model_laws(x, jmax, std::max(1, jmax)),
                  "G=" + g->name() + " X=" + name + " n<=" + std::to_string(jmax) + " depth " + std::to_string(std::max(1, jmax)));
    }
    return o;
}

Outcome verify_spans(const Flags& f) {
    const auto g = load_group_arg(f.group);
    const int jmax = f.jmax.value_or(2);
    std::vector<std::string> names{"point", f.gset.empty() ? "regular" : f.gset};
    SpanSets sets{g, {}};
    for (const auto& n : names) sets.sets.push_back(load_gset_arg(n, g));
    const auto r = span_laws(sets, jmax);
    Outcome o;
    o.params = {{"group", f.group}, {"gset", names[1]}, {"jmax", jmax}};
    o.lines.push_back(std::to_string(r.boundary_excluded) + " triples excluded at the arity cap");
    o.add(r.laws, "G=" + g->name() + " A,B,C in {" + names[0] + "," + names[1] + "} arity<=" + std::to_string(jmax));
    return o;
}

Outcome verify_lambda(const Flags& f) {
    const auto g = load_group_arg(f.group);
    PqrOptions opt;
    opt.depth = f.depth;
    opt.samples = static_cast<int>(f.samples.value_or(500));
    opt.seed = f.seed;
    const int jmax = f.jmax.value_or(2);
    Outcome o;
    o.params = {{"group", f.group}, {"depth", opt.depth}, {"samples", opt.samples}, {"seed", opt.seed}, {"jmax", jmax}};
    const std::string domain = "G=" + g->name() + " depth " + std::to_string(opt.depth);
    o.add(pq_laws(g, opt), domain);
    o.add(lambda_laws(g, opt), domain);
    o.add(fixed_object_dichotomy(g, jmax, opt), domain + " j<=" + std::to_string(jmax));
    o.add(e_action_laws(g, opt), domain + " subsets of 4 prefix points");
    return o;
}

GFinCat load_category_arg(const Flags& f) {
    const auto& c = f.category;
    if (c.empty()) return group_as_category(*load_group_arg(f.group));
    if (c == "terminal") return terminal_category();
    if (c.starts_with("chaotic:")) return chaotic(std::stoi(c.substr(8)));
    if (c.starts_with("discrete:")) return discrete_category(std::stoi(c.substr(9)));
    const auto text = read_file(c);
    return load_category(text, json::parse(text).contains("action") ? load_group_arg(f.group) : nullptr);
}

Outcome nerve_homology(const Flags& f) {
    const auto c = load_category_arg(f);
    const auto budget = f.budget.value_or(kDefaultNerveBudget);
    const auto h = homology(c, f.qmax, budget);
    Outcome o;
    o.params = {{"category", f.category.empty() ? "group " + f.group : f.category}, {"qmax", f.qmax}, {"budget", budget}};
    for (std::size_t q = 0; q < h.groups.size(); ++q) o.lines.push_back("H" + std::to_string(q) + " = " + format_abelian(h.groups[q]));
    if (!f.dump_chains.empty()) {
        std::ofstream out(f.dump_chains);
        if (!out) throw ParseError("cannot write " + f.dump_chains);
        write_chains_csv(out, h);
    }
    const auto n = nerve_truncated(c, f.qmax, budget);
    const auto bad = simplicial_identity_failure(n);
    o.checks.push_back({"simplicial identities", "q<=" + std::to_string(f.qmax), !bad, bad.value_or("")});
    if (c.is_groupoid()) {
        const auto comps = pi0_and_vertex(c);
        const bool ok = h.groups.empty() || h.groups[0].rank == static_cast<int>(comps.size());
        o.checks.push_back({"H0 rank equals the number of components", std::to_string(comps.size()) + " components", ok,
                            ok ? "" : "rank " + std::to_string(h.groups[0].rank)});
    }
    return o;
}

std::string render_text(const std::string& command, const Outcome& o) {
    std::string out = command + "\n";
    for (const auto& l : o.lines) out += l + "\n";
    for (const auto& c : o.checks) {
        out += (c.pass ? "PASS " : "FAIL ") + c.law + " [" + c.domain + "]";
        if (!c.pass) out += " witness: " + c.witness;
        out += "\n";
    }
    if (!o.checks.empty()) out += std::string(o.pass() ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string render_json(const std::string& command, const Outcome& o) {
    json checks = json::array();
    for (const auto& c : o.checks) {
        json j{{"law", c.law}, {"domain", c.domain}, {"status", c.pass ? "PASS" : "FAIL"}};
        if (!c.pass) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return json{{"command", command}, {"params", o.params}, {"checks", checks}, {"output", o.lines}}.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite checks for equivariant operads, permutative G-categories and their fixed points"};
    app.fallthrough();
    app.require_subcommand(1);
    Flags f;
    app.add_option("--group", f.group, "preset name or group file")->capture_default_str();
    app.add_option("--gset", f.gset, "G-set file, or empty, point, regular, fixed2");
    app.add_option("--pi", f.pi, "target group for verify fixedcat")->capture_default_str();
    app.add_option("--category", f.category, "category file, or terminal, chaotic:N, discrete:N");
    app.add_option("--jmax", f.jmax, "largest arity");
    app.add_option("--depth", f.depth, "copies of each orbit in the prefix of U")->capture_default_str();
    app.add_option("--qmax", f.qmax, "nerve truncation level")->capture_default_str();
    app.add_option("--samples", f.samples, "sample count for sampled checks");
    app.add_option("--seed", f.seed, "sampling seed")->capture_default_str();
    app.add_option("--budget", f.budget, "size budget before sampling or refusing");
    app.add_option("--box-override", f.box_override, "replace pairing values, for exercising the verifier");
    app.add_option("--dump-chains", f.dump_chains, "write boundary matrices as CSV");
    app.add_flag("--json", f.json, "JSON report");
    app.add_flag("--csv", f.csv, "CSV table of marks");

    const std::vector<std::pair<std::string, std::function<Outcome(const Flags&)>>> commands{
        {"group info", group_info},
        {"gset classify", gset_classify},
        {"burnside marks", burnside_marks},
        {"burnside tomdieck", burnside_tomdieck},
        {"verify operad", verify_operad_cmd},
        {"verify pairing", verify_pairing_cmd},
        {"verify catone", verify_catone},
        {"verify cattwo", verify_cattwo},
        {"verify fixedcat", verify_fixedcat},
        {"verify omega", verify_omega},
        {"verify spans", verify_spans},
        {"verify lambda", verify_lambda},
        {"nerve homology", nerve_homology},
    };
    std::map<std::string, CLI::App*> groups;
    std::map<CLI::App*, std::size_t> leaves;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const auto& name = commands[i].first;
        const auto space = name.find(' ');
        auto& parent = groups[name.substr(0, space)];
        if (!parent) {
            parent = app.add_subcommand(name.substr(0, space));
            parent->require_subcommand(1);
        }
        leaves[parent->add_subcommand(name.substr(space + 1))] = i;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (const auto& [leaf, i] : leaves) {
            if (!leaf->parsed()) continue;
            const auto& [name, run] = commands[i];
            const Outcome o = run(f);
            std::cout << (f.json ? render_json(name, o) : render_text(name, o));
            return o.pass() ? 0 : 1;
        }
        throw UnknownCommand("no command given");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
