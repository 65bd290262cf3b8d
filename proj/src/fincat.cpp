#include "eqcat/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "eqcat/errors.hpp"

namespace eqcat {

namespace {

std::uint64_t key(int g, int f) { return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint32_t>(f); }

bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Subcategory on the given objects and morphisms (both closed), no action.
GFinCat subcategory(const GFinCat& c, const std::vector<int>& objects, const std::vector<int>& morphisms) {
    std::vector<int> obj_pos(static_cast<std::size_t>(c.object_count()), -1);
    std::vector<int> mor_pos(static_cast<std::size_t>(c.morphism_count()), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        obj_pos[static_cast<std::size_t>(objects[i])] = static_cast<int>(i);
        names.push_back(c.object_name(objects[i]));
    }
    std::vector<MorphismSpec> specs;
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
        const int m = morphisms[i];
        mor_pos[static_cast<std::size_t>(m)] = static_cast<int>(i);
        specs.push_back({c.morphism_name(m), obj_pos[static_cast<std::size_t>(c.src(m))],
                         obj_pos[static_cast<std::size_t>(c.tgt(m))]});
    }
    std::vector<int> ids;
    for (int o : objects) ids.push_back(mor_pos[static_cast<std::size_t>(c.identity(o))]);
    std::vector<std::array<int, 3>> comp;
    for (int f : morphisms)
        for (int o : objects) {
            if (c.tgt(f) != o) continue;
            for (int t : objects)
                for (int g : c.hom(o, t)) {
                    if (mor_pos[static_cast<std::size_t>(g)] < 0) continue;
                    const int gf = mor_pos[static_cast<std::size_t>(c.compose(g, f))];
                    if (gf < 0) throw NotACategory("closure", {g, f});
                    comp.push_back({mor_pos[static_cast<std::size_t>(g)], mor_pos[static_cast<std::size_t>(f)], gf});
                }
        }
    return GFinCat(std::move(names), std::move(specs), std::move(ids), comp);
}

}  // namespace

GFinCat::GFinCat(std::vector<std::string> objects, std::vector<MorphismSpec> morphisms, std::vector<int> identities,
                 const std::vector<std::array<int, 3>>& compose, GroupPtr group, std::vector<CatAction> action,
                 bool check_associativity)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      group_(std::move(group)),
      action_(std::move(action)) {
    const int n = object_count();
    const int m = morphism_count();
    homs_.assign(static_cast<std::size_t>(n * n), {});
    for (int f = 0; f < m; ++f) {
        if (src(f) < 0 || src(f) >= n || tgt(f) < 0 || tgt(f) >= n) throw NotACategory("endpoints", {f});
        homs_[static_cast<std::size_t>(src(f) * n + tgt(f))].push_back(f);
    }
    if (static_cast<int>(identities_.size()) != n) throw NotACategory("identities", {});
    for (const auto& [g, f, gf] : compose) {
        if (g < 0 || g >= m || f < 0 || f >= m || gf < 0 || gf >= m) throw NotACategory("compose-range", {g, f, gf});
        if (src(g) != tgt(f)) throw NotACategory("compose-composable", {g, f});
        if (src(gf) != src(f) || tgt(gf) != tgt(g)) throw NotACategory("compose-endpoints", {g, f, gf});
        auto [it, fresh] = compose_.emplace(key(g, f), gf);
        if (!fresh && it->second != gf) throw NotACategory("compose-unique", {g, f});
    }
    validate(check_associativity);
}

int GFinCat::compose(int g, int f) const { return compose_.at(key(g, f)); }

const std::vector<int>& GFinCat::hom(int a, int b) const {
    return homs_[static_cast<std::size_t>(a * object_count() + b)];
}

void GFinCat::validate(bool check_associativity) {
    const int n = object_count();
    const int m = morphism_count();
    for (int o = 0; o < n; ++o) {
        const int i = identity(o);
        if (i < 0 || i >= m || src(i) != o || tgt(i) != o) throw NotACategory("identity", {o});
    }
    for (int f = 0; f < m; ++f)
        for (int o = 0; o < n; ++o)
            for (int g : hom(tgt(f), o))
                if (!compose_.count(key(g, f))) throw NotACategory("compose-total", {g, f});
    for (int f = 0; f < m; ++f) {
        if (compose(identity(tgt(f)), f) != f) throw NotACategory("left-unit", {f});
        if (compose(f, identity(src(f))) != f) throw NotACategory("right-unit", {f});
    }
    for (int f = 0; f < m && check_associativity; ++f)
        for (int b = 0; b < n; ++b)
            for (int g : hom(tgt(f), b))
                for (int c = 0; c < n; ++c)
                    for (int h : hom(b, c))
                        if (compose(compose(h, g), f) != compose(h, compose(g, f)))
                            throw NotACategory("associativity", {h, g, f});
    if (!group_) {
        action_.clear();
        return;
    }
    const FiniteGroup& grp = *group_;
    if (static_cast<int>(action_.size()) != grp.order()) throw NotACategory("action-size", {});
    for (int g = 0; g < grp.order(); ++g) {
        const auto& a = action_[static_cast<std::size_t>(g)];
        if (!is_permutation(a.objects, n) || !is_permutation(a.morphisms, m)) throw NotACategory("action-perm", {g});
        for (int f = 0; f < m; ++f) {
            const int gf = act_morphism(g, f);
            if (src(gf) != act_object(g, src(f)) || tgt(gf) != act_object(g, tgt(f)))
                throw NotACategory("action-endpoints", {g, f});
        }
        for (int o = 0; o < n; ++o)
            if (act_morphism(g, identity(o)) != identity(act_object(g, o))) throw NotACategory("action-identity", {g, o});
        for (const auto& [k, v] : compose_) {
            const int h = static_cast<int>(k >> 32), f = static_cast<int>(k & 0xffffffffu);
            if (compose(act_morphism(g, h), act_morphism(g, f)) != act_morphism(g, v))
                throw NotACategory("action-compose", {g, h, f});
        }
    }
    for (int a = 0; a < grp.order(); ++a)
        for (int b = 0; b < grp.order(); ++b) {
            const int ab = grp.mul(a, b);
            for (int o = 0; o < n; ++o)
                if (act_object(ab, o) != act_object(a, act_object(b, o))) throw NotACategory("action-law", {a, b});
            for (int f = 0; f < m; ++f)
                if (act_morphism(ab, f) != act_morphism(a, act_morphism(b, f))) throw NotACategory("action-law", {a, b});
        }
}

std::optional<int> GFinCat::find_object(std::string_view name) const {
    for (int o = 0; o < object_count(); ++o)
        if (objects_[static_cast<std::size_t>(o)] == name) return o;
    return std::nullopt;
}

std::optional<int> GFinCat::inverse(int m) const {
    for (int g : hom(tgt(m), src(m)))
        if (compose(g, m) == identity(src(m)) && compose(m, g) == identity(tgt(m))) return g;
    return std::nullopt;
}

bool GFinCat::is_groupoid() const {
    for (int m = 0; m < morphism_count(); ++m)
        if (!inverse(m)) return false;
    return true;
}

GFinCat load_category(std::string_view json_text, GroupPtr group) {
    try {
        const auto j = nlohmann::json::parse(json_text);
        std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
        std::map<std::string, int> obj_index, mor_index;
        for (std::size_t i = 0; i < objects.size(); ++i) obj_index[objects[i]] = static_cast<int>(i);
        std::vector<MorphismSpec> morphisms;
        for (const auto& mj : j.at("morphisms")) {
            const auto id = mj.at("id").get<std::string>();
            mor_index[id] = static_cast<int>(morphisms.size());
            morphisms.push_back({id, obj_index.at(mj.at("src").get<std::string>()),
                                 obj_index.at(mj.at("tgt").get<std::string>())});
        }
        std::vector<int> ids(objects.size(), -1);
        for (const auto& [obj, mor] : j.at("identities").items())
            ids[static_cast<std::size_t>(obj_index.at(obj))] = mor_index.at(mor.get<std::string>());
        std::vector<std::array<int, 3>> comp;
        for (const auto& c : j.at("compose")) {
            const auto t = c.get<std::vector<std::string>>();
            if (t.size() != 3) throw ParseError("compose entries are triples");
            comp.push_back({mor_index.at(t[0]), mor_index.at(t[1]), mor_index.at(t[2])});
        }
        std::vector<CatAction> action;
        if (j.contains("action") && !j.at("action").is_null()) {
            if (!group) throw ParseError("category file has an action but no group was given");
            action.resize(static_cast<std::size_t>(group->order()));
            for (int g = 0; g < group->order(); ++g) {
                action[static_cast<std::size_t>(g)].objects.resize(objects.size());
                std::iota(action[static_cast<std::size_t>(g)].objects.begin(), action[static_cast<std::size_t>(g)].objects.end(), 0);
                action[static_cast<std::size_t>(g)].morphisms.resize(morphisms.size());
                std::iota(action[static_cast<std::size_t>(g)].morphisms.begin(), action[static_cast<std::size_t>(g)].morphisms.end(), 0);
            }
            for (const auto& [elt, spec] : j.at("action").items()) {
                const auto g = group->index_of(elt);
                if (!g) throw ParseError("unknown group element '" + elt + "'");
                auto& a = action[static_cast<std::size_t>(*g)];
                for (const auto& [o, img] : spec.at("objects").items())
                    a.objects[static_cast<std::size_t>(obj_index.at(o))] = obj_index.at(img.get<std::string>());
                for (const auto& [mo, img] : spec.at("morphisms").items())
                    a.morphisms[static_cast<std::size_t>(mor_index.at(mo))] = mor_index.at(img.get<std::string>());
            }
        } else {
            group = nullptr;
        }
        return GFinCat(std::move(objects), std::move(morphisms), std::move(ids), comp, std::move(group), std::move(action));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("category file: ") + e.what());
    } catch (const std::out_of_range&) {
        throw ParseError("category file references an unknown object or morphism");
    }
}

GFinCat terminal_category() { return GFinCat({"*"}, {{"id", 0, 0}}, {0}, {{0, 0, 0}}); }

GFinCat discrete_category(int n) {
    std::vector<std::string> names;
    std::vector<MorphismSpec> mors;
    std::vector<int> ids;
    std::vector<std::array<int, 3>> comp;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i + 1));
        mors.push_back({"id" + std::to_string(i + 1), i, i});
        ids.push_back(i);
        comp.push_back({i, i, i});
    }
    return GFinCat(std::move(names), std::move(mors), std::move(ids), comp);
}

GFinCat group_as_category(const FiniteGroup& g) {
    std::vector<MorphismSpec> mors;
    std::vector<std::array<int, 3>> comp;
    for (int a = 0; a < g.order(); ++a) {
        mors.push_back({g.element_name(a), 0, 0});
        for (int b = 0; b < g.order(); ++b) comp.push_back({a, b, g.mul(a, b)});
    }
    return GFinCat({"*"}, std::move(mors), {0}, comp);
}

GFinCat chaotic(const std::vector<std::string>& names, GroupPtr group,
                const std::vector<std::vector<int>>& point_action) {
    const int n = static_cast<int>(names.size());
    auto mor = [n](int y, int x) { return y * n + x; };  // morphism x -> y
    std::vector<MorphismSpec> mors;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) mors.push_back({names[static_cast<std::size_t>(y)] + "<-" + names[static_cast<std::size_t>(x)], x, y});
    std::vector<int> ids;
    for (int x = 0; x < n; ++x) ids.push_back(mor(x, x));
    std::vector<std::array<int, 3>> comp;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) comp.push_back({mor(z, y), mor(y, x), mor(z, x)});
    std::vector<CatAction> action;
    if (group) {
        for (const auto& p : point_action) {
            CatAction a{p, {}};
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) a.morphisms.push_back(mor(p[static_cast<std::size_t>(y)], p[static_cast<std::size_t>(x)]));
            action.push_back(std::move(a));
        }
    }
    return GFinCat(names, std::move(mors), std::move(ids), comp, std::move(group), std::move(action));
}

GFinCat chaotic(int n, GroupPtr group, const std::vector<std::vector<int>>& point_action) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    return chaotic(names, std::move(group), point_action);
}

GFinCat chaotic_group(GroupPtr group) {
    const FiniteGroup& g = *group;
    std::vector<std::vector<int>> act(static_cast<std::size_t>(g.order()));
    for (int a = 0; a < g.order(); ++a)
        for (int h = 0; h < g.order(); ++h) act[static_cast<std::size_t>(a)].push_back(g.mul(a, h));
    return chaotic(g.elements(), group, act);
}

namespace {

GroupPtr common_group(const GFinCat& a, const GFinCat& b) {
    if (a.has_action() && b.has_action() && !(*a.group() == *b.group()))
        throw GroupMismatch("categories carry actions of different groups");
    return a.has_action() ? a.group() : b.group();
}

int obj_act(const GFinCat& c, int g, int o) { return c.has_action() ? c.act_object(g, o) : o; }
int mor_act(const GFinCat& c, int g, int m) { return c.has_action() ? c.act_morphism(g, m) : m; }

}  // namespace

GFinCat product(const GFinCat& a, const GFinCat& b) {
    const int nb = b.object_count(), mb = b.morphism_count();
    std::vector<std::string> names;
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < nb; ++y) names.push_back("(" + a.object_name(x) + "," + b.object_name(y) + ")");
    std::vector<MorphismSpec> mors;
    for (int f = 0; f < a.morphism_count(); ++f)
        for (int g = 0; g < mb; ++g)
            mors.push_back({"(" + a.morphism_name(f) + "," + b.morphism_name(g) + ")", a.src(f) * nb + b.src(g),
                            a.tgt(f) * nb + b.tgt(g)});
    std::vector<int> ids;
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < nb; ++y) ids.push_back(a.identity(x) * mb + b.identity(y));
    std::vector<std::array<int, 3>> comp;
    for (int f1 = 0; f1 < a.morphism_count(); ++f1)
        for (int f2 = 0; f2 < a.morphism_count(); ++f2) {
            if (a.src(f2) != a.tgt(f1)) continue;
            for (int g1 = 0; g1 < mb; ++g1)
                for (int g2 = 0; g2 < mb; ++g2)
                    if (b.src(g2) == b.tgt(g1))
                        comp.push_back({f2 * mb + g2, f1 * mb + g1, a.compose(f2, f1) * mb + b.compose(g2, g1)});
        }
    GroupPtr grp = common_group(a, b);
    std::vector<CatAction> action;
    if (grp)
        for (int g = 0; g < grp->order(); ++g) {
            CatAction act;
            for (int x = 0; x < a.object_count(); ++x)
                for (int y = 0; y < nb; ++y) act.objects.push_back(obj_act(a, g, x) * nb + obj_act(b, g, y));
            for (int f = 0; f < a.morphism_count(); ++f)
                for (int h = 0; h < mb; ++h) act.morphisms.push_back(mor_act(a, g, f) * mb + mor_act(b, g, h));
            action.push_back(std::move(act));
        }
    return GFinCat(std::move(names), std::move(mors), std::move(ids), comp, grp, std::move(action));
}

GFinCat coproduct(const GFinCat& a, const GFinCat& b) {
    const int na = a.object_count(), ma = a.morphism_count();
    std::vector<std::string> names;
    for (int x = 0; x < na; ++x) names.push_back("0:" + a.object_name(x));
    for (int y = 0; y < b.object_count(); ++y) names.push_back("1:" + b.object_name(y));
    std::vector<MorphismSpec> mors;
    for (int f = 0; f < ma; ++f) mors.push_back({"0:" + a.morphism_name(f), a.src(f), a.tgt(f)});
    for (int g = 0; g < b.morphism_count(); ++g) mors.push_back({"1:" + b.morphism_name(g), na + b.src(g), na + b.tgt(g)});
    std::vector<int> ids;
    for (int x = 0; x < na; ++x) ids.push_back(a.identity(x));
    for (int y = 0; y < b.object_count(); ++y) ids.push_back(ma + b.identity(y));
    std::vector<std::array<int, 3>> comp;
    for (int f = 0; f < ma; ++f)
        for (int x = 0; x < na; ++x)
            for (int g : a.hom(a.tgt(f), x)) comp.push_back({g, f, a.compose(g, f)});
    for (int f = 0; f < b.morphism_count(); ++f)
        for (int y = 0; y < b.object_count(); ++y)
            for (int g : b.hom(b.tgt(f), y)) comp.push_back({ma + g, ma + f, ma + b.compose(g, f)});
    GroupPtr grp = common_group(a, b);
    std::vector<CatAction> action;
    if (grp)
        for (int g = 0; g < grp->order(); ++g) {
            CatAction act;
            for (int x = 0; x < na; ++x) act.objects.push_back(obj_act(a, g, x));
            for (int y = 0; y < b.object_count(); ++y) act.objects.push_back(na + obj_act(b, g, y));
            for (int f = 0; f < ma; ++f) act.morphisms.push_back(mor_act(a, g, f));
            for (int h = 0; h < b.morphism_count(); ++h) act.morphisms.push_back(ma + mor_act(b, g, h));
            action.push_back(std::move(act));
        }
    return GFinCat(std::move(names), std::move(mors), std::move(ids), comp, grp, std::move(action));
}

std::optional<std::string> functor_failure(const GFinCat& a, const GFinCat& b, const std::vector<int>& objects,
                                           const std::vector<int>& morphisms) {
    if (static_cast<int>(objects.size()) != a.object_count() || static_cast<int>(morphisms.size()) != a.morphism_count())
        return "map sizes do not match the source";
    for (int o = 0; o < a.object_count(); ++o)
        if (morphisms[static_cast<std::size_t>(a.identity(o))] != b.identity(objects[static_cast<std::size_t>(o)]))
            return "identity of object " + std::to_string(o) + " not preserved";
    for (int f = 0; f < a.morphism_count(); ++f) {
        const int ff = morphisms[static_cast<std::size_t>(f)];
        if (b.src(ff) != objects[static_cast<std::size_t>(a.src(f))] || b.tgt(ff) != objects[static_cast<std::size_t>(a.tgt(f))])
            return "endpoints of morphism " + std::to_string(f) + " not preserved";
    }
    for (int f = 0; f < a.morphism_count(); ++f)
        for (int x = 0; x < a.object_count(); ++x)
            for (int g : a.hom(a.tgt(f), x))
                if (morphisms[static_cast<std::size_t>(a.compose(g, f))] !=
                    b.compose(morphisms[static_cast<std::size_t>(g)], morphisms[static_cast<std::size_t>(f)]))
                    return "composite of " + std::to_string(g) + " and " + std::to_string(f) + " not preserved";
    return std::nullopt;
}

FunctorVal identity_functor(std::shared_ptr<const GFinCat> c) {
    FunctorVal f{c, c, {}, {}};
    f.object_map.resize(static_cast<std::size_t>(c->object_count()));
    std::iota(f.object_map.begin(), f.object_map.end(), 0);
    f.morphism_map.resize(static_cast<std::size_t>(c->morphism_count()));
    std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
    return f;
}

namespace {

// Composable triples (g, f, g.f) grouped by the largest index among g and f.
std::vector<std::vector<std::array<int, 3>>> triples_by_last(const GFinCat& a) {
    std::vector<std::vector<std::array<int, 3>>> out(static_cast<std::size_t>(a.morphism_count()));
    for (int f = 0; f < a.morphism_count(); ++f)
        for (int x = 0; x < a.object_count(); ++x)
            for (int g : a.hom(a.tgt(f), x)) {
                const int gf = a.compose(g, f);
                out[static_cast<std::size_t>(std::max({g, f, gf}))].push_back({g, f, gf});
            }
    return out;
}

void enumerate_functors(const GFinCat& a, const GFinCat& b, std::int64_t budget,
                        std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
    const int na = a.object_count(), ma = a.morphism_count(), nb = b.object_count();
    if (na > 0 && nb == 0) return;
    const auto triples = triples_by_last(a);
    std::vector<bool> is_identity(static_cast<std::size_t>(ma), false);
    for (int o = 0; o < na; ++o) is_identity[static_cast<std::size_t>(a.identity(o))] = true;
    std::vector<int> obj(static_cast<std::size_t>(na), 0);
    std::vector<int> mor(static_cast<std::size_t>(ma), -1);
    auto consistent = [&](int m) {
        for (const auto& [g, f, gf] : triples[static_cast<std::size_t>(m)])
            if (b.compose(mor[static_cast<std::size_t>(g)], mor[static_cast<std::size_t>(f)]) != mor[static_cast<std::size_t>(gf)])
                return false;
        return true;
    };
    auto assign = [&](auto&& self, int m) -> void {
        if (m == ma) {
            out.emplace_back(obj, mor);
            if (static_cast<std::int64_t>(out.size()) > budget)
                throw SizeBudgetExceeded("functor count exceeds budget " + std::to_string(budget));
            return;
        }
        const int s = obj[static_cast<std::size_t>(a.src(m))], t = obj[static_cast<std::size_t>(a.tgt(m))];
        if (is_identity[static_cast<std::size_t>(m)]) {
            mor[static_cast<std::size_t>(m)] = b.identity(s);
            if (consistent(m)) self(self, m + 1);
            return;
        }
        for (int cand : b.hom(s, t)) {
            mor[static_cast<std::size_t>(m)] = cand;
            if (consistent(m)) self(self, m + 1);
        }
    };
    while (true) {
        assign(assign, 0);
        int k = na - 1;
        while (k >= 0 && ++obj[static_cast<std::size_t>(k)] == nb) obj[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
    }
}

void enumerate_transformations(const GFinCat& a, const GFinCat& b, const FunctorVal& f, const FunctorVal& g,
                               std::vector<std::vector<int>>& out) {
    const int na = a.object_count();
    // Morphisms of a grouped by the larger of their endpoints.
    std::vector<std::vector<int>> by_last(static_cast<std::size_t>(na));
    for (int m = 0; m < a.morphism_count(); ++m) by_last[static_cast<std::size_t>(std::max(a.src(m), a.tgt(m)))].push_back(m);
    std::vector<int> eta(static_cast<std::size_t>(na), -1);
    auto assign = [&](auto&& self, int o) -> void {
        if (o == na) {
            out.push_back(eta);
            return;
        }
        for (int cand : b.hom(f.object_map[static_cast<std::size_t>(o)], g.object_map[static_cast<std::size_t>(o)])) {
            eta[static_cast<std::size_t>(o)] = cand;
            bool ok = true;
            for (int m : by_last[static_cast<std::size_t>(o)]) {
                const int s = a.src(m), t = a.tgt(m);
                if (b.compose(g.morphism_map[static_cast<std::size_t>(m)], eta[static_cast<std::size_t>(s)]) !=
                    b.compose(eta[static_cast<std::size_t>(t)], f.morphism_map[static_cast<std::size_t>(m)])) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, o + 1);
        }
    };
    assign(assign, 0);
}

}  // namespace

FunctorCategory functor_category(std::shared_ptr<const GFinCat> a, std::shared_ptr<const GFinCat> b,
                                 std::int64_t budget) {
    GroupPtr grp = common_group(*a, *b);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> raw;
    enumerate_functors(*a, *b, budget, raw);
    FunctorCategory fc;
    std::map<std::vector<int>, int> functor_index;
    std::vector<std::string> names;
    for (auto& [o, m] : raw) {
        functor_index[m] = static_cast<int>(fc.functors.size());
        std::string name = "[";
        for (std::size_t i = 0; i < o.size(); ++i) name += (i ? "," : "") + b->object_name(o[i]);
        names.push_back(name + "]#" + std::to_string(fc.functors.size()));
        fc.functors.push_back(FunctorVal{a, b, std::move(o), std::move(m)});
    }
    const int nf = static_cast<int>(fc.functors.size());
    std::vector<MorphismSpec> mors;
    std::map<std::tuple<int, int, std::vector<int>>, int> trans_index;
    std::vector<std::vector<std::vector<int>>> by_pair(static_cast<std::size_t>(nf * nf));
    for (int s = 0; s < nf; ++s)
        for (int t = 0; t < nf; ++t) {
            std::vector<std::vector<int>> etas;
            enumerate_transformations(*a, *b, fc.functors[static_cast<std::size_t>(s)], fc.functors[static_cast<std::size_t>(t)], etas);
            for (auto& eta : etas) {
                const int idx = static_cast<int>(fc.transformations.size());
                trans_index[{s, t, eta}] = idx;
                mors.push_back({"eta" + std::to_string(idx), s, t});
                fc.transformations.push_back(NatTrans{s, t, eta});
                if (static_cast<std::int64_t>(fc.transformations.size()) > budget * 16)
                    throw SizeBudgetExceeded("natural transformation count exceeds budget");
            }
        }
    std::vector<int> ids(static_cast<std::size_t>(nf));
    for (int s = 0; s < nf; ++s) {
        std::vector<int> comps;
        for (int o = 0; o < a->object_count(); ++o)
            comps.push_back(b->identity(fc.functors[static_cast<std::size_t>(s)].object_map[static_cast<std::size_t>(o)]));
        ids[static_cast<std::size_t>(s)] = trans_index.at({s, s, comps});
    }
    // Outgoing transformations per functor, for composition.
    std::vector<std::vector<int>> out_of(static_cast<std::size_t>(nf));
    for (std::size_t i = 0; i < fc.transformations.size(); ++i)
        out_of[static_cast<std::size_t>(fc.transformations[i].source)].push_back(static_cast<int>(i));
    std::vector<std::array<int, 3>> comp;
    for (std::size_t i = 0; i < fc.transformations.size(); ++i) {
        const auto& first = fc.transformations[i];
        for (int j : out_of[static_cast<std::size_t>(first.target)]) {
            const auto& second = fc.transformations[static_cast<std::size_t>(j)];
            std::vector<int> comps;
            for (int o = 0; o < a->object_count(); ++o)
                comps.push_back(b->compose(second.components[static_cast<std::size_t>(o)], first.components[static_cast<std::size_t>(o)]));
            comp.push_back({j, static_cast<int>(i), trans_index.at({first.source, second.target, comps})});
        }
    }
    std::vector<CatAction> action;
    if (grp) {
        const FiniteGroup& g = *grp;
        for (int x = 0; x < g.order(); ++x) {
            const int xi = g.inv(x);
            CatAction act;
            for (const auto& f : fc.functors) {
                std::vector<int> m(f.morphism_map.size());
                for (int k = 0; k < a->morphism_count(); ++k)
                    m[static_cast<std::size_t>(k)] = mor_act(*b, x, f.morphism_map[static_cast<std::size_t>(mor_act(*a, xi, k))]);
                act.objects.push_back(functor_index.at(m));
            }
            for (const auto& t : fc.transformations) {
                std::vector<int> comps(t.components.size());
                for (int o = 0; o < a->object_count(); ++o)
                    comps[static_cast<std::size_t>(o)] = mor_act(*b, x, t.components[static_cast<std::size_t>(obj_act(*a, xi, o))]);
                act.morphisms.push_back(trans_index.at({act.objects[static_cast<std::size_t>(t.source)],
                                                        act.objects[static_cast<std::size_t>(t.target)], comps}));
            }
            action.push_back(std::move(act));
        }
    }
    fc.category = GFinCat(std::move(names), std::move(mors), std::move(ids), comp, grp, std::move(action));
    return fc;
}

FunctorVal postcompose(const FunctorCategory& ab, const FunctorCategory& ac, const FunctorVal& p) {
    std::map<std::vector<int>, int> functor_index;
    for (std::size_t i = 0; i < ac.functors.size(); ++i) functor_index[ac.functors[i].morphism_map] = static_cast<int>(i);
    std::map<std::tuple<int, int, std::vector<int>>, int> trans_index;
    for (std::size_t i = 0; i < ac.transformations.size(); ++i) {
        const auto& t = ac.transformations[i];
        trans_index[{t.source, t.target, t.components}] = static_cast<int>(i);
    }
    FunctorVal out{std::make_shared<const GFinCat>(ab.category), std::make_shared<const GFinCat>(ac.category), {}, {}};
    for (const auto& f : ab.functors) {
        std::vector<int> m;
        for (int x : f.morphism_map) m.push_back(p.morphism_map[static_cast<std::size_t>(x)]);
        out.object_map.push_back(functor_index.at(m));
    }
    for (const auto& t : ab.transformations) {
        std::vector<int> comps;
        for (int x : t.components) comps.push_back(p.morphism_map[static_cast<std::size_t>(x)]);
        out.morphism_map.push_back(trans_index.at({out.object_map[static_cast<std::size_t>(t.source)],
                                                   out.object_map[static_cast<std::size_t>(t.target)], comps}));
    }
    return out;
}

TwistedHom twisted_hom(GroupPtr group, std::shared_ptr<const GFinCat> a, std::int64_t budget) {
    if (!a->has_action()) {
        // Give a the trivial action.
        std::vector<CatAction> triv(static_cast<std::size_t>(group->order()));
        for (auto& t : triv) {
            t.objects.resize(static_cast<std::size_t>(a->object_count()));
            std::iota(t.objects.begin(), t.objects.end(), 0);
            t.morphisms.resize(static_cast<std::size_t>(a->morphism_count()));
            std::iota(t.morphisms.begin(), t.morphisms.end(), 0);
        }
        std::vector<std::string> names;
        std::vector<MorphismSpec> mors;
        std::vector<int> ids;
        std::vector<std::array<int, 3>> comp;
        for (int o = 0; o < a->object_count(); ++o) {
            names.push_back(a->object_name(o));
            ids.push_back(a->identity(o));
        }
        for (int m = 0; m < a->morphism_count(); ++m) {
            mors.push_back({a->morphism_name(m), a->src(m), a->tgt(m)});
            for (int x = 0; x < a->object_count(); ++x)
                for (int g : a->hom(a->tgt(m), x)) comp.push_back({g, m, a->compose(g, m)});
        }
        a = std::make_shared<const GFinCat>(std::move(names), std::move(mors), std::move(ids), comp, group, std::move(triv));
    } else if (!(*a->group() == *group)) {
        throw GroupMismatch("category carries an action of a different group");
    }
    auto gt = std::make_shared<const GFinCat>(chaotic_group(group));
    TwistedHom out{functor_category(gt, a, budget), {}};
    std::map<std::vector<int>, int> functor_index;
    for (std::size_t i = 0; i < out.hom.functors.size(); ++i) functor_index[out.hom.functors[i].morphism_map] = static_cast<int>(i);
    std::map<std::tuple<int, int, std::vector<int>>, int> trans_index;
    for (std::size_t i = 0; i < out.hom.transformations.size(); ++i) {
        const auto& t = out.hom.transformations[i];
        trans_index[{t.source, t.target, t.components}] = static_cast<int>(i);
    }
    out.iota.source = a;
    out.iota.target = std::make_shared<const GFinCat>(out.hom.category);
    for (int o = 0; o < a->object_count(); ++o)
        out.iota.object_map.push_back(functor_index.at(std::vector<int>(static_cast<std::size_t>(gt->morphism_count()), a->identity(o))));
    for (int m = 0; m < a->morphism_count(); ++m)
        out.iota.morphism_map.push_back(trans_index.at({out.iota.object_map[static_cast<std::size_t>(a->src(m))],
                                                        out.iota.object_map[static_cast<std::size_t>(a->tgt(m))],
                                                        std::vector<int>(static_cast<std::size_t>(gt->object_count()), m)}));
    return out;
}

FixedSubcategory fixed_subcategory(const GFinCat& c, const Subgroup& h) {
    FixedSubcategory out;
    auto fixed_obj = [&](int o) {
        for (int g : h.members())
            if (c.act_object(g, o) != o) return false;
        return true;
    };
    auto fixed_mor = [&](int m) {
        for (int g : h.members())
            if (c.act_morphism(g, m) != m) return false;
        return true;
    };
    if (c.has_action()) require_subgroup(*c.group(), h);
    for (int o = 0; o < c.object_count(); ++o)
        if (!c.has_action() || fixed_obj(o)) out.objects.push_back(o);
    for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.has_action() || fixed_mor(m)) out.morphisms.push_back(m);
    out.category = subcategory(c, out.objects, out.morphisms);
    return out;
}

GFinCat orbit_category(const GFinCat& c, const FiniteGroup& pi, const std::vector<CatAction>& action) {
    const GFinCat check(
        [&] {
            std::vector<std::string> n;
            for (int o = 0; o < c.object_count(); ++o) n.push_back(c.object_name(o));
            return n;
        }(),
        [&] {
            std::vector<MorphismSpec> s;
            for (int m = 0; m < c.morphism_count(); ++m) s.push_back({c.morphism_name(m), c.src(m), c.tgt(m)});
            return s;
        }(),
        [&] {
            std::vector<int> ids;
            for (int o = 0; o < c.object_count(); ++o) ids.push_back(c.identity(o));
            return ids;
        }(),
        [&] {
            std::vector<std::array<int, 3>> comp;
            for (int f = 0; f < c.morphism_count(); ++f)
                for (int x = 0; x < c.object_count(); ++x)
                    for (int g : c.hom(c.tgt(f), x)) comp.push_back({g, f, c.compose(g, f)});
            return comp;
        }(),
        std::make_shared<const FiniteGroup>(pi), action);
    for (int p = 1; p < pi.order(); ++p)
        for (int o = 0; o < c.object_count(); ++o)
            if (check.act_object(p, o) == o)
                throw ActionNotFree("object " + c.object_name(o) + " fixed by " + pi.element_name(p));
    std::vector<int> obj_orbit(static_cast<std::size_t>(c.object_count()), -1), obj_rep;
    for (int o = 0; o < c.object_count(); ++o) {
        if (obj_orbit[static_cast<std::size_t>(o)] >= 0) continue;
        for (int p = 0; p < pi.order(); ++p) obj_orbit[static_cast<std::size_t>(check.act_object(p, o))] = static_cast<int>(obj_rep.size());
        obj_rep.push_back(o);
    }
    std::vector<int> mor_orbit(static_cast<std::size_t>(c.morphism_count()), -1), mor_rep;
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (mor_orbit[static_cast<std::size_t>(m)] >= 0) continue;
        for (int p = 0; p < pi.order(); ++p) mor_orbit[static_cast<std::size_t>(check.act_morphism(p, m))] = static_cast<int>(mor_rep.size());
        mor_rep.push_back(m);
    }
    std::vector<std::string> names;
    for (int o : obj_rep) names.push_back("[" + c.object_name(o) + "]");
    std::vector<MorphismSpec> mors;
    for (int m : mor_rep)
        mors.push_back({"[" + c.morphism_name(m) + "]", obj_orbit[static_cast<std::size_t>(c.src(m))],
                        obj_orbit[static_cast<std::size_t>(c.tgt(m))]});
    std::vector<int> ids;
    for (int o : obj_rep) ids.push_back(mor_orbit[static_cast<std::size_t>(c.identity(o))]);
    // Composition on orbits, checked on every pair of representatives.
    std::map<std::pair<int, int>, int> table;
    for (int f = 0; f < c.morphism_count(); ++f)
        for (int x = 0; x < c.object_count(); ++x)
            for (int g : c.hom(c.tgt(f), x)) {
                const std::pair<int, int> k{mor_orbit[static_cast<std::size_t>(g)], mor_orbit[static_cast<std::size_t>(f)]};
                const int v = mor_orbit[static_cast<std::size_t>(c.compose(g, f))];
                auto [it, fresh] = table.emplace(k, v);
                if (!fresh && it->second != v) throw NotACategory("orbit-compose", {g, f});
            }
    std::vector<std::array<int, 3>> comp;
    for (const auto& [k, v] : table) comp.push_back({k.first, k.second, v});
    // A commuting action of the original group descends to the quotient.
    GroupPtr grp;
    std::vector<CatAction> desc;
    if (c.has_action()) {
        bool ok = true;
        for (int g = 0; g < c.group()->order() && ok; ++g) {
            CatAction a;
            for (int o : obj_rep) a.objects.push_back(obj_orbit[static_cast<std::size_t>(c.act_object(g, o))]);
            for (int m : mor_rep) a.morphisms.push_back(mor_orbit[static_cast<std::size_t>(c.act_morphism(g, m))]);
            for (int o = 0; o < c.object_count(); ++o)
                if (obj_orbit[static_cast<std::size_t>(c.act_object(g, o))] != a.objects[static_cast<std::size_t>(obj_orbit[static_cast<std::size_t>(o)])])
                    ok = false;
            for (int m = 0; m < c.morphism_count(); ++m)
                if (mor_orbit[static_cast<std::size_t>(c.act_morphism(g, m))] != a.morphisms[static_cast<std::size_t>(mor_orbit[static_cast<std::size_t>(m)])])
                    ok = false;
            desc.push_back(std::move(a));
        }
        if (ok) grp = c.group();
        else desc.clear();
    }
    return GFinCat(std::move(names), std::move(mors), std::move(ids), comp, grp, std::move(desc));
}

std::vector<SkeletonClass> skeleton(const GFinCat& c) {
    for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.inverse(m)) throw NotAGroupoid("morphism " + c.morphism_name(m) + " is not invertible");
    UnionFind uf(c.object_count());
    for (int m = 0; m < c.morphism_count(); ++m) uf.unite(c.src(m), c.tgt(m));
    std::map<int, SkeletonClass> classes;
    for (int o = 0; o < c.object_count(); ++o) {
        const int r = uf.find(o);
        auto [it, fresh] = classes.emplace(r, SkeletonClass{r, 0, static_cast<std::int64_t>(c.hom(r, r).size())});
        ++it->second.size;
    }
    std::vector<SkeletonClass> out;
    for (const auto& [r, cls] : classes) out.push_back(cls);
    return out;
}

GFinCat skeleton_category(const GFinCat& c) {
    std::vector<int> reps;
    for (const auto& cls : skeleton(c)) reps.push_back(cls.representative);
    return *full_inclusion(std::make_shared<const GFinCat>(c), reps).source;
}

FunctorVal full_inclusion(std::shared_ptr<const GFinCat> c, const std::vector<int>& objects) {
    std::vector<bool> keep(static_cast<std::size_t>(c->object_count()), false);
    for (int o : objects) keep[static_cast<std::size_t>(o)] = true;
    std::vector<int> morphisms;
    for (int m = 0; m < c->morphism_count(); ++m)
        if (keep[static_cast<std::size_t>(c->src(m))] && keep[static_cast<std::size_t>(c->tgt(m))]) morphisms.push_back(m);
    auto sub = std::make_shared<const GFinCat>(subcategory(*c, objects, morphisms));
    return FunctorVal{sub, std::move(c), objects, morphisms};
}

FunctorVal restrict_functor(const FunctorVal& f, const FixedSubcategory& src, const FixedSubcategory& dst) {
    std::map<int, int> obj_pos, mor_pos;
    for (std::size_t i = 0; i < dst.objects.size(); ++i) obj_pos[dst.objects[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < dst.morphisms.size(); ++i) mor_pos[dst.morphisms[i]] = static_cast<int>(i);
    FunctorVal out{std::make_shared<const GFinCat>(src.category), std::make_shared<const GFinCat>(dst.category), {}, {}};
    for (int o : src.objects) {
        auto it = obj_pos.find(f.object_map[static_cast<std::size_t>(o)]);
        if (it == obj_pos.end()) throw ShapeMismatch("functor does not preserve fixed objects");
        out.object_map.push_back(it->second);
    }
    for (int m : src.morphisms) {
        auto it = mor_pos.find(f.morphism_map[static_cast<std::size_t>(m)]);
        if (it == mor_pos.end()) throw ShapeMismatch("functor does not preserve fixed morphisms");
        out.morphism_map.push_back(it->second);
    }
    return out;
}

EquivalenceVerdict check_equivalence(const FunctorVal& f) {
    const GFinCat& a = *f.source;
    const GFinCat& b = *f.target;
    EquivalenceVerdict v;
    UnionFind iso(b.object_count());
    for (int m = 0; m < b.morphism_count(); ++m)
        if (b.inverse(m)) iso.unite(b.src(m), b.tgt(m));
    std::set<int> hit;
    for (int o = 0; o < a.object_count(); ++o) hit.insert(iso.find(f.object_map[static_cast<std::size_t>(o)]));
    for (int o = 0; o < b.object_count(); ++o)
        if (!hit.count(iso.find(o))) {
            v.essentially_surjective = false;
            v.witness = "object " + b.object_name(o) + " is not isomorphic to any image";
            break;
        }
    for (int x = 0; x < a.object_count() && v.fully_faithful; ++x)
        for (int y = 0; y < a.object_count() && v.fully_faithful; ++y) {
            std::set<int> images;
            for (int m : a.hom(x, y)) images.insert(f.morphism_map[static_cast<std::size_t>(m)]);
            const auto& target = b.hom(f.object_map[static_cast<std::size_t>(x)], f.object_map[static_cast<std::size_t>(y)]);
            if (images.size() != a.hom(x, y).size() || images.size() != target.size()) {
                v.fully_faithful = false;
                const std::string what = images.size() != a.hom(x, y).size() ? "not faithful" : "not full";
                if (v.witness.empty())
                    v.witness = what + " on hom(" + a.object_name(x) + ", " + a.object_name(y) + ")";
            }
        }
    return v;
}

}  // namespace eqcat
