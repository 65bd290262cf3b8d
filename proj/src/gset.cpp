#include "eqcat/gset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "eqcat/errors.hpp"
#include "eqcat/perm.hpp"

namespace eqcat {

namespace {

void require_same_group(const FinGSet& a, const FinGSet& b) {
    if (!(a.group() == b.group())) throw GroupMismatch("G-sets are over different groups");
}

}  // namespace

FinGSet::FinGSet(GroupPtr group, int size, std::vector<std::vector<int>> action)
    : group_(std::move(group)), size_(size), action_(std::move(action)) {
    const FiniteGroup& g = *group_;
    if (size_ < 0) throw ParseError("negative G-set size");
    if (static_cast<int>(action_.size()) != g.order()) throw ParseError("action must list every group element");
    for (const auto& p : action_) {
        if (static_cast<int>(p.size()) != size_) throw ParseError("action permutation has wrong degree");
        std::vector<bool> seen(static_cast<std::size_t>(size_), false);
        for (int v : p) {
            if (v < 0 || v >= size_ || seen[static_cast<std::size_t>(v)]) throw ParseError("action entry is not a permutation");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            for (int x = 0; x < size_; ++x)
                if (act(g.mul(a, b), x) != act(a, act(b, x))) throw NotAHomomorphism(a, b);
    for (int x = 0; x < size_; ++x)
        if (act(0, x) != x) throw NotAHomomorphism(0, 0);
}

FinGSet make_gset(GroupPtr group, int size, std::vector<std::vector<int>> action) {
    return FinGSet(std::move(group), size, std::move(action));
}

FinGSet empty_gset(GroupPtr group) {
    const int n = group->order();
    return FinGSet(std::move(group), 0, std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
}

FinGSet trivial_gset(GroupPtr group, int size) {
    std::vector<int> id(static_cast<std::size_t>(size));
    std::iota(id.begin(), id.end(), 0);
    const int n = group->order();
    return FinGSet(std::move(group), size, std::vector<std::vector<int>>(static_cast<std::size_t>(n), id));
}

FinGSet regular_gset(GroupPtr group) { return coset_gset(group, Subgroup::trivial()); }

FinGSet coset_gset(GroupPtr group, const Subgroup& h) {
    const FiniteGroup& g = *group;
    require_subgroup(g, h);
    std::vector<int> coset_of(static_cast<std::size_t>(g.order()), -1);
    int count = 0;
    for (int x = 0; x < g.order(); ++x) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        for (int y : h.members()) coset_of[static_cast<std::size_t>(g.mul(x, y))] = count;
        ++count;
    }
    std::vector<int> rep(static_cast<std::size_t>(count), -1);
    for (int x = g.order() - 1; x >= 0; --x) rep[static_cast<std::size_t>(coset_of[static_cast<std::size_t>(x)])] = x;
    std::vector<std::vector<int>> action(static_cast<std::size_t>(g.order()));
    for (int a = 0; a < g.order(); ++a)
        for (int c = 0; c < count; ++c)
            action[static_cast<std::size_t>(a)].push_back(
                coset_of[static_cast<std::size_t>(g.mul(a, rep[static_cast<std::size_t>(c)]))]);
    return FinGSet(std::move(group), count, std::move(action));
}

FinGSet load_gset(std::string_view json_text, const std::function<GroupPtr(const std::string&)>& resolve) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("G-set file: ") + e.what());
    }
    try {
        GroupPtr group = resolve(j.at("group").get<std::string>());
        const FiniteGroup& g = *group;
        const int size = j.at("size").get<int>();
        std::vector<std::vector<int>> action(static_cast<std::size_t>(g.order()));
        std::vector<int> id(static_cast<std::size_t>(std::max(size, 0)));
        std::iota(id.begin(), id.end(), 0);
        action[0] = id;
        for (const auto& [name, images] : j.at("action").items()) {
            const auto idx = g.index_of(name);
            if (!idx) throw ParseError("unknown element '" + name + "' in G-set action");
            std::vector<int> p;
            for (int v : images.get<std::vector<int>>()) p.push_back(v - 1);
            action[static_cast<std::size_t>(*idx)] = std::move(p);
        }
        // Fill unlisted elements as products of listed ones.
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < g.order(); ++a)
                for (int b = 0; b < g.order(); ++b) {
                    auto& target = action[static_cast<std::size_t>(g.mul(a, b))];
                    const auto& pa = action[static_cast<std::size_t>(a)];
                    const auto& pb = action[static_cast<std::size_t>(b)];
                    if (!target.empty() || pa.size() != id.size() || pb.size() != id.size() || id.empty()) continue;
                    target.resize(id.size());
                    for (std::size_t x = 0; x < id.size(); ++x)
                        target[x] = pa[static_cast<std::size_t>(pb[x])];
                    grew = true;
                }
        }
        if (id.empty())
            for (auto& p : action) p.clear();
        return FinGSet(std::move(group), size, std::move(action));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("G-set file: ") + e.what());
    }
}

std::string gset_to_json(const FinGSet& a) {
    nlohmann::json j;
    j["group"] = a.group().name();
    j["size"] = a.size();
    nlohmann::json act = nlohmann::json::object();
    for (int g = 0; g < a.group().order(); ++g) {
        std::vector<int> p;
        for (int v : a.perm(g)) p.push_back(v + 1);
        act[a.group().element_name(g)] = p;
    }
    j["action"] = act;
    return j.dump();
}

std::vector<std::vector<int>> orbits(const FinGSet& a) {
    std::vector<bool> seen(static_cast<std::size_t>(a.size()), false);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < a.size(); ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        std::vector<int> orbit;
        for (int g = 0; g < a.group().order(); ++g) {
            const int y = a.act(g, x);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

Subgroup isotropy(const FinGSet& a, int x) {
    std::uint64_t m = 0;
    for (int g = 0; g < a.group().order(); ++g)
        if (a.act(g, x) == x) m |= std::uint64_t{1} << g;
    return Subgroup(m);
}

OrbitTypeDecomposition orbit_type(const FinGSet& a) { return orbit_type(a, subgroup_classes(a.group())); }

OrbitTypeDecomposition orbit_type(const FinGSet& a, const std::vector<SubgroupClass>& classes) {
    std::map<int, int> counts;
    for (const auto& orbit : orbits(a)) ++counts[class_index_of(classes, isotropy(a, orbit.front()))];
    OrbitTypeDecomposition d;
    for (auto [c, k] : counts) d.entries.emplace_back(c, k);
    return d;
}

bool is_equivariant(const FinGSet& a, const FinGSet& b, const std::vector<int>& f) {
    if (static_cast<int>(f.size()) != a.size()) return false;
    for (int g = 0; g < a.group().order(); ++g)
        for (int x = 0; x < a.size(); ++x)
            if (f[static_cast<std::size_t>(a.act(g, x))] != b.act(g, f[static_cast<std::size_t>(x)])) return false;
    return true;
}

std::optional<GMap> gset_iso(const FinGSet& a, const FinGSet& b) {
    require_same_group(a, b);
    if (a.size() != b.size()) return std::nullopt;
    const FiniteGroup& g = a.group();
    // Match orbits greedily: an orbit of a with base point x goes to an unused
    // orbit of b containing a point with the same isotropy group.
    const auto orbits_b = orbits(b);
    std::vector<bool> used(orbits_b.size(), false);
    std::vector<int> f(static_cast<std::size_t>(a.size()), -1);
    for (const auto& orbit : orbits(a)) {
        const int x = orbit.front();
        const Subgroup hx = isotropy(a, x);
        bool matched = false;
        for (std::size_t o = 0; o < orbits_b.size() && !matched; ++o) {
            if (used[o] || orbits_b[o].size() != orbit.size()) continue;
            for (int y : orbits_b[o]) {
                if (!(isotropy(b, y) == hx)) continue;
                for (int s = 0; s < g.order(); ++s) f[static_cast<std::size_t>(a.act(s, x))] = b.act(s, y);
                used[o] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    return GMap{std::move(f)};
}

FinGSet disjoint_union(const FinGSet& a, const FinGSet& b) {
    require_same_group(a, b);
    std::vector<std::vector<int>> action(static_cast<std::size_t>(a.group().order()));
    for (int g = 0; g < a.group().order(); ++g) {
        auto& p = action[static_cast<std::size_t>(g)];
        p = a.perm(g);
        for (int v : b.perm(g)) p.push_back(v + a.size());
    }
    return FinGSet(a.group_ptr(), a.size() + b.size(), std::move(action));
}

FinGSet product_gset(const FinGSet& a, const FinGSet& b) {
    require_same_group(a, b);
    std::vector<std::vector<int>> action(static_cast<std::size_t>(a.group().order()));
    for (int g = 0; g < a.group().order(); ++g)
        for (int x = 0; x < a.size(); ++x)
            for (int y = 0; y < b.size(); ++y)
                action[static_cast<std::size_t>(g)].push_back(a.act(g, x) * b.size() + b.act(g, y));
    return FinGSet(a.group_ptr(), a.size() * b.size(), std::move(action));
}

std::vector<int> fixed_points(const FinGSet& a, const Subgroup& h) {
    require_subgroup(a.group(), h);
    std::vector<int> out;
    for (int x = 0; x < a.size(); ++x) {
        bool fixed = true;
        for (int g : h.members())
            if (a.act(g, x) != x) fixed = false;
        if (fixed) out.push_back(x);
    }
    return out;
}

FinGSet restrict(const FinGSet& a, const Subgroup& h) {
    auto sub = std::make_shared<const FiniteGroup>(subgroup_as_group(a.group(), h));
    std::vector<std::vector<int>> action;
    for (int g : h.members()) action.push_back(a.perm(g));
    return FinGSet(std::move(sub), a.size(), std::move(action));
}

std::vector<HomClass> hom_classes(const FiniteGroup& h, const FiniteGroup& pi) {
    const auto homs = all_homomorphisms(h, pi);
    std::set<std::vector<int>> seen;
    std::vector<HomClass> out;
    for (const auto& alpha : homs) {
        if (seen.count(alpha)) continue;
        std::set<std::vector<int>> cls;
        for (int s = 0; s < pi.order(); ++s) {
            std::vector<int> c;
            for (int v : alpha) c.push_back(pi.conj(s, v));
            cls.insert(std::move(c));
        }
        seen.insert(cls.begin(), cls.end());
        out.push_back(HomClass{alpha, static_cast<int>(cls.size()), centralizer_of_hom(pi, h, alpha).order()});
    }
    return out;
}

FinGSet gset_from_hom(GroupPtr group, int n, const std::vector<int>& hom) {
    const auto perms = all_perms(n);
    std::vector<std::vector<int>> action;
    for (int v : hom) action.push_back(perms[static_cast<std::size_t>(v)].images());
    return FinGSet(std::move(group), n, std::move(action));
}

std::vector<FinGSet> extensions_of_restriction(GroupPtr group, const Subgroup& h, const FinGSet& target) {
    const int n = target.size();
    const FiniteGroup sym = symmetric_group(n);
    std::vector<FinGSet> out;
    for (const auto& hom : all_homomorphisms(*group, sym)) {
        FinGSet candidate = gset_from_hom(group, n, hom);
        if (gset_iso(restrict(candidate, h), target)) out.push_back(std::move(candidate));
    }
    return out;
}

}  // namespace eqcat
