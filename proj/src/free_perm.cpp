#include "eqcat/free_perm.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eqcat/burnside.hpp"
#include "eqcat/errors.hpp"

namespace eqcat {

std::vector<int> act_tuple(const Perm& s, const std::vector<int>& y) {
    std::vector<int> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[static_cast<std::size_t>(s[static_cast<int>(i)])] = y[i];
    return out;
}

namespace {

std::string points_text(const std::vector<int>& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + std::to_string(x[i] + 1);
    return out;
}

using HomFn = std::function<std::vector<Perm>(int, int)>;
using ActObjFn = std::function<int(int, int)>;
using ActMorFn = std::function<Perm(int, int, int, const Perm&)>;

PermGroupoid build_groupoid(std::vector<std::string> names, const HomFn& hom, GroupPtr group = nullptr,
                            const ActObjFn& act_obj = {}, const ActMorFn& act_mor = {}) {
    const int n = static_cast<int>(names.size());
    PermGroupoid out;
    std::vector<MorphismSpec> specs;
    std::vector<std::vector<std::vector<std::pair<Perm, int>>>> from(static_cast<std::size_t>(n));
    std::vector<int> identities(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        from[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b)
            for (const Perm& s : hom(a, b)) {
                const int m = static_cast<int>(specs.size());
                specs.push_back({s.cycles() + "@" + std::to_string(a) + ">" + std::to_string(b), a, b});
                out.labels.push_back(s);
                out.index.emplace(std::tuple{a, b, s}, m);
                from[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].emplace_back(s, m);
                if (a == b && s.is_identity()) identities[static_cast<std::size_t>(a)] = m;
            }
        if (identities[static_cast<std::size_t>(a)] < 0) throw std::logic_error("hom set lacks an identity");
    }
    std::vector<std::array<int, 3>> compose;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (const auto& [s, f] : from[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
                for (int c = 0; c < n; ++c)
                    for (const auto& [t, g] : from[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)])
                        compose.push_back({g, f, out.index.at({a, c, t * s})});
    std::vector<CatAction> action;
    if (group) {
        for (int g = 0; g < group->order(); ++g) {
            CatAction act;
            for (int a = 0; a < n; ++a) act.objects.push_back(act_obj(g, a));
            for (std::size_t m = 0; m < specs.size(); ++m) {
                const int a = specs[m].src, b = specs[m].tgt;
                const int ga = act.objects[static_cast<std::size_t>(a)], gb = act.objects[static_cast<std::size_t>(b)];
                act.morphisms.push_back(out.index.at({ga, gb, act_mor(g, a, b, out.labels[m])}));
            }
            action.push_back(std::move(act));
        }
    }
    out.category = std::make_shared<const GFinCat>(std::move(names), std::move(specs), std::move(identities), compose,
                                                   std::move(group), std::move(action), false);
    return out;
}

std::vector<Perm> perms_carrying(const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<Perm> out;
    if (x.size() != y.size()) return out;
    auto xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (xs != ys) return out;
    for (const Perm& s : all_perms(static_cast<int>(x.size())))
        if (act_tuple(s, x) == y) out.push_back(s);
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, int e) {
    std::uint64_t n = 1;
    for (int i = 0; i < e; ++i) {
        if (base != 0 && n > (std::uint64_t{1} << 62) / base) throw SizeBudgetExceeded("free category component too large");
        n *= base;
    }
    return n;
}

// Restriction of p to the kept positions, renumbered by order of position
// and of image: the effect of gamma with units and nullary inputs.
Perm restrict_perm(const Perm& p, const std::vector<bool>& keep) {
    std::vector<int> kept, images;
    for (int i = 0; i < p.degree(); ++i)
        if (keep[static_cast<std::size_t>(i)]) kept.push_back(i);
    for (int k : kept) {
        int rank = 0;
        for (int b : kept) rank += p[b] < p[k];
        images.push_back(rank);
    }
    return Perm(std::span<const int>(images));
}

OpObject restrict_object(const OpObject& alpha, const std::vector<bool>& keep) {
    OpObject out(alpha.size());
    for (std::size_t h = 0; h < alpha.size(); ++h) out[h] = restrict_perm(alpha[h], keep);
    return out;
}

OpObject box(const OpObject& a, const OpObject& b) {
    OpObject out(a.size());
    for (std::size_t h = 0; h < a.size(); ++h) out[h] = tensor_perm(a[h], b[h]);
    return out;
}

}  // namespace

std::string format_free_object(const FreeObject& a) { return format_object(a.alpha) + "|" + points_text(a.x); }

FreeOG::FreeOG(FinGSet x, int jmax) : x_(std::move(x)), jmax_(jmax), op_(x_.group_ptr(), jmax) {}

std::uint64_t FreeOG::object_count(int j) const {
    const auto f = static_cast<std::uint64_t>(factorial(j));
    const std::uint64_t alphas = checked_pow(f, group().order() - 1);
    const std::uint64_t tuples = checked_pow(static_cast<std::uint64_t>(x_.size()), j);
    if (tuples != 0 && alphas > (std::uint64_t{1} << 62) / tuples) throw SizeBudgetExceeded("free category component too large");
    return alphas * tuples;
}

FreeObject FreeOG::object(int j, std::uint64_t index) const {
    const auto base = static_cast<std::uint64_t>(x_.size());
    FreeObject a{OpObject(static_cast<std::size_t>(group().order()), Perm(j)), std::vector<int>(static_cast<std::size_t>(j))};
    for (int i = j - 1; i >= 0; --i) {
        a.x[static_cast<std::size_t>(i)] = static_cast<int>(index % base);
        index /= base;
    }
    const auto f = static_cast<std::uint64_t>(factorial(j));
    for (int h = group().order() - 1; h >= 1; --h) {
        a.alpha[static_cast<std::size_t>(h)] = perm_unrank(j, index % f);
        index /= f;
    }
    return a;
}

int free_object_index(const FreeOG& f, const FreeObject& a) {
    std::uint64_t offset = 0;
    for (int j = 0; j < a.arity(); ++j) offset += f.object_count(j);
    std::uint64_t idx = 0;
    const auto fact = static_cast<std::uint64_t>(factorial(a.arity()));
    for (int h = 1; h < f.group().order(); ++h) idx = idx * fact + perm_rank(a.alpha[static_cast<std::size_t>(h)]);
    for (int v : a.x) idx = idx * static_cast<std::uint64_t>(f.generator().size()) + static_cast<std::uint64_t>(v);
    return static_cast<int>(offset + idx);
}

FreeObject FreeOG::normalize(const OpObject& phi, const std::vector<int>& z) const {
    const Perm tau = phi[0].inverse();
    FreeObject a{OpObject(phi.size()), std::vector<int>(z.size())};
    for (std::size_t h = 0; h < phi.size(); ++h) a.alpha[h] = phi[h] * tau;
    for (std::size_t i = 0; i < z.size(); ++i) a.x[i] = z[static_cast<std::size_t>(tau[static_cast<int>(i)])];
    return a;
}

FreeObject FreeOG::act(int g, const FreeObject& a) const {
    std::vector<int> z(a.x.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x_.act(g, a.x[i]);
    return normalize(op_.act_group(g, a.alpha), z);
}

bool FreeOG::is_morphism(const FreeObject& a, const FreeObject& b, const Perm& s) const {
    return a.arity() == b.arity() && s.degree() == a.arity() && act_tuple(s, a.x) == b.x;
}

std::vector<Perm> FreeOG::hom(const FreeObject& a, const FreeObject& b) const { return perms_carrying(a.x, b.x); }

Perm FreeOG::act_morphism(int g, const FreeObject& a, const FreeObject& b, const Perm& s) const {
    const auto gi = static_cast<std::size_t>(group().inv(g));
    return b.alpha[gi] * s * a.alpha[gi].inverse();
}

std::vector<FreeObject> FreeOG::objects() const {
    std::vector<FreeObject> out;
    for (int j = 0; j <= jmax_; ++j)
        for (std::uint64_t i = 0; i < object_count(j); ++i) out.push_back(object(j, i));
    return out;
}

PermGroupoid FreeOG::category(std::uint64_t object_budget) const {
    std::uint64_t total = 0;
    for (int j = 0; j <= jmax_; ++j) total += object_count(j);
    if (total > object_budget) throw SizeBudgetExceeded("free category has " + std::to_string(total) + " objects");
    const auto objs = objects();
    std::vector<std::string> names;
    for (const auto& a : objs) names.push_back(format_free_object(a));
    return build_groupoid(
        std::move(names), [&](int a, int b) { return hom(objs[static_cast<std::size_t>(a)], objs[static_cast<std::size_t>(b)]); },
        group_ptr(), [&](int g, int a) { return free_object_index(*this, act(g, objs[static_cast<std::size_t>(a)])); },
        [&](int g, int a, int b, const Perm& s) {
            return act_morphism(g, objs[static_cast<std::size_t>(a)], objs[static_cast<std::size_t>(b)], s);
        });
}

namespace {

// The characterization: alpha(xk) = alpha(k) alpha(x) for x in H, and
// h.x_i = x_{alpha(h)^-1(i)}.
bool fixed_by_characterization(const FreeOG& f, const Subgroup& h, const FreeObject& a) {
    const FiniteGroup& g = f.group();
    const auto hs = h.members();
    for (int x : hs)
        for (int k = 0; k < g.order(); ++k)
            if (a.alpha[static_cast<std::size_t>(g.mul(x, k))] !=
                a.alpha[static_cast<std::size_t>(k)] * a.alpha[static_cast<std::size_t>(x)])
                return false;
    for (int x : hs) {
        const Perm inv = a.alpha[static_cast<std::size_t>(x)].inverse();
        for (int i = 0; i < a.arity(); ++i)
            if (f.generator().act(x, a.x[static_cast<std::size_t>(i)]) != a.x[static_cast<std::size_t>(inv[i])]) return false;
    }
    return true;
}

}  // namespace

FixedFree fixed_free(const FreeOG& f, const Subgroup& h, int j) {
    require_subgroup(f.group(), h);
    FixedFree out;
    const auto hs = h.members();
    const std::uint64_t count = f.object_count(j);
    if (count > 20'000'000) throw SizeBudgetExceeded("fixed_free scan of " + std::to_string(count) + " objects");
    for (std::uint64_t i = 0; i < count; ++i) {
        const FreeObject a = f.object(j, i);
        ++out.scanned;
        const bool by_action = std::all_of(hs.begin(), hs.end(), [&](int x) { return f.act(x, a) == a; });
        const bool by_char = fixed_by_characterization(f, h, a);
        if (by_action != by_char && out.routes_agree) {
            out.routes_agree = false;
            out.witness = "object " + format_free_object(a) + (by_action ? " fixed but fails characterization" : " not fixed");
        }
        if (by_action) out.objects.push_back(a);
    }
    if (out.objects.size() > kFixedGroupoidLimit) return out;
    const auto& objs = out.objects;
    std::vector<std::string> names;
    for (const auto& a : objs) names.push_back(format_free_object(a));
    out.groupoid = build_groupoid(std::move(names), [&](int ai, int bi) {
        const auto& a = objs[static_cast<std::size_t>(ai)];
        const auto& b = objs[static_cast<std::size_t>(bi)];
        std::vector<Perm> keep;
        for (const Perm& s : f.hom(a, b)) {
            const bool by_action =
                std::all_of(hs.begin(), hs.end(), [&](int x) { return f.act_morphism(x, a, b, s) == s; });
            const bool by_conj = std::all_of(hs.begin(), hs.end(), [&](int x) {
                return b.alpha[static_cast<std::size_t>(x)] == s * a.alpha[static_cast<std::size_t>(x)] * s.inverse();
            });
            if (by_action != by_conj && out.routes_agree) {
                out.routes_agree = false;
                out.witness = "morphism " + s.cycles() + " : " + format_free_object(a) + " -> " + format_free_object(b);
            }
            if (by_action) keep.push_back(s);
        }
        return keep;
    });
    return out;
}

std::vector<Perm> fgx_hom(const FGXObject& a, const FGXObject& b) {
    std::vector<Perm> out;
    if (a.arity() != b.arity()) return out;
    for (const Perm& f : all_perms(a.arity())) {
        bool ok = true;
        for (std::size_t g = 0; g < a.rho.size() && ok; ++g) ok = f * a.rho[g] == b.rho[g] * f;
        for (int i = 0; i < a.arity() && ok; ++i) ok = b.p[static_cast<std::size_t>(f[i])] == a.p[static_cast<std::size_t>(i)];
        if (ok) out.push_back(f);
    }
    return out;
}

FGXCat fgx_over(const FinGSet& x, int j) {
    FGXCat out;
    const auto perms = all_perms(j);
    const auto sym = symmetric_group(j);
    for (const auto& hom : all_homomorphisms(x.group(), sym)) {
        FGXObject a;
        for (int e : hom) a.rho.push_back(perms[static_cast<std::size_t>(e)]);
        for (auto& p : equivariant_maps(gset_from_hom(x.group_ptr(), j, hom), x)) {
            a.p = std::move(p);
            out.objects.push_back(a);
        }
    }
    std::sort(out.objects.begin(), out.objects.end());
    std::vector<std::string> names;
    for (const auto& a : out.objects) {
        std::string rho;
        for (const auto& r : a.rho) rho += r.cycles();
        names.push_back(rho + "|" + points_text(a.p));
    }
    const auto& objs = out.objects;
    out.groupoid = build_groupoid(std::move(names), [&](int a, int b) {
        return fgx_hom(objs[static_cast<std::size_t>(a)], objs[static_cast<std::size_t>(b)]);
    });
    return out;
}

namespace {

FGXObject catone_image(const FreeObject& a) {
    FGXObject out;
    for (const Perm& p : a.alpha) out.rho.push_back(p.inverse());
    out.p = a.x;
    return out;
}

bool is_fgx_object(const FinGSet& x, const FGXObject& a) {
    const FiniteGroup& g = x.group();
    for (int s = 0; s < g.order(); ++s)
        for (int t = 0; t < g.order(); ++t)
            if (a.rho[static_cast<std::size_t>(g.mul(s, t))] != a.rho[static_cast<std::size_t>(s)] * a.rho[static_cast<std::size_t>(t)])
                return false;
    for (int s = 0; s < g.order(); ++s)
        for (int i = 0; i < a.arity(); ++i)
            if (a.p[static_cast<std::size_t>(a.rho[static_cast<std::size_t>(s)][i])] != x.act(s, a.p[static_cast<std::size_t>(i)]))
                return false;
    return true;
}

void fail(LawResult& r, const std::string& witness) {
    if (r.pass) r.witness = witness;
    r.pass = false;
}

}  // namespace

CatOneReport catone_check(const FinGSet& x, int j) {
    const FreeOG f(x, j);
    const auto src = fixed_free(f, Subgroup::whole(x.group()), j);
    const auto tgt = fgx_over(x, j);
    CatOneReport out;
    out.source_objects = src.objects.size();
    out.target_objects = tgt.objects.size();
    out.source_morphisms = static_cast<std::uint64_t>(src.groupoid.category->morphism_count());
    out.target_morphisms = static_cast<std::uint64_t>(tgt.groupoid.category->morphism_count());

    auto& routes = out.laws.law("fixed-object routes agree");
    routes.checked = src.scanned;
    if (!src.routes_agree) fail(routes, src.witness);

    auto& defined = out.laws.law("image is a G-set over X");
    std::vector<int> object_map;
    for (const auto& a : src.objects) {
        ++defined.checked;
        const auto img = catone_image(a);
        if (!is_fgx_object(x, img)) fail(defined, format_free_object(a));
        const auto it = std::lower_bound(tgt.objects.begin(), tgt.objects.end(), img);
        object_map.push_back(it != tgt.objects.end() && *it == img ? static_cast<int>(it - tgt.objects.begin()) : -1);
    }

    auto& objects = out.laws.law("bijective on objects");
    std::vector<int> hits(tgt.objects.size(), 0);
    for (std::size_t i = 0; i < object_map.size(); ++i) {
        ++objects.checked;
        if (object_map[i] < 0) fail(objects, "no image for " + format_free_object(src.objects[i]));
        else ++hits[static_cast<std::size_t>(object_map[i])];
    }
    for (std::size_t k = 0; k < hits.size(); ++k)
        if (hits[k] != 1) fail(objects, "target object " + tgt.groupoid.category->object_name(static_cast<int>(k)) + " hit " + std::to_string(hits[k]) + " times");

    auto& morphisms = out.laws.law("bijective on hom sets");
    const GFinCat& sc = *src.groupoid.category;
    std::vector<int> morphism_map(static_cast<std::size_t>(sc.morphism_count()), -1);
    if (objects.pass) {
        for (int a = 0; a < sc.object_count(); ++a)
            for (int b = 0; b < sc.object_count(); ++b) {
                ++morphisms.checked;
                std::set<Perm> mine, theirs;
                for (int m : sc.hom(a, b)) mine.insert(src.groupoid.labels[static_cast<std::size_t>(m)]);
                const int fa = object_map[static_cast<std::size_t>(a)], fb = object_map[static_cast<std::size_t>(b)];
                for (int m : tgt.groupoid.category->hom(fa, fb)) theirs.insert(tgt.groupoid.labels[static_cast<std::size_t>(m)]);
                if (mine != theirs) fail(morphisms, "hom(" + sc.object_name(a) + ", " + sc.object_name(b) + ")");
                for (int m : sc.hom(a, b)) {
                    const auto it = tgt.groupoid.index.find({fa, fb, src.groupoid.labels[static_cast<std::size_t>(m)]});
                    if (it != tgt.groupoid.index.end()) morphism_map[static_cast<std::size_t>(m)] = it->second;
                }
            }
    }

    auto& functor = out.laws.law("functorial");
    if (objects.pass && morphisms.pass) {
        functor.checked = static_cast<std::uint64_t>(sc.morphism_count());
        if (auto why = functor_failure(sc, *tgt.groupoid.category, object_map, morphism_map)) fail(functor, *why);
    } else {
        fail(functor, "not checked: map is not bijective");
    }
    return out;
}

std::vector<SkeletonEntry> wreath_skeleton(const FinGSet& x, int jmax) {
    const FiniteGroup& g = x.group();
    const auto classes = subgroup_classes(g);
    struct Item {
        int cls, orbit, size;
        std::int64_t stab, weyl;
    };
    std::vector<Item> items;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto& h = classes[c].representative;
        const auto ns = classes[c].normalizer.members();
        std::set<int> seen;
        for (int y : fixed_points(x, h)) {
            if (seen.count(y)) continue;
            std::int64_t stab = 0;
            for (int n : ns) {
                seen.insert(x.act(n, y));
                stab += x.act(n, y) == y;
            }
            items.push_back({static_cast<int>(c), y, g.order() / h.order(), stab / h.order(),
                             static_cast<std::int64_t>(classes[c].weyl.order())});
        }
    }
    std::vector<SkeletonEntry> out;
    SkeletonEntry cur;
    cur.automorphisms = cur.weyl_automorphisms = 1;
    // Choose a multiplicity k for each item in turn.
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == items.size()) {
            out.push_back(cur);
            std::sort(out.back().signature.begin(), out.back().signature.end());
            return;
        }
        const Item& it = items[i];
        const SkeletonEntry saved = cur;
        for (int k = 0;; ++k) {
            if (k > 0) {
                if (cur.arity + it.size > jmax) break;
                cur.arity += it.size;
                cur.signature.emplace_back(it.cls, it.orbit);
                cur.automorphisms *= k * it.stab;
                cur.weyl_automorphisms *= k * it.weyl;
            }
            self(self, i + 1);
        }
        cur = saved;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const SkeletonEntry& a, const SkeletonEntry& b) {
        return std::tie(a.arity, a.signature) < std::tie(b.arity, b.signature);
    });
    return out;
}

std::vector<std::pair<int, int>> orbit_signature(const FinGSet& x, const FGXObject& a) {
    const FiniteGroup& g = x.group();
    const auto classes = subgroup_classes(g);
    std::vector<std::pair<int, int>> out;
    std::vector<bool> seen(static_cast<std::size_t>(a.arity()), false);
    for (int i = 0; i < a.arity(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::vector<int> stab;
        for (int s = 0; s < g.order(); ++s) {
            const int to = a.rho[static_cast<std::size_t>(s)][i];
            seen[static_cast<std::size_t>(to)] = true;
            if (to == i) stab.push_back(s);
        }
        const Subgroup si = Subgroup::from_members(stab);
        bool found = false;
        for (std::size_t c = 0; c < classes.size() && !found; ++c)
            for (int t = 0; t < g.order() && !found; ++t) {
                if (!(conjugate(g, si, t) == classes[c].representative)) continue;
                // t S t^-1 = H sends p(i) into X^H; name its WH-orbit by its least point.
                const int y = x.act(t, a.p[static_cast<std::size_t>(i)]);
                for (int h : classes[c].representative.members())
                    if (x.act(h, y) != y) throw std::logic_error("transported point is not fixed");
                int least = y;
                for (int n : classes[c].normalizer.members()) least = std::min(least, x.act(n, y));
                out.emplace_back(static_cast<int>(c), least);
                found = true;
            }
        if (!found) throw std::logic_error("isotropy group matches no subgroup class");
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string signature_text(const std::vector<std::pair<int, int>>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::string("H") + std::to_string(s[i].first) + ":" + std::to_string(s[i].second + 1);
    return out + "}";
}

}  // namespace

CatTwoReport cattwo_check(const FinGSet& x, int jmax) {
    CatTwoReport out;
    auto& fgx_law = out.laws.law("fixed G-sets over X match the wreath skeleton");
    auto& free_law = out.laws.law("fixed free category matches the wreath skeleton");
    auto& weyl_law = out.laws.law("automorphism orders prod k! |WH|^k");
    const auto entries = wreath_skeleton(x, jmax);
    out.classes = entries.size();
    const FreeOG f(x, jmax);
    for (int j = 0; j <= jmax; ++j) {
        std::map<std::vector<std::pair<int, int>>, const SkeletonEntry*> expected;
        for (const auto& e : entries)
            if (e.arity == j) expected.emplace(e.signature, &e);

        // Each model's classes must hit every expected signature exactly once with the right order.
        auto match = [&](LawResult& law, const std::vector<std::pair<std::vector<std::pair<int, int>>, std::int64_t>>& got) {
            std::set<std::vector<std::pair<int, int>>> hit;
            for (const auto& [sig, aut] : got) {
                ++law.checked;
                const auto it = expected.find(sig);
                if (it == expected.end()) fail(law, "arity " + std::to_string(j) + ": unexpected class " + signature_text(sig));
                else if (!hit.insert(sig).second) fail(law, "arity " + std::to_string(j) + ": class " + signature_text(sig) + " twice");
                else if (it->second->automorphisms != aut)
                    fail(law, "arity " + std::to_string(j) + ": class " + signature_text(sig) + " has " + std::to_string(aut) +
                                  " automorphisms, expected " + std::to_string(it->second->automorphisms));
            }
            for (const auto& [sig, e] : expected)
                if (!hit.count(sig)) fail(law, "arity " + std::to_string(j) + ": missing class " + signature_text(sig));
        };

        const auto fgx = fgx_over(x, j);
        std::vector<std::pair<std::vector<std::pair<int, int>>, std::int64_t>> got;
        for (const auto& k : skeleton(*fgx.groupoid.category)) {
            const auto sig = orbit_signature(x, fgx.objects[static_cast<std::size_t>(k.representative)]);
            got.emplace_back(sig, k.automorphisms);
            ++weyl_law.checked;
            if (const auto it = expected.find(sig); it != expected.end() && it->second->weyl_automorphisms != k.automorphisms)
                fail(weyl_law, "arity " + std::to_string(j) + ": class " + signature_text(sig) + " has " +
                                   std::to_string(k.automorphisms) + " automorphisms, formula gives " +
                                   std::to_string(it->second->weyl_automorphisms));
        }
        match(fgx_law, got);

        const auto fixed = fixed_free(f, Subgroup::whole(x.group()), j);
        if (!fixed.routes_agree) fail(free_law, fixed.witness);
        got.clear();
        for (const auto& k : skeleton(*fixed.groupoid.category))
            got.emplace_back(orbit_signature(x, catone_image(fixed.objects[static_cast<std::size_t>(k.representative)])),
                             k.automorphisms);
        match(free_law, got);
    }
    return out;
}

FreeObject shriek_object(const FreeObject& a, const std::vector<int>& f) {
    FreeObject out = a;
    for (int& v : out.x) v = f.at(static_cast<std::size_t>(v));
    return out;
}

FunctorVal f_shriek(const FreeOG& src, const PermGroupoid& src_cat, const FreeOG& dst, const PermGroupoid& dst_cat,
                    const std::vector<int>& f) {
    if (!(src.group() == dst.group())) throw GroupMismatch("f_! between different groups");
    if (static_cast<int>(f.size()) != src.generator().size() || !is_equivariant(src.generator(), dst.generator(), f))
        throw ShapeMismatch("f_! needs an equivariant map");
    const auto objs = src.objects();
    FunctorVal out{src_cat.category, dst_cat.category, {}, {}};
    for (const auto& a : objs) out.object_map.push_back(free_object_index(dst, shriek_object(a, f)));
    const GFinCat& c = *src_cat.category;
    for (int m = 0; m < c.morphism_count(); ++m)
        out.morphism_map.push_back(dst_cat.morphism(out.object_map[static_cast<std::size_t>(c.src(m))],
                                                    out.object_map[static_cast<std::size_t>(c.tgt(m))],
                                                    src_cat.labels[static_cast<std::size_t>(m)]));
    return out;
}

void require_inclusion(const FinGSet& a, const FinGSet& b, const std::vector<int>& i) {
    if (!(a.group() == b.group())) throw GroupMismatch("i^* between different groups");
    if (static_cast<int>(i.size()) != a.size()) throw ShapeMismatch("i^* map has the wrong domain size");
    for (int v : i)
        if (v < 0 || v >= b.size()) throw ShapeMismatch("i^* map leaves the codomain");
    if (std::set<int>(i.begin(), i.end()).size() != i.size()) throw NotInjective("i^* needs an injective map");
    if (!is_equivariant(a, b, i)) throw ShapeMismatch("i^* needs an equivariant map");
}

FreeObject istar_object(const FreeOG& a_side, const FreeObject& b, const std::vector<int>& i) {
    std::vector<OpObject> d;
    FreeObject out;
    for (int v : b.x) {
        const auto it = std::find(i.begin(), i.end(), v);
        d.push_back(a_side.operad().constant(Perm(it != i.end() ? 1 : 0)));
        if (it != i.end()) out.x.push_back(static_cast<int>(it - i.begin()));
    }
    out.alpha = a_side.operad().gamma(b.alpha, d);
    return out;
}

Perm istar_morphism(const FreeObject& a, const Perm& s, const std::vector<int>& i) {
    std::vector<bool> keep;
    for (int v : a.x) keep.push_back(std::find(i.begin(), i.end(), v) != i.end());
    return restrict_perm(s, keep);
}

FunctorVal i_star(const FreeOG& b_side, const PermGroupoid& b_cat, const FreeOG& a_side, const PermGroupoid& a_cat,
                  const std::vector<int>& i) {
    require_inclusion(a_side.generator(), b_side.generator(), i);
    const auto objs = b_side.objects();
    FunctorVal out{b_cat.category, a_cat.category, {}, {}};
    for (const auto& b : objs) out.object_map.push_back(free_object_index(a_side, istar_object(a_side, b, i)));
    const GFinCat& c = *b_cat.category;
    for (int m = 0; m < c.morphism_count(); ++m) {
        const auto& src = objs[static_cast<std::size_t>(c.src(m))];
        out.morphism_map.push_back(a_cat.morphism(out.object_map[static_cast<std::size_t>(c.src(m))],
                                                  out.object_map[static_cast<std::size_t>(c.tgt(m))],
                                                  istar_morphism(src, b_cat.labels[static_cast<std::size_t>(m)], i)));
    }
    return out;
}

FreeObject pair_objects(const FreeObject& a, const FreeObject& b, int y_size) {
    if (a.arity() * b.arity() > Perm::kMaxDegree) throw SizeBudgetExceeded("paired arity exceeds capacity");
    FreeObject out{box(a.alpha, b.alpha), {}};
    for (int p : a.x)
        for (int q : b.x) out.x.push_back(p * y_size + q);
    return out;
}

FreeObject span_unit(const FinGSet& b) {
    const int n = b.size();
    FreeObject out{OpObject(static_cast<std::size_t>(b.group().order())), {}};
    for (int g = 0; g < b.group().order(); ++g)
        out.alpha[static_cast<std::size_t>(g)] = Perm(std::span<const int>(b.perm(g))).inverse();
    for (int i = 0; i < n; ++i) out.x.push_back(i * n + i);
    return out;
}

namespace {

// Positions of the pairing of t over C x B with s over B x A that lie on the
// diagonal of B.
std::vector<bool> diagonal(const FinGSet& a, const FinGSet& b, const FreeObject& t, const FreeObject& s) {
    std::vector<bool> keep;
    for (int p : t.x)
        for (int q : s.x) keep.push_back(p % b.size() == q / a.size());
    return keep;
}

}  // namespace

FreeObject span_compose(const FinGSet& a, const FinGSet& b, const FreeObject& t, const FreeObject& s) {
    if (t.arity() * s.arity() > Perm::kMaxDegree) throw SizeBudgetExceeded("paired arity exceeds capacity");
    const auto keep = diagonal(a, b, t, s);
    FreeObject out{restrict_object(box(t.alpha, s.alpha), keep), {}};
    std::size_t pos = 0;
    for (int p : t.x)
        for (int q : s.x)
            if (keep[pos++]) out.x.push_back(p / b.size() * a.size() + q % a.size());
    return out;
}

Perm span_compose_morphism(const FinGSet& a, const FinGSet& b, const FreeObject& t, const FreeObject& s,
                           const Perm& tau, const Perm& sigma) {
    return restrict_perm(tensor_perm(tau, sigma), diagonal(a, b, t, s));
}

namespace {

struct Arrow {
    int src, tgt;
    Perm label;
};

}  // namespace

SpanReport span_laws(const SpanSets& sets, int jmax) {
    SpanReport out;
    auto& unit = out.laws.law("unit up to isomorphism");
    auto& unit_fixed = out.laws.law("unit on fixed spans up to fixed isomorphism");
    auto& equiv = out.laws.law("composition is equivariant");
    auto& functorial = out.laws.law("composition is functorial");
    auto& assoc_obj = out.laws.law("associativity on objects");
    auto& assoc_mor = out.laws.law("associativity on morphisms");
    const auto& group = *sets.group;

    // Objects and morphisms of the free category over Y x Z, arity <= jmax.
    struct Spans {
        FreeOG f;
        std::vector<FreeObject> objects;
        std::vector<Arrow> arrows;
    };
    std::map<std::pair<int, int>, Spans> spans;
    const int n = static_cast<int>(sets.sets.size());
    for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
            Spans sp{FreeOG(product_gset(sets.sets[static_cast<std::size_t>(y)], sets.sets[static_cast<std::size_t>(z)]), jmax), {}, {}};
            sp.objects = sp.f.objects();
            for (std::size_t p = 0; p < sp.objects.size(); ++p)
                for (std::size_t q = 0; q < sp.objects.size(); ++q)
                    for (const Perm& s : sp.f.hom(sp.objects[p], sp.objects[q]))
                        sp.arrows.push_back({static_cast<int>(p), static_cast<int>(q), s});
            spans.emplace(std::pair{y, z}, std::move(sp));
        }
    auto name = [](const FreeObject& o) { return format_free_object(o); };

    for (int ai = 0; ai < n; ++ai)
        for (int bi = 0; bi < n; ++bi) {
            const auto& A = sets.sets[static_cast<std::size_t>(ai)];
            const auto& B = sets.sets[static_cast<std::size_t>(bi)];
            const auto& ba = spans.at({bi, ai});
            const auto ub = span_unit(B), ua = span_unit(A);
            for (const auto& s : ba.objects) {
                bool fixed = true;
                for (int g = 0; g < group.order(); ++g) fixed = fixed && ba.f.act(g, s) == s;
                for (const auto& composite : {span_compose(A, B, ub, s), span_compose(A, A, s, ua)}) {
                    ++unit.checked;
                    const auto isos = ba.f.hom(composite, s);
                    if (isos.empty()) fail(unit, name(s) + " vs " + name(composite));
                    if (!fixed) continue;
                    ++unit_fixed.checked;
                    const bool ok = std::any_of(isos.begin(), isos.end(), [&](const Perm& sigma) {
                        for (int g = 0; g < group.order(); ++g)
                            if (ba.f.act(g, composite) != composite || ba.f.act_morphism(g, composite, s, sigma) != sigma) return false;
                        return true;
                    });
                    if (!ok) fail(unit_fixed, name(s) + " vs " + name(composite));
                }
            }
        }

    for (int ai = 0; ai < n; ++ai)
        for (int bi = 0; bi < n; ++bi)
            for (int ci = 0; ci < n; ++ci) {
                const auto& A = sets.sets[static_cast<std::size_t>(ai)];
                const auto& B = sets.sets[static_cast<std::size_t>(bi)];
                const auto& C = sets.sets[static_cast<std::size_t>(ci)];
                const auto& ba = spans.at({bi, ai});
                const auto& cb = spans.at({ci, bi});
                const FreeOG ca(product_gset(C, A), 0);
                for (const auto& t : cb.objects)
                    for (const auto& s : ba.objects) {
                        const auto ts = span_compose(A, B, t, s);
                        for (int g = 0; g < group.order(); ++g) {
                            ++equiv.checked;
                            if (span_compose(A, B, cb.f.act(g, t), ba.f.act(g, s)) != ca.act(g, ts))
                                fail(equiv, "g=" + group.element_name(g) + " on " + name(t) + " . " + name(s));
                        }
                    }
                for (const auto& tau : cb.arrows)
                    for (const auto& sigma : ba.arrows) {
                        const auto& t = cb.objects[static_cast<std::size_t>(tau.src)];
                        const auto& s = ba.objects[static_cast<std::size_t>(sigma.src)];
                        const auto& t2 = cb.objects[static_cast<std::size_t>(tau.tgt)];
                        const auto& s2 = ba.objects[static_cast<std::size_t>(sigma.tgt)];
                        ++functorial.checked;
                        const auto m = span_compose_morphism(A, B, t, s, tau.label, sigma.label);
                        if (!ca.is_morphism(span_compose(A, B, t, s), span_compose(A, B, t2, s2), m))
                            fail(functorial, "composite of " + tau.label.cycles() + " and " + sigma.label.cycles());
                        if (tau.label.is_identity() && sigma.label.is_identity() && !m.is_identity())
                            fail(functorial, "identity on " + name(t) + " . " + name(s));
                    }
            }

    // Triples past the arity cap in an intermediate composite are counted, not checked.
    for (int ai = 0; ai < n; ++ai)
        for (int bi = 0; bi < n; ++bi)
            for (int ci = 0; ci < n; ++ci)
                for (int di = 0; di < n; ++di) {
                    const auto& A = sets.sets[static_cast<std::size_t>(ai)];
                    const auto& B = sets.sets[static_cast<std::size_t>(bi)];
                    const auto& C = sets.sets[static_cast<std::size_t>(ci)];
                    const auto& rs = spans.at({bi, ai});
                    const auto& ss = spans.at({ci, bi});
                    const auto& ts = spans.at({di, ci});
                    for (const auto& r : rs.objects)
                        for (const auto& s : ss.objects) {
                            const auto sr = span_compose(A, B, s, r);
                            for (const auto& t : ts.objects) {
                                const auto tsc = span_compose(B, C, t, s);
                                if (sr.arity() > jmax || tsc.arity() > jmax) {
                                    ++out.boundary_excluded;
                                    continue;
                                }
                                ++assoc_obj.checked;
                                const auto lhs = span_compose(A, C, t, sr);
                                const auto rhs = span_compose(A, B, tsc, r);
                                if (lhs != rhs) fail(assoc_obj, name(t) + " . " + name(s) + " . " + name(r));
                            }
                        }
                    for (const auto& rho : rs.arrows)
                        for (const auto& sigma : ss.arrows) {
                            const auto& r = rs.objects[static_cast<std::size_t>(rho.src)];
                            const auto& s = ss.objects[static_cast<std::size_t>(sigma.src)];
                            const auto sr = span_compose(A, B, s, r);
                            if (sr.arity() > jmax) continue;
                            const Perm srm = span_compose_morphism(A, B, s, r, sigma.label, rho.label);
                            for (const auto& tau : ts.arrows) {
                                const auto& t = ts.objects[static_cast<std::size_t>(tau.src)];
                                const auto tsc = span_compose(B, C, t, s);
                                if (tsc.arity() > jmax) continue;
                                ++assoc_mor.checked;
                                const Perm lhs = span_compose_morphism(A, C, t, sr, tau.label, srm);
                                const Perm rhs = span_compose_morphism(A, B, tsc, r, span_compose_morphism(B, C, t, s, tau.label, sigma.label),
                                                                       rho.label);
                                if (lhs != rhs)
                                    fail(assoc_mor, tau.label.cycles() + " . " + sigma.label.cycles() + " . " + rho.label.cycles() +
                                                        " at " + name(t) + " . " + name(s) + " . " + name(r));
                            }
                        }
                }
    return out;
}

PermGroupoid perm_groupoid(std::vector<std::string> names, const std::function<std::vector<Perm>(int, int)>& hom,
                           GroupPtr group, const std::function<int(int, int)>& act_obj,
                           const std::function<Perm(int, int, int, const Perm&)>& act_mor) {
    return build_groupoid(std::move(names), hom, std::move(group), act_obj, act_mor);
}

}  // namespace eqcat
