#include "eqcat/pqr_sets.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "eqcat/burnside.hpp"
#include "eqcat/errors.hpp"

namespace eqcat {

namespace {

constexpr int kShellLimit = 4096;

template <class T>
std::size_t sz(T v) {
    return static_cast<std::size_t>(v);
}

// Every tuple in the product of the given factor lists, last factor fastest.
template <class T, class F>
void for_each_tuple(const std::vector<std::vector<T>>& factors, F&& visit) {
    for (const auto& f : factors)
        if (f.empty()) return;
    std::vector<std::size_t> at(factors.size(), 0);
    std::vector<T> cur;
    for (const auto& f : factors) cur.push_back(f[0]);
    while (true) {
        visit(cur);
        std::size_t k = factors.size();
        while (k > 0) {
            --k;
            if (++at[k] < factors[k].size()) {
                cur[k] = factors[k][at[k]];
                break;
            }
            at[k] = 0;
            cur[k] = factors[k][0];
            if (k == 0) return;
        }
        if (factors.empty()) return;
    }
}

}  // namespace

OrbitMatching::OrbitMatching(FiniteGroup group, Side source, Side target)
    : group_(std::move(group)), classes_(subgroup_classes(group_)) {
    source_.side = std::move(source);
    target_.side = std::move(target);
    source_.by_type.resize(classes_.size());
    target_.by_type.resize(classes_.size());
}

void OrbitMatching::process(Memo& m, int level) {
    const int order = group_.order();
    while (m.processed <= level) {
        if (m.processed >= kShellLimit) throw SizeBudgetExceeded("orbit matching ran past its shell limit");
        std::vector<Elem> bases;
        for (auto& x : m.side.shell(m.processed)) {
            bool least = true;
            for (int g = 1; g < order && least; ++g) least = !(m.side.act(g, x) < x);
            if (least) bases.push_back(std::move(x));
        }
        std::sort(bases.begin(), bases.end());
        for (auto& b : bases) {
            std::vector<int> stab;
            for (int g = 0; g < order; ++g)
                if (m.side.act(g, b) == b) stab.push_back(g);
            const Subgroup s = Subgroup::from_members(stab);
            int type = -1, conj = -1;
            for (std::size_t c = 0; c < classes_.size() && type < 0; ++c)
                for (int t = 0; t < order; ++t)
                    if (conjugate(group_, s, t) == classes_[c].representative) {
                        type = static_cast<int>(c);
                        conj = t;
                        break;
                    }
            auto& list = m.by_type[sz(type)];
            m.index.emplace(b, std::pair{type, static_cast<int>(list.size())});
            list.push_back({std::move(b), conj});
        }
        ++m.processed;
    }
}

void OrbitMatching::reach(Memo& m, int type, std::size_t count) {
    while (m.by_type[sz(type)].size() < count) process(m, m.processed);
}

Elem OrbitMatching::carry(Memo& from, Memo& to, const Elem& x) {
    process(from, from.side.level(x));
    const int order = group_.order();
    Elem base = x;
    for (int g = 1; g < order; ++g) base = std::min(base, from.side.act(g, x));
    int a = 0;
    while (!(from.side.act(a, base) == x)) ++a;
    const auto [type, k] = from.index.at(base);
    const int conj_from = from.by_type[sz(type)][sz(k)].conj;
    reach(to, type, sz(k) + 1);
    const Orbit& t = to.by_type[sz(type)][sz(k)];
    // base -> conj_from^-1 K and t.base -> t.conj^-1 K in G/K.
    return to.side.act(group_.mul(a, group_.mul(group_.inv(conj_from), t.conj)), t.base);
}

Elem OrbitMatching::forward(const Elem& x) { return carry(source_, target_, x); }
Elem OrbitMatching::backward(const Elem& y) { return carry(target_, source_, y); }

Universe::Universe(GroupPtr group, int depth) : group_(std::move(group)), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    classes_ = subgroup_classes(*group_);
    for (const auto& c : classes_) {
        orbits_.push_back(coset_gset(group_, c.representative));
        copy_size_ += orbits_.back().size();
    }
}

UPoint Universe::act(int g, const UPoint& u) const { return {u.cls, u.copy, orbits_[sz(u.cls)].act(g, u.coset)}; }

Elem Universe::act(int g, const Elem& x) const {
    Elem out = x;
    for (auto& c : out.coords) c = act(g, c);
    return out;
}

UPoint Universe::basepoint() const { return {static_cast<int>(classes_.size()) - 1, 0, 0}; }

Subgroup Universe::isotropy(const UPoint& u) const { return eqcat::isotropy(orbits_[sz(u.cls)], u.coset); }

std::vector<UPoint> Universe::copy_points(int copy) const {
    std::vector<UPoint> out;
    for (std::size_t c = 0; c < orbits_.size(); ++c)
        for (int k = 0; k < orbits_[c].size(); ++k) out.push_back({static_cast<int>(c), copy, k});
    return out;
}

std::vector<UPoint> Universe::prefix(int depth) const {
    std::vector<UPoint> out;
    for (std::size_t c = 0; c < orbits_.size(); ++c)
        for (int n = 0; n < depth; ++n)
            for (int k = 0; k < orbits_[c].size(); ++k) out.push_back({static_cast<int>(c), n, k});
    return out;
}

std::string Universe::format(const UPoint& u) const {
    return "(" + std::to_string(u.cls) + "," + std::to_string(u.copy) + "," + std::to_string(u.coset) + ")";
}

std::string Universe::format(const Elem& x) const {
    std::string out = x.coords.size() == 1 ? std::to_string(x.slot) + ":" : "";
    for (std::size_t i = 0; i < x.coords.size(); ++i) out += (i ? "x" : "") + format(x.coords[i]);
    return x.coords.empty() ? "()" : out;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) throw SizeBudgetExceeded("copy number overflows");
    return a * b;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    if (b > std::numeric_limits<std::int64_t>::max() - a) throw SizeBudgetExceeded("copy number overflows");
    return a + b;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

// Rank of a tuple of naturals: by largest entry, then lexicographically.
std::int64_t shell_rank(const std::vector<std::int64_t>& n) {
    if (n.empty()) return 0;
    const int j = static_cast<int>(n.size());
    const std::int64_t top = *std::max_element(n.begin(), n.end());
    std::int64_t out = ipow(top, j);
    bool hit = false;
    for (int p = 0; p < j; ++p) {
        const std::int64_t all = ipow(top + 1, j - p - 1), lower = ipow(top, j - p - 1);
        out = checked_add(out, checked_mul(n[sz(p)], hit ? all : all - lower));
        if (n[sz(p)] == top) hit = true;
    }
    return out;
}

std::vector<std::int64_t> shell_unrank(std::int64_t rank, int j) {
    if (j == 0) return {};
    // Largest top with top^j <= rank.
    std::int64_t lo = 0, hi = 1;
    auto fits = [&](std::int64_t t) {
        std::int64_t r = 1;
        for (int i = 0; i < j; ++i) {
            if (t != 0 && r > rank / t) return false;
            r *= t;
        }
        return r <= rank;
    };
    while (fits(hi)) hi *= 2;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    const std::int64_t top = lo;
    std::int64_t rest = rank - ipow(top, j);
    std::vector<std::int64_t> out;
    bool hit = false;
    for (int p = 0; p < j; ++p) {
        const std::int64_t all = ipow(top + 1, j - p - 1), lower = ipow(top, j - p - 1);
        const std::int64_t each = hit ? all : all - lower;
        if (each > 0 && rest / each < top) {
            out.push_back(rest / each);
            rest %= each;
        } else {
            out.push_back(top);
            rest -= checked_mul(top, each);
            hit = true;
        }
    }
    return out;
}

}  // namespace

CanonicalPower::CanonicalPower(const Universe& u, int j) : u_(u), j_(j) {
    const FiniteGroup& g = u.group();
    const auto& classes = u.classes();
    const int nc = static_cast<int>(classes.size());
    for (int c = 0; c < nc; ++c) {
        int k = 0;
        while (!(u.isotropy({c, 0, k}) == classes[sz(c)].representative)) ++k;
        base_coset_.push_back(k);
    }
    by_type_.resize(sz(nc));
    std::vector<std::vector<int>> class_lists(sz(j), std::vector<int>(sz(nc)));
    for (auto& l : class_lists) std::iota(l.begin(), l.end(), 0);
    const std::vector<int> all_whole(sz(j), nc - 1);
    for_each_tuple(class_lists, [&](const std::vector<int>& cs) {
        Pattern pat;
        std::vector<std::vector<int>> cosets;
        for (int c : cs) {
            std::vector<int> ks(sz(u.copy_points(0).size()));
            int size = 0;
            for (const auto& p : u.copy_points(0))
                if (p.cls == c) ks[sz(size++)] = p.coset;
            ks.resize(sz(size));
            cosets.push_back(std::move(ks));
        }
        auto move = [&](int a, const std::vector<int>& t) {
            std::vector<int> out(t.size());
            for (std::size_t r = 0; r < t.size(); ++r) out[r] = u.act(a, UPoint{cs[r], 0, t[r]}).coset;
            return out;
        };
        std::vector<std::vector<int>> bases;
        for_each_tuple(cosets, [&](const std::vector<int>& t) {
            bool least = true;
            for (int a = 1; a < g.order() && least; ++a) least = !(move(a, t) < t);
            if (least) bases.push_back(t);
        });
        for (const auto& b : bases) {
            std::vector<int> stab;
            for (int a = 0; a < g.order(); ++a)
                if (move(a, b) == b) stab.push_back(a);
            const Subgroup s = Subgroup::from_members(stab);
            BlockOrbit o{b, -1, -1, 0};
            for (int c = 0; c < nc && o.type < 0; ++c)
                for (int t = 0; t < g.order(); ++t)
                    if (conjugate(g, s, t) == classes[sz(c)].representative) {
                        o.type = c;
                        o.conj = t;
                        break;
                    }
            pat.by_base.emplace(b, static_cast<int>(pat.orbits.size()));
            pat.orbits.push_back(std::move(o));
        }
        patterns_.emplace(cs, std::move(pat));
    });
    // Number the orbits of each type; the all-G pattern comes first, so the
    // basepoint tuple lands on the basepoint.
    for (int pass = 0; pass < 2; ++pass)
        for (auto& [cs, pat] : patterns_) {
            if ((cs == all_whole) != (pass == 0)) continue;
            for (std::size_t o = 0; o < pat.orbits.size(); ++o) {
                auto& list = by_type_[sz(pat.orbits[o].type)];
                pat.orbits[o].position = static_cast<std::int64_t>(list.size());
                list.emplace_back(cs, static_cast<int>(o));
            }
        }
}

Elem CanonicalPower::forward(const Elem& x) const {
    const FiniteGroup& g = u_.group();
    std::vector<int> cs, ks;
    std::vector<std::int64_t> ns;
    for (const auto& p : x.coords) {
        cs.push_back(p.cls);
        ns.push_back(p.copy);
        ks.push_back(p.coset);
    }
    const Pattern& pat = patterns_.at(cs);
    auto move = [&](int a, const std::vector<int>& t) {
        std::vector<int> out(t.size());
        for (std::size_t r = 0; r < t.size(); ++r) out[r] = u_.act(a, UPoint{cs[r], 0, t[r]}).coset;
        return out;
    };
    std::vector<int> base = ks;
    for (int a = 1; a < g.order(); ++a) base = std::min(base, move(a, ks));
    int a = 0;
    while (move(a, base) != ks) ++a;
    const BlockOrbit& o = pat.orbits[sz(pat.by_base.at(base))];
    const auto count = static_cast<std::int64_t>(by_type_[sz(o.type)].size());
    const std::int64_t copy = checked_add(checked_mul(shell_rank(ns), count), o.position);
    // base -> conj^-1 K, and the base coset of G/K is K itself.
    const UPoint target{o.type, copy, base_coset_[sz(o.type)]};
    return upoint(u_.act(g.mul(a, g.inv(o.conj)), target));
}

Elem CanonicalPower::backward(const Elem& y) const {
    const FiniteGroup& g = u_.group();
    const UPoint& p = y.coords[0];
    const auto& list = by_type_[sz(p.cls)];
    const auto count = static_cast<std::int64_t>(list.size());
    const auto& [cs, oi] = list[sz(p.copy % count)];
    const auto ns = shell_unrank(p.copy / count, j_);
    const BlockOrbit& o = patterns_.at(cs).orbits[sz(oi)];
    int b = 0;
    while (u_.act(b, UPoint{p.cls, 0, base_coset_[sz(p.cls)]}).coset != p.coset) ++b;
    const int a = g.mul(b, o.conj);
    Elem out;
    for (int r = 0; r < j_; ++r) out.coords.push_back(u_.act(a, UPoint{cs[sz(r)], ns[sz(r)], o.base[sz(r)]}));
    return out;
}

const CanonicalPower& Universe::power(int j) const {
    auto it = powers_.find(j);
    if (it == powers_.end()) it = powers_.emplace(j, std::make_unique<CanonicalPower>(*this, j)).first;
    return *it->second;
}

UniversePtr universe(GroupPtr group, int depth) { return std::make_shared<const Universe>(std::move(group), depth); }

// Expressions.

namespace {

Expr node(ExprOp op, Shape dom, Shape cod) {
    Expr e;
    e.op = op;
    e.dom = dom;
    e.cod = cod;
    return e;
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

void require_unit_or(const Shape& s, bool power, const char* what) {
    if (s.n != 1 && s.power != power) throw ShapeMismatch(std::string(what) + ": part has the wrong shape");
}

}  // namespace

ExprPtr expr_identity(Shape s) { return make(node(ExprOp::Identity, s, s)); }

ExprPtr expr_interleave(int j) {
    if (j < 0) throw ShapeMismatch("negative arity");
    Expr e = node(ExprOp::Interleave, copower_shape(j), kUnitShape);
    e.j = j;
    return make(std::move(e));
}

ExprPtr expr_deinterleave(int j) {
    if (j < 1) throw ShapeMismatch("deinterleave needs arity at least 1");
    Expr e = node(ExprOp::Deinterleave, kUnitShape, copower_shape(j));
    e.j = j;
    return make(std::move(e));
}

ExprPtr expr_inject(int j, int slot) {
    if (slot < 0 || slot >= j) throw ShapeMismatch("slot out of range");
    Expr e = node(ExprOp::InjectSlot, kUnitShape, copower_shape(j));
    e.j = j;
    e.slot = slot;
    return make(std::move(e));
}

ExprPtr expr_translate(int g, Shape s) {
    Expr e = node(ExprOp::Translate, s, s);
    e.g = g;
    return make(std::move(e));
}

ExprPtr expr_compose(ExprPtr f, ExprPtr g) {
    if (!(f->dom == g->cod)) throw ShapeMismatch("composite of maps with mismatched shapes");
    if (f->op == ExprOp::Identity) return g;
    if (g->op == ExprOp::Identity) return f;
    Expr e = node(ExprOp::Compose, g->dom, f->cod);
    e.args = {std::move(f), std::move(g)};
    return make(std::move(e));
}

ExprPtr expr_compose(std::initializer_list<ExprPtr> chain) {
    if (chain.size() == 0) throw ShapeMismatch("empty composite");
    std::vector<ExprPtr> v(chain);
    ExprPtr out = v.back();
    for (std::size_t i = v.size() - 1; i-- > 0;) out = expr_compose(v[i], out);
    return out;
}

ExprPtr expr_coproduct(std::vector<ExprPtr> parts) {
    int dom = 0, cod = 0;
    for (const auto& p : parts) {
        require_unit_or(p->dom, false, "coproduct");
        require_unit_or(p->cod, false, "coproduct");
        dom += p->dom.n;
        cod += p->cod.n;
    }
    Expr e = node(ExprOp::Coproduct, copower_shape(dom), copower_shape(cod));
    e.args = std::move(parts);
    return make(std::move(e));
}

ExprPtr expr_product(std::vector<ExprPtr> parts) {
    int dom = 0, cod = 0;
    for (const auto& p : parts) {
        require_unit_or(p->dom, true, "product");
        require_unit_or(p->cod, true, "product");
        dom += p->dom.n;
        cod += p->cod.n;
    }
    Expr e = node(ExprOp::Product, power_shape(dom), power_shape(cod));
    e.args = std::move(parts);
    return make(std::move(e));
}

ExprPtr expr_sigma_copower(const Perm& s) {
    Expr e = node(ExprOp::SigmaCopower, copower_shape(s.degree()), copower_shape(s.degree()));
    e.sigma = s;
    return make(std::move(e));
}

ExprPtr expr_sigma_power(const Perm& s) {
    Expr e = node(ExprOp::SigmaPower, power_shape(s.degree()), power_shape(s.degree()));
    e.sigma = s;
    return make(std::move(e));
}

ExprPtr expr_power(int j) {
    if (j < 0) throw ShapeMismatch("negative arity");
    if (j == 1) return expr_identity();
    Expr e = node(ExprOp::Power, power_shape(j), kUnitShape);
    e.j = j;
    return make(std::move(e));
}

ExprPtr expr_power_inverse(int j) {
    if (j < 1) throw ShapeMismatch("the arity 0 map is not invertible");
    if (j == 1) return expr_identity();
    Expr e = node(ExprOp::PowerInverse, kUnitShape, power_shape(j));
    e.j = j;
    return make(std::move(e));
}

ExprPtr expr_cases(std::vector<ExprPtr> parts) {
    for (const auto& p : parts)
        if (!(p->dom == kUnitShape) || !(p->cod == kUnitShape)) throw ShapeMismatch("cases must be maps U -> U");
    Expr e = node(ExprOp::Cases, copower_shape(static_cast<int>(parts.size())), kUnitShape);
    e.args = std::move(parts);
    return make(std::move(e));
}

ExprPtr expr_inverse(const FiniteGroup& g, const ExprPtr& f) {
    auto all = [&](ExprOp op) {
        std::vector<ExprPtr> inv;
        for (const auto& p : f->args) inv.push_back(expr_inverse(g, p));
        return op == ExprOp::Coproduct ? expr_coproduct(std::move(inv)) : expr_product(std::move(inv));
    };
    switch (f->op) {
        case ExprOp::Identity: return f;
        case ExprOp::Interleave:
            if (f->j == 0) throw ShapeMismatch("the empty map is not invertible");
            return expr_deinterleave(f->j);
        case ExprOp::Deinterleave: return expr_interleave(f->j);
        case ExprOp::Translate: return expr_translate(g.inv(f->g), f->dom);
        case ExprOp::Compose: return expr_compose(expr_inverse(g, f->args[1]), expr_inverse(g, f->args[0]));
        case ExprOp::Coproduct:
        case ExprOp::Product: return all(f->op);
        case ExprOp::SigmaCopower: return expr_sigma_copower(f->sigma.inverse());
        case ExprOp::SigmaPower: return expr_sigma_power(f->sigma.inverse());
        case ExprOp::Power:
            if (f->j == 0) throw ShapeMismatch("the arity 0 map is not invertible");
            return expr_power_inverse(f->j);
        case ExprOp::PowerInverse: return expr_power(f->j);
        case ExprOp::InjectSlot:
        case ExprOp::Cases: break;
    }
    throw ShapeMismatch("expression is not built from bijections");
}

std::string format_expr(const ExprPtr& f) {
    auto list = [&](const char* name) {
        std::string out = name;
        out += "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) out += (i ? ", " : "") + format_expr(f->args[i]);
        return out + ")";
    };
    switch (f->op) {
        case ExprOp::Identity: return "id";
        case ExprOp::Interleave: return "interleave(" + std::to_string(f->j) + ")";
        case ExprOp::Deinterleave: return "deinterleave(" + std::to_string(f->j) + ")";
        case ExprOp::InjectSlot: return "inject(" + std::to_string(f->j) + "," + std::to_string(f->slot + 1) + ")";
        case ExprOp::Translate: return "translate(" + std::to_string(f->g) + ")";
        case ExprOp::Compose: return format_expr(f->args[0]) + " . " + format_expr(f->args[1]);
        case ExprOp::Coproduct: return list("coproduct");
        case ExprOp::Product: return list("product");
        case ExprOp::SigmaCopower: return "sigma" + f->sigma.cycles();
        case ExprOp::SigmaPower: return "sigma^" + f->sigma.cycles();
        case ExprOp::Power: return "power(" + std::to_string(f->j) + ")";
        case ExprOp::PowerInverse: return "power(" + std::to_string(f->j) + ")^-1";
        case ExprOp::Cases: return list("cases");
    }
    return "?";
}

namespace {

Elem eval(const Universe& u, const Expr& f, const Elem& x) {
    switch (f.op) {
        case ExprOp::Identity: return x;
        case ExprOp::Interleave: {
            const UPoint& p = x.coords[0];
            return upoint({p.cls, checked_add(checked_mul(f.j, p.copy), x.slot), p.coset});
        }
        case ExprOp::Deinterleave: {
            const UPoint& p = x.coords[0];
            return Elem{static_cast<int>(p.copy % f.j), {{p.cls, p.copy / f.j, p.coset}}};
        }
        case ExprOp::InjectSlot: return Elem{f.slot, x.coords};
        case ExprOp::Translate: return u.act(f.g, x);
        case ExprOp::Compose: return eval(u, *f.args[0], eval(u, *f.args[1], x));
        case ExprOp::Coproduct: {
            int in = 0, out = 0;
            for (const auto& p : f.args) {
                if (x.slot < in + p->dom.n) {
                    const Elem y = eval(u, *p, Elem{x.slot - in, x.coords});
                    return Elem{out + y.slot, y.coords};
                }
                in += p->dom.n;
                out += p->cod.n;
            }
            throw DomainShapeMismatch("slot beyond the coproduct");
        }
        case ExprOp::Product: {
            Elem out;
            std::size_t at = 0;
            for (const auto& p : f.args) {
                const auto n = sz(p->dom.n);
                Elem part{0, std::vector<UPoint>(x.coords.begin() + static_cast<std::ptrdiff_t>(at),
                                                 x.coords.begin() + static_cast<std::ptrdiff_t>(at + n))};
                const Elem y = eval(u, *p, part);
                out.coords.insert(out.coords.end(), y.coords.begin(), y.coords.end());
                at += n;
            }
            return out;
        }
        case ExprOp::SigmaCopower: return Elem{f.sigma[x.slot], x.coords};
        case ExprOp::SigmaPower: {
            Elem out{0, x.coords};
            for (int i = 0; i < f.sigma.degree(); ++i) out.coords[sz(f.sigma[i])] = x.coords[sz(i)];
            return out;
        }
        case ExprOp::Power:
            if (f.j == 0) return upoint(u.basepoint());
            return u.power(f.j).forward(x);
        case ExprOp::PowerInverse: return u.power(f.j).backward(x);
        case ExprOp::Cases: return eval(u, *f.args[sz(x.slot)], Elem{0, x.coords});
    }
    throw std::logic_error("unknown expression");
}

}  // namespace

Elem evaluate(const Universe& u, const ExprPtr& f, const Elem& x) {
    const Shape& s = f->dom;
    const bool ok = s.n == 1 ? x.slot == 0 && x.coords.size() == 1
                    : s.power ? x.slot == 0 && x.coords.size() == sz(s.n)
                              : x.slot >= 0 && x.slot < s.n && x.coords.size() == 1;
    if (!ok) throw DomainShapeMismatch("point " + u.format(x) + " is not in the domain");
    for (const auto& c : x.coords)
        if (c.cls < 0 || c.cls >= static_cast<int>(u.classes().size()) || c.copy < 0)
            throw DomainShapeMismatch("point " + u.format(x) + " is not in U");
    return eval(u, *f, x);
}

// Operad structure.

ExprPtr pg_gamma(const ExprPtr& psi, const std::vector<ExprPtr>& phis) {
    if (!(psi->dom == copower_shape(static_cast<int>(phis.size())))) throw ShapeMismatch("arity of psi differs from the inputs");
    for (const auto& p : phis)
        if (!(p->cod == kUnitShape)) throw ShapeMismatch("inputs must land in U");
    return expr_compose(psi, expr_coproduct(phis));
}

ExprPtr qg_gamma(const ExprPtr& psi, const std::vector<ExprPtr>& phis) {
    if (!(psi->dom == power_shape(static_cast<int>(phis.size())))) throw ShapeMismatch("arity of psi differs from the inputs");
    for (const auto& p : phis)
        if (!(p->cod == kUnitShape)) throw ShapeMismatch("inputs must land in U");
    return expr_compose(psi, expr_product(phis));
}

ExprPtr pg_sigma(const ExprPtr& phi, const Perm& s) { return expr_compose(phi, expr_sigma_copower(s)); }
ExprPtr qg_sigma(const ExprPtr& phi, const Perm& s) { return expr_compose(phi, expr_sigma_power(s)); }

ExprPtr conjugate_expr(const FiniteGroup& group, int g, const ExprPtr& phi) {
    return expr_compose({expr_translate(g, phi->cod), phi, expr_translate(group.inv(g), phi->dom)});
}

ExprPtr rg_bijection(int j) {
    if (j < 1) throw ShapeMismatch("R has no arity 0 bijection");
    return expr_power(j);
}

ExprPtr lambda_action(const FiniteGroup& group, const ExprPtr& psi, const std::vector<ExprPtr>& phis) {
    const int k = static_cast<int>(phis.size());
    if (k < 1 || !(psi->dom == power_shape(k)) || !(psi->cod == kUnitShape)) throw ShapeMismatch("psi must be a map U^k -> U");
    std::vector<std::vector<int>> slots;
    for (const auto& p : phis) {
        if (p->dom.power && p->dom.n != 1) throw ShapeMismatch("inputs must be maps ^jU -> U");
        if (!(p->cod == kUnitShape)) throw ShapeMismatch("inputs must land in U");
        std::vector<int> s(sz(p->dom.n));
        std::iota(s.begin(), s.end(), 0);
        slots.push_back(std::move(s));
    }
    const ExprPtr inv = expr_inverse(group, psi);
    std::vector<ExprPtr> cases;
    for_each_tuple(slots, [&](const std::vector<int>& idx) {
        std::vector<ExprPtr> factors;
        for (int r = 0; r < k; ++r)
            factors.push_back(expr_compose(phis[sz(r)], expr_inject(phis[sz(r)]->dom.n, idx[sz(r)])));
        cases.push_back(expr_compose({psi, expr_product(std::move(factors)), inv}));
    });
    return expr_cases(std::move(cases));
}

// Sampling.

Elem sample_point(const Universe& u, Shape s, std::mt19937_64& rng) {
    const auto pts = u.prefix();
    auto pick = [&] { return pts[rng() % pts.size()]; };
    if (s.n == 1) return upoint(pick());
    if (s.power) {
        Elem out;
        for (int i = 0; i < s.n; ++i) out.coords.push_back(pick());
        return out;
    }
    if (s.n == 0) throw DomainShapeMismatch("the empty copower has no points");
    const int slot = static_cast<int>(rng() % sz(s.n));
    return Elem{slot, {pick()}};
}

namespace {

ExprPtr shift(int slot) { return expr_compose(expr_interleave(2), expr_inject(2, slot)); }

Perm sample_perm(int n, std::mt19937_64& rng) {
    return perm_unrank(n, rng() % static_cast<std::uint64_t>(factorial(n)));
}

}  // namespace

ExprPtr sample_unary(const Universe& u, std::mt19937_64& rng, bool based) {
    // Based maps feed the canonical powers, which square copy numbers, so
    // they shift at most once.
    ExprPtr out = expr_identity();
    const int factors = 1 + static_cast<int>(rng() % 3);
    bool shifted = false;
    for (int i = 0; i < factors; ++i) {
        const int kind = static_cast<int>(rng() % 3);
        const int g = static_cast<int>(rng() % sz(u.group().order()));
        if (kind == 0 || (based && shifted)) {
            out = expr_compose(expr_translate(g), out);
            continue;
        }
        out = expr_compose(shift(kind == 1 || based ? 0 : 1), out);
        shifted = true;
    }
    return out;
}

ExprPtr sample_pg(const Universe& u, int j, std::mt19937_64& rng) {
    std::vector<ExprPtr> parts;
    for (int i = 0; i < j; ++i) parts.push_back(sample_unary(u, rng, false));
    return expr_compose({sample_unary(u, rng, false), expr_interleave(j), expr_coproduct(std::move(parts)),
                         expr_sigma_copower(sample_perm(j, rng))});
}

ExprPtr sample_qg(const Universe& u, int j, std::mt19937_64& rng) {
    std::vector<ExprPtr> parts;
    for (int i = 0; i < j; ++i) parts.push_back(sample_unary(u, rng, true));
    return expr_compose({sample_unary(u, rng, true), expr_power(j), expr_product(std::move(parts)),
                         expr_sigma_power(sample_perm(j, rng))});
}

ExprPtr sample_rg(const Universe& u, int k, std::mt19937_64& rng) {
    const int order = u.group().order();
    std::vector<ExprPtr> parts;
    for (int i = 0; i < k; ++i) parts.push_back(expr_translate(static_cast<int>(rng() % sz(order))));
    return expr_compose({expr_translate(static_cast<int>(rng() % sz(order))), rg_bijection(k),
                         expr_product(std::move(parts)), expr_sigma_power(sample_perm(k, rng))});
}

// Extensional law checks.

namespace {

void fail(LawResult& law, const std::string& witness) {
    if (law.pass) law.witness = witness;
    law.pass = false;
}

void same_at(const Universe& u, const ExprPtr& a, const ExprPtr& b, const Elem& x, LawResult& law,
             const std::string& what) {
    ++law.sampled;
    const Elem ya = evaluate(u, a, x), yb = evaluate(u, b, x);
    if (!(ya == yb)) fail(law, what + " at " + u.format(x) + ": " + u.format(ya) + " vs " + u.format(yb));
}

// The first n points of the shape, copies taken in order.
std::vector<Elem> distinct_points(const Universe& u, Shape s, int n) {
    std::vector<Elem> out;
    for (int c = 1; static_cast<int>(out.size()) < n; ++c) {
        out.clear();
        const auto pts = u.prefix(c);
        if (s.n == 1 || !s.power) {
            for (const auto& p : pts)
                for (int i = 0; i < std::max(1, s.n); ++i) out.push_back(Elem{i, {p}});
        } else {
            std::vector<std::vector<UPoint>> factors(sz(s.n), pts);
            for_each_tuple(factors, [&](const std::vector<UPoint>& t) { out.push_back(Elem{0, t}); });
        }
    }
    out.resize(sz(n));
    return out;
}

void check_injective(const Universe& u, const ExprPtr& f, int n, LawResult& law, const std::string& what) {
    std::map<Elem, Elem> seen;
    for (const auto& x : distinct_points(u, f->dom, n)) {
        ++law.sampled;
        const Elem y = evaluate(u, f, x);
        auto [it, fresh] = seen.emplace(y, x);
        if (!fresh) fail(law, what + ": " + u.format(x) + " and " + u.format(it->second) + " both go to " + u.format(y));
    }
}

Elem base_tuple(const Universe& u, int j) { return Elem{0, std::vector<UPoint>(sz(j), u.basepoint())}; }

struct Rng {
    std::mt19937_64 gen;
    int in(int lo, int hi) { return lo + static_cast<int>(gen() % sz(hi - lo + 1)); }
};

int lex_index(const std::vector<int>& idx, const std::vector<int>& dims) {
    int out = 0;
    for (std::size_t r = 0; r < dims.size(); ++r) out = out * dims[r] + idx[r];
    return out;
}

std::vector<int> lex_digits(int x, const std::vector<int>& dims) {
    std::vector<int> idx(dims.size());
    for (std::size_t r = dims.size(); r-- > 0;) {
        idx[r] = x % dims[r];
        x /= dims[r];
    }
    return idx;
}

int product_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 1, std::multiplies<>()); }

}  // namespace

LawReport pq_laws(GroupPtr group, const PqrOptions& opt) {
    const Universe u(std::move(group), opt.depth);
    const FiniteGroup& g = u.group();
    Rng rng{std::mt19937_64(opt.seed)};
    const auto n = static_cast<std::uint64_t>(opt.samples);
    LawReport r;

    for (bool q : {false, true}) {
        const std::string tag = q ? "Q: " : "P: ";
        const int lo = q ? 1 : 0;
        auto sample = [&](int j) { return q ? sample_qg(u, j, rng.gen) : sample_pg(u, j, rng.gen); };
        auto gamma = [&](const ExprPtr& psi, const std::vector<ExprPtr>& phis) {
            return q ? qg_gamma(psi, phis) : pg_gamma(psi, phis);
        };
        auto domain = [&](int j) { return q ? power_shape(j) : copower_shape(j); };

        auto& unit = r.law(tag + "unit");
        while (unit.sampled < n) {
            const int j = rng.in(1, 2);
            const auto phi = sample(j);
            const auto x = sample_point(u, domain(j), rng.gen);
            same_at(u, gamma(expr_identity(), {phi}), phi, x, unit, "gamma(id; phi)");
            same_at(u, gamma(phi, std::vector<ExprPtr>(sz(j), expr_identity())), phi, x, unit, "gamma(phi; id)");
        }

        auto& assoc = r.law(tag + "associativity");
        while (assoc.sampled < n) {
            // In Q at most two canonical powers are nested, keeping copy numbers in range.
            const int k = rng.in(1, 2);
            const bool flat_outer = q && rng.in(0, 1) == 0;
            std::vector<int> js, ms;
            for (int i = 0; i < (flat_outer ? 1 : k); ++i) js.push_back(rng.in(lo, 2));
            for (int i = 0; i < std::accumulate(js.begin(), js.end(), 0); ++i) ms.push_back(q && !flat_outer ? 1 : rng.in(lo, 2));
            const int m = std::accumulate(ms.begin(), ms.end(), 0);
            if (m == 0) continue;
            const auto psi = sample(static_cast<int>(js.size()));
            std::vector<ExprPtr> phis, chis, inner;
            for (int j : js) phis.push_back(sample(j));
            for (int mi : ms) chis.push_back(sample(mi));
            std::size_t at = 0;
            for (std::size_t i = 0; i < phis.size(); ++i) {
                std::vector<ExprPtr> block(chis.begin() + static_cast<std::ptrdiff_t>(at),
                                           chis.begin() + static_cast<std::ptrdiff_t>(at + sz(js[i])));
                inner.push_back(gamma(phis[i], block));
                at += sz(js[i]);
            }
            same_at(u, gamma(gamma(psi, phis), chis), gamma(psi, inner), sample_point(u, domain(m), rng.gen), assoc,
                    "nested composites");
        }

        auto& eq = r.law(tag + "Sigma-equivariance");
        while (eq.sampled < n) {
            const int k = rng.in(1, 3);
            std::vector<int> js;
            for (int i = 0; i < k; ++i) js.push_back(rng.in(lo, 2));
            const int j = std::accumulate(js.begin(), js.end(), 0);
            if (j == 0) continue;
            const auto psi = sample(k);
            std::vector<ExprPtr> phis, moved(sz(k)), twisted;
            std::vector<Perm> taus;
            for (int ji : js) phis.push_back(sample(ji));
            const Perm s = sample_perm(k, rng.gen);
            for (int i = 0; i < k; ++i) moved[sz(s[i])] = phis[sz(i)];
            for (int i = 0; i < k; ++i) {
                taus.push_back(sample_perm(js[sz(i)], rng.gen));
                twisted.push_back(q ? qg_sigma(phis[sz(i)], taus.back()) : pg_sigma(phis[sz(i)], taus.back()));
            }
            const Perm block = block_perm(s, js), sum = block_sum(taus);
            auto reorder = [&](const Perm& p) { return q ? expr_sigma_power(p) : expr_sigma_copower(p); };
            const auto x = sample_point(u, domain(j), rng.gen);
            same_at(u, gamma(q ? qg_sigma(psi, s) : pg_sigma(psi, s), phis), expr_compose(gamma(psi, moved), reorder(block)), x,
                    eq, "gamma(psi s; phi)");
            same_at(u, gamma(psi, twisted), expr_compose(gamma(psi, phis), reorder(sum)), x, eq, "gamma(psi; phi t)");
        }

        auto& geq = r.law(tag + "G-equivariance");
        while (geq.sampled < n) {
            const int k = rng.in(1, 2);
            std::vector<int> js;
            for (int i = 0; i < k; ++i) js.push_back(rng.in(lo, 2));
            const int j = std::accumulate(js.begin(), js.end(), 0);
            if (j == 0) continue;
            const int h = rng.in(0, g.order() - 1);
            const auto psi = sample(k);
            std::vector<ExprPtr> phis, conj;
            for (int ji : js) {
                phis.push_back(sample(ji));
                conj.push_back(conjugate_expr(g, h, phis.back()));
            }
            same_at(u, conjugate_expr(g, h, gamma(psi, phis)), gamma(conjugate_expr(g, h, psi), conj),
                    sample_point(u, domain(j), rng.gen), geq, "g gamma(psi; phi)");
        }

        auto& inj = r.law(tag + "injective");
        check_injective(u, sample(2), opt.samples, inj, "arity 2");
        check_injective(u, gamma(sample(2), {sample(2), sample(1)}), opt.samples, inj, "composite");
    }

    auto& based = r.law("Q: composites of based maps are based");
    while (based.sampled < n) {
        const int k = rng.in(1, 2);
        std::vector<ExprPtr> phis;
        int j = 0;
        for (int i = 0; i < k; ++i) {
            const int ji = rng.in(1, 2);
            j += ji;
            phis.push_back(sample_qg(u, ji, rng.gen));
        }
        ++based.sampled;
        const Elem y = evaluate(u, qg_gamma(sample_qg(u, k, rng.gen), phis), base_tuple(u, j));
        if (!(y == upoint(u.basepoint()))) fail(based, "basepoint goes to " + u.format(y));
    }

    for (int j = 1; j <= 3; ++j) {
        const auto il = expr_interleave(j), back = expr_inverse(g, il);
        auto& law = r.law("interleaver " + std::to_string(j) + " is an equivariant bijection");
        for (const auto& x : distinct_points(u, il->dom, opt.samples)) {
            const int h = rng.in(0, g.order() - 1);
            ++law.sampled;
            const Elem y = evaluate(u, il, x);
            if (!(evaluate(u, back, y) == x)) fail(law, "round trip fails at " + u.format(x));
            if (!(evaluate(u, il, u.act(h, x)) == u.act(h, y))) fail(law, "not equivariant at " + u.format(x));
        }
    }

    for (int j = 2; j <= 3; ++j) {
        const auto psi = rg_bijection(j), inv = expr_inverse(g, psi);
        const std::string tag = "R: canonical bijection " + std::to_string(j) + " ";
        auto& eqv = r.law(tag + "is equivariant");
        auto& trip = r.law(tag + "round-trips");
        auto& iso = r.law(tag + "preserves isotropy");
        for (std::uint64_t s = 0; s < n; ++s) {
            const auto x = sample_point(u, power_shape(j), rng.gen);
            const Elem y = evaluate(u, psi, x);
            const int h = rng.in(0, g.order() - 1);
            ++eqv.sampled;
            if (!(evaluate(u, psi, u.act(h, x)) == u.act(h, y))) fail(eqv, "at " + u.format(x));
            ++trip.sampled;
            if (!(evaluate(u, inv, y) == x)) fail(trip, "at " + u.format(x));
            ++iso.sampled;
            std::vector<int> stab;
            for (int a = 0; a < g.order(); ++a)
                if (u.act(a, x) == x) stab.push_back(a);
            if (!(Subgroup::from_members(stab) == u.isotropy(y.coords[0]))) fail(iso, "at " + u.format(x));
        }
        auto& based_r = r.law(tag + "is based");
        ++based_r.checked;
        if (!(evaluate(u, psi, base_tuple(u, j)) == upoint(u.basepoint()))) fail(based_r, "basepoint moves");
        auto& onto = r.law(tag + "hits every prefix point");
        for (const auto& p : u.prefix()) {
            ++onto.checked;
            const Elem pre = evaluate(u, inv, upoint(p));
            if (!(evaluate(u, psi, pre) == upoint(p))) fail(onto, "misses " + u.format(p));
        }
    }

    auto& rg = r.law("R: sampled elements are based bijections");
    while (rg.sampled < n) {
        const int k = rng.in(1, 2);
        const auto psi = sample_rg(u, k, rng.gen), inv = expr_inverse(g, psi);
        const auto x = sample_point(u, power_shape(k), rng.gen);
        const auto y = sample_point(u, kUnitShape, rng.gen);
        ++rg.sampled;
        if (!(evaluate(u, inv, evaluate(u, psi, x)) == x) || !(evaluate(u, psi, evaluate(u, inv, y)) == y))
            fail(rg, format_expr(psi) + " does not round-trip");
        if (!(evaluate(u, psi, base_tuple(u, k)) == upoint(u.basepoint()))) fail(rg, format_expr(psi) + " moves the basepoint");
    }
    return r;
}

LawReport lambda_laws(GroupPtr group, const PqrOptions& opt) {
    const Universe u(std::move(group), opt.depth);
    const FiniteGroup& g = u.group();
    Rng rng{std::mt19937_64(opt.seed)};
    const auto n = static_cast<std::uint64_t>(opt.samples);
    auto pgs = [&](const std::vector<int>& js) {
        std::vector<ExprPtr> out;
        for (int j : js) out.push_back(sample_pg(u, j, rng.gen));
        return out;
    };
    auto arities = [&](int k, int lo, int hi) {
        std::vector<int> js;
        for (int i = 0; i < k; ++i) js.push_back(rng.in(lo, hi));
        return js;
    };
    auto lambda = [&](const ExprPtr& psi, const std::vector<ExprPtr>& phis) { return lambda_action(g, psi, phis); };
    auto copy_point = [&](int slot) { return Elem{slot, {sample_point(u, kUnitShape, rng.gen).coords[0]}}; };
    LawReport r;

    auto& unit = r.law("lambda: the unit of R acts trivially");
    while (unit.sampled < n) {
        const int j = rng.in(1, 3);
        const auto phi = sample_pg(u, j, rng.gen);
        same_at(u, lambda(expr_identity(), {phi}), phi, sample_point(u, copower_shape(j), rng.gen), unit, "lambda(1; phi)");
    }

    auto& ids = r.law("lambda: identities go to the identity");
    while (ids.sampled < n) {
        const int k = rng.in(1, 2);
        same_at(u, lambda(sample_rg(u, k, rng.gen), std::vector<ExprPtr>(sz(k), expr_identity())), expr_identity(),
                sample_point(u, kUnitShape, rng.gen), ids, "lambda(psi; 1, ..., 1)");
    }

    auto& conj = r.law("lambda: conjugation in arity 1");
    while (conj.sampled < n) {
        const int j = rng.in(1, 3);
        const auto psi = sample_rg(u, 1, rng.gen), phi = sample_pg(u, j, rng.gen);
        const auto inv = expr_inverse(g, psi);
        same_at(u, lambda(psi, {phi}), expr_compose({psi, phi, expr_coproduct(std::vector<ExprPtr>(sz(j), inv))}),
                sample_point(u, copower_shape(j), rng.gen), conj, "lambda(psi; phi)");
    }

    auto& assoc = r.law("lambda: associativity over composition in R");
    while (assoc.sampled < n) {
        const int shape = rng.in(0, 2);
        const int k = shape == 2 ? 2 : 1;
        const std::vector<int> ms = shape == 0 ? std::vector<int>{1} : shape == 1 ? std::vector<int>{2} : std::vector<int>{1, 1};
        const auto psi = sample_rg(u, k, rng.gen);
        std::vector<ExprPtr> chis, inner;
        for (int m : ms) chis.push_back(sample_rg(u, m, rng.gen));
        const auto js = arities(std::accumulate(ms.begin(), ms.end(), 0), 1, 2);
        const auto phis = pgs(js);
        std::size_t at = 0;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            std::vector<ExprPtr> block(phis.begin() + static_cast<std::ptrdiff_t>(at),
                                       phis.begin() + static_cast<std::ptrdiff_t>(at + sz(ms[i])));
            inner.push_back(lambda(chis[i], block));
            at += sz(ms[i]);
        }
        same_at(u, lambda(qg_gamma(psi, chis), phis), lambda(psi, inner),
                sample_point(u, copower_shape(product_of(js)), rng.gen), assoc, "lambda(gamma(psi; chi); phi)");
    }

    auto& dist = r.law("lambda: distributes over composition in P");
    while (dist.sampled < n) {
        const int k = rng.in(1, 2);
        const auto psi = sample_rg(u, k, rng.gen);
        const auto js = arities(k, 1, 2);
        const auto cs = pgs(js);
        std::vector<std::vector<int>> ns;
        std::vector<std::vector<ExprPtr>> ds;
        std::vector<int> totals;
        std::vector<ExprPtr> composed;
        for (int r2 = 0; r2 < k; ++r2) {
            ns.push_back(arities(js[sz(r2)], 0, 2));
            ds.push_back(pgs(ns.back()));
            totals.push_back(std::accumulate(ns.back().begin(), ns.back().end(), 0));
            composed.push_back(pg_gamma(cs[sz(r2)], ds.back()));
        }
        const int total = product_of(totals);
        if (total == 0) continue;
        std::vector<ExprPtr> blocks;
        std::vector<int> offsets;
        int offset = 0;
        for (int idx = 0; idx < product_of(js); ++idx) {
            const auto i = lex_digits(idx, js);
            std::vector<ExprPtr> d;
            int size = 1;
            for (int r2 = 0; r2 < k; ++r2) {
                d.push_back(ds[sz(r2)][sz(i[sz(r2)])]);
                size *= ns[sz(r2)][sz(i[sz(r2)])];
            }
            blocks.push_back(lambda(psi, d));
            offsets.push_back(offset);
            offset += size;
        }
        // Copy (i_r, q_r)_r on the left is copy q of block I on the right.
        const int p = rng.in(0, total - 1);
        const auto pr = lex_digits(p, totals);
        std::vector<int> i(sz(k)), q(sz(k)), qdims(sz(k));
        for (int r2 = 0; r2 < k; ++r2) {
            int rest = pr[sz(r2)], b = 0;
            while (rest >= ns[sz(r2)][sz(b)]) rest -= ns[sz(r2)][sz(b++)];
            i[sz(r2)] = b;
            q[sz(r2)] = rest;
            qdims[sz(r2)] = ns[sz(r2)][sz(b)];
        }
        const UPoint x = sample_point(u, kUnitShape, rng.gen).coords[0];
        const Elem left{p, {x}}, right{offsets[sz(lex_index(i, js))] + lex_index(q, qdims), {x}};
        ++dist.sampled;
        const Elem a = evaluate(u, lambda(psi, composed), left), b = evaluate(u, pg_gamma(lambda(psi, cs), blocks), right);
        if (!(a == b)) fail(dist, "copy " + std::to_string(p + 1) + ": " + u.format(a) + " vs " + u.format(b));
    }

    auto& sk = r.law("lambda: Sigma_k equivariance");
    while (sk.sampled < n) {
        const int k = 2;
        const auto psi = sample_rg(u, k, rng.gen);
        const auto js = arities(k, 1, 2);
        const auto phis = pgs(js);
        const Perm s = sample_perm(k, rng.gen);
        std::vector<ExprPtr> moved(sz(k));
        std::vector<int> jm(sz(k));
        const auto i = lex_digits(rng.in(0, product_of(js) - 1), js);
        std::vector<int> im(sz(k));
        for (int r2 = 0; r2 < k; ++r2) {
            moved[sz(s[r2])] = phis[sz(r2)];
            jm[sz(s[r2])] = js[sz(r2)];
            im[sz(s[r2])] = i[sz(r2)];
        }
        const UPoint x = sample_point(u, kUnitShape, rng.gen).coords[0];
        ++sk.sampled;
        const Elem a = evaluate(u, lambda(qg_sigma(psi, s), phis), Elem{lex_index(i, js), {x}});
        const Elem b = evaluate(u, lambda(psi, moved), Elem{lex_index(im, jm), {x}});
        if (!(a == b)) fail(sk, "sigma " + s.cycles() + ": " + u.format(a) + " vs " + u.format(b));
    }

    auto& sj = r.law("lambda: Sigma_j equivariance");
    while (sj.sampled < n) {
        const int k = rng.in(1, 2);
        const auto psi = sample_rg(u, k, rng.gen);
        const auto js = arities(k, 1, 3);
        const auto phis = pgs(js);
        std::vector<ExprPtr> twisted;
        const auto i = lex_digits(rng.in(0, product_of(js) - 1), js);
        std::vector<int> it(sz(k));
        for (int r2 = 0; r2 < k; ++r2) {
            const Perm t = sample_perm(js[sz(r2)], rng.gen);
            twisted.push_back(pg_sigma(phis[sz(r2)], t));
            it[sz(r2)] = t[i[sz(r2)]];
        }
        const UPoint x = sample_point(u, kUnitShape, rng.gen).coords[0];
        ++sj.sampled;
        const Elem a = evaluate(u, lambda(psi, twisted), Elem{lex_index(i, js), {x}});
        const Elem b = evaluate(u, lambda(psi, phis), Elem{lex_index(it, js), {x}});
        if (!(a == b)) fail(sj, u.format(a) + " vs " + u.format(b));
    }

    auto& empty = r.law("lambda: an empty input gives the empty map");
    for (int s = 0; s < 20; ++s) {
        const int k = rng.in(1, 2);
        auto js = arities(k, 0, 2);
        js[sz(rng.in(0, k - 1))] = 0;
        ++empty.checked;
        if (lambda(sample_rg(u, k, rng.gen), pgs(js))->dom.n != 0) fail(empty, "nonempty domain");
    }

    auto& geq = r.law("lambda: G-equivariance");
    while (geq.sampled < n) {
        const int k = rng.in(1, 2), h = rng.in(0, g.order() - 1);
        const auto psi = sample_rg(u, k, rng.gen);
        const auto js = arities(k, 1, 2);
        const auto phis = pgs(js);
        std::vector<ExprPtr> moved;
        for (const auto& phi : phis) moved.push_back(conjugate_expr(g, h, phi));
        same_at(u, conjugate_expr(g, h, lambda(psi, phis)), lambda(conjugate_expr(g, h, psi), moved),
                copy_point(rng.in(0, product_of(js) - 1)), geq, "g lambda(psi; phi)");
    }

    auto& inj = r.law("lambda: injective");
    check_injective(u, lambda(sample_rg(u, 2, rng.gen), pgs({2, 2})), opt.samples, inj, "arities (2, 2)");
    return r;
}

std::vector<UPoint> graph_fixed_injection(const Universe& u, const Subgroup& k, const std::vector<Perm>& rho, int j) {
    const auto members = k.members();
    OrbitMatching::Side slots{
        [&u, members, rho](int h, const Elem& x) {
            return Elem{rho[sz(h)][x.slot], {u.act(members[sz(h)], x.coords[0])}};
        },
        [&u, j](int r) {
            std::vector<Elem> out;
            for (const auto& p : u.copy_points(r))
                for (int i = 0; i < j; ++i) out.push_back(Elem{i, {p}});
            return out;
        },
        [](const Elem& x) { return x.coords[0].copy; }};
    OrbitMatching::Side single{
        [&u, members](int h, const Elem& x) { return u.act(members[sz(h)], x); },
        [&u](int r) {
            std::vector<Elem> out;
            for (const auto& p : u.copy_points(r)) out.push_back(upoint(p));
            return out;
        },
        [](const Elem& x) { return x.coords[0].copy; }};
    OrbitMatching match(subgroup_as_group(u.group(), k), std::move(slots), std::move(single));
    std::vector<UPoint> out;
    for (int i = 0; i < j; ++i)
        for (const auto& p : u.prefix()) out.push_back(match.forward(Elem{i, {p}}).coords[0]);
    return out;
}

LawReport fixed_object_dichotomy(GroupPtr group, int jmax, const PqrOptions& opt) {
    const Universe u(std::move(group), opt.depth);
    const FiniteGroup& g = u.group();
    const auto pts = u.prefix();
    const int np = static_cast<int>(pts.size());
    std::map<UPoint, int> where;
    for (int i = 0; i < np; ++i) where[pts[sz(i)]] = i;
    Rng rng{std::mt19937_64(opt.seed)};
    LawReport r;
    auto& none = r.law("no fixed injection when Lambda meets Sigma_j");
    auto& some = r.law("a fixed injection for every graph subgroup");

    for (int j = 1; j <= jmax; ++j) {
        const auto perms = all_perms(j);
        const int ns = static_cast<int>(perms.size()), order = g.order();
        // Sigma_j x G, element s * |G| + a.
        std::vector<std::string> names;
        std::vector<std::vector<int>> table(sz(ns * order));
        for (int s = 0; s < ns; ++s)
            for (int a = 0; a < order; ++a) {
                names.push_back(perms[sz(s)].cycles() + "," + g.element_name(a));
                for (int t = 0; t < ns; ++t)
                    for (int b = 0; b < order; ++b)
                        table[sz(s * order + a)].push_back(static_cast<int>(perm_rank(perms[sz(s)] * perms[sz(t)])) * order +
                                                            g.mul(a, b));
            }
        const FiniteGroup prod("Sigma x G", std::move(names), std::move(table));
        // Lambda fixes phi when phi(s i, a u) = a phi(i, u) on all of ^jP.
        auto witness = [&](const std::vector<UPoint>& f, const Subgroup& lam) -> std::string {
            for (int e : lam.members()) {
                const Perm& s = perms[sz(e / order)];
                const int a = e % order;
                for (int i = 0; i < j; ++i)
                    for (int p = 0; p < np; ++p)
                        if (!(f[sz(s[i] * np + where.at(u.act(a, pts[sz(p)])))] == u.act(a, f[sz(i * np + p)])))
                            return "(" + s.cycles() + "," + g.element_name(a) + ") at slot " + std::to_string(i + 1) + ", " +
                                   u.format(pts[sz(p)]);
            }
            return {};
        };
        std::vector<std::vector<UPoint>> family;
        std::vector<Subgroup> meeting;
        for (const auto& lam : all_subgroups(prod)) {
            std::map<int, Perm> rho;
            bool meets = false;
            for (int e : lam.members()) {
                if (e % order == 0 && e / order != 0) meets = true;
                rho[e % order] = perms[sz(e / order)];
            }
            if (meets) {
                meeting.push_back(lam);
                continue;
            }
            std::vector<int> ks;
            std::vector<Perm> local;
            for (const auto& [a, s] : rho) {
                ks.push_back(a);
                local.push_back(s);
            }
            const auto f = graph_fixed_injection(u, Subgroup::from_members(ks), local, j);
            ++some.checked;
            if (const auto w = witness(f, lam); !w.empty()) fail(some, "arity " + std::to_string(j) + ": moved by " + w);
            if (std::set<UPoint>(f.begin(), f.end()).size() != f.size()) fail(some, "arity " + std::to_string(j) + ": not injective");
            family.push_back(f);
        }
        for (int s = 0; s < 12; ++s) {
            const auto phi = sample_pg(u, j, rng.gen);
            std::vector<UPoint> f;
            for (int i = 0; i < j; ++i)
                for (const auto& p : pts) f.push_back(evaluate(u, phi, Elem{i, {p}}).coords[0]);
            family.push_back(std::move(f));
        }
        for (const auto& lam : meeting)
            for (const auto& f : family) {
                ++none.checked;
                if (witness(f, lam).empty()) fail(none, "arity " + std::to_string(j) + ": an injection is fixed");
            }
    }
    return r;
}

// Finite sets in U.

namespace {

std::vector<USubset> subsets_of(const std::vector<UPoint>& pts, int n) {
    std::vector<USubset> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == n) {
            USubset a;
            for (int i : pick) a.push_back(pts[sz(i)]);
            out.push_back(std::move(a));
            return;
        }
        for (int i = from; i < static_cast<int>(pts.size()); ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

USubset translate_set(const Universe& u, int g, const USubset& a) {
    USubset out;
    for (const auto& p : a) out.push_back(u.act(g, p));
    std::sort(out.begin(), out.end());
    return out;
}

// Position in g.a of g applied to a[m].
std::vector<int> translate_positions(const Universe& u, int g, const USubset& a, const USubset& ga) {
    std::vector<int> out;
    for (const auto& p : a) out.push_back(static_cast<int>(std::lower_bound(ga.begin(), ga.end(), u.act(g, p)) - ga.begin()));
    return out;
}

std::string subset_text(const Universe& u, const USubset& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + u.format(a[i]);
    return out + "}";
}

void require_stable(const Universe& u, const std::vector<UPoint>& pts) {
    const std::set<UPoint> all(pts.begin(), pts.end());
    for (const auto& p : pts)
        for (int g = 0; g < u.group().order(); ++g)
            if (!all.count(u.act(g, p))) throw ShapeMismatch("the point set is not G-stable");
}

// Objects with the same size and label multiset have prod m! maps between them.
template <class Labels>
void require_budget(std::size_t count, Labels labels) {
    std::map<std::vector<int>, std::uint64_t> groups;
    for (std::size_t i = 0; i < count; ++i) {
        auto key = labels(i);
        std::sort(key.begin(), key.end());
        ++groups[key];
    }
    std::uint64_t total = 0;
    for (const auto& [key, c] : groups) {
        std::uint64_t per = 1;
        for (std::size_t i = 0, run = 1; i < key.size(); ++i) {
            per *= run;
            run = i + 1 < key.size() && key[i + 1] == key[i] ? run + 1 : 1;
        }
        total += c * c * per;
        if (total > kSubsetMorphismLimit)
            throw SizeBudgetExceeded("finite-set category has over " + std::to_string(kSubsetMorphismLimit) + " morphisms");
    }
}

Perm moved_label(const std::vector<int>& pa, const std::vector<int>& pb, const Perm& s) {
    std::vector<int> img(pa.size());
    for (std::size_t m = 0; m < pa.size(); ++m) img[sz(pa[m])] = pb[sz(s[static_cast<int>(m)])];
    return Perm(img);
}

}  // namespace

ECat e_category(const Universe& u, const std::vector<UPoint>& points, int nmax) {
    auto pts = points;
    std::sort(pts.begin(), pts.end());
    require_stable(u, pts);
    ECat out;
    for (int n = 0; n <= nmax && n <= static_cast<int>(pts.size()); ++n)
        for (auto& a : subsets_of(pts, n)) out.objects.push_back(std::move(a));
    require_budget(out.objects.size(), [&](std::size_t i) { return std::vector<int>(out.objects[i].size(), 0); });
    std::map<USubset, int> index;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < out.objects.size(); ++i) {
        index[out.objects[i]] = static_cast<int>(i);
        names.push_back(subset_text(u, out.objects[i]));
    }
    const auto& objs = out.objects;
    out.groupoid = perm_groupoid(
        std::move(names),
        [&](int a, int b) {
            const auto n = objs[sz(a)].size();
            return n == objs[sz(b)].size() ? all_perms(static_cast<int>(n)) : std::vector<Perm>{};
        },
        u.group_ptr(), [&](int g, int a) { return index.at(translate_set(u, g, objs[sz(a)])); },
        [&](int g, int a, int b, const Perm& s) {
            const auto& A = objs[sz(a)];
            const auto& B = objs[sz(b)];
            return moved_label(translate_positions(u, g, A, translate_set(u, g, A)),
                               translate_positions(u, g, B, translate_set(u, g, B)), s);
        });
    return out;
}

EGXCat egx_category(const Universe& u, const FinGSet& x, const std::vector<UPoint>& points, int nmax) {
    if (!(x.group() == u.group())) throw GroupMismatch("X and U are over different groups");
    auto pts = points;
    std::sort(pts.begin(), pts.end());
    require_stable(u, pts);
    EGXCat out;
    std::vector<int> labels(sz(x.size()));
    std::iota(labels.begin(), labels.end(), 0);
    for (int n = 0; n <= nmax && n <= static_cast<int>(pts.size()); ++n)
        for (const auto& a : subsets_of(pts, n))
            for_each_tuple(std::vector<std::vector<int>>(sz(n), labels),
                           [&](const std::vector<int>& p) { out.objects.push_back({a, p}); });
    require_budget(out.objects.size(), [&](std::size_t i) { return out.objects[i].p; });
    std::map<EGXObject, int> index;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < out.objects.size(); ++i) {
        index[out.objects[i]] = static_cast<int>(i);
        std::string name = subset_text(u, out.objects[i].a) + "->";
        for (int v : out.objects[i].p) name += std::to_string(v + 1);
        names.push_back(name);
    }
    const auto& objs = out.objects;
    auto act = [&](int g, const EGXObject& o) {
        EGXObject r{translate_set(u, g, o.a), std::vector<int>(o.p.size())};
        const auto pos = translate_positions(u, g, o.a, r.a);
        for (std::size_t m = 0; m < pos.size(); ++m) r.p[sz(pos[m])] = x.act(g, o.p[m]);
        return r;
    };
    out.groupoid = perm_groupoid(
        std::move(names),
        [&](int a, int b) {
            std::vector<Perm> homs;
            const auto& A = objs[sz(a)];
            const auto& B = objs[sz(b)];
            if (A.a.size() != B.a.size()) return homs;
            for (const Perm& s : all_perms(static_cast<int>(A.a.size()))) {
                bool over = true;
                for (std::size_t m = 0; m < A.p.size() && over; ++m) over = B.p[sz(s[static_cast<int>(m)])] == A.p[m];
                if (over) homs.push_back(s);
            }
            return homs;
        },
        u.group_ptr(), [&](int g, int a) { return index.at(act(g, objs[sz(a)])); },
        [&](int g, int a, int b, const Perm& s) {
            const auto& A = objs[sz(a)].a;
            const auto& B = objs[sz(b)].a;
            return moved_label(translate_positions(u, g, A, translate_set(u, g, A)),
                               translate_positions(u, g, B, translate_set(u, g, B)), s);
        });
    return out;
}

USubset theta_E(const Universe& u, const ExprPtr& phi, const std::vector<USubset>& parts) {
    if (!(phi->dom == copower_shape(static_cast<int>(parts.size())))) throw ShapeMismatch("arity differs from the number of sets");
    USubset out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (const auto& a : parts[i]) out.push_back(evaluate(u, phi, Elem{static_cast<int>(i), {a}}).coords[0]);
    std::sort(out.begin(), out.end());
    return out;
}

UBijection theta_E_morphism(const Universe& u, const ExprPtr& phi, const ExprPtr& psi, const std::vector<UBijection>& parts) {
    UBijection out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (const auto& [a, b] : parts[i])
            out[evaluate(u, phi, Elem{static_cast<int>(i), {a}}).coords[0]] = evaluate(u, psi, Elem{static_cast<int>(i), {b}}).coords[0];
    return out;
}

USubset xi_E(const Universe& u, const ExprPtr& phi, const std::vector<USubset>& parts) {
    if (!(phi->dom == power_shape(static_cast<int>(parts.size())))) throw ShapeMismatch("arity differs from the number of sets");
    USubset out;
    for_each_tuple(parts, [&](const std::vector<UPoint>& t) { out.push_back(evaluate(u, phi, Elem{0, t}).coords[0]); });
    std::sort(out.begin(), out.end());
    return out;
}

UBijection xi_E_morphism(const Universe& u, const ExprPtr& phi, const ExprPtr& psi, const std::vector<UBijection>& parts) {
    std::vector<std::vector<UPoint>> sources;
    for (const auto& m : parts) {
        sources.emplace_back();
        for (const auto& [a, b] : m) sources.back().push_back(a);
    }
    UBijection out;
    for_each_tuple(sources, [&](const std::vector<UPoint>& t) {
        Elem image{0, {}};
        for (std::size_t i = 0; i < t.size(); ++i) image.coords.push_back(parts[i].at(t[i]));
        out[evaluate(u, phi, Elem{0, t}).coords[0]] = evaluate(u, psi, image).coords[0];
    });
    return out;
}

EGXObject theta_EGX(const Universe& u, const ExprPtr& phi, const std::vector<EGXObject>& parts) {
    if (!(phi->dom == copower_shape(static_cast<int>(parts.size())))) throw ShapeMismatch("arity differs from the number of sets");
    std::vector<std::pair<UPoint, int>> image;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t m = 0; m < parts[i].a.size(); ++m)
            image.emplace_back(evaluate(u, phi, Elem{static_cast<int>(i), {parts[i].a[m]}}).coords[0], parts[i].p[m]);
    std::sort(image.begin(), image.end());
    EGXObject out;
    for (const auto& [p, v] : image) {
        out.a.push_back(p);
        out.p.push_back(v);
    }
    return out;
}

namespace {

UBijection compose_maps(const UBijection& b, const UBijection& a) {
    UBijection out;
    for (const auto& [x, y] : a) out[x] = b.at(y);
    return out;
}

UBijection identity_map(const USubset& a) {
    UBijection out;
    for (const auto& p : a) out[p] = p;
    return out;
}

UBijection translate_map(const Universe& u, int g, const UBijection& m) {
    UBijection out;
    for (const auto& [x, y] : m) out[u.act(g, x)] = u.act(g, y);
    return out;
}

UBijection random_bijection(const USubset& a, const USubset& b, std::mt19937_64& rng) {
    const Perm s = sample_perm(static_cast<int>(a.size()), rng);
    UBijection out;
    for (std::size_t m = 0; m < a.size(); ++m) out[a[m]] = b[sz(s[static_cast<int>(m)])];
    return out;
}

}  // namespace

LawReport e_action_laws(GroupPtr group, const PqrOptions& opt) {
    const Universe u(std::move(group), opt.depth);
    const FiniteGroup& g = u.group();
    Rng rng{std::mt19937_64(opt.seed)};
    auto pts = u.prefix();
    pts.resize(std::min<std::size_t>(4, pts.size()));
    std::vector<USubset> subsets;
    for (int n = 0; n <= static_cast<int>(pts.size()); ++n)
        for (auto& a : subsets_of(pts, n)) subsets.push_back(std::move(a));
    auto same_size = [&](const USubset& a) {
        std::vector<USubset> out;
        for (const auto& b : subsets)
            if (b.size() == a.size()) out.push_back(b);
        return out[rng.gen() % out.size()];
    };
    auto translate_all = [&](int h, const std::vector<USubset>& as) {
        std::vector<USubset> out;
        for (const auto& a : as) out.push_back(translate_set(u, h, a));
        return out;
    };
    LawReport r;

    for (bool q : {false, true}) {
        const std::string tag = q ? "xi: " : "theta: ";
        const int lo = q ? 1 : 0;
        auto sample = [&](int j) { return q ? sample_qg(u, j, rng.gen) : sample_pg(u, j, rng.gen); };
        auto act = [&](const ExprPtr& phi, const std::vector<USubset>& as) { return q ? xi_E(u, phi, as) : theta_E(u, phi, as); };
        auto act_mor = [&](const ExprPtr& phi, const ExprPtr& psi, const std::vector<UBijection>& ms) {
            return q ? xi_E_morphism(u, phi, psi, ms) : theta_E_morphism(u, phi, psi, ms);
        };
        auto gamma = [&](const ExprPtr& psi, const std::vector<ExprPtr>& phis) {
            return q ? qg_gamma(psi, phis) : pg_gamma(psi, phis);
        };
        // Every tuple of subsets of the given length.
        auto tuples = [&](int len, auto&& visit) {
            for_each_tuple(std::vector<std::vector<USubset>>(sz(len), subsets), visit);
        };

        auto& unit = r.law(tag + "unit");
        for (const auto& a : subsets) {
            ++unit.checked;
            if (act(expr_identity(), {a}) != a) fail(unit, subset_text(u, a));
        }

        auto& assoc = r.law(tag + "associativity");
        const std::vector<std::vector<int>> small = q ? std::vector<std::vector<int>>{{1}, {2}, {1, 1}}
                                                      : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0}};
        const std::vector<std::vector<int>> large{{3}, {1, 2}, {2, 1}};
        auto assoc_check = [&](const std::vector<int>& js, const std::vector<USubset>& as, const ExprPtr& psi,
                               const std::vector<ExprPtr>& phis) {
            std::vector<USubset> inner;
            std::size_t at = 0;
            for (std::size_t i = 0; i < js.size(); ++i) {
                inner.push_back(act(phis[i], std::vector<USubset>(as.begin() + static_cast<std::ptrdiff_t>(at),
                                                                  as.begin() + static_cast<std::ptrdiff_t>(at + sz(js[i])))));
                at += sz(js[i]);
            }
            return act(gamma(psi, phis), as) == act(psi, inner);
        };
        for (const auto& js : small)
            for (int rep = 0; rep < 2; ++rep) {
                const auto psi = sample(static_cast<int>(js.size()));
                std::vector<ExprPtr> phis;
                for (int j : js) phis.push_back(sample(j));
                tuples(std::accumulate(js.begin(), js.end(), 0), [&](const std::vector<USubset>& as) {
                    ++assoc.checked;
                    if (!assoc_check(js, as, psi, phis)) fail(assoc, format_expr(psi));
                });
            }
        for (int s = 0; s < opt.samples; ++s) {
            const auto& js = large[sz(rng.in(0, static_cast<int>(large.size()) - 1))];
            if (q && js.size() == 1) continue;  // keeps canonical powers to arity 2
            const auto psi = sample(static_cast<int>(js.size()));
            std::vector<ExprPtr> phis;
            for (int j : js) phis.push_back(sample(j));
            std::vector<USubset> as;
            for (int i = 0; i < 3; ++i) as.push_back(subsets[rng.gen() % subsets.size()]);
            ++assoc.sampled;
            if (!assoc_check(js, as, psi, phis)) fail(assoc, format_expr(psi));
        }

        auto& eq = r.law(tag + "Sigma-equivariance");
        for (int rep = 0; rep < 3; ++rep) {
            const auto phi = sample(2);
            const Perm swap{1, 0};
            const auto twisted = q ? qg_sigma(phi, swap) : pg_sigma(phi, swap);
            tuples(2, [&](const std::vector<USubset>& as) {
                ++eq.checked;
                if (act(twisted, as) != act(phi, {as[1], as[0]})) fail(eq, format_expr(phi));
            });
        }

        auto& geq = r.law(tag + "G-equivariance");
        for (int h = 0; h < g.order(); ++h)
            for (int j = lo; j <= 2; ++j) {
                const auto phi = sample(j);
                const auto moved = conjugate_expr(g, h, phi);
                tuples(j, [&](const std::vector<USubset>& as) {
                    ++geq.checked;
                    if (act(moved, translate_all(h, as)) != translate_set(u, h, act(phi, as))) fail(geq, format_expr(phi));
                });
            }

        auto& fun = r.law(tag + "functorial on morphisms");
        auto& meq = r.law(tag + "morphisms are G-equivariant");
        for (int s = 0; s < opt.samples; ++s) {
            const int j = rng.in(1, 2), h = rng.in(0, g.order() - 1);
            const auto phi = sample(j), psi = sample(j), chi = sample(j);
            std::vector<UBijection> alpha, beta, composite, ids;
            std::vector<USubset> as;
            for (int i = 0; i < j; ++i) {
                const auto& a = subsets[rng.gen() % subsets.size()];
                const auto b = same_size(a), c = same_size(a);
                as.push_back(a);
                alpha.push_back(random_bijection(a, b, rng.gen));
                beta.push_back(random_bijection(b, c, rng.gen));
                composite.push_back(compose_maps(beta.back(), alpha.back()));
                ids.push_back(identity_map(a));
            }
            ++fun.sampled;
            if (compose_maps(act_mor(psi, chi, beta), act_mor(phi, psi, alpha)) != act_mor(phi, chi, composite))
                fail(fun, "composition with " + format_expr(phi));
            if (act_mor(phi, phi, ids) != identity_map(act(phi, as))) fail(fun, "identity with " + format_expr(phi));
            std::vector<UBijection> moved;
            for (const auto& m : alpha) moved.push_back(translate_map(u, h, m));
            ++meq.sampled;
            if (act_mor(conjugate_expr(g, h, phi), conjugate_expr(g, h, psi), moved) != translate_map(u, h, act_mor(phi, psi, alpha)))
                fail(meq, format_expr(phi));
        }
    }

    auto& zero = r.law("theta: arity 0 gives the empty set");
    ++zero.checked;
    if (!theta_E(u, sample_pg(u, 0, rng.gen), {}).empty()) fail(zero, "nonempty");
    auto& empty = r.law("xi: an empty factor gives the empty set");
    for (const auto& a : subsets) {
        ++empty.checked;
        if (!xi_E(u, sample_qg(u, 2, rng.gen), {a, {}}).empty()) fail(empty, subset_text(u, a));
    }
    return r;
}

namespace {

// The G-set over X carried by an H-stable subset with equivariant labels,
// over the subgroup H (element indices of subgroup_as_group).
std::optional<FGXObject> as_gset_over(const Universe& u, const Subgroup& h, const FinGSet& res, const USubset& a,
                                      const std::vector<int>& p) {
    FGXObject out;
    out.p = p;
    const auto members = h.members();
    for (std::size_t l = 0; l < members.size(); ++l) {
        std::vector<int> img;
        for (std::size_t m = 0; m < a.size(); ++m) {
            const UPoint moved = u.act(members[l], a[m]);
            const auto it = std::lower_bound(a.begin(), a.end(), moved);
            if (it == a.end() || !(*it == moved)) return std::nullopt;
            const int to = static_cast<int>(it - a.begin());
            if (p[sz(to)] != res.act(static_cast<int>(l), p[m])) return std::nullopt;
            img.push_back(to);
        }
        out.rho.push_back(Perm(img));
    }
    return out;
}

// Least relabelling of (rho, p): equal exactly for isomorphic objects.
FGXObject canonical_form(const FGXObject& a) {
    FGXObject best;
    bool first = true;
    for (const Perm& s : all_perms(a.arity())) {
        FGXObject c;
        const Perm si = s.inverse();
        for (const auto& r : a.rho) c.rho.push_back(s * r * si);
        c.p.assign(a.p.size(), 0);
        for (int m = 0; m < a.arity(); ++m) c.p[sz(s[m])] = a.p[sz(m)];
        if (first || c < best) best = std::move(c);
        first = false;
    }
    return best;
}

using ClassKey = std::pair<std::vector<std::pair<int, int>>, std::int64_t>;

std::string classes_text(const std::vector<ClassKey>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += i ? " " : "";
        out += "{";
        for (std::size_t k = 0; k < v[i].first.size(); ++k)
            out += (k ? "," : "") + std::to_string(v[i].first[k].first) + ":" + std::to_string(v[i].first[k].second + 1);
        out += "}x" + std::to_string(v[i].second);
    }
    return out + "]";
}

}  // namespace

LawReport e_model_laws(const FinGSet& x, int nmax, int depth) {
    const GroupPtr group = x.group_ptr();
    const FiniteGroup& g = *group;
    const Universe u(group, depth);
    const auto pts = u.prefix();
    LawReport r;

    const ECat ec = e_category(u, pts, nmax);
    const GFinCat& c = *ec.groupoid.category;
    auto& empty = r.law("E: the empty set has only its identity");
    ++empty.checked;
    if (c.hom(0, 0).size() != 1) fail(empty, std::to_string(c.hom(0, 0).size()) + " endomorphisms");
    auto& ends = r.law("E: an n-point set has n! endomorphisms");
    for (int a = 0; a < c.object_count(); ++a) {
        ++ends.checked;
        const int n = static_cast<int>(ec.objects[sz(a)].size());
        if (static_cast<long long>(c.hom(a, a).size()) != factorial(n)) fail(ends, c.object_name(a));
    }

    auto& model = r.law("E: fixed part matches the G-set model");
    const auto star = trivial_gset(group, 1);
    const auto fixed = fixed_subcategory(c, Subgroup::whole(g));
    std::vector<ClassKey> got, want;
    for (const auto& k : skeleton(fixed.category)) {
        const auto& a = ec.objects[sz(fixed.objects[sz(k.representative)])];
        const auto obj = as_gset_over(u, Subgroup::whole(g), star, a, std::vector<int>(a.size(), 0));
        got.emplace_back(orbit_signature(star, *obj), k.automorphisms);
    }
    for (int n = 0; n <= nmax; ++n) {
        const auto f = fgx_over(star, n);
        for (const auto& k : skeleton(*f.groupoid.category))
            want.emplace_back(orbit_signature(star, f.objects[sz(k.representative)]), k.automorphisms);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    ++model.checked;
    if (got != want) fail(model, "finite sets " + classes_text(got) + " vs G-sets " + classes_text(want));

    const EGXCat ex = egx_category(u, x, pts, nmax);
    const GFinCat& e = *ex.groupoid.category;
    if (x.size() == 1) {
        auto& point = r.law("EGX over a point is E");
        ++point.checked;
        bool same = e.object_count() == c.object_count();
        for (int a = 0; a < c.object_count() && same; ++a)
            for (int b = 0; b < c.object_count() && same; ++b) same = e.hom(a, b).size() == c.hom(a, b).size();
        if (!same) fail(point, "hom sets differ");
    }
    auto& sweep = r.law("EGX: fixed objects are equivariant labels on stable subsets");
    for (const auto& h : all_subgroups(g)) {
        const auto res = restrict(x, h);
        const auto fx = fixed_subcategory(e, h);
        const std::set<int> by_action(fx.objects.begin(), fx.objects.end());
        std::set<int> by_sweep;
        for (int a = 0; a < e.object_count(); ++a)
            if (as_gset_over(u, h, res, ex.objects[sz(a)].a, ex.objects[sz(a)].p)) by_sweep.insert(a);
        ++sweep.checked;
        if (by_action != by_sweep)
            fail(sweep, "subgroup of order " + std::to_string(h.order()) + ": " + std::to_string(by_action.size()) + " vs " +
                            std::to_string(by_sweep.size()));
    }
    return r;
}

OmegaReport omega_check(const FinGSet& x, int jmax) {
    const GroupPtr group = x.group_ptr();
    const FiniteGroup& g = *group;
    const Universe u(group, std::max(1, jmax));
    const auto pts = u.prefix();
    const int np = static_cast<int>(pts.size());
    std::map<UPoint, int> where;
    for (int i = 0; i < np; ++i) where[pts[sz(i)]] = i;
    const int base = where.at(u.basepoint());
    OmegaReport out;
    auto& agree = out.laws.law("omega: free and finite-set skeleta agree");
    auto& wreath = out.laws.law("omega: finite-set skeleton matches the wreath skeleton");
    auto& lands = out.laws.law("omega: images are fixed objects");
    auto& faithful = out.laws.law("omega: bijective on fixed hom sets between representatives");

    std::vector<int> labels(sz(x.size()));
    std::iota(labels.begin(), labels.end(), 0);
    for (const auto& h : all_subgroups(g)) {
        const auto sub = subgroup_as_group(g, h);
        const auto members = h.members();
        const auto res = restrict(x, h);
        const auto skel = wreath_skeleton(res, jmax);
        for (int j = 0; j <= jmax; ++j) {
            const std::string where_text = "subgroup of order " + std::to_string(h.order()) + ", arity " + std::to_string(j);
            const auto perms = all_perms(j);
            const int ns = static_cast<int>(perms.size());
            // Injections tabulated on ^jP: one fixed by each graph subgroup over H,
            // closed under conjugation and the Sigma_j action.
            std::vector<std::vector<UPoint>> tables;
            std::map<std::vector<UPoint>, int> tindex;
            auto add = [&](std::vector<UPoint> t) {
                if (tindex.count(t)) return;
                tindex.emplace(t, static_cast<int>(tables.size()));
                tables.push_back(std::move(t));
            };
            for (const auto& hom : all_homomorphisms(sub, symmetric_group(j))) {
                std::vector<Perm> rho;
                for (int e : hom) rho.push_back(perms[sz(e)]);
                add(graph_fixed_injection(u, h, rho, j));
            }
            auto right = [&](const std::vector<UPoint>& t, const Perm& s) {
                std::vector<UPoint> o(t.size());
                for (int i = 0; i < j; ++i)
                    for (int p = 0; p < np; ++p) o[sz(i * np + p)] = t[sz(s[i] * np + p)];
                return o;
            };
            auto conj = [&](const std::vector<UPoint>& t, int a) {
                std::vector<UPoint> o(t.size());
                for (int i = 0; i < j; ++i)
                    for (int p = 0; p < np; ++p)
                        o[sz(i * np + p)] = u.act(a, t[sz(i * np + where.at(u.act(g.inv(a), pts[sz(p)])))]);
                return o;
            };
            for (std::size_t t = 0; t < tables.size(); ++t) {
                for (const auto& s : perms) add(right(tables[t], s));
                for (int a = 0; a < g.order(); ++a) add(conj(tables[t], a));
            }
            std::vector<std::vector<int>> sig_of(tables.size()), conj_of(tables.size());
            for (std::size_t t = 0; t < tables.size(); ++t) {
                for (const auto& s : perms) sig_of[t].push_back(tindex.at(right(tables[t], s)));
                for (int a = 0; a < g.order(); ++a) conj_of[t].push_back(tindex.at(conj(tables[t], a)));
            }

            // Objects (phi, x) modulo (phi s, s^-1 x), each kept in its least form.
            using Obj = std::pair<int, std::vector<int>>;
            auto normalize = [&](int t, const std::vector<int>& xs) {
                std::pair<Obj, int> best{{sig_of[sz(t)][0], xs}, 0};
                for (int s = 1; s < ns; ++s) {
                    Obj cand{sig_of[sz(t)][sz(s)], act_tuple(perms[sz(s)].inverse(), xs)};
                    if (cand < best.first) best = {std::move(cand), s};
                }
                return best;
            };
            std::set<Obj> all;
            for (std::size_t t = 0; t < tables.size(); ++t)
                for_each_tuple(std::vector<std::vector<int>>(sz(j), labels),
                               [&](const std::vector<int>& xs) { all.insert(normalize(static_cast<int>(t), xs).first); });
            struct Fixed {
                Obj obj;
                std::vector<Perm> carry;  // per element of H
            };
            std::vector<Fixed> fixed;
            for (const auto& o : all) {
                Fixed f{o, {}};
                bool ok = true;
                for (int a : members) {
                    std::vector<int> moved;
                    for (int v : o.second) moved.push_back(x.act(a, v));
                    auto [n, s] = normalize(conj_of[sz(o.first)][sz(a)], moved);
                    if (n != o) {
                        ok = false;
                        break;
                    }
                    f.carry.push_back(perms[sz(s)]);
                }
                if (ok) fixed.push_back(std::move(f));
            }
            auto hom = [&](const Fixed& a, const Fixed& b) {
                std::vector<Perm> homs;
                for (const auto& t : perms) {
                    if (act_tuple(t, a.obj.second) != b.obj.second) continue;
                    bool ok = true;
                    for (std::size_t l = 0; l < members.size() && ok; ++l) ok = b.carry[l].inverse() * t * a.carry[l] == t;
                    if (ok) homs.push_back(t);
                }
                return homs;
            };
            // omega: A = phi(1 + ... + 1) labelled by x.
            auto omega = [&](const Fixed& f, std::vector<int>& position) -> std::optional<FGXObject> {
                const auto& t = tables[sz(f.obj.first)];
                USubset a;
                for (int i = 0; i < j; ++i) a.push_back(t[sz(i * np + base)]);
                USubset sorted = a;
                std::sort(sorted.begin(), sorted.end());
                std::vector<int> p(sz(j));
                position.assign(sz(j), 0);
                for (int i = 0; i < j; ++i) {
                    position[sz(i)] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), a[sz(i)]) - sorted.begin());
                    p[sz(position[sz(i)])] = f.obj.second[sz(i)];
                }
                return as_gset_over(u, h, res, sorted, p);
            };

            // Free side: components and automorphisms.
            const int nf = static_cast<int>(fixed.size());
            std::vector<int> comp(sz(nf), -1);
            std::vector<int> reps;
            for (int a = 0; a < nf; ++a) {
                if (comp[sz(a)] >= 0) continue;
                comp[sz(a)] = static_cast<int>(reps.size());
                for (int b = a + 1; b < nf; ++b)
                    if (comp[sz(b)] < 0 && !hom(fixed[sz(a)], fixed[sz(b)]).empty()) comp[sz(b)] = comp[sz(a)];
                reps.push_back(a);
            }
            std::vector<ClassKey> source, target, expected;
            std::vector<FGXObject> images;
            std::vector<std::vector<int>> positions;
            for (int a : reps) {
                std::vector<int> position;
                const auto img = omega(fixed[sz(a)], position);
                ++lands.checked;
                if (!img) {
                    fail(lands, where_text);
                    continue;
                }
                images.push_back(*img);
                positions.push_back(position);
                source.emplace_back(orbit_signature(res, *img), static_cast<std::int64_t>(hom(fixed[sz(a)], fixed[sz(a)]).size()));
            }
            if (images.size() == reps.size())
                for (std::size_t a = 0; a < reps.size(); ++a)
                    for (std::size_t b = 0; b < reps.size(); ++b) {
                        std::set<Perm> mapped;
                        for (const auto& t : hom(fixed[sz(reps[a])], fixed[sz(reps[b])])) {
                            std::vector<int> img(sz(j));
                            for (int i = 0; i < j; ++i) img[sz(positions[a][sz(i)])] = positions[b][sz(t[i])];
                            mapped.insert(Perm(img));
                        }
                        const auto want = fgx_hom(images[a], images[b]);
                        ++faithful.checked;
                        if (mapped != std::set<Perm>(want.begin(), want.end())) fail(faithful, where_text);
                    }

            // Finite-set side: H-stable subsets of the prefix with equivariant labels.
            std::map<FGXObject, FGXObject> classes;  // canonical form -> representative
            for (const auto& a : subsets_of(pts, j))
                for_each_tuple(std::vector<std::vector<int>>(sz(j), labels), [&](const std::vector<int>& p) {
                    if (const auto obj = as_gset_over(u, h, res, a, p)) classes.emplace(canonical_form(*obj), *obj);
                });
            for (const auto& [key, obj] : classes)
                target.emplace_back(orbit_signature(res, obj), static_cast<std::int64_t>(fgx_hom(obj, obj).size()));
            for (const auto& e : skel)
                if (e.arity == j) expected.emplace_back(e.signature, e.automorphisms);
            std::sort(source.begin(), source.end());
            std::sort(target.begin(), target.end());
            std::sort(expected.begin(), expected.end());
            ++agree.checked;
            if (source != target) fail(agree, where_text + ": " + classes_text(source) + " vs " + classes_text(target));
            ++wreath.checked;
            if (target != expected) fail(wreath, where_text + ": " + classes_text(target) + " vs " + classes_text(expected));
            out.slices.push_back({h, j, source.size(), target.size()});
        }
    }
    return out;
}

}  // namespace eqcat
