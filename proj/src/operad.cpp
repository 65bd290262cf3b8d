#include "eqcat/operad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <type_traits>

#include "eqcat/errors.hpp"

namespace eqcat {

Perm tensor_perm(const Perm& s, const Perm& t) {
    const int j = s.degree(), k = t.degree();
    std::vector<int> img(static_cast<std::size_t>(j * k));
    for (int q = 0; q < j; ++q)
        for (int r = 0; r < k; ++r) img[static_cast<std::size_t>(q * k + r)] = s[q] * k + t[r];
    return Perm(std::span<const int>(img));
}

Perm delta_perm(std::span<const int> h, std::span<const int> i) {
    const int hs = std::accumulate(h.begin(), h.end(), 0);
    const int is = std::accumulate(i.begin(), i.end(), 0);
    std::vector<int> hoff(h.size()), ioff(i.size());
    std::exclusive_scan(h.begin(), h.end(), hoff.begin(), 0);
    std::exclusive_scan(i.begin(), i.end(), ioff.begin(), 0);
    std::vector<int> img;
    img.reserve(static_cast<std::size_t>(hs * is));
    for (std::size_t q = 0; q < h.size(); ++q)
        for (std::size_t r = 0; r < i.size(); ++r)
            for (int a = 0; a < h[q]; ++a)
                for (int b = 0; b < i[r]; ++b) img.push_back((hoff[q] + a) * is + ioff[r] + b);
    return Perm(std::span<const int>(img));
}

Perm tau_perm(int j, int k) {
    std::vector<int> img(static_cast<std::size_t>(j * k));
    for (int q = 0; q < j; ++q)
        for (int r = 0; r < k; ++r) img[static_cast<std::size_t>(q * k + r)] = r * j + q;
    return Perm(std::span<const int>(img));
}

namespace {

// Identities carry their degree so witnesses show arities.
std::string show(const Perm& p) { return p.is_identity() ? "id" + std::to_string(p.degree()) : p.cycles(); }

}  // namespace

std::string format_object(const OpObject& c) {
    if (c.size() == 1) return show(c[0]);
    std::string out = "[";
    for (std::size_t h = 0; h < c.size(); ++h) out += (h ? "," : "") + show(c[h]);
    return out + "]";
}

OpObject::OpObject(std::size_t n, const Perm& p) : n_(static_cast<std::uint8_t>(n)) {
    if (n > kMaxGroupOrder) throw SizeBudgetExceeded("group too large for operad objects");
    std::fill(p_.begin(), p_.begin() + static_cast<std::ptrdiff_t>(n), p);
}

OpObject::OpObject(std::initializer_list<Perm> perms) : n_(static_cast<std::uint8_t>(perms.size())) {
    if (perms.size() > kMaxGroupOrder) throw SizeBudgetExceeded("group too large for operad objects");
    std::copy(perms.begin(), perms.end(), p_.begin());
}

CatOperad::CatOperad(GroupPtr group, int jmax) : group_(std::move(group)), jmax_(jmax) {
    if (jmax_ < 0 || jmax_ > Perm::kMaxDegree) throw SizeBudgetExceeded("arity bound out of range");
    if (group_->order() > OpObject::kMaxGroupOrder) throw SizeBudgetExceeded("group too large for operad objects");
}

std::uint64_t CatOperad::object_count(int j) const {
    const auto f = static_cast<std::uint64_t>(factorial(j));
    std::uint64_t n = 1;
    for (int h = 0; h < group_->order(); ++h) {
        if (n > (std::uint64_t{1} << 62) / f) throw SizeBudgetExceeded("operad component too large");
        n *= f;
    }
    return n;
}

OpObject CatOperad::object(int j, std::uint64_t index) const {
    const auto f = static_cast<std::uint64_t>(factorial(j));
    OpObject c(static_cast<std::size_t>(group_->order()));
    for (int h = group_->order() - 1; h >= 0; --h) {
        c[static_cast<std::size_t>(h)] = perm_unrank(j, index % f);
        index /= f;
    }
    return c;
}

std::uint64_t CatOperad::index_of(const OpObject& c) const {
    const auto f = static_cast<std::uint64_t>(factorial(arity(c)));
    std::uint64_t index = 0;
    for (const Perm& p : c) index = index * f + perm_rank(p);
    return index;
}

OpObject CatOperad::constant(const Perm& p) const { return OpObject(static_cast<std::size_t>(group_->order()), p); }

OpObject CatOperad::gamma(const OpObject& c, std::span<const OpObject> d) const {
    if (static_cast<int>(d.size()) != arity(c)) throw ShapeMismatch("gamma needs one input per arity slot");
    if (!gamma_override_.empty()) {
        std::vector<OpObject> key{c};
        key.insert(key.end(), d.begin(), d.end());
        if (auto it = gamma_override_.find(key); it != gamma_override_.end()) return it->second;
    }
    // Same as block_perm(c(h), sizes) * block_sum(d_i(h)), without temporaries.
    const int k = static_cast<int>(d.size());
    std::array<int, Perm::kMaxDegree> sizes{};
    int total = 0;
    for (int b = 0; b < k; ++b) total += sizes[static_cast<std::size_t>(b)] = arity(d[static_cast<std::size_t>(b)]);
    if (total > Perm::kMaxDegree) throw SizeBudgetExceeded("composite arity exceeds capacity");
    OpObject out(c.size());
    std::array<int, Perm::kMaxDegree> inv{}, target_off{}, img{};
    for (std::size_t h = 0; h < c.size(); ++h) {
        const Perm& ch = c[h];
        for (int b = 0; b < k; ++b) inv[static_cast<std::size_t>(ch[b])] = b;
        for (int m = 0, off = 0; m < k; ++m) {
            target_off[static_cast<std::size_t>(m)] = off;
            off += sizes[static_cast<std::size_t>(inv[static_cast<std::size_t>(m)])];
        }
        int pos = 0;
        for (int b = 0; b < k; ++b) {
            const Perm& part = d[static_cast<std::size_t>(b)][h];
            const int base = target_off[static_cast<std::size_t>(ch[b])];
            for (int t = 0; t < part.degree(); ++t) img[static_cast<std::size_t>(pos++)] = base + part[t];
        }
        out[h] = Perm(std::span<const int>(img.data(), static_cast<std::size_t>(total)));
    }
    return out;
}

OpObject CatOperad::act_sigma(const OpObject& c, const Perm& s) const {
    OpObject out(c.size());
    for (std::size_t h = 0; h < c.size(); ++h) out[h] = c[h] * s;
    return out;
}

OpObject CatOperad::act_group(int g, const OpObject& c) const {
    OpObject out(c.size());
    const int gi = group_->inv(g);
    for (int h = 0; h < group_->order(); ++h) out[static_cast<std::size_t>(h)] = c[static_cast<std::size_t>(group_->mul(gi, h))];
    return out;
}

GFinCat CatOperad::component(int j, std::uint64_t budget) const {
    const std::uint64_t n = object_count(j);
    if (n > budget) throw SizeBudgetExceeded("component has " + std::to_string(n) + " objects");
    std::vector<std::string> names;
    std::vector<OpObject> objs;
    for (std::uint64_t i = 0; i < n; ++i) {
        objs.push_back(object(j, i));
        names.push_back(format_object(objs.back()));
    }
    std::vector<std::vector<int>> act;
    if (group_->order() > 1)
        for (int g = 0; g < group_->order(); ++g) {
            std::vector<int> row;
            for (const auto& o : objs) row.push_back(static_cast<int>(index_of(act_group(g, o))));
            act.push_back(std::move(row));
        }
    return group_->order() > 1 ? chaotic(names, group_, act) : chaotic(names);
}

void CatOperad::override_gamma(const OpObject& c, const std::vector<OpObject>& d, OpObject value) {
    std::vector<OpObject> key{c};
    key.insert(key.end(), d.begin(), d.end());
    gamma_override_[key] = std::move(value);
}

CatOperad barratt_eccles(int jmax) { return CatOperad(std::make_shared<const FiniteGroup>(preset_group("trivial")), jmax); }

CatOperad og_operad(GroupPtr group, int jmax) { return CatOperad(std::move(group), jmax); }

namespace {

// One slot of an input tuple: an operad object or a bare permutation of the given arity.
struct Slot {
    bool perm;
    int arity;
};

// All vectors of the given length with entries in [0, max_part] and sum <= max_sum.
std::vector<std::vector<int>> compositions(int length, int max_sum, int max_part) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= std::min(left, max_part); ++v) {
            cur.push_back(v);
            rec(left - v);
            cur.pop_back();
        }
    };
    rec(max_sum);
    return out;
}

std::string describe(const std::vector<OpObject>& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "; " : "") + format_object(t[i]);
    return out;
}

// Runs check over every tuple of the family, or over a fixed-seed sample when
// the family exceeds the budget.  Stops at the first failure.
class FamilyRunner {
public:
    FamilyRunner(const CatOperad& op, std::uint64_t budget, std::uint64_t samples, std::uint64_t seed)
        : op_(op), budget_(budget), samples_(samples), rng_(seed) {}

    template <class Check>
    void run(const std::vector<Slot>& slots, LawResult& res, Check&& check) {
        if (!res.pass) return;
        std::vector<std::uint64_t> counts;
        std::uint64_t total = 1;
        bool over = false;
        for (const Slot& s : slots) {
            const std::uint64_t c = s.perm ? static_cast<std::uint64_t>(factorial(s.arity)) : op_.object_count(s.arity);
            counts.push_back(c);
            if (c != 0 && total > budget_ / c) over = true;
            else total *= c;
        }
        std::vector<OpObject> tuple(slots.size());
        std::vector<const std::vector<OpObject>*> tables;
        for (const Slot& s : slots) tables.push_back(table(s));
        auto decode = [&](std::size_t i, std::uint64_t idx) {
            const auto* t = tables[i];
            tuple[i] = t ? (*t)[idx] : slots[i].perm ? OpObject{perm_unrank(slots[i].arity, idx)} : op_.object(slots[i].arity, idx);
        };
        // Checks that take the first changed slot may reuse work from the previous tuple.
        auto test = [&](std::size_t changed) {
            bool ok;
            if constexpr (std::is_invocable_v<Check&, const std::vector<OpObject>&, std::size_t>)
                ok = check(tuple, changed);
            else
                ok = check(tuple);
            if (!ok) {
                res.pass = false;
                res.witness = describe(tuple);
                return false;
            }
            return true;
        };
        if (over) {
            for (std::uint64_t n = 0; n < samples_; ++n) {
                for (std::size_t i = 0; i < slots.size(); ++i)
                    decode(i, std::uniform_int_distribution<std::uint64_t>(0, counts[i] - 1)(rng_));
                ++res.sampled;
                if (!test(0)) return;
            }
            return;
        }
        std::vector<std::uint64_t> idx(slots.size(), 0);
        for (std::size_t i = 0; i < slots.size(); ++i) decode(i, 0);
        std::size_t changed = 0;
        while (true) {
            ++res.checked;
            if (!test(changed)) return;
            std::size_t i = slots.size();
            while (i > 0) {
                --i;
                if (++idx[i] < counts[i]) {
                    decode(i, idx[i]);
                    changed = i;
                    break;
                }
                idx[i] = 0;
                decode(i, 0);
                if (i == 0) return;
            }
            if (slots.empty()) return;
        }
    }

private:
    // Decoded objects of small families, or nullptr when too large to cache.
    const std::vector<OpObject>* table(const Slot& s) {
        auto& slot = cache_[{s.perm, s.arity}];
        if (slot.empty()) {
            const std::uint64_t n = s.perm ? static_cast<std::uint64_t>(factorial(s.arity)) : op_.object_count(s.arity);
            if (n > kCacheLimit) return nullptr;
            for (std::uint64_t i = 0; i < n; ++i)
                slot.push_back(s.perm ? OpObject{perm_unrank(s.arity, i)} : op_.object(s.arity, i));
        }
        return &slot;
    }

    static constexpr std::uint64_t kCacheLimit = 1'000'000;
    std::map<std::pair<bool, int>, std::vector<OpObject>> cache_;
    const CatOperad& op_;
    std::uint64_t budget_;
    std::uint64_t samples_;
    std::mt19937_64 rng_;
};

std::vector<int> arities(std::span<const OpObject> d) {
    std::vector<int> out;
    for (const auto& x : d) out.push_back(CatOperad::arity(x));
    return out;
}

}  // namespace

LawReport verify_operad(const CatOperad& op, const VerifyBounds& b) {
    LawReport rep;
    FamilyRunner run(op, b.family_budget, b.samples, b.seed);
    const OpObject one = op.unit();
    auto& unit_left = rep.law("unit-left");
    auto& unit_right = rep.law("unit-right");
    for (int j = 0; j <= b.jmax; ++j) {
        run.run({{false, j}}, unit_left, [&](const std::vector<OpObject>& t) {
            return op.gamma(one, std::span<const OpObject>(&t[0], 1)) == t[0];
        });
        run.run({{false, j}}, unit_right, [&](const std::vector<OpObject>& t) {
            std::vector<OpObject> ones(static_cast<std::size_t>(j), one);
            return op.gamma(t[0], ones) == t[0];
        });
    }

    auto& assoc = rep.law("associativity");
    std::vector<OpObject> inner;  // gamma(d_s; e-block s), kept while its slots are unchanged
    OpObject cd;                  // gamma(c; d), likewise
    for (int k = 0; k <= b.jmax; ++k)
        for (const auto& js : compositions(k, b.jmax, b.jmax)) {
            const int jsum = std::accumulate(js.begin(), js.end(), 0);
            // Highest slot each inner composite depends on.
            std::vector<std::size_t> last_dep;
            for (int s = 0, off = 0; s < k; ++s) {
                const int js_s = js[static_cast<std::size_t>(s)];
                last_dep.push_back(static_cast<std::size_t>(js_s ? 1 + k + off + js_s - 1 : 1 + s));
                off += js_s;
            }
            for (const auto& is : compositions(jsum, b.jmax, b.jmax)) {
                std::vector<Slot> slots{{false, k}};
                for (int j : js) slots.push_back({false, j});
                for (int i : is) slots.push_back({false, i});
                inner.assign(static_cast<std::size_t>(k), OpObject());
                run.run(slots, assoc, [&](const std::vector<OpObject>& t, std::size_t changed) {
                    const std::span<const OpObject> d(t.data() + 1, static_cast<std::size_t>(k));
                    const std::span<const OpObject> e(t.data() + 1 + k, static_cast<std::size_t>(jsum));
                    if (changed <= static_cast<std::size_t>(k)) cd = op.gamma(t[0], d);
                    const OpObject lhs = op.gamma(cd, e);
                    std::size_t off = 0;
                    for (int s = 0; s < k; ++s) {
                        const auto ss = static_cast<std::size_t>(s);
                        const auto js_s = static_cast<std::size_t>(js[ss]);
                        if (changed <= last_dep[ss]) inner[ss] = op.gamma(d[ss], e.subspan(off, js_s));
                        off += js_s;
                    }
                    return lhs == op.gamma(t[0], inner);
                });
            }
        }

    auto& sigma_eq = rep.law("sigma-equivariance");
    auto& block_eq = rep.law("block-equivariance");
    for (int k = 0; k <= b.jmax; ++k)
        for (const auto& js : compositions(k, b.jmax, b.jmax)) {
            std::vector<Slot> slots{{false, k}, {true, k}};
            for (int j : js) slots.push_back({false, j});
            run.run(slots, sigma_eq, [&](const std::vector<OpObject>& t) {
                const Perm& s = t[1][0];
                const std::span<const OpObject> d(t.data() + 2, static_cast<std::size_t>(k));
                const OpObject lhs = op.gamma(op.act_sigma(t[0], s), d);
                std::vector<OpObject> moved(d.size());
                const Perm si = s.inverse();
                for (int m = 0; m < k; ++m) moved[static_cast<std::size_t>(m)] = d[static_cast<std::size_t>(si[m])];
                const auto sizes = arities(d);
                return lhs == op.act_sigma(op.gamma(t[0], moved), block_perm(s, sizes));
            });
            std::vector<Slot> bslots{{false, k}};
            for (int j : js) bslots.push_back({false, j});
            for (int j : js) bslots.push_back({true, j});
            run.run(bslots, block_eq, [&](const std::vector<OpObject>& t) {
                const std::span<const OpObject> d(t.data() + 1, static_cast<std::size_t>(k));
                std::vector<OpObject> moved;
                std::vector<Perm> taus;
                for (int m = 0; m < k; ++m) {
                    const Perm& tau = t[static_cast<std::size_t>(1 + k + m)][0];
                    moved.push_back(op.act_sigma(d[static_cast<std::size_t>(m)], tau));
                    taus.push_back(tau);
                }
                return op.gamma(t[0], moved) == op.act_sigma(op.gamma(t[0], d), block_sum(taus));
            });
        }

    if (op.group().order() > 1) {
        auto& g_eq = rep.law("group-equivariance");
        for (int k = 0; k <= b.jmax; ++k)
            for (const auto& js : compositions(k, b.jmax, b.jmax)) {
                std::vector<Slot> slots{{false, k}};
                for (int j : js) slots.push_back({false, j});
                run.run(slots, g_eq, [&](const std::vector<OpObject>& t) {
                    const std::span<const OpObject> d(t.data() + 1, static_cast<std::size_t>(k));
                    const OpObject base = op.gamma(t[0], d);
                    for (int g = 1; g < op.group().order(); ++g) {
                        std::vector<OpObject> gd;
                        for (const auto& x : d) gd.push_back(op.act_group(g, x));
                        if (op.act_group(g, base) != op.gamma(op.act_group(g, t[0]), gd)) return false;
                    }
                    return true;
                });
            }
        auto& commute = rep.law("actions-commute");
        for (int j = 0; j <= b.jmax; ++j)
            run.run({{false, j}, {true, j}}, commute, [&](const std::vector<OpObject>& t) {
                for (int g = 0; g < op.group().order(); ++g)
                    if (op.act_group(g, op.act_sigma(t[0], t[1][0])) != op.act_sigma(op.act_group(g, t[0]), t[1][0]))
                        return false;
                return true;
            });
    }
    return rep;
}

QuotientModel og_quotient_and_fixed(GroupPtr group, int j, const Subgroup& h, std::uint64_t triple_budget) {
    const FiniteGroup& g = *group;
    require_subgroup(g, h);
    const auto sig = all_perms(j);
    const std::uint64_t s = sig.size();
    std::uint64_t n = 1;
    for (int x = 1; x < g.order(); ++x) {
        n *= s;
        if (n > 1'000'000) throw SizeBudgetExceeded("too many normalized functions");
    }
    if (n * n * n * n * s * s * s > triple_budget) throw SizeBudgetExceeded("quotient model exceeds the triple budget");
    QuotientModel out;
    std::map<OpObject, int> index;
    for (std::uint64_t i = 0; i < n; ++i) {
        OpObject a(static_cast<std::size_t>(g.order()), Perm(j));
        std::uint64_t rest = i;
        for (int x = g.order() - 1; x >= 1; --x) {
            a[static_cast<std::size_t>(x)] = sig[rest % s];
            rest /= s;
        }
        index[a] = static_cast<int>(out.functions.size());
        out.functions.push_back(std::move(a));
    }
    const int no = static_cast<int>(n);
    auto mor = [&](int a, int bb, std::uint64_t sr) { return static_cast<int>((static_cast<std::uint64_t>(a) * n + static_cast<std::uint64_t>(bb)) * s + sr); };
    std::vector<std::string> names;
    for (const auto& a : out.functions) names.push_back(format_object(a));
    std::vector<MorphismSpec> mors;
    for (int a = 0; a < no; ++a)
        for (int bb = 0; bb < no; ++bb)
            for (std::uint64_t sr = 0; sr < s; ++sr) mors.push_back({sig[sr].cycles(), a, bb});
    std::vector<int> ids;
    for (int a = 0; a < no; ++a) ids.push_back(mor(a, a, 0));
    std::vector<std::array<int, 3>> comp;
    for (int a = 0; a < no; ++a)
        for (int bb = 0; bb < no; ++bb)
            for (int c = 0; c < no; ++c)
                for (std::uint64_t x = 0; x < s; ++x)
                    for (std::uint64_t y = 0; y < s; ++y)
                        comp.push_back({mor(bb, c, y), mor(a, bb, x), mor(a, c, perm_rank(sig[y] * sig[x]))});
    // (g a)(k) = a(g^-1 k) a(g^-1)^-1; a morphism s: a -> b goes to b(g^-1) s a(g^-1)^-1.
    std::vector<CatAction> action;
    for (int x = 0; x < g.order(); ++x) {
        const int xi = g.inv(x);
        CatAction act;
        std::vector<int> moved(static_cast<std::size_t>(no));
        for (int a = 0; a < no; ++a) {
            const auto& f = out.functions[static_cast<std::size_t>(a)];
            OpObject ga(f.size());
            const Perm fix = f[static_cast<std::size_t>(xi)].inverse();
            for (int k = 0; k < g.order(); ++k) ga[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(g.mul(xi, k))] * fix;
            moved[static_cast<std::size_t>(a)] = index.at(ga);
        }
        act.objects = moved;
        for (int a = 0; a < no; ++a)
            for (int bb = 0; bb < no; ++bb)
                for (std::uint64_t sr = 0; sr < s; ++sr) {
                    const Perm img = out.functions[static_cast<std::size_t>(bb)][static_cast<std::size_t>(xi)] * sig[sr] *
                                     out.functions[static_cast<std::size_t>(a)][static_cast<std::size_t>(xi)].inverse();
                    act.morphisms.push_back(mor(moved[static_cast<std::size_t>(a)], moved[static_cast<std::size_t>(bb)], perm_rank(img)));
                }
        action.push_back(std::move(act));
    }
    out.quotient = GFinCat(std::move(names), std::move(mors), std::move(ids), comp, group, std::move(action));
    out.fixed = fixed_subcategory(out.quotient, h);

    // Fixed-point equation a(x k) = a(k) a(x) for x in H, and anti-homomorphism on H.
    std::vector<bool> is_fixed(static_cast<std::size_t>(no), false);
    for (int o : out.fixed.objects) is_fixed[static_cast<std::size_t>(o)] = true;
    out.fixed_are_antihoms = true;
    const auto members = h.members();
    for (int a = 0; a < no; ++a) {
        const auto& f = out.functions[static_cast<std::size_t>(a)];
        bool equation = true, anti = true;
        for (int x : members)
            for (int k = 0; k < g.order(); ++k) {
                const auto xs = static_cast<std::size_t>(x), ks = static_cast<std::size_t>(k);
                if (f[static_cast<std::size_t>(g.mul(x, k))] != f[ks] * f[xs]) {
                    equation = false;
                    if (h.contains(k)) anti = false;
                }
            }
        if (equation != is_fixed[static_cast<std::size_t>(a)] || (is_fixed[static_cast<std::size_t>(a)] && !anti))
            out.fixed_are_antihoms = false;
    }
    return out;
}

OpObject Pairing::box(const OpObject& c, const OpObject& d) const {
    if (!box_override_.empty())
        if (auto it = box_override_.find({c, d}); it != box_override_.end()) return it->second;
    OpObject out(c.size());
    for (std::size_t h = 0; h < c.size(); ++h) out[h] = tensor_perm(c[h], d[h]);
    return out;
}

void Pairing::override_box(const OpObject& c, const OpObject& d, OpObject value) { box_override_[{c, d}] = std::move(value); }

LawReport verify_pairing(const Pairing& p, const PairingBounds& b) {
    const CatOperad& op = p.operad();
    LawReport rep;
    FamilyRunner run(op, std::uint64_t{1} << 40, 0, 0);
    auto left = [&](const OpObject& x, const Perm& s) { return op.act_sigma(x, s); };
    auto left_mul = [&](const Perm& s, const OpObject& x) {
        OpObject out(x.size());
        for (std::size_t h = 0; h < x.size(); ++h) out[h] = s * x[h];
        return out;
    };

    auto& equiv = rep.law("equivariance");
    for (int j = 0; j <= b.jk_max; ++j)
        for (int k = 0; k <= b.jk_max; ++k)
            run.run({{false, j}, {false, k}, {true, j}, {true, k}}, equiv, [&](const std::vector<OpObject>& t) {
                const Perm &mu = t[2][0], &nu = t[3][0];
                return p.box(left(t[0], mu), left(t[1], nu)) == left(p.box(t[0], t[1]), tensor_perm(mu, nu));
            });

    auto& unit = rep.law("unit");
    ++unit.checked;
    if (p.box(op.unit(), op.unit()) != op.unit()) {
        unit.pass = false;
        unit.witness = format_object(op.unit()) + "; " + format_object(op.unit());
    }

    // Distributivity: L = gamma(c box d; c_q box d_r over lex (q, r)), R = gamma(c; c_q) box gamma(d; d_r).
    // Literally L delta^-1 = R; after relabeling values, R delta = delta' L with delta'
    // built from the block sizes in value order.
    auto& dist = rep.law("distributivity");
    auto& dist_rel = rep.law("distributivity-up-to-relabeling");
    const int inner_cap = std::max(b.inner_max, b.inner_product_max);
    for (int j = 0; j <= b.jk_max; ++j)
        for (int k = 0; k <= b.jk_max; ++k)
            for (const auto& hs : compositions(j, inner_cap, inner_cap))
                for (const auto& is : compositions(k, inner_cap, inner_cap)) {
                    const int hsum = std::accumulate(hs.begin(), hs.end(), 0);
                    const int isum = std::accumulate(is.begin(), is.end(), 0);
                    if (!((hsum <= b.inner_max && isum <= b.inner_max) || hsum * isum <= b.inner_product_max)) continue;
                    std::vector<Slot> slots{{false, j}, {false, k}};
                    for (int h : hs) slots.push_back({false, h});
                    for (int i : is) slots.push_back({false, i});
                    const Perm delta = delta_perm(hs, is);
                    struct Sides {
                        OpObject l, r;
                    };
                    auto sides = [&](const std::vector<OpObject>& t) {
                        const std::span<const OpObject> cq(t.data() + 2, static_cast<std::size_t>(j));
                        const std::span<const OpObject> dr(t.data() + 2 + j, static_cast<std::size_t>(k));
                        std::vector<OpObject> inputs;
                        for (int q = 0; q < j; ++q)
                            for (int r = 0; r < k; ++r) inputs.push_back(p.box(cq[static_cast<std::size_t>(q)], dr[static_cast<std::size_t>(r)]));
                        return Sides{op.gamma(p.box(t[0], t[1]), inputs), p.box(op.gamma(t[0], cq), op.gamma(t[1], dr))};
                    };
                    run.run(slots, dist, [&](const std::vector<OpObject>& t) {
                        const Sides s = sides(t);
                        return left(s.l, delta.inverse()) == s.r;
                    });
                    run.run(slots, dist_rel, [&](const std::vector<OpObject>& t) {
                        const Sides s = sides(t);
                        for (std::size_t h = 0; h < t[0].size(); ++h) {
                            std::vector<int> hv(static_cast<std::size_t>(j)), iv(static_cast<std::size_t>(k));
                            for (int q = 0; q < j; ++q) hv[static_cast<std::size_t>(t[0][h][q])] = hs[static_cast<std::size_t>(q)];
                            for (int r = 0; r < k; ++r) iv[static_cast<std::size_t>(t[1][h][r])] = is[static_cast<std::size_t>(r)];
                            if (s.r[h] * delta != delta_perm(hv, iv) * s.l[h]) return false;
                        }
                        return true;
                    });
                }

    auto& sym = rep.law("symmetry");
    auto& sym_rel = rep.law("symmetry-up-to-relabeling");
    for (int j = 0; j <= b.jk_max; ++j)
        for (int k = 0; k <= b.jk_max; ++k) {
            const Perm tau = tau_perm(j, k);
            run.run({{false, j}, {false, k}}, sym, [&](const std::vector<OpObject>& t) {
                return p.box(t[0], t[1]) == left(p.box(t[1], t[0]), tau);
            });
            run.run({{false, j}, {false, k}}, sym_rel, [&](const std::vector<OpObject>& t) {
                return p.box(t[0], t[1]) == left_mul(tau.inverse(), left(p.box(t[1], t[0]), tau));
            });
        }

    auto& assoc = rep.law("pairing-associativity");
    auto& unital = rep.law("pairing-unit");
    for (int i = 0; i <= b.jk_max; ++i) {
        run.run({{false, i}}, unital, [&](const std::vector<OpObject>& t) {
            return p.box(op.unit(), t[0]) == t[0] && p.box(t[0], op.unit()) == t[0];
        });
        for (int j = 0; j <= b.jk_max; ++j)
            for (int k = 0; k <= b.jk_max; ++k) {
                if (i * j * k > Perm::kMaxDegree) continue;
                run.run({{false, i}, {false, j}, {false, k}}, assoc, [&](const std::vector<OpObject>& t) {
                    return p.box(p.box(t[0], t[1]), t[2]) == p.box(t[0], p.box(t[1], t[2]));
                });
            }
    }
    return rep;
}

}  // namespace eqcat
