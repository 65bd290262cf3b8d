#include "eqcat/nerve.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>

#include "eqcat/errors.hpp"
#include "eqcat/gset.hpp"

namespace eqcat {

namespace {

// Object at vertex i of a chain of length q >= 1.
int vertex(const GFinCat& c, const std::vector<int>& chain, int i) {
    return i == 0 ? c.src(chain[0]) : c.tgt(chain[static_cast<std::size_t>(i - 1)]);
}

std::vector<int> face_of(const GFinCat& c, const std::vector<int>& chain, int q, int i) {
    if (q == 1) return {i == 0 ? c.tgt(chain[0]) : c.src(chain[0])};
    std::vector<int> out;
    for (int k = 0; k < q; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (i == 0 && k == 0) continue;
        if (i == q && k == q - 1) continue;
        if (k == i - 1 && i > 0 && i < q) {
            out.push_back(c.compose(chain[ks + 1], chain[ks]));
            ++k;
            continue;
        }
        out.push_back(chain[ks]);
    }
    return out;
}

std::vector<int> degeneracy_of(const GFinCat& c, const std::vector<int>& chain, int q, int i) {
    if (q == 0) return {c.identity(chain[0])};
    std::vector<int> out = chain;
    out.insert(out.begin() + i, c.identity(vertex(c, chain, i)));
    return out;
}

bool is_degenerate(const GFinCat& c, const std::vector<int>& chain, int q) {
    if (q == 0) return false;
    return std::any_of(chain.begin(), chain.end(), [&](int m) { return m == c.identity(c.src(m)); });
}

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
    std::int64_t prod = 0, out = 0;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out))
        throw SizeBudgetExceeded("integer overflow in Smith normal form");
    return out;
}

}  // namespace

SimplicialTruncation nerve_truncated(const GFinCat& c, int qmax, std::uint64_t budget) {
    if (qmax < 0) throw SizeBudgetExceeded("negative truncation degree");
    SimplicialTruncation n;
    n.qmax = qmax;
    n.simplices.resize(static_cast<std::size_t>(qmax) + 1);
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(qmax) + 1);
    std::uint64_t total = 0;
    auto add = [&](int q, std::vector<int> chain) {
        if (++total > budget) throw SizeBudgetExceeded("nerve exceeds " + std::to_string(budget) + " simplices");
        const auto qs = static_cast<std::size_t>(q);
        index[qs].emplace(chain, static_cast<int>(n.simplices[qs].size()));
        n.simplices[qs].push_back(std::move(chain));
    };
    for (int o = 0; o < c.object_count(); ++o) add(0, {o});
    if (qmax >= 1)
        for (int m = 0; m < c.morphism_count(); ++m) add(1, {m});
    for (int q = 2; q <= qmax; ++q) {
        const auto& prev = n.simplices[static_cast<std::size_t>(q - 1)];
        for (std::size_t s = 0; s < prev.size(); ++s)
            for (int m = 0; m < c.morphism_count(); ++m)
                if (c.src(m) == c.tgt(prev[s].back())) {
                    auto chain = prev[s];
                    chain.push_back(m);
                    add(q, std::move(chain));
                }
    }
    n.face.resize(static_cast<std::size_t>(qmax) + 1);
    n.degeneracy.resize(static_cast<std::size_t>(qmax) + 1);
    for (int q = 0; q <= qmax; ++q) {
        const auto qs = static_cast<std::size_t>(q);
        for (const auto& chain : n.simplices[qs]) {
            std::vector<int> faces, degens;
            if (q >= 1)
                for (int i = 0; i <= q; ++i) faces.push_back(index[qs - 1].at(face_of(c, chain, q, i)));
            if (q < qmax)
                for (int i = 0; i <= q; ++i) degens.push_back(index[qs + 1].at(degeneracy_of(c, chain, q, i)));
            n.face[qs].push_back(std::move(faces));
            n.degeneracy[qs].push_back(std::move(degens));
        }
    }
    return n;
}

std::optional<std::string> simplicial_identity_failure(const SimplicialTruncation& n) {
    auto d = [&](int q, int s, int i) { return n.face[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]; };
    auto sd = [&](int q, int s, int i) { return n.degeneracy[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]; };
    auto where = [](const char* law, int q, int s, int i, int j) {
        return std::string(law) + " at level " + std::to_string(q) + " simplex " + std::to_string(s) + " i=" +
               std::to_string(i) + " j=" + std::to_string(j);
    };
    for (int q = 0; q <= n.qmax; ++q)
        for (int s = 0; s < static_cast<int>(n.size(q)); ++s) {
            if (q >= 2)
                for (int i = 0; i <= q - 1; ++i)
                    for (int j = i + 1; j <= q; ++j)
                        if (d(q - 1, d(q, s, j), i) != d(q - 1, d(q, s, i), j - 1)) return where("d_i d_j", q, s, i, j);
            if (q + 1 <= n.qmax) {
                for (int j = 0; j <= q; ++j)
                    for (int i = 0; i <= q + 1; ++i) {
                        const int lhs = d(q + 1, sd(q, s, j), i);
                        int rhs;
                        if (i < j) rhs = sd(q - 1, d(q, s, i), j - 1);
                        else if (i == j || i == j + 1) rhs = s;
                        else rhs = sd(q - 1, d(q, s, i - 1), j);
                        if (lhs != rhs) return where("d_i s_j", q, s, i, j);
                    }
            }
            if (q + 2 <= n.qmax)
                for (int i = 0; i <= q; ++i)
                    for (int j = i; j <= q; ++j)
                        if (sd(q + 1, sd(q, s, j), i) != sd(q + 1, sd(q, s, i), j + 1)) return where("s_i s_j", q, s, i, j);
        }
    return std::nullopt;
}

std::vector<std::vector<int>> nondegenerate(const GFinCat& c, const SimplicialTruncation& n) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n.qmax) + 1);
    for (int q = 0; q <= n.qmax; ++q)
        for (int s = 0; s < static_cast<int>(n.size(q)); ++s)
            if (!is_degenerate(c, n.simplices[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)], q))
                out[static_cast<std::size_t>(q)].push_back(s);
    return out;
}

std::vector<Component> pi0_and_vertex(const GFinCat& c) {
    std::vector<Component> out;
    for (const auto& k : skeleton(c)) out.push_back({k.representative, k.size, k.automorphisms});
    return out;
}

std::string format_abelian(const AbelianGroup& a) {
    std::string out;
    if (a.rank > 0) out = a.rank == 1 ? "Z" : "Z^" + std::to_string(a.rank);
    for (auto t : a.torsion) out += (out.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
    return out.empty() ? "0" : out;
}

std::vector<std::int64_t> smith_invariants(IntMatrix a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        auto bring_min = [&] {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (bi == rows || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) bi = i, bj = j;
            if (bi == rows) return false;
            std::swap(a[t], a[bi]);
            for (auto& row : a) std::swap(row[t], row[bj]);
            return true;
        };
        if (!bring_min()) break;
        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    const std::int64_t q = a[i][t] / a[t][t];
                    for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_sub_mul(a[i][j], q, a[t][j]);
                    dirty |= a[i][t] != 0;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    const std::int64_t q = a[t][j] / a[t][t];
                    for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_sub_mul(a[i][j], q, a[i][t]);
                    dirty |= a[t][j] != 0;
                }
            if (dirty) {
                bring_min();
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold in the offending row.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
        }
        diag.push_back(std::llabs(a[t][t]));
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

Homology homology(const GFinCat& c, int qmax, std::uint64_t budget) {
    if (qmax < 1) throw SizeBudgetExceeded("homology needs qmax >= 1");
    const auto n = nerve_truncated(c, qmax, budget);
    const auto nd = nondegenerate(c, n);
    Homology h;
    for (const auto& level : nd) h.chain_ranks.push_back(static_cast<int>(level.size()));
    h.boundary.resize(static_cast<std::size_t>(qmax) + 1);
    for (int q = 1; q <= qmax; ++q) {
        const auto qs = static_cast<std::size_t>(q);
        std::map<int, std::size_t> row_of;
        for (std::size_t r = 0; r < nd[qs - 1].size(); ++r) row_of[nd[qs - 1][r]] = r;
        if (nd[qs - 1].size() * nd[qs].size() > budget) throw SizeBudgetExceeded("boundary matrix too large");
        IntMatrix m(nd[qs - 1].size(), std::vector<std::int64_t>(nd[qs].size(), 0));
        for (std::size_t col = 0; col < nd[qs].size(); ++col)
            for (int i = 0; i <= q; ++i) {
                const int f = n.face[qs][static_cast<std::size_t>(nd[qs][col])][static_cast<std::size_t>(i)];
                if (auto it = row_of.find(f); it != row_of.end()) m[it->second][col] += i % 2 ? -1 : 1;
            }
        h.boundary[qs] = std::move(m);
    }
    std::vector<std::vector<std::int64_t>> inv(static_cast<std::size_t>(qmax) + 2);
    for (int q = 1; q <= qmax; ++q) inv[static_cast<std::size_t>(q)] = smith_invariants(h.boundary[static_cast<std::size_t>(q)]);
    auto group_at = [&](int q) {
        const auto qs = static_cast<std::size_t>(q);
        AbelianGroup g;
        g.rank = h.chain_ranks[qs] - static_cast<int>(inv[qs].size()) - static_cast<int>(inv[qs + 1].size());
        for (auto t : inv[qs + 1])
            if (t > 1) g.torsion.push_back(t);
        return g;
    };
    for (int q = 0; q < qmax; ++q) h.groups.push_back(group_at(q));
    h.top = group_at(qmax);
    return h;
}

void write_chains_csv(std::ostream& out, const Homology& h) {
    for (std::size_t q = 1; q < h.boundary.size(); ++q) {
        const auto& m = h.boundary[q];
        out << "# d" << q << ' ' << h.chain_ranks[q - 1] << " x " << h.chain_ranks[q] << '\n';
        for (const auto& row : m) {
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
            out << '\n';
        }
    }
}

namespace {

void fill_expected(FixedPointCheck& r, const FiniteGroup& g, const FiniteGroup& pi, const Subgroup& h) {
    const auto classes = hom_classes(subgroup_as_group(g, h), pi);
    r.expected_components = static_cast<int>(classes.size());
    for (const auto& k : classes) r.expected_orders.insert(k.centralizer_order);
}

std::uint64_t power(std::uint64_t base, int exp, std::uint64_t limit) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (out > limit / base) throw SizeBudgetExceeded("fixed-point model exceeds the object budget");
        out *= base;
    }
    return out;
}

}  // namespace

FixedPointCheck bgpi_fixed_check_explicit(GroupPtr g, const FiniteGroup& pi, const Subgroup& h) {
    require_subgroup(*g, h);
    power(static_cast<std::uint64_t>(pi.order()), g->order() - 1, kExplicitFunctorLimit);
    const auto th = twisted_hom(g, std::make_shared<const GFinCat>(group_as_category(pi)));
    const auto fixed = fixed_subcategory(th.hom.category, h);
    FixedPointCheck r;
    r.explicit_model = true;
    r.fixed_objects = fixed.objects.size();
    const auto comps = pi0_and_vertex(fixed.category);
    r.components = static_cast<int>(comps.size());
    for (const auto& k : comps) r.vertex_orders.insert(k.vertex_order);
    fill_expected(r, *g, pi, h);
    return r;
}

// A functor G~ -> Pi is p: G -> Pi with p(e) = 1, sending x -> y to p(y) p(x)^-1.
// H-fixed transformations are functions eta: G -> Pi constant on cosets Hx;
// they form a group K acting by (eta p)(y) = eta(y) p(y) eta(e)^-1, and the
// fixed category is the action groupoid.  Components are K-orbits, found by
// search along generators, and vertex orders are |K| / |orbit|.
FixedPointCheck bgpi_fixed_check_orbit(GroupPtr gp, const FiniteGroup& pi, const Subgroup& h, std::uint64_t object_budget) {
    const FiniteGroup& g = *gp;
    require_subgroup(g, h);
    const int n = g.order();
    const auto base = static_cast<std::uint64_t>(pi.order());
    const std::uint64_t total = power(base, n - 1, object_budget);
    auto decode = [&](std::uint64_t code, std::vector<int>& p) {
        for (int x = n - 1; x >= 1; --x) {
            p[static_cast<std::size_t>(x)] = static_cast<int>(code % base);
            code /= base;
        }
        p[0] = 0;
    };
    auto encode = [&](const std::vector<int>& p) {
        std::uint64_t code = 0;
        for (int x = 1; x < n; ++x) code = code * base + static_cast<std::uint64_t>(p[static_cast<std::size_t>(x)]);
        return code;
    };
    const auto members = h.members();
    auto at = [](const std::vector<int>& p, int x) { return p[static_cast<std::size_t>(x)]; };
    auto fixed = [&](const std::vector<int>& p) {
        for (int y : members)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (pi.mul(at(p, g.mul(y, b)), pi.inv(at(p, g.mul(y, a)))) != pi.mul(at(p, b), pi.inv(at(p, a))))
                        return false;
        return true;
    };
    // Right cosets Hx, as a coset label per element.
    std::vector<int> coset(static_cast<std::size_t>(n), -1);
    int cosets = 0;
    for (int x = 0; x < n; ++x) {
        if (coset[static_cast<std::size_t>(x)] >= 0) continue;
        for (int y : members) coset[static_cast<std::size_t>(g.mul(y, x))] = cosets;
        ++cosets;
    }
    const std::uint64_t k_order = power(base, cosets, std::uint64_t{1} << 62);
    // Generators of Pi, greedily.
    std::vector<int> gens;
    for (int s = 1; s < pi.order(); ++s)
        if (!generated_subgroup(pi, gens).contains(s)) gens.push_back(s);

    FixedPointCheck r;
    std::vector<bool> seen(total, false);
    std::vector<int> p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (std::uint64_t start = 0; start < total; ++start) {
        if (seen[start]) continue;
        decode(start, p);
        if (!fixed(p)) continue;
        std::deque<std::uint64_t> queue{start};
        seen[start] = true;
        std::uint64_t orbit = 0;
        while (!queue.empty()) {
            const std::uint64_t cur = queue.front();
            queue.pop_front();
            ++orbit;
            decode(cur, p);
            if (!fixed(p) && r.witness.empty())
                r.witness = "orbit of a fixed functor leaves the fixed objects at code " + std::to_string(cur);
            for (int c = 0; c < cosets; ++c)
                for (int s : gens) {
                    // eta = s on coset c, identity elsewhere.
                    const int eta_e = coset[0] == c ? s : 0;
                    for (int y = 0; y < n; ++y) {
                        const int eta_y = coset[static_cast<std::size_t>(y)] == c ? s : 0;
                        q[static_cast<std::size_t>(y)] = pi.mul(pi.mul(eta_y, at(p, y)), pi.inv(eta_e));
                    }
                    const std::uint64_t next = encode(q);
                    if (!seen[next]) {
                        seen[next] = true;
                        queue.push_back(next);
                    }
                }
        }
        ++r.components;
        r.fixed_objects += orbit;
        r.vertex_orders.insert(static_cast<std::int64_t>(k_order / orbit));
    }
    fill_expected(r, g, pi, h);
    return r;
}

FixedPointCheck bgpi_fixed_check(GroupPtr g, const FiniteGroup& pi, const Subgroup& h, std::uint64_t object_budget) {
    std::uint64_t functors = 1;
    for (int x = 1; x < g->order() && functors <= kExplicitFunctorLimit; ++x) functors *= static_cast<std::uint64_t>(pi.order());
    return functors <= kExplicitFunctorLimit ? bgpi_fixed_check_explicit(std::move(g), pi, h)
                                             : bgpi_fixed_check_orbit(std::move(g), pi, h, object_budget);
}

}  // namespace eqcat
