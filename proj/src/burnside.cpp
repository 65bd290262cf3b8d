#include "eqcat/burnside.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "eqcat/errors.hpp"

namespace eqcat {

namespace {

void require_same(const BurnsideElement& a, const BurnsideElement& b) {
    if (!(*a.group == *b.group)) throw GroupMismatch("Burnside elements over different groups");
}

}  // namespace

BurnsideElement burnside_class(const FinGSet& a) {
    const auto classes = subgroup_classes(a.group());
    BurnsideElement out{a.group_ptr(), std::vector<std::int64_t>(classes.size(), 0)};
    for (auto [c, k] : orbit_type(a, classes).entries) out.coefficients[static_cast<std::size_t>(c)] = k;
    return out;
}

BurnsideElement burnside_basis(GroupPtr group, int class_index) {
    const auto classes = subgroup_classes(*group);
    BurnsideElement out{group, std::vector<std::int64_t>(classes.size(), 0)};
    out.coefficients.at(static_cast<std::size_t>(class_index)) = 1;
    return out;
}

BurnsideElement burnside_add(const BurnsideElement& a, const BurnsideElement& b) {
    require_same(a, b);
    BurnsideElement out = a;
    for (std::size_t i = 0; i < out.coefficients.size(); ++i) out.coefficients[i] += b.coefficients[i];
    return out;
}

BurnsideElement burnside_mul(const BurnsideElement& a, const BurnsideElement& b) {
    require_same(a, b);
    const auto classes = subgroup_classes(*a.group);
    const std::size_t n = classes.size();
    BurnsideElement out{a.group, std::vector<std::int64_t>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coefficients[i] == 0) continue;
        const auto gi = coset_gset(a.group, classes[i].representative);
        for (std::size_t k = 0; k < n; ++k) {
            if (b.coefficients[k] == 0) continue;
            const auto prod = product_gset(gi, coset_gset(a.group, classes[k].representative));
            for (auto [c, m] : orbit_type(prod, classes).entries)
                out.coefficients[static_cast<std::size_t>(c)] += a.coefficients[i] * b.coefficients[k] * m;
        }
    }
    return out;
}

MarksTable table_of_marks(const FiniteGroup& g) {
    const auto group = std::make_shared<const FiniteGroup>(g);
    const auto classes = subgroup_classes(g);
    MarksTable m(classes.size(), std::vector<std::int64_t>(classes.size(), 0));
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto orbit = coset_gset(group, classes[i].representative);
        for (std::size_t k = 0; k < classes.size(); ++k)
            m[i][k] = static_cast<std::int64_t>(fixed_points(orbit, classes[k].representative).size());
    }
    return m;
}

std::vector<std::int64_t> marks(const BurnsideElement& a, const MarksTable& table) {
    std::vector<std::int64_t> out(table.size(), 0);
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t k = 0; k < table.size(); ++k) out[k] += a.coefficients[i] * table[i][k];
    return out;
}

namespace {

std::vector<std::string> class_labels(const FiniteGroup& g) {
    std::vector<std::string> out;
    for (const auto& c : subgroup_classes(g)) {
        std::string label = "{";
        const auto members = c.representative.members();
        for (std::size_t i = 0; i < members.size(); ++i) label += (i ? "," : "") + g.element_name(members[i]);
        out.push_back(label + "}");
    }
    return out;
}

}  // namespace

std::string marks_text(const FiniteGroup& g, const MarksTable& table) {
    const auto labels = class_labels(g);
    std::size_t width = 4;
    for (const auto& l : labels) width = std::max(width, l.size() + 1);
    std::ostringstream out;
    out << std::setw(static_cast<int>(width)) << "";
    for (const auto& l : labels) out << std::setw(static_cast<int>(width)) << l;
    out << '\n';
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << std::setw(static_cast<int>(width)) << labels[i];
        for (auto v : table[i]) out << std::setw(static_cast<int>(width)) << v;
        out << '\n';
    }
    return out.str();
}

std::string marks_csv(const FiniteGroup& g, const MarksTable& table) {
    const auto labels = class_labels(g);
    std::ostringstream out;
    out << "class";
    for (const auto& l : labels) out << ",\"" << l << '"';
    out << '\n';
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << '"' << labels[i] << '"';
        for (auto v : table[i]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

std::vector<std::vector<int>> equivariant_maps(const FinGSet& a, const FinGSet& b) {
    if (!(a.group() == b.group())) throw GroupMismatch("G-sets are over different groups");
    const int n = a.size(), order = a.group().order();
    std::vector<std::vector<int>> out;
    std::vector<int> f(static_cast<std::size_t>(n), -1);
    // Assign points in order; every constraint between assigned points is checked on assignment.
    auto consistent = [&](int p) {
        for (int g = 0; g < order; ++g) {
            const int q = a.act(g, p);
            if (q <= p && f[static_cast<std::size_t>(q)] != b.act(g, f[static_cast<std::size_t>(p)])) return false;
            const int r = a.act(a.group().inv(g), p);
            if (r < p && b.act(g, f[static_cast<std::size_t>(r)]) != f[static_cast<std::size_t>(p)]) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int p) -> void {
        if (p == n) {
            out.push_back(f);
            return;
        }
        for (int v = 0; v < b.size(); ++v) {
            f[static_cast<std::size_t>(p)] = v;
            if (consistent(p)) self(self, p + 1);
        }
        f[static_cast<std::size_t>(p)] = -1;
    };
    rec(rec, 0);
    return out;
}

TomDieckPi0 tom_dieck_pi0(const FinGSet& x) {
    const FiniteGroup& g = x.group();
    const auto classes = subgroup_classes(g);
    TomDieckPi0 out;
    for (const auto& c : classes) {
        // X^H up to the normalizer, whose action factors through WH.
        const auto fixed = fixed_points(x, c.representative);
        std::set<int> seen;
        std::int64_t rank = 0;
        for (int p : fixed) {
            if (seen.count(p)) continue;
            ++rank;
            for (int n : c.normalizer.members()) seen.insert(x.act(n, p));
        }
        out.ranks.push_back(rank);
        out.total += rank;

        // Oracle: equivariant maps G/H -> X up to automorphisms of G/H.
        const auto orbit = coset_gset(x.group_ptr(), c.representative);
        const auto maps = equivariant_maps(orbit, x);
        std::vector<std::vector<int>> autos;
        for (auto& f : equivariant_maps(orbit, orbit))
            if (std::set<int>(f.begin(), f.end()).size() == f.size()) autos.push_back(std::move(f));
        std::set<std::vector<int>> classified;
        std::int64_t oracle = 0;
        for (const auto& f : maps) {
            if (classified.count(f)) continue;
            ++oracle;
            for (const auto& phi : autos) {
                std::vector<int> fp(f.size());
                for (std::size_t i = 0; i < f.size(); ++i) fp[i] = f[static_cast<std::size_t>(phi[i])];
                classified.insert(std::move(fp));
            }
        }
        out.oracle_ranks.push_back(oracle);
    }
    return out;
}

}  // namespace eqcat
