#include "eqcat/group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include <json.hpp>

#include "eqcat/errors.hpp"
#include "eqcat/perm.hpp"

namespace eqcat {

namespace {

constexpr int kMaxOrder = 64;

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> elements,
                         std::vector<std::vector<int>> table)
    : name_(std::move(name)), elements_(std::move(elements)) {
    const int n = static_cast<int>(elements_.size());
    if (n == 0) throw ParseError("group has no elements");
    if (n > kMaxOrder) throw ParseError("group order exceeds " + std::to_string(kMaxOrder));
    if (std::set<std::string>(elements_.begin(), elements_.end()).size() != elements_.size())
        throw ParseError("element names are not unique");
    if (static_cast<int>(table.size()) != n) throw ParseError("table row count does not match element count");
    table_.reserve(static_cast<std::size_t>(n * n));
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw ParseError("table row length does not match element count");
        for (int v : row) {
            if (v < 0 || v >= n) throw ParseError("table entry out of range");
            table_.push_back(v);
        }
    }
    for (int a = 0; a < n; ++a)
        if (mul(0, a) != a || mul(a, 0) != a) throw NotAGroup("identity", {0, a});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw NotAGroup("associativity", {a, b, c});
    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) inverse_[static_cast<std::size_t>(a)] = b;
        if (inverse_[static_cast<std::size_t>(a)] < 0) throw NotAGroup("inverse", {a});
    }
}

int FiniteGroup::element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

std::optional<int> FiniteGroup::index_of(std::string_view element) const {
    for (int i = 0; i < order(); ++i)
        if (elements_[static_cast<std::size_t>(i)] == element) return i;
    return std::nullopt;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(order()));
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b) t[static_cast<std::size_t>(a)].push_back(mul(a, b));
    return t;
}

FiniteGroup load_group(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
        return FiniteGroup(j.at("name").get<std::string>(), j.at("elements").get<std::vector<std::string>>(),
                           j.at("table").get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("group file: ") + e.what());
    }
}

std::string group_to_json(const FiniteGroup& g) {
    nlohmann::json j;
    j["name"] = g.name();
    j["elements"] = g.elements();
    j["table"] = g.table();
    return j.dump();
}

FiniteGroup cyclic_group(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        names.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a)));
        for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a)].push_back((a + b) % n);
    }
    return FiniteGroup("C" + std::to_string(n), std::move(names), std::move(table));
}

FiniteGroup symmetric_group(int n) {
    const auto perms = all_perms(n);
    std::map<Perm, int> index;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        index[perms[i]] = static_cast<int>(i);
        names.push_back(i == 0 ? "e" : perms[i].cycles());
    }
    std::vector<std::vector<int>> table(perms.size());
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (const Perm& b : perms) table[a].push_back(index.at(perms[a] * b));
    return FiniteGroup("S" + std::to_string(n), std::move(names), std::move(table));
}

FiniteGroup quaternion_group() {
    // Element 2u+s is (-1)^s times unit u, with units 1, i, j, k.
    const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    const std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    std::vector<std::vector<int>> table(8);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ua = a / 2, ub = b / 2;
            const int s = (a % 2) ^ (b % 2) ^ sign_mul[ua][ub];
            table[static_cast<std::size_t>(a)].push_back(2 * unit_mul[ua][ub] + s);
        }
    return FiniteGroup("Q8", names, std::move(table));
}

FiniteGroup klein_four_group() {
    std::vector<std::vector<int>> table(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) table[static_cast<std::size_t>(a)].push_back(a ^ b);
    return FiniteGroup("C2xC2", {"e", "a", "b", "ab"}, std::move(table));
}

std::vector<std::string> preset_names() { return {"trivial", "C2", "C3", "C4", "S3", "Q8", "C2xC2"}; }

FiniteGroup preset_group(std::string_view name) {
    if (name == "trivial") {
        FiniteGroup g = cyclic_group(1);
        return FiniteGroup("trivial", g.elements(), g.table());
    }
    if (name == "Q8") return quaternion_group();
    if (name == "C2xC2") return klein_four_group();
    if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'S')) {
        const std::string digits(name.substr(1));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            const int n = std::stoi(digits);
            if (name[0] == 'C' && n >= 1 && n <= kMaxOrder) return cyclic_group(n);
            if (name[0] == 'S' && n >= 1 && n <= 4) return symmetric_group(n);
        }
    }
    throw ParseError("unknown group preset '" + std::string(name) + "'");
}

Subgroup::Subgroup(std::uint64_t mask) : mask_(mask) {}

Subgroup Subgroup::from_members(std::span<const int> members) {
    std::uint64_t m = 0;
    for (int x : members) m |= std::uint64_t{1} << x;
    return Subgroup(m);
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
    return Subgroup(g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1);
}

Subgroup Subgroup::trivial() { return Subgroup(1); }

int Subgroup::order() const { return std::popcount(mask_); }

std::vector<int> Subgroup::members() const {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const int> generators) {
    std::vector<int> elems = {0};
    std::uint64_t mask = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (int s : generators) {
            const int x = g.mul(elems[i], s);
            if (!((mask >> x) & 1u)) {
                mask |= std::uint64_t{1} << x;
                elems.push_back(x);
            }
        }
    return Subgroup(mask);
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
    if (!h.contains(0)) return false;
    const auto m = h.members();
    if (m.empty() || m.back() >= g.order()) return false;
    for (int a : m)
        for (int b : m)
            if (!h.contains(g.mul(a, g.inv(b)))) return false;
    return true;
}

void require_subgroup(const FiniteGroup& g, const Subgroup& h) {
    if (!is_subgroup(g, h)) throw NotASubgroup("element set is not a subgroup of " + g.name());
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int x) {
    std::uint64_t m = 0;
    for (int a : h.members()) m |= std::uint64_t{1} << g.conj(x, a);
    return Subgroup(m);
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
    std::uint64_t m = 0;
    for (int x = 0; x < g.order(); ++x)
        if (conjugate(g, h, x) == h) m |= std::uint64_t{1} << x;
    return Subgroup(m);
}

bool subconjugate(const FiniteGroup& g, const Subgroup& k, const Subgroup& h) {
    for (int x = 0; x < g.order(); ++x)
        if ((conjugate(g, k, x).mask() & ~h.mask()) == 0) return true;
    return false;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
    const int n = g.order();
    std::set<std::uint64_t> found;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const int gens[2] = {a, b};
            found.insert(generated_subgroup(g, gens).mask());
        }
    // Fixpoint sweep: close under joins until nothing new appears.
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<std::uint64_t> current(found.begin(), found.end());
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                const Subgroup joined_gens(current[i] | current[j]);
                const auto gens = joined_gens.members();
                const auto joined = generated_subgroup(g, gens).mask();
                if (found.insert(joined).second) grew = true;
            }
    }
    std::vector<Subgroup> out;
    for (auto m : found) out.emplace_back(m);
    std::sort(out.begin(), out.end());
    return out;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
    require_subgroup(g, h);
    const auto m = h.members();
    std::vector<int> pos(static_cast<std::size_t>(g.order()), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m.size(); ++i) {
        pos[static_cast<std::size_t>(m[i])] = static_cast<int>(i);
        names.push_back(g.element_name(m[i]));
    }
    std::vector<std::vector<int>> table(m.size());
    for (std::size_t a = 0; a < m.size(); ++a)
        for (int b : m) table[a].push_back(pos[static_cast<std::size_t>(g.mul(m[a], b))]);
    return FiniteGroup(g.name() + "_sub", std::move(names), std::move(table));
}

FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n, const Subgroup& h) {
    std::vector<int> coset_of(static_cast<std::size_t>(g.order()), -1);
    std::vector<int> reps;
    for (int x : n.members()) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        const int c = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int y : h.members()) coset_of[static_cast<std::size_t>(g.mul(x, y))] = c;
    }
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(reps.size());
    for (std::size_t a = 0; a < reps.size(); ++a) {
        names.push_back(reps[a] == 0 ? "e" : g.element_name(reps[a]) + "H");
        for (int b : reps) {
            const int c = coset_of[static_cast<std::size_t>(g.mul(reps[a], b))];
            if (c < 0) throw NotASubgroup("quotient by a subgroup that is not normal");
            table[a].push_back(c);
        }
    }
    return FiniteGroup("W", std::move(names), std::move(table));
}

std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& g) {
    const auto subs = all_subgroups(g);
    std::vector<bool> used(subs.size(), false);
    std::vector<SubgroupClass> out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (used[i]) continue;
        std::set<std::uint64_t> conj;
        for (int x = 0; x < g.order(); ++x) conj.insert(conjugate(g, subs[i], x).mask());
        std::vector<Subgroup> members;
        for (std::size_t j = i; j < subs.size(); ++j)
            if (conj.count(subs[j].mask())) {
                used[j] = true;
                members.push_back(subs[j]);
            }
        // subs is sorted, so subs[i] is the least member.
        const Subgroup nrm = normalizer(g, subs[i]);
        out.push_back(SubgroupClass{subs[i], std::move(members), nrm, quotient_group(g, nrm, subs[i])});
    }
    return out;
}

int class_index_of(const std::vector<SubgroupClass>& classes, const Subgroup& h) {
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& m : classes[c].members)
            if (m == h) return static_cast<int>(c);
    throw NotASubgroup("subgroup not found among classes");
}

std::optional<std::pair<int, int>> hom_failure(const FiniteGroup& h, const FiniteGroup& pi,
                                               std::span<const int> alpha) {
    if (static_cast<int>(alpha.size()) != h.order()) throw ShapeMismatch("homomorphism has wrong length");
    for (int a : alpha)
        if (a < 0 || a >= pi.order()) throw ShapeMismatch("homomorphism image out of range");
    for (int a = 0; a < h.order(); ++a)
        for (int b = 0; b < h.order(); ++b)
            if (alpha[static_cast<std::size_t>(h.mul(a, b))] !=
                pi.mul(alpha[static_cast<std::size_t>(a)], alpha[static_cast<std::size_t>(b)]))
                return std::pair{a, b};
    return std::nullopt;
}

bool is_homomorphism(const FiniteGroup& h, const FiniteGroup& pi, std::span<const int> alpha) {
    return !hom_failure(h, pi, alpha).has_value();
}

std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& h, const FiniteGroup& pi) {
    // Greedy generating set, then every assignment of generator images.
    std::vector<int> gens;
    Subgroup span = Subgroup::trivial();
    for (int x = 1; x < h.order(); ++x)
        if (!span.contains(x)) {
            gens.push_back(x);
            span = generated_subgroup(h, gens);
        }
    std::vector<std::vector<int>> out;
    std::vector<int> choice(gens.size(), 0);
    const int n = h.order();
    while (true) {
        std::vector<int> img(static_cast<std::size_t>(n), -1);
        img[0] = 0;
        std::vector<int> queue = {0};
        bool ok = true;
        for (std::size_t q = 0; q < queue.size() && ok; ++q)
            for (std::size_t s = 0; s < gens.size() && ok; ++s) {
                const int x = h.mul(queue[q], gens[s]);
                const int v = pi.mul(img[static_cast<std::size_t>(queue[q])], choice[s]);
                if (img[static_cast<std::size_t>(x)] < 0) {
                    img[static_cast<std::size_t>(x)] = v;
                    queue.push_back(x);
                } else if (img[static_cast<std::size_t>(x)] != v) {
                    ok = false;
                }
            }
        if (ok && is_homomorphism(h, pi, img)) out.push_back(img);
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == pi.order()) choice[k++] = 0;
        if (k == choice.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup centralizer_of_hom(const FiniteGroup& pi, const FiniteGroup& h, std::span<const int> alpha) {
    if (auto bad = hom_failure(h, pi, alpha)) throw NotAHomomorphism(bad->first, bad->second);
    std::uint64_t m = 0;
    for (int s = 0; s < pi.order(); ++s) {
        bool commutes = true;
        for (int a : alpha)
            if (pi.mul(s, a) != pi.mul(a, s)) commutes = false;
        if (commutes) m |= std::uint64_t{1} << s;
    }
    return Subgroup(m);
}

}  // namespace eqcat
