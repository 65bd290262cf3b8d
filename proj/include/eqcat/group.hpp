#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqcat {

// Group given by a validated Cayley table; element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<int>> table);

    const std::string& name() const { return name_; }
    int order() const { return static_cast<int>(elements_.size()); }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a * order() + b)]; }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }
    int element_order(int a) const;
    const std::string& element_name(int a) const { return elements_[static_cast<std::size_t>(a)]; }
    const std::vector<std::string>& elements() const { return elements_; }
    std::optional<int> index_of(std::string_view element) const;
    std::vector<std::vector<int>> table() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.elements_ == b.elements_ && a.table_ == b.table_;
    }

private:
    std::string name_;
    std::vector<std::string> elements_;
    std::vector<int> table_;
    std::vector<int> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// {"name": str, "elements": [str], "table": [[int]]}
FiniteGroup load_group(std::string_view json_text);
std::string group_to_json(const FiniteGroup& g);

// "trivial", "C2", "C3", "C4", "S3", "Q8", "C2xC2"; also "Cn" and "Sn" for small n.
FiniteGroup preset_group(std::string_view name);
std::vector<std::string> preset_names();

FiniteGroup cyclic_group(int n);
// Elements are the permutations of {1..n} in lexicographic order, named by cycles.
FiniteGroup symmetric_group(int n);
FiniteGroup quaternion_group();
FiniteGroup klein_four_group();

// Subgroups are stored as bitmasks; groups have order at most 64.
class Subgroup {
public:
    Subgroup() = default;
    explicit Subgroup(std::uint64_t mask);
    static Subgroup from_members(std::span<const int> members);
    static Subgroup whole(const FiniteGroup& g);
    static Subgroup trivial();

    std::uint64_t mask() const { return mask_; }
    bool contains(int g) const { return (mask_ >> g) & 1u; }
    int order() const;
    std::vector<int> members() const;

    friend bool operator==(const Subgroup&, const Subgroup&) = default;
    // Order first, then lexicographic on sorted member lists.
    friend bool operator<(const Subgroup& a, const Subgroup& b);

private:
    std::uint64_t mask_ = 1;
};

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const int> generators);
bool is_subgroup(const FiniteGroup& g, const Subgroup& h);
void require_subgroup(const FiniteGroup& g, const Subgroup& h);
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int x);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);
bool subconjugate(const FiniteGroup& g, const Subgroup& k, const Subgroup& h);

// Every subgroup, sorted by order then members.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

// The subgroup as a group in its own right; elements keep their names and
// appear in increasing index order.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);

// n/h for h normal in n; cosets ordered by least element.
FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n, const Subgroup& h);

struct SubgroupClass {
    Subgroup representative;
    std::vector<Subgroup> members;
    Subgroup normalizer;
    FiniteGroup weyl;
};

// Ordered by subgroup order, ties by lexicographic representative.
std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& g);
int class_index_of(const std::vector<SubgroupClass>& classes, const Subgroup& h);

std::optional<std::pair<int, int>> hom_failure(const FiniteGroup& h, const FiniteGroup& pi,
                                               std::span<const int> alpha);
bool is_homomorphism(const FiniteGroup& h, const FiniteGroup& pi, std::span<const int> alpha);

// All homomorphisms h -> pi in lexicographic order of image vectors.
std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& h, const FiniteGroup& pi);

// Elements of pi commuting with every alpha(x).
Subgroup centralizer_of_hom(const FiniteGroup& pi, const FiniteGroup& h, std::span<const int> alpha);

}  // namespace eqcat
