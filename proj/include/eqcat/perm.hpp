#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace eqcat {

// Permutation of {0,...,n-1} stored inline; p[i] is the image of i.
// Composition follows function notation: (a * b)[i] == a[b[i]].
class Perm {
public:
    static constexpr int kMaxDegree = 16;

    Perm() = default;
    explicit Perm(int n);
    explicit Perm(std::span<const int> images);
    Perm(std::initializer_list<int> images);

    int degree() const { return n_; }
    int operator[](int i) const { return img_[static_cast<std::size_t>(i)]; }
    bool is_identity() const;
    Perm inverse() const;
    std::vector<int> images() const;

    // 1-based cycle notation, "()" for the identity.
    std::string cycles() const;

    friend Perm operator*(const Perm& a, const Perm& b);
    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;

    std::size_t hash() const;

private:
    std::uint8_t n_ = 0;
    std::array<std::uint8_t, kMaxDegree> img_{};
};

struct PermHash {
    std::size_t operator()(const Perm& p) const { return p.hash(); }
};

long long factorial(int n);

// All permutations of degree n in lexicographic order of image vectors.
std::vector<Perm> all_perms(int n);

// Position of p in all_perms(p.degree()).
std::uint64_t perm_rank(const Perm& p);
Perm perm_unrank(int n, std::uint64_t rank);

// Acts on block i by parts[i]; blocks laid out in order.
Perm block_sum(std::span<const Perm> parts);

// Moves the block of size sizes[i] to block position s[i], keeping order inside blocks.
Perm block_perm(const Perm& s, std::span<const int> sizes);

}  // namespace eqcat
