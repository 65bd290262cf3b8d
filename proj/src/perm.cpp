#include "eqcat/perm.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "eqcat/errors.hpp"

namespace eqcat {

Perm::Perm(int n) {
    if (n < 0 || n > kMaxDegree)
        throw SizeBudgetExceeded("permutation degree " + std::to_string(n) + " exceeds capacity");
    n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
}

Perm::Perm(std::span<const int> images) {
    const int n = static_cast<int>(images.size());
    if (n > kMaxDegree)
        throw SizeBudgetExceeded("permutation degree " + std::to_string(n) + " exceeds capacity");
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n; ++i) {
        const int v = images[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw ParseError("not a permutation image list");
        seen[static_cast<std::size_t>(v)] = true;
        img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    }
    n_ = static_cast<std::uint8_t>(n);
}

Perm::Perm(std::initializer_list<int> images)
    : Perm(std::span<const int>(images.begin(), images.size())) {}

bool Perm::is_identity() const {
    for (int i = 0; i < n_; ++i)
        if (img_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

Perm Perm::inverse() const {
    Perm r;
    r.n_ = n_;
    for (int i = 0; i < n_; ++i) r.img_[img_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    return r;
}

std::vector<int> Perm::images() const {
    return std::vector<int>(img_.begin(), img_.begin() + n_);
}

std::string Perm::cycles() const {
    std::string out;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n_; ++i) {
        if (seen[static_cast<std::size_t>(i)] || (*this)[i] == i) continue;
        out += '(';
        int k = i;
        bool first = true;
        while (!seen[static_cast<std::size_t>(k)]) {
            seen[static_cast<std::size_t>(k)] = true;
            if (!first) out += ' ';
            out += std::to_string(k + 1);
            first = false;
            k = (*this)[k];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Perm operator*(const Perm& a, const Perm& b) {
    assert(a.n_ == b.n_);
    Perm r;
    r.n_ = a.n_;
    for (int i = 0; i < a.n_; ++i) r.img_[static_cast<std::size_t>(i)] = a.img_[b.img_[static_cast<std::size_t>(i)]];
    return r;
}

std::size_t Perm::hash() const {
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (int i = 0; i < n_; ++i) {
        h ^= img_[static_cast<std::size_t>(i)];
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

std::vector<Perm> all_perms(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    std::vector<Perm> out;
    out.reserve(static_cast<std::size_t>(factorial(n)));
    do {
        out.emplace_back(std::span<const int>(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

std::uint64_t perm_rank(const Perm& p) {
    const int n = p.degree();
    std::uint64_t rank = 0;
    std::uint32_t used = 0;
    for (int i = 0; i < n; ++i) {
        const int v = p[i];
        int smaller = 0;
        for (int u = 0; u < v; ++u)
            if (!(used & (1u << u))) ++smaller;
        rank = rank * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
        used |= 1u << v;
    }
    return rank;
}

Perm perm_unrank(int n, std::uint64_t rank) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        const auto base = static_cast<std::uint64_t>(n - i);
        digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
        rank /= base;
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> img;
    img.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto it = pool.begin() + digits[static_cast<std::size_t>(i)];
        img.push_back(*it);
        pool.erase(it);
    }
    return Perm(std::span<const int>(img));
}

Perm block_sum(std::span<const Perm> parts) {
    std::vector<int> img;
    int offset = 0;
    for (const Perm& p : parts) {
        for (int i = 0; i < p.degree(); ++i) img.push_back(offset + p[i]);
        offset += p.degree();
    }
    return Perm(std::span<const int>(img));
}

Perm block_perm(const Perm& s, std::span<const int> sizes) {
    const int k = s.degree();
    assert(static_cast<int>(sizes.size()) == k);
    // Target block at position m has the size of the source block sent to m.
    std::vector<int> target_offset(static_cast<std::size_t>(k), 0);
    const Perm sinv = s.inverse();
    int off = 0;
    for (int m = 0; m < k; ++m) {
        target_offset[static_cast<std::size_t>(m)] = off;
        off += sizes[static_cast<std::size_t>(sinv[m])];
    }
    std::vector<int> img;
    img.reserve(static_cast<std::size_t>(off));
    for (int b = 0; b < k; ++b)
        for (int t = 0; t < sizes[static_cast<std::size_t>(b)]; ++t)
            img.push_back(target_offset[static_cast<std::size_t>(s[b])] + t);
    return Perm(std::span<const int>(img));
}

}  // namespace eqcat
