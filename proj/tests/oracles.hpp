#pragma once

// Reference computations that share no code with the library.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxhom/int_matrix.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_int;

// Degrees of the basic invariants of the finite irreducible Coxeter groups.
inline std::vector<unsigned> invariant_degrees(char family, unsigned n) {
    std::vector<unsigned> d;
    switch (family) {
        case 'A':
            for (unsigned i = 2; i <= n + 1; ++i) d.push_back(i);
            break;
        case 'B':
            for (unsigned i = 1; i <= n; ++i) d.push_back(2 * i);
            break;
        case 'D':
            for (unsigned i = 1; i < n; ++i) d.push_back(2 * i);
            d.push_back(n);
            break;
        case 'E':
            if (n == 6) d = {2, 5, 6, 8, 9, 12};
            if (n == 7) d = {2, 6, 8, 10, 12, 14, 18};
            if (n == 8) d = {2, 8, 12, 14, 18, 20, 24, 30};
            break;
        case 'F': d = {2, 6, 8, 12}; break;
        case 'H':
            if (n == 3) d = {2, 6, 10};
            if (n == 4) d = {2, 12, 20, 30};
            break;
        case 'I': d = {2, n}; break;  // n is q here
    }
    return d;
}

inline Big order_from_degrees(const std::vector<unsigned>& d) {
    Big o = 1;
    for (auto x : d) o *= x;
    return o;
}

// Coefficients of prod_i (1 + q + ... + q^{d_i - 1}): elements by length.
inline std::vector<std::uint64_t> poincare(const std::vector<unsigned>& d) {
    std::vector<std::uint64_t> c{1};
    for (auto di : d) {
        std::vector<std::uint64_t> next(c.size() + di - 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (unsigned j = 0; j < di; ++j) next[i + j] += c[i];
        c = std::move(next);
    }
    return c;
}

inline Big det(std::vector<std::vector<Big>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    Big sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k the
// gcd of all k x k minors. Exponential; small matrices only.
inline std::vector<Big> invariant_factors(const std::vector<std::vector<long long>>& m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Big> out;
    Big prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        Big g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<Big>> sub(k, std::vector<Big>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
                g = boost::multiprecision::gcd(g, boost::multiprecision::abs(det(sub)));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// Rank over F_p (p prime, < 2^31).
inline std::size_t rank_mod(const coxhom::IntMatrix& m, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) {
            Big x = v % p;
            if (x < 0) x += p;
            a[r][c] = static_cast<std::uint64_t>(x);
        }
    auto inv = [p](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][c] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[rank]);
        const auto iv = inv(a[rank][c]);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (!a[r][c]) continue;
            const auto f = a[r][c] * iv % p;
            for (std::size_t j = c; j < m.cols(); ++j) a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

// dim H_k(C; F_p) for every k.
inline std::vector<std::size_t> betti_mod(const coxhom::ChainComplex& c, std::uint64_t p) {
    const std::size_t top = c.ranks.size();
    std::vector<std::size_t> r(top + 1, 0);  // r[k] = rank d_k
    for (std::size_t k = 1; k < top; ++k) r[k] = rank_mod(c.boundaries[k - 1], p);
    std::vector<std::size_t> b(top);
    for (std::size_t k = 0; k < top; ++k) b[k] = c.ranks[k] - r[k] - r[k + 1];
    return b;
}

// H_k(D_2q; Z_(p)) for odd p as the invariants of the reflection acting on
// H_k(Z/q; Z_(p)). H_{2i-1}(Z/q) = Z/q and the reflection acts by (-1)^i;
// invariants of Z/p^a under -1 are trivial for odd p. Returns the p-exponent.
inline unsigned dihedral_exponent(std::uint64_t q, std::uint64_t p, unsigned k) {
    if (k % 2 == 0) return 0;
    const unsigned i = (k + 1) / 2;
    if (i % 2 == 1) return 0;
    unsigned a = 0;
    while (q % p == 0) {
        q /= p;
        ++a;
    }
    return a;
}

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace oracle
