#include "coxhom/arith.hpp"

#include "coxhom/error.hpp"

namespace coxhom {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_odd_prime(long long p) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw DomainError("expected an odd prime, got " + std::to_string(p));
}

Factorization factorize(std::uint64_t n) {
    Factorization f;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

Factorization factorial_factorization(unsigned n) {
    Factorization f;
    for (unsigned k = 2; k <= n; ++k) multiply_into(f, factorize(k));
    return f;
}

void multiply_into(Factorization& acc, const Factorization& f) {
    for (auto [p, e] : f) acc[p] += e;
}

Integer evaluate(const Factorization& f) {
    Integer v = 1;
    for (auto [p, e] : f)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0) return 0;
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned valuation(const Integer& n, std::uint64_t p) {
    if (n == 0) return 0;
    Integer m = n;
    unsigned v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::string format_factorization(const Factorization& f) {
    if (f.empty()) return "1";
    std::string out;
    for (auto [p, e] : f) {
        if (!out.empty()) out += "·";
        out += std::to_string(p);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace coxhom
