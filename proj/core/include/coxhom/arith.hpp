#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace coxhom {

using Integer = boost::multiprecision::cpp_int;

/// prime -> exponent
using Factorization = std::map<std::uint64_t, unsigned>;

bool is_prime(std::uint64_t n);

/// Throws DomainError unless p is an odd prime.
void require_odd_prime(long long p);

Factorization factorize(std::uint64_t n);
Factorization factorial_factorization(unsigned n);
void multiply_into(Factorization& acc, const Factorization& f);
Integer evaluate(const Factorization& f);

unsigned valuation(std::uint64_t n, std::uint64_t p);
unsigned valuation(const Integer& n, std::uint64_t p);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// "2^7·3^4·5"; "1" for the empty factorization.
std::string format_factorization(const Factorization& f);

}  // namespace coxhom
