#pragma once

// Concrete realizations of finite Coxeter groups: Todd-Coxeter coset
// enumeration over parabolic subgroups, permutation representations,
// element stores and cyclic Sylow subgroups with their normalizer action.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "coxhom/coxeter.hpp"
#include "coxhom/error.hpp"

namespace coxhom {

inline constexpr std::size_t kDefaultMaxCosetRows = 8'000'000;
inline constexpr std::size_t kDefaultMaxElements = 5'000'000;

/// Closed coset table for W/W_T under the right action of the generators.
/// Rows are numbered in BFS order from the subgroup coset (row 0).
class CosetTable {
public:
    CosetTable() = default;
    CosetTable(std::size_t generators, ParabolicSubset subgroup, std::vector<std::uint32_t> action);

    std::size_t rows() const { return generators_ ? action_.size() / generators_ : 1; }
    std::size_t generators() const { return generators_; }
    ParabolicSubset subgroup() const { return subgroup_; }
    std::uint32_t act(std::size_t row, std::size_t gen) const { return action_[row * generators_ + gen]; }

private:
    std::size_t generators_ = 0;
    ParabolicSubset subgroup_;
    std::vector<std::uint32_t> action_;  // row-major rows x generators
};

/// HLT coset enumeration of the Coxeter presentation relative to W_T.
/// Throws BudgetExceeded when more than max_rows cosets are live at once.
CosetTable coset_enumerate(const CoxeterMatrix& m, ParabolicSubset T, std::size_t max_rows = kDefaultMaxCosetRows);

using Perm = std::vector<std::uint32_t>;  // image of each point

struct PermRep {
    std::size_t degree = 0;
    std::vector<Perm> gens;  // one involution per Coxeter generator
    ParabolicSubset stabilizer;
};

/// Action of W on the cosets of W_T.
PermRep perm_rep(const CoxeterMatrix& m, ParabolicSubset T, std::size_t max_rows = kDefaultMaxCosetRows);

/// Deduplicated closure of a permutation representation under right
/// multiplication by the generators, in BFS order. Points are stored as bytes,
/// so the degree is limited to 256.
class ElementStore {
public:
    static constexpr std::size_t kMaxDegree = 256;
    static constexpr std::uint32_t kFormatVersion = 1;

    std::size_t size() const { return lengths_.size(); }
    std::size_t degree() const { return degree_; }
    std::span<const std::uint8_t> element(std::size_t i) const { return {data_.data() + i * degree_, degree_}; }
    unsigned word_length(std::size_t i) const { return lengths_[i]; }
    /// Index of a permutation in the store, or size() when absent.
    std::size_t find(std::span<const std::uint8_t> perm) const;

    void save(const std::filesystem::path& path, const std::string& key) const;
    /// Throws Error on missing file, key mismatch or a version other than kFormatVersion.
    static ElementStore load(const std::filesystem::path& path, const std::string& key);

    friend ElementStore enumerate_elements(const PermRep& r, std::size_t max_elems);

private:
    std::size_t insert(std::span<const std::uint8_t> perm, unsigned length);  // returns index; size() before if new
    void rehash(std::size_t slots);
    std::size_t slot_of(std::span<const std::uint8_t> perm) const;

    std::size_t degree_ = 0;
    std::vector<std::uint8_t> data_;
    std::vector<std::uint16_t> lengths_;
    std::vector<std::uint32_t> slots_;  // open addressing, UINT32_MAX = empty
};

/// Throws BudgetExceeded when the closure grows past max_elems.
ElementStore enumerate_elements(const PermRep& r, std::size_t max_elems = kDefaultMaxElements);

/// A faithful permutation realization certified by the element count.
struct Realization {
    PermRep rep;
    ElementStore store;
    std::size_t attempts = 0;  // representations tried, including the faithful one
};

/// Tries maximal proper parabolics by increasing index, then the regular
/// representation, until the element count equals |W|.
/// Throws DomainError for infinite W, BudgetExceeded when |W| > max_elems.
Realization realize(const CoxeterMatrix& m, std::size_t max_elems = kDefaultMaxElements);

struct CyclicSylow {
    std::vector<std::uint8_t> generator;
    std::uint64_t prime = 0;
    unsigned exponent = 0;    // a, with |P| = p^a
    std::uint64_t order = 1;  // p^a
    unsigned e = 0;           // order of the normalizer's image in Aut(P)
    std::vector<std::uint64_t> automorphism_exponents;  // the d with x -> x^d realized by N(P), ascending
    std::size_t normalizer_order = 0;
};

class SylowNotCyclic : public Error {
public:
    using Error::Error;
};

/// Scans element orders in store order for an element of order p^a, then
/// scans the whole store for the normalizer of <x>.
/// Throws DomainError if p does not divide |W|, SylowNotCyclic if no element has order p^a.
CyclicSylow find_cyclic_sylow(const ElementStore& store, long long p);

/// Order of a permutation as an integer (lcm of cycle lengths).
std::uint64_t perm_order(std::span<const std::uint8_t> perm);

}  // namespace coxhom
