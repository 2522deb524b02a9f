#pragma once

// Coxeter matrices, their irreducible decomposition and the combinatorial
// predicates used by the homology engine (p-freeness, asphericity, p-torsion).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxhom/arith.hpp"

namespace coxhom {

/// Entry m(s,t) of a Coxeter matrix: a positive integer or infinity.
/// Infinity is a separate state, never encoded as a number.
class Label {
public:
    constexpr Label() = default;
    static constexpr Label finite(std::uint32_t m) { return Label(m, false); }
    static constexpr Label infinity() { return Label(0, true); }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    /// Throws DomainError for infinity.
    std::uint32_t value() const;

    /// Finite and divisible by p. Infinity is prime to every prime.
    bool divisible_by(std::uint64_t p) const { return !infinite_ && value_ % p == 0; }

    std::string to_string() const;

    friend constexpr bool operator==(Label, Label) = default;

private:
    constexpr Label(std::uint32_t v, bool inf) : value_(v), infinite_(inf) {}
    std::uint32_t value_ = 1;
    bool infinite_ = false;
};

/// A subset of the generator indices {0, ..., n-1}, n <= 32.
class ParabolicSubset {
public:
    constexpr ParabolicSubset() = default;
    constexpr explicit ParabolicSubset(std::uint32_t bits) : bits_(bits) {}
    static constexpr ParabolicSubset full(std::size_t n) {
        return ParabolicSubset(n >= 32 ? ~0u : ((1u << n) - 1u));
    }
    static ParabolicSubset of(std::initializer_list<std::size_t> members);

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool contains(std::size_t s) const { return (bits_ >> s) & 1u; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr ParabolicSubset with(std::size_t s) const { return ParabolicSubset(bits_ | (1u << s)); }
    constexpr ParabolicSubset without(std::size_t s) const { return ParabolicSubset(bits_ & ~(1u << s)); }
    constexpr bool is_subset_of(ParabolicSubset o) const { return (bits_ & ~o.bits_) == 0; }

    std::vector<std::size_t> members() const;
    std::string to_string() const;  // "{0,2,3}"

    friend constexpr bool operator==(ParabolicSubset, ParabolicSubset) = default;
    friend constexpr auto operator<=>(ParabolicSubset a, ParabolicSubset b) { return a.bits_ <=> b.bits_; }

private:
    std::uint32_t bits_ = 0;
};

/// Symmetric matrix m : S x S -> {1, 2, 3, ...} ∪ {∞} with m(s,s) = 1 and m(s,t) >= 2 off the diagonal.
class CoxeterMatrix {
public:
    static constexpr std::size_t kDefaultMaxRank = 16;
    static constexpr std::size_t kHardMaxRank = 32;

    /// Rank-n matrix with every off-diagonal entry 2 (no edges).
    explicit CoxeterMatrix(std::size_t rank = 0);

    std::size_t rank() const { return rank_; }
    Label operator()(std::size_t s, std::size_t t) const { return entries_[s * rank_ + t]; }

    /// Sets m(s,t) = m(t,s). Rejects s == t and labels below 2.
    void set(std::size_t s, std::size_t t, Label m);

    bool is_edge(std::size_t s, std::size_t t) const;  // m(s,t) >= 3 or infinite

    /// Text form accepted by parse_coxeter.
    std::string to_text() const;

    friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

private:
    std::size_t rank_;
    std::vector<Label> entries_;
};

/// Parses "<n>" followed by "<s> <t> <m|inf>" lines; '#' starts a comment.
/// Unlisted pairs default to 2. Throws ParseError.
CoxeterMatrix parse_coxeter(std::string_view text, std::size_t max_rank = CoxeterMatrix::kDefaultMaxRank);

enum class Family { A, B, D, E, F, H, I2, Infinite };

/// Irreducible type. A rank-2 finite component is canonicalized as A2 (q=3), B2 (q=4) or I2(q) with q >= 5.
struct IrredType {
    Family family = Family::A;
    unsigned rank = 1;       // number of generators
    unsigned parameter = 0;  // q for I2(q); unused otherwise

    static IrredType A(unsigned n) { return {Family::A, n, 0}; }
    static IrredType B(unsigned n) { return {Family::B, n, 0}; }
    static IrredType D(unsigned n) { return {Family::D, n, 0}; }
    static IrredType E(unsigned n) { return {Family::E, n, 0}; }
    static IrredType F4() { return {Family::F, 4, 0}; }
    static IrredType H(unsigned n) { return {Family::H, n, 0}; }
    static IrredType I2(unsigned q);  // canonicalizes q = 3, 4
    static IrredType infinite(unsigned rank) { return {Family::Infinite, rank, 0}; }

    bool is_finite() const { return family != Family::Infinite; }
    /// "A4", "I2(7)", "E6"; infinite components print as "Inf<rank>".
    std::string label() const;

    friend bool operator==(const IrredType&, const IrredType&) = default;
};

struct Component {
    IrredType type;
    ParabolicSubset generators;  // indices in the decomposed matrix
};

/// Connected components of the Coxeter graph, ordered by smallest generator.
struct TypeDecomposition {
    std::vector<Component> components;

    bool is_finite() const;
    /// Component labels joined by "x" in component order, "1" for rank 0.
    std::string label(std::string_view separator = "x") const;
    /// Same as label() with component labels sorted; identifies the group up to isomorphism.
    std::string canonical_label() const;
};

/// Group order with its prime factorization, or the symbol infinity.
struct FactoredOrder {
    bool infinite = false;
    Integer value = 1;
    Factorization factors;

    static FactoredOrder infinity() { return {true, 0, {}}; }
    unsigned valuation(std::uint64_t p) const;
    /// "51840 = 2^7·3^4·5", "2 = 2", "∞"
    std::string to_string() const;
};

/// Standard Coxeter matrix of a catalog name ("A4", "E7", "I2(9)", "B3xA1"; "×" also accepted).
CoxeterMatrix catalog(std::string_view name);

TypeDecomposition decompose(const CoxeterMatrix& m);

FactoredOrder order(const IrredType& t);
FactoredOrder order(const TypeDecomposition& d);
FactoredOrder order(const CoxeterMatrix& m);

/// No finite off-diagonal label divisible by p. Throws DomainError unless p is an odd prime.
bool is_p_free(const CoxeterMatrix& m, long long p);

/// Every triple satisfies 1/m(s,t) + 1/m(t,u) + 1/m(u,s) <= 1 (with 1/∞ = 0). Vacuous below rank 3.
bool is_aspherical(const CoxeterMatrix& m);

/// Some finite parabolic W_T has order divisible by p. Scans all 2^n subsets.
bool has_p_torsion(const CoxeterMatrix& m, long long p, std::size_t max_rank = CoxeterMatrix::kDefaultMaxRank);

/// n_1(W): components of the graph whose edges are the finite odd labels.
std::size_t odd_graph_components(const CoxeterMatrix& m);

struct Restriction {
    CoxeterMatrix matrix;
    std::vector<std::size_t> parent_index;  // local generator -> parent generator
};

Restriction restrict(const CoxeterMatrix& m, ParabolicSubset T);

/// Odd primes dividing some finite label of m, ascending.
std::vector<std::uint64_t> torsion_label_primes(const CoxeterMatrix& m);

/// "p≥5", "p≥3", "p∤9 i.e. p≠3", "p∤75 i.e. p∉{3,5}"...
std::string describe_p_freeness(const CoxeterMatrix& m);

void to_json(nlohmann::json& j, const CoxeterMatrix& m);
void from_json(const nlohmann::json& j, CoxeterMatrix& m);
void to_json(nlohmann::json& j, const TypeDecomposition& d);

}  // namespace coxhom
