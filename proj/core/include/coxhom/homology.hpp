#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxhom/arith.hpp"
#include "coxhom/coxeter.hpp"
#include "coxhom/int_matrix.hpp"

namespace coxhom {

/// Finite abelian p-group ⊕ Z/p^{e_i}, exponents kept in descending order.
class PGroup {
public:
    PGroup() = default;
    explicit PGroup(std::uint64_t prime, std::vector<unsigned> exponents = {});
    static PGroup trivial(std::uint64_t prime) { return PGroup(prime); }
    /// p-part of Z/n.
    static PGroup cyclic_p_part(std::uint64_t prime, const Integer& n);

    std::uint64_t prime() const { return prime_; }
    const std::vector<unsigned>& exponents() const { return exponents_; }
    bool is_trivial() const { return exponents_.empty(); }
    Integer order() const;

    PGroup operator+(const PGroup& o) const;  // direct sum
    PGroup& operator+=(const PGroup& o);
    /// A ⊗ B, which for finite cyclic p-groups is also Tor(A, B).
    PGroup tensor(const PGroup& o) const;

    /// "0", "Z/5", "(Z/5)^2", "Z/9 ⊕ Z/3"
    std::string to_string() const;

    friend bool operator==(const PGroup&, const PGroup&) = default;

private:
    void check_prime(const PGroup& o) const;
    std::uint64_t prime_ = 0;
    std::vector<unsigned> exponents_;
};

void to_json(nlohmann::json& j, const PGroup& g);
void from_json(const nlohmann::json& j, PGroup& g);

/// Integral homology of a chain complex, degree by degree.
struct HomologyGroups {
    struct Degree {
        std::size_t free_rank = 0;
        std::vector<Integer> torsion;  // divisibility chain, all > 1
        friend bool operator==(const Degree&, const Degree&) = default;
    };
    std::vector<Degree> degrees;

    /// "(Z,0,Z)", "(Z^2)", "(Z,Z/2)"
    std::string to_string() const;
    friend bool operator==(const HomologyGroups&, const HomologyGroups&) = default;
};

/// Homology of the sphere S^d (d >= 1) or of S^0 (Z^2 in degree 0), as a graded list of length d+1.
HomologyGroups sphere_homology(std::size_t d);
/// Z in degree 0, zero in degrees 1..d.
HomologyGroups point_homology(std::size_t d);

/// Throws ContractViolation when the complex is malformed or d d != 0.
HomologyGroups chain_homology(const ChainComplex& c);

/// Positive-degree p-local homology, H_k(W,Z_(p)) for 1 <= k <= max_degree.
/// Degree 0 is the rank-one free module and is not stored.
class GradedPLocal {
public:
    GradedPLocal() = default;
    GradedPLocal(std::uint64_t prime, unsigned max_degree);

    std::uint64_t prime() const { return prime_; }
    unsigned max_degree() const { return max_degree_; }
    /// Throws DomainError outside 1..max_degree.
    PGroup at(unsigned k) const;
    void set(unsigned k, const PGroup& g);
    const std::map<unsigned, PGroup>& nonzero() const { return groups_; }
    bool vanishes_through(unsigned k) const;

    friend bool operator==(const GradedPLocal&, const GradedPLocal&) = default;

private:
    std::uint64_t prime_ = 0;
    unsigned max_degree_ = 0;
    std::map<unsigned, PGroup> groups_;  // nontrivial degrees only
};

/// p-parts of torsion in degrees 1..max_degree. With group_homology set, a
/// nonzero free rank in positive degree is a ContractViolation.
GradedPLocal localize(const HomologyGroups& h, long long p, bool group_homology = true);

/// Künneth formula over Z_(p). Valid through the smaller of the two max degrees.
GradedPLocal kunneth(const GradedPLocal& left, const GradedPLocal& right);

/// Coinvariants of Z_(p) on which each generator acts by the given sign.
/// Trivial as soon as some generator acts by -1 (2 is a unit). Throws
/// ContractViolation for signs other than +-1 and for the trivial action.
PGroup rank_one_coinvariants(std::span<const int> action_degrees, long long p);

/// Source of H_j(W_T, Z_(p)) for the E^1 page; nullopt means unresolved.
using HomologyProvider = std::function<std::optional<PGroup>(const CoxeterMatrix& parabolic, unsigned degree)>;

/// E^1_{i,j} = ⊕_{|T| = |S|-i-1} H_j(W_T, Z_(p)) for 1 <= j <= kmax. Row 0 is
/// recorded by its free ranks. Differentials are not computed.
struct E1Page {
    std::uint64_t prime = 0;
    std::size_t rank = 0;
    unsigned kmax = 0;
    std::vector<std::size_t> base_ranks;             // j = 0, indexed by i
    std::map<std::pair<std::size_t, unsigned>, PGroup> entries;  // (i, j), j >= 1
    std::set<std::pair<std::size_t, unsigned>> unresolved;

    bool row_vanishes(unsigned j) const;
};

E1Page e1_page(const CoxeterMatrix& m, long long p, unsigned kmax, const HomologyProvider& provider);

}  // namespace coxhom
