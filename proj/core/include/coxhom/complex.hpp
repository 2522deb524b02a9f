#pragma once

// The Coxeter complex X_W of a finite Coxeter group: simplices are the cosets
// wW_T (T a proper subset of S), ordered by reverse inclusion, with vertex
// types S \ T. Orientation: vertices are ordered by type, so the face that
// drops type s carries the sign (-1)^(position of s in S \ T).

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "coxhom/coxeter.hpp"
#include "coxhom/group.hpp"
#include "coxhom/homology.hpp"
#include "coxhom/int_matrix.hpp"

namespace coxhom {

inline constexpr std::size_t kDefaultMaxSimplices = 5'000'000;

struct CosetSimplex {
    ParabolicSubset type_complement;  // T
    std::uint32_t coset_row = 0;      // row of wW_T in the table for W/W_T
    friend bool operator==(const CosetSimplex&, const CosetSimplex&) = default;
};

class ComplexIndex {
public:
    const CoxeterMatrix& matrix() const { return matrix_; }
    std::size_t generators() const { return matrix_.rank(); }
    std::size_t dimension() const { return matrix_.rank() - 1; }
    const Integer& group_order() const { return order_; }

    /// Proper subsets T with |T| = |S| - k - 1, ascending by bitmask.
    const std::vector<ParabolicSubset>& types(std::size_t k) const { return types_[k]; }
    const CosetTable& table(ParabolicSubset T) const { return tables_.at(T); }

    std::size_t count(std::size_t k) const { return counts_[k]; }
    std::vector<std::size_t> f_vector() const { return counts_; }
    long long euler_characteristic() const;

    /// Position of (T, row) among the k-simplices, k = |S| - |T| - 1.
    std::size_t index(ParabolicSubset T, std::uint32_t row) const { return offsets_.at(T) + row; }
    CosetSimplex simplex(std::size_t k, std::size_t index) const;

    /// Row of wW_{T ∪ {s}} for each row wW_T.
    const std::vector<std::uint32_t>& face_map(ParabolicSubset T, std::size_t s) const;

    friend ComplexIndex build_complex(const CoxeterMatrix& m, std::size_t max_simplices, std::size_t max_coset_rows);

private:
    CoxeterMatrix matrix_;
    Integer order_;
    std::vector<std::vector<ParabolicSubset>> types_;
    std::map<ParabolicSubset, CosetTable> tables_;
    std::map<ParabolicSubset, std::size_t> offsets_;
    std::vector<std::size_t> counts_;
    std::map<std::pair<ParabolicSubset, std::size_t>, std::vector<std::uint32_t>> face_maps_;
};

/// Enumerates W/W_T for every proper T. The simplex count is computed from
/// group orders and checked against max_simplices before anything is built.
/// Throws DomainError for infinite W or rank 0, BudgetExceeded over budget.
ComplexIndex build_complex(const CoxeterMatrix& m, std::size_t max_simplices = kDefaultMaxSimplices,
                           std::size_t max_coset_rows = kDefaultMaxCosetRows);

/// Sum over proper T of |W|/|W_T|. Throws DomainError for infinite W.
Integer simplex_count(const CoxeterMatrix& m);

/// The chain complex C_*(X_W; Z). boundaries[k-1] = d_k. Asserts d d = 0.
ChainComplex boundary_matrices(const ComplexIndex& X);

/// The chain complex of the single simplex Δ_W = {W_T : T proper}, same orientation rule.
ChainComplex fundamental_domain_chain(const CoxeterMatrix& m);

/// C_*(X_W)_W: one basis element per orbit (i.e. per type T), differential
/// summed from the boundary of the orbit representative wW_T with w = 1.
/// Throws ContractViolation unless it coincides with fundamental_domain_chain.
ChainComplex orbit_chain_complex(const ComplexIndex& X);

/// Sign by which left translation by s acts on the fundamental class of
/// X_W ≅ S^{|S|-1} (reduced H_0 for rank 1). Throws ContractViolation if the
/// top cycle space is not rank one or the image is not ±(fundamental cycle).
int generator_action_on_top(const ComplexIndex& X, std::size_t s);

/// Coinvariants of H_{|S|-1}(X_W; Z_(p)) under W. Always trivial for odd p.
PGroup top_coinvariants(const ComplexIndex& X, long long p);

/// Homology of the orbit chain complex equals point homology.
bool base_row_check(const CoxeterMatrix& m, std::size_t max_simplices = kDefaultMaxSimplices);

/// "# f-vector ..." header, then one "k row col value" line per nonzero entry of d_k.
void write_triplets(std::ostream& out, const ComplexIndex& X, const ChainComplex& c);

}  // namespace coxhom
