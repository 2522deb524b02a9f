#pragma once

#include <vector>

#include "coxhom/arith.hpp"
#include "coxhom/int_matrix.hpp"

namespace coxhom {

/// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix (all positive).
struct SNFResult {
    std::vector<Integer> diagonal;
    std::size_t rank = 0;

    /// The factors that are not 1.
    std::vector<Integer> torsion() const;
};

/// Exact Smith normal form. Unit pivots are eliminated sparsely (Markowitz
/// order, ties by lowest column then lowest row); the remainder goes through a
/// dense smallest-magnitude-pivot reduction.
SNFResult smith_normal_form(const IntMatrix& m);

}  // namespace coxhom
