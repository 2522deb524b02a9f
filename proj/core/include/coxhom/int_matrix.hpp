#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "coxhom/arith.hpp"

namespace coxhom {

/// Sparse integer matrix, stored by column. Zero entries are never stored.
class IntMatrix {
public:
    using Column = std::map<std::uint32_t, Integer>;

    IntMatrix(std::size_t rows = 0, std::size_t cols = 0);
    static IntMatrix from_dense(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    Integer get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Integer& v);
    void add(std::size_t r, std::size_t c, const Integer& v);
    const Column& column(std::size_t c) const { return cols_[c]; }

    IntMatrix transpose() const;
    std::vector<std::vector<Integer>> to_dense() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_;
    std::vector<Column> cols_;
};

/// A chain complex C_0 <- C_1 <- ... <- C_d. boundaries[k-1] is the matrix of
/// d_k : C_k -> C_{k-1} (rows = ranks[k-1], cols = ranks[k]).
struct ChainComplex {
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> boundaries;

    /// Throws ContractViolation on shape mismatch or d_{k-1} d_k != 0.
    void validate() const;
};

}  // namespace coxhom
