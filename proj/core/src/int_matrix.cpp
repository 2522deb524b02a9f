#include "coxhom/int_matrix.hpp"

#include <string>

#include "coxhom/error.hpp"

namespace coxhom {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw DomainError("ragged dense matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] != 0) m.set(r, c, rows[r][c]);
    }
    return m;
}

std::size_t IntMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

Integer IntMatrix::get(std::size_t r, std::size_t c) const {
    const auto& col = cols_.at(c);
    auto it = col.find(static_cast<std::uint32_t>(r));
    return it == col.end() ? Integer(0) : it->second;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Integer& v) {
    if (r >= rows_ || c >= cols_.size()) throw DomainError("matrix index out of range");
    auto& col = cols_[c];
    if (v == 0)
        col.erase(static_cast<std::uint32_t>(r));
    else
        col[static_cast<std::uint32_t>(r)] = v;
}

void IntMatrix::add(std::size_t r, std::size_t c, const Integer& v) {
    if (r >= rows_ || c >= cols_.size()) throw DomainError("matrix index out of range");
    auto& col = cols_[c];
    auto [it, inserted] = col.try_emplace(static_cast<std::uint32_t>(r), v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) col.erase(it);
    } else if (v == 0) {
        col.erase(it);
    }
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols(), rows_);
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& [r, v] : cols_[c]) t.cols_[r].emplace(static_cast<std::uint32_t>(c), v);
    return t;
}

std::vector<std::vector<Integer>> IntMatrix::to_dense() const {
    std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols(), 0));
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& [r, v] : cols_[c]) d[r][c] = v;
    return d;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        auto& dst = out.cols_[c];
        for (const auto& [k, bv] : b.cols_[c])
            for (const auto& [r, av] : a.cols_[k]) {
                auto& slot = dst[r];
                slot += av * bv;
            }
        std::erase_if(dst, [](const auto& kv) { return kv.second == 0; });
    }
    return out;
}

void ChainComplex::validate() const {
    if (boundaries.size() + 1 != ranks.size() && !(ranks.empty() && boundaries.empty()))
        throw ContractViolation("chain complex: expected one boundary per positive degree");
    for (std::size_t k = 0; k < boundaries.size(); ++k) {
        const auto& d = boundaries[k];
        if (d.rows() != ranks[k] || d.cols() != ranks[k + 1])
            throw ContractViolation("chain complex: boundary d_" + std::to_string(k + 1) + " has the wrong shape");
    }
    for (std::size_t k = 1; k < boundaries.size(); ++k)
        if (!(boundaries[k - 1] * boundaries[k]).is_zero())
            throw ContractViolation("chain complex: d_" + std::to_string(k) + " d_" + std::to_string(k + 1) + " != 0");
}

}  // namespace coxhom
