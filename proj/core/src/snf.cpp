#include "coxhom/snf.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <utility>

#include <boost/integer/common_factor.hpp>

namespace coxhom {

std::vector<Integer> SNFResult::torsion() const {
    std::vector<Integer> out;
    for (const auto& d : diagonal)
        if (d != 1) out.push_back(d);
    return out;
}

namespace {

using Entry = std::pair<std::uint32_t, Integer>;
using Row = std::vector<Entry>;  // sorted by column

const Integer* find_in_row(const Row& row, std::uint32_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const Entry& e, std::uint32_t c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// Dense reduction of whatever the sparse phase could not pivot on.
// TODO: entries grow without bound on generic dense residues (n ~ 500 takes
// seconds); a determinant-modulus reduction would cap them.
std::vector<Integer> dense_diagonal(std::vector<std::vector<Integer>> a) {
    const std::size_t R = a.size(), C = R ? a.front().size() : 0;
    std::vector<Integer> diag;
    auto min_pivot = [&](std::size_t t, bool whole, std::size_t& bi, std::size_t& bj) {
        bool found = false;
        Integer best;
        auto consider = [&](std::size_t i, std::size_t j) {
            if (a[i][j] == 0) return;
            auto v = abs_value(a[i][j]);
            if (!found || v < best) {
                found = true;
                best = v;
                bi = i;
                bj = j;
            }
        };
        if (whole) {
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j) consider(i, j);
        } else {
            consider(t, t);
            for (std::size_t i = t + 1; i < R; ++i) consider(i, t);
            for (std::size_t j = t + 1; j < C; ++j) consider(t, j);
        }
        return found;
    };
    auto bring = [&](std::size_t t, std::size_t i, std::size_t j) {
        if (i != t) std::swap(a[i], a[t]);
        if (j != t)
            for (auto& row : a) std::swap(row[j], row[t]);
    };

    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        std::size_t bi = 0, bj = 0;
        if (!min_pivot(t, true, bi, bj)) break;
        bring(t, bi, bj);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a[i][t] == 0) continue;
                const Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < C; ++j)
                    if (a[t][j] != 0) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a[t][j] == 0) continue;
                const Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < R; ++i)
                    if (a[i][t] != 0) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
            min_pivot(t, false, bi, bj);
            bring(t, bi, bj);
        }
        diag.push_back(abs_value(a[t][t]));
    }
    return diag;
}

void normalize_chain(std::vector<Integer>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0) continue;
            const Integer g = boost::integer::gcd(d[i], d[j]);
            const Integer l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<Row> rows(R);
    std::vector<std::set<std::uint32_t>> colrows(C);
    for (std::size_t c = 0; c < C; ++c)
        for (const auto& [r, v] : m.column(c)) {
            rows[r].emplace_back(static_cast<std::uint32_t>(c), v);
            colrows[c].insert(r);
        }

    using Key = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    for (std::size_t c = 0; c < C; ++c)
        if (!colrows[c].empty()) heap.emplace(colrows[c].size(), static_cast<std::uint32_t>(c));

    std::size_t unit_pivots = 0;
    std::vector<std::uint32_t> touched;
    Row merged;
    while (!heap.empty()) {
        const auto [count, c] = heap.top();
        heap.pop();
        if (colrows[c].size() != count || count == 0) continue;

        std::uint32_t prow = 0;
        bool found = false;
        for (auto r : colrows[c]) {
            const auto* v = find_in_row(rows[r], c);
            if (abs_value(*v) != 1) continue;
            if (!found || rows[r].size() < rows[prow].size()) {
                prow = r;
                found = true;
            }
        }
        if (!found) continue;

        const Row pivot_row = std::move(rows[prow]);
        rows[prow].clear();
        const Integer pv = *find_in_row(pivot_row, c);
        touched.clear();
        for (const auto& [col, v] : pivot_row) {
            colrows[col].erase(prow);
            touched.push_back(col);
        }

        const std::vector<std::uint32_t> targets(colrows[c].begin(), colrows[c].end());
        for (auto r : targets) {
            const Integer f = *find_in_row(rows[r], c) * pv;  // pv = +-1, so a/pv = a*pv
            merged.clear();
            auto& row = rows[r];
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < pivot_row.size()) {
                if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
                    merged.push_back(std::move(row[i++]));
                } else if (i == row.size() || pivot_row[j].first < row[i].first) {
                    const auto col = pivot_row[j].first;
                    merged.emplace_back(col, -f * pivot_row[j].second);
                    colrows[col].insert(r);
                    ++j;
                } else {
                    const auto col = row[i].first;
                    Integer v = row[i].second - f * pivot_row[j].second;
                    if (v == 0)
                        colrows[col].erase(r);
                    else
                        merged.emplace_back(col, std::move(v));
                    ++i;
                    ++j;
                }
            }
            row.swap(merged);
        }
        ++unit_pivots;
        for (auto col : touched)
            if (!colrows[col].empty()) heap.emplace(colrows[col].size(), col);
    }

    // Residue: surviving rows restricted to surviving columns.
    std::vector<std::uint32_t> live_cols;
    for (std::size_t c = 0; c < C; ++c)
        if (!colrows[c].empty()) live_cols.push_back(static_cast<std::uint32_t>(c));
    std::vector<std::size_t> col_pos(C, 0);
    for (std::size_t k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = k;
    std::vector<std::vector<Integer>> dense;
    for (std::size_t r = 0; r < R; ++r) {
        if (rows[r].empty()) continue;
        std::vector<Integer> d(live_cols.size(), 0);
        for (const auto& [col, v] : rows[r]) d[col_pos[col]] = v;
        dense.push_back(std::move(d));
    }

    SNFResult out;
    out.diagonal.assign(unit_pivots, Integer(1));
    auto rest = dense_diagonal(std::move(dense));
    out.diagonal.insert(out.diagonal.end(), rest.begin(), rest.end());
    normalize_chain(out.diagonal);
    out.rank = out.diagonal.size();
    return out;
}

}  // namespace coxhom
