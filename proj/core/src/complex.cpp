#include "coxhom/complex.hpp"

#include <algorithm>
#include <string>

#include "coxhom/error.hpp"

namespace coxhom {

namespace {

int face_sign(std::size_t position) { return position % 2 == 0 ? 1 : -1; }

// Generators outside T in ascending order: the vertex types of a simplex of type T.
std::vector<std::size_t> vertex_types(ParabolicSubset T, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < n; ++s)
        if (!T.contains(s)) out.push_back(s);
    return out;
}

}  // namespace

Integer simplex_count(const CoxeterMatrix& m) {
    const auto o = order(m);
    if (o.infinite) throw DomainError("the Coxeter complex of an infinite group is infinite");
    Integer total = 0;
    const auto full = ParabolicSubset::full(m.rank());
    for (std::uint32_t bits = 0; bits < full.bits(); ++bits)
        total += o.value / order(restrict(m, ParabolicSubset(bits)).matrix).value;
    return total;
}

long long ComplexIndex::euler_characteristic() const {
    long long chi = 0;
    for (std::size_t k = 0; k < counts_.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(counts_[k]);
    return chi;
}

CosetSimplex ComplexIndex::simplex(std::size_t k, std::size_t idx) const {
    for (auto T : types_.at(k)) {
        const auto off = offsets_.at(T);
        if (idx < off + tables_.at(T).rows()) return {T, static_cast<std::uint32_t>(idx - off)};
    }
    throw DomainError("simplex index out of range");
}

const std::vector<std::uint32_t>& ComplexIndex::face_map(ParabolicSubset T, std::size_t s) const {
    return face_maps_.at({T, s});
}

ComplexIndex build_complex(const CoxeterMatrix& m, std::size_t max_simplices, std::size_t max_coset_rows) {
    const auto n = m.rank();
    if (n == 0) throw DomainError("the Coxeter complex of the trivial group is empty");
    const auto total = simplex_count(m);
    if (total > max_simplices)
        throw BudgetExceeded("Coxeter complex has " + total.str() + " simplices, budget " + std::to_string(max_simplices));

    ComplexIndex X;
    X.matrix_ = m;
    X.order_ = order(m).value;
    X.types_.assign(n, {});
    X.counts_.assign(n, 0);
    const auto full = ParabolicSubset::full(n);
    for (std::uint32_t bits = 0; bits < full.bits(); ++bits) {
        const ParabolicSubset T(bits);
        const std::size_t k = n - T.size() - 1;
        auto table = coset_enumerate(m, T, max_coset_rows);
        const auto expected = X.order_ / order(restrict(m, T).matrix).value;
        if (Integer(table.rows()) != expected)
            throw ContractViolation("|W/W_T| = " + std::to_string(table.rows()) + " for T = " + T.to_string() +
                                    ", expected " + expected.str());
        X.types_[k].push_back(T);
        X.offsets_[T] = X.counts_[k];
        X.counts_[k] += table.rows();
        X.tables_.emplace(T, std::move(table));
    }

    // wW_T -> wW_{T+s}. Row r of a table is reached from row 0 by a word; the
    // same word applied to row 0 of the coarser table gives the image.
    for (const auto& [T, table] : X.tables_) {
        for (auto s : vertex_types(T, n)) {
            const auto U = T.with(s);
            if (U == full) continue;
            const auto& coarse = X.tables_.at(U);
            std::vector<std::uint32_t> proj(table.rows(), UINT32_MAX);
            std::vector<std::uint32_t> queue{0};
            proj[0] = 0;
            for (std::size_t q = 0; q < queue.size(); ++q) {
                const auto r = queue[q];
                for (std::size_t x = 0; x < n; ++x) {
                    const auto r2 = table.act(r, x);
                    const auto image = coarse.act(proj[r], x);
                    if (proj[r2] == UINT32_MAX) {
                        proj[r2] = image;
                        queue.push_back(r2);
                    } else if (proj[r2] != image) {
                        throw ContractViolation("coset projection is not well defined");
                    }
                }
            }
            X.face_maps_.emplace(std::make_pair(T, s), std::move(proj));
        }
    }
    return X;
}

ChainComplex boundary_matrices(const ComplexIndex& X) {
    const auto n = X.generators();
    ChainComplex c;
    c.ranks = X.f_vector();
    for (std::size_t k = 1; k < n; ++k) {
        IntMatrix d(X.count(k - 1), X.count(k));
        for (auto T : X.types(k)) {
            const auto types = vertex_types(T, n);
            const auto rows = X.table(T).rows();
            for (std::size_t pos = 0; pos < types.size(); ++pos) {
                const auto U = T.with(types[pos]);
                const auto& proj = X.face_map(T, types[pos]);
                for (std::uint32_t r = 0; r < rows; ++r)
                    d.set(X.index(U, proj[r]), X.index(T, r), face_sign(pos));
            }
        }
        c.boundaries.push_back(std::move(d));
    }
    c.validate();
    return c;
}

ChainComplex fundamental_domain_chain(const CoxeterMatrix& m) {
    const auto n = m.rank();
    if (n == 0) throw DomainError("Δ_W is empty for the trivial group");
    std::vector<std::vector<ParabolicSubset>> types(n);
    std::map<ParabolicSubset, std::size_t> position;
    const auto full = ParabolicSubset::full(n);
    for (std::uint32_t bits = 0; bits < full.bits(); ++bits) {
        const ParabolicSubset T(bits);
        auto& list = types[n - T.size() - 1];
        position[T] = list.size();
        list.push_back(T);
    }
    ChainComplex c;
    for (const auto& list : types) c.ranks.push_back(list.size());
    for (std::size_t k = 1; k < n; ++k) {
        IntMatrix d(c.ranks[k - 1], c.ranks[k]);
        for (auto T : types[k]) {
            const auto vt = vertex_types(T, n);
            for (std::size_t pos = 0; pos < vt.size(); ++pos)
                d.set(position.at(T.with(vt[pos])), position.at(T), face_sign(pos));
        }
        c.boundaries.push_back(std::move(d));
    }
    c.validate();
    return c;
}

ChainComplex orbit_chain_complex(const ComplexIndex& X) {
    const auto n = X.generators();
    const auto full_chain = boundary_matrices(X);
    ChainComplex orbit;
    for (std::size_t k = 0; k < n; ++k) orbit.ranks.push_back(X.types(k).size());

    for (std::size_t k = 1; k < n; ++k) {
        const auto& d = full_chain.boundaries[k - 1];
        // Orbit (= type) of each (k-1)-simplex.
        std::vector<std::size_t> orbit_of(X.count(k - 1));
        const auto& lower = X.types(k - 1);
        for (std::size_t t = 0; t < lower.size(); ++t) {
            const auto off = X.index(lower[t], 0);
            std::fill_n(orbit_of.begin() + static_cast<std::ptrdiff_t>(off), X.table(lower[t]).rows(), t);
        }
        IntMatrix od(orbit.ranks[k - 1], orbit.ranks[k]);
        const auto& upper = X.types(k);
        for (std::size_t t = 0; t < upper.size(); ++t) {
            const auto T = upper[t];
            std::map<std::size_t, Integer> reference;
            for (std::uint32_t r = 0; r < X.table(T).rows(); ++r) {
                std::map<std::size_t, Integer> summed;
                for (const auto& [row, v] : d.column(X.index(T, r))) summed[orbit_of[row]] += v;
                std::erase_if(summed, [](const auto& kv) { return kv.second == 0; });
                if (r == 0)
                    reference = summed;
                else if (summed != reference)
                    throw ContractViolation("induced differential depends on the orbit representative");
            }
            for (const auto& [row, v] : reference) od.set(row, t, v);
        }
        orbit.boundaries.push_back(std::move(od));
    }
    orbit.validate();

    const auto delta = fundamental_domain_chain(X.matrix());
    if (orbit.ranks != delta.ranks || orbit.boundaries != delta.boundaries)
        throw ContractViolation("orbit chain complex differs from the chain complex of Δ_W");
    return orbit;
}

int generator_action_on_top(const ComplexIndex& X, std::size_t s) {
    const auto n = X.generators();
    if (s >= n) throw DomainError("generator index out of range");
    const auto& top = X.table(ParabolicSubset());
    const auto N = top.rows();
    std::vector<long long> z(N, 0);

    if (n == 1) {
        // Reduced H_0 of two points: the kernel of the augmentation.
        if (N != 2) throw ContractViolation("rank-one complex must have two vertices");
        z = {1, -1};
    } else {
        // Every codimension-one simplex lies in exactly two top simplices, so a
        // cycle is determined by its value on one chamber: the cycle space has
        // rank at most one, and exactly one if the propagation is consistent.
        const auto d = boundary_matrices(X).boundaries.back();
        const auto dt = d.transpose();
        std::vector<bool> seen(N, false);
        std::vector<std::size_t> queue{0};
        z[0] = 1;
        seen[0] = true;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const auto c = queue[q];
            for (const auto& [f, a] : d.column(c)) {
                const auto& row = dt.column(f);
                if (row.size() != 2) throw ContractViolation("top simplices do not form a pseudomanifold");
                for (const auto& [c2, a2] : row) {
                    if (c2 == c) continue;
                    const long long value = -static_cast<long long>(a) * z[c] * static_cast<long long>(a2);
                    if (!seen[c2]) {
                        seen[c2] = true;
                        z[c2] = value;
                        queue.push_back(c2);
                    } else if (z[c2] != value) {
                        throw ContractViolation("top homology is zero: no consistent fundamental cycle");
                    }
                }
            }
        }
        if (queue.size() != N) throw ContractViolation("chamber graph is disconnected: top homology rank exceeds one");
    }

    // Left translation by s sends wW_∅ to swW_∅, preserving types and hence orientation.
    std::vector<long long> image(N, 0);
    for (std::uint32_t r = 0; r < N; ++r) image[top.act(r, s)] += z[r];
    const long long lambda = image[0] * z[0];
    if (lambda != 1 && lambda != -1) throw ContractViolation("generator does not act by ±1 on the top class");
    for (std::size_t r = 0; r < N; ++r)
        if (image[r] != lambda * z[r]) throw ContractViolation("image of the fundamental cycle is not a multiple of it");
    return static_cast<int>(lambda);
}

PGroup top_coinvariants(const ComplexIndex& X, long long p) {
    std::vector<int> degrees;
    for (std::size_t s = 0; s < X.generators(); ++s) degrees.push_back(generator_action_on_top(X, s));
    return rank_one_coinvariants(degrees, p);
}

bool base_row_check(const CoxeterMatrix& m, std::size_t max_simplices) {
    const auto X = build_complex(m, max_simplices);
    return chain_homology(orbit_chain_complex(X)) == point_homology(X.dimension());
}

void write_triplets(std::ostream& out, const ComplexIndex& X, const ChainComplex& c) {
    out << "# f-vector";
    for (auto f : X.f_vector()) out << ' ' << f;
    out << "\n# k row col value (entries of d_k : C_k -> C_{k-1})\n";
    for (std::size_t k = 1; k <= c.boundaries.size(); ++k) {
        const auto& d = c.boundaries[k - 1];
        for (std::size_t col = 0; col < d.cols(); ++col)
            for (const auto& [row, v] : d.column(col)) out << k << ' ' << row << ' ' << col << ' ' << v << '\n';
    }
}

}  // namespace coxhom
