#include "coxhom/homology.hpp"

#include <algorithm>
#include <functional>

#include "coxhom/error.hpp"
#include "coxhom/snf.hpp"

namespace coxhom {

// ---------------------------------------------------------------------------
// PGroup

PGroup::PGroup(std::uint64_t prime, std::vector<unsigned> exponents) : prime_(prime), exponents_(std::move(exponents)) {
    if (std::any_of(exponents_.begin(), exponents_.end(), [](unsigned e) { return e == 0; }))
        throw DomainError("PGroup exponents must be positive");
    std::sort(exponents_.begin(), exponents_.end(), std::greater<>());
}

PGroup PGroup::cyclic_p_part(std::uint64_t prime, const Integer& n) {
    if (n == 0) throw DomainError("p-part of Z/0 is not finite");
    const auto v = valuation(n < 0 ? Integer(-n) : n, prime);
    return v ? PGroup(prime, {v}) : PGroup(prime);
}

Integer PGroup::order() const {
    Integer o = 1;
    for (auto e : exponents_) o *= ipow(prime_, e);
    return o;
}

void PGroup::check_prime(const PGroup& o) const {
    if (prime_ != o.prime_) throw DomainError("p-groups at different primes");
}

PGroup PGroup::operator+(const PGroup& o) const {
    PGroup r = *this;
    r += o;
    return r;
}

PGroup& PGroup::operator+=(const PGroup& o) {
    check_prime(o);
    exponents_.insert(exponents_.end(), o.exponents_.begin(), o.exponents_.end());
    std::sort(exponents_.begin(), exponents_.end(), std::greater<>());
    return *this;
}

PGroup PGroup::tensor(const PGroup& o) const {
    check_prime(o);
    std::vector<unsigned> out;
    for (auto a : exponents_)
        for (auto b : o.exponents_) out.push_back(std::min(a, b));
    return PGroup(prime_, std::move(out));
}

std::string PGroup::to_string() const {
    if (exponents_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < exponents_.size();) {
        std::size_t j = i;
        while (j < exponents_.size() && exponents_[j] == exponents_[i]) ++j;
        std::string cyc = "Z/" + std::to_string(ipow(prime_, exponents_[i]));
        if (!out.empty()) out += " ⊕ ";
        out += (j - i == 1) ? cyc : "(" + cyc + ")^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

void to_json(nlohmann::json& j, const PGroup& g) {
    j = nlohmann::json{{"prime", g.prime()}, {"exponents", g.exponents()}};
}

void from_json(const nlohmann::json& j, PGroup& g) {
    g = PGroup(j.at("prime").get<std::uint64_t>(), j.at("exponents").get<std::vector<unsigned>>());
}

// ---------------------------------------------------------------------------
// Integral homology

std::string HomologyGroups::to_string() const {
    std::string out = "(";
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        if (k) out += ",";
        const auto& d = degrees[k];
        std::vector<std::string> parts;
        if (d.free_rank == 1) parts.push_back("Z");
        if (d.free_rank > 1) parts.push_back("Z^" + std::to_string(d.free_rank));
        for (const auto& t : d.torsion) parts.push_back("Z/" + t.str());
        if (parts.empty()) parts.push_back("0");
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "⊕" : "") + parts[i];
    }
    return out + ")";
}

HomologyGroups sphere_homology(std::size_t d) {
    HomologyGroups h;
    h.degrees.resize(d + 1);
    if (d == 0) {
        h.degrees[0].free_rank = 2;
    } else {
        h.degrees[0].free_rank = 1;
        h.degrees[d].free_rank = 1;
    }
    return h;
}

HomologyGroups point_homology(std::size_t d) {
    HomologyGroups h;
    h.degrees.resize(d + 1);
    h.degrees[0].free_rank = 1;
    return h;
}

HomologyGroups chain_homology(const ChainComplex& c) {
    c.validate();
    const auto n = c.ranks.size();
    std::vector<SNFResult> snf;
    snf.reserve(c.boundaries.size());
    for (const auto& d : c.boundaries) snf.push_back(smith_normal_form(d));
    HomologyGroups h;
    h.degrees.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t rank_out = k == 0 ? 0 : snf[k - 1].rank;  // rank of d_k
        const std::size_t rank_in = k + 1 < n ? snf[k].rank : 0;     // rank of d_{k+1}
        h.degrees[k].free_rank = c.ranks[k] - rank_out - rank_in;
        if (k + 1 < n) h.degrees[k].torsion = snf[k].torsion();
    }
    return h;
}

// ---------------------------------------------------------------------------
// Graded p-local groups

GradedPLocal::GradedPLocal(std::uint64_t prime, unsigned max_degree) : prime_(prime), max_degree_(max_degree) {}

PGroup GradedPLocal::at(unsigned k) const {
    if (k == 0 || k > max_degree_)
        throw DomainError("degree " + std::to_string(k) + " outside 1.." + std::to_string(max_degree_));
    auto it = groups_.find(k);
    return it == groups_.end() ? PGroup::trivial(prime_) : it->second;
}

void GradedPLocal::set(unsigned k, const PGroup& g) {
    if (k == 0 || k > max_degree_)
        throw DomainError("degree " + std::to_string(k) + " outside 1.." + std::to_string(max_degree_));
    if (g.prime() != prime_) throw DomainError("p-group at the wrong prime");
    if (g.is_trivial())
        groups_.erase(k);
    else
        groups_[k] = g;
}

bool GradedPLocal::vanishes_through(unsigned k) const {
    return groups_.empty() || groups_.begin()->first > k;
}

GradedPLocal localize(const HomologyGroups& h, long long p, bool group_homology) {
    require_odd_prime(p);
    const auto up = static_cast<std::uint64_t>(p);
    const unsigned top = h.degrees.empty() ? 0 : static_cast<unsigned>(h.degrees.size() - 1);
    GradedPLocal out(up, top);
    for (unsigned k = 1; k <= top; ++k) {
        const auto& d = h.degrees[k];
        if (group_homology && d.free_rank != 0)
            throw ContractViolation("free summand in positive degree " + std::to_string(k));
        PGroup g = PGroup::trivial(up);
        for (const auto& t : d.torsion) g += PGroup::cyclic_p_part(up, t);
        out.set(k, g);
    }
    return out;
}

GradedPLocal kunneth(const GradedPLocal& left, const GradedPLocal& right) {
    if (left.prime() != right.prime()) throw DomainError("Künneth: prime mismatch");
    const auto p = left.prime();
    const unsigned top = std::min(left.max_degree(), right.max_degree());
    GradedPLocal out(p, top);
    std::map<unsigned, PGroup> acc;
    auto add = [&](unsigned k, const PGroup& g) {
        if (k == 0 || k > top || g.is_trivial()) return;
        auto [it, fresh] = acc.try_emplace(k, g);
        if (!fresh) it->second += g;
    };
    // H_0 = Z_(p) on both sides: Z ⊗ A = A and Tor(Z, A) = 0.
    for (const auto& [k, g] : left.nonzero()) add(k, g);
    for (const auto& [k, g] : right.nonzero()) add(k, g);
    for (const auto& [i, a] : left.nonzero())
        for (const auto& [j, b] : right.nonzero()) {
            const auto t = a.tensor(b);
            add(i + j, t);      // tensor
            add(i + j + 1, t);  // Tor
        }
    for (const auto& [k, g] : acc) out.set(k, g);
    return out;
}

PGroup rank_one_coinvariants(std::span<const int> action_degrees, long long p) {
    require_odd_prime(p);
    bool reflected = false;
    for (int d : action_degrees) {
        if (d != 1 && d != -1) throw ContractViolation("action degree " + std::to_string(d) + " is not +-1");
        reflected = reflected || d == -1;
    }
    if (!reflected) throw ContractViolation("trivial action on the top class: coinvariants would be Z_(p)");
    return PGroup::trivial(static_cast<std::uint64_t>(p));
}

bool E1Page::row_vanishes(unsigned j) const {
    for (const auto& [key, g] : entries)
        if (key.second == j && !g.is_trivial()) return false;
    for (const auto& key : unresolved)
        if (key.second == j) return false;
    return true;
}

E1Page e1_page(const CoxeterMatrix& m, long long p, unsigned kmax, const HomologyProvider& provider) {
    require_odd_prime(p);
    const auto n = m.rank();
    if (n == 0) throw DomainError("E^1 page of the trivial group");
    E1Page page;
    page.prime = static_cast<std::uint64_t>(p);
    page.rank = n;
    page.kmax = kmax;
    page.base_ranks.assign(n, 0);
    const auto full = ParabolicSubset::full(n);
    for (std::uint32_t bits = 0; bits < full.bits(); ++bits) {
        const ParabolicSubset T(bits);
        const std::size_t i = n - T.size() - 1;
        ++page.base_ranks[i];
        const auto sub = restrict(m, T).matrix;
        for (unsigned j = 1; j <= kmax; ++j) {
            auto g = provider(sub, j);
            const auto key = std::make_pair(i, j);
            if (!g) {
                page.unresolved.insert(key);
                continue;
            }
            auto [it, fresh] = page.entries.try_emplace(key, *g);
            if (!fresh) it->second += *g;
        }
    }
    return page;
}

}  // namespace coxhom
