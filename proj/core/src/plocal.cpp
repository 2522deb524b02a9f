#include "coxhom/plocal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "coxhom/error.hpp"

namespace coxhom {

unsigned default_max_degree(long long p) {
    require_odd_prime(p);
    return static_cast<unsigned>(2 * (p - 2));
}

namespace {

void require_degree(unsigned k) {
    if (k == 0) throw DomainError("degree 0 is the free part; positive degrees only");
}

std::uint64_t as_prime(long long p) {
    require_odd_prime(p);
    return static_cast<std::uint64_t>(p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed forms

PGroup cyclic_homology(const Integer& order, long long p, unsigned k) {
    const auto up = as_prime(p);
    require_degree(k);
    if (order <= 0) throw DomainError("cyclic group order must be positive");
    return k % 2 == 1 ? PGroup::cyclic_p_part(up, order) : PGroup::trivial(up);
}

PGroup dihedral_homology(std::uint64_t q, long long p, unsigned k) {
    const auto up = as_prime(p);
    require_degree(k);
    if (q < 2) throw DomainError("dihedral label must be at least 2");
    return k % 4 == 3 ? PGroup::cyclic_p_part(up, q) : PGroup::trivial(up);
}

PGroup swan_from_sylow(std::uint64_t sylow_order, std::uint64_t e, long long p, unsigned k) {
    const auto up = as_prime(p);
    require_degree(k);
    const auto a = valuation(sylow_order, up);
    if (a == 0 || ipow(up, a) != sylow_order)
        throw DomainError(std::to_string(sylow_order) + " is not a positive power of " + std::to_string(p));
    if (e == 0 || (ipow(up, a - 1) * (up - 1)) % e != 0)
        throw DomainError("e = " + std::to_string(e) + " does not divide p^(a-1)(p-1)");
    return (k + 1) % (2 * e) == 0 ? PGroup(up, {a}) : PGroup::trivial(up);
}

PGroup symmetric_homology(unsigned letters, long long p, unsigned k) {
    const auto up = as_prime(p);
    require_degree(k);
    if (letters < up) return PGroup::trivial(up);
    if (letters < 2 * up) return swan_from_sylow(up, up - 1, p, k);
    if (k <= 2 * (up - 2)) return PGroup::trivial(up);
    throw OutOfClosedFormRange("H_" + std::to_string(k) + "(S_" + std::to_string(letters) + ", Z_(" +
                               std::to_string(p) + ")) is beyond the vanishing range and the Sylow subgroup is not cyclic");
}

IrredType reduce_BD(const IrredType& t) {
    if (t.family == Family::B && t.rank >= 2) return IrredType::A(t.rank - 1);
    if (t.family == Family::D && t.rank >= 4) return IrredType::A(t.rank - 1);
    throw DomainError("reduce_BD applies to B_n (n>=2) and D_n (n>=4), not " + t.label());
}

std::optional<ParabolicSubset> transfer_reduction(const CoxeterMatrix& m, long long p) {
    const auto up = as_prime(p);
    const auto whole = order(m);
    if (whole.infinite) throw DomainError("transfer reduction needs a finite group");
    const auto v = whole.valuation(up);
    std::optional<ParabolicSubset> best;
    Integer best_order = 0;
    // Any T with full p-part is contained in a maximal proper one that also has it.
    for (std::size_t s = 0; s < m.rank(); ++s) {
        const auto T = ParabolicSubset::full(m.rank()).without(s);
        const auto o = order(restrict(m, T).matrix);
        if (o.valuation(up) != v) continue;
        if (!best || o.value > best_order || (o.value == best_order && T < *best)) {
            best = T;
            best_order = o.value;
        }
    }
    return best;
}

PGroup aspherical_homology(const CoxeterMatrix& m, long long p, unsigned k) {
    const auto up = as_prime(p);
    require_degree(k);
    if (!is_aspherical(m)) throw NotAspherical("some three-generator parabolic subgroup is finite");
    PGroup sum = PGroup::trivial(up);
    for (std::size_t s = 0; s < m.rank(); ++s)
        for (std::size_t t = s + 1; t < m.rank(); ++t)
            if (m(s, t).divisible_by(up)) sum += dihedral_homology(m(s, t).value(), p, k);
    return sum;
}

// ---------------------------------------------------------------------------
// Rules

namespace {

struct RuleInfo {
    Rule rule;
    std::string_view name;
    std::string_view citation;
};

constexpr RuleInfo kRules[] = {
    {Rule::NoPTorsion, "NoPTorsion",
     "Every finite subgroup of a Coxeter group lies in a conjugate of a finite parabolic subgroup; "
     "if no finite parabolic has order divisible by p, H_k(W,Z_(p)) = 0 for all k > 0."},
    {Rule::Kunneth, "Kunneth",
     "Künneth formula over the principal ideal domain Z_(p) for a direct product of Coxeter groups."},
    {Rule::ReduceB, "ReduceB",
     "W(B_n) is (Z/2)^n ⋊ S_n; the normal 2-subgroup is invisible p-locally, so H_*(W(B_n),Z_(p)) ≅ H_*(S_n,Z_(p))."},
    {Rule::ReduceD, "ReduceD",
     "W(D_n) is (Z/2)^(n-1) ⋊ S_n; the normal 2-subgroup is invisible p-locally, so H_*(W(D_n),Z_(p)) ≅ H_*(S_n,Z_(p))."},
    {Rule::Dihedral, "Dihedral",
     "H_k(W(I_2(q)),Z_(p)) is the p-part of Z/q for k ≡ 3 mod 4 and 0 otherwise."},
    {Rule::SymmetricSwan, "SymmetricSwan",
     "S_n has no p-torsion for n < p; for p <= n < 2p its Sylow p-subgroup is cyclic of order p with normalizer "
     "image all of Aut(C_p) (Swan); for n >= 2p, H_k(S_n,Z_(p)) = 0 for 1 <= k <= 2(p-2) (Nakaoka stability)."},
    {Rule::SwanCyclicSylow, "SwanCyclicSylow",
     "Swan: for a cyclic Sylow p-subgroup P of order p^a whose normalizer acts through a group of order e, "
     "H^n(G,Z)_(p) = H^n(P,Z)^N is Z/p^a iff 2e | n (n > 0); with H_k(G,Z_(p)) ≅ H^{k+1}(G,Z)_(p) this gives "
     "Z/p^a exactly when k ≡ 2e-1 mod 2e."},
    {Rule::TransferToParabolic, "TransferToParabolic",
     "For H < G of index prime to p, corestriction after transfer is multiplication by the index, so "
     "H_k(G,Z_(p)) embeds in H_k(H,Z_(p)); a parabolic with the full p-part of |W| forces vanishing."},
    {Rule::LerayInduction, "LerayInduction",
     "Leray spectral sequence E^1_{i,j} = ⊕_{|T|=|S|-i-1} H_j(W_T,Z_(p)) => H^W_{i+j}(X_W,Z_(p)) with E^2_{i,0} = 0 "
     "for i > 0; for finite W the equivariant homology agrees with H_k(W,Z_(p)) for k <= rank W - 1."},
    {Rule::AsphericalSum, "AsphericalSum",
     "For aspherical W, H_k(W,Z_(p)) ≅ ⊕ over pairs {s,t} with p | m(s,t) of H_k(W_{s,t},Z_(p))."},
    {Rule::LowDegreeHowlett, "LowDegreeHowlett",
     "H_1(W,Z) = (Z/2)^{n_1(W)} and H_2(W,Z) is an elementary abelian 2-group (Howlett), "
     "so H_1 and H_2 vanish with Z_(p) coefficients for odd p."},
};

const RuleInfo& info(Rule r) {
    for (const auto& i : kRules)
        if (i.rule == r) return i;
    throw std::logic_error("unknown rule");
}

}  // namespace

std::string_view rule_name(Rule r) { return info(r).name; }
std::string_view rule_citation(Rule r) { return info(r).citation; }

Rule rule_from_name(std::string_view name) {
    for (const auto& i : kRules)
        if (i.name == name) return i.rule;
    throw ParseError("unknown rule '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// PartialHomology

std::vector<unsigned> PartialHomology::unresolved() const {
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= max_degree; ++k)
        if (!resolved(k)) out.push_back(k);
    return out;
}

PGroup PartialHomology::at(unsigned k) const {
    auto it = values.find(k);
    if (it == values.end()) throw DomainError("degree " + std::to_string(k) + " is unresolved");
    return it->second;
}

bool PartialHomology::vanishes_through(unsigned k) const {
    for (unsigned d = 1; d <= k; ++d) {
        auto it = values.find(d);
        if (it == values.end() || !it->second.is_trivial()) return false;
    }
    return true;
}

GradedPLocal PartialHomology::graded() const {
    if (!complete()) throw DomainError("homology has unresolved degrees");
    GradedPLocal g(prime, max_degree);
    for (const auto& [k, v] : values) g.set(k, v);
    return g;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

nlohmann::json goal_to_json(const Goal& g) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [k, v] : g.result.values)
        values.push_back({{"degree", k}, {"group", v.to_string()}, {"exponents", v.exponents()}});
    nlohmann::json apps = nlohmann::json::array();
    for (const auto& a : g.applications) {
        nlohmann::json subs = nlohmann::json::array();
        for (const auto& s : a.subgoals) subs.push_back(goal_to_json(*s));
        apps.push_back({{"rule", rule_name(a.rule)},
                        {"citation", rule_citation(a.rule)},
                        {"degrees", a.degrees},
                        {"evidence", a.evidence},
                        {"subgoals", std::move(subs)}});
    }
    return {{"subject", g.subject},
            {"matrix", g.matrix},
            {"prime", g.result.prime},
            {"max_degree", g.result.max_degree},
            {"homology", std::move(values)},
            {"unresolved", g.result.unresolved()},
            {"applications", std::move(apps)}};
}

std::shared_ptr<const Goal> goal_from_json(const nlohmann::json& j) {
    auto g = std::make_shared<Goal>();
    g->subject = j.at("subject").get<std::string>();
    g->matrix = j.at("matrix").get<CoxeterMatrix>();
    g->result.prime = j.at("prime").get<std::uint64_t>();
    g->result.max_degree = j.at("max_degree").get<unsigned>();
    for (const auto& v : j.at("homology"))
        g->result.values.emplace(v.at("degree").get<unsigned>(),
                                 PGroup(g->result.prime, v.at("exponents").get<std::vector<unsigned>>()));
    for (const auto& a : j.at("applications")) {
        Application app{rule_from_name(a.at("rule").get<std::string>()), a.at("degrees").get<std::vector<unsigned>>(),
                        a.at("evidence"), {}};
        for (const auto& s : a.at("subgoals")) app.subgoals.push_back(goal_from_json(s));
        g->applications.push_back(std::move(app));
    }
    return g;
}

std::string type_key(const CoxeterMatrix& m) {
    const auto d = decompose(m);
    return d.is_finite() ? d.canonical_label() : m.to_text();
}

[[noreturn]] void replay_failure(const Goal& g, const Application& a, const std::string& why) {
    throw ContractViolation("replay of " + std::string(rule_name(a.rule)) + " on " + g.subject + " at p=" +
                            std::to_string(g.result.prime) + ": " + why);
}

class Replayer {
public:
    PartialHomology run(const Goal& g) {
        const auto key = g.subject + "|" + std::to_string(g.result.prime) + "|" + std::to_string(g.result.max_degree);
        if (auto it = done_.find(key); it != done_.end()) {
            if (it->second != g.result) throw ContractViolation("replay: inconsistent results for " + g.subject);
            return it->second;
        }
        auto r = replay_goal(g);
        done_.emplace(key, r);
        return r;
    }

private:
    PartialHomology replay_goal(const Goal& g) {
        const auto p = g.result.prime;
        if (type_key(g.matrix) != g.subject) throw ContractViolation("replay: subject does not match its matrix");
        PartialHomology out{p, g.result.max_degree, {}};
        for (const auto& a : g.applications) {
            std::vector<PartialHomology> subs;
            for (const auto& s : a.subgoals) {
                if (s->result.prime != p) replay_failure(g, a, "subgoal at a different prime");
                subs.push_back(run(*s));
            }
            for (auto k : a.degrees) {
                if (k == 0 || k > g.result.max_degree) replay_failure(g, a, "degree out of range");
                if (out.resolved(k)) replay_failure(g, a, "degree resolved twice");
            }
            auto values = evaluate(g, a, subs);
            for (auto k : a.degrees) {
                const auto& v = values.at(k);
                auto rec = g.result.values.find(k);
                if (rec == g.result.values.end() || rec->second != v)
                    replay_failure(g, a, "degree " + std::to_string(k) + " recomputes to " + v.to_string());
                out.values.emplace(k, v);
            }
        }
        if (out != g.result) throw ContractViolation("replay of " + g.subject + ": recorded degrees without a rule");
        return out;
    }

    static std::map<unsigned, PGroup> zeros(std::uint64_t p, const std::vector<unsigned>& degrees) {
        std::map<unsigned, PGroup> m;
        for (auto k : degrees) m.emplace(k, PGroup::trivial(p));
        return m;
    }

    static const IrredType& single_type(const Goal& g, const Application& a, const TypeDecomposition& d) {
        if (d.components.size() != 1) replay_failure(g, a, "rule needs an irreducible group");
        return d.components.front().type;
    }

    std::map<unsigned, PGroup> evaluate(const Goal& g, const Application& a, const std::vector<PartialHomology>& subs) {
        const auto p = g.result.prime;
        const auto lp = static_cast<long long>(p);
        const auto d = decompose(g.matrix);
        const auto kmax_used = a.degrees.empty() ? 0u : *std::max_element(a.degrees.begin(), a.degrees.end());
        std::map<unsigned, PGroup> out;
        switch (a.rule) {
            case Rule::NoPTorsion:
                if (has_p_torsion(g.matrix, lp, CoxeterMatrix::kHardMaxRank)) replay_failure(g, a, "W has p-torsion");
                return zeros(p, a.degrees);
            case Rule::LowDegreeHowlett:
                for (auto k : a.degrees)
                    if (k > 2) replay_failure(g, a, "only degrees 1 and 2");
                return zeros(p, a.degrees);
            case Rule::Kunneth: {
                if (d.components.size() < 2 || d.components.size() != a.subgoals.size())
                    replay_failure(g, a, "subgoals do not match the components");
                for (std::size_t i = 0; i < d.components.size(); ++i) {
                    const auto sub = restrict(g.matrix, d.components[i].generators).matrix;
                    if (type_key(sub) != a.subgoals[i]->subject) replay_failure(g, a, "component mismatch");
                }
                GradedPLocal acc(p, kmax_used);
                for (const auto& s : subs) {
                    GradedPLocal f(p, kmax_used);
                    for (unsigned k = 1; k <= kmax_used; ++k) {
                        if (!s.resolved(k)) replay_failure(g, a, "component unresolved below a claimed degree");
                        f.set(k, s.at(k));
                    }
                    acc = kunneth(acc, f);
                }
                for (auto k : a.degrees) out.emplace(k, acc.at(k));
                return out;
            }
            case Rule::ReduceB:
            case Rule::ReduceD: {
                const auto& t = single_type(g, a, d);
                if ((a.rule == Rule::ReduceB) != (t.family == Family::B)) replay_failure(g, a, "wrong family");
                if (a.subgoals.size() != 1 || a.subgoals[0]->subject != reduce_BD(t).label())
                    replay_failure(g, a, "subgoal is not the reduced type");
                for (auto k : a.degrees) {
                    if (!subs[0].resolved(k)) replay_failure(g, a, "reduced goal unresolved");
                    out.emplace(k, subs[0].at(k));
                }
                return out;
            }
            case Rule::Dihedral: {
                const auto& t = single_type(g, a, d);
                if (t.family != Family::I2) replay_failure(g, a, "not a dihedral type");
                for (auto k : a.degrees) out.emplace(k, dihedral_homology(t.parameter, lp, k));
                return out;
            }
            case Rule::SymmetricSwan: {
                const auto& t = single_type(g, a, d);
                if (t.family != Family::A) replay_failure(g, a, "not a symmetric group");
                for (auto k : a.degrees) out.emplace(k, symmetric_homology(t.rank + 1, lp, k));
                return out;
            }
            case Rule::SwanCyclicSylow: {
                const auto o = order(g.matrix);
                if (o.infinite) replay_failure(g, a, "infinite group");
                const auto sylow = a.evidence.at("sylow_order").get<std::uint64_t>();
                if (sylow != ipow(p, o.valuation(p))) replay_failure(g, a, "Sylow order is not the p-part of |W|");
                const auto e = a.evidence.at("e").get<std::uint64_t>();
                for (auto k : a.degrees) out.emplace(k, swan_from_sylow(sylow, e, lp, k));
                return out;
            }
            case Rule::TransferToParabolic: {
                const auto o = order(g.matrix);
                if (o.infinite) replay_failure(g, a, "infinite group");
                ParabolicSubset T;
                for (auto s : a.evidence.at("parabolic").get<std::vector<std::size_t>>()) T = T.with(s);
                if (T == ParabolicSubset::full(g.matrix.rank()) || !T.is_subset_of(ParabolicSubset::full(g.matrix.rank())))
                    replay_failure(g, a, "parabolic is not proper");
                const auto sub = restrict(g.matrix, T).matrix;
                if (order(sub).valuation(p) != o.valuation(p)) replay_failure(g, a, "index divisible by p");
                if (a.subgoals.size() != 1 || a.subgoals[0]->subject != type_key(sub))
                    replay_failure(g, a, "subgoal is not the parabolic");
                for (auto k : a.degrees)
                    if (!subs[0].resolved(k) || !subs[0].at(k).is_trivial())
                        replay_failure(g, a, "parabolic homology does not vanish");
                return zeros(p, a.degrees);
            }
            case Rule::LerayInduction: {
                if (order(g.matrix).infinite) replay_failure(g, a, "infinite group");
                if (kmax_used + 1 > g.matrix.rank()) replay_failure(g, a, "degree above rank - 1");
                std::set<std::string> needed, given;
                const auto full = ParabolicSubset::full(g.matrix.rank());
                for (std::uint32_t bits = 0; bits < full.bits(); ++bits)
                    needed.insert(type_key(restrict(g.matrix, ParabolicSubset(bits)).matrix));
                for (const auto& s : a.subgoals) given.insert(s->subject);
                if (needed != given) replay_failure(g, a, "subgoals are not the proper parabolic types");
                for (const auto& s : subs)
                    if (!s.vanishes_through(kmax_used)) replay_failure(g, a, "a parabolic has nonzero homology");
                return zeros(p, a.degrees);
            }
            case Rule::AsphericalSum:
                for (auto k : a.degrees) out.emplace(k, aspherical_homology(g.matrix, lp, k));
                return out;
        }
        replay_failure(g, a, "unknown rule");
    }

    std::map<std::string, PartialHomology> done_;
};

}  // namespace

nlohmann::json Derivation::to_json() const { return goal_to_json(*root); }

Derivation Derivation::from_json(const nlohmann::json& j) { return Derivation{goal_from_json(j)}; }

PartialHomology Derivation::replay() const { return Replayer().run(*root); }

}  // namespace coxhom
