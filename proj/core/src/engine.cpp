#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "coxhom/error.hpp"
#include "coxhom/plocal.hpp"

namespace coxhom {

namespace {

std::string type_key(const CoxeterMatrix& m) {
    const auto d = decompose(m);
    return d.is_finite() ? d.canonical_label() : m.to_text();
}

// Resolves the given degrees of `into` that are still open; returns the ones it set.
std::vector<unsigned> absorb(PartialHomology& into, const std::map<unsigned, PGroup>& values) {
    std::vector<unsigned> set;
    for (const auto& [k, v] : values)
        if (k >= 1 && k <= into.max_degree && !into.resolved(k)) {
            into.values.emplace(k, v);
            set.push_back(k);
        }
    return set;
}

void apply(Goal& g, Rule rule, const std::map<unsigned, PGroup>& values, nlohmann::json evidence,
           std::vector<std::shared_ptr<const Goal>> subgoals = {}) {
    auto degrees = absorb(g.result, values);
    if (degrees.empty()) return;
    g.applications.push_back({rule, std::move(degrees), std::move(evidence), std::move(subgoals)});
}

// A parabolic W_T x W_U with p dividing both factors contains C_p x C_p.
bool has_rank_two_p_subgroup(const CoxeterMatrix& m, std::uint64_t p) {
    if (m.rank() > 12) return false;
    const auto full = ParabolicSubset::full(m.rank());
    for (std::uint32_t bits = 1; bits <= full.bits(); ++bits) {
        const auto d = decompose(restrict(m, ParabolicSubset(bits)).matrix);
        if (!d.is_finite() || d.components.size() < 2) continue;
        int divisible = 0;
        for (const auto& c : d.components) divisible += order(c.type).valuation(p) > 0;
        if (divisible >= 2) return true;
    }
    return false;
}

std::string file_safe(std::string s) {
    for (auto& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
}

}  // namespace

Engine::Engine(EngineOptions options) : options_(std::move(options)) {
    if (!options_.cache_dir)
        if (const char* env = std::getenv("COXHOM_CACHE_DIR"); env && *env) options_.cache_dir = env;
}

Derivation Engine::derive(const CoxeterMatrix& m, long long p, unsigned kmax) {
    require_odd_prime(p);
    if (kmax == 0 || kmax > kMaxDegreeCap)
        throw DomainError("kmax must lie in 1.." + std::to_string(kMaxDegreeCap));
    if (m.rank() > options_.max_rank) throw BudgetExceeded("rank exceeds the configured maximum");
    return Derivation{solve(m, static_cast<std::uint64_t>(p), kmax)};
}

std::shared_ptr<const Goal> Engine::solve(const CoxeterMatrix& m, std::uint64_t p, unsigned kmax) {
    const auto key = type_key(m) + "|" + std::to_string(p) + "|" + std::to_string(kmax);
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    auto goal = solve_uncached(m, p, kmax);
    std::lock_guard lock(mutex_);
    return memo_.emplace(key, std::move(goal)).first->second;
}

std::shared_ptr<const Goal> Engine::solve_uncached(const CoxeterMatrix& m, std::uint64_t p, unsigned kmax) {
    const auto lp = static_cast<long long>(p);
    auto g = std::make_shared<Goal>();
    g->subject = type_key(m);
    g->matrix = m;
    g->result = {p, kmax, {}};
    auto open = [&] { return g->result.unresolved(); };
    auto done = [&] { return g->result.complete(); };
    auto zeros_for = [&](const std::vector<unsigned>& degrees) {
        std::map<unsigned, PGroup> z;
        for (auto k : degrees) z.emplace(k, PGroup::trivial(p));
        return z;
    };

    const auto d = decompose(m);
    const auto whole = order(d);

    // No finite parabolic of order divisible by p.
    try {
        if (!has_p_torsion(m, lp, options_.max_rank)) {
            nlohmann::json ev{{"order", whole.infinite ? std::string("inf") : whole.value.str()}};
            apply(*g, Rule::NoPTorsion, zeros_for(open()), std::move(ev));
            return g;
        }
    } catch (const BudgetExceeded&) {
    }

    if (d.components.size() > 1) {
        std::vector<std::shared_ptr<const Goal>> parts;
        std::vector<std::string> labels;
        unsigned reach = kmax;
        for (const auto& c : d.components) {
            auto sub = solve(restrict(m, c.generators).matrix, p, kmax);
            const auto un = sub->result.unresolved();
            if (!un.empty()) reach = std::min(reach, un.front() - 1);
            labels.push_back(sub->subject);
            parts.push_back(std::move(sub));
        }
        if (reach > 0) {
            GradedPLocal acc(p, reach);
            for (const auto& part : parts) {
                GradedPLocal f(p, reach);
                for (unsigned k = 1; k <= reach; ++k) f.set(k, part->result.at(k));
                acc = kunneth(acc, f);
            }
            std::map<unsigned, PGroup> values;
            for (unsigned k = 1; k <= reach; ++k) values.emplace(k, acc.at(k));
            apply(*g, Rule::Kunneth, values, {{"components", labels}}, parts);
        }
    } else if (d.components.size() == 1 && whole.infinite == false) {
        const auto t = d.components.front().type;
        const auto n = m.rank();
        if (t.family == Family::B || t.family == Family::D) {
            const auto target = reduce_BD(t);
            auto sub = solve(catalog(target.label()), p, kmax);
            std::map<unsigned, PGroup> values = sub->result.values;
            apply(*g, t.family == Family::B ? Rule::ReduceB : Rule::ReduceD, values,
                  {{"from", t.label()}, {"to", target.label()}}, {sub});
        } else if (t.family == Family::I2) {
            std::map<unsigned, PGroup> values;
            for (auto k : open()) values.emplace(k, dihedral_homology(t.parameter, lp, k));
            apply(*g, Rule::Dihedral, values, {{"q", t.parameter}});
        } else if (t.family == Family::A) {
            std::map<unsigned, PGroup> values;
            for (auto k : open()) {
                try {
                    values.emplace(k, symmetric_homology(t.rank + 1, lp, k));
                } catch (const OutOfClosedFormRange&) {
                }
            }
            apply(*g, Rule::SymmetricSwan, values, {{"letters", t.rank + 1}});
        }

        if (!done() && options_.use_transfer) {
            if (auto T = transfer_reduction(m, lp)) {
                const auto sub_m = restrict(m, *T).matrix;
                auto sub = solve(sub_m, p, kmax);
                std::map<unsigned, PGroup> values;
                for (auto k : open())
                    if (sub->result.resolved(k) && sub->result.at(k).is_trivial()) values.emplace(k, PGroup::trivial(p));
                const auto sub_order = order(sub_m);
                apply(*g, Rule::TransferToParabolic, values,
                      {{"parabolic", T->members()},
                       {"parabolic_type", sub->subject},
                       {"index", Integer(whole.value / sub_order.value).str()},
                       {"valuation", whole.valuation(p)},
                       {"basis", "order-arithmetic"}},
                      {sub});
            }
        }

        if (!done() && options_.use_leray && n >= 2) {
            const unsigned reach = std::min<unsigned>(kmax, static_cast<unsigned>(n - 1));
            const auto todo = open();
            if (!todo.empty() && todo.front() <= reach) {
                std::map<std::string, std::shared_ptr<const Goal>> subs;
                const auto full = ParabolicSubset::full(n);
                for (std::uint32_t bits = 0; bits < full.bits(); ++bits) {
                    const auto sub_m = restrict(m, ParabolicSubset(bits)).matrix;
                    const auto label = type_key(sub_m);
                    if (!subs.count(label)) subs.emplace(label, solve(sub_m, p, reach));
                }
                unsigned through = 0;
                while (through < reach &&
                       std::all_of(subs.begin(), subs.end(), [&](const auto& kv) {
                           return kv.second->result.vanishes_through(through + 1);
                       }))
                    ++through;
                if (through > 0) {
                    std::map<unsigned, PGroup> values;
                    std::vector<std::shared_ptr<const Goal>> children;
                    std::vector<std::string> labels;
                    for (auto k : todo)
                        if (k <= through) values.emplace(k, PGroup::trivial(p));
                    for (const auto& [label, sub] : subs) {
                        labels.push_back(label);
                        children.push_back(sub);
                    }
                    apply(*g, Rule::LerayInduction, values,
                          {{"rank", n}, {"through", through}, {"parabolic_types", labels}}, children);
                }
            }
        }

        if (!done() && options_.allow_enumeration) {
            if (auto app = swan_application(m, p, open(), g->result)) g->applications.push_back(std::move(*app));
        }
    }

    if (!done() && is_aspherical(m)) {
        std::map<unsigned, PGroup> values;
        for (auto k : open()) values.emplace(k, aspherical_homology(m, lp, k));
        nlohmann::json edges = nlohmann::json::array();
        for (std::size_t s = 0; s < m.rank(); ++s)
            for (std::size_t t = s + 1; t < m.rank(); ++t)
                if (m(s, t).divisible_by(p)) edges.push_back({s, t, m(s, t).value()});
        apply(*g, Rule::AsphericalSum, values, {{"edges", edges}});
    }

    if (!done() && options_.use_low_degree) {
        std::map<unsigned, PGroup> values;
        for (auto k : open())
            if (k <= 2) values.emplace(k, PGroup::trivial(p));
        apply(*g, Rule::LowDegreeHowlett, values, {{"n1", odd_graph_components(m)}});
    }
    return g;
}

std::shared_ptr<const Realization> Engine::realization(const CoxeterMatrix& m) {
    const auto label = type_key(m);
    {
        std::lock_guard lock(mutex_);
        if (auto it = stores_.find(label); it != stores_.end()) return it->second;
    }
    const auto o = order(m);
    if (o.infinite) throw DomainError("cannot enumerate an infinite Coxeter group");
    if (o.value > options_.max_elems)
        throw BudgetExceeded("|W| = " + o.value.str() + " exceeds the element budget " +
                             std::to_string(options_.max_elems));

    std::shared_ptr<Realization> r;
    const auto stem = file_safe(label);
    if (options_.cache_dir) {
        std::error_code ec;
        for (const auto& entry : std::filesystem::directory_iterator(*options_.cache_dir, ec)) {
            const auto name = entry.path().filename().string();
            if (name.rfind(stem + ".T", 0) != 0 || entry.path().extension() != ".cxs") continue;
            try {
                const auto bits = std::stoul(name.substr(stem.size() + 2));
                const ParabolicSubset T(static_cast<std::uint32_t>(bits));
                auto store = ElementStore::load(entry.path(), label + "|" + T.to_string());
                if (Integer(store.size()) != o.value) continue;
                r = std::make_shared<Realization>();
                r->rep.degree = store.degree();
                r->rep.stabilizer = T;
                r->store = std::move(store);
                break;
            } catch (const std::exception&) {
            }
        }
    }
    if (!r) {
        r = std::make_shared<Realization>(realize(m, options_.max_elems));
        if (options_.cache_dir) {
            std::error_code ec;
            std::filesystem::create_directories(*options_.cache_dir, ec);
            const auto path = *options_.cache_dir / (stem + ".T" + std::to_string(r->rep.stabilizer.bits()) + ".cxs");
            try {
                r->store.save(path, label + "|" + r->rep.stabilizer.to_string());
            } catch (const Error&) {
                // the cache is an optimization; a read-only directory is not an error
            }
        }
    }
    std::lock_guard lock(mutex_);
    return stores_.emplace(label, std::move(r)).first->second;
}

CyclicSylow Engine::sylow(const CoxeterMatrix& m, long long p) {
    return find_cyclic_sylow(realization(m)->store, p);
}

std::optional<Application> Engine::swan_application(const CoxeterMatrix& m, std::uint64_t p,
                                                    const std::vector<unsigned>& degrees, PartialHomology& into) {
    const auto o = order(m);
    if (o.infinite || o.value > options_.max_elems || o.valuation(p) == 0) return std::nullopt;
    if (has_rank_two_p_subgroup(m, p)) return std::nullopt;
    std::shared_ptr<const Realization> r;
    CyclicSylow s;
    try {
        r = realization(m);
        s = find_cyclic_sylow(r->store, static_cast<long long>(p));
    } catch (const SylowNotCyclic&) {
        return std::nullopt;
    } catch (const BudgetExceeded&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
    std::map<unsigned, PGroup> values;
    for (auto k : degrees) values.emplace(k, swan_from_sylow(s.order, s.e, static_cast<long long>(p), k));
    Application app{Rule::SwanCyclicSylow,
                    absorb(into, values),
                    {{"sylow_order", s.order},
                     {"e", s.e},
                     {"automorphism_exponents", s.automorphism_exponents},
                     {"normalizer_order", s.normalizer_order},
                     {"elements", r->store.size()},
                     {"representation_degree", r->store.degree()},
                     {"stabilizer", r->rep.stabilizer.members()}},
                    {}};
    if (app.degrees.empty()) return std::nullopt;
    return app;
}

Derivation Engine::derive_by_enumeration(const CoxeterMatrix& m, long long p, unsigned kmax) {
    require_odd_prime(p);
    const auto up = static_cast<std::uint64_t>(p);
    const auto o = order(m);
    if (o.infinite) throw DomainError("cannot enumerate an infinite Coxeter group");
    if (o.valuation(up) == 0) throw DomainError("p does not divide |W|");
    auto g = std::make_shared<Goal>();
    g->subject = type_key(m);
    g->matrix = m;
    g->result = {up, kmax, {}};
    const auto s = sylow(m, p);
    const auto r = realization(m);
    std::map<unsigned, PGroup> values;
    for (unsigned k = 1; k <= kmax; ++k) values.emplace(k, swan_from_sylow(s.order, s.e, p, k));
    apply(*g, Rule::SwanCyclicSylow, values,
          {{"sylow_order", s.order},
           {"e", s.e},
           {"automorphism_exponents", s.automorphism_exponents},
           {"normalizer_order", s.normalizer_order},
           {"elements", r->store.size()},
           {"representation_degree", r->store.degree()},
           {"stabilizer", r->rep.stabilizer.members()}});
    return Derivation{g};
}

Derivation derive_homology(const CoxeterMatrix& m, long long p, unsigned kmax) {
    Engine engine;
    return engine.derive(m, p, kmax);
}

HomologyProvider engine_provider(Engine& engine, long long p, unsigned kmax) {
    return [&engine, p, kmax](const CoxeterMatrix& sub, unsigned degree) -> std::optional<PGroup> {
        if (sub.rank() == 0) return PGroup::trivial(static_cast<std::uint64_t>(p));
        const auto d = engine.derive(sub, p, kmax);
        if (!d.result().resolved(degree)) return std::nullopt;
        return d.result().at(degree);
    };
}

}  // namespace coxhom
