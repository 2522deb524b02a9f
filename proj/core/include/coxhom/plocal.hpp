#pragma once

// p-local homology of Coxeter groups by reduction rules, with certificates.

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxhom/coxeter.hpp"
#include "coxhom/group.hpp"
#include "coxhom/homology.hpp"

namespace coxhom {

inline constexpr unsigned kMaxDegreeCap = 64;

/// Default upper degree: 2(p-2).
unsigned default_max_degree(long long p);

// ---------------------------------------------------------------------------
// Closed forms

/// p-part of Z/order in odd degrees, 0 in even degrees. k >= 1.
PGroup cyclic_homology(const Integer& order, long long p, unsigned k);

/// H_k(W(I_2(q)), Z_(p)): p-part of Z/q when k ≡ 3 mod 4, else 0.
PGroup dihedral_homology(std::uint64_t q, long long p, unsigned k);

/// Cyclic Sylow subgroup of order p^a whose normalizer acts through a group of
/// order e: Z/p^a when k ≡ 2e-1 mod 2e, else 0. Throws DomainError when
/// sylow_order is not a power of p or e does not divide p^(a-1)(p-1).
PGroup swan_from_sylow(std::uint64_t sylow_order, std::uint64_t e, long long p, unsigned k);

class OutOfClosedFormRange : public DomainError {
public:
    using DomainError::DomainError;
};

/// H_k(S_n, Z_(p)): 0 for n < p, the Swan value with a = 1, e = p-1 for
/// p <= n < 2p, and 0 for n >= 2p when k <= 2(p-2). Throws OutOfClosedFormRange otherwise.
PGroup symmetric_homology(unsigned letters, long long p, unsigned k);

/// B_n -> A_{n-1}, D_n -> A_{n-1}. Throws DomainError for other types.
IrredType reduce_BD(const IrredType& t);

/// Proper T of largest order (ties: smallest bitmask) with v_p|W_T| = v_p|W|.
/// Throws DomainError for infinite W.
std::optional<ParabolicSubset> transfer_reduction(const CoxeterMatrix& m, long long p);

class NotAspherical : public DomainError {
public:
    using DomainError::DomainError;
};

/// ⊕ over pairs with p | m(s,t) of dihedral_homology(m(s,t), p, k).
PGroup aspherical_homology(const CoxeterMatrix& m, long long p, unsigned k);

// ---------------------------------------------------------------------------
// Rules and certificates

enum class Rule {
    NoPTorsion,
    Kunneth,
    ReduceB,
    ReduceD,
    Dihedral,
    SymmetricSwan,
    SwanCyclicSylow,
    TransferToParabolic,
    LerayInduction,
    AsphericalSum,
    LowDegreeHowlett,
};

std::string_view rule_name(Rule r);
std::string_view rule_citation(Rule r);
Rule rule_from_name(std::string_view name);

/// H_k for 1 <= k <= max_degree, where known.
struct PartialHomology {
    std::uint64_t prime = 0;
    unsigned max_degree = 0;
    std::map<unsigned, PGroup> values;  // resolved degrees, zeros included

    bool resolved(unsigned k) const { return values.count(k) != 0; }
    bool complete() const { return values.size() == max_degree; }
    std::vector<unsigned> unresolved() const;
    /// Throws DomainError when k is unresolved.
    PGroup at(unsigned k) const;
    /// Every resolved degree in 1..k is trivial and none is missing.
    bool vanishes_through(unsigned k) const;
    /// Throws DomainError unless complete.
    GradedPLocal graded() const;

    friend bool operator==(const PartialHomology&, const PartialHomology&) = default;
};

struct Goal;

struct Application {
    Rule rule;
    std::vector<unsigned> degrees;  // degrees this application resolved
    nlohmann::json evidence;
    std::vector<std::shared_ptr<const Goal>> subgoals;
};

struct Goal {
    std::string subject;  // canonical type label, or the matrix text for infinite W
    CoxeterMatrix matrix;
    PartialHomology result;
    std::vector<Application> applications;
};

struct Derivation {
    std::shared_ptr<const Goal> root;

    const PartialHomology& result() const { return root->result; }
    nlohmann::json to_json() const;
    static Derivation from_json(const nlohmann::json& j);
    /// Re-evaluates every application from its evidence and the replayed
    /// subgoals, without search or enumeration. Throws ContractViolation when a
    /// recorded value is not reproduced.
    PartialHomology replay() const;
};

// ---------------------------------------------------------------------------
// Engine

struct EngineOptions {
    bool use_transfer = true;
    bool use_leray = true;
    bool use_low_degree = true;
    bool allow_enumeration = true;
    std::size_t max_elems = kDefaultMaxElements;
    std::size_t max_rank = CoxeterMatrix::kDefaultMaxRank;
    /// Optional directory for ElementStore files.
    std::optional<std::filesystem::path> cache_dir;
};

class Engine {
public:
    explicit Engine(EngineOptions options = {});

    const EngineOptions& options() const { return options_; }

    /// Resolves as many degrees 1..kmax as the rules reach. Thread safe.
    Derivation derive(const CoxeterMatrix& m, long long p, unsigned kmax);

    /// SwanCyclicSylow alone on the whole group (no other rule), for cross-checks.
    /// Throws BudgetExceeded, SylowNotCyclic or DomainError when inapplicable.
    Derivation derive_by_enumeration(const CoxeterMatrix& m, long long p, unsigned kmax);

    /// Sylow data from a (cached) faithful realization of W.
    CyclicSylow sylow(const CoxeterMatrix& m, long long p);

private:
    std::shared_ptr<const Goal> solve(const CoxeterMatrix& m, std::uint64_t p, unsigned kmax);
    std::shared_ptr<const Goal> solve_uncached(const CoxeterMatrix& m, std::uint64_t p, unsigned kmax);
    std::shared_ptr<const Realization> realization(const CoxeterMatrix& m);
    std::optional<Application> swan_application(const CoxeterMatrix& m, std::uint64_t p,
                                                const std::vector<unsigned>& degrees, PartialHomology& into);

    EngineOptions options_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const Goal>> memo_;
    std::map<std::string, std::shared_ptr<const Realization>> stores_;
};

/// Engine with default options.
Derivation derive_homology(const CoxeterMatrix& m, long long p, unsigned kmax);

/// A homology provider for e1_page backed by an engine.
HomologyProvider engine_provider(Engine& engine, long long p, unsigned kmax);

// ---------------------------------------------------------------------------
// Vanishing range harness

enum class Verdict { Pass, Fail, Inconclusive, HypothesisViolated };
std::string_view verdict_name(Verdict v);

struct VanishingReport {
    std::string subject;
    std::uint64_t prime = 0;
    bool p_free = false;
    unsigned range_top = 0;  // 2(p-2)
    Verdict verdict = Verdict::Inconclusive;
    PartialHomology homology;                   // degrees 1..max(2(p-2), 2p-3)
    std::optional<PGroup> sharpness;            // H_{2p-3}, when a closed form reaches it
    std::optional<std::pair<unsigned, PGroup>> first_nonzero;  // lowest nonzero degree found
    Derivation derivation;
    double seconds = 0;

    /// "PASS", "hypothesis violated; H_3 = Z/9", ...
    std::string summary() const;
};

/// PASS iff degrees 1..2(p-2) are all resolved and trivial. Pairs that are not
/// p-free are evaluated anyway and reported as HypothesisViolated.
VanishingReport verify_vanishing_range(Engine& engine, const CoxeterMatrix& m, long long p);

}  // namespace coxhom
