#include <chrono>
#include <functional>

#include "coxhom/error.hpp"
#include "coxhom/plocal.hpp"

namespace coxhom {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::HypothesisViolated: return "HYPOTHESIS-VIOLATED";
    }
    return "?";
}

namespace {

// Does the value in degree k rest on an element enumeration anywhere below?
bool uses_enumeration(const Goal& g, unsigned k) {
    for (const auto& a : g.applications) {
        bool covers = false;
        for (auto d : a.degrees) covers = covers || d == k;
        if (!covers) continue;
        if (a.rule == Rule::SwanCyclicSylow) return true;
        for (const auto& s : a.subgoals)
            for (unsigned j = 1; j <= std::min(k, s->result.max_degree); ++j)
                if (uses_enumeration(*s, j)) return true;
    }
    return false;
}

std::string degree_list(const std::vector<unsigned>& ks) {
    std::string out;
    for (auto k : ks) out += (out.empty() ? "" : ",") + std::to_string(k);
    return out;
}

}  // namespace

std::string VanishingReport::summary() const {
    std::string out;
    const auto range_unresolved = [&] {
        std::vector<unsigned> ks;
        for (auto k : homology.unresolved())
            if (k <= range_top) ks.push_back(k);
        return ks;
    }();
    switch (verdict) {
        case Verdict::Pass:
            out = "PASS";
            break;
        case Verdict::Fail:
            out = "FAIL; H_" + std::to_string(first_nonzero->first) + " = " + first_nonzero->second.to_string();
            break;
        case Verdict::Inconclusive:
            out = "INCONCLUSIVE; unresolved degrees " + degree_list(range_unresolved);
            break;
        case Verdict::HypothesisViolated:
            out = "hypothesis violated";
            if (first_nonzero)
                out += "; H_" + std::to_string(first_nonzero->first) + " = " + first_nonzero->second.to_string();
            else if (!range_unresolved.empty())
                out += "; unresolved degrees " + degree_list(range_unresolved);
            else
                out += "; vanishes through degree " + std::to_string(range_top);
            break;
    }
    if (verdict == Verdict::Pass && sharpness) {
        const auto k = std::to_string(2 * prime - 3);
        out += sharpness->is_trivial() ? "; H_" + k + " = 0"
                                       : "; H_" + k + " = " + sharpness->to_string() + " (range is best possible)";
    }
    return out;
}

VanishingReport verify_vanishing_range(Engine& engine, const CoxeterMatrix& m, long long p) {
    require_odd_prime(p);
    const auto start = std::chrono::steady_clock::now();
    VanishingReport r;
    const auto up = static_cast<std::uint64_t>(p);
    const auto d = decompose(m);
    r.subject = d.is_finite() ? d.label() : m.to_text();
    r.prime = up;
    r.p_free = is_p_free(m, p);
    r.range_top = default_max_degree(p);
    const unsigned probe = static_cast<unsigned>(2 * p - 3);
    r.derivation = engine.derive(m, p, probe);
    r.homology = r.derivation.result();

    for (unsigned k = 1; k <= probe; ++k)
        if (r.homology.resolved(k) && !r.homology.at(k).is_trivial()) {
            r.first_nonzero = std::make_pair(k, r.homology.at(k));
            break;
        }
    if (r.homology.resolved(probe) && !uses_enumeration(*r.derivation.root, probe))
        r.sharpness = r.homology.at(probe);

    bool nonzero = false, missing = false;
    for (unsigned k = 1; k <= r.range_top; ++k) {
        if (!r.homology.resolved(k))
            missing = true;
        else if (!r.homology.at(k).is_trivial())
            nonzero = true;
    }
    if (!r.p_free)
        r.verdict = Verdict::HypothesisViolated;
    else if (nonzero)
        r.verdict = Verdict::Fail;
    else if (missing)
        r.verdict = Verdict::Inconclusive;
    else
        r.verdict = Verdict::Pass;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace coxhom
