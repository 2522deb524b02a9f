#include "coxhom/type_table.hpp"

#include <functional>

#include <nlohmann/json.hpp>

#include "coxhom/coxeter.hpp"
#include "coxhom/error.hpp"

namespace coxhom {

namespace {

constexpr unsigned kFamilyCheckMax = 10;

Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

TypeTableRow exceptional(const std::string& graph, const std::string& name) {
    const auto m = catalog(name);
    const auto o = order(m);
    return {graph, o.value.str(), format_factorization(o.factors), describe_p_freeness(m)};
}

// Checks a family row over a range of ranks: the order formula and a p-freeness
// description that does not depend on n.
TypeTableRow family(const std::string& graph, const std::string& formula, char letter, unsigned first,
                   const std::function<Integer(unsigned)>& expected_order) {
    std::string p_free;
    for (unsigned n = first; n <= kFamilyCheckMax; ++n) {
        const auto m = catalog(std::string(1, letter) + std::to_string(n));
        if (order(m).value != expected_order(n))
            throw ContractViolation(graph + ": order formula fails at n = " + std::to_string(n));
        const auto d = describe_p_freeness(m);
        if (p_free.empty()) p_free = d;
        if (d != p_free) throw ContractViolation(graph + ": p-freeness is not uniform in n");
    }
    return {graph, formula, "—", p_free};
}

TypeTableRow single(const std::string& graph, const std::string& name) {
    const auto m = catalog(name);
    return {graph, order(m).value.str(), "—", describe_p_freeness(m)};
}

TypeTableRow dihedral_family() {
    for (unsigned q = 3; q <= 60; ++q) {
        const auto m = catalog("I2(" + std::to_string(q) + ")");
        if (order(m).value != 2 * q) throw ContractViolation("I_2(q): order is not 2q");
        for (long long p = 3; p <= 61; p += 2) {
            if (!is_prime(static_cast<std::uint64_t>(p))) continue;
            if (is_p_free(m, p) != (q % p != 0)) throw ContractViolation("I_2(q): p-freeness is not p∤q");
        }
    }
    return {"I_2(q) (q≥3)", "2q", "—", "p∤q"};
}

}  // namespace

std::vector<TypeTableRow> type_table() {
    auto pow2 = [](unsigned e) { return Integer(1) << e; };
    return {
        single("A_1", "A1"),
        family("A_n (n≥2)", "(n+1)!", 'A', 2, [](unsigned n) { return factorial(n + 1); }),
        single("B_2", "B2"),
        family("B_n (n≥3)", "2^n·n!", 'B', 3, [&](unsigned n) { return pow2(n) * factorial(n); }),
        family("D_n (n≥4)", "2^(n-1)·n!", 'D', 4, [&](unsigned n) { return pow2(n - 1) * factorial(n); }),
        exceptional("E_6", "E6"),
        exceptional("E_7", "E7"),
        exceptional("E_8", "E8"),
        exceptional("F_4", "F4"),
        exceptional("H_3", "H3"),
        exceptional("H_4", "H4"),
        dihedral_family(),
    };
}

std::string render_type_table_text(const std::vector<TypeTableRow>& rows) {
    std::string out = "graph | order | factorization | p-free\n";
    for (const auto& r : rows) out += r.graph + " | " + r.order + " | " + r.factorization + " | " + r.p_free + "\n";
    return out;
}

std::string render_type_table_csv(const std::vector<TypeTableRow>& rows) {
    std::string out = "graph,order,factorization,p_free\n";
    for (const auto& r : rows) out += "\"" + r.graph + "\"," + r.order + "," + r.factorization + "," + r.p_free + "\n";
    return out;
}

std::string render_type_table_json(const std::vector<TypeTableRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows)
        j.push_back({{"graph", r.graph}, {"order", r.order}, {"factorization", r.factorization}, {"p_free", r.p_free}});
    return j.dump(2) + "\n";
}

}  // namespace coxhom
