#pragma once

#include <string>
#include <vector>

namespace coxhom {

/// One row of the table of finite irreducible Coxeter groups.
struct TypeTableRow {
    std::string graph;          // "E_6", "A_n (n≥2)"
    std::string order;          // "51840", "(n+1)!"
    std::string factorization;  // "2^7·3^4·5", "—" for family rows
    std::string p_free;         // "p≥5", "p∤q"
};

/// The twelve rows, each recomputed from the catalog (orders, factorizations,
/// p-freeness) and checked against its family formula over a range of ranks.
/// Throws ContractViolation if a row is not uniform over its family.
std::vector<TypeTableRow> type_table();

/// Header plus "graph | order | factorization | p-free" lines.
std::string render_type_table_text(const std::vector<TypeTableRow>& rows);
std::string render_type_table_csv(const std::vector<TypeTableRow>& rows);
std::string render_type_table_json(const std::vector<TypeTableRow>& rows);

}  // namespace coxhom
