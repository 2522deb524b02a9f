#include "coxhom/coxeter.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "coxhom/error.hpp"

namespace coxhom {

std::uint32_t Label::value() const {
    if (infinite_) throw DomainError("label is infinite");
    return value_;
}

std::string Label::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

ParabolicSubset ParabolicSubset::of(std::initializer_list<std::size_t> members) {
    std::uint32_t bits = 0;
    for (auto s : members) bits |= 1u << s;
    return ParabolicSubset(bits);
}

std::vector<std::size_t> ParabolicSubset::members() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
}

std::string ParabolicSubset::to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto s : members()) {
        if (!first) out += ",";
        out += std::to_string(s);
        first = false;
    }
    return out + "}";
}

CoxeterMatrix::CoxeterMatrix(std::size_t rank) : rank_(rank), entries_(rank * rank, Label::finite(2)) {
    if (rank > kHardMaxRank) throw DomainError("rank " + std::to_string(rank) + " exceeds 32");
    for (std::size_t s = 0; s < rank; ++s) entries_[s * rank + s] = Label::finite(1);
}

void CoxeterMatrix::set(std::size_t s, std::size_t t, Label m) {
    if (s >= rank_ || t >= rank_) throw DomainError("generator index out of range");
    if (s == t) throw DomainError("diagonal entries are fixed to 1");
    if (m.is_finite() && m.value() < 2) throw DomainError("off-diagonal label must be >= 2");
    entries_[s * rank_ + t] = m;
    entries_[t * rank_ + s] = m;
}

bool CoxeterMatrix::is_edge(std::size_t s, std::size_t t) const {
    if (s == t) return false;
    auto m = (*this)(s, t);
    return m.is_infinite() || m.value() >= 3;
}

std::string CoxeterMatrix::to_text() const {
    std::ostringstream out;
    out << rank_ << "\n";
    for (std::size_t s = 0; s < rank_; ++s)
        for (std::size_t t = s + 1; t < rank_; ++t)
            if ((*this)(s, t) != Label::finite(2)) out << s << " " << t << " " << (*this)(s, t).to_string() << "\n";
    return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
std::optional<T> to_number(std::string_view s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

CoxeterMatrix parse_coxeter(std::string_view text, std::size_t max_rank) {
    std::optional<CoxeterMatrix> m;
    std::vector<bool> assigned;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto fields = split_ws(line);
        if (!m) {
            if (fields.size() != 1) throw ParseError("expected the generator count", line_no);
            auto n = to_number<std::size_t>(fields[0]);
            if (!n || *n == 0) throw ParseError("generator count must be a positive integer", line_no);
            if (*n > max_rank)
                throw ParseError("generator count " + std::to_string(*n) + " exceeds maximum " + std::to_string(max_rank),
                                 line_no);
            m.emplace(*n);
            assigned.assign(*n * *n, false);
            continue;
        }
        if (fields.size() != 3) throw ParseError("expected '<s> <t> <m|inf>'", line_no);
        auto s = to_number<std::size_t>(fields[0]);
        auto t = to_number<std::size_t>(fields[1]);
        if (!s || !t) throw ParseError("generator indices must be non-negative integers", line_no);
        const auto n = m->rank();
        if (*s >= n || *t >= n) throw ParseError("generator index out of range", line_no);
        if (*s == *t) throw ParseError("diagonal entries cannot be set", line_no);
        Label label;
        if (fields[2] == "inf") {
            label = Label::infinity();
        } else {
            auto v = to_number<std::uint32_t>(fields[2]);
            if (!v) throw ParseError("label must be an integer or 'inf'", line_no);
            if (*v < 2) throw ParseError("off-diagonal label must be >= 2", line_no);
            label = Label::finite(*v);
        }
        const auto key = std::min(*s, *t) * n + std::max(*s, *t);
        if (assigned[key] && (*m)(*s, *t) != label)
            throw ParseError("contradictory duplicate entry for pair " + std::to_string(*s) + " " + std::to_string(*t),
                             line_no);
        assigned[key] = true;
        m->set(*s, *t, label);
    }
    if (!m) throw ParseError("empty input: missing generator count");
    return *m;
}

IrredType IrredType::I2(unsigned q) {
    if (q == 3) return A(2);
    if (q == 4) return B(2);
    return {Family::I2, 2, q};
}

std::string IrredType::label() const {
    switch (family) {
        case Family::A: return "A" + std::to_string(rank);
        case Family::B: return "B" + std::to_string(rank);
        case Family::D: return "D" + std::to_string(rank);
        case Family::E: return "E" + std::to_string(rank);
        case Family::F: return "F4";
        case Family::H: return "H" + std::to_string(rank);
        case Family::I2: return "I2(" + std::to_string(parameter) + ")";
        case Family::Infinite: return "Inf" + std::to_string(rank);
    }
    return "?";
}

bool TypeDecomposition::is_finite() const {
    return std::all_of(components.begin(), components.end(), [](const Component& c) { return c.type.is_finite(); });
}

std::string TypeDecomposition::label(std::string_view separator) const {
    if (components.empty()) return "1";
    std::string out;
    for (const auto& c : components) {
        if (!out.empty()) out += separator;
        out += c.type.label();
    }
    return out;
}

std::string TypeDecomposition::canonical_label() const {
    std::vector<std::string> labels;
    for (const auto& c : components) labels.push_back(c.type.label());
    std::sort(labels.begin(), labels.end());
    if (labels.empty()) return "1";
    std::string out;
    for (const auto& l : labels) out += (out.empty() ? "" : "x") + l;
    return out;
}

unsigned FactoredOrder::valuation(std::uint64_t p) const {
    if (infinite) throw DomainError("valuation of an infinite order");
    auto it = factors.find(p);
    return it == factors.end() ? 0 : it->second;
}

std::string FactoredOrder::to_string() const {
    if (infinite) return "∞";
    return value.str() + " = " + format_factorization(factors);
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

CoxeterMatrix path_matrix(std::size_t n) {
    CoxeterMatrix m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, Label::finite(3));
    return m;
}

// E_n: path 0-2-3-4-...-(n-1) with generator 1 attached to 3.
CoxeterMatrix e_matrix(std::size_t n) {
    CoxeterMatrix m(n);
    m.set(0, 2, Label::finite(3));
    m.set(1, 3, Label::finite(3));
    for (std::size_t i = 2; i + 1 < n; ++i) m.set(i, i + 1, Label::finite(3));
    return m;
}

CoxeterMatrix irreducible_catalog(std::string_view name) {
    auto bad = [&](const std::string& why) { return ParseError("catalog name '" + std::string(name) + "': " + why); };
    if (name.empty()) throw bad("empty");
    const char family = name[0];
    auto rest = name.substr(1);
    if (!rest.empty() && rest[0] == '_') rest.remove_prefix(1);

    if (family == 'I') {
        if (rest.size() < 4 || rest[0] != '2' || rest[1] != '(' || rest.back() != ')') throw bad("expected I2(q)");
        auto q = to_number<std::uint32_t>(rest.substr(2, rest.size() - 3));
        if (!q) throw bad("dihedral label must be an integer");
        if (*q < 3) throw bad("I2(q) requires q >= 3");
        CoxeterMatrix m(2);
        m.set(0, 1, Label::finite(*q));
        return m;
    }
    auto n_opt = to_number<std::size_t>(rest);
    if (!n_opt) throw bad("unknown label");
    const std::size_t n = *n_opt;
    if (n > CoxeterMatrix::kHardMaxRank) throw bad("rank too large");
    switch (family) {
        case 'A':
            if (n < 1) throw bad("A_n requires n >= 1");
            return path_matrix(n);
        case 'B': {
            if (n < 2) throw bad("B_n requires n >= 2");
            auto m = path_matrix(n);
            m.set(0, 1, Label::finite(4));
            return m;
        }
        case 'D': {
            if (n < 4) throw bad("D_n requires n >= 4");
            CoxeterMatrix m(n);
            for (std::size_t i = 0; i + 2 < n; ++i) m.set(i, i + 1, Label::finite(3));
            m.set(n - 3, n - 1, Label::finite(3));
            return m;
        }
        case 'E':
            if (n < 6 || n > 8) throw bad("E_n requires n in {6,7,8}");
            return e_matrix(n);
        case 'F': {
            if (n != 4) throw bad("only F4 exists");
            auto m = path_matrix(4);
            m.set(1, 2, Label::finite(4));
            return m;
        }
        case 'H': {
            if (n != 3 && n != 4) throw bad("H_n requires n in {3,4}");
            auto m = path_matrix(n);
            m.set(0, 1, Label::finite(5));
            return m;
        }
        default: throw bad("unknown family");
    }
}

std::vector<std::string_view> split_product(std::string_view name) {
    std::vector<std::string_view> parts;
    std::size_t start = 0, i = 0;
    static constexpr std::string_view kTimes = "×";
    while (i < name.size()) {
        if (name[i] == 'x') {
            parts.push_back(name.substr(start, i - start));
            start = i = i + 1;
        } else if (name.substr(i, kTimes.size()) == kTimes) {
            parts.push_back(name.substr(start, i - start));
            start = i = i + kTimes.size();
        } else {
            ++i;
        }
    }
    parts.push_back(name.substr(start));
    return parts;
}

}  // namespace

CoxeterMatrix catalog(std::string_view name) {
    name = trim(name);
    std::vector<CoxeterMatrix> blocks;
    std::size_t total = 0;
    for (auto part : split_product(name)) {
        blocks.push_back(irreducible_catalog(trim(part)));
        total += blocks.back().rank();
    }
    if (total > CoxeterMatrix::kHardMaxRank) throw ParseError("catalog product exceeds rank 32");
    CoxeterMatrix m(total);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t s = 0; s < b.rank(); ++s)
            for (std::size_t t = s + 1; t < b.rank(); ++t) m.set(offset + s, offset + t, b(s, t));
        offset += b.rank();
    }
    return m;
}

// ---------------------------------------------------------------------------
// Decomposition and structural recognition

namespace {

IrredType classify_component(const CoxeterMatrix& m, const std::vector<std::size_t>& verts) {
    const auto n = static_cast<unsigned>(verts.size());
    if (n == 1) return IrredType::A(1);

    std::vector<std::vector<std::size_t>> adj(n);
    std::size_t edges = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            if (m.is_edge(verts[i], verts[j])) {
                if (m(verts[i], verts[j]).is_infinite()) return IrredType::infinite(n);
                adj[i].push_back(j);
                adj[j].push_back(i);
                ++edges;
            }
    auto label = [&](std::size_t i, std::size_t j) { return m(verts[i], verts[j]).value(); };

    if (n == 2) return IrredType::I2(label(0, 1));
    if (edges != n - 1) return IrredType::infinite(n);  // connected with a cycle

    std::vector<std::size_t> branch;
    for (unsigned i = 0; i < n; ++i) {
        if (adj[i].size() > 3) return IrredType::infinite(n);
        if (adj[i].size() == 3) branch.push_back(i);
    }

    if (branch.empty()) {
        // Path: read labels from one endpoint.
        std::size_t start = 0;
        while (adj[start].size() != 1) ++start;
        std::vector<std::uint32_t> labels;
        std::size_t prev = n, cur = start;
        while (true) {
            std::size_t next = n;
            for (auto v : adj[cur])
                if (v != prev) next = v;
            if (next == n) break;
            labels.push_back(label(cur, next));
            prev = cur;
            cur = next;
        }
        std::vector<std::size_t> odd_positions;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] != 3) odd_positions.push_back(i);
        if (odd_positions.empty()) return IrredType::A(n);
        if (odd_positions.size() != 1) return IrredType::infinite(n);
        const auto i = odd_positions[0];
        const auto l = labels[i];
        const bool at_end = i == 0 || i + 1 == labels.size();
        if (l == 4) {
            if (at_end) return IrredType::B(n);
            if (n == 4) return IrredType::F4();
        } else if (l == 5 && at_end && (n == 3 || n == 4)) {
            return IrredType::H(n);
        }
        return IrredType::infinite(n);
    }

    if (branch.size() != 1) return IrredType::infinite(n);
    for (unsigned i = 0; i < n; ++i)
        for (auto j : adj[i])
            if (label(i, j) != 3) return IrredType::infinite(n);
    const auto center = branch[0];
    std::vector<unsigned> arms;
    for (auto first : adj[center]) {
        unsigned len = 1;
        std::size_t prev = center, cur = first;
        while (adj[cur].size() == 2) {
            auto next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return IrredType::D(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return IrredType::E(n);
    return IrredType::infinite(n);
}

}  // namespace

TypeDecomposition decompose(const CoxeterMatrix& m) {
    TypeDecomposition d;
    const auto n = m.rank();
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<std::size_t> verts{root};
        seen[root] = true;
        for (std::size_t k = 0; k < verts.size(); ++k)
            for (std::size_t t = 0; t < n; ++t)
                if (!seen[t] && m.is_edge(verts[k], t)) {
                    seen[t] = true;
                    verts.push_back(t);
                }
        std::sort(verts.begin(), verts.end());
        std::uint32_t bits = 0;
        for (auto v : verts) bits |= 1u << v;
        d.components.push_back({classify_component(m, verts), ParabolicSubset(bits)});
    }
    return d;
}

FactoredOrder order(const IrredType& t) {
    Factorization f;
    switch (t.family) {
        case Family::A: f = factorial_factorization(t.rank + 1); break;
        case Family::B:
            f = factorial_factorization(t.rank);
            f[2] += t.rank;
            break;
        case Family::D:
            f = factorial_factorization(t.rank);
            f[2] += t.rank - 1;
            break;
        case Family::E:
            f = factorize(t.rank == 6 ? 51840ull : t.rank == 7 ? 2903040ull : 696729600ull);
            break;
        case Family::F: f = factorize(1152); break;
        case Family::H: f = factorize(t.rank == 3 ? 120 : 14400); break;
        case Family::I2: f = factorize(2ull * t.parameter); break;
        case Family::Infinite: return FactoredOrder::infinity();
    }
    return {false, evaluate(f), f};
}

FactoredOrder order(const TypeDecomposition& d) {
    FactoredOrder out;
    for (const auto& c : d.components) {
        auto o = order(c.type);
        if (o.infinite) return FactoredOrder::infinity();
        out.value *= o.value;
        multiply_into(out.factors, o.factors);
    }
    return out;
}

FactoredOrder order(const CoxeterMatrix& m) { return order(decompose(m)); }

bool is_p_free(const CoxeterMatrix& m, long long p) {
    require_odd_prime(p);
    for (std::size_t s = 0; s < m.rank(); ++s)
        for (std::size_t t = s + 1; t < m.rank(); ++t)
            if (m(s, t).divisible_by(static_cast<std::uint64_t>(p))) return false;
    return true;
}

bool is_aspherical(const CoxeterMatrix& m) {
    const auto n = m.rank();
    // 1/a + 1/b + 1/c <= 1 over finite labels, cleared of denominators.
    auto term = [](Label l) -> std::pair<bool, std::uint64_t> {
        return l.is_infinite() ? std::pair{false, std::uint64_t{0}} : std::pair{true, std::uint64_t{l.value()}};
    };
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            for (std::size_t u = t + 1; u < n; ++u) {
                Integer num = 0, den = 1;
                for (auto l : {m(s, t), m(t, u), m(u, s)}) {
                    auto [fin, v] = term(l);
                    if (!fin) continue;
                    num = num * v + den;
                    den *= v;
                }
                if (num > den) return false;
            }
    return true;
}

bool has_p_torsion(const CoxeterMatrix& m, long long p, std::size_t max_rank) {
    require_odd_prime(p);
    const auto n = m.rank();
    if (n > max_rank || n >= 32)
        throw BudgetExceeded("p-torsion scan over 2^" + std::to_string(n) + " subsets exceeds bound 2^" +
                             std::to_string(max_rank));
    const std::uint32_t count = 1u << n;
    std::vector<char> infinite(count, 0);
    for (std::uint32_t bits = 1; bits < count; ++bits) {
        bool inf = false;
        for (std::uint32_t b = bits; b && !inf; b &= b - 1) inf = infinite[bits & ~(b & -b)];
        if (inf) {
            infinite[bits] = 1;
            continue;
        }
        auto o = order(restrict(m, ParabolicSubset(bits)).matrix);
        if (o.infinite) {
            infinite[bits] = 1;
            continue;
        }
        if (o.valuation(static_cast<std::uint64_t>(p)) > 0) return true;
    }
    return false;
}

std::size_t odd_graph_components(const CoxeterMatrix& m) {
    const auto n = m.rank();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            auto l = m(s, t);
            if (l.is_finite() && l.value() % 2 == 1) {
                auto a = find(s), b = find(t);
                if (a != b) {
                    parent[b] = a;
                    --components;
                }
            }
        }
    return components;
}

Restriction restrict(const CoxeterMatrix& m, ParabolicSubset T) {
    Restriction r{CoxeterMatrix(T.size()), T.members()};
    for (std::size_t i = 0; i < r.parent_index.size(); ++i) {
        if (r.parent_index[i] >= m.rank()) throw DomainError("parabolic subset exceeds rank");
        for (std::size_t j = i + 1; j < r.parent_index.size(); ++j)
            r.matrix.set(i, j, m(r.parent_index[i], r.parent_index[j]));
    }
    return r;
}

std::vector<std::uint64_t> torsion_label_primes(const CoxeterMatrix& m) {
    std::vector<std::uint64_t> primes;
    for (std::size_t s = 0; s < m.rank(); ++s)
        for (std::size_t t = s + 1; t < m.rank(); ++t) {
            auto l = m(s, t);
            if (l.is_infinite()) continue;
            for (auto [p, e] : factorize(l.value()))
                if (p != 2) primes.push_back(p);
        }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

std::string describe_p_freeness(const CoxeterMatrix& m) {
    const auto primes = torsion_label_primes(m);
    bool small_labels = true;
    Integer lcm_odd = 1;
    for (std::size_t s = 0; s < m.rank(); ++s)
        for (std::size_t t = s + 1; t < m.rank(); ++t) {
            auto l = m(s, t);
            if (l.is_infinite()) continue;
            if (l.value() > 6) small_labels = false;
            std::uint64_t odd = l.value();
            while (odd % 2 == 0) odd /= 2;
            lcm_odd = boost::multiprecision::lcm(lcm_odd, Integer(odd));
        }
    // Initial segment of odd primes?
    std::uint64_t next = 3;
    bool initial = true;
    for (auto p : primes) {
        if (p != next) {
            initial = false;
            break;
        }
        do ++next;
        while (!is_prime(next));
    }
    if (primes.empty()) return "p≥3";
    if (initial && small_labels) return "p≥" + std::to_string(next);
    std::string out = "p∤" + lcm_odd.str() + " i.e. ";
    if (primes.size() == 1) return out + "p≠" + std::to_string(primes[0]);
    out += "p∉{";
    for (std::size_t i = 0; i < primes.size(); ++i) out += (i ? "," : "") + std::to_string(primes[i]);
    return out + "}";
}

void to_json(nlohmann::json& j, const CoxeterMatrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t s = 0; s < m.rank(); ++s) {
        auto row = nlohmann::json::array();
        for (std::size_t t = 0; t < m.rank(); ++t) {
            auto l = m(s, t);
            if (l.is_infinite())
                row.push_back("inf");
            else
                row.push_back(l.value());
        }
        rows.push_back(std::move(row));
    }
    j = nlohmann::json{{"rank", m.rank()}, {"entries", std::move(rows)}};
}

void from_json(const nlohmann::json& j, CoxeterMatrix& m) {
    const auto n = j.at("rank").get<std::size_t>();
    const auto& rows = j.at("entries");
    if (rows.size() != n) throw ParseError("matrix JSON: row count does not match rank");
    CoxeterMatrix out(n);
    auto read = [](const nlohmann::json& v) {
        if (v.is_string()) {
            if (v.get<std::string>() != "inf") throw ParseError("matrix JSON: unknown label string");
            return Label::infinity();
        }
        return Label::finite(v.get<std::uint32_t>());
    };
    for (std::size_t s = 0; s < n; ++s) {
        if (rows[s].size() != n) throw ParseError("matrix JSON: ragged row");
        if (read(rows[s][s]) != Label::finite(1)) throw ParseError("matrix JSON: diagonal must be 1");
        for (std::size_t t = s + 1; t < n; ++t) {
            auto a = read(rows[s][t]);
            if (a != read(rows[t][s])) throw ParseError("matrix JSON: not symmetric");
            try {
                out.set(s, t, a);
            } catch (const DomainError& e) {
                throw ParseError(std::string("matrix JSON: ") + e.what());
            }
        }
    }
    m = std::move(out);
}

void to_json(nlohmann::json& j, const TypeDecomposition& d) {
    auto comps = nlohmann::json::array();
    for (const auto& c : d.components) {
        auto gens = nlohmann::json::array();
        for (auto s : c.generators.members()) gens.push_back(s);
        comps.push_back({{"type", c.type.label()}, {"finite", c.type.is_finite()}, {"generators", std::move(gens)}});
    }
    j = nlohmann::json{{"label", d.label()}, {"finite", d.is_finite()}, {"components", std::move(comps)}};
}

}  // namespace coxhom
