#include "coxhom/group.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace coxhom {

CosetTable::CosetTable(std::size_t generators, ParabolicSubset subgroup, std::vector<std::uint32_t> action)
    : generators_(generators), subgroup_(subgroup), action_(std::move(action)) {}

// ---------------------------------------------------------------------------
// Todd-Coxeter (HLT with immediate coincidence processing)

namespace {

constexpr std::uint32_t kUndef = std::numeric_limits<std::uint32_t>::max();

class Enumerator {
public:
    Enumerator(const CoxeterMatrix& m, std::size_t max_rows) : ngen_(m.rank()), max_rows_(max_rows) {
        for (std::size_t s = 0; s < ngen_; ++s)
            for (std::size_t t = s + 1; t < ngen_; ++t) {
                auto l = m(s, t);
                if (l.is_infinite()) continue;
                std::vector<std::uint32_t> word;
                for (std::uint32_t k = 0; k < l.value(); ++k) {
                    word.push_back(static_cast<std::uint32_t>(s));
                    word.push_back(static_cast<std::uint32_t>(t));
                }
                relators_.push_back(std::move(word));
            }
    }

    CosetTable run(ParabolicSubset T) {
        new_coset();
        for (auto t : T.members()) scan_and_fill(0, {static_cast<std::uint32_t>(t)});
        for (std::uint32_t c = 0; c < parent_.size(); ++c) {
            for (const auto& r : relators_) {
                if (parent_[c] != c) break;
                scan_and_fill(c, r);
            }
            if (parent_[c] != c) continue;
            for (std::uint32_t x = 0; x < ngen_; ++x)
                if (entry(c, x) == kUndef) define(c, x);
        }
        return compact(T);
    }

private:
    std::uint32_t& entry(std::uint32_t c, std::uint32_t x) { return table_[std::size_t(c) * ngen_ + x]; }

    std::uint32_t new_coset() {
        if (live_ >= max_rows_)
            throw BudgetExceeded("coset enumeration exceeded " + std::to_string(max_rows_) + " live rows");
        const auto c = static_cast<std::uint32_t>(parent_.size());
        parent_.push_back(c);
        table_.resize(table_.size() + ngen_, kUndef);
        ++live_;
        return c;
    }

    void define(std::uint32_t c, std::uint32_t x) {
        const auto d = new_coset();
        entry(c, x) = d;
        entry(d, x) = c;
    }

    std::uint32_t rep(std::uint32_t c) {
        std::uint32_t r = c;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[c] != r) {
            auto next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    void merge(std::uint32_t a, std::uint32_t b, std::vector<std::uint32_t>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        --live_;
        queue.push_back(b);
    }

    void coincidence(std::uint32_t a, std::uint32_t b) {
        std::vector<std::uint32_t> queue;
        merge(a, b, queue);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const auto e = queue[i];
            for (std::uint32_t x = 0; x < ngen_; ++x) {
                const auto f = entry(e, x);
                if (f == kUndef) continue;
                entry(f, x) = kUndef;
                const auto e1 = rep(e), f1 = rep(f);
                if (entry(e1, x) != kUndef) {
                    merge(f1, entry(e1, x), queue);
                } else if (entry(f1, x) != kUndef) {
                    merge(e1, entry(f1, x), queue);
                } else {
                    entry(e1, x) = f1;
                    entry(f1, x) = e1;
                }
            }
        }
    }

    // Every generator is an involution, so each letter is its own inverse.
    void scan_and_fill(std::uint32_t c, const std::vector<std::uint32_t>& w) {
        std::uint32_t f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        while (true) {
            while (i <= j && entry(f, w[i]) != kUndef) f = entry(f, w[i++]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && entry(b, w[j]) != kUndef) b = entry(b, w[j--]);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                entry(f, w[i]) = b;
                entry(b, w[i]) = f;
                return;
            }
            define(f, w[i]);
        }
    }

    CosetTable compact(ParabolicSubset T) {
        std::vector<std::uint32_t> renumber(parent_.size(), kUndef);
        std::vector<std::uint32_t> order{0};
        renumber[0] = 0;
        for (std::size_t k = 0; k < order.size(); ++k)
            for (std::uint32_t x = 0; x < ngen_; ++x) {
                const auto d = entry(order[k], x);
                if (renumber[d] == kUndef) {
                    renumber[d] = static_cast<std::uint32_t>(order.size());
                    order.push_back(d);
                }
            }
        std::vector<std::uint32_t> action(order.size() * ngen_);
        for (std::size_t k = 0; k < order.size(); ++k)
            for (std::uint32_t x = 0; x < ngen_; ++x) action[k * ngen_ + x] = renumber[entry(order[k], x)];
        return CosetTable(ngen_, T, std::move(action));
    }

    std::size_t ngen_;
    std::size_t max_rows_;
    std::size_t live_ = 0;
    std::vector<std::vector<std::uint32_t>> relators_;
    std::vector<std::uint32_t> table_;
    std::vector<std::uint32_t> parent_;
};

}  // namespace

CosetTable coset_enumerate(const CoxeterMatrix& m, ParabolicSubset T, std::size_t max_rows) {
    if (!T.is_subset_of(ParabolicSubset::full(m.rank()))) throw DomainError("parabolic subset exceeds rank");
    if (m.rank() == 0) return CosetTable(0, T, {});
    return Enumerator(m, max_rows).run(T);
}

PermRep perm_rep(const CoxeterMatrix& m, ParabolicSubset T, std::size_t max_rows) {
    auto table = coset_enumerate(m, T, max_rows);
    PermRep r;
    r.degree = table.rows();
    r.stabilizer = T;
    r.gens.assign(m.rank(), Perm(r.degree));
    for (std::size_t x = 0; x < m.rank(); ++x)
        for (std::size_t row = 0; row < r.degree; ++row) r.gens[x][row] = table.act(row, x);
    return r;
}

// ---------------------------------------------------------------------------
// ElementStore

namespace {

std::uint64_t hash_bytes(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h ^ (h >> 29);
}

constexpr std::uint32_t kEmptySlot = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::size_t ElementStore::slot_of(std::span<const std::uint8_t> perm) const {
    const auto mask = slots_.size() - 1;
    auto s = static_cast<std::size_t>(hash_bytes(perm)) & mask;
    while (slots_[s] != kEmptySlot) {
        if (std::memcmp(data_.data() + std::size_t(slots_[s]) * degree_, perm.data(), degree_) == 0) return s;
        s = (s + 1) & mask;
    }
    return s;
}

std::size_t ElementStore::find(std::span<const std::uint8_t> perm) const {
    if (perm.size() != degree_ || slots_.empty()) return size();
    const auto s = slot_of(perm);
    return slots_[s] == kEmptySlot ? size() : slots_[s];
}

void ElementStore::rehash(std::size_t nslots) {
    slots_.assign(nslots, kEmptySlot);
    for (std::size_t i = 0; i < size(); ++i) slots_[slot_of(element(i))] = static_cast<std::uint32_t>(i);
}

std::size_t ElementStore::insert(std::span<const std::uint8_t> perm, unsigned length) {
    if (2 * (size() + 1) > slots_.size()) rehash(std::max<std::size_t>(64, slots_.size() * 2));
    const auto s = slot_of(perm);
    if (slots_[s] != kEmptySlot) return slots_[s];
    const auto idx = size();
    data_.insert(data_.end(), perm.begin(), perm.end());
    lengths_.push_back(static_cast<std::uint16_t>(length));
    slots_[s] = static_cast<std::uint32_t>(idx);
    return idx;
}

namespace {
constexpr char kMagic[8] = {'C', 'X', 'H', 'M', 'S', 'T', 'O', 'R'};

template <class T>
void write_pod(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
T read_pod(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw Error("element cache: truncated file");
    return v;
}
}  // namespace

void ElementStore::save(const std::filesystem::path& path, const std::string& key) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write element cache " + path.string());
    out.write(kMagic, sizeof kMagic);
    write_pod(out, kFormatVersion);
    write_pod(out, static_cast<std::uint32_t>(key.size()));
    out.write(key.data(), static_cast<std::streamsize>(key.size()));
    write_pod(out, static_cast<std::uint64_t>(degree_));
    write_pod(out, static_cast<std::uint64_t>(size()));
    out.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size()));
    out.write(reinterpret_cast<const char*>(lengths_.data()),
              static_cast<std::streamsize>(lengths_.size() * sizeof(std::uint16_t)));
    if (!out) throw Error("failed writing element cache " + path.string());
}

ElementStore ElementStore::load(const std::filesystem::path& path, const std::string& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open element cache " + path.string());
    char magic[sizeof kMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw Error("element cache: bad magic");
    if (read_pod<std::uint32_t>(in) != kFormatVersion) throw Error("element cache: unsupported format version");
    std::string stored(read_pod<std::uint32_t>(in), '\0');
    in.read(stored.data(), static_cast<std::streamsize>(stored.size()));
    if (stored != key) throw Error("element cache: key mismatch ('" + stored + "' != '" + key + "')");
    ElementStore s;
    s.degree_ = read_pod<std::uint64_t>(in);
    const auto n = read_pod<std::uint64_t>(in);
    s.data_.resize(n * s.degree_);
    s.lengths_.resize(n);
    in.read(reinterpret_cast<char*>(s.data_.data()), static_cast<std::streamsize>(s.data_.size()));
    in.read(reinterpret_cast<char*>(s.lengths_.data()), static_cast<std::streamsize>(n * sizeof(std::uint16_t)));
    if (!in) throw Error("element cache: truncated file");
    std::size_t nslots = 64;
    while (nslots < 2 * n) nslots *= 2;
    s.rehash(nslots);
    return s;
}

ElementStore enumerate_elements(const PermRep& r, std::size_t max_elems) {
    if (r.degree > ElementStore::kMaxDegree)
        throw DomainError("permutation degree " + std::to_string(r.degree) + " exceeds 256");
    ElementStore s;
    s.degree_ = r.degree;
    std::vector<std::uint8_t> cur(r.degree), next(r.degree);
    std::iota(cur.begin(), cur.end(), std::uint8_t{0});
    s.insert(cur, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto len = s.word_length(i);
        for (const auto& gen : r.gens) {
            auto g = s.element(i);
            for (std::size_t k = 0; k < r.degree; ++k) next[k] = static_cast<std::uint8_t>(gen[g[k]]);
            const auto before = s.size();
            s.insert(next, len + 1);
            if (s.size() > before && s.size() > max_elems)
                throw BudgetExceeded("element enumeration exceeded " + std::to_string(max_elems) + " elements");
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Faithful realizations

namespace {

// Disjoint union of permutation representations of the irreducible components.
PermRep direct_sum(std::size_t rank, const std::vector<std::pair<ParabolicSubset, PermRep>>& parts) {
    PermRep out;
    for (const auto& [gens, rep] : parts) out.degree += rep.degree;
    out.gens.assign(rank, Perm(out.degree));
    for (auto& g : out.gens) std::iota(g.begin(), g.end(), 0u);
    std::size_t offset = 0;
    for (const auto& [gens, rep] : parts) {
        const auto members = gens.members();
        for (std::size_t local = 0; local < members.size(); ++local)
            for (std::size_t pt = 0; pt < rep.degree; ++pt)
                out.gens[members[local]][offset + pt] = static_cast<std::uint32_t>(offset + rep.gens[local][pt]);
        for (std::size_t local = 0; local < members.size(); ++local)
            if (rep.stabilizer.contains(local)) out.stabilizer = out.stabilizer.with(members[local]);
        offset += rep.degree;
    }
    return out;
}

Realization realize_irreducible(const CoxeterMatrix& m, const Integer& group_order, std::size_t max_elems) {
    struct Candidate {
        Integer index;
        ParabolicSubset T;
    };
    std::vector<Candidate> candidates;
    const auto full = ParabolicSubset::full(m.rank());
    for (std::size_t s = 0; s < m.rank(); ++s) {
        const auto T = full.without(s);
        auto sub = order(restrict(m, T).matrix);
        candidates.push_back({group_order / sub.value, T});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.index < b.index; });
    if (candidates.empty() || !candidates.back().T.empty()) candidates.push_back({group_order, ParabolicSubset()});

    Realization out;
    for (const auto& c : candidates) {
        if (c.index > ElementStore::kMaxDegree) continue;
        ++out.attempts;
        auto rep = perm_rep(m, c.T);
        auto store = enumerate_elements(rep, max_elems);
        if (Integer(store.size()) == group_order) {
            out.rep = std::move(rep);
            out.store = std::move(store);
            return out;
        }
    }
    throw DomainError("no faithful permutation representation of degree <= 256 found");
}

}  // namespace

Realization realize(const CoxeterMatrix& m, std::size_t max_elems) {
    const auto d = decompose(m);
    const auto o = order(d);
    if (o.infinite) throw DomainError("cannot enumerate an infinite Coxeter group");
    if (o.value > max_elems)
        throw BudgetExceeded("|W| = " + o.value.str() + " exceeds the element budget " + std::to_string(max_elems));
    if (d.components.size() == 1) return realize_irreducible(m, o.value, max_elems);

    std::vector<std::pair<ParabolicSubset, PermRep>> parts;
    std::size_t attempts = 0;
    for (const auto& c : d.components) {
        const auto sub = restrict(m, c.generators).matrix;
        auto r = realize_irreducible(sub, order(c.type).value, max_elems);
        attempts += r.attempts;
        parts.emplace_back(c.generators, std::move(r.rep));
    }
    Realization out;
    out.rep = direct_sum(m.rank(), parts);
    out.store = enumerate_elements(out.rep, max_elems);
    out.attempts = attempts;
    if (Integer(out.store.size()) != o.value) throw ContractViolation("direct sum of faithful realizations is not faithful");
    return out;
}

// ---------------------------------------------------------------------------
// Cyclic Sylow subgroups

std::uint64_t perm_order(std::span<const std::uint8_t> perm) {
    std::vector<bool> seen(perm.size(), false);
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        result = std::lcm(result, len);
    }
    return result;
}

namespace {

std::vector<std::uint8_t> perm_power(std::span<const std::uint8_t> perm, std::uint64_t k) {
    std::vector<std::uint8_t> out(perm.size());
    std::vector<bool> seen(perm.size(), false);
    std::vector<std::uint8_t> cycle;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        cycle.clear();
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            cycle.push_back(static_cast<std::uint8_t>(j));
        }
        const auto len = cycle.size();
        for (std::size_t pos = 0; pos < len; ++pos) out[cycle[pos]] = cycle[(pos + k) % len];
    }
    return out;
}

}  // namespace

CyclicSylow find_cyclic_sylow(const ElementStore& store, long long p) {
    require_odd_prime(p);
    const auto up = static_cast<std::uint64_t>(p);
    const auto a = valuation(static_cast<std::uint64_t>(store.size()), up);
    if (a == 0) throw DomainError("p = " + std::to_string(p) + " does not divide |W| = " + std::to_string(store.size()));
    const auto pa = ipow(up, a);

    CyclicSylow out;
    out.prime = up;
    out.exponent = a;
    out.order = pa;
    bool found = false;
    for (std::size_t i = 0; i < store.size() && !found; ++i) {
        const auto o = perm_order(store.element(i));
        if (valuation(o, up) == a) {
            out.generator = perm_power(store.element(i), o / pa);
            found = true;
        }
    }
    if (!found)
        throw SylowNotCyclic("no element of order " + std::to_string(pa) + ": Sylow " + std::to_string(p) +
                             "-subgroup is not cyclic");

    const auto degree = store.degree();
    std::unordered_map<std::string, std::uint64_t> powers;
    {
        auto x = std::span<const std::uint8_t>(out.generator);
        for (std::uint64_t j = 0; j < pa; ++j) {
            auto xj = perm_power(x, j);
            powers.emplace(std::string(xj.begin(), xj.end()), j);
        }
    }
    std::vector<bool> realized(pa, false);
    std::vector<std::uint8_t> inv(degree);
    std::string conj(degree, '\0');
    for (std::size_t i = 0; i < store.size(); ++i) {
        auto g = store.element(i);
        for (std::size_t k = 0; k < degree; ++k) inv[g[k]] = static_cast<std::uint8_t>(k);
        // g^-1 x g, acting on the right: first g^-1, then x, then g.
        for (std::size_t k = 0; k < degree; ++k) conj[k] = static_cast<char>(g[out.generator[inv[k]]]);
        if (auto it = powers.find(conj); it != powers.end()) {
            realized[it->second] = true;
            ++out.normalizer_order;
        }
    }
    for (std::uint64_t d = 0; d < pa; ++d)
        if (realized[d]) out.automorphism_exponents.push_back(d);
    out.e = static_cast<unsigned>(out.automorphism_exponents.size());
    if ((ipow(up, a - 1) * (up - 1)) % out.e != 0)
        throw ContractViolation("normalizer image order does not divide |Aut(P)|");
    return out;
}

}  // namespace coxhom
