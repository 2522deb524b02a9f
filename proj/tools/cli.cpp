#include "cli.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coxhom/complex.hpp"
#include "coxhom/corpus.hpp"
#include "coxhom/coxeter.hpp"
#include "coxhom/error.hpp"
#include "coxhom/group.hpp"
#include "coxhom/plocal.hpp"
#include "coxhom/type_table.hpp"

namespace coxhom::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

struct Config {
    std::size_t max_elems = kDefaultMaxElements;
    std::size_t max_simplices = kDefaultMaxSimplices;
    std::size_t max_coset_rows = kDefaultMaxCosetRows;
    Format format = Format::Text;
};

// A graph file if the path exists, otherwise a catalog name.
CoxeterMatrix read_input(const std::string& input) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(input, ec)) {
        std::ifstream in(input);
        if (!in) throw ParseError("cannot open " + input);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_coxeter(ss.str());
    }
    return catalog(input);
}

std::string subject_of(const CoxeterMatrix& m) {
    const auto d = decompose(m);
    return d.components.empty() ? "1" : d.label("×");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

EngineOptions engine_options(const Config& cfg) {
    EngineOptions o;
    o.max_elems = cfg.max_elems;
    return o;
}

// ---------------------------------------------------------------------------

int cmd_classify(const Config& cfg, const std::string& input, std::ostream& out) {
    const auto m = read_input(input);
    const auto d = decompose(m);
    const auto o = order(m);
    const auto subject = subject_of(m);
    const auto p_free = describe_p_freeness(m);
    const bool aspherical = is_aspherical(m);
    const auto n1 = odd_graph_components(m);

    switch (cfg.format) {
        case Format::Text:
            out << subject << " | " << o.to_string() << " | p-free: " << p_free << '\n';
            for (const auto& c : d.components) out << "  " << c.type.label() << ' ' << c.generators.to_string() << '\n';
            out << "aspherical: " << (aspherical ? "yes" : "no") << '\n';
            out << "n1: " << n1 << '\n';
            break;
        case Format::Json: {
            json comps = json::array();
            for (const auto& c : d.components)
                comps.push_back({{"type", c.type.label()}, {"generators", c.generators.members()}});
            json j = {{"label", subject},
                      {"rank", m.rank()},
                      {"order", o.infinite ? "infinite" : o.value.str()},
                      {"factorization", o.infinite ? "" : format_factorization(o.factors)},
                      {"p_free", p_free},
                      {"aspherical", aspherical},
                      {"n1", n1},
                      {"components", comps},
                      {"matrix", m}};
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            out << "label,order,factorization,p_free,aspherical,n1\n";
            out << csv_field(subject) << ',' << (o.infinite ? "infinite" : o.value.str()) << ','
                << (o.infinite ? "" : format_factorization(o.factors)) << ',' << csv_field(p_free) << ','
                << (aspherical ? "yes" : "no") << ',' << n1 << '\n';
            break;
    }
    return kOk;
}

int cmd_table(const Config& cfg, std::ostream& out) {
    const auto rows = type_table();
    switch (cfg.format) {
        case Format::Text: out << render_type_table_text(rows); break;
        case Format::Json: out << render_type_table_json(rows); break;
        case Format::Csv: out << render_type_table_csv(rows); break;
    }
    return kOk;
}

struct HomologyArgs {
    std::string input;
    long long p = 0;
    unsigned kmax = 0;
    bool trace = false;
    bool no_enumeration = false;
};

int cmd_homology(const Config& cfg, const HomologyArgs& a, std::ostream& out) {
    const auto m = read_input(a.input);
    require_odd_prime(a.p);
    const unsigned kmax = a.kmax ? a.kmax : default_max_degree(a.p);
    if (kmax > kMaxDegreeCap) throw ParseError("--kmax exceeds " + std::to_string(kMaxDegreeCap));
    auto opts = engine_options(cfg);
    opts.allow_enumeration = !a.no_enumeration;
    Engine engine(opts);
    const auto derivation = engine.derive(m, a.p, kmax);
    const auto h = derivation.result();
    const auto cell = [&](unsigned k) { return h.resolved(k) ? h.at(k).to_string() : std::string("unresolved"); };

    switch (cfg.format) {
        case Format::Text:
            out << "H_k(" << subject_of(m) << "; Z_(" << a.p << "))\n";
            for (unsigned k = 1; k <= kmax; ++k) out << k << ": " << cell(k) << '\n';
            if (a.trace) out << "certificate:\n" << derivation.to_json().dump(2) << '\n';
            break;
        case Format::Json: {
            json degrees = json::array();
            for (unsigned k = 1; k <= kmax; ++k) degrees.push_back({{"degree", k}, {"group", cell(k)}});
            json j = {{"subject", subject_of(m)},
                      {"prime", a.p},
                      {"max_degree", kmax},
                      {"homology", degrees},
                      {"unresolved", h.unresolved()}};
            if (a.trace) j["certificate"] = derivation.to_json();
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            out << "degree,group\n";
            for (unsigned k = 1; k <= kmax; ++k) out << k << ',' << cell(k) << '\n';
            break;
    }
    return h.complete() ? kOk : kInconclusive;
}

struct ComplexArgs {
    std::string input;
    bool homology = false;
    bool orbit_check = false;
    bool action_check = false;
    std::string export_path;
};

int cmd_complex(const Config& cfg, const ComplexArgs& a, std::ostream& out) {
    const auto m = read_input(a.input);
    const auto X = build_complex(m, cfg.max_simplices, cfg.max_coset_rows);
    const std::size_t n = m.rank();
    const long long chi_expected = 1 + ((n - 1) % 2 == 0 ? 1 : -1);
    bool ok = X.euler_characteristic() == chi_expected;
    json j = {{"subject", subject_of(m)},
              {"rank", n},
              {"order", X.group_order().str()},
              {"f_vector", X.f_vector()},
              {"euler_characteristic", X.euler_characteristic()},
              {"euler_expected", chi_expected}};

    std::optional<ChainComplex> chain;
    if (a.homology || !a.export_path.empty()) chain = boundary_matrices(X);
    if (a.homology) {
        const auto h = chain_homology(*chain);
        const bool sphere = h == sphere_homology(n - 1);
        ok = ok && sphere;
        j["homology"] = h.to_string();
        j["sphere"] = sphere;
    }
    if (a.orbit_check) {
        bool point = false;
        std::string orbit = "n/a";
        try {
            const auto h = chain_homology(orbit_chain_complex(X));
            orbit = h.to_string();
            point = h == point_homology(X.dimension());
        } catch (const ContractViolation& e) {
            orbit = e.what();
        }
        ok = ok && point;
        j["orbit_homology"] = orbit;
        j["orbit_point"] = point;
    }
    if (a.action_check) {
        std::vector<int> signs;
        for (std::size_t s = 0; s < n; ++s) signs.push_back(generator_action_on_top(X, s));
        for (int sg : signs) ok = ok && sg == -1;
        j["generator_action"] = signs;
    }
    if (!a.export_path.empty()) {
        std::ofstream f(a.export_path);
        if (!f) throw ParseError("cannot write " + a.export_path);
        write_triplets(f, X, *chain);
        j["exported"] = a.export_path;
    }
    j["ok"] = ok;

    const auto fvec = [&] {
        std::string s = "(";
        for (std::size_t i = 0; i < X.f_vector().size(); ++i) s += (i ? "," : "") + std::to_string(X.f_vector()[i]);
        return s + ")";
    }();
    const auto yes = [](bool b) { return b ? "yes" : "no"; };
    switch (cfg.format) {
        case Format::Text:
            out << j["subject"].get<std::string>() << " | rank " << n << " | |W| = " << X.group_order().str() << '\n';
            out << "f-vector: " << fvec << '\n';
            out << "euler characteristic: " << X.euler_characteristic() << " (sphere S^" << n - 1 << ": "
                << chi_expected << ")\n";
            if (a.homology)
                out << "homology: " << j["homology"].get<std::string>() << " | sphere: " << yes(j["sphere"]) << '\n';
            if (a.orbit_check)
                out << "orbit complex: " << j["orbit_homology"].get<std::string>()
                    << " | point: " << yes(j["orbit_point"]) << '\n';
            if (a.action_check) {
                out << "generator action on top class:";
                for (int sg : j["generator_action"]) out << ' ' << sg;
                out << '\n';
            }
            if (!a.export_path.empty()) out << "boundary triplets written to " << a.export_path << '\n';
            break;
        case Format::Json: out << j.dump(2) << '\n'; break;
        case Format::Csv:
            out << "subject,rank,order,f_vector,euler,homology,orbit_homology,ok\n";
            out << csv_field(j["subject"]) << ',' << n << ',' << X.group_order().str() << ',' << csv_field(fvec) << ','
                << X.euler_characteristic() << ',' << csv_field(j.value("homology", "")) << ','
                << csv_field(j.value("orbit_homology", "")) << ',' << yes(ok) << '\n';
            break;
    }
    return ok ? kOk : kFail;
}

struct VerifyArgs {
    std::string corpus = "default";
    std::string corpus_file;
    std::vector<long long> primes;
    bool big = false;
    bool timing = false;
    unsigned threads = 0;
};

struct PairResult {
    std::string name;
    long long p = 0;
    std::optional<VanishingReport> report;
    std::string error;
};

int cmd_verify(const Config& cfg, const VerifyArgs& a, std::ostream& out) {
    const auto corpus = load_corpus(a.corpus_file.empty() ? data_dir() / "corpus.json" : std::filesystem::path(a.corpus_file));
    std::vector<std::string> names = corpus.members(a.corpus);
    if (a.big)
        for (const auto& b : corpus.members("big")) names.push_back(b);
    const auto primes = a.primes.empty() ? corpus.primes : a.primes;
    for (auto p : primes) require_odd_prime(p);

    std::vector<PairResult> results;
    for (const auto& name : names) {
        catalog(name);  // reject bad names before any work starts
        for (auto p : primes) {
            PairResult r;
            r.name = name;
            r.p = p;
            results.push_back(std::move(r));
        }
    }

    Engine engine(engine_options(cfg));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < results.size(); i = next++) {
            auto& r = results[i];
            try {
                r.report = verify_vanishing_range(engine, catalog(r.name), r.p);
            } catch (const Error& e) {
                r.error = e.what();
            }
        }
    };
    unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, results.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::size_t pass = 0, fail = 0, inconclusive = 0, violated = 0;
    for (const auto& r : results) {
        if (!r.report) {
            ++inconclusive;
            continue;
        }
        switch (r.report->verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            case Verdict::Inconclusive: ++inconclusive; break;
            case Verdict::HypothesisViolated: ++violated; break;
        }
    }
    const auto detail = [](const PairResult& r) { return r.report ? r.report->summary() : "INCONCLUSIVE; " + r.error; };
    const auto seconds = [](const PairResult& r) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << (r.report ? r.report->seconds : 0.0);
        return s.str();
    };

    switch (cfg.format) {
        case Format::Text:
            for (const auto& r : results) {
                out << r.name << " | p=" << r.p << " | "
                    << (r.report && r.report->p_free ? "p-free" : r.report ? "not p-free" : "?") << " | " << detail(r);
                if (a.timing) out << " | " << seconds(r) << "s";
                out << '\n';
            }
            out << "summary: " << results.size() << " pairs, " << pass << " PASS, " << fail << " FAIL, " << inconclusive
                << " INCONCLUSIVE, " << violated << " hypothesis violated\n";
            break;
        case Format::Json: {
            json rows = json::array();
            for (const auto& r : results) {
                json row = {{"subject", r.name}, {"prime", r.p}, {"summary", detail(r)}};
                if (r.report) {
                    row["p_free"] = r.report->p_free;
                    row["verdict"] = verdict_name(r.report->verdict);
                    if (r.report->sharpness) row["sharpness"] = r.report->sharpness->to_string();
                } else {
                    row["verdict"] = "INCONCLUSIVE";
                }
                if (a.timing) row["seconds"] = r.report ? r.report->seconds : 0.0;
                rows.push_back(row);
            }
            json counts;
            counts["pairs"] = results.size();
            counts["pass"] = pass;
            counts["fail"] = fail;
            counts["inconclusive"] = inconclusive;
            counts["hypothesis_violated"] = violated;
            json j;
            j["corpus"] = a.corpus;
            j["primes"] = primes;
            j["results"] = rows;
            j["counts"] = counts;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            out << "subject,prime,p_free,verdict,detail" << (a.timing ? ",seconds" : "") << '\n';
            for (const auto& r : results) {
                out << csv_field(r.name) << ',' << r.p << ',' << (r.report && r.report->p_free ? "yes" : "no") << ','
                    << (r.report ? verdict_name(r.report->verdict) : "INCONCLUSIVE") << ',' << csv_field(detail(r));
                if (a.timing) out << ',' << seconds(r);
                out << '\n';
            }
            break;
    }
    if (fail) return kFail;
    if (inconclusive) return kInconclusive;
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-local homology of Coxeter groups", "coxhom"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
    app.add_option("--format", cfg.format, "text, json or csv")->transform(CLI::CheckedTransformer(formats));
    app.add_option("--max-elems", cfg.max_elems, "element enumeration budget")->check(CLI::PositiveNumber);
    app.add_option("--max-simplices", cfg.max_simplices, "Coxeter complex size budget")->check(CLI::PositiveNumber);
    app.add_option("--max-coset-rows", cfg.max_coset_rows, "coset table budget")->check(CLI::PositiveNumber);

    std::string classify_input;
    auto* classify = app.add_subcommand("classify", "decompose a Coxeter graph and describe its group");
    classify->add_option("input", classify_input, "graph file or catalog name")->required();

    auto* table = app.add_subcommand("table", "the finite irreducible types with orders and p-free ranges");

    HomologyArgs ha;
    auto* homology = app.add_subcommand("homology", "derive H_k(W; Z_(p)) with a certificate");
    homology->add_option("input", ha.input, "graph file or catalog name")->required();
    homology->add_option("--p", ha.p, "odd prime")->required();
    homology->add_option("--kmax", ha.kmax, "top degree (default 2(p-2))");
    homology->add_flag("--trace", ha.trace, "print the derivation certificate");
    homology->add_flag("--no-enumeration", ha.no_enumeration, "never enumerate group elements");

    ComplexArgs ca;
    auto* complex = app.add_subcommand("complex", "build the Coxeter complex and check it");
    complex->add_option("input", ca.input, "graph file or catalog name")->required();
    complex->add_flag("--homology", ca.homology, "integral homology and the sphere check");
    complex->add_flag("--orbit-check", ca.orbit_check, "homology of the orbit chain complex");
    complex->add_flag("--action-check", ca.action_check, "action of each generator on the top class");
    complex->add_option("--export", ca.export_path, "write boundary matrices as triplets");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check the vanishing range over a corpus");
    verify->add_option("--corpus", va.corpus, "corpus name");
    verify->add_option("--corpus-file", va.corpus_file, "corpus JSON (default: shipped data/corpus.json)");
    verify->add_option("--p", va.primes, "primes (default: the corpus primes)")->delimiter(',');
    verify->add_flag("--big", va.big, "include the big corpus");
    verify->add_flag("--timing", va.timing, "report seconds per pair");
    verify->add_option("--threads", va.threads, "worker threads (default: hardware)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*classify) return cmd_classify(cfg, classify_input, out);
        if (*table) return cmd_table(cfg, out);
        if (*homology) return cmd_homology(cfg, ha, out);
        if (*complex) return cmd_complex(cfg, ca, out);
        if (*verify) return cmd_verify(cfg, va, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kInconclusive;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace coxhom::cli
