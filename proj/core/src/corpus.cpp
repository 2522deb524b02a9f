#include "coxhom/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coxhom/error.hpp"

#ifndef COXHOM_SOURCE_DATA_DIR
#define COXHOM_SOURCE_DATA_DIR "data"
#endif

namespace coxhom {

const std::vector<std::string>& Corpus::members(const std::string& name) const {
    auto it = sets.find(name);
    if (it == sets.end()) throw ParseError("unknown corpus '" + name + "'");
    return it->second;
}

Corpus parse_corpus(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("corpus: ") + e.what());
    }
    Corpus c;
    try {
        c.version = j.at("version").get<int>();
        if (c.version != 1) throw ParseError("corpus: unsupported version " + std::to_string(c.version));
        c.primes = j.at("primes").get<std::vector<long long>>();
        for (const auto& [name, list] : j.at("corpora").items()) c.sets[name] = list.get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("corpus: ") + e.what());
    }
    return c;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("COXHOM_DATA_DIR"); env && *env) return env;
    return COXHOM_SOURCE_DATA_DIR;
}

}  // namespace coxhom
