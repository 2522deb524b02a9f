#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace coxhom {

/// Named lists of catalog names plus the primes to test, read from corpus.json.
struct Corpus {
    int version = 0;
    std::vector<long long> primes;
    std::map<std::string, std::vector<std::string>> sets;

    /// Throws ParseError for an unknown set name.
    const std::vector<std::string>& members(const std::string& name) const;
};

/// Throws ParseError on malformed content or an unsupported version.
Corpus parse_corpus(const std::string& json_text);
Corpus load_corpus(const std::filesystem::path& path);

/// $COXHOM_DATA_DIR if set, otherwise the data directory of the source tree.
std::filesystem::path data_dir();

}  // namespace coxhom
