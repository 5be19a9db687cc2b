#include "qdp/io/fasta.hpp"

#include "qdp/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qdp::io {

std::string parse_fasta(std::string_view text, AlphabetPreset preset) {
    std::string out;
    bool in_record = false;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        auto line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        if (line[first] == '>') {
            if (in_record && !out.empty()) break;
            in_record = true;
            continue;
        }
        if (line[first] == ';') continue;
        for (const char raw : line) {
            if (std::isspace(static_cast<unsigned char>(raw))) continue;
            const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
            const bool ok = preset == AlphabetPreset::dna ? (ch == 'A' || ch == 'C' || ch == 'G' || ch == 'T')
                                                          : std::isalpha(static_cast<unsigned char>(ch)) != 0;
            if (!ok) {
                throw ConfigError("invalid symbol '" + std::string(1, raw) + "' at position " +
                                  std::to_string(out.size()));
            }
            out.push_back(ch);
        }
    }
    if (out.empty()) {
        throw ConfigError("empty record: no sequence data found");
    }
    return out;
}

std::string read_fasta(const std::filesystem::path& path, AlphabetPreset preset) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open sequence file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_fasta(ss.str(), preset);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

AlphabetPreset parse_alphabet_preset(std::string_view text) {
    if (text == "dna" || text == "DNA") return AlphabetPreset::dna;
    if (text == "auto" || text == "automatic") return AlphabetPreset::automatic;
    throw ConfigError("unknown alphabet '" + std::string(text) + "' (expected dna or auto)");
}

}  // namespace qdp::io
