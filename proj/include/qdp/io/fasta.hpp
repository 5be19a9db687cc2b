#pragma once

#include "qdp/sequence.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace qdp::io {

/// Symbols of the first record: header lines ('>') and ';' comments skipped,
/// whitespace dropped, letters uppercased. Text without any header is read as
/// one raw sequence. Under the DNA preset only A, C, G, T are accepted; under
/// the automatic preset any letter is.
/// Throws ConfigError on an empty record or an invalid symbol (0-based position).
[[nodiscard]] std::string parse_fasta(std::string_view text, AlphabetPreset preset = AlphabetPreset::automatic);

/// parse_fasta on a file's contents. Throws ConfigError if it cannot be read.
[[nodiscard]] std::string read_fasta(const std::filesystem::path& path,
                                     AlphabetPreset preset = AlphabetPreset::automatic);

/// "dna" or "auto".
[[nodiscard]] AlphabetPreset parse_alphabet_preset(std::string_view text);

}  // namespace qdp::io
