#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdp {

using Code = std::uint32_t;

enum class AlphabetPreset { automatic, dna };

/// Symbol-to-code assignment shared by the sequences of one alignment.
class Alphabet {
public:
    /// Fixed A=0, C=1, G=2, T=3.
    static Alphabet dna();
    static Alphabet automatic() { return Alphabet{}; }

    [[nodiscard]] bool fixed() const { return fixed_; }
    [[nodiscard]] std::size_t size() const { return codes_.size(); }
    [[nodiscard]] std::optional<Code> find(char symbol) const;
    /// Code for `symbol`, assigning the next free code if the alphabet is not
    /// fixed. Returns nullopt for an unknown symbol under a fixed alphabet.
    std::optional<Code> intern(char symbol);
    [[nodiscard]] const std::map<char, Code>& codes() const { return codes_; }

private:
    std::map<char, Code> codes_;
    bool fixed_ = false;
};

/// Bits needed to tell `count` distinct codes apart; at least 1.
[[nodiscard]] unsigned bits_for(std::size_t count);

struct SymbolSequence {
    std::vector<Code> codes;
    Alphabet alphabet;
    /// Bits per element.
    unsigned d = 1;
    std::size_t original_length = 0;
    std::optional<Code> pad_code;

    [[nodiscard]] std::size_t padded_length() const { return codes.size(); }
    [[nodiscard]] bool is_padded() const;
    /// log2 of the padded length. Requires is_padded().
    [[nodiscard]] std::size_t index_bits() const;

    /// Sequence over explicit codes; `d` defaults to the bits of the largest code.
    static SymbolSequence from_codes(std::vector<Code> codes, std::optional<unsigned> d = std::nullopt);
};

/// Maps raw symbols to codes. Automatic alphabets assign codes in order of
/// first appearance. Throws ConfigError on a symbol outside a fixed alphabet.
[[nodiscard]] SymbolSequence map_alphabet(std::string_view raw, AlphabetPreset preset = AlphabetPreset::automatic);

/// Maps two sequences over one shared alphabet (reference symbols first).
[[nodiscard]] std::pair<SymbolSequence, SymbolSequence> map_alphabet_pair(std::string_view reference,
                                                                          std::string_view query,
                                                                          AlphabetPreset preset);

/// Pads both sequences to their next power of two (minimum 2) with fresh codes
/// that occur in neither, P_R for the reference and a different P_Q for the
/// query, and widens d of both to hold the larger pad code.
[[nodiscard]] std::pair<SymbolSequence, SymbolSequence> pad_pair(SymbolSequence reference, SymbolSequence query);

}  // namespace qdp
