#include "qdp/sequence.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace qdp {

Alphabet Alphabet::dna() {
    Alphabet a;
    a.codes_ = {{'A', 0}, {'C', 1}, {'G', 2}, {'T', 3}};
    a.fixed_ = true;
    return a;
}

std::optional<Code> Alphabet::find(char symbol) const {
    const auto it = codes_.find(symbol);
    if (it == codes_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<Code> Alphabet::intern(char symbol) {
    if (auto c = find(symbol)) {
        return c;
    }
    if (fixed_) {
        return std::nullopt;
    }
    const auto code = static_cast<Code>(codes_.size());
    codes_.emplace(symbol, code);
    return code;
}

unsigned bits_for(std::size_t count) {
    if (count <= 2) {
        return 1;
    }
    return static_cast<unsigned>(std::bit_width(count - 1));
}

bool SymbolSequence::is_padded() const { return codes.size() >= 2 && std::has_single_bit(codes.size()); }

std::size_t SymbolSequence::index_bits() const {
    if (!is_padded()) {
        throw PreconditionError("sequence length " + std::to_string(codes.size()) + " is not a padded power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(codes.size()));
}

SymbolSequence SymbolSequence::from_codes(std::vector<Code> codes, std::optional<unsigned> d) {
    SymbolSequence s;
    const Code max_code = codes.empty() ? 0 : *std::max_element(codes.begin(), codes.end());
    s.d = d.value_or(bits_for(static_cast<std::size_t>(max_code) + 1));
    if (max_code >> s.d) {
        throw PreconditionError("code " + std::to_string(max_code) + " does not fit in " + std::to_string(s.d) +
                                " bits");
    }
    s.original_length = codes.size();
    s.codes = std::move(codes);
    return s;
}

namespace {

Alphabet alphabet_for(AlphabetPreset preset) {
    return preset == AlphabetPreset::dna ? Alphabet::dna() : Alphabet::automatic();
}

std::vector<Code> encode_symbols(std::string_view raw, Alphabet& alphabet) {
    std::vector<Code> codes;
    codes.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto code = alphabet.intern(raw[i]);
        if (!code) {
            throw ConfigError(std::string("invalid symbol '") + raw[i] + "' at position " + std::to_string(i));
        }
        codes.push_back(*code);
    }
    return codes;
}

}  // namespace

SymbolSequence map_alphabet(std::string_view raw, AlphabetPreset preset) {
    if (raw.empty()) {
        throw PreconditionError("cannot map an empty sequence");
    }
    SymbolSequence s;
    s.alphabet = alphabet_for(preset);
    s.codes = encode_symbols(raw, s.alphabet);
    s.original_length = s.codes.size();
    s.d = bits_for(s.alphabet.size());
    return s;
}

std::pair<SymbolSequence, SymbolSequence> map_alphabet_pair(std::string_view reference, std::string_view query,
                                                            AlphabetPreset preset) {
    if (reference.empty() || query.empty()) {
        throw PreconditionError("cannot map an empty sequence");
    }
    Alphabet shared = alphabet_for(preset);
    auto r_codes = encode_symbols(reference, shared);
    auto q_codes = encode_symbols(query, shared);
    const unsigned d = bits_for(shared.size());

    SymbolSequence r;
    r.codes = std::move(r_codes);
    r.original_length = r.codes.size();
    SymbolSequence q;
    q.codes = std::move(q_codes);
    q.original_length = q.codes.size();
    r.alphabet = shared;
    q.alphabet = shared;
    r.d = q.d = d;
    return {std::move(r), std::move(q)};
}

std::pair<SymbolSequence, SymbolSequence> pad_pair(SymbolSequence reference, SymbolSequence query) {
    auto needs_padding = [](const SymbolSequence& s) { return !s.is_padded(); };
    auto max_code = [](const SymbolSequence& s) -> Code {
        return s.codes.empty() ? 0 : *std::max_element(s.codes.begin(), s.codes.end());
    };

    // Fresh codes lie past both the alphabets and every code in use.
    std::size_t next = std::max(reference.alphabet.size(), query.alphabet.size());
    next = std::max<std::size_t>(next, static_cast<std::size_t>(max_code(reference)) + 1);
    next = std::max<std::size_t>(next, static_cast<std::size_t>(max_code(query)) + 1);

    auto pad = [&](SymbolSequence& s) {
        if (!needs_padding(s)) {
            return;
        }
        const auto code = static_cast<Code>(next++);
        const std::size_t target = std::max<std::size_t>(2, std::bit_ceil(s.codes.size()));
        s.codes.resize(target, code);
        s.pad_code = code;
    };
    pad(reference);
    pad(query);

    const unsigned d = std::max({reference.d, query.d, bits_for(std::max(max_code(reference), max_code(query)) + 1u)});
    reference.d = query.d = d;
    return {std::move(reference), std::move(query)};
}

}  // namespace qdp
