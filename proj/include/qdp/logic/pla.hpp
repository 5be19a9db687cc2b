#pragma once

#include "qdp/ir/circuit.hpp"
#include "qdp/sequence.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdp::logic {

enum class Literal : std::uint8_t { zero, one, dash };

/// One row of a two-level cover. Inputs are stored as bit masks indexed by
/// index bit (bit 0 = least significant); text forms are MSB-first.
class Cube {
public:
    Cube() = default;
    Cube(std::size_t n_inputs, std::uint64_t care, std::uint64_t value, std::uint64_t output);

    static Cube minterm(std::size_t n_inputs, std::uint64_t index, std::uint64_t output);
    /// `inputs` over {0,1,-} and `outputs` over {0,1}, both MSB-first.
    static Cube parse(std::string_view inputs, std::string_view outputs);

    [[nodiscard]] std::size_t n_inputs() const { return n_inputs_; }
    [[nodiscard]] std::uint64_t care() const { return care_; }
    [[nodiscard]] std::uint64_t value() const { return value_; }
    [[nodiscard]] std::uint64_t output() const { return output_; }

    /// Literal at text position `position` (0 = most significant input).
    [[nodiscard]] Literal literal(std::size_t position) const;
    /// Literal for index bit `bit` (0 = least significant input).
    [[nodiscard]] Literal literal_at_bit(std::size_t bit) const;
    [[nodiscard]] bool is_minterm() const;
    [[nodiscard]] bool covers(std::uint64_t index) const { return (index & care_) == value_; }
    /// True iff every input covered by `other` is covered by this cube.
    [[nodiscard]] bool contains_inputs(const Cube& other) const;
    [[nodiscard]] std::string input_string() const;
    [[nodiscard]] std::string output_string(std::size_t n_outputs) const;

    void set_output(std::uint64_t output) { output_ = output; }

    friend bool operator==(const Cube&, const Cube&) = default;

private:
    std::size_t n_inputs_ = 0;
    std::uint64_t care_ = 0;
    std::uint64_t value_ = 0;
    std::uint64_t output_ = 0;
};

/// Orders cubes by their MSB-first literal strings with 0 < 1 < -, then by
/// output mask.
[[nodiscard]] bool lex_less(const Cube& a, const Cube& b);

struct PlaTable {
    std::size_t n_inputs = 0;
    std::size_t n_outputs = 0;
    std::vector<Cube> cubes;

    /// OR of the outputs of all cubes covering `index`.
    [[nodiscard]] std::uint64_t evaluate(std::uint64_t index) const;
};

/// Positive or negative control on index bit `bit`.
struct IndexControl {
    std::size_t bit = 0;
    ir::Polarity polarity = ir::Polarity::positive;

    friend bool operator==(const IndexControl&, const IndexControl&) = default;
};

/// Register-independent multicontrolled X: controls on index bits (listed
/// most significant first) flipping data bit `target_bit`. An empty control
/// list means an unconditional X.
struct McxDescriptor {
    std::vector<IndexControl> controls;
    std::size_t target_bit = 0;

    friend bool operator==(const McxDescriptor&, const McxDescriptor&) = default;
};

/// One minterm per index holding a nonzero element; output = element value.
[[nodiscard]] PlaTable build_pla(const SymbolSequence& sequence);

/// One full-width MCX per (minterm, set output bit). Throws PreconditionError
/// if a cube is not a minterm.
[[nodiscard]] std::vector<McxDescriptor> brute_force_mcx(const PlaTable& table);

/// Distance-1 merging of cubes with equal outputs, to fixpoint, with duplicate
/// and contained cubes removed. Merge pairs are chosen in lexicographic order.
/// On a cover of pairwise disjoint cubes (as built by build_pla) the result
/// stays pairwise disjoint.
[[nodiscard]] PlaTable d1merge_minimize(const PlaTable& table);

/// Exhaustive comparison over every input assignment. Throws
/// PreconditionError on an arity mismatch or more than 24 inputs.
[[nodiscard]] bool functional_equal(const PlaTable& a, const PlaTable& b);

/// Per cube, one MCX per set output bit; dash literals contribute no control.
/// Cubes with identical inputs are coalesced first. The gates XOR their
/// outputs, which matches the cover's OR semantics when cubes sharing an
/// output bit are disjoint.
[[nodiscard]] std::vector<McxDescriptor> cubes_to_mcx(const PlaTable& table);

/// Berkeley PLA text: ".i n", ".o m", one "inputs outputs" line per cube, ".e".
void write_pla(std::ostream& out, const PlaTable& table);
[[nodiscard]] std::string to_pla_string(const PlaTable& table);
[[nodiscard]] PlaTable read_pla(std::istream& in);
[[nodiscard]] PlaTable parse_pla(std::string_view text);

}  // namespace qdp::logic
