#include "qdp/logic/pla.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qdp::logic {
namespace {

std::uint64_t low_mask(std::size_t bits) { return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1); }

int literal_rank(Literal l) { return static_cast<int>(l); }

}  // namespace

Cube::Cube(std::size_t n_inputs, std::uint64_t care, std::uint64_t value, std::uint64_t output)
    : n_inputs_(n_inputs), care_(care & low_mask(n_inputs)), value_(value & care & low_mask(n_inputs)),
      output_(output) {
    if (n_inputs > 63) {
        throw PreconditionError("cubes support at most 63 inputs");
    }
}

Cube Cube::minterm(std::size_t n_inputs, std::uint64_t index, std::uint64_t output) {
    return Cube(n_inputs, low_mask(n_inputs), index, output);
}

Cube Cube::parse(std::string_view inputs, std::string_view outputs) {
    std::uint64_t care = 0;
    std::uint64_t value = 0;
    const std::size_t n = inputs.size();
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::uint64_t bit = 1ULL << (n - 1 - pos);
        switch (inputs[pos]) {
            case '0': care |= bit; break;
            case '1':
                care |= bit;
                value |= bit;
                break;
            case '-':
            case '2': break;
            default: throw PreconditionError(std::string("bad input literal '") + inputs[pos] + "'");
        }
    }
    std::uint64_t out = 0;
    const std::size_t m = outputs.size();
    if (m > 64) {
        throw PreconditionError("cubes support at most 64 outputs");
    }
    for (std::size_t pos = 0; pos < m; ++pos) {
        switch (outputs[pos]) {
            case '1': out |= 1ULL << (m - 1 - pos); break;
            case '0':
            case '-':
            case '~': break;
            default: throw PreconditionError(std::string("bad output literal '") + outputs[pos] + "'");
        }
    }
    return Cube(n, care, value, out);
}

Literal Cube::literal_at_bit(std::size_t bit) const {
    const std::uint64_t m = 1ULL << bit;
    if (!(care_ & m)) {
        return Literal::dash;
    }
    return (value_ & m) ? Literal::one : Literal::zero;
}

Literal Cube::literal(std::size_t position) const { return literal_at_bit(n_inputs_ - 1 - position); }

bool Cube::is_minterm() const { return care_ == low_mask(n_inputs_); }

bool Cube::contains_inputs(const Cube& other) const {
    // Every literal we fix must be fixed identically in `other`.
    return (care_ & ~other.care_) == 0 && (other.value_ & care_) == value_;
}

std::string Cube::input_string() const {
    std::string s(n_inputs_, '-');
    for (std::size_t pos = 0; pos < n_inputs_; ++pos) {
        switch (literal(pos)) {
            case Literal::zero: s[pos] = '0'; break;
            case Literal::one: s[pos] = '1'; break;
            case Literal::dash: break;
        }
    }
    return s;
}

std::string Cube::output_string(std::size_t n_outputs) const {
    std::string s(n_outputs, '0');
    for (std::size_t pos = 0; pos < n_outputs; ++pos) {
        if ((output_ >> (n_outputs - 1 - pos)) & 1ULL) {
            s[pos] = '1';
        }
    }
    return s;
}

bool lex_less(const Cube& a, const Cube& b) {
    const std::size_t n = std::min(a.n_inputs(), b.n_inputs());
    for (std::size_t pos = 0; pos < n; ++pos) {
        const int la = literal_rank(a.literal(pos));
        const int lb = literal_rank(b.literal(pos));
        if (la != lb) {
            return la < lb;
        }
    }
    if (a.n_inputs() != b.n_inputs()) {
        return a.n_inputs() < b.n_inputs();
    }
    return a.output() < b.output();
}

std::uint64_t PlaTable::evaluate(std::uint64_t index) const {
    std::uint64_t out = 0;
    for (const auto& c : cubes) {
        if (c.covers(index)) {
            out |= c.output();
        }
    }
    return out;
}

PlaTable build_pla(const SymbolSequence& sequence) {
    if (!sequence.is_padded()) {
        throw PreconditionError("build_pla needs a padded sequence; length " +
                                std::to_string(sequence.padded_length()) + " is not a power of two >= 2");
    }
    PlaTable table;
    table.n_inputs = sequence.index_bits();
    table.n_outputs = sequence.d;
    for (std::size_t i = 0; i < sequence.codes.size(); ++i) {
        if (sequence.codes[i] != 0) {
            table.cubes.push_back(Cube::minterm(table.n_inputs, i, sequence.codes[i]));
        }
    }
    return table;
}

namespace {

std::vector<IndexControl> controls_of(const Cube& cube) {
    std::vector<IndexControl> controls;
    for (std::size_t pos = 0; pos < cube.n_inputs(); ++pos) {
        const std::size_t bit = cube.n_inputs() - 1 - pos;
        switch (cube.literal_at_bit(bit)) {
            case Literal::zero: controls.push_back({bit, ir::Polarity::negative}); break;
            case Literal::one: controls.push_back({bit, ir::Polarity::positive}); break;
            case Literal::dash: break;
        }
    }
    return controls;
}

void emit_per_output_bit(const Cube& cube, std::size_t n_outputs, std::vector<McxDescriptor>& out) {
    const auto controls = controls_of(cube);
    for (std::size_t b = 0; b < n_outputs; ++b) {
        if ((cube.output() >> b) & 1ULL) {
            out.push_back({controls, b});
        }
    }
}

}  // namespace

std::vector<McxDescriptor> brute_force_mcx(const PlaTable& table) {
    std::vector<McxDescriptor> out;
    for (const auto& c : table.cubes) {
        if (!c.is_minterm()) {
            throw PreconditionError("brute_force_mcx needs minterms; cube " + c.input_string() + " has don't-cares");
        }
        emit_per_output_bit(c, table.n_outputs, out);
    }
    return out;
}

bool functional_equal(const PlaTable& a, const PlaTable& b) {
    if (a.n_inputs != b.n_inputs || a.n_outputs != b.n_outputs) {
        throw PreconditionError("functional_equal: arity mismatch");
    }
    if (a.n_inputs > 24) {
        throw PreconditionError("functional_equal: more than 24 inputs");
    }
    const std::uint64_t rows = 1ULL << a.n_inputs;
    for (std::uint64_t i = 0; i < rows; ++i) {
        if (a.evaluate(i) != b.evaluate(i)) {
            return false;
        }
    }
    return true;
}

std::vector<McxDescriptor> cubes_to_mcx(const PlaTable& table) {
    std::vector<Cube> coalesced;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> seen;
    for (const auto& c : table.cubes) {
        const auto key = std::make_pair(c.care(), c.value());
        if (auto it = seen.find(key); it != seen.end()) {
            auto& target = coalesced[it->second];
            target.set_output(target.output() | c.output());
        } else {
            seen.emplace(key, coalesced.size());
            coalesced.push_back(c);
        }
    }
    std::vector<McxDescriptor> out;
    for (const auto& c : coalesced) {
        emit_per_output_bit(c, table.n_outputs, out);
    }
    return out;
}

void write_pla(std::ostream& out, const PlaTable& table) {
    out << ".i " << table.n_inputs << '\n';
    out << ".o " << table.n_outputs << '\n';
    for (const auto& c : table.cubes) {
        out << c.input_string() << ' ' << c.output_string(table.n_outputs) << '\n';
    }
    out << ".e\n";
}

std::string to_pla_string(const PlaTable& table) {
    std::ostringstream os;
    write_pla(os, table);
    return os.str();
}

PlaTable read_pla(std::istream& in) {
    PlaTable table;
    bool have_i = false;
    bool have_o = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) {
            continue;
        }
        if (head == ".i") {
            ls >> table.n_inputs;
            have_i = true;
        } else if (head == ".o") {
            ls >> table.n_outputs;
            have_o = true;
        } else if (head == ".e" || head == ".end") {
            break;
        } else if (head[0] == '.') {
            continue;  // .p, .type, .ilb, .ob
        } else {
            std::string outputs;
            if (!(ls >> outputs)) {
                throw PreconditionError("PLA line " + std::to_string(line_no) + ": missing output part");
            }
            if (!have_i || !have_o || head.size() != table.n_inputs || outputs.size() != table.n_outputs) {
                throw PreconditionError("PLA line " + std::to_string(line_no) + ": cube does not match .i/.o");
            }
            table.cubes.push_back(Cube::parse(head, outputs));
        }
    }
    if (!have_i || !have_o) {
        throw PreconditionError("PLA text lacks .i or .o");
    }
    return table;
}

PlaTable parse_pla(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_pla(is);
}

}  // namespace qdp::logic
