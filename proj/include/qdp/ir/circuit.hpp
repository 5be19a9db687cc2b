#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdp::ir {

using RegisterId = std::uint32_t;

enum class RegisterRole : std::uint8_t { index_x, index_y, data_r, data_q, value_v, ancilla, other };

std::string_view to_string(RegisterRole role);

struct Register {
    RegisterId id = 0;
    std::string name;
    std::size_t size = 0;
    RegisterRole role = RegisterRole::other;
};

/// A qubit named by (register, offset). Offset 0 is the least-significant bit
/// of the register's value.
struct QubitRef {
    RegisterId reg = 0;
    std::uint32_t offset = 0;

    friend constexpr auto operator<=>(const QubitRef&, const QubitRef&) = default;
};

enum class Polarity : std::uint8_t { positive, negative };

struct Control {
    QubitRef qubit;
    Polarity polarity = Polarity::positive;

    friend constexpr bool operator==(const Control&, const Control&) = default;
};

enum class GateKind : std::uint8_t {
    H,
    X,
    CNOT,
    CCNOT,
    MCX,
    SWAP,
    Phase,
    ControlledPhase,
    RootX,
    Measure,
    Native,
};

/// Signed dyadic rational `num / 2^log2_den`; used for roots of X.
struct Dyadic {
    int num = 0;
    int log2_den = 0;

    [[nodiscard]] double value() const;
    [[nodiscard]] Dyadic negated() const { return {-num, log2_den}; }
    friend constexpr bool operator==(const Dyadic&, const Dyadic&) = default;
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<QubitRef> targets;
    std::vector<Control> controls;
    /// Radians, for Phase and ControlledPhase.
    double angle = 0.0;
    /// Power of X, for RootX.
    Dyadic exponent{};
    /// Destination bit, for Measure.
    std::size_t clbit = 0;
    /// Backend-native gate name and parameters, for Native.
    std::string name;
    std::array<double, 3> params{};
    std::uint8_t num_params = 0;

    static Gate h(QubitRef q);
    static Gate x(QubitRef q);
    static Gate cnot(QubitRef control, QubitRef target);
    static Gate ccnot(QubitRef c0, QubitRef c1, QubitRef target);
    /// Multicontrolled X. Collapses to CNOT/CCNOT when every control is positive
    /// and there are one or two of them and a single target.
    static Gate mcx(std::vector<Control> controls, QubitRef target);
    static Gate swap(QubitRef a, QubitRef b);
    static Gate phase(double angle, QubitRef q);
    static Gate controlled_phase(double angle, QubitRef control, QubitRef target);
    static Gate root_x(Dyadic exponent, std::vector<QubitRef> controls, QubitRef target);
    static Gate measure(QubitRef q, std::size_t clbit);
    static Gate native(std::string name, std::vector<double> params, std::vector<QubitRef> qubits);

    [[nodiscard]] bool is_x_family() const {
        return kind == GateKind::X || kind == GateKind::CNOT || kind == GateKind::CCNOT ||
               kind == GateKind::MCX;
    }
    [[nodiscard]] std::vector<double> param_list() const {
        return {params.begin(), params.begin() + num_params};
    }
};

/// Name used for gate counting and for matching against backend native sets:
/// "h", "x", "cx", "ccx", "mcx", "swap", "u1", "cu1", "rootx", "measure", or
/// the native gate's own name.
std::string gate_name(const Gate& gate);

struct StageMark {
    std::size_t gate_index = 0;
    std::string label;

    friend bool operator==(const StageMark&, const StageMark&) = default;
};

struct StageRange {
    std::string label;
    std::size_t begin = 0;
    std::size_t end = 0;
};

namespace stage {
inline constexpr std::string_view init = "init";
inline constexpr std::string_view neqr = "neqr";
inline constexpr std::string_view dotplot = "dotplot";
inline constexpr std::string_view measure_v = "measure_v";
inline constexpr std::string_view qft = "qft";
inline constexpr std::string_view measure = "measure";
}  // namespace stage

class Circuit {
public:
    Circuit() = default;

    RegisterId add_register(std::string name, std::size_t size, RegisterRole role = RegisterRole::other);
    /// Reserves `count` classical bits and returns the index of the first one.
    std::size_t add_classical_bits(std::size_t count);

    [[nodiscard]] const std::vector<Register>& registers() const { return registers_; }
    [[nodiscard]] const Register& reg(RegisterId id) const;
    [[nodiscard]] std::optional<RegisterId> find_register(std::string_view name) const;
    [[nodiscard]] std::vector<RegisterId> registers_with_role(RegisterRole role) const;

    /// Validated reference to qubit `offset` of register `id`.
    [[nodiscard]] QubitRef qubit(RegisterId id, std::size_t offset) const;
    /// All qubits of a register, least-significant first.
    [[nodiscard]] std::vector<QubitRef> qubits(RegisterId id) const;

    /// Global wire index; registers are laid out in declaration order.
    [[nodiscard]] std::size_t wire(QubitRef q) const { return offsets_[q.reg] + q.offset; }
    [[nodiscard]] QubitRef ref_of_wire(std::size_t wire) const;
    [[nodiscard]] std::size_t num_qubits() const { return total_qubits_; }
    [[nodiscard]] std::size_t classical_bits() const { return classical_bits_; }

    [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] const std::vector<StageMark>& stage_marks() const { return marks_; }
    [[nodiscard]] std::vector<StageRange> stages() const;

    /// Appends one gate to the current stage. Throws StructuralError on an
    /// unresolved reference or a malformed gate.
    void append(Gate gate);
    /// Records a stage mark at the current end and appends `gates` after it.
    void append_stage(std::string label, std::vector<Gate> gates);
    /// Opens a new stage without appending anything.
    void mark_stage(std::string label);

    void reserve(std::size_t n) { gates_.reserve(n); }

    /// Checks a gate against this circuit's registers without appending it.
    void validate(const Gate& gate) const;

private:
    std::vector<Register> registers_;
    std::vector<std::size_t> offsets_;
    std::size_t total_qubits_ = 0;
    std::size_t classical_bits_ = 0;
    std::vector<Gate> gates_;
    std::vector<StageMark> marks_;
};

/// Value-returning form of Circuit::append_stage.
[[nodiscard]] Circuit append_stage(Circuit circuit, std::string label, std::vector<Gate> gates);

}  // namespace qdp::ir
