#include "qdp/io/qasm.hpp"

#include "qdp/error.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace qdp::io {

using ir::Circuit;
using ir::Gate;
using ir::GateKind;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// [a-z][A-Za-z0-9_]* as OpenQASM 2.0 requires.
std::string identifier(std::string_view name) {
    std::string out;
    for (const char ch : name) {
        out.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
    }
    if (out.empty() || !std::islower(static_cast<unsigned char>(out[0]))) {
        if (!out.empty() && std::isupper(static_cast<unsigned char>(out[0]))) {
            out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
        } else {
            out.insert(out.begin(), 'r');
        }
    }
    for (auto& ch : out) {
        if (std::isupper(static_cast<unsigned char>(ch))) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return out;
}

// Gate name for X^(num / 2^den), e.g. xpow_m1_8 for X^(-1/8).
std::string root_name(const ir::Dyadic& e, bool controlled) {
    return std::string(controlled ? "cxpow_" : "xpow_") + (e.num < 0 ? "m" : "p") + std::to_string(std::abs(e.num)) +
           "_" + std::to_string(1 << e.log2_den);
}

std::string root_definition(const ir::Dyadic& e, bool controlled) {
    const std::string angle = "pi*" + std::to_string(e.num) + "/" + std::to_string(1 << e.log2_den);
    if (controlled) {
        return "gate " + root_name(e, true) + " c,t { h t; cu1(" + angle + ") c,t; h t; }\n";
    }
    return "gate " + root_name(e, false) + " t { h t; u1(" + angle + ") t; h t; }\n";
}

std::string role_tag(ir::RegisterRole role) { return std::string(ir::to_string(role)); }

}  // namespace

std::string emit_qasm(const Circuit& circuit) {
    std::map<ir::RegisterId, std::string> names;
    std::set<std::string> used = {"c"};
    for (const auto& r : circuit.registers()) {
        std::string base = identifier(r.name);
        std::string name = base;
        for (int k = 1; used.count(name); ++k) name = base + "_" + std::to_string(k);
        used.insert(name);
        names[r.id] = name;
    }
    auto ref = [&](const ir::QubitRef& q) { return names.at(q.reg) + "[" + std::to_string(q.offset) + "]"; };

    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

    std::set<std::pair<std::string, std::string>> defs;
    for (const auto& g : circuit.gates()) {
        if (g.kind == GateKind::RootX) {
            if (g.controls.size() > 1) {
                throw StructuralError("QASM: RootX with more than one control must be lowered first");
            }
            const bool controlled = g.controls.size() == 1;
            defs.insert({root_name(g.exponent, controlled), root_definition(g.exponent, controlled)});
        }
    }
    for (const auto& [name, def] : defs) out << def;

    for (const auto& r : circuit.registers()) {
        out << "// qdp:register " << names.at(r.id) << " " << role_tag(r.role) << " " << r.name << "\n";
        out << "qreg " << names.at(r.id) << "[" << r.size << "];\n";
    }
    if (circuit.classical_bits() > 0) {
        out << "creg c[" << circuit.classical_bits() << "];\n";
    }

    const auto& marks = circuit.stage_marks();
    std::size_t next_mark = 0;
    const auto& gates = circuit.gates();
    for (std::size_t i = 0; i <= gates.size(); ++i) {
        while (next_mark < marks.size() && marks[next_mark].gate_index == i) {
            out << "// qdp:stage " << marks[next_mark].label << "\n";
            ++next_mark;
        }
        if (i == gates.size()) break;
        const Gate& g = gates[i];
        switch (g.kind) {
            case GateKind::H: out << "h " << ref(g.targets[0]); break;
            case GateKind::X: out << "x " << ref(g.targets[0]); break;
            case GateKind::CNOT: out << "cx " << ref(g.controls[0].qubit) << "," << ref(g.targets[0]); break;
            case GateKind::CCNOT:
                out << "ccx " << ref(g.controls[0].qubit) << "," << ref(g.controls[1].qubit) << "," << ref(g.targets[0]);
                break;
            case GateKind::SWAP: out << "swap " << ref(g.targets[0]) << "," << ref(g.targets[1]); break;
            case GateKind::Phase: out << "u1(" << fmt(g.angle) << ") " << ref(g.targets[0]); break;
            case GateKind::ControlledPhase:
                out << "cu1(" << fmt(g.angle) << ") " << ref(g.controls[0].qubit) << "," << ref(g.targets[0]);
                break;
            case GateKind::RootX:
                out << root_name(g.exponent, !g.controls.empty()) << " ";
                if (!g.controls.empty()) out << ref(g.controls[0].qubit) << ",";
                out << ref(g.targets[0]);
                break;
            case GateKind::Measure: out << "measure " << ref(g.targets[0]) << " -> c[" << g.clbit << "]"; break;
            case GateKind::Native: {
                out << g.name;
                if (g.num_params > 0) {
                    out << "(";
                    for (std::size_t k = 0; k < g.num_params; ++k) out << (k ? "," : "") << fmt(g.params[k]);
                    out << ")";
                }
                out << " ";
                for (std::size_t k = 0; k < g.targets.size(); ++k) out << (k ? "," : "") << ref(g.targets[k]);
                break;
            }
            case GateKind::MCX:
                throw StructuralError("QASM: multicontrolled X must be decomposed before emission");
        }
        out << ";\n";
    }
    return out.str();
}

void write_qasm(const Circuit& circuit, const std::filesystem::path& path) {
    const auto text = emit_qasm(circuit);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    double parse() {
        const double v = expr();
        skip();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail() const { throw ConfigError("QASM: bad angle expression '" + std::string(s_) + "'"); }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v /= factor();
            else return v;
        }
    }
    double factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) fail();
            return v;
        }
        skip();
        if (s_.substr(pos_, 2) == "pi") {
            pos_ += 2;
            return std::numbers::pi;
        }
        const std::string rest(s_.substr(pos_));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            fail();
        }
        pos_ += used;
        return v;
    }
};

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

ir::RegisterRole role_from_tag(std::string_view tag) {
    for (const auto r : {ir::RegisterRole::index_x, ir::RegisterRole::index_y, ir::RegisterRole::data_r,
                         ir::RegisterRole::data_q, ir::RegisterRole::value_v, ir::RegisterRole::ancilla,
                         ir::RegisterRole::other}) {
        if (ir::to_string(r) == tag) return r;
    }
    return ir::RegisterRole::other;
}

// Role guessed from a register name when no qdp comment is present.
ir::RegisterRole role_from_name(std::string_view name) {
    if (name == "x") return ir::RegisterRole::index_x;
    if (name == "y") return ir::RegisterRole::index_y;
    if (name == "d_r") return ir::RegisterRole::data_r;
    if (name == "d_q") return ir::RegisterRole::data_q;
    if (name == "v") return ir::RegisterRole::value_v;
    if (name.starts_with("anc")) return ir::RegisterRole::ancilla;
    return ir::RegisterRole::other;
}

struct RootSpec {
    ir::Dyadic exponent;
    bool controlled = false;
};

std::optional<RootSpec> parse_root_name(std::string_view name) {
    RootSpec spec;
    if (name.starts_with("cxpow_")) {
        spec.controlled = true;
        name.remove_prefix(6);
    } else if (name.starts_with("xpow_")) {
        name.remove_prefix(5);
    } else {
        return std::nullopt;
    }
    if (name.size() < 4 || (name[0] != 'p' && name[0] != 'm')) return std::nullopt;
    const int sign = name[0] == 'm' ? -1 : 1;
    const auto us = name.find('_');
    if (us == std::string_view::npos) return std::nullopt;
    try {
        const int num = std::stoi(std::string(name.substr(1, us - 1)));
        const int den = std::stoi(std::string(name.substr(us + 1)));
        if (den <= 0 || (den & (den - 1)) != 0) return std::nullopt;
        spec.exponent = ir::Dyadic{sign * num, std::countr_zero(static_cast<unsigned>(den))};
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return spec;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
    Circuit c;
    std::map<std::string, ir::RegisterId> qregs;
    std::map<std::string, std::pair<std::size_t, std::size_t>> cregs;  // name -> (offset, size)
    std::map<std::string, std::pair<ir::RegisterRole, std::string>> declared_roles;
    std::vector<Gate> pending;
    std::optional<std::string> pending_label;

    auto flush = [&] {
        if (pending_label) {
            c.append_stage(*pending_label, std::move(pending));
        } else {
            for (auto& g : pending) c.append(std::move(g));
        }
        pending.clear();
    };

    auto qubit = [&](const std::string& arg) {
        const auto lb = arg.find('[');
        const auto rb = arg.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
            throw ConfigError("QASM: expected an indexed qubit, got '" + arg + "'");
        }
        const std::string name = trim(arg.substr(0, lb));
        const auto it = qregs.find(name);
        if (it == qregs.end()) throw ConfigError("QASM: unknown register '" + name + "'");
        const auto offset = std::stoul(arg.substr(lb + 1, rb - lb - 1));
        if (offset >= c.reg(it->second).size) {
            throw ConfigError("QASM: " + name + "[" + std::to_string(offset) + "] is out of range");
        }
        return c.qubit(it->second, offset);
    };

    // Comments first: pull out qdp annotations and strip the rest.
    std::string body;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(start, end - start));
            start = end + 1;
            const auto cpos = line.find("//");
            if (cpos != std::string::npos) {
                const std::string comment = trim(std::string_view(line).substr(cpos + 2));
                line.erase(cpos);
                if (comment.starts_with("qdp:register ")) {
                    std::istringstream ss(comment.substr(13));
                    std::string name, role, original;
                    ss >> name >> role >> original;
                    declared_roles[name] = {role_from_tag(role), original.empty() ? name : original};
                } else if (comment.starts_with("qdp:stage ")) {
                    // Marker statement handled in order with the gates.
                    line += "\x01" + trim(comment.substr(10)) + ";";
                }
            }
            body += line;
            body += '\n';
        }
    }

    std::size_t pos = 0;
    while (pos < body.size()) {
        // Skip gate definitions.
        const auto next_semi = body.find(';', pos);
        const auto next_brace = body.find('{', pos);
        std::string head = trim(std::string_view(body).substr(pos, std::min(next_semi, next_brace) - pos));
        if (head.starts_with("gate ") || head.starts_with("opaque ")) {
            if (head.starts_with("opaque ")) {
                pos = next_semi + 1;
                continue;
            }
            const auto close = body.find('}', next_brace);
            if (next_brace == std::string::npos || close == std::string::npos) {
                throw ConfigError("QASM: unterminated gate definition");
            }
            pos = close + 1;
            continue;
        }
        if (next_semi == std::string::npos) {
            if (!trim(std::string_view(body).substr(pos)).empty()) {
                throw ConfigError("QASM: missing ';' at end of input");
            }
            break;
        }
        const std::string stmt = trim(std::string_view(body).substr(pos, next_semi - pos));
        pos = next_semi + 1;
        if (stmt.empty()) continue;

        if (stmt[0] == '\x01') {
            flush();
            pending_label = stmt.substr(1);
            continue;
        }
        if (stmt.starts_with("OPENQASM") || stmt.starts_with("include") || stmt.starts_with("barrier")) continue;

        if (stmt.starts_with("qreg ") || stmt.starts_with("creg ")) {
            const std::string decl = trim(std::string_view(stmt).substr(5));
            const auto lb = decl.find('[');
            const auto rb = decl.find(']');
            if (lb == std::string::npos || rb == std::string::npos) throw ConfigError("QASM: bad declaration '" + stmt + "'");
            const std::string name = trim(decl.substr(0, lb));
            const std::size_t size = std::stoul(decl.substr(lb + 1, rb - lb - 1));
            if (stmt[0] == 'q') {
                const auto found = declared_roles.find(name);
                const auto role = found != declared_roles.end() ? found->second.first : role_from_name(name);
                const auto original = found != declared_roles.end() ? found->second.second : name;
                qregs[name] = c.add_register(original, size, role);
            } else {
                cregs[name] = {c.add_classical_bits(size), size};
            }
            continue;
        }

        if (stmt.starts_with("measure ")) {
            const auto arrow = stmt.find("->");
            if (arrow == std::string::npos) throw ConfigError("QASM: bad measure '" + stmt + "'");
            const auto q = qubit(trim(std::string_view(stmt).substr(8, arrow - 8)));
            const std::string target = trim(std::string_view(stmt).substr(arrow + 2));
            const auto lb = target.find('[');
            const auto rb = target.find(']');
            if (lb == std::string::npos || rb == std::string::npos) throw ConfigError("QASM: bad measure '" + stmt + "'");
            const auto it = cregs.find(trim(target.substr(0, lb)));
            if (it == cregs.end()) throw ConfigError("QASM: unknown classical register in '" + stmt + "'");
            const std::size_t bit = std::stoul(target.substr(lb + 1, rb - lb - 1));
            if (bit >= it->second.second) throw ConfigError("QASM: classical bit out of range in '" + stmt + "'");
            pending.push_back(Gate::measure(q, it->second.first + bit));
            continue;
        }

        // name[(params)] args
        std::size_t name_end = 0;
        while (name_end < stmt.size() && (std::isalnum(static_cast<unsigned char>(stmt[name_end])) || stmt[name_end] == '_'))
            ++name_end;
        const std::string name = stmt.substr(0, name_end);
        std::vector<double> params;
        std::size_t args_start = name_end;
        if (name_end < stmt.size() && stmt[name_end] == '(') {
            int depth = 0;
            std::size_t close = name_end;
            for (; close < stmt.size(); ++close) {
                if (stmt[close] == '(') ++depth;
                if (stmt[close] == ')' && --depth == 0) break;
            }
            if (close == stmt.size()) throw ConfigError("QASM: unbalanced parentheses in '" + stmt + "'");
            for (const auto& p : split(std::string_view(stmt).substr(name_end + 1, close - name_end - 1), ',')) {
                params.push_back(ExprParser(p).parse());
            }
            args_start = close + 1;
        }
        std::vector<ir::QubitRef> args;
        for (const auto& a : split(std::string_view(stmt).substr(args_start), ',')) args.push_back(qubit(a));

        auto need = [&](std::size_t n_args, std::size_t n_params) {
            if (args.size() != n_args || params.size() != n_params) {
                throw ConfigError("QASM: wrong operands for '" + name + "' in '" + stmt + "'");
            }
        };
        if (name == "h") { need(1, 0); pending.push_back(Gate::h(args[0])); }
        else if (name == "x") { need(1, 0); pending.push_back(Gate::x(args[0])); }
        else if (name == "cx" || name == "CX") { need(2, 0); pending.push_back(Gate::cnot(args[0], args[1])); }
        else if (name == "ccx") { need(3, 0); pending.push_back(Gate::ccnot(args[0], args[1], args[2])); }
        else if (name == "swap") { need(2, 0); pending.push_back(Gate::swap(args[0], args[1])); }
        else if (name == "u1") { need(1, 1); pending.push_back(Gate::phase(params[0], args[0])); }
        else if (name == "cu1") { need(2, 1); pending.push_back(Gate::controlled_phase(params[0], args[0], args[1])); }
        else if (name == "u2") { need(1, 2); pending.push_back(Gate::native("u2", params, args)); }
        else if (name == "u3" || name == "U") { need(1, 3); pending.push_back(Gate::native("u3", params, args)); }
        else if (name == "rx" || name == "ry" || name == "rz") { need(1, 1); pending.push_back(Gate::native(name, params, args)); }
        else if (name == "rxx") { need(2, 1); pending.push_back(Gate::native("rxx", params, args)); }
        else if (const auto root = parse_root_name(name)) {
            need(root->controlled ? 2 : 1, 0);
            if (root->controlled) pending.push_back(Gate::root_x(root->exponent, {args[0]}, args[1]));
            else pending.push_back(Gate::root_x(root->exponent, {}, args[0]));
        } else {
            throw ConfigError("QASM: unsupported gate '" + name + "'");
        }
        // Validate eagerly so errors point at the statement.
        try {
            c.validate(pending.back());
        } catch (const Error& e) {
            throw ConfigError(std::string("QASM: ") + e.what() + " in '" + stmt + "'");
        }
    }
    flush();
    return c;
}

Circuit read_qasm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open QASM file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str());
}

}  // namespace qdp::io
