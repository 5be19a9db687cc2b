#include "qdp/sim/validate.hpp"

#include "qdp/error.hpp"
#include "qdp/sim/sparse.hpp"
#include "qdp/sim/statevector.hpp"
#include "qdp/sim/toffoli.hpp"
#include "qdp/transpile/lower.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <thread>

namespace qdp::sim {

using encoder::McxMode;
using ir::Circuit;
using ir::Gate;

namespace {

constexpr std::size_t kMaxCounterexamples = 16;

void require_pair(const SymbolSequence& r, const SymbolSequence& q) {
    if (!r.is_padded() || !q.is_padded()) {
        throw PreconditionError("validation needs padded sequences");
    }
    if (r.d != q.d) {
        throw PreconditionError("sequences disagree on data width");
    }
}

bool in_window(const SymbolSequence& r, const SymbolSequence& q, std::size_t x, std::size_t y) {
    return x < r.original_length && y < q.original_length;
}

void keep_first(std::vector<Counterexample>& list) {
    std::sort(list.begin(), list.end(),
              [](const Counterexample& a, const Counterexample& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
    if (list.size() > kMaxCounterexamples) {
        list.resize(kMaxCounterexamples);
    }
}

Circuit without_init(const Circuit& qdp) {
    Circuit out;
    for (const auto& r : qdp.registers()) {
        out.add_register(r.name, r.size, r.role);
    }
    out.add_classical_bits(qdp.classical_bits());
    const auto stages = qdp.stages();
    const std::size_t first = stages.empty() ? qdp.size() : stages.front().begin;
    for (std::size_t i = 0; i < first; ++i) {
        out.append(qdp.gates()[i]);
    }
    for (const auto& s : stages) {
        if (s.label == ir::stage::init) {
            continue;
        }
        out.append_stage(s.label, {qdp.gates().begin() + static_cast<std::ptrdiff_t>(s.begin),
                                   qdp.gates().begin() + static_cast<std::ptrdiff_t>(s.end)});
    }
    return out;
}

struct Partial {
    std::size_t checks = 0;
    std::size_t padded_checks = 0;
    std::size_t mismatches = 0;
    std::vector<Counterexample> counterexamples;
};

}  // namespace

std::size_t DotPlot::count() const {
    return static_cast<std::size_t>(std::count(pixels.begin(), pixels.end(), std::uint8_t{1}));
}

DotPlot classical_dotplot(const SymbolSequence& r, const SymbolSequence& q) {
    DotPlot p;
    p.width = r.codes.size();
    p.height = q.codes.size();
    p.pixels.assign(p.width * p.height, 0);
    for (std::size_t y = 0; y < p.height; ++y) {
        for (std::size_t x = 0; x < p.width; ++x) {
            p.pixels[y * p.width + x] = r.codes[x] == q.codes[y] ? 1 : 0;
        }
    }
    return p;
}

ValidationReport validate_method1(const SymbolSequence& r, const SymbolSequence& q,
                                  const encoder::QdpOptions& options) {
    return validate_method1(encoder::build_qdp(r, q, options), r, q, options.mcx_mode);
}

ValidationReport validate_method1(const Circuit& qdp, const SymbolSequence& r, const SymbolSequence& q,
                                  McxMode mode) {
    require_pair(r, q);
    const std::size_t W = r.codes.size();
    const std::size_t H = q.codes.size();
    if (W * H > 4096 * 4096) {
        throw PreconditionError("method 1 is limited to padded lengths of 4096");
    }
    const auto regs = encoder::find_qdp_registers(qdp);
    if ((std::size_t{1} << qdp.reg(regs.x).size) != W || (std::size_t{1} << qdp.reg(regs.y).size) != H) {
        throw PreconditionError("index registers do not match the sequence lengths");
    }

    const Circuit body = without_init(qdp);
    const Circuit lowered = transpile::lower_to_native(body, transpile::logical_backend(body.num_qubits() + 64), mode);
    const auto dot = classical_dotplot(r, q);

    std::vector<std::size_t> clean_wires;
    for (const auto id : lowered.registers_with_role(ir::RegisterRole::ancilla)) {
        for (const auto& a : lowered.qubits(id)) clean_wires.push_back(lowered.wire(a));
    }
    const std::size_t v_wire = lowered.wire(lowered.qubit(regs.v, 0));
    const std::size_t x0 = lowered.wire(lowered.qubit(regs.x, 0));
    const std::size_t y0 = lowered.wire(lowered.qubit(regs.y, 0));
    const std::uint64_t x_mask = (std::uint64_t{W} - 1) << x0;
    const std::uint64_t y_mask = (std::uint64_t{H} - 1) << y0;

    const bool classical = mode == McxMode::ccnot_chain;
    std::optional<SparseProgram> program;
    if (!classical) {
        program.emplace(lowered);
    }

    // Returns an empty string when the run is correct, else what went wrong.
    auto check = [&](std::size_t x, std::size_t y, int& observed) -> std::string {
        const int expected = dot.pixel(x, y) ? 1 : 0;
        if (classical) {
            auto s = ToffoliState::zeros(lowered);
            s.set_value(lowered, regs.x, x);
            s.set_value(lowered, regs.y, y);
            s = toffoli_run(lowered, std::move(s));
            observed = s.bits[v_wire];
            for (const auto w : clean_wires) {
                if (s.bits[w]) return "ancilla not restored";
            }
            if (s.value(lowered, regs.x) != x || s.value(lowered, regs.y) != y) return "index register changed";
        } else {
            const std::uint64_t in = (std::uint64_t{x} << x0) | (std::uint64_t{y} << y0);
            const auto out = program->run(in).basis_state();
            if (!out) {
                observed = -1;
                return "state left the computational basis";
            }
            observed = static_cast<int>((*out >> v_wire) & 1U);
            for (const auto w : clean_wires) {
                if ((*out >> w) & 1U) return "ancilla not restored";
            }
            if ((*out & x_mask) != (in & x_mask) || (*out & y_mask) != (in & y_mask)) return "index register changed";
        }
        return observed == expected ? std::string{} : std::string("v differs from the dot plot");
    };

    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, W);
    std::vector<Partial> parts(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                Partial& part = parts[t];
                for (std::size_t x = t; x < W; x += workers) {
                    for (std::size_t y = 0; y < H; ++y) {
                        (in_window(r, q, x, y) ? part.checks : part.padded_checks)++;
                        int observed = 0;
                        auto problem = check(x, y, observed);
                        if (!problem.empty()) {
                            ++part.mismatches;
                            if (part.counterexamples.size() < kMaxCounterexamples) {
                                part.counterexamples.push_back(
                                    {x, y, dot.pixel(x, y) ? 1 : 0, observed, std::move(problem)});
                            }
                        }
                    }
                }
            });
        }
    }

    ValidationReport report;
    report.method = "method1";
    for (auto& p : parts) {
        report.checks += p.checks;
        report.padded_checks += p.padded_checks;
        report.mismatches += p.mismatches;
        report.counterexamples.insert(report.counterexamples.end(), p.counterexamples.begin(),
                                      p.counterexamples.end());
    }
    keep_first(report.counterexamples);
    report.pass = report.mismatches == 0;
    return report;
}

ValidationReport validate_method2(const SymbolSequence& r, const SymbolSequence& q, std::size_t shots,
                                  std::uint64_t seed, const encoder::QdpOptions& options) {
    return validate_method2(encoder::build_qdp(r, q, options), r, q, shots, seed);
}

ValidationReport validate_method2(const Circuit& qdp, const SymbolSequence& r, const SymbolSequence& q,
                                  std::size_t shots, std::uint64_t seed) {
    require_pair(r, q);
    if (shots == 0) {
        throw PreconditionError("method 2 needs at least one shot");
    }
    const auto regs = encoder::find_qdp_registers(qdp);
    const std::size_t w = qdp.reg(regs.x).size;
    const std::size_t h = qdp.reg(regs.y).size;
    const std::size_t W = std::size_t{1} << w;
    const std::size_t H = std::size_t{1} << h;
    if (W != r.codes.size() || H != q.codes.size()) {
        throw PreconditionError("index registers do not match the sequence lengths");
    }

    Circuit c = qdp;
    const std::size_t base = c.add_classical_bits(w + h + 1);
    std::vector<Gate> readout;
    for (std::size_t i = 0; i < w; ++i) readout.push_back(Gate::measure(c.qubit(regs.x, i), base + i));
    for (std::size_t i = 0; i < h; ++i) readout.push_back(Gate::measure(c.qubit(regs.y, i), base + w + i));
    readout.push_back(Gate::measure(c.qubit(regs.v, 0), base + w + h));
    c.append_stage(std::string(ir::stage::measure), std::move(readout));

    const auto hist = sample(c, shots, seed);
    const auto dot = classical_dotplot(r, q);

    ValidationReport report;
    report.method = "method2";
    report.shots = shots;
    report.seed = seed;
    std::vector<std::size_t> counts(W * H, 0);
    for (const auto& [key, n] : hist) {
        const std::size_t x = (key >> base) & (W - 1);
        const std::size_t y = (key >> (base + w)) & (H - 1);
        const int v = static_cast<int>((key >> (base + w + h)) & 1U);
        counts[y * W + x] += n;
        (in_window(r, q, x, y) ? report.checks : report.padded_checks) += n;
        const int expected = dot.pixel(x, y) ? 1 : 0;
        if (v != expected) {
            report.mismatches += n;
            report.counterexamples.push_back(
                {x, y, expected, v, "sampled " + std::to_string(n) + " times with the wrong value"});
        }
    }
    keep_first(report.counterexamples);
    report.uniformity = uniformity_test(counts);
    report.pass = report.mismatches == 0 && report.uniformity->p_value > report.uniformity->significance;
    return report;
}

ChiSquare uniformity_test(const std::vector<std::size_t>& counts, double significance) {
    ChiSquare out;
    out.significance = significance;
    if (counts.size() < 2) {
        return out;
    }
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    const double expected = total / static_cast<double>(counts.size());
    for (const auto n : counts) {
        const double diff = static_cast<double>(n) - expected;
        out.statistic += diff * diff / expected;
    }
    out.dof = counts.size() - 1;
    const boost::math::chi_squared dist(static_cast<double>(out.dof));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    out.critical_value = boost::math::quantile(boost::math::complement(dist, significance));
    return out;
}

std::string to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["method"] = report.method;
    j["pass"] = report.pass;
    j["checks"] = report.checks;
    j["padded_checks"] = report.padded_checks;
    j["mismatches"] = report.mismatches;
    auto& list = j["counterexamples"] = nlohmann::ordered_json::array();
    for (const auto& c : report.counterexamples) {
        list.push_back({{"x", c.x}, {"y", c.y}, {"expected", c.expected}, {"observed", c.observed},
                        {"detail", c.detail}});
    }
    if (report.shots > 0) j["shots"] = report.shots;
    if (report.seed) j["seed"] = *report.seed;
    if (report.uniformity) {
        const auto& u = *report.uniformity;
        j["uniformity"] = {{"statistic", u.statistic},
                           {"dof", u.dof},
                           {"p_value", u.p_value},
                           {"critical_value", u.critical_value},
                           {"significance", u.significance}};
    }
    return j.dump(2);
}

}  // namespace qdp::sim
