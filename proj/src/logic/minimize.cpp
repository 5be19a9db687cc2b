#include "qdp/logic/pla.hpp"

#include "qdp/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

namespace qdp::logic {
namespace {

struct InputKey {
    std::uint64_t care;
    std::uint64_t value;
    friend bool operator==(const InputKey&, const InputKey&) = default;
};

struct InputKeyHash {
    std::size_t operator()(const InputKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.care * 0x9E3779B97F4A7C15ULL ^ k.value);
    }
};

// One pass of pairwise merges. Cubes are visited in lexicographic order and
// each pairs with its lexicographically smallest unconsumed distance-1 partner.
bool merge_round(std::vector<Cube>& cubes) {
    std::sort(cubes.begin(), cubes.end(), lex_less);
    std::unordered_map<InputKey, std::size_t, InputKeyHash> where;
    where.reserve(cubes.size() * 2);
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        where.emplace(InputKey{cubes[i].care(), cubes[i].value()}, i);
    }

    std::vector<bool> consumed(cubes.size(), false);
    std::vector<Cube> next;
    next.reserve(cubes.size());
    bool merged_any = false;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        if (consumed[i]) {
            continue;
        }
        const Cube& a = cubes[i];
        std::size_t partner = cubes.size();
        std::uint64_t partner_bit = 0;
        for (std::uint64_t rest = a.care(); rest != 0; rest &= rest - 1) {
            const std::uint64_t bit = rest & (~rest + 1);
            const auto it = where.find(InputKey{a.care(), a.value() ^ bit});
            if (it == where.end() || consumed[it->second] || it->second == i) {
                continue;
            }
            if (it->second < partner) {
                partner = it->second;
                partner_bit = bit;
            }
        }
        if (partner == cubes.size()) {
            continue;
        }
        consumed[i] = true;
        consumed[partner] = true;
        next.emplace_back(a.n_inputs(), a.care() & ~partner_bit, a.value() & ~partner_bit, a.output());
        merged_any = true;
    }
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        if (!consumed[i]) {
            next.push_back(cubes[i]);
        }
    }
    cubes = std::move(next);
    return merged_any;
}

// Drops duplicates and cubes whose inputs lie inside another cube.
bool remove_contained(std::vector<Cube>& cubes) {
    std::sort(cubes.begin(), cubes.end(), [](const Cube& a, const Cube& b) {
        const int da = std::popcount(a.care());
        const int db = std::popcount(b.care());
        if (da != db) {
            return da < db;  // widest cubes first
        }
        return lex_less(a, b);
    });
    std::vector<Cube> kept;
    kept.reserve(cubes.size());
    for (const auto& c : cubes) {
        const bool covered = std::any_of(kept.begin(), kept.end(), [&](const Cube& k) { return k.contains_inputs(c); });
        if (!covered) {
            kept.push_back(c);
        }
    }
    const bool removed = kept.size() != cubes.size();
    cubes = std::move(kept);
    return removed;
}

}  // namespace

PlaTable d1merge_minimize(const PlaTable& table) {
    std::map<std::uint64_t, std::vector<Cube>> groups;
    for (const auto& c : table.cubes) {
        if (c.n_inputs() != table.n_inputs) {
            throw PreconditionError("cube arity does not match the table");
        }
        if (c.output() != 0) {
            groups[c.output()].push_back(c);
        }
    }

    PlaTable out;
    out.n_inputs = table.n_inputs;
    out.n_outputs = table.n_outputs;
    for (auto& [mask, cubes] : groups) {
        remove_contained(cubes);
        for (;;) {
            const bool merged = merge_round(cubes);
            const bool removed = remove_contained(cubes);
            if (!merged && !removed) {
                break;
            }
        }
        out.cubes.insert(out.cubes.end(), cubes.begin(), cubes.end());
    }
    std::sort(out.cubes.begin(), out.cubes.end(), lex_less);
    return out;
}

}  // namespace qdp::logic
