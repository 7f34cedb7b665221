#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace bpa {

/// Index of a nonterminal in its system's declaration order.
enum class Nt : std::uint32_t {};
/// Index of an action in its system's declaration order.
enum class Act : std::uint32_t {};

constexpr std::uint32_t index(Nt n) { return static_cast<std::uint32_t>(n); }
constexpr std::uint32_t index(Act a) { return static_cast<std::uint32_t>(a); }

/// Finite word over nonterminals.
using Word = std::vector<Nt>;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = w.size();
        for (Nt n : w) h = hash_combine(h, index(n));
        return h;
    }
};

}  // namespace bpa
