#pragma once

#include "bpa/ext_nat.hpp"
#include "bpa/symbols.hpp"

#include <span>
#include <vector>

namespace bpa {

/// Norm of every nonterminal, extended additively to words.
class NormTable {
public:
    NormTable() = default;
    explicit NormTable(std::vector<ExtNat> norms) : norms_(std::move(norms)) {}

    const ExtNat& operator[](Nt n) const { return norms_.at(index(n)); }
    bool is_normed(Nt n) const { return norms_.at(index(n)).is_finite(); }
    std::size_t size() const { return norms_.size(); }

    ExtNat of(std::span<const Nt> w) const {
        ExtNat total{0};
        for (Nt n : w) {
            if (!is_normed(n)) return ExtNat::omega();
            total += (*this)[n];
        }
        return total;
    }

    /// Norm of the longest prefix of w that contains only normed nonterminals.
    BigNat normed_prefix(std::span<const Nt> w) const {
        BigNat total = 0;
        for (Nt n : w) {
            if (!is_normed(n)) break;
            total += (*this)[n].value();
        }
        return total;
    }

    /// True when every nonterminal is normed.
    bool all_normed() const {
        for (const auto& n : norms_) {
            if (n.is_omega()) return false;
        }
        return true;
    }

    const std::vector<ExtNat>& values() const { return norms_; }

private:
    std::vector<ExtNat> norms_;
};

}  // namespace bpa
