#pragma once

#include "bpa/ext_nat.hpp"
#include "bpa/norms.hpp"
#include "bpa/symbols.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bpa {

/// A finite word, or an ultimately periodic word prefix·cycle^ω, always held in
/// canonical form: shortest cycle, then shortest prefix. Two values denote the
/// same string iff they compare equal.
class RegularString {
public:
    /// The empty string.
    RegularString() = default;

    static RegularString finite(Word w) {
        RegularString r;
        r.prefix_ = std::move(w);
        return r;
    }

    const Word& prefix() const { return prefix_; }
    const Word& cycle() const { return cycle_; }
    bool is_finite() const { return cycle_.empty(); }
    bool is_empty() const { return prefix_.empty() && cycle_.empty(); }
    /// Number of symbols in the presentation.
    std::size_t presentation_length() const { return prefix_.size() + cycle_.size(); }

    /// First symbol. Precondition: nonempty.
    Nt head() const;
    /// The string with its first symbol removed (canonical). Precondition: nonempty.
    RegularString tail() const;
    /// The first n symbols of the denoted string (fewer if it is finite and shorter).
    Word unroll(std::size_t n) const;

    friend auto operator<=>(const RegularString&, const RegularString&) = default;
    friend bool operator==(const RegularString&, const RegularString&) = default;

private:
    friend RegularString canonicalize(Word prefix, Word cycle);
    Word prefix_;
    Word cycle_;
};

struct RegularStringHash {
    std::size_t operator()(const RegularString& s) const noexcept {
        WordHash h;
        return hash_combine(h(s.prefix()), h(s.cycle()) * 31 + 7);
    }
};

using StringPair = std::pair<RegularString, RegularString>;

struct StringPairHash {
    std::size_t operator()(const StringPair& p) const noexcept {
        RegularStringHash h;
        return hash_combine(h(p.first), h(p.second));
    }
};

/// Canonical presentation of prefix·cycle^ω (of prefix alone when cycle is empty).
RegularString canonicalize(Word prefix, Word cycle);

/// All cyclic rotations of a word, deduplicated, in increasing rotation offset.
std::vector<Word> rotations(const Word& word);

/// x·y, where an infinite x absorbs y.
RegularString concat(const RegularString& x, const RegularString& y);

/// word^ω; the empty word gives the empty string.
RegularString power_omega(const Word& word);
/// x^ω; identity on infinite strings.
RegularString power_omega(const RegularString& x);

/// Drops everything after the first unnormed nonterminal.
RegularString truncate_unnormed(const RegularString& x, const NormTable& norms);

/// truncate_unnormed(concat(x, y)).
inline RegularString concat_truncated(const RegularString& x, const RegularString& y, const NormTable& norms) {
    return truncate_unnormed(concat(x, y), norms);
}

/// True when an unnormed nonterminal can only occur as the last symbol of a
/// finite string.
bool is_truncated(const RegularString& x, const NormTable& norms);

/// omega for infinite strings and for strings containing an unnormed symbol.
ExtNat norm_of(const RegularString& x, const NormTable& norms);

/// Norm of the longest normed prefix for finite strings; norm of prefix·cycle
/// for infinite ones. Precondition: x is truncated.
BigNat size_of(const RegularString& x, const NormTable& norms);
BigNat size_of_pair(const RegularString& x, const RegularString& y, const NormTable& norms);
inline BigNat size_of_pair(const StringPair& p, const NormTable& norms) {
    return size_of_pair(p.first, p.second, norms);
}

/// Parses `A B (C D)^w`, `A B`, or `eps`.
using SymbolResolver = std::function<std::optional<Nt>(std::string_view)>;
RegularString parse_regular_string(std::string_view text, const SymbolResolver& resolve);
std::string format_regular_string(const RegularString& x, const std::function<std::string(Nt)>& name);

Word parse_word(std::string_view text, const SymbolResolver& resolve);
std::string format_word(const Word& w, const std::function<std::string(Nt)>& name);

}  // namespace bpa
