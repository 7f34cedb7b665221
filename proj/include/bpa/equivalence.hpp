#pragma once

#include "bpa/lts.hpp"
#include "bpa/regular_string.hpp"
#include "bpa/system.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bpa {

/// Exact(k): x ~_k y and not x ~_{k+1} y. AtLeast(k): x ~_k y, depth exhausted.
class EqLevelResult {
public:
    enum class Kind { Exact, AtLeast };

    static EqLevelResult exact(std::size_t k) { return {Kind::Exact, k}; }
    static EqLevelResult at_least(std::size_t k) { return {Kind::AtLeast, k}; }

    Kind kind() const { return kind_; }
    std::size_t level() const { return level_; }
    bool is_exact() const { return kind_ == Kind::Exact; }

    std::string to_string() const { return (is_exact() ? "Exact " : "AtLeast ") + std::to_string(level_); }

    friend bool operator==(const EqLevelResult&, const EqLevelResult&) = default;

private:
    EqLevelResult(Kind k, std::size_t l) : kind_(k), level_(l) {}
    Kind kind_;
    std::size_t level_;
};

/// Raised when the memo table would grow beyond its cap.
class MemoCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Memo cap from the BPA_MEMO_CAP environment variable, or the built-in default.
std::size_t default_memo_cap();

/// Bounded eq-level computation by min-max recursion over the approximants,
/// memoized on interned canonical strings. Not thread-safe; use one per thread.
class EqLevelOracle {
public:
    explicit EqLevelOracle(AnalyzedSystem sys, std::size_t memo_cap = default_memo_cap());

    /// Inputs must be canonical and truncated.
    EqLevelResult eqlevel(const RegularString& x, const RegularString& y, std::size_t depth);

    /// x ~_i y.
    bool approximates(const RegularString& x, const RegularString& y, std::size_t i) {
        return i == 0 || eqlevel(x, y, i).level() >= i;
    }

    const AnalyzedSystem& system() const { return sys_; }
    std::size_t memo_size() const { return memo_.size(); }
    std::size_t state_count() const { return states_.size(); }

private:
    using Id = std::uint32_t;

    struct State {
        RegularString str;
        ExtNat norm;
        std::size_t norm_cap = 0;  // norm saturated to size_t; meaningful when finite
        bool expanded = false;
        std::vector<std::pair<Act, Id>> succ;  // sorted by action, then rule order
        std::vector<Act> enabled;
    };

    struct Entry {
        std::uint32_t value;
        bool exact;
    };

    Id intern(const RegularString& s);
    void expand(Id id);
    std::size_t level(Id a, Id b, std::size_t depth);

    AnalyzedSystem sys_;
    std::size_t memo_cap_;
    std::deque<State> states_;  // stable addresses while recursing
    std::unordered_map<RegularString, Id, RegularStringHash> ids_;
    std::unordered_map<std::uint64_t, Entry> memo_;
};

EqLevelResult eqlevel_bounded(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y, std::size_t depth);

/// True iff every move of either side has an equally labelled response such
/// that the resulting pair lies in `candidate`, left target first.
bool covers(const AnalyzedSystem& sys, const std::set<StringPair>& candidate, const StringPair& pair);

}  // namespace bpa
