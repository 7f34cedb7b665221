#pragma once

#include "bpa/ext_nat.hpp"
#include "bpa/norms.hpp"
#include "bpa/regular_string.hpp"
#include "bpa/symbols.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpa {

struct Rule {
    Nt head;
    Act action;
    Word body;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// A grammar in Greibach normal form without a start symbol. Immutable.
class BpaSystem {
public:
    BpaSystem() = default;
    /// Throws ContractViolation on out-of-range ids or duplicate/invalid names.
    BpaSystem(std::vector<std::string> nonterminals, std::vector<std::string> actions, std::vector<Rule> rules);

    const std::vector<std::string>& nonterminal_names() const { return nonterminals_; }
    const std::vector<std::string>& action_names() const { return actions_; }
    const std::vector<Rule>& rules() const { return rules_; }

    std::size_t nonterminal_count() const { return nonterminals_.size(); }
    std::size_t action_count() const { return actions_.size(); }

    const std::string& name(Nt n) const { return nonterminals_.at(index(n)); }
    const std::string& name(Act a) const { return actions_.at(index(a)); }
    std::optional<Nt> find_nonterminal(std::string_view name) const;
    std::optional<Act> find_action(std::string_view name) const;

    /// Indices into rules(), in declaration order.
    std::span<const std::size_t> rules_of(Nt n) const { return by_head_.at(index(n)); }

    /// Nonterminals heading no rule, in declaration order.
    std::vector<Nt> dead_nonterminals() const;

    RegularString parse_string(std::string_view text) const;
    Word parse_word(std::string_view text) const;
    std::string format(const RegularString& x) const;
    std::string format(const Word& w) const;
    std::string format(const StringPair& p) const { return "(" + format(p.first) + ", " + format(p.second) + ")"; }

    friend bool operator==(const BpaSystem& a, const BpaSystem& b) {
        return a.nonterminals_ == b.nonterminals_ && a.actions_ == b.actions_ && a.rules_ == b.rules_;
    }

private:
    std::vector<std::string> nonterminals_;
    std::vector<std::string> actions_;
    std::vector<Rule> rules_;
    std::vector<std::vector<std::size_t>> by_head_;
    std::map<std::string, Nt, std::less<>> nt_index_;
    std::map<std::string, Act, std::less<>> act_index_;
};

bool is_identifier(std::string_view s);

/// `base`, or `base` followed by the smallest positive number not in `taken`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

/// Parses the line-oriented grammar format. Throws ParseError with location.
BpaSystem parse_system(std::string_view text);
/// Canonical text form; parse_system(serialize_system(s)) == s.
std::string serialize_system(const BpaSystem& system);

/// Throws ValidationError on empty symbol sets or dead nonterminals.
void validate(const BpaSystem& system);

/// Adds an absorbing D with action d and rules A -d-> A for every dead A and
/// for D. Returns the input unchanged when nothing is dead.
BpaSystem complete_dead(const BpaSystem& system);

NormTable compute_norms(const BpaSystem& system);

struct SystemConstants {
    BigNat max_norm;       ///< M
    BigNat max_rhs_norm;   ///< M_rhs
    BigNat max_rhs_size;   ///< S_rhs
    BigNat cycle_bound;    ///< E = (2M + |N|^2 M_rhs + S_rhs)(1 + S_rhs)
};

SystemConstants constants(const BpaSystem& system, const NormTable& norms);

/// A fixed norm-reducing path A2 -u-> gamma of length ||A1||.
struct FixedPath {
    std::vector<Act> actions;
    Word residue;
};

/// A validated system together with its norms and constants. Cheap to copy;
/// copies share the memo of fixed norm-reducing paths.
class AnalyzedSystem {
public:
    /// Validates the system. Throws ValidationError.
    explicit AnalyzedSystem(BpaSystem system);

    const BpaSystem& system() const { return data_->system; }
    const NormTable& norms() const { return data_->norms; }
    const SystemConstants& constants() const { return data_->constants; }

    /// Memoized, deterministic norm-reducing path from a2 of length ||a1||.
    /// Precondition: ||a1|| <= ||a2|| < omega.
    const FixedPath& fixed_pair_path(Nt a1, Nt a2) const;

private:
    struct Data {
        BpaSystem system;
        NormTable norms;
        SystemConstants constants;
        std::mutex memo_mutex;
        std::map<std::pair<Nt, Nt>, std::unique_ptr<FixedPath>> fixed_paths;
    };
    std::shared_ptr<Data> data_;
};

/// The family A_k -a-> A_{k-1} A_{k-1}, ..., A_1 -a-> eps.
BpaSystem chain_system(std::size_t k);

}  // namespace bpa
