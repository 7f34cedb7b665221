#pragma once

#include "bpa/regular_string.hpp"
#include "bpa/system.hpp"

#include <vector>

namespace bpa {

struct Transition {
    Act action;
    RegularString target;
    std::size_t rule;  ///< index of the rule that fired

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct PathWitness {
    std::vector<Act> actions;
    std::vector<RegularString> states;  ///< actions.size() + 1 entries
};

/// One-step successors of a canonical truncated string, in rule declaration
/// order. Targets are canonical and truncated.
std::vector<Transition> transitions(const AnalyzedSystem& sys, const RegularString& x);

/// Set of actions enabled at x, as a sorted vector.
std::vector<Act> enabled_actions(const AnalyzedSystem& sys, const RegularString& x);

/// Greedy norm-reducing path: at every state the first rule of the head whose
/// body norm is one less than the head norm. Precondition: x normed and
/// steps <= ||x||.
PathWitness norm_reducing_path(const AnalyzedSystem& sys, const RegularString& x, std::size_t steps);

/// Every norm-reducing path from x to eps, in depth-first rule order, at most
/// `limit` of them. Precondition: x normed.
std::vector<PathWitness> all_erasing_paths(const AnalyzedSystem& sys, const RegularString& x, std::size_t limit);

/// Every state reachable from x by exactly the given action word, in
/// depth-first rule order, without duplicates.
std::vector<RegularString> states_along(const AnalyzedSystem& sys, const RegularString& x, const std::vector<Act>& word);

inline FixedPath fixed_pair_path(const AnalyzedSystem& sys, Nt a1, Nt a2) { return sys.fixed_pair_path(a1, a2); }

}  // namespace bpa
