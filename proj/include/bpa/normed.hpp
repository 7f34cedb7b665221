#pragma once

#include "bpa/equivalence.hpp"
#include "bpa/system.hpp"

#include <string>
#include <vector>

namespace bpa {

/// A normed system with an unnormed absorber U reachable from every
/// nonterminal under every action.
struct CompletedSystem {
    BpaSystem base;
    BpaSystem completed;
    Nt u_symbol;
};

/// Adds U -a-> U and A -a-> U for every action a and nonterminal A, after the
/// original rules. Throws ContractViolation on unnormed input.
CompletedSystem complete_unnormed(const BpaSystem& system);

/// min(||x||, ||y||) + |N|^2 M_rhs. Throws ContractViolation unless the system
/// is normed and both strings are finite.
BigNat eqlevel_bound(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y);

struct NormedVerdict {
    enum class Kind { Bisimilar, NotBisimilar, Inconclusive };
    Kind kind;
    std::size_t level = 0;  ///< NotBisimilar only
    BigNat bound;
    std::string reason;  ///< Inconclusive only
};

/// Runs the oracle to depth B + 2. An observed Exact(B + 1) raises InternalError.
NormedVerdict decide_normed(EqLevelOracle& oracle, const RegularString& x, const RegularString& y);
NormedVerdict decide_normed(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y);

/// eqlevel(s1 mu, s2 mu) == eqlevel(s1, s2) + ||mu|| whenever both are exact
/// within depth. `oracle` should run on a completed system.
bool check_additivity(EqLevelOracle& oracle, const RegularString& sigma1, const RegularString& sigma2,
                      const RegularString& mu, std::size_t depth);

/// Replays the sequence construction behind the eq-level bound on a completed
/// system and checks its bookkeeping.
struct NormedTrace {
    std::vector<std::string> cases;  ///< "1a", "1b", "2", "3"
    std::vector<std::size_t> e;      ///< eqlevel(rho_i mu_i, rho'_i mu_i)
    std::vector<long long> d;        ///< e_i - min norm
    bool ok = true;
    bool inconclusive = false;
    std::string message;
};

NormedTrace trace_bound_construction(EqLevelOracle& completed_oracle, const RegularString& alpha1,
                            const RegularString& alpha2, std::size_t depth);

}  // namespace bpa
