#pragma once

#include "bpa/equivalence.hpp"
#include "bpa/regular_string.hpp"
#include "bpa/system.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpa {

/// One line of a least-congruence proof. Step and generator references are
/// 0-based here; the text form is 1-based.
struct ProofStep {
    enum class Kind { Generator, Reflexivity, Symmetry, Transitivity, Concatenation };

    Kind kind;
    std::size_t first = 0;
    std::size_t second = 0;
    RegularString str;  ///< Reflexivity only

    static ProofStep generator(std::size_t i) { return {Kind::Generator, i, 0, {}}; }
    static ProofStep reflexivity(RegularString s) { return {Kind::Reflexivity, 0, 0, std::move(s)}; }
    static ProofStep symmetry(std::size_t k) { return {Kind::Symmetry, k, 0, {}}; }
    static ProofStep transitivity(std::size_t j, std::size_t k) { return {Kind::Transitivity, j, k, {}}; }
    static ProofStep concatenation(std::size_t j, std::size_t k) { return {Kind::Concatenation, j, k, {}}; }

    friend bool operator==(const ProofStep&, const ProofStep&) = default;
};

struct CongruenceProof {
    std::vector<ProofStep> steps;
    StringPair conclusion;

    friend bool operator==(const CongruenceProof&, const CongruenceProof&) = default;
};

struct ProofCheck {
    bool ok = true;
    std::optional<std::size_t> failed_step;  ///< 0-based
    std::string reason;

    explicit operator bool() const { return ok; }
};

/// Replays the proof. When `norms` is given, concatenations are truncated after
/// the first unnormed symbol (the identification used for all LTS states).
ProofCheck verify_congruence_proof(const CongruenceProof& proof, std::span<const StringPair> generators,
                                   const NormTable* norms = nullptr);

struct Decomposition {
    std::vector<StringPair> generators;  ///< 1 to 3 pairs
    CongruenceProof proof;
    std::string origin;  ///< template that produced it, informational

    friend bool operator==(const Decomposition& a, const Decomposition& b) {
        return a.generators == b.generators && a.proof == b.proof;
    }
};

/// Every generator strictly smaller than the target, and a valid proof of it.
bool check_decomposition(const AnalyzedSystem& sys, const StringPair& target, const Decomposition& d);

/// Space taken to present a decomposition: the sizes of its generator pairs and
/// of the strings introduced by reflexivity steps.
BigNat decomposition_footprint(const AnalyzedSystem& sys, const Decomposition& d);

/// Text block: `pair <left> | <right>` per generator, then one proof step per
/// line (`gen i`, `refl <string>`, `sym k`, `trans j k`, `concat j k`), then `end`.
std::string serialize_decomposition(const BpaSystem& system, const Decomposition& d);
/// Parses the block produced by serialize_decomposition; the conclusion is the
/// pair derived by the last step (left empty when the proof is malformed).
Decomposition parse_decomposition(const BpaSystem& system, std::string_view text);

/// For ||sigma|| < ||sigma2||: follows a norm-reducing erasure of sigma and
/// returns the nonempty residue delta of sigma2 along the same actions that
/// maximizes the bounded eq-level of (beta, delta·beta).
RegularString extract_delta_simple(EqLevelOracle& oracle, const RegularString& sigma, const RegularString& sigma2,
                                   const RegularString& beta, std::size_t oracle_depth);

struct YieldDeltaResult {
    std::optional<RegularString> delta;
    std::vector<std::string> trace;  ///< "1a", "1b", "2", "3a", "3b", then "simple"
    std::string inconclusive;        ///< reason when delta is empty
};

/// Builds the (rho, rho', mu) sequence for alpha1 !~ alpha2 with
/// alpha1·beta ~ alpha2·beta, using the bounded oracle in place of ~, and
/// returns a nonempty delta with beta ~ delta·beta.
YieldDeltaResult yield_delta(EqLevelOracle& oracle, const RegularString& alpha1, const RegularString& alpha2,
                             const RegularString& beta, std::size_t oracle_depth);

struct DecompositionOptions {
    /// Only keep candidates whose generators all satisfy ~_depth.
    bool require_bisimilar_generators = true;
    /// Upper bound on norm-reducing erasure paths explored per nonterminal.
    std::size_t path_limit = 16;
};

/// Decompositions of (A·alpha, B·beta) instantiated from the four templates
/// (unnormed B; cyclic closure; two-pair; three-pair with delta^omega), in that
/// order. Every result passes check_decomposition and has E-bounded cycles.
std::vector<Decomposition> prover_decompositions(EqLevelOracle& oracle, const StringPair& pair, std::size_t oracle_depth,
                                                 const DecompositionOptions& options = {});

/// Head/tail split of a pair (rho, rho') oriented so that ||A1|| <= ||A2||.
struct HeadSplit {
    Nt a1;
    RegularString rest1;  ///< delta1
    Nt a2;
    RegularString rest2;  ///< delta2
    bool swapped;         ///< true when rho' supplied A1
    FixedPath path;       ///< fixed norm-reducing path A2 -u-> gamma
    RegularString gamma;
};

/// Precondition: both strings nonempty, normed heads.
HeadSplit split_heads(const AnalyzedSystem& sys, const RegularString& rho, const RegularString& rho2);

}  // namespace bpa
