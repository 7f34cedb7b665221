#pragma once

#include "bpa/decomposition.hpp"
#include "bpa/equivalence.hpp"
#include "bpa/system.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bpa {

enum class Side { Left, Right };

enum class TerminalResult { Continue, ProverWins, RefuterWins };

/// RefuterWins iff the enabled action sets differ; ProverWins iff both are eps.
TerminalResult terminal_check(const AnalyzedSystem& sys, const StringPair& pair);

struct GameParams {
    BigNat pair_space;
    BigNat free_space;
};

/// pair_space = 2(2M + 2E + S_rhs), free_space = 8E.
GameParams default_params(const AnalyzedSystem& sys);

struct TerminalCheckMove {
    TerminalResult result;
    friend bool operator==(const TerminalCheckMove&, const TerminalCheckMove&) = default;
};
struct DecompositionOffered {
    Decomposition decomposition;
    friend bool operator==(const DecompositionOffered&, const DecompositionOffered&) = default;
};
struct PairChosen {
    std::size_t index;  ///< 0-based
    friend bool operator==(const PairChosen&, const PairChosen&) = default;
};
struct TransitionChosen {
    Side side;
    Act action;
    RegularString target;
    friend bool operator==(const TransitionChosen&, const TransitionChosen&) = default;
};
struct ResponseChosen {
    RegularString target;
    friend bool operator==(const ResponseChosen&, const ResponseChosen&) = default;
};

using Move = std::variant<TerminalCheckMove, DecompositionOffered, PairChosen, TransitionChosen, ResponseChosen>;

enum class Stage { AwaitingCheck, AwaitingProver, AwaitingPairChoice, AwaitingResponse, Finished };

enum class Verdict { ProverWins, RefuterWins, Ongoing, Inconclusive };

struct GameConfig {
    StringPair pair;
    std::size_t phase = 1;
    GameParams params;
    Stage stage = Stage::AwaitingCheck;
    std::optional<Decomposition> offered;
    std::optional<TransitionChosen> attack;
    std::optional<Verdict> outcome;  ///< set once Finished
    std::string note;                ///< why the game finished

    friend bool operator==(const GameConfig& a, const GameConfig& b) {
        return a.pair == b.pair && a.phase == b.phase && a.params.pair_space == b.params.pair_space &&
               a.params.free_space == b.params.free_space && a.stage == b.stage && a.offered == b.offered &&
               a.attack == b.attack && a.outcome == b.outcome;
    }
};

GameConfig initial_config(const StringPair& pair, const GameParams& params);

class IllegalMove : public std::runtime_error {
public:
    IllegalMove(const std::string& reason, std::size_t phase)
        : std::runtime_error("phase " + std::to_string(phase) + ": " + reason), phase_(phase) {}
    std::size_t phase() const { return phase_; }

private:
    std::size_t phase_;
};

/// Raised by a strategy that cannot decide on a move.
class StrategyInconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The next configuration. Throws IllegalMove with the reason.
GameConfig apply_move(const AnalyzedSystem& sys, const GameConfig& config, const Move& move);

/// Moves legal in the configuration. Decomposition offers are not enumerated.
std::vector<Move> legal_moves(const AnalyzedSystem& sys, const GameConfig& config);

class ProverStrategy {
public:
    virtual ~ProverStrategy() = default;
    /// A decomposition to offer, or nothing to let Refuter attack.
    virtual std::optional<Decomposition> offer(const GameConfig& config) = 0;
    virtual RegularString respond(const GameConfig& config) = 0;
};

class RefuterStrategy {
public:
    virtual ~RefuterStrategy() = default;
    virtual std::size_t choose(const GameConfig& config) = 0;
    virtual TransitionChosen attack(const GameConfig& config) = 0;
};

/// Least eq-level generator; attacks after which every response has a smaller
/// eq-level. Without `strict`, pairs the oracle cannot certify are attacked by
/// the transition whose best response has the lowest level.
class SoundRefuter : public RefuterStrategy {
public:
    SoundRefuter(EqLevelOracle& oracle, std::size_t depth, bool strict = false)
        : oracle_(oracle), depth_(depth), strict_(strict) {}
    std::size_t choose(const GameConfig& config) override;
    TransitionChosen attack(const GameConfig& config) override;

private:
    EqLevelOracle& oracle_;
    std::size_t depth_;
    bool strict_;
};

/// Decomposes when a canonical prefix is bigger than 2M + E, otherwise lets
/// Refuter attack and answers with the response of highest eq-level, equal
/// norms breaking ties.
class CompleteProver : public ProverStrategy {
public:
    CompleteProver(EqLevelOracle& oracle, std::size_t depth, DecompositionOptions options = {})
        : oracle_(oracle), depth_(depth), options_(options) {}
    std::optional<Decomposition> offer(const GameConfig& config) override;
    RegularString respond(const GameConfig& config) override;

private:
    EqLevelOracle& oracle_;
    std::size_t depth_;
    DecompositionOptions options_;
};

class RandomProver : public ProverStrategy {
public:
    RandomProver(EqLevelOracle& oracle, std::uint64_t seed, double offer_probability = 0.3, std::size_t depth = 4)
        : oracle_(oracle), rng_(seed), offer_probability_(offer_probability), depth_(depth) {}
    std::optional<Decomposition> offer(const GameConfig& config) override;
    RegularString respond(const GameConfig& config) override;

private:
    EqLevelOracle& oracle_;
    std::mt19937_64 rng_;
    double offer_probability_;
    std::size_t depth_;
};

class RandomRefuter : public RefuterStrategy {
public:
    RandomRefuter(const AnalyzedSystem& sys, std::uint64_t seed) : sys_(sys), rng_(seed) {}
    std::size_t choose(const GameConfig& config) override;
    TransitionChosen attack(const GameConfig& config) override;

private:
    AnalyzedSystem sys_;
    std::mt19937_64 rng_;
};

/// Plays a fixed move list for one or both roles. A Prover with no pending
/// DecompositionOffered declines to decompose.
class ScriptedPlayer : public ProverStrategy, public RefuterStrategy {
public:
    explicit ScriptedPlayer(std::vector<Move> moves) : moves_(std::move(moves)) {}
    std::optional<Decomposition> offer(const GameConfig& config) override;
    RegularString respond(const GameConfig& config) override;
    std::size_t choose(const GameConfig& config) override;
    TransitionChosen attack(const GameConfig& config) override;
    bool exhausted() const { return next_ >= moves_.size(); }

private:
    const Move& pop(const GameConfig& config, const char* what);
    std::vector<Move> moves_;
    std::size_t next_ = 0;
};

struct TranscriptEntry {
    std::size_t phase;
    std::string mover;  ///< "system", "prover" or "refuter"
    Move move;
    StringPair pair_before;
    StringPair pair_after;
};

struct GameTranscript {
    StringPair start;
    GameParams params;
    std::vector<TranscriptEntry> entries;
    Verdict verdict = Verdict::Ongoing;
    std::size_t phases = 0;  ///< phases started
    std::string note;
};

/// Plays until a win, an inconclusive strategy, or max_phases completed phases.
GameTranscript run_game(const AnalyzedSystem& sys, const StringPair& start, ProverStrategy& prover,
                        RefuterStrategy& refuter, std::size_t max_phases, const GameParams& params);
GameTranscript run_game(const AnalyzedSystem& sys, Nt x, Nt y, ProverStrategy& prover, RefuterStrategy& refuter,
                        std::size_t max_phases);

/// Reapplies the moves; returns every configuration, starting with the initial one.
std::vector<GameConfig> replay_transcript(const AnalyzedSystem& sys, const GameTranscript& t);

std::string verdict_name(Verdict v);
std::string terminal_name(TerminalResult r);
std::string side_name(Side s);

/// One move per line, then `verdict ...` as the last line.
std::string serialize_transcript(const BpaSystem& system, const GameTranscript& t);
/// Parses and replays; the recorded pairs come from the replay.
GameTranscript parse_transcript(const AnalyzedSystem& sys, std::string_view text);

enum class SolveVerdict { ProverWins, RefuterWins, BudgetExceeded };

struct SolveOptions {
    std::size_t oracle_depth = 8;
    std::size_t path_limit = 16;
    std::optional<BigNat> free_space;  ///< default 8E
};

struct SolveResult {
    SolveVerdict verdict;
    std::size_t configurations = 0;
};

/// Refuter's attractor over the positions reachable with pairs of size at most
/// pair_space, Prover decompositions limited to the template candidates.
SolveResult solve_game(const AnalyzedSystem& sys, const StringPair& start, const BigNat& pair_space,
                       std::size_t max_configs, const SolveOptions& options = {});

std::string solve_verdict_name(SolveVerdict v);

}  // namespace bpa
