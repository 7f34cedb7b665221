#include "bpa/game.hpp"

#include "bpa/errors.hpp"
#include "bpa/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace bpa {

TerminalResult terminal_check(const AnalyzedSystem& sys, const StringPair& pair) {
    if (enabled_actions(sys, pair.first) != enabled_actions(sys, pair.second)) return TerminalResult::RefuterWins;
    if (pair.first.is_empty() && pair.second.is_empty()) return TerminalResult::ProverWins;
    return TerminalResult::Continue;
}

GameParams default_params(const AnalyzedSystem& sys) {
    const auto& c = sys.constants();
    return {2 * (2 * c.max_norm + 2 * c.cycle_bound + c.max_rhs_size), 8 * c.cycle_bound};
}

GameConfig initial_config(const StringPair& pair, const GameParams& params) {
    GameConfig c;
    c.pair = pair;
    c.params = params;
    return c;
}

namespace {

GameConfig finish(GameConfig c, Verdict v, std::string note) {
    c.stage = Stage::Finished;
    c.outcome = v;
    c.note = std::move(note);
    c.offered.reset();
    c.attack.reset();
    return c;
}

GameConfig next_phase(GameConfig c, StringPair pair) {
    c.pair = std::move(pair);
    c.phase += 1;
    c.stage = Stage::AwaitingCheck;
    c.offered.reset();
    c.attack.reset();
    return c;
}

const RegularString& side_of(const StringPair& p, Side s) { return s == Side::Left ? p.first : p.second; }

}  // namespace

GameConfig apply_move(const AnalyzedSystem& sys, const GameConfig& config, const Move& move) {
    const std::size_t ph = config.phase;
    return std::visit(
        [&](const auto& m) -> GameConfig {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, TerminalCheckMove>) {
                if (config.stage != Stage::AwaitingCheck) throw IllegalMove("terminal check out of turn", ph);
                TerminalResult r = terminal_check(sys, config.pair);
                if (r != m.result) throw IllegalMove("terminal check reports the wrong result", ph);
                if (r == TerminalResult::RefuterWins) return finish(config, Verdict::RefuterWins, "enabled actions differ");
                if (r == TerminalResult::ProverWins) return finish(config, Verdict::ProverWins, "both sides are dead");
                GameConfig c = config;
                c.stage = Stage::AwaitingProver;
                return c;
            } else if constexpr (std::is_same_v<T, DecompositionOffered>) {
                if (config.stage != Stage::AwaitingProver) throw IllegalMove("decomposition offered out of turn", ph);
                if (m.decomposition.proof.conclusion != config.pair) {
                    throw IllegalMove("decomposition does not conclude the current pair", ph);
                }
                if (!check_decomposition(sys, config.pair, m.decomposition)) {
                    throw IllegalMove("not a decomposition of the current pair", ph);
                }
                if (decomposition_footprint(sys, m.decomposition) > config.params.free_space) {
                    throw IllegalMove("decomposition does not fit into the free work space", ph);
                }
                GameConfig c = config;
                c.stage = Stage::AwaitingPairChoice;
                c.offered = m.decomposition;
                return c;
            } else if constexpr (std::is_same_v<T, PairChosen>) {
                if (config.stage != Stage::AwaitingPairChoice) throw IllegalMove("pair choice out of turn", ph);
                if (m.index >= config.offered->generators.size()) throw IllegalMove("pair index out of range", ph);
                return next_phase(config, config.offered->generators[m.index]);
            } else if constexpr (std::is_same_v<T, TransitionChosen>) {
                if (config.stage != Stage::AwaitingProver) throw IllegalMove("transition chosen out of turn", ph);
                bool ok = false;
                for (const auto& t : transitions(sys, side_of(config.pair, m.side))) {
                    if (t.action == m.action && t.target == m.target) ok = true;
                }
                if (!ok) throw IllegalMove("no such transition", ph);
                GameConfig c = config;
                c.stage = Stage::AwaitingResponse;
                c.attack = m;
                return c;
            } else {
                if (config.stage != Stage::AwaitingResponse) throw IllegalMove("response out of turn", ph);
                const TransitionChosen& a = *config.attack;
                const Side other = a.side == Side::Left ? Side::Right : Side::Left;
                bool ok = false;
                for (const auto& t : transitions(sys, side_of(config.pair, other))) {
                    if (t.action == a.action && t.target == m.target) ok = true;
                }
                if (!ok) throw IllegalMove("response does not match the attacking action", ph);
                StringPair next = a.side == Side::Left ? StringPair{a.target, m.target} : StringPair{m.target, a.target};
                if (size_of_pair(next, sys.norms()) > config.params.pair_space) {
                    GameConfig c = config;
                    c.pair = next;
                    return finish(c, Verdict::RefuterWins, "pair does not fit into the reserved space");
                }
                return next_phase(config, std::move(next));
            }
        },
        move);
}

std::vector<Move> legal_moves(const AnalyzedSystem& sys, const GameConfig& config) {
    std::vector<Move> out;
    switch (config.stage) {
        case Stage::AwaitingCheck:
            out.push_back(TerminalCheckMove{terminal_check(sys, config.pair)});
            break;
        case Stage::AwaitingProver:
            for (Side s : {Side::Left, Side::Right}) {
                for (const auto& t : transitions(sys, side_of(config.pair, s))) {
                    TransitionChosen m{s, t.action, t.target};
                    if (std::find(out.begin(), out.end(), Move{m}) == out.end()) out.push_back(m);
                }
            }
            break;
        case Stage::AwaitingPairChoice:
            for (std::size_t i = 0; i < config.offered->generators.size(); ++i) out.push_back(PairChosen{i});
            break;
        case Stage::AwaitingResponse: {
            const TransitionChosen& a = *config.attack;
            const Side other = a.side == Side::Left ? Side::Right : Side::Left;
            for (const auto& t : transitions(sys, side_of(config.pair, other))) {
                ResponseChosen m{t.target};
                if (t.action == a.action && std::find(out.begin(), out.end(), Move{m}) == out.end()) out.push_back(m);
            }
            break;
        }
        case Stage::Finished:
            break;
    }
    return out;
}

namespace {

bool higher(const EqLevelResult& a, const EqLevelResult& b) {
    if (a.level() != b.level()) return a.level() > b.level();
    return !a.is_exact() && b.is_exact();
}

std::vector<RegularString> responses(const AnalyzedSystem& sys, const GameConfig& config) {
    std::vector<RegularString> out;
    for (const auto& m : legal_moves(sys, config)) out.push_back(std::get<ResponseChosen>(m).target);
    return out;
}

StringPair after_response(const TransitionChosen& a, const RegularString& r) {
    return a.side == Side::Left ? StringPair{a.target, r} : StringPair{r, a.target};
}

}  // namespace

std::size_t SoundRefuter::choose(const GameConfig& config) {
    const auto& gens = config.offered->generators;
    std::size_t best = 0;
    std::optional<EqLevelResult> level;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        EqLevelResult r = oracle_.eqlevel(gens[i].first, gens[i].second, depth_);
        if (!level || higher(*level, r)) {
            level = r;
            best = i;
        }
    }
    return best;
}

TransitionChosen SoundRefuter::attack(const GameConfig& config) {
    const AnalyzedSystem& sys = oracle_.system();
    const EqLevelResult here = oracle_.eqlevel(config.pair.first, config.pair.second, depth_);
    std::optional<TransitionChosen> fallback;
    std::optional<EqLevelResult> fallback_level;
    for (const auto& m : legal_moves(sys, config)) {
        const auto& a = std::get<TransitionChosen>(m);
        GameConfig probe = config;
        probe.stage = Stage::AwaitingResponse;
        probe.attack = a;
        bool drops = true;
        std::optional<EqLevelResult> best_reply;
        for (const auto& r : responses(sys, probe)) {
            StringPair p = after_response(a, r);
            EqLevelResult e = oracle_.eqlevel(p.first, p.second, depth_);
            if (!best_reply || higher(e, *best_reply)) best_reply = e;
            if (!here.is_exact() || !e.is_exact() || e.level() >= here.level()) drops = false;
        }
        if (drops && here.is_exact()) return a;
        if (!best_reply) {
            // no response at all: the attack wins outright
            return a;
        }
        if (!fallback || higher(*fallback_level, *best_reply)) {
            fallback = a;
            fallback_level = best_reply;
        }
    }
    if (strict_ || !fallback) throw StrategyInconclusive("oracle cannot certify a level-decreasing attack");
    return *fallback;
}

std::optional<Decomposition> CompleteProver::offer(const GameConfig& config) {
    const AnalyzedSystem& sys = oracle_.system();
    const NormTable& norms = sys.norms();
    const auto& c = sys.constants();
    const BigNat limit = 2 * c.max_norm + c.cycle_bound;
    const BigNat p1 = norms.normed_prefix(config.pair.first.prefix());
    const BigNat p2 = norms.normed_prefix(config.pair.second.prefix());
    if (!(p1 > limit || p2 > limit)) return std::nullopt;
    if (config.pair.first.is_empty() || config.pair.second.is_empty()) return std::nullopt;
    for (auto& d : prover_decompositions(oracle_, config.pair, depth_, options_)) {
        if (!(decomposition_footprint(sys, d) > config.params.free_space)) return d;
    }
    return std::nullopt;
}

RegularString CompleteProver::respond(const GameConfig& config) {
    const AnalyzedSystem& sys = oracle_.system();
    std::optional<RegularString> best;
    std::optional<EqLevelResult> level;
    bool best_fits = false;
    bool best_balanced = false;
    for (const auto& r : responses(sys, config)) {
        StringPair p = after_response(*config.attack, r);
        const bool fits = !(size_of_pair(p, sys.norms()) > config.params.pair_space);
        // different norms are never bisimilar, so they lose ties
        const bool balanced = norm_of(p.first, sys.norms()) == norm_of(p.second, sys.norms());
        EqLevelResult e = oracle_.eqlevel(p.first, p.second, depth_);
        bool better = !best || (fits && !best_fits);
        if (!better && fits == best_fits) {
            better = higher(e, *level) || (e == *level && balanced && !best_balanced);
        }
        if (better) {
            best = r;
            level = e;
            best_fits = fits;
            best_balanced = balanced;
        }
    }
    if (!best) throw InternalError("no response available after a passed terminal check");
    return *best;
}

std::optional<Decomposition> RandomProver::offer(const GameConfig& config) {
    if (config.pair.first.is_empty() || config.pair.second.is_empty()) return std::nullopt;
    std::bernoulli_distribution coin(offer_probability_);
    if (!coin(rng_)) return std::nullopt;
    const AnalyzedSystem& sys = oracle_.system();
    DecompositionOptions raw;
    raw.require_bisimilar_generators = false;
    std::vector<Decomposition> fit;
    for (auto& d : prover_decompositions(oracle_, config.pair, depth_, raw)) {
        if (!(decomposition_footprint(sys, d) > config.params.free_space)) fit.push_back(std::move(d));
    }
    if (fit.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, fit.size() - 1);
    return fit[pick(rng_)];
}

RegularString RandomProver::respond(const GameConfig& config) {
    auto rs = responses(oracle_.system(), config);
    if (rs.empty()) throw InternalError("no response available after a passed terminal check");
    std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
    return rs[pick(rng_)];
}

std::size_t RandomRefuter::choose(const GameConfig& config) {
    std::uniform_int_distribution<std::size_t> pick(0, config.offered->generators.size() - 1);
    return pick(rng_);
}

TransitionChosen RandomRefuter::attack(const GameConfig& config) {
    auto ms = legal_moves(sys_, config);
    if (ms.empty()) throw InternalError("no transition available after a passed terminal check");
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    return std::get<TransitionChosen>(ms[pick(rng_)]);
}

const Move& ScriptedPlayer::pop(const GameConfig& config, const char* what) {
    if (next_ >= moves_.size()) throw IllegalMove(std::string("script ended before ") + what, config.phase);
    return moves_[next_++];
}

std::optional<Decomposition> ScriptedPlayer::offer(const GameConfig&) {
    if (next_ < moves_.size()) {
        if (const auto* d = std::get_if<DecompositionOffered>(&moves_[next_])) {
            ++next_;
            return d->decomposition;
        }
    }
    return std::nullopt;
}

RegularString ScriptedPlayer::respond(const GameConfig& config) {
    const Move& m = pop(config, "a response");
    if (const auto* r = std::get_if<ResponseChosen>(&m)) return r->target;
    throw IllegalMove("script expected a response", config.phase);
}

std::size_t ScriptedPlayer::choose(const GameConfig& config) {
    const Move& m = pop(config, "a pair choice");
    if (const auto* r = std::get_if<PairChosen>(&m)) return r->index;
    throw IllegalMove("script expected a pair choice", config.phase);
}

TransitionChosen ScriptedPlayer::attack(const GameConfig& config) {
    const Move& m = pop(config, "a transition");
    if (const auto* r = std::get_if<TransitionChosen>(&m)) return *r;
    throw IllegalMove("script expected a transition", config.phase);
}

GameTranscript run_game(const AnalyzedSystem& sys, const StringPair& start, ProverStrategy& prover,
                        RefuterStrategy& refuter, std::size_t max_phases, const GameParams& params) {
    GameTranscript t;
    t.start = start;
    t.params = params;
    GameConfig c = initial_config(start, params);
    auto play = [&](const char* mover, Move m) {
        GameConfig next = apply_move(sys, c, m);
        t.entries.push_back({c.phase, mover, std::move(m), c.pair, next.pair});
        c = std::move(next);
    };
    try {
        while (c.stage != Stage::Finished) {
            if (c.stage == Stage::AwaitingCheck) {
                if (c.phase > max_phases) {
                    t.verdict = Verdict::Ongoing;
                    t.note = "phase limit reached";
                    t.phases = max_phases;
                    return t;
                }
                t.phases = c.phase;
                play("system", TerminalCheckMove{terminal_check(sys, c.pair)});
                continue;
            }
            if (c.stage == Stage::AwaitingProver) {
                if (auto d = prover.offer(c)) {
                    play("prover", DecompositionOffered{std::move(*d)});
                    play("refuter", PairChosen{refuter.choose(c)});
                } else {
                    play("refuter", refuter.attack(c));
                    play("prover", ResponseChosen{prover.respond(c)});
                }
            }
        }
    } catch (const StrategyInconclusive& e) {
        t.verdict = Verdict::Inconclusive;
        t.note = e.what();
        return t;
    }
    t.verdict = *c.outcome;
    t.note = c.note;
    return t;
}

GameTranscript run_game(const AnalyzedSystem& sys, Nt x, Nt y, ProverStrategy& prover, RefuterStrategy& refuter,
                        std::size_t max_phases) {
    return run_game(sys, {RegularString::finite({x}), RegularString::finite({y})}, prover, refuter, max_phases,
                    default_params(sys));
}

std::vector<GameConfig> replay_transcript(const AnalyzedSystem& sys, const GameTranscript& t) {
    std::vector<GameConfig> out{initial_config(t.start, t.params)};
    for (const auto& e : t.entries) out.push_back(apply_move(sys, out.back(), e.move));
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ProverWins: return "ProverWins";
        case Verdict::RefuterWins: return "RefuterWins";
        case Verdict::Ongoing: return "Ongoing";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string terminal_name(TerminalResult r) {
    switch (r) {
        case TerminalResult::Continue: return "Continue";
        case TerminalResult::ProverWins: return "ProverWins";
        case TerminalResult::RefuterWins: return "RefuterWins";
    }
    return "?";
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

std::string solve_verdict_name(SolveVerdict v) {
    switch (v) {
        case SolveVerdict::ProverWins: return "ProverWins";
        case SolveVerdict::RefuterWins: return "RefuterWins";
        case SolveVerdict::BudgetExceeded: return "BudgetExceeded";
    }
    return "?";
}

namespace {

// Prover position: a pair at the start of a phase.
struct Node {
    StringPair pair;
    bool refuter_win = false;
    bool prover_win = false;
    std::vector<std::vector<std::size_t>> offers;  // generator nodes per decomposition
    // per attack: response nodes; npos marks an overflowing response
    std::vector<std::vector<std::size_t>> attacks;
    bool won = false;  // in Refuter's attractor
};

constexpr std::size_t overflow = static_cast<std::size_t>(-1);

}  // namespace

SolveResult solve_game(const AnalyzedSystem& sys, const StringPair& start, const BigNat& pair_space,
                       std::size_t max_configs, const SolveOptions& options) {
    EqLevelOracle oracle(sys);
    const BigNat free_space = options.free_space ? *options.free_space : 8 * sys.constants().cycle_bound;
    DecompositionOptions raw;
    raw.require_bisimilar_generators = false;
    raw.path_limit = options.path_limit;

    std::vector<Node> nodes;
    std::map<StringPair, std::size_t> index;
    std::deque<std::size_t> work;
    bool budget = false;
    auto node_of = [&](const StringPair& p) -> std::size_t {
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        if (nodes.size() >= max_configs) {
            budget = true;
            return overflow;
        }
        index.emplace(p, nodes.size());
        Node n;
        n.pair = p;
        nodes.push_back(std::move(n));
        work.push_back(nodes.size() - 1);
        return nodes.size() - 1;
    };
    node_of(start);
    if (size_of_pair(start, sys.norms()) > pair_space) {
        return {SolveVerdict::RefuterWins, 1};
    }
    while (!work.empty() && !budget) {
        const std::size_t id = work.front();
        work.pop_front();
        const StringPair pair = nodes[id].pair;
        TerminalResult tr = terminal_check(sys, pair);
        if (tr == TerminalResult::RefuterWins) {
            nodes[id].refuter_win = true;
            continue;
        }
        if (tr == TerminalResult::ProverWins) {
            nodes[id].prover_win = true;
            continue;
        }
        std::vector<std::vector<std::size_t>> offers;
        for (const auto& d : prover_decompositions(oracle, pair, options.oracle_depth, raw)) {
            if (decomposition_footprint(sys, d) > free_space) continue;
            std::vector<std::size_t> gens;
            for (const auto& g : d.generators) gens.push_back(node_of(g));
            offers.push_back(std::move(gens));
            if (budget) break;
        }
        std::vector<std::vector<std::size_t>> attacks;
        GameConfig c = initial_config(pair, {pair_space, free_space});
        c.stage = Stage::AwaitingProver;
        for (const auto& m : legal_moves(sys, c)) {
            GameConfig probe = apply_move(sys, c, m);
            std::vector<std::size_t> replies;
            for (const auto& r : legal_moves(sys, probe)) {
                StringPair next = after_response(std::get<TransitionChosen>(m), std::get<ResponseChosen>(r).target);
                if (size_of_pair(next, sys.norms()) > pair_space) {
                    replies.push_back(overflow);
                } else {
                    replies.push_back(node_of(next));
                }
            }
            attacks.push_back(std::move(replies));
            if (budget) break;
        }
        nodes[id].offers = std::move(offers);
        nodes[id].attacks = std::move(attacks);
    }
    if (budget) return {SolveVerdict::BudgetExceeded, nodes.size()};

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& n : nodes) {
            if (n.won || n.prover_win) continue;
            bool win = n.refuter_win;
            if (!win) {
                bool attack_wins = false;
                for (const auto& replies : n.attacks) {
                    bool all = true;
                    for (std::size_t r : replies) {
                        if (r != overflow && !nodes[r].won) {
                            all = false;
                            break;
                        }
                    }
                    if (all) {
                        attack_wins = true;
                        break;
                    }
                }
                bool offers_lose = true;
                for (const auto& gens : n.offers) {
                    bool some = false;
                    for (std::size_t g : gens) some = some || nodes[g].won;
                    if (!some) {
                        offers_lose = false;
                        break;
                    }
                }
                win = attack_wins && offers_lose;
            }
            if (win) {
                n.won = true;
                changed = true;
            }
        }
    }
    return {nodes[0].won ? SolveVerdict::RefuterWins : SolveVerdict::ProverWins, nodes.size()};
}

}  // namespace bpa
