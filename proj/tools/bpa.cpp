#include "bpa/decomposition.hpp"
#include "bpa/equivalence.hpp"
#include "bpa/errors.hpp"
#include "bpa/game.hpp"
#include "bpa/lts.hpp"
#include "bpa/normed.hpp"
#include "bpa/system.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using nlohmann::json;
using namespace bpa;

namespace {

enum Exit { Ok = 0, Usage = 1, Inconclusive = 2, Internal = 3 };

struct Undecided : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Common {
    std::string grammar;
    bool complete = false;
    bool json_out = false;
};

AnalyzedSystem load(const Common& c) {
    BpaSystem s = parse_system(read_file(c.grammar));
    if (c.complete) s = complete_dead(s);
    return AnalyzedSystem(std::move(s));
}

std::string big(const BigNat& n) { return n.str(); }

json pair_json(const BpaSystem& s, const StringPair& p) { return json::array({s.format(p.first), s.format(p.second)}); }

json move_json(const BpaSystem& s, const Move& m) {
    return std::visit(
        [&](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TerminalCheckMove>) {
                return {{"kind", "TerminalCheck"}, {"result", terminal_name(v.result)}};
            } else if constexpr (std::is_same_v<T, DecompositionOffered>) {
                json gens = json::array();
                for (const auto& g : v.decomposition.generators) gens.push_back(pair_json(s, g));
                return {{"kind", "DecompositionOffered"},
                        {"generators", gens},
                        {"proof", serialize_decomposition(s, v.decomposition)}};
            } else if constexpr (std::is_same_v<T, PairChosen>) {
                return {{"kind", "PairChosen"}, {"index", v.index + 1}};
            } else if constexpr (std::is_same_v<T, TransitionChosen>) {
                return {{"kind", "TransitionChosen"},
                        {"side", side_name(v.side)},
                        {"action", s.name(v.action)},
                        {"target", s.format(v.target)}};
            } else {
                return {{"kind", "ResponseChosen"}, {"target", s.format(v.target)}};
            }
        },
        m);
}

std::string move_text(const BpaSystem& s, const Move& m) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TerminalCheckMove>) {
                return "check " + terminal_name(v.result);
            } else if constexpr (std::is_same_v<T, DecompositionOffered>) {
                std::string out = "offer";
                for (const auto& g : v.decomposition.generators) out += " " + s.format(g);
                return out;
            } else if constexpr (std::is_same_v<T, PairChosen>) {
                return "choose " + std::to_string(v.index + 1);
            } else if constexpr (std::is_same_v<T, TransitionChosen>) {
                return "attack " + side_name(v.side) + " " + s.name(v.action) + " " + s.format(v.target);
            } else {
                return "respond " + s.format(v.target);
            }
        },
        m);
}

std::size_t read_choice(std::size_t count) {
    for (;;) {
        std::cout << "> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) throw StrategyInconclusive("input closed");
        try {
            std::size_t k = std::stoul(line);
            if (k < count) return k;
        } catch (const std::exception&) {
        }
        std::cout << "enter a number between 0 and " << count - 1 << "\n";
    }
}

class InteractivePlayer : public ProverStrategy, public RefuterStrategy {
public:
    InteractivePlayer(const AnalyzedSystem& sys, EqLevelOracle& oracle, std::size_t depth)
        : sys_(sys), oracle_(oracle), depth_(depth) {}

    std::optional<Decomposition> offer(const GameConfig& c) override {
        std::vector<Decomposition> ds;
        if (!c.pair.first.is_empty() && !c.pair.second.is_empty()) {
            DecompositionOptions raw;
            raw.require_bisimilar_generators = false;
            for (auto& d : prover_decompositions(oracle_, c.pair, depth_, raw)) {
                if (!(decomposition_footprint(sys_, d) > c.params.free_space)) ds.push_back(std::move(d));
            }
        }
        header(c, "prover");
        std::cout << "  0: let Refuter attack\n";
        for (std::size_t i = 0; i < ds.size(); ++i) {
            std::cout << "  " << i + 1 << ": offer";
            for (const auto& g : ds[i].generators) std::cout << ' ' << sys_.system().format(g);
            std::cout << '\n';
        }
        std::size_t k = read_choice(ds.size() + 1);
        if (k == 0) return std::nullopt;
        return ds[k - 1];
    }

    RegularString respond(const GameConfig& c) override {
        return std::get<ResponseChosen>(pick(c, "prover")).target;
    }
    std::size_t choose(const GameConfig& c) override { return std::get<PairChosen>(pick(c, "refuter")).index; }
    TransitionChosen attack(const GameConfig& c) override { return std::get<TransitionChosen>(pick(c, "refuter")); }

private:
    void header(const GameConfig& c, const char* who) {
        std::cout << "phase " << c.phase << ", pair " << sys_.system().format(c.pair) << ", " << who << " to move\n";
    }
    Move pick(const GameConfig& c, const char* who) {
        auto ms = legal_moves(sys_, c);
        header(c, who);
        for (std::size_t i = 0; i < ms.size(); ++i) std::cout << "  " << i << ": " << move_text(sys_.system(), ms[i]) << '\n';
        return ms[read_choice(ms.size())];
    }
    const AnalyzedSystem& sys_;
    EqLevelOracle& oracle_;
    std::size_t depth_;
};

void emit(const Common& c, const json& j, const std::vector<std::string>& lines) {
    if (c.json_out) {
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& l : lines) std::cout << l << '\n';
    }
}

std::size_t default_depth(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y,
                          std::optional<std::size_t> depth) {
    if (depth) return *depth;
    if (!sys.norms().all_normed()) throw CLI::ValidationError("--depth", "is required for systems with unnormed nonterminals");
    if (!x.is_finite() || !y.is_finite()) throw CLI::ValidationError("--depth", "is required for infinite strings");
    auto b = to_size(eqlevel_bound(sys, x, y));
    if (!b) throw Undecided("eq-level bound too large");
    return *b + 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bisimilarity tools for Basic Process Algebra"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json_out, "Machine-readable output");
    app.add_flag("--complete-dead", common.complete, "Complete dead nonterminals before validating");

    auto* norms_cmd = app.add_subcommand("norms", "Norm of every nonterminal");
    norms_cmd->add_option("grammar", common.grammar)->required();

    auto* const_cmd = app.add_subcommand("constants", "The size constants M, M_rhs, S_rhs, E");
    const_cmd->add_option("grammar", common.grammar)->required();

    std::string prefix, cycle;
    auto* canon_cmd = app.add_subcommand("canon", "Canonical form of prefix (cycle)^w");
    canon_cmd->add_option("--prefix", prefix, "Space separated symbols");
    canon_cmd->add_option("--cycle", cycle, "Space separated symbols");

    std::string x_text, y_text, decomp_file;
    auto* step_cmd = app.add_subcommand("step", "One-step transitions");
    step_cmd->add_option("grammar", common.grammar)->required();
    step_cmd->add_option("string", x_text)->required();

    std::optional<std::size_t> steps;
    auto* path_cmd = app.add_subcommand("path", "Greedy norm-reducing path");
    path_cmd->add_option("grammar", common.grammar)->required();
    path_cmd->add_option("string", x_text)->required();
    path_cmd->add_option("--steps", steps, "Path length (default: the norm)");

    std::optional<std::size_t> depth;
    auto* eq_cmd = app.add_subcommand("eqlevel", "Bounded eq-level");
    eq_cmd->add_option("grammar", common.grammar)->required();
    eq_cmd->add_option("x", x_text)->required();
    eq_cmd->add_option("y", y_text)->required();
    eq_cmd->add_option("--depth", depth);

    auto* dn_cmd = app.add_subcommand("decide-normed", "Decide bisimilarity on a normed system");
    dn_cmd->add_option("grammar", common.grammar)->required();
    dn_cmd->add_option("x", x_text)->required();
    dn_cmd->add_option("y", y_text)->required();

    std::string prover_kind = "complete", refuter_kind = "sound";
    std::size_t max_phases = 50, game_depth = 8;
    std::uint64_t seed = 1;
    std::optional<std::string> pair_space_text, free_space_text;
    auto* game_cmd = app.add_subcommand("game", "Play the Prover-Refuter game");
    game_cmd->add_option("grammar", common.grammar)->required();
    game_cmd->add_option("x", x_text)->required();
    game_cmd->add_option("y", y_text)->required();
    game_cmd->add_option("--prover", prover_kind)->check(CLI::IsMember({"complete", "random", "interactive"}));
    game_cmd->add_option("--refuter", refuter_kind)->check(CLI::IsMember({"sound", "random", "interactive"}));
    game_cmd->add_option("--max-phases", max_phases);
    game_cmd->add_option("--depth", game_depth, "Oracle depth used by the strategies");
    game_cmd->add_option("--seed", seed);
    game_cmd->add_option("--pair-space", pair_space_text);
    game_cmd->add_option("--free-space", free_space_text);

    std::size_t max_configs = 20000;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the game on a bounded configuration graph");
    solve_cmd->add_option("grammar", common.grammar)->required();
    solve_cmd->add_option("x", x_text)->required();
    solve_cmd->add_option("y", y_text)->required();
    solve_cmd->add_option("--pair-space", pair_space_text);
    solve_cmd->add_option("--free-space", free_space_text);
    solve_cmd->add_option("--max-configs", max_configs);
    solve_cmd->add_option("--depth", game_depth, "Oracle depth used when instantiating templates");

    auto* cd_cmd = app.add_subcommand("check-decomp", "Check a decomposition block against a pair");
    cd_cmd->add_option("grammar", common.grammar)->required();
    cd_cmd->add_option("x", x_text)->required();
    cd_cmd->add_option("y", y_text)->required();
    cd_cmd->add_option("decomposition", decomp_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Usage;
    }

    try {
        if (norms_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            json j{{"command", "norms"}, {"norms", json::array()}};
            std::vector<std::string> lines;
            for (std::size_t i = 0; i < sys.system().nonterminal_count(); ++i) {
                const Nt n{static_cast<std::uint32_t>(i)};
                const std::string v = sys.norms()[n].to_string();
                j["norms"].push_back({{"nonterminal", sys.system().name(n)}, {"norm", v}});
                lines.push_back(sys.system().name(n) + " " + v);
            }
            emit(common, j, lines);
        } else if (const_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const auto& c = sys.constants();
            json j{{"command", "constants"},
                   {"M", big(c.max_norm)},
                   {"M_rhs", big(c.max_rhs_norm)},
                   {"S_rhs", big(c.max_rhs_size)},
                   {"E", big(c.cycle_bound)}};
            emit(common, j,
                 {"M " + big(c.max_norm), "M_rhs " + big(c.max_rhs_norm), "S_rhs " + big(c.max_rhs_size),
                  "E " + big(c.cycle_bound)});
        } else if (canon_cmd->parsed()) {
            std::vector<std::string> names;
            std::map<std::string, Nt, std::less<>> ids;
            SymbolResolver resolve = [&](std::string_view s) -> std::optional<Nt> {
                if (!is_identifier(s)) return std::nullopt;
                auto it = ids.find(s);
                if (it != ids.end()) return it->second;
                Nt n{static_cast<std::uint32_t>(names.size())};
                names.emplace_back(s);
                ids.emplace(std::string(s), n);
                return n;
            };
            auto word = [&](const std::string& t) {
                if (t.find_first_not_of(" \t") == std::string::npos) return Word{};
                return parse_word(t, resolve);
            };
            Word p = word(prefix);
            Word cy = word(cycle);
            RegularString r = canonicalize(p, cy);
            auto name = [&](Nt n) { return names.at(index(n)); };
            const std::string lit = format_regular_string(r, name);
            json j{{"command", "canon"},
                   {"prefix", format_word(r.prefix(), name)},
                   {"cycle", format_word(r.cycle(), name)},
                   {"literal", lit}};
            emit(common, j, {lit});
        } else if (step_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            RegularString x = truncate_unnormed(s.parse_string(x_text), sys.norms());
            json j{{"command", "step"}, {"state", s.format(x)}, {"transitions", json::array()}};
            std::vector<std::string> lines;
            for (const auto& t : transitions(sys, x)) {
                j["transitions"].push_back({{"action", s.name(t.action)}, {"target", s.format(t.target)}, {"rule", t.rule + 1}});
                lines.push_back(s.name(t.action) + " -> " + s.format(t.target));
            }
            lines.push_back(std::to_string(j["transitions"].size()) + " transitions");
            emit(common, j, lines);
        } else if (path_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            RegularString x = truncate_unnormed(s.parse_string(x_text), sys.norms());
            ExtNat n = norm_of(x, sys.norms());
            if (n.is_omega()) throw ContractViolation("the string is unnormed");
            std::size_t k = steps ? *steps : n.to_size().value_or(0);
            PathWitness w = norm_reducing_path(sys, x, k);
            json j{{"command", "path"}, {"actions", json::array()}, {"states", json::array()}};
            std::string acts;
            for (Act a : w.actions) {
                j["actions"].push_back(s.name(a));
                acts += (acts.empty() ? "" : " ") + s.name(a);
            }
            std::vector<std::string> lines;
            for (const auto& st : w.states) {
                j["states"].push_back(s.format(st));
                lines.push_back(s.format(st));
            }
            lines.push_back("actions: " + (acts.empty() ? std::string("eps") : acts));
            emit(common, j, lines);
        } else if (eq_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            RegularString x = truncate_unnormed(s.parse_string(x_text), sys.norms());
            RegularString y = truncate_unnormed(s.parse_string(y_text), sys.norms());
            const std::size_t d = default_depth(sys, x, y, depth);
            EqLevelResult r = eqlevel_bounded(sys, x, y, d);
            json j{{"command", "eqlevel"},
                   {"kind", r.is_exact() ? "Exact" : "AtLeast"},
                   {"level", r.level()},
                   {"depth", d}};
            emit(common, j, {r.to_string()});
        } else if (dn_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            RegularString x = s.parse_string(x_text);
            RegularString y = s.parse_string(y_text);
            NormedVerdict v = decide_normed(sys, x, y);
            json j{{"command", "decide-normed"}, {"bound", big(v.bound)}};
            std::string line;
            switch (v.kind) {
                case NormedVerdict::Kind::Bisimilar:
                    j["verdict"] = "Bisimilar";
                    line = "Bisimilar";
                    break;
                case NormedVerdict::Kind::NotBisimilar:
                    j["verdict"] = "NotBisimilar";
                    j["level"] = v.level;
                    line = "NotBisimilar " + std::to_string(v.level);
                    break;
                case NormedVerdict::Kind::Inconclusive:
                    j["verdict"] = "Inconclusive";
                    j["reason"] = v.reason;
                    line = "Inconclusive: " + v.reason;
                    break;
            }
            emit(common, j, {line});
            if (v.kind == NormedVerdict::Kind::Inconclusive) return Inconclusive;
        } else if (game_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            StringPair start{truncate_unnormed(s.parse_string(x_text), sys.norms()),
                             truncate_unnormed(s.parse_string(y_text), sys.norms())};
            GameParams params = default_params(sys);
            if (pair_space_text) params.pair_space = BigNat(*pair_space_text);
            if (free_space_text) params.free_space = BigNat(*free_space_text);
            EqLevelOracle oracle(sys);
            CompleteProver complete(oracle, game_depth);
            RandomProver rprover(oracle, seed);
            SoundRefuter sound(oracle, game_depth);
            RandomRefuter rrefuter(sys, seed);
            InteractivePlayer human(sys, oracle, game_depth);
            ProverStrategy& p = prover_kind == "complete" ? static_cast<ProverStrategy&>(complete)
                                : prover_kind == "random" ? static_cast<ProverStrategy&>(rprover)
                                                          : static_cast<ProverStrategy&>(human);
            RefuterStrategy& r = refuter_kind == "sound" ? static_cast<RefuterStrategy&>(sound)
                                 : refuter_kind == "random" ? static_cast<RefuterStrategy&>(rrefuter)
                                                            : static_cast<RefuterStrategy&>(human);
            GameTranscript t = run_game(sys, start, p, r, max_phases, params);
            if (common.json_out) {
                json moves = json::array();
                for (const auto& e : t.entries) {
                    moves.push_back({{"phase", e.phase},
                                     {"mover", e.mover},
                                     {"move", move_json(s, e.move)},
                                     {"pair_before", pair_json(s, e.pair_before)},
                                     {"pair_after", pair_json(s, e.pair_after)}});
                }
                json j{{"command", "game"},
                       {"start", pair_json(s, t.start)},
                       {"pair_space", big(t.params.pair_space)},
                       {"free_space", big(t.params.free_space)},
                       {"moves", moves},
                       {"phases", t.phases},
                       {"note", t.note},
                       {"verdict", verdict_name(t.verdict)}};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << serialize_transcript(s, t);
            }
            if (t.verdict == Verdict::Inconclusive) return Inconclusive;
        } else if (solve_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            StringPair start{truncate_unnormed(s.parse_string(x_text), sys.norms()),
                             truncate_unnormed(s.parse_string(y_text), sys.norms())};
            GameParams params = default_params(sys);
            if (pair_space_text) params.pair_space = BigNat(*pair_space_text);
            SolveOptions opts;
            opts.oracle_depth = game_depth;
            if (free_space_text) opts.free_space = BigNat(*free_space_text);
            SolveResult r = solve_game(sys, start, params.pair_space, max_configs, opts);
            json j{{"command", "solve"},
                   {"verdict", solve_verdict_name(r.verdict)},
                   {"configurations", r.configurations},
                   {"pair_space", big(params.pair_space)}};
            emit(common, j, {std::to_string(r.configurations) + " configurations", solve_verdict_name(r.verdict)});
            if (r.verdict == SolveVerdict::BudgetExceeded) return Inconclusive;
        } else if (cd_cmd->parsed()) {
            AnalyzedSystem sys = load(common);
            const BpaSystem& s = sys.system();
            StringPair target{truncate_unnormed(s.parse_string(x_text), sys.norms()),
                              truncate_unnormed(s.parse_string(y_text), sys.norms())};
            Decomposition d = parse_decomposition(s, read_file(decomp_file));
            std::string reason;
            bool ok = check_decomposition(sys, target, d);
            if (!ok) {
                ProofCheck pc = verify_congruence_proof({d.proof.steps, target}, d.generators, &sys.norms());
                if (!pc) {
                    reason = pc.failed_step ? "step " + std::to_string(*pc.failed_step + 1) + ": " + pc.reason : pc.reason;
                } else {
                    reason = "a generator is not smaller than the target, or the decomposition has no 1 to 3 pairs";
                }
            }
            json j{{"command", "check-decomp"}, {"valid", ok}, {"reason", reason}};
            emit(common, j, {ok ? std::string("valid") : "invalid: " + reason});
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return Usage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid grammar: " << e.what() << '\n';
        return Usage;
    } catch (const IllegalMove& e) {
        std::cerr << "illegal move: " << e.what() << '\n';
        return Usage;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const MemoCapExceeded& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return Inconclusive;
    } catch (const Undecided& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return Inconclusive;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return Internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    }
    return Ok;
}
