#include "bpa/errors.hpp"
#include "bpa/game.hpp"

#include <sstream>

namespace bpa {

std::string serialize_transcript(const BpaSystem& system, const GameTranscript& t) {
    std::ostringstream os;
    os << "start " << system.format(t.start.first) << " | " << system.format(t.start.second) << '\n';
    os << "pair_space " << t.params.pair_space << '\n';
    os << "free_space " << t.params.free_space << '\n';
    for (const auto& e : t.entries) {
        os << "phase " << e.phase << ' ' << e.mover << ' ';
        std::visit(
            [&](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, TerminalCheckMove>) {
                    os << "check " << terminal_name(m.result) << '\n';
                } else if constexpr (std::is_same_v<T, DecompositionOffered>) {
                    os << "offer\n" << serialize_decomposition(system, m.decomposition);
                } else if constexpr (std::is_same_v<T, PairChosen>) {
                    os << "choose " << m.index + 1 << '\n';
                } else if constexpr (std::is_same_v<T, TransitionChosen>) {
                    os << "attack " << side_name(m.side) << ' ' << system.name(m.action) << ' '
                       << system.format(m.target) << '\n';
                } else {
                    os << "respond " << system.format(m.target) << '\n';
                }
            },
            e.move);
    }
    if (!t.note.empty()) os << "note " << t.note << '\n';
    os << "verdict " << verdict_name(t.verdict) << '\n';
    return os.str();
}

namespace {

BigNat parse_nat(const std::string& s, std::size_t line) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("expected a natural number, got '" + s + "'", line, 1);
    }
    return BigNat(s);
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

GameTranscript parse_transcript(const AnalyzedSystem& sys, std::string_view text) {
    const BpaSystem& system = sys.system();
    std::vector<std::string> lines;
    {
        std::istringstream in{std::string(text)};
        std::string l;
        while (std::getline(in, l)) lines.push_back(l);
    }
    GameTranscript t;
    bool have_start = false, have_verdict = false;
    std::vector<std::pair<std::size_t, std::pair<std::string, Move>>> moves;
    auto str = [&](const std::string& s, std::size_t line) {
        try {
            return system.parse_string(s);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line, e.column());
        }
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t ln = i + 1;
        std::string line = trim(lines[i]);
        if (line.empty()) continue;
        if (have_verdict) throw ParseError("input after the verdict line", ln, 1);
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        std::string rest;
        std::getline(ls, rest);
        rest = trim(rest);
        if (kw == "start") {
            auto bar = rest.find('|');
            if (bar == std::string::npos) throw ParseError("expected 'start <left> | <right>'", ln, 1);
            t.start = {str(rest.substr(0, bar), ln), str(rest.substr(bar + 1), ln)};
            have_start = true;
        } else if (kw == "pair_space") {
            t.params.pair_space = parse_nat(rest, ln);
        } else if (kw == "free_space") {
            t.params.free_space = parse_nat(rest, ln);
        } else if (kw == "note") {
            t.note = rest;
        } else if (kw == "verdict") {
            if (rest == "ProverWins") t.verdict = Verdict::ProverWins;
            else if (rest == "RefuterWins") t.verdict = Verdict::RefuterWins;
            else if (rest == "Ongoing") t.verdict = Verdict::Ongoing;
            else if (rest == "Inconclusive") t.verdict = Verdict::Inconclusive;
            else throw ParseError("unknown verdict '" + rest + "'", ln, 1);
            have_verdict = true;
        } else if (kw == "phase") {
            std::istringstream rs(rest);
            std::string ph, mover, what;
            rs >> ph >> mover >> what;
            std::size_t phase = to_size(parse_nat(ph, ln)).value_or(0);
            std::string arg;
            std::getline(rs, arg);
            arg = trim(arg);
            Move m;
            if (what == "check") {
                if (arg == "Continue") m = TerminalCheckMove{TerminalResult::Continue};
                else if (arg == "ProverWins") m = TerminalCheckMove{TerminalResult::ProverWins};
                else if (arg == "RefuterWins") m = TerminalCheckMove{TerminalResult::RefuterWins};
                else throw ParseError("unknown check result '" + arg + "'", ln, 1);
            } else if (what == "offer") {
                std::string block;
                std::size_t j = i + 1;
                for (; j < lines.size(); ++j) {
                    block += lines[j] + '\n';
                    if (trim(lines[j]) == "end") break;
                }
                if (j == lines.size()) throw ParseError("decomposition block without 'end'", ln, 1);
                Decomposition d;
                try {
                    d = parse_decomposition(system, block);
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), ln + e.line(), e.column());
                }
                m = DecompositionOffered{std::move(d)};
                i = j;
            } else if (what == "choose") {
                auto k = to_size(parse_nat(arg, ln)).value_or(0);
                if (k == 0) throw ParseError("pair choices are 1-based", ln, 1);
                m = PairChosen{k - 1};
            } else if (what == "attack") {
                std::istringstream as(arg);
                std::string side, action;
                as >> side >> action;
                std::string target;
                std::getline(as, target);
                Side s;
                if (side == "left") s = Side::Left;
                else if (side == "right") s = Side::Right;
                else throw ParseError("expected 'left' or 'right'", ln, 1);
                auto a = system.find_action(action);
                if (!a) throw ParseError("unknown action '" + action + "'", ln, 1);
                m = TransitionChosen{s, *a, str(trim(target), ln)};
            } else if (what == "respond") {
                m = ResponseChosen{str(arg, ln)};
            } else {
                throw ParseError("unknown move '" + what + "'", ln, 1);
            }
            moves.push_back({phase, {mover, std::move(m)}});
        } else {
            throw ParseError("unknown transcript keyword '" + kw + "'", ln, 1);
        }
    }
    if (!have_start) throw ParseError("missing 'start' line", 1, 1);
    if (!have_verdict) throw ParseError("missing 'verdict' line", lines.size(), 1);
    GameConfig c = initial_config(t.start, t.params);
    for (auto& [phase, mm] : moves) {
        if (phase != c.phase) throw IllegalMove("move recorded under the wrong phase", c.phase);
        GameConfig next = apply_move(sys, c, mm.second);
        if (std::holds_alternative<TerminalCheckMove>(mm.second)) t.phases = c.phase;
        t.entries.push_back({phase, mm.first, std::move(mm.second), c.pair, next.pair});
        c = std::move(next);
    }
    return t;
}

}  // namespace bpa
