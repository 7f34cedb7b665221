#include "bpa/decomposition.hpp"

#include "bpa/errors.hpp"
#include "bpa/lts.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bpa {

namespace {

struct Replay {
    std::vector<StringPair> derived;
    ProofCheck check;
};

Replay replay(const CongruenceProof& proof, std::span<const StringPair> generators, const NormTable* norms) {
    Replay out;
    auto& derived = out.derived;
    derived.reserve(proof.steps.size());
    auto fail = [&](std::size_t i, std::string why) {
        out.check = ProofCheck{false, i, std::move(why)};
        return out;
    };
    auto cat = [&](const RegularString& x, const RegularString& y) {
        return norms ? concat_truncated(x, y, *norms) : concat(x, y);
    };
    for (std::size_t i = 0; i < proof.steps.size(); ++i) {
        const ProofStep& s = proof.steps[i];
        switch (s.kind) {
            case ProofStep::Kind::Generator:
                if (s.first >= generators.size()) return fail(i, "generator index out of range");
                derived.push_back(generators[s.first]);
                break;
            case ProofStep::Kind::Reflexivity:
                derived.emplace_back(s.str, s.str);
                break;
            case ProofStep::Kind::Symmetry:
                if (s.first >= i) return fail(i, "symmetry refers to a later step");
                derived.emplace_back(derived[s.first].second, derived[s.first].first);
                break;
            case ProofStep::Kind::Transitivity:
                if (s.first >= i || s.second >= i) return fail(i, "transitivity refers to a later step");
                if (derived[s.first].second != derived[s.second].first) {
                    return fail(i, "transitivity chain does not meet in the middle");
                }
                derived.emplace_back(derived[s.first].first, derived[s.second].second);
                break;
            case ProofStep::Kind::Concatenation:
                if (s.first >= i || s.second >= i) return fail(i, "concatenation refers to a later step");
                derived.emplace_back(cat(derived[s.first].first, derived[s.second].first),
                                     cat(derived[s.first].second, derived[s.second].second));
                break;
        }
    }
    if (derived.empty()) out.check = ProofCheck{false, std::nullopt, "empty proof"};
    return out;
}

}  // namespace

ProofCheck verify_congruence_proof(const CongruenceProof& proof, std::span<const StringPair> generators,
                                   const NormTable* norms) {
    Replay r = replay(proof, generators, norms);
    if (!r.check) return r.check;
    if (r.derived.back() != proof.conclusion) {
        return ProofCheck{false, proof.steps.size() - 1, "last step does not derive the conclusion"};
    }
    return {};
}

bool check_decomposition(const AnalyzedSystem& sys, const StringPair& target, const Decomposition& d) {
    if (d.generators.empty() || d.generators.size() > 3) return false;
    if (d.proof.conclusion != target) return false;
    const NormTable& norms = sys.norms();
    if (!is_truncated(target.first, norms) || !is_truncated(target.second, norms)) return false;
    const BigNat target_size = size_of_pair(target, norms);
    for (const auto& g : d.generators) {
        if (!is_truncated(g.first, norms) || !is_truncated(g.second, norms)) return false;
        if (!(size_of_pair(g, norms) < target_size)) return false;
    }
    return static_cast<bool>(verify_congruence_proof(d.proof, d.generators, &norms));
}

BigNat decomposition_footprint(const AnalyzedSystem& sys, const Decomposition& d) {
    BigNat total = 0;
    for (const auto& g : d.generators) total += size_of_pair(g, sys.norms());
    for (const auto& s : d.proof.steps) {
        if (s.kind == ProofStep::Kind::Reflexivity) total += size_of(s.str, sys.norms());
    }
    return total;
}

std::string serialize_decomposition(const BpaSystem& system, const Decomposition& d) {
    std::ostringstream os;
    for (const auto& g : d.generators) os << "pair " << system.format(g.first) << " | " << system.format(g.second) << '\n';
    for (const auto& s : d.proof.steps) {
        switch (s.kind) {
            case ProofStep::Kind::Generator: os << "gen " << s.first + 1; break;
            case ProofStep::Kind::Reflexivity: os << "refl " << system.format(s.str); break;
            case ProofStep::Kind::Symmetry: os << "sym " << s.first + 1; break;
            case ProofStep::Kind::Transitivity: os << "trans " << s.first + 1 << ' ' << s.second + 1; break;
            case ProofStep::Kind::Concatenation: os << "concat " << s.first + 1 << ' ' << s.second + 1; break;
        }
        os << '\n';
    }
    os << "end\n";
    return os.str();
}

namespace {

std::size_t parse_index(const std::string& tok, std::size_t line) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
        throw ParseError("expected a positive step index, got '" + tok + "'", line, 1);
    }
    std::size_t v = std::stoul(tok);
    if (v == 0) throw ParseError("step indices are 1-based", line, 1);
    return v - 1;
}

}  // namespace

Decomposition parse_decomposition(const BpaSystem& system, std::string_view text) {
    Decomposition d;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool ended = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto c = line.find('#'); c != std::string::npos) line.resize(c);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (ended) throw ParseError("input after 'end'", line_no, 1);
        std::string rest;
        std::getline(ls, rest);
        auto parse_str = [&](const std::string& s) {
            try {
                return system.parse_string(s);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_no, e.column());
            }
        };
        if (kw == "pair") {
            auto bar = rest.find('|');
            if (bar == std::string::npos) throw ParseError("expected 'pair <left> | <right>'", line_no, 1);
            d.generators.emplace_back(parse_str(rest.substr(0, bar)), parse_str(rest.substr(bar + 1)));
        } else if (kw == "gen" || kw == "sym") {
            std::istringstream rs(rest);
            std::string a;
            rs >> a;
            auto i = parse_index(a, line_no);
            d.proof.steps.push_back(kw == "gen" ? ProofStep::generator(i) : ProofStep::symmetry(i));
        } else if (kw == "trans" || kw == "concat") {
            std::istringstream rs(rest);
            std::string a, b;
            rs >> a >> b;
            auto i = parse_index(a, line_no);
            auto j = parse_index(b, line_no);
            d.proof.steps.push_back(kw == "trans" ? ProofStep::transitivity(i, j) : ProofStep::concatenation(i, j));
        } else if (kw == "refl") {
            d.proof.steps.push_back(ProofStep::reflexivity(parse_str(rest)));
        } else if (kw == "end") {
            ended = true;
        } else {
            throw ParseError("unknown proof keyword '" + kw + "'", line_no, 1);
        }
    }
    NormTable norms = compute_norms(system);
    Replay r = replay(d.proof, d.generators, &norms);
    if (r.check) d.proof.conclusion = r.derived.back();
    return d;
}

namespace {

bool better(const EqLevelResult& a, const EqLevelResult& b) {
    if (a.level() != b.level()) return a.level() > b.level();
    return !a.is_exact() && b.is_exact();
}

bool equivalent(EqLevelOracle& oracle, const RegularString& x, const RegularString& y, std::size_t depth) {
    return oracle.approximates(x, y, depth);
}

BigNat factor(const AnalyzedSystem& sys) { return BigNat(1) + sys.constants().max_rhs_size; }

}  // namespace

RegularString extract_delta_simple(EqLevelOracle& oracle, const RegularString& sigma, const RegularString& sigma2,
                                   const RegularString& beta, std::size_t oracle_depth) {
    const AnalyzedSystem& sys = oracle.system();
    const NormTable& norms = sys.norms();
    const ExtNat n1 = norm_of(sigma, norms);
    if (!(n1 < norm_of(sigma2, norms))) throw ContractViolation("extract_delta_simple needs ||sigma|| < ||sigma2||");
    auto steps = n1.to_size();
    if (!steps) throw ContractViolation("extract_delta_simple: norm too large");
    PathWitness v = norm_reducing_path(sys, sigma, *steps);
    std::optional<RegularString> best;
    std::optional<EqLevelResult> best_level;
    for (const auto& delta : states_along(sys, sigma2, v.actions)) {
        if (delta.is_empty()) continue;
        EqLevelResult r = oracle.eqlevel(beta, concat_truncated(delta, beta, norms), oracle_depth);
        if (!best_level || better(r, *best_level)) {
            best = delta;
            best_level = r;
        }
    }
    if (!best) throw ContractViolation("extract_delta_simple: sigma2 has no nonempty residue along the erasure of sigma");
    if (size_of(*best, norms) > size_of_pair(sigma, sigma2, norms) * factor(sys)) {
        throw InternalError("extract_delta_simple: residue exceeds size(sigma, sigma2)(1 + S_rhs)");
    }
    return *best;
}

HeadSplit split_heads(const AnalyzedSystem& sys, const RegularString& rho, const RegularString& rho2) {
    if (rho.is_empty() || rho2.is_empty()) throw ContractViolation("split_heads: empty string");
    const NormTable& norms = sys.norms();
    Nt h1 = rho.head();
    Nt h2 = rho2.head();
    if (!norms.is_normed(h1) || !norms.is_normed(h2)) throw ContractViolation("split_heads: unnormed head");
    bool swapped = norms[h1] > norms[h2];
    const RegularString& r1 = swapped ? rho2 : rho;
    const RegularString& r2 = swapped ? rho : rho2;
    HeadSplit out{r1.head(), r1.tail(), r2.head(), r2.tail(), swapped, {}, {}};
    out.path = sys.fixed_pair_path(out.a1, out.a2);
    out.gamma = RegularString::finite(out.path.residue);
    return out;
}

YieldDeltaResult yield_delta(EqLevelOracle& oracle, const RegularString& alpha1, const RegularString& alpha2,
                             const RegularString& beta, std::size_t oracle_depth) {
    const AnalyzedSystem& sys = oracle.system();
    const NormTable& norms = sys.norms();
    const std::size_t d = oracle_depth;
    YieldDeltaResult out;
    auto inconclusive = [&](std::string why) {
        out.delta.reset();
        out.inconclusive = std::move(why);
        return out;
    };
    auto cat = [&](const RegularString& x, const RegularString& y) { return concat_truncated(x, y, norms); };

    if (!oracle.eqlevel(alpha1, alpha2, d).is_exact()) {
        return inconclusive("alpha1 and alpha2 are not told apart at this depth");
    }
    if (!equivalent(oracle, cat(alpha1, beta), cat(alpha2, beta), d)) {
        return inconclusive("alpha1·beta and alpha2·beta are not equivalent at this depth");
    }
    const BigNat bound = (size_of_pair(alpha1, alpha2, norms) +
                          BigNat(sys.system().nonterminal_count() * sys.system().nonterminal_count()) *
                              sys.constants().max_rhs_norm +
                          sys.constants().max_rhs_size) *
                         factor(sys);
    auto finish = [&](const RegularString& x, const RegularString& y) {
        const bool flip = norm_of(y, norms) < norm_of(x, norms);
        const RegularString& s1 = flip ? y : x;
        const RegularString& s2 = flip ? x : y;
        out.trace.push_back("simple");
        out.delta = extract_delta_simple(oracle, s1, s2, beta, d);
        if (size_of(*out.delta, norms) > bound) throw InternalError("yield_delta: delta exceeds its size bound");
        return out;
    };

    const ExtNat n1 = norm_of(alpha1, norms);
    const ExtNat n2 = norm_of(alpha2, norms);
    if (n1 != n2) return finish(alpha1, alpha2);
    if (n1.is_omega()) return inconclusive("both strings are unnormed");

    const std::size_t nn = sys.system().nonterminal_count();
    const std::size_t case1_budget = nn * nn;
    std::size_t case1_used = 0;
    RegularString rho = alpha1, rho2 = alpha2, mu;
    for (std::size_t iter = 0; iter < 4 * case1_budget + 8; ++iter) {
        const EqLevelResult head_level = oracle.eqlevel(rho, rho2, d);
        if (!head_level.is_exact()) return inconclusive("intermediate pair is not told apart at this depth");
        const HeadSplit h = split_heads(sys, rho, rho2);
        const RegularString a1 = RegularString::finite({h.a1});
        const RegularString a2 = RegularString::finite({h.a2});
        const RegularString x1 = h.swapped ? rho2 : rho;  // A1 delta1
        const RegularString x2 = h.swapped ? rho : rho2;  // A2 delta2
        const RegularString mb = cat(mu, beta);
        const RegularString a1g = cat(a1, h.gamma);

        if (h.rest1 == h.gamma && h.rest2.is_empty()) {
            if (++case1_used > case1_budget) return inconclusive("case (1) budget exhausted");
            const std::size_t k = oracle.eqlevel(a1g, a2, d).level();
            const auto left = transitions(sys, a1g);
            const auto right = transitions(sys, a2);
            std::optional<StringPair> next;
            for (int side = 0; side < 2 && !next; ++side) {
                const auto& attack = side == 0 ? left : right;
                const auto& reply = side == 0 ? right : left;
                for (const auto& t : attack) {
                    bool drops = true;
                    bool any = false;
                    for (const auto& r : reply) {
                        if (r.action != t.action) continue;
                        any = true;
                        const auto& s1 = side == 0 ? t.target : r.target;
                        const auto& s2 = side == 0 ? r.target : t.target;
                        EqLevelResult e = oracle.eqlevel(s1, s2, d);
                        if (!e.is_exact() || e.level() >= k) {
                            drops = false;
                            break;
                        }
                    }
                    if (!drops && any) continue;
                    std::optional<EqLevelResult> best;
                    for (const auto& r : reply) {
                        if (r.action != t.action) continue;
                        const auto& s1 = side == 0 ? t.target : r.target;
                        const auto& s2 = side == 0 ? r.target : t.target;
                        EqLevelResult e = oracle.eqlevel(cat(s1, mb), cat(s2, mb), d);
                        if (e.level() >= d && (!best || better(e, *best))) {
                            best = e;
                            next = StringPair{s1, s2};
                        }
                    }
                    if (next) break;
                }
            }
            if (!next) return inconclusive("case (1): no matching rule pair at this depth");
            rho = next->first;
            rho2 = next->second;
            if (norm_of(rho, norms) != norm_of(rho2, norms)) {
                out.trace.push_back("1a");
                return finish(cat(rho, mu), cat(rho2, mu));
            }
            out.trace.push_back("1b");
            continue;
        }

        const EqLevelResult gamma_level = oracle.eqlevel(a1g, a2, d);
        const bool level_ok = !better(gamma_level, head_level);
        const RegularString d2mb = cat(h.rest2, mb);
        if (level_ok && equivalent(oracle, cat(a1g, d2mb), cat(a2, d2mb), d)) {
            out.trace.push_back("2");
            rho = a1g;
            rho2 = a2;
            mu = cat(h.rest2, mu);
            continue;
        }

        if (!equivalent(oracle, cat(h.rest1, mb), cat(cat(h.gamma, h.rest2), mb), d)) {
            // follow the fixed path of A2 with matching moves of A1 delta1 until the norms split
            std::vector<RegularString> frontier{x1};
            Word path_state{h.a2};
            std::optional<StringPair> found;
            const auto& rules = sys.system().rules();
            for (std::size_t j = 0; j < h.path.actions.size() && !found && !frontier.empty(); ++j) {
                const Act a = h.path.actions[j];
                // advance the fixed path by its own reducing rule
                const Nt head = path_state.front();
                const Rule* step = nullptr;
                for (std::size_t r : sys.system().rules_of(head)) {
                    const Rule& rule = rules[r];
                    ExtNat b = norms.of(rule.body);
                    if (rule.action == a && b.is_finite() && b + ExtNat(1) == norms[head]) {
                        step = &rule;
                        break;
                    }
                }
                if (!step) throw InternalError("fixed path is not norm-reducing");
                Word np = step->body;
                np.insert(np.end(), path_state.begin() + 1, path_state.end());
                path_state = std::move(np);
                const RegularString tau2 = cat(RegularString::finite(path_state), h.rest2);
                const ExtNat tn2 = norm_of(tau2, norms);
                std::vector<RegularString> next;
                std::set<RegularString> seen;
                for (const auto& s : frontier) {
                    for (const auto& t : transitions(sys, s)) {
                        if (t.action != a || !seen.insert(t.target).second) continue;
                        if (!equivalent(oracle, cat(t.target, mb), cat(tau2, mb), d)) continue;
                        const ExtNat tn1 = norm_of(t.target, norms);
                        if (tn1 > tn2) {
                            found = StringPair{t.target, tau2};
                            break;
                        }
                        if (tn1 == tn2) next.push_back(t.target);
                    }
                    if (found) break;
                }
                frontier = std::move(next);
            }
            if (!found) return inconclusive("case (3a): no norm split found along the fixed path");
            out.trace.push_back("3a");
            return finish(cat(found->first, mu), cat(found->second, mu));
        }

        out.trace.push_back("3b");
        rho = h.rest1;
        rho2 = cat(h.gamma, h.rest2);
    }
    return inconclusive("iteration guard reached");
}

namespace {

struct Builder {
    EqLevelOracle& oracle;
    const AnalyzedSystem& sys;
    const StringPair& target;
    std::size_t depth;
    const DecompositionOptions& options;
    bool swapped;
    std::vector<Decomposition> out;

    RegularString cat(const RegularString& x, const RegularString& y) const {
        return concat_truncated(x, y, sys.norms());
    }

    bool cycles_bounded(const RegularString& x) const {
        return !(sys.norms().of(x.cycle()) > ExtNat(sys.constants().cycle_bound));
    }

    void offer(std::vector<StringPair> gens, std::vector<ProofStep> steps, const char* origin) {
        if (swapped) steps.push_back(ProofStep::symmetry(steps.size() - 1));
        Decomposition d{std::move(gens), {std::move(steps), target}, origin};
        for (const auto& g : d.generators) {
            if (!cycles_bounded(g.first) || !cycles_bounded(g.second)) return;
        }
        if (!check_decomposition(sys, target, d)) return;
        if (options.require_bisimilar_generators) {
            for (const auto& g : d.generators) {
                if (!oracle.approximates(g.first, g.second, depth)) return;
            }
        }
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    }
};

void push_unique(std::vector<RegularString>& v, const RegularString& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

std::vector<Decomposition> prover_decompositions(EqLevelOracle& oracle, const StringPair& pair, std::size_t oracle_depth,
                                                 const DecompositionOptions& options) {
    const AnalyzedSystem& sys = oracle.system();
    const NormTable& norms = sys.norms();
    if (pair.first.is_empty() || pair.second.is_empty()) {
        throw ContractViolation("prover_decompositions needs two nonempty strings");
    }
    const bool swapped = norms[pair.first.head()] > norms[pair.second.head()];
    const RegularString& left = swapped ? pair.second : pair.first;
    const RegularString& right = swapped ? pair.first : pair.second;
    Builder b{oracle, sys, pair, oracle_depth, options, swapped, {}};
    using PS = ProofStep;

    const RegularString A = RegularString::finite({left.head()});
    const RegularString alpha = left.tail();
    const RegularString B = RegularString::finite({right.head()});
    const RegularString beta = right.tail();
    if (!norms.is_normed(left.head())) return {};

    const auto paths_a = all_erasing_paths(sys, A, options.path_limit);

    if (!norms.is_normed(right.head())) {
        std::vector<RegularString> gammas;
        for (const auto& u : paths_a) {
            for (const auto& g : states_along(sys, B, u.actions)) push_unique(gammas, g);
        }
        for (const auto& g : gammas) {
            b.offer({{alpha, g}, {b.cat(A, g), B}},
                    {PS::generator(0), PS::reflexivity(A), PS::concatenation(1, 0), PS::generator(1),
                     PS::transitivity(2, 3)},
                    "1");
        }
        return std::move(b.out);
    }

    const auto paths_b = all_erasing_paths(sys, B, options.path_limit);
    std::vector<RegularString> gammas_u;
    for (const auto& u : paths_a) {
        for (const auto& g : states_along(sys, B, u.actions)) push_unique(gammas_u, g);
    }
    std::vector<RegularString> deltas;
    for (const auto& v : paths_b) {
        for (const auto& dl : states_along(sys, A, v.actions)) {
            if (!dl.is_empty()) push_unique(deltas, dl);
        }
    }
    for (const auto& dl : deltas) {
        for (const auto& g : gammas_u) {
            const RegularString P = truncate_unnormed(power_omega(concat(g, dl)), norms);
            const RegularString Q = truncate_unnormed(power_omega(concat(dl, g)), norms);
            b.offer({{alpha, P}, {beta, Q}, {b.cat(A, P), b.cat(B, Q)}},
                    {PS::generator(0), PS::reflexivity(A), PS::concatenation(1, 0), PS::generator(2),
                     PS::transitivity(2, 3), PS::generator(1), PS::symmetry(5), PS::reflexivity(B),
                     PS::concatenation(7, 6), PS::transitivity(4, 8)},
                    "2a");
        }
    }

    std::vector<RegularString> gammas;
    for (const auto& v : paths_b) {
        for (std::size_t i = 1; i < v.states.size(); ++i) {
            std::vector<Act> prefix(v.actions.begin(), v.actions.begin() + static_cast<std::ptrdiff_t>(i));
            const auto reach = states_along(sys, A, prefix);
            if (std::find(reach.begin(), reach.end(), RegularString{}) != reach.end()) push_unique(gammas, v.states[i]);
        }
    }
    for (const auto& g : gammas_u) push_unique(gammas, g);

    for (const auto& g : gammas) {
        b.offer({{b.cat(A, g), B}, {alpha, b.cat(g, beta)}},
                {PS::generator(0), PS::generator(1), PS::reflexivity(beta), PS::concatenation(0, 2), PS::reflexivity(A),
                 PS::concatenation(4, 1), PS::transitivity(5, 3)},
                "2b-i");
    }
    for (const auto& g : gammas) {
        const RegularString ag = b.cat(A, g);
        if (!oracle.eqlevel(ag, B, oracle_depth).is_exact()) continue;
        YieldDeltaResult y = yield_delta(oracle, ag, B, beta, oracle_depth);
        if (!y.delta) continue;
        const RegularString D = truncate_unnormed(power_omega(*y.delta), norms);
        b.offer({{alpha, b.cat(g, beta)}, {beta, D}, {b.cat(ag, D), b.cat(B, D)}},
                {PS::generator(0), PS::reflexivity(A), PS::concatenation(1, 0), PS::generator(1), PS::reflexivity(ag),
                 PS::concatenation(4, 3), PS::transitivity(2, 5), PS::generator(2), PS::transitivity(6, 7),
                 PS::symmetry(3), PS::reflexivity(B), PS::concatenation(10, 9), PS::transitivity(8, 11)},
                "2b-ii");
    }
    return std::move(b.out);
}

}  // namespace bpa
