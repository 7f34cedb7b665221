#include "bpa/decomposition.hpp"
#include "bpa/equivalence.hpp"
#include "bpa/errors.hpp"
#include "bpa/game.hpp"
#include "bpa/lts.hpp"
#include "bpa/normed.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace bpa;

namespace {

using Clock = std::chrono::steady_clock;

// time limits, seconds
constexpr double kC1Limit = 10;
constexpr double kC2Limit = 30;
constexpr double kC3Limit = 60;
constexpr double kC4Limit = 300;
constexpr double kC9Limit = 600;

// oracle depths
constexpr std::size_t kGameDepth = 8;
constexpr std::size_t kDeltaDepth = 6;
constexpr std::size_t kPremiseDepth = 24;
constexpr std::size_t kPhases = 50;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

RegularString rename_string(const RegularString& s, std::size_t offset) {
    return canonicalize(oracle::rename_word(s.prefix(), offset), oracle::rename_word(s.cycle(), offset));
}

RegularString random_state(std::mt19937_64& rng, const AnalyzedSystem& sys, std::size_t max_prefix,
                           std::size_t max_cycle) {
    return truncate_unnormed(canonicalize(oracle::random_word(rng, sys.system(), rng() % (max_prefix + 1)),
                                          oracle::random_word(rng, sys.system(), rng() % (max_cycle + 1))),
                             sys.norms());
}

RegularString random_state_within(std::mt19937_64& rng, const AnalyzedSystem& sys, std::size_t max_size) {
    for (;;) {
        auto x = random_state(rng, sys, 3, 2);
        if (size_of(x, sys.norms()) <= max_size) return x;
    }
}

// ---------------------------------------------------------------------------

void for_each_word(std::size_t len, std::size_t alphabet, const std::function<void(const Word&)>& f) {
    Word cur(len, Nt{0});
    for (;;) {
        f(cur);
        std::size_t i = 0;
        while (i < len && index(cur[i]) + 1 == alphabet) cur[i++] = Nt{0};
        if (i == len) return;
        cur[i] = Nt{index(cur[i]) + 1};
    }
}

Outcome criterion1() {
    Outcome out;
    auto t0 = Clock::now();
    auto letter = [](char c) { return Nt{static_cast<std::uint32_t>(c - 'A')}; };
    auto word = [&](std::string_view s) {
        Word w;
        for (char c : s) w.push_back(letter(c));
        return w;
    };
    auto ex = canonicalize(word("BAA"), word("BBABBABBA"));
    bool example = ex.prefix() == word("BA") && ex.cycle() == word("ABB");

    std::size_t checked = 0, mismatches = 0;
    for (std::size_t total = 1; total <= 8; ++total) {
        for (std::size_t cl = 1; cl <= total; ++cl) {
            for_each_word(total - cl, 3, [&](const Word& p) {
                for_each_word(cl, 3, [&](const Word& c) {
                    ++checked;
                    auto r = canonicalize(p, c);
                    auto [bp, bc] = oracle::brute_canonical(oracle::letters(p), oracle::letters(c));
                    if (oracle::letters(r.prefix()) != bp || oracle::letters(r.cycle()) != bc) ++mismatches;
                });
            });
        }
    }
    const double t = seconds_since(t0);
    out.pass = example && mismatches == 0 && t < kC1Limit;
    out.detail = fmt("example %s; %zu presentations, %zu mismatches; %.2fs (limit %.0fs)", example ? "ok" : "WRONG",
                     checked, mismatches, t, kC1Limit);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion2() {
    Outcome out;
    auto t0 = Clock::now();
    std::size_t chain_bad = 0;
    for (std::size_t k = 1; k <= 20; ++k) {
        auto norms = compute_norms(chain_system(k));
        for (std::size_t i = 1; i <= k; ++i) {
            if (norms[Nt{static_cast<std::uint32_t>(i - 1)}] != ExtNat((BigNat(1) << i) - 1)) ++chain_bad;
        }
    }
    std::mt19937_64 rng(2002);
    std::size_t compared = 0, unknown = 0, mismatches = 0;
    for (int i = 0; i < 500; ++i) {
        auto sys = oracle::random_system(rng, {1, 5, 2, 9, 3, false});
        auto n = compute_norms(sys);
        auto fix = oracle::fixpoint_norms(sys);
        for (std::size_t a = 0; a < sys.nonterminal_count(); ++a) {
            Nt nt{static_cast<std::uint32_t>(a)};
            if (n[nt].is_finite() != fix[a].has_value() ||
                (fix[a] && n[nt] != ExtNat(static_cast<long long>(*fix[a]))))
                ++mismatches;
            auto b = oracle::bfs_norm(sys, nt);
            if (b.kind == oracle::BfsNorm::Kind::Unknown) {
                ++unknown;
                continue;
            }
            ++compared;
            bool ok = b.kind == oracle::BfsNorm::Kind::Omega ? n[nt].is_omega()
                                                             : n[nt] == ExtNat(static_cast<long long>(b.value));
            if (!ok) ++mismatches;
        }
    }
    const double t = seconds_since(t0);
    out.pass = chain_bad == 0 && mismatches == 0 && t < kC2Limit;
    out.detail = fmt("chain errors %zu; 500 systems, %zu norms checked by search (%zu undecided), %zu mismatches; "
                     "%.2fs (limit %.0fs)",
                     chain_bad, compared, unknown, mismatches, t, kC2Limit);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
    Outcome out;
    std::string parts;
    double t4 = 0;
    for (std::size_t k = 2; k <= 4; ++k) {
        auto t0 = Clock::now();
        AnalyzedSystem sys(chain_system(k));
        auto ak = RegularString::finite({Nt{static_cast<std::uint32_t>(k - 1)}});
        auto ak1 = RegularString::finite({Nt{static_cast<std::uint32_t>(k - 2)}});
        const std::size_t expect = (std::size_t{1} << (k - 1)) - 1;
        auto r = eqlevel_bounded(sys, ak, ak1, expect + 2);
        if (k == 4) t4 = seconds_since(t0);
        if (r != EqLevelResult::exact(expect)) out.pass = false;
        parts += fmt("k=%zu %s (want Exact %zu); ", k, r.to_string().c_str(), expect);
    }
    out.pass = out.pass && t4 < kC3Limit;
    out.detail = parts + fmt("k=4 took %.3fs (limit %.0fs)", t4, kC3Limit);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion4() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937_64 rng(4004);
    std::map<std::string, std::size_t> violations;
    std::size_t applicable_mismatch = 0, applicable_absorb = 0;
    for (int i = 0; i < 1000; ++i) {
        auto base = oracle::random_system(rng, {1, 4, 2, 8, 3, false});
        AnalyzedSystem sys(base);
        const auto& n = sys.norms();
        EqLevelOracle o(sys);
        const std::size_t d = 1 + rng() % 8;
        auto x = random_state_within(rng, sys, 5), y = random_state_within(rng, sys, 5);
        auto x2 = random_state_within(rng, sys, 5), y2 = random_state_within(rng, sys, 5);
        auto g = random_state_within(rng, sys, 3);
        auto lv = [&](const RegularString& a, const RegularString& b) { return o.eqlevel(a, b, d).level(); };
        auto bad = [&](const char* what) { ++violations[what]; };

        for (std::size_t k = 1; k <= d; ++k) {
            if (o.approximates(x, y, k) && !o.approximates(x, y, k - 1)) bad("chain");
        }
        const std::size_t lxy = lv(x, y);
        const std::size_t c = std::min(lv(x, x2), lv(y, y2));
        if (lv(concat_truncated(x, y, n), concat_truncated(x2, y2, n)) < c) bad("congruence");
        if (!g.is_empty() && lv(x, concat_truncated(g, x, n)) > lv(x, truncate_unnormed(power_omega(g), n))) {
            bad("unrolling");
        }
        if (lxy > lv(concat_truncated(x, g, n), concat_truncated(y, g, n))) bad("right context");
        auto nx = norm_of(x, n), ny = norm_of(y, n);
        if (nx != ny) {
            auto m = min(nx, ny);
            if (m < ExtNat(static_cast<long long>(d))) {
                ++applicable_mismatch;
                if (ExtNat(static_cast<long long>(lxy)) > m) bad("norm mismatch");
            }
        }
        for (std::size_t u = 0; u < base.nonterminal_count(); ++u) {
            if (!n[Nt{static_cast<std::uint32_t>(u)}].is_omega()) continue;
            ++applicable_absorb;
            auto us = RegularString::finite({Nt{static_cast<std::uint32_t>(u)}});
            if (!o.approximates(us, concat_truncated(us, x, n), d)) bad("absorption");
            break;
        }
        if (auto ng = norm_of(g, n).to_size()) {
            if (lv(concat_truncated(g, x, n), concat_truncated(g, y, n)) < std::min(d, *ng + lxy)) bad("left context");
        }
    }
    const double t = seconds_since(t0);
    std::size_t total = 0;
    std::string which;
    for (const auto& [k, v] : violations) {
        total += v;
        which += fmt(" %s=%zu", k.c_str(), v);
    }
    out.pass = total == 0 && t < kC4Limit;
    out.detail = fmt("1000 instances, %zu violations%s; norm-mismatch cases %zu, absorption cases %zu; %.1fs (limit %.0fs)",
                     total, which.c_str(), applicable_mismatch, applicable_absorb, t, kC4Limit);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<StringPair> replay_pairs(const Decomposition& d, const NormTable& n) {
    std::vector<StringPair> pairs;
    for (const auto& s : d.proof.steps) {
        switch (s.kind) {
            case ProofStep::Kind::Generator: pairs.push_back(d.generators.at(s.first)); break;
            case ProofStep::Kind::Reflexivity: {
                auto t = truncate_unnormed(s.str, n);
                pairs.push_back({t, t});
                break;
            }
            case ProofStep::Kind::Symmetry: pairs.push_back({pairs.at(s.first).second, pairs.at(s.first).first}); break;
            case ProofStep::Kind::Transitivity:
                pairs.push_back({pairs.at(s.first).first, pairs.at(s.second).second});
                break;
            case ProofStep::Kind::Concatenation:
                pairs.push_back({concat_truncated(pairs.at(s.first).first, pairs.at(s.second).first, n),
                                 concat_truncated(pairs.at(s.first).second, pairs.at(s.second).second, n)});
                break;
        }
    }
    return pairs;
}

Outcome criterion5() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937_64 rng(5005);
    std::size_t emitted_raw = 0, emitted_filtered = 0, min_violations = 0, transfer_violations = 0, invalid = 0;
    for (int i = 0; i < 300; ++i) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 2, false});
        AnalyzedSystem sys(base);
        const auto& n = sys.norms();
        EqLevelOracle o(sys);
        const std::size_t d = 3 + rng() % 4;
        for (int j = 0; j < 10; ++j) {
            auto x = truncate_unnormed(RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 4)), n);
            auto y = truncate_unnormed(RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 4)), n);
            if (j % 3 == 0) y = random_state(rng, sys, 3, 2);
            if (x.is_empty() || y.is_empty()) continue;
            for (bool filtered : {false, true}) {
                DecompositionOptions opts{filtered, 8};
                for (const auto& dc : prover_decompositions(o, {x, y}, d, opts)) {
                    ++(filtered ? emitted_filtered : emitted_raw);
                    if (!check_decomposition(sys, {x, y}, dc)) ++invalid;
                    std::size_t low = d;
                    for (const auto& g : dc.generators) low = std::min(low, o.eqlevel(g.first, g.second, d).level());
                    if (o.eqlevel(x, y, d).level() < low) ++min_violations;
                    // every pair derived in the proof inherits ~_low
                    for (const auto& p : replay_pairs(dc, n)) {
                        if (o.eqlevel(p.first, p.second, d).level() < low) {
                            ++transfer_violations;
                            break;
                        }
                    }
                }
            }
        }
    }
    const std::size_t total = min_violations + transfer_violations + invalid;
    out.pass = total == 0 && emitted_raw > 0 && emitted_filtered > 0;
    out.detail = fmt("%zu raw and %zu filtered decompositions; min-level violations %zu, transfer violations %zu, "
                     "invalid %zu; %.1fs",
                     emitted_raw, emitted_filtered, min_violations, transfer_violations, invalid, seconds_since(t0));
    return out;
}

// ---------------------------------------------------------------------------

// All normed words of norm at most `budget`, by depth-first extension.
void normed_words(const std::vector<Nt>& normed, const std::vector<std::size_t>& norm, std::size_t budget, Word& cur,
                  const std::function<void(const Word&, std::size_t)>& f, std::size_t used = 0) {
    f(cur, used);
    for (Nt a : normed) {
        const std::size_t na = norm[index(a)];
        if (used + na > budget) continue;
        cur.push_back(a);
        normed_words(normed, norm, budget, cur, f, used + na);
        cur.pop_back();
    }
}

Outcome criterion6() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937_64 rng(6006);
    std::size_t states = 0, moves = 0, violations = 0;
    const std::size_t limit = 12;
    for (int i = 0; i < 200; ++i) {
        auto base = oracle::random_system(rng, {2, 3, 2, 6, 3, false});
        AnalyzedSystem sys(base);
        const auto& n = sys.norms();
        const BigNat srhs = sys.constants().max_rhs_size;
        std::vector<Nt> normed, unnormed;
        std::vector<std::size_t> norm(base.nonterminal_count(), 0);
        for (std::size_t a = 0; a < base.nonterminal_count(); ++a) {
            Nt nt{static_cast<std::uint32_t>(a)};
            if (n[nt].is_omega()) {
                unnormed.push_back(nt);
            } else {
                norm[a] = *n[nt].to_size();
                normed.push_back(nt);
            }
        }
        auto check = [&](const RegularString& x) {
            ++states;
            auto rots = rotations(x.cycle());
            const BigNat px = n.normed_prefix(x.prefix()), cx = n.normed_prefix(x.cycle());
            for (const auto& t : transitions(sys, x)) {
                ++moves;
                const auto& y = t.target;
                bool ok = y.cycle().empty() || std::find(rots.begin(), rots.end(), y.cycle()) != rots.end();
                ok = ok && n.normed_prefix(y.cycle()) <= cx;
                ok = ok && n.normed_prefix(y.prefix()) <= px + srhs;
                if (!ok) ++violations;
            }
        };
        Word cur;
        normed_words(normed, norm, limit, cur, [&](const Word& p, std::size_t used) {
            check(RegularString::finite(p));
            for (Nt u : unnormed) {
                Word pu = p;
                pu.push_back(u);
                check(RegularString::finite(pu));
            }
            // lassos p (c)^w with canonical presentation
            Word cyc;
            normed_words(normed, norm, limit - used, cyc, [&](const Word& c, std::size_t) {
                if (c.empty()) return;
                auto r = canonicalize(p, c);
                if (r.prefix() == p && r.cycle() == c) check(r);
            });
        });
    }
    out.pass = violations == 0;
    out.detail = fmt("200 systems, %zu states of size <= %zu, %zu transitions, %zu violations; %.1fs", states, limit,
                     moves, violations, seconds_since(t0));
    return out;
}

// ---------------------------------------------------------------------------

struct Instance {
    std::shared_ptr<AnalyzedSystem> sys;
    StringPair pair;
};

Outcome criterion7() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937_64 rng(7007);
    std::size_t instances = 0, games = 0, lost = 0, measure_violations = 0, attempts = 0;
    std::map<std::size_t, std::size_t> by_level;
    while (instances < 200 && attempts < 200000) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 2, false});
        auto sys = std::make_shared<AnalyzedSystem>(base);
        EqLevelOracle o(*sys);
        int taken = 0;
        for (int j = 0; j < 20 && taken < 2 && instances < 200; ++j) {
            ++attempts;
            auto x = random_state_within(rng, *sys, 6), y = random_state_within(rng, *sys, 6);
            auto e = o.eqlevel(x, y, kGameDepth);
            if (!e.is_exact() || e.level() == 0 || e.level() > 6) continue;
            ++taken;
            ++instances;
            ++by_level[e.level()];
            auto params = default_params(*sys);
            SoundRefuter refuter(o, kGameDepth, true);
            auto judge = [&](const GameTranscript& t) {
                ++games;
                if (t.verdict != Verdict::RefuterWins) {
                    ++lost;
                    return;
                }
                // phase-start pairs
                std::vector<StringPair> starts;
                std::size_t phase = 0;
                for (const auto& en : t.entries) {
                    if (en.phase != phase) {
                        phase = en.phase;
                        starts.push_back(en.pair_before);
                    }
                }
                std::pair<std::size_t, BigNat> prev{SIZE_MAX, 0};
                for (std::size_t s = 0; s < starts.size(); ++s) {
                    std::pair<std::size_t, BigNat> m{o.eqlevel(starts[s].first, starts[s].second, kGameDepth).level(),
                                                     size_of_pair(starts[s], sys->norms())};
                    if (s > 0 && !(m < prev)) {
                        ++measure_violations;
                        return;
                    }
                    prev = m;
                }
            };
            CompleteProver cp(o, kGameDepth);
            judge(run_game(*sys, {x, y}, cp, refuter, 100, params));
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                RandomProver rp(o, seed * 7919 + instances);
                judge(run_game(*sys, {x, y}, rp, refuter, 100, params));
            }
        }
    }
    std::string levels;
    for (const auto& [k, v] : by_level) levels += fmt(" k%zu:%zu", k, v);
    out.pass = instances == 200 && lost == 0 && measure_violations == 0;
    out.detail = fmt("%zu instances (%s ), %zu games, %zu not won by Refuter, %zu measure violations; %.1fs", instances,
                     levels.c_str(), games, lost, measure_violations, seconds_since(t0));
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion8() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937_64 rng(8008);
    std::vector<Instance> pool;
    std::size_t copies = 0, normed = 0;
    while (copies < 50) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 3, false});
        auto sys = std::make_shared<AnalyzedSystem>(oracle::renamed_copy(base));
        AnalyzedSystem plain(base);
        auto x = random_state_within(rng, plain, 6);
        pool.push_back({sys, {x, rename_string(x, base.nonterminal_count())}});
        ++copies;
    }
    std::size_t attempts = 0;
    while (normed < 50 && attempts < 100000) {
        ++attempts;
        auto base = oracle::random_system(rng, {1, 3, 1 + rng() % 2, 6, 2, true});
        auto sys = std::make_shared<AnalyzedSystem>(base);
        auto x = RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 3));
        auto y = RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 3));
        if (x == y) continue;
        if (decide_normed(*sys, x, y).kind != NormedVerdict::Kind::Bisimilar) continue;
        pool.push_back({sys, {x, y}});
        ++normed;
    }
    std::size_t games = 0, losses = 0, oversize = 0, offers = 0;
    std::map<std::string, std::size_t> verdicts;
    std::string first_loss;
    for (const auto& inst : pool) {
        const auto& sys = *inst.sys;
        EqLevelOracle o(sys);
        auto params = default_params(sys);
        CompleteProver p(o, kGameDepth);
        auto judge = [&](const GameTranscript& t) {
            ++games;
            ++verdicts[verdict_name(t.verdict)];
            // both sides erased is a Prover win before the phase limit
            if (t.verdict == Verdict::RefuterWins || t.verdict == Verdict::Inconclusive ||
                (t.verdict == Verdict::Ongoing && t.phases < kPhases)) {
                ++losses;
                if (first_loss.empty()) first_loss = t.note + " from " + sys.system().format(inst.pair);
            }
            for (const auto& e : t.entries) {
                if (size_of_pair(e.pair_after, sys.norms()) > params.pair_space) {
                    ++oversize;
                    break;
                }
                if (std::holds_alternative<DecompositionOffered>(e.move)) ++offers;
            }
        };
        SoundRefuter sr(o, kGameDepth);
        judge(run_game(sys, inst.pair, p, sr, kPhases, params));
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            RandomRefuter rr(sys, seed);
            judge(run_game(sys, inst.pair, p, rr, kPhases, params));
        }
    }
    out.pass = pool.size() == 100 && losses == 0 && oversize == 0;
    out.detail = fmt("%zu renamed-copy and %zu normed instances, %zu games of %zu phases, %zu losses, %zu oversized "
                     "pairs, %zu decompositions offered; %.1fs",
                     copies, normed, games, kPhases, losses, oversize, offers, seconds_since(t0));
    for (const auto& [k, v] : verdicts) out.detail += fmt(" %s=%zu", k.c_str(), v);
    if (!first_loss.empty()) out.detail += "\n  first loss: " + first_loss;
    return out;
}

// ---------------------------------------------------------------------------

// Nonterminal and action renamings applied to a rule code; the system is kept
// only when its sorted code list is the least among all renamings.
struct RuleSpace {
    std::size_t n, a;
    std::vector<Word> bodies;
    std::vector<Rule> rules;
    std::vector<std::vector<std::uint32_t>> perms;  // nonterminal perm then action perm

    RuleSpace(std::size_t n_, std::size_t a_) : n(n_), a(a_) {
        for (std::size_t len = 0; len <= 2; ++len) for_each_word(len, n, [&](const Word& w) { bodies.push_back(w); });
        for (std::size_t h = 0; h < n; ++h) {
            for (std::size_t x = 0; x < a; ++x) {
                for (const auto& b : bodies) rules.push_back({Nt{static_cast<std::uint32_t>(h)}, Act{static_cast<std::uint32_t>(x)}, b});
            }
        }
        std::vector<std::uint32_t> pn(n), pa(a);
        std::iota(pn.begin(), pn.end(), 0);
        do {
            std::iota(pa.begin(), pa.end(), 0);
            do {
                std::vector<std::uint32_t> p = pn;
                p.insert(p.end(), pa.begin(), pa.end());
                perms.push_back(p);
            } while (std::next_permutation(pa.begin(), pa.end()));
        } while (std::next_permutation(pn.begin(), pn.end()));
    }

    std::size_t code(const Rule& r, const std::vector<std::uint32_t>& p) const {
        std::size_t body = 0;
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            const Word& b = bodies[i];
            if (b.size() != r.body.size()) continue;
            bool same = true;
            for (std::size_t j = 0; j < b.size() && same; ++j) same = index(b[j]) == p[index(r.body[j])];
            if (same) {
                body = i;
                break;
            }
        }
        return (p[index(r.head)] * a + p[n + index(r.action)]) * bodies.size() + body;
    }

    bool canonical(const std::vector<std::size_t>& chosen) const {
        std::vector<std::size_t> mine(chosen.begin(), chosen.end());
        for (const auto& p : perms) {
            std::vector<std::size_t> other;
            for (std::size_t c : chosen) other.push_back(code(rules[c], p));
            std::sort(other.begin(), other.end());
            if (other < mine) return false;
        }
        return true;
    }
};

Outcome criterion9() {
    Outcome out;
    auto t0 = Clock::now();
    std::size_t systems = 0, pairs = 0, anomalies = 0, bisimilar = 0, inconclusive = 0;
    std::string first_anomaly;
    bool finished = true;
    auto anomaly = [&](const BpaSystem& s, const RegularString& x, const RegularString& y, const std::string& why) {
        if (anomalies++ == 0) first_anomaly = why + " on (" + s.format(x) + ", " + s.format(y) + ") in\n" + serialize_system(s);
    };
    for (std::size_t n = 1; n <= 3 && finished; ++n) {
        for (std::size_t a = 1; a <= 2 && finished; ++a) {
            RuleSpace space(n, a);
            std::vector<std::string> nts, acts;
            for (std::size_t i = 0; i < n; ++i) nts.push_back(std::string(1, static_cast<char>('X' + i)));
            for (std::size_t i = 0; i < a; ++i) acts.push_back(std::string(1, static_cast<char>('a' + i)));
            std::vector<Word> words;
            for (std::size_t len = 0; len <= 3; ++len) for_each_word(len, n, [&](const Word& w) { words.push_back(w); });
            for (std::size_t k = std::max(n, a); k <= 6 && finished; ++k) {
                std::vector<std::size_t> chosen(k);
                std::iota(chosen.begin(), chosen.end(), 0);
                const std::size_t total = space.rules.size();
                if (k > total) break;
                for (;;) {
                    std::vector<bool> head(n, false), act(a, false);
                    for (std::size_t c : chosen) {
                        head[index(space.rules[c].head)] = true;
                        act[index(space.rules[c].action)] = true;
                    }
                    bool full = std::all_of(head.begin(), head.end(), [](bool b) { return b; }) &&
                                std::all_of(act.begin(), act.end(), [](bool b) { return b; });
                    if (full && space.canonical(chosen)) {
                        std::vector<Rule> rules;
                        for (std::size_t c : chosen) rules.push_back(space.rules[c]);
                        BpaSystem s(nts, acts, rules);
                        if (compute_norms(s).all_normed()) {
                            ++systems;
                            AnalyzedSystem sys(s);
                            EqLevelOracle o(sys);
                            std::optional<EqLevelOracle> done;
                            for (std::size_t i = 0; i < words.size(); ++i) {
                                for (std::size_t j = i; j < words.size(); ++j) {
                                    ++pairs;
                                    auto x = RegularString::finite(words[i]), y = RegularString::finite(words[j]);
                                    NormedVerdict v;
                                    try {
                                        v = decide_normed(o, x, y);
                                    } catch (const InternalError& e) {
                                        anomaly(s, x, y, e.what());
                                        continue;
                                    }
                                    if (v.kind == NormedVerdict::Kind::Inconclusive) {
                                        ++inconclusive;
                                        anomaly(s, x, y, "inconclusive: " + v.reason);
                                        continue;
                                    }
                                    if (v.kind == NormedVerdict::Kind::Bisimilar) ++bisimilar;
                                    if (i == j && v.kind != NormedVerdict::Kind::Bisimilar) {
                                        anomaly(s, x, y, "reflexive pair not bisimilar");
                                    }
                                    auto nx = sys.norms().of(words[i]), ny = sys.norms().of(words[j]);
                                    if (nx != ny) {
                                        const std::size_t m = *min(nx, ny).to_size();
                                        if (v.kind != NormedVerdict::Kind::NotBisimilar || v.level > m) {
                                            anomaly(s, x, y, "norm mismatch not refuted by the smaller norm");
                                        }
                                        // on the completion the level is exactly the smaller norm
                                        if (!done) done.emplace(AnalyzedSystem(complete_unnormed(s).completed));
                                        if (done->eqlevel(x, y, m + 2) != EqLevelResult::exact(m)) {
                                            anomaly(s, x, y, "completed eq-level differs from the smaller norm");
                                        }
                                    }
                                }
                            }
                            if (seconds_since(t0) > kC9Limit) {
                                finished = false;
                                break;
                            }
                        }
                    }
                    // next combination
                    std::size_t i = k;
                    while (i > 0 && chosen[i - 1] == total - k + i - 1) --i;
                    if (i == 0) break;
                    ++chosen[i - 1];
                    for (std::size_t j = i; j < k; ++j) chosen[j] = chosen[j - 1] + 1;
                }
            }
        }
    }
    const double t = seconds_since(t0);
    out.pass = finished && anomalies == 0 && t < kC9Limit;
    out.detail = fmt("%s: %zu systems up to renaming, %zu pairs (%zu bisimilar), %zu anomalies (%zu inconclusive); "
                     "%.1fs (limit %.0fs)",
                     finished ? "enumeration complete" : "budget exhausted before the enumeration finished", systems,
                     pairs, bisimilar, anomalies, inconclusive, t, kC9Limit);
    if (!first_anomaly.empty()) out.detail += "\n  first anomaly: " + first_anomaly;
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion10() {
    Outcome out;
    auto t0 = Clock::now();
    std::mt19937_64 rng(1010);
    std::size_t simple = 0, yielded = 0, violations = 0, attempts = 0;
    std::string first;
    auto violation = [&](const std::string& why) {
        if (violations++ == 0) first = why;
    };

    // sigma·beta and sigma·delta·beta denote the same string when beta = delta^w
    while (simple < 25) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 2, true});
        AnalyzedSystem sys(base);
        const auto& n = sys.norms();
        EqLevelOracle o(sys);
        auto sigma = RegularString::finite(oracle::random_word(rng, base, rng() % 3));
        auto step = RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 2));
        auto beta = power_omega(step);
        auto sigma2 = concat(sigma, step);
        ++simple;
        RegularString delta;
        try {
            delta = extract_delta_simple(o, sigma, sigma2, beta, kDeltaDepth);
        } catch (const std::exception& e) {
            violation(std::string("extract_delta_simple failed: ") + e.what());
            continue;
        }
        if (delta.is_empty() || !o.approximates(beta, concat_truncated(delta, beta, n), kDeltaDepth)) {
            violation("delta does not satisfy beta ~ delta beta");
        }
        if (size_of(delta, n) > size_of_pair(sigma, sigma2, n) * (1 + sys.constants().max_rhs_size)) {
            violation("delta larger than size(sigma, sigma')(1 + S_rhs)");
        }
    }

    // searched instances: alpha1 !~ alpha2 separated by an unnormed right context
    std::size_t equal_norm = 0, sequenced = 0;
    while (yielded < 25 && attempts < 200000) {
        ++attempts;
        auto base = oracle::random_system(rng, {2, 3, 2, 7, 2, false});
        AnalyzedSystem sys(base);
        const auto& n = sys.norms();
        if (n.all_normed()) continue;
        EqLevelOracle o(sys);
        Word w1 = oracle::random_word(rng, base, 1 + rng() % 2), w2 = oracle::random_word(rng, base, 1 + rng() % 2);
        if (n.of(w1).is_omega() || n.of(w2).is_omega()) continue;
        auto a1 = RegularString::finite(w1), a2 = RegularString::finite(w2);
        auto beta = random_state(rng, sys, 2, 2);
        if (!norm_of(beta, n).is_omega()) continue;
        auto d12 = o.eqlevel(a1, a2, kDeltaDepth);
        if (!d12.is_exact()) continue;
        // the premise must hold well past the checked depth, not just at it
        try {
            EqLevelOracle deep(sys, 2'000'000);
            if (!deep.approximates(concat_truncated(a1, beta, n), concat_truncated(a2, beta, n), kPremiseDepth)) continue;
        } catch (const MemoCapExceeded&) {
            continue;
        }
        // prefer equal norms so the sequence construction runs
        const bool eq = n.of(w1) == n.of(w2);
        if (!eq && yielded - equal_norm >= 10) continue;
        ++yielded;
        if (eq) ++equal_norm;
        auto r = yield_delta(o, a1, a2, beta, kDeltaDepth);
        if (!r.delta) {
            violation("yield_delta inconclusive: " + r.inconclusive);
            continue;
        }
        if (r.trace.size() > 1) ++sequenced;
        const auto& c = sys.constants();
        const BigNat nn = base.nonterminal_count();
        const BigNat bound = (size_of_pair(a1, a2, n) + nn * nn * c.max_rhs_norm + c.max_rhs_size) * (1 + c.max_rhs_size);
        if (r.delta->is_empty() || !o.approximates(beta, concat_truncated(*r.delta, beta, n), kDeltaDepth)) {
            violation("yield_delta: beta ~ delta beta fails");
        }
        if (size_of(*r.delta, n) > bound) violation("yield_delta: delta above the size bound");
    }
    out.pass = simple + yielded == 50 && violations == 0;
    out.detail = fmt("%zu extract_delta_simple and %zu yield_delta instances (%zu with equal norms, %zu through the "
                     "sequence cases), %zu violations; %.1fs",
                     simple, yielded, equal_norm, sequenced, violations, seconds_since(t0));
    if (!first.empty()) out.detail += "\n  first violation: " + first;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::pair<int, Outcome (*)()>> all = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                                                       {4, criterion4}, {5, criterion5}, {6, criterion6},
                                                       {7, criterion7}, {8, criterion8}, {9, criterion9},
                                                       {10, criterion10}};
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
    int failed = 0;
    for (const auto& [id, fn] : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
