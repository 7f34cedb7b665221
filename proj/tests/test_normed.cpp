#include "bpa/errors.hpp"
#include "bpa/normed.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bpa;
using bpa::testing::analyzed;
using bpa::testing::state;

TEST_CASE("unnormed completion") {
    auto base = parse_system("nonterminals: A B\nactions: a b\nrules:\nA a -> eps\nB b -> A\n");
    auto c = complete_unnormed(base);
    CHECK(c.u_symbol == Nt{2});
    CHECK(serialize_system(c.completed) ==
          "nonterminals: A B U\nactions: a b\nrules:\nA a -> eps\nB b -> A\nU a -> U\nU b -> U\n"
          "A a -> U\nA b -> U\nB a -> U\nB b -> U\n");
    auto n = compute_norms(c.completed);
    CHECK(n[Nt{0}] == ExtNat(1));
    CHECK(n[Nt{1}] == ExtNat(2));
    CHECK(n[Nt{2}].is_omega());

    auto named = complete_unnormed(parse_system("nonterminals: U\nactions: a\nrules:\nU a -> eps\n"));
    CHECK(named.completed.name(named.u_symbol) == "U1");

    CHECK_THROWS_AS(complete_unnormed(parse_system("nonterminals: A\nactions: a\nrules:\nA a -> A\n")),
                    ContractViolation);
}

TEST_CASE("eq-level bound") {
    AnalyzedSystem chain(chain_system(3));
    CHECK(eqlevel_bound(chain, state(chain, "A3"), state(chain, "A2")) == 3 + 9 * 6);
    CHECK(eqlevel_bound(chain, RegularString{}, state(chain, "A3")) == 9 * 6);
    auto one = analyzed("nonterminals: A\nactions: a\nrules:\nA a -> eps\n");
    CHECK(eqlevel_bound(one, state(one, "A"), state(one, "A")) == 1);
    CHECK_THROWS_AS(eqlevel_bound(one, one.system().parse_string("(A)^w"), state(one, "A")), ContractViolation);
    auto u = analyzed("nonterminals: A U\nactions: a\nrules:\nA a -> eps\nU a -> U\n");
    CHECK_THROWS_AS(eqlevel_bound(u, state(u, "A"), state(u, "A")), ContractViolation);
}

TEST_CASE("normed decisions") {
    auto xy = analyzed("nonterminals: X Y\nactions: a\nrules:\nX a -> eps\nY a -> eps\n");
    auto v = decide_normed(xy, state(xy, "X"), state(xy, "Y"));
    CHECK(v.kind == NormedVerdict::Kind::Bisimilar);
    CHECK(v.bound == 1);

    auto w = decide_normed(xy, state(xy, "X"), state(xy, "X X"));
    CHECK(w.kind == NormedVerdict::Kind::NotBisimilar);
    CHECK(w.level == 1);

    for (std::size_t k = 2; k <= 4; ++k) {
        AnalyzedSystem sys(chain_system(k));
        auto r = decide_normed(sys, state(sys, "A" + std::to_string(k)), state(sys, "A" + std::to_string(k - 1)));
        CHECK(r.kind == NormedVerdict::Kind::NotBisimilar);
        CHECK(r.level == (std::size_t{1} << (k - 1)) - 1);
    }

    AnalyzedSystem chain(chain_system(3));
    EqLevelOracle capped(chain, 2);
    auto c = decide_normed(capped, state(chain, "A3"), state(chain, "A2 A2 A1"));
    CHECK(c.kind == NormedVerdict::Kind::Inconclusive);
    CHECK_FALSE(c.reason.empty());
}

TEST_CASE("additivity on completed systems") {
    std::mt19937_64 rng(81);
    int exact = 0;
    for (int i = 0; i < 60; ++i) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 2, true});
        AnalyzedSystem sys(complete_unnormed(base).completed);
        EqLevelOracle o(sys);
        for (int j = 0; j < 5; ++j) {
            auto s1 = RegularString::finite(oracle::random_word(rng, base, rng() % 3));
            auto s2 = RegularString::finite(oracle::random_word(rng, base, rng() % 3));
            auto mu = RegularString::finite(oracle::random_word(rng, base, rng() % 3));
            CHECK(check_additivity(o, s1, s2, mu, 12));
            if (o.eqlevel(concat_truncated(s1, mu, sys.norms()), concat_truncated(s2, mu, sys.norms()), 12).is_exact())
                ++exact;
        }
    }
    CHECK(exact > 50);

    auto sys = AnalyzedSystem(complete_unnormed(chain_system(2)).completed);
    EqLevelOracle o(sys);
    CHECK_THROWS_AS(check_additivity(o, state(sys, "A1"), state(sys, "A2"), state(sys, "U"), 5), ContractViolation);
}

TEST_CASE("mismatched norms on completed systems meet at the smaller norm") {
    std::mt19937_64 rng(83);
    int seen = 0;
    for (int i = 0; i < 60; ++i) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 2, true});
        AnalyzedSystem sys(complete_unnormed(base).completed);
        EqLevelOracle o(sys);
        for (int j = 0; j < 5; ++j) {
            auto x = RegularString::finite(oracle::random_word(rng, base, rng() % 3));
            auto y = RegularString::finite(oracle::random_word(rng, base, rng() % 3));
            auto nx = norm_of(x, sys.norms()), ny = norm_of(y, sys.norms());
            if (nx == ny) continue;
            ++seen;
            auto m = *min(nx, ny).to_size();
            CHECK(o.eqlevel(x, y, m + 3) == EqLevelResult::exact(m));
        }
    }
    CHECK(seen > 50);
}

TEST_CASE("bound construction replays on small instances") {
    std::mt19937_64 rng(87);
    int traced = 0;
    for (int i = 0; i < 60; ++i) {
        auto base = oracle::random_system(rng, {1, 3, 2, 6, 2, true});
        AnalyzedSystem sys(complete_unnormed(base).completed);
        EqLevelOracle o(sys, 200000);
        for (int j = 0; j < 4; ++j) {
            auto x = RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 3));
            auto y = RegularString::finite(oracle::random_word(rng, base, 1 + rng() % 3));
            NormedTrace t;
            try {
                t = trace_bound_construction(o, x, y, 12);
            } catch (const MemoCapExceeded&) {
                continue;
            }
            CHECK_MESSAGE(t.ok, t.message);
            if (t.ok && !t.inconclusive) ++traced;
        }
    }
    CHECK(traced > 100);

    AnalyzedSystem chain(complete_unnormed(chain_system(3)).completed);
    EqLevelOracle o(chain);
    auto t = trace_bound_construction(o, state(chain, "A3"), state(chain, "A2 A2"), 40);
    CHECK(t.ok);
    CHECK_FALSE(t.inconclusive);
}
