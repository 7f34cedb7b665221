#include "bpa/normed.hpp"

#include "bpa/decomposition.hpp"
#include "bpa/errors.hpp"
#include "bpa/lts.hpp"

namespace bpa {

CompletedSystem complete_unnormed(const BpaSystem& system) {
    if (!compute_norms(system).all_normed()) throw ContractViolation("complete_unnormed needs a normed system");
    std::vector<std::string> nts = system.nonterminal_names();
    std::vector<Rule> rules = system.rules();
    const Nt u{static_cast<std::uint32_t>(nts.size())};
    nts.push_back(fresh_name("U", nts));
    for (std::size_t a = 0; a < system.action_count(); ++a) rules.push_back({u, Act{static_cast<std::uint32_t>(a)}, {u}});
    for (std::size_t n = 0; n < system.nonterminal_count(); ++n) {
        for (std::size_t a = 0; a < system.action_count(); ++a) {
            rules.push_back({Nt{static_cast<std::uint32_t>(n)}, Act{static_cast<std::uint32_t>(a)}, {u}});
        }
    }
    return {system, BpaSystem(std::move(nts), system.action_names(), std::move(rules)), u};
}

BigNat eqlevel_bound(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y) {
    if (!sys.norms().all_normed()) throw ContractViolation("eqlevel_bound needs a normed system");
    if (!x.is_finite() || !y.is_finite()) throw ContractViolation("eqlevel_bound needs finite strings");
    const BigNat nx = sys.norms().of(x.prefix()).value();
    const BigNat ny = sys.norms().of(y.prefix()).value();
    const BigNat n = sys.system().nonterminal_count();
    return (nx < ny ? nx : ny) + n * n * sys.constants().max_rhs_norm;
}

NormedVerdict decide_normed(EqLevelOracle& oracle, const RegularString& x, const RegularString& y) {
    NormedVerdict v{NormedVerdict::Kind::Inconclusive, 0, eqlevel_bound(oracle.system(), x, y), {}};
    auto b = to_size(v.bound);
    if (!b || *b > std::numeric_limits<std::uint32_t>::max() - 4) {
        v.reason = "eq-level bound too large for the oracle";
        return v;
    }
    EqLevelResult r = EqLevelResult::at_least(0);
    try {
        r = oracle.eqlevel(x, y, *b + 2);
    } catch (const MemoCapExceeded& e) {
        v.reason = e.what();
        return v;
    }
    if (r.is_exact() && r.level() == *b + 1) {
        throw InternalError("observed eq-level B + 1 on a normed system, above the proven bound");
    }
    if (r.is_exact() && r.level() <= *b) {
        v.kind = NormedVerdict::Kind::NotBisimilar;
        v.level = r.level();
    } else {
        v.kind = NormedVerdict::Kind::Bisimilar;
    }
    return v;
}

NormedVerdict decide_normed(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y) {
    EqLevelOracle oracle(sys);
    return decide_normed(oracle, x, y);
}

bool check_additivity(EqLevelOracle& oracle, const RegularString& sigma1, const RegularString& sigma2,
                      const RegularString& mu, std::size_t depth) {
    const NormTable& norms = oracle.system().norms();
    const ExtNat nm = norm_of(mu, norms);
    if (nm.is_omega()) throw ContractViolation("check_additivity needs a normed mu");
    EqLevelResult joined = oracle.eqlevel(concat_truncated(sigma1, mu, norms), concat_truncated(sigma2, mu, norms), depth);
    EqLevelResult plain = oracle.eqlevel(sigma1, sigma2, depth);
    if (!joined.is_exact() || !plain.is_exact()) return true;
    return BigNat(joined.level()) == BigNat(plain.level()) + nm.value();
}

NormedTrace trace_bound_construction(EqLevelOracle& oracle, const RegularString& alpha1, const RegularString& alpha2,
                            std::size_t depth) {
    const AnalyzedSystem& sys = oracle.system();
    const NormTable& norms = sys.norms();
    NormedTrace t;
    auto cat = [&](const RegularString& a, const RegularString& b) { return concat_truncated(a, b, norms); };
    auto fail = [&](std::string m) {
        t.ok = false;
        t.message = std::move(m);
        return t;
    };
    auto stop = [&](std::string m) {
        t.inconclusive = true;
        t.message = std::move(m);
        return t;
    };
    auto norm_size = [&](const RegularString& s) -> long long {
        ExtNat n = norm_of(s, norms);
        return n.is_omega() ? -1 : static_cast<long long>(n.value());
    };
    auto min_norm = [&](const RegularString& a, const RegularString& b) {
        long long x = norm_size(a), y = norm_size(b);
        if (x < 0) return y;
        if (y < 0) return x;
        return std::min(x, y);
    };
    const std::size_t nn = sys.system().nonterminal_count();
    const long long mrhs = static_cast<long long>(sys.constants().max_rhs_norm);

    EqLevelResult first = oracle.eqlevel(alpha1, alpha2, depth);
    if (!first.is_exact()) return stop("alpha1 and alpha2 are not told apart at this depth");
    const long long bound = min_norm(alpha1, alpha2) + static_cast<long long>(nn * nn) * mrhs;
    if (static_cast<long long>(first.level()) > bound) return fail("eq-level above the bound");
    if (norm_of(alpha1, norms) != norm_of(alpha2, norms)) {
        if (static_cast<long long>(first.level()) != min_norm(alpha1, alpha2)) {
            return fail("norm mismatch without eq-level equal to the smaller norm");
        }
        return t;
    }

    RegularString rho = alpha1, rho2 = alpha2, mu;
    std::size_t case1 = 0;
    std::optional<std::size_t> prev_head;
    std::string prev_case;
    for (std::size_t iter = 0; iter < 4 * nn * nn + 8; ++iter) {
        EqLevelResult e = oracle.eqlevel(cat(rho, mu), cat(rho2, mu), depth);
        EqLevelResult head = oracle.eqlevel(rho, rho2, depth);
        if (!e.is_exact() || !head.is_exact()) return stop("intermediate pair not told apart at this depth");
        const long long di = static_cast<long long>(e.level()) - min_norm(cat(rho, mu), cat(rho2, mu));
        if (BigNat(e.level()) != BigNat(head.level()) + norm_of(mu, norms).value()) {
            return fail("eq-level is not additive under the context");
        }
        if (!t.d.empty()) {
            const long long before = t.d.back();
            if (prev_case == "1b" || prev_case == "1a") {
                if (di < before - mrhs) return fail("d dropped by more than M_rhs after case (1)");
            } else if (di != before) {
                return fail("d changed after case (2) or (3)");
            }
            if (head.level() > *prev_head) return fail("head eq-level increased");
            if ((prev_case != "2") && head.level() >= *prev_head) return fail("head eq-level did not decrease");
        }
        t.e.push_back(e.level());
        t.d.push_back(di);
        prev_head = head.level();
        if (norm_of(rho, norms) != norm_of(rho2, norms)) {
            if (di != 0) return fail("final d is not zero");
            return t;
        }

        const HeadSplit h = split_heads(sys, rho, rho2);
        const RegularString a1 = RegularString::finite({h.a1});
        const RegularString a2 = RegularString::finite({h.a2});
        const RegularString a1g = cat(a1, h.gamma);
        if (h.rest1 == h.gamma && h.rest2.is_empty()) {
            if (++case1 > nn * nn) return fail("case (1) used more than |N|^2 times");
            const std::size_t k = head.level();
            std::optional<StringPair> next;
            for (const auto& l : transitions(sys, a1g)) {
                for (const auto& r : transitions(sys, a2)) {
                    if (l.action != r.action) continue;
                    EqLevelResult s = oracle.eqlevel(l.target, r.target, depth);
                    if (s.is_exact() && k > 0 && s.level() == k - 1) {
                        next = StringPair{l.target, r.target};
                        break;
                    }
                }
                if (next) break;
            }
            if (!next) return fail("no rule pair lowering the eq-level by one");
            rho = next->first;
            rho2 = next->second;
            prev_case = norm_of(rho, norms) != norm_of(rho2, norms) ? "1a" : "1b";
        } else {
            EqLevelResult g = oracle.eqlevel(cat(a1g, h.rest2), cat(a2, h.rest2), depth);
            if (g == head) {
                prev_case = "2";
                rho = a1g;
                rho2 = a2;
                mu = cat(h.rest2, mu);
            } else {
                prev_case = "3";
                rho = h.rest1;
                rho2 = cat(h.gamma, h.rest2);
            }
        }
        t.cases.push_back(prev_case);
    }
    return fail("iteration guard reached");
}

}  // namespace bpa
