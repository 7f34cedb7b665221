#include "bpa/equivalence.hpp"

#include "bpa/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace bpa {

std::size_t default_memo_cap() {
    if (const char* env = std::getenv("BPA_MEMO_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 20'000'000;
}

EqLevelOracle::EqLevelOracle(AnalyzedSystem sys, std::size_t memo_cap) : sys_(std::move(sys)), memo_cap_(memo_cap) {}

EqLevelOracle::Id EqLevelOracle::intern(const RegularString& s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    const Id id = static_cast<Id>(states_.size());
    State st;
    st.str = s;
    st.norm = norm_of(s, sys_.norms());
    if (st.norm.is_finite()) st.norm_cap = st.norm.to_size().value_or(std::numeric_limits<std::size_t>::max());
    states_.push_back(std::move(st));
    ids_.emplace(s, id);
    return id;
}

void EqLevelOracle::expand(Id id) {
    if (states_[id].expanded) return;
    auto ts = transitions(sys_, states_[id].str);
    std::vector<std::pair<Act, Id>> succ;
    succ.reserve(ts.size());
    for (const auto& t : ts) succ.emplace_back(t.action, intern(t.target));
    std::stable_sort(succ.begin(), succ.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    State& st = states_[id];
    st.succ = std::move(succ);
    for (const auto& [a, _] : st.succ) {
        if (st.enabled.empty() || st.enabled.back() != a) st.enabled.push_back(a);
    }
    st.expanded = true;
}

std::size_t EqLevelOracle::level(Id a, Id b, std::size_t depth) {
    if (depth == 0) return 0;
    if (a == b) return depth;
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (auto it = memo_.find(key); it != memo_.end()) {
        if (it->second.exact) return std::min<std::size_t>(it->second.value, depth);
        if (it->second.value >= depth) return depth;
    }
    expand(a);
    expand(b);
    std::size_t cur = depth;
    if (states_[a].enabled != states_[b].enabled) {
        cur = 0;
    } else {
        const ExtNat& na = states_[a].norm;
        const ExtNat& nb = states_[b].norm;
        if (na != nb) {
            // differing norms cap the eq-level at the smaller norm
            const std::size_t m = na.is_omega() ? states_[b].norm_cap
                                  : nb.is_omega() ? states_[a].norm_cap
                                                  : std::min(states_[a].norm_cap, states_[b].norm_cap);
            cur = std::min(cur, m);
        }
        for (int side = 0; side < 2 && cur > 0; ++side) {
            const Id att = side == 0 ? a : b;
            const Id def = side == 0 ? b : a;
            const auto& att_succ = states_[att].succ;
            const auto& def_succ = states_[def].succ;
            auto lo = def_succ.begin();
            for (std::size_t i = 0; i < att_succ.size() && cur > 0; ++i) {
                const auto [act, target] = att_succ[i];
                while (lo != def_succ.end() && lo->first < act) ++lo;
                std::size_t best = 0;
                for (auto it = lo; it != def_succ.end() && it->first == act; ++it) {
                    const std::size_t v = 1 + level(target, it->second, cur - 1);
                    if (v > best) best = v;
                    if (best >= cur) break;
                }
                cur = std::min(cur, best);
            }
        }
    }
    if (memo_.size() >= memo_cap_ && !memo_.contains(key)) {
        throw MemoCapExceeded("eq-level memo table exceeded its cap of " + std::to_string(memo_cap_) + " entries");
    }
    Entry& e = memo_[key];
    if (cur < depth) {
        e = {static_cast<std::uint32_t>(cur), true};
    } else if (!e.exact) {
        e = {static_cast<std::uint32_t>(std::max<std::size_t>(e.value, depth)), false};
    }
    return cur;
}

EqLevelResult EqLevelOracle::eqlevel(const RegularString& x, const RegularString& y, std::size_t depth) {
    if (!is_truncated(x, sys_.norms()) || !is_truncated(y, sys_.norms())) {
        throw ContractViolation("eqlevel: inputs must be truncated after the first unnormed symbol");
    }
    if (depth > std::numeric_limits<std::uint32_t>::max()) throw ContractViolation("eqlevel: depth too large");
    const std::size_t r = level(intern(x), intern(y), depth);
    return r < depth ? EqLevelResult::exact(r) : EqLevelResult::at_least(depth);
}

EqLevelResult eqlevel_bounded(const AnalyzedSystem& sys, const RegularString& x, const RegularString& y, std::size_t depth) {
    EqLevelOracle oracle(sys);
    return oracle.eqlevel(x, y, depth);
}

bool covers(const AnalyzedSystem& sys, const std::set<StringPair>& candidate, const StringPair& pair) {
    auto in = [&](const RegularString& l, const RegularString& r) { return candidate.contains({l, r}); };
    const auto left = transitions(sys, pair.first);
    const auto right = transitions(sys, pair.second);
    auto matched = [&](const std::vector<Transition>& att, const std::vector<Transition>& def, bool flip) {
        for (const auto& t : att) {
            bool ok = false;
            for (const auto& r : def) {
                if (r.action == t.action && (flip ? in(r.target, t.target) : in(t.target, r.target))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    };
    return matched(left, right, false) && matched(right, left, true);
}

}  // namespace bpa
