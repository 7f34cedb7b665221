#include "bpa/lts.hpp"

#include "bpa/errors.hpp"

#include <algorithm>
#include <set>

namespace bpa {

std::vector<Transition> transitions(const AnalyzedSystem& sys, const RegularString& x) {
    std::vector<Transition> out;
    if (x.is_empty()) return out;
    const Nt head = x.head();
    const RegularString rest = x.tail();
    const auto& rules = sys.system().rules();
    for (std::size_t r : sys.system().rules_of(head)) {
        const Rule& rule = rules[r];
        out.push_back({rule.action, truncate_unnormed(concat(RegularString::finite(rule.body), rest), sys.norms()), r});
    }
    return out;
}

std::vector<Act> enabled_actions(const AnalyzedSystem& sys, const RegularString& x) {
    std::vector<Act> out;
    if (x.is_empty()) return out;
    for (std::size_t r : sys.system().rules_of(x.head())) out.push_back(sys.system().rules()[r].action);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// first rule of the head whose body has norm ||head|| - 1
const Rule& reducing_rule(const AnalyzedSystem& sys, Nt head) {
    const ExtNat& h = sys.norms()[head];
    for (std::size_t r : sys.system().rules_of(head)) {
        const Rule& rule = sys.system().rules()[r];
        ExtNat b = sys.norms().of(rule.body);
        if (b.is_finite() && b + ExtNat(1) == h) return rule;
    }
    throw InternalError("no norm-reducing rule for a normed nonterminal");
}

}  // namespace

PathWitness norm_reducing_path(const AnalyzedSystem& sys, const RegularString& x, std::size_t steps) {
    ExtNat n = norm_of(x, sys.norms());
    if (n.is_omega()) throw ContractViolation("norm_reducing_path: start string is unnormed");
    if (ExtNat(BigNat(steps)) > n) throw ContractViolation("norm_reducing_path: more steps than the norm");
    PathWitness w;
    w.states.push_back(x);
    Word cur = x.prefix();
    for (std::size_t i = 0; i < steps; ++i) {
        const Rule& rule = reducing_rule(sys, cur.front());
        Word next = rule.body;
        next.insert(next.end(), cur.begin() + 1, cur.end());
        cur = std::move(next);
        w.actions.push_back(rule.action);
        w.states.push_back(RegularString::finite(cur));
    }
    return w;
}

std::vector<PathWitness> all_erasing_paths(const AnalyzedSystem& sys, const RegularString& x, std::size_t limit) {
    if (norm_of(x, sys.norms()).is_omega()) throw ContractViolation("all_erasing_paths: start string is unnormed");
    std::vector<PathWitness> out;
    PathWitness cur;
    cur.states.push_back(x);
    auto dfs = [&](auto&& self) -> void {
        if (out.size() >= limit) return;
        const RegularString& s = cur.states.back();
        if (s.is_empty()) {
            out.push_back(cur);
            return;
        }
        const ExtNat here = norm_of(s, sys.norms());
        for (const auto& t : transitions(sys, s)) {
            if (norm_of(t.target, sys.norms()) + ExtNat(1) != here) continue;
            cur.actions.push_back(t.action);
            cur.states.push_back(t.target);
            self(self);
            cur.actions.pop_back();
            cur.states.pop_back();
            if (out.size() >= limit) return;
        }
    };
    dfs(dfs);
    return out;
}

std::vector<RegularString> states_along(const AnalyzedSystem& sys, const RegularString& x, const std::vector<Act>& word) {
    std::vector<RegularString> frontier{x};
    for (Act a : word) {
        std::vector<RegularString> next;
        std::set<RegularString> seen;
        for (const auto& s : frontier) {
            for (const auto& t : transitions(sys, s)) {
                if (t.action == a && seen.insert(t.target).second) next.push_back(t.target);
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return frontier;
}

const FixedPath& AnalyzedSystem::fixed_pair_path(Nt a1, Nt a2) const {
    std::lock_guard lock(data_->memo_mutex);
    auto& slot = data_->fixed_paths[{a1, a2}];
    if (slot) return *slot;
    const ExtNat& n1 = norms()[a1];
    const ExtNat& n2 = norms()[a2];
    if (n1.is_omega() || n2.is_omega() || n1 > n2) {
        data_->fixed_paths.erase({a1, a2});
        throw ContractViolation("fixed_pair_path needs ||A1|| <= ||A2|| < omega");
    }
    auto steps = n1.to_size();
    if (!steps) throw ContractViolation("fixed_pair_path: norm too large to materialize a path");
    PathWitness w = norm_reducing_path(*this, RegularString::finite({a2}), *steps);
    slot = std::make_unique<FixedPath>(FixedPath{w.actions, w.states.back().prefix()});
    return *slot;
}

}  // namespace bpa
