#include "bpa/system.hpp"

#include "bpa/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace bpa {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

BpaSystem::BpaSystem(std::vector<std::string> nonterminals, std::vector<std::string> actions, std::vector<Rule> rules)
    : nonterminals_(std::move(nonterminals)), actions_(std::move(actions)), rules_(std::move(rules)) {
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) {
        const auto& n = nonterminals_[i];
        if (!is_identifier(n) || n == "eps") throw ContractViolation("invalid nonterminal name '" + n + "'");
        if (!nt_index_.emplace(n, Nt{static_cast<std::uint32_t>(i)}).second) {
            throw ContractViolation("duplicate nonterminal '" + n + "'");
        }
    }
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const auto& a = actions_[i];
        if (!is_identifier(a) || a == "eps") throw ContractViolation("invalid action name '" + a + "'");
        if (!act_index_.emplace(a, Act{static_cast<std::uint32_t>(i)}).second) {
            throw ContractViolation("duplicate action '" + a + "'");
        }
    }
    by_head_.resize(nonterminals_.size());
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        const Rule& rule = rules_[r];
        if (index(rule.head) >= nonterminals_.size() || index(rule.action) >= actions_.size()) {
            throw ContractViolation("rule refers to an undeclared symbol");
        }
        for (Nt b : rule.body) {
            if (index(b) >= nonterminals_.size()) throw ContractViolation("rule body refers to an undeclared nonterminal");
        }
        by_head_[index(rule.head)].push_back(r);
    }
}

std::optional<Nt> BpaSystem::find_nonterminal(std::string_view name) const {
    auto it = nt_index_.find(name);
    if (it == nt_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Act> BpaSystem::find_action(std::string_view name) const {
    auto it = act_index_.find(name);
    if (it == act_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<Nt> BpaSystem::dead_nonterminals() const {
    std::vector<Nt> out;
    for (std::size_t i = 0; i < by_head_.size(); ++i) {
        if (by_head_[i].empty()) out.push_back(Nt{static_cast<std::uint32_t>(i)});
    }
    return out;
}

RegularString BpaSystem::parse_string(std::string_view text) const {
    return parse_regular_string(text, [this](std::string_view s) { return find_nonterminal(s); });
}

Word BpaSystem::parse_word(std::string_view text) const {
    return bpa::parse_word(text, [this](std::string_view s) { return find_nonterminal(s); });
}

std::string BpaSystem::format(const RegularString& x) const {
    return format_regular_string(x, [this](Nt n) { return name(n); });
}

std::string BpaSystem::format(const Word& w) const {
    return format_word(w, [this](Nt n) { return name(n); });
}

namespace {

struct Tok {
    std::string text;
    std::size_t column;
};

std::vector<Tok> split_tokens(std::string_view line) {
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

struct PendingRule {
    Tok head;
    Tok action;
    std::vector<Tok> body;
    std::size_t line;
};

}  // namespace

BpaSystem parse_system(std::string_view text) {
    enum class Section { None, Nonterminals, Actions, Rules };
    Section section = Section::None;
    std::vector<std::string> nts;
    std::vector<std::string> acts;
    std::set<std::string> nt_seen;
    std::set<std::string> act_seen;
    std::vector<PendingRule> pending;
    bool saw_nt = false;
    bool saw_act = false;
    std::size_t nt_line = 1;
    std::size_t act_line = 1;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto c = line.find('#'); c != std::string_view::npos) line = line.substr(0, c);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;

        auto declare = [&](std::vector<Tok>::const_iterator from, std::vector<Tok>::const_iterator to) {
            for (auto it = from; it != to; ++it) {
                if (!is_identifier(it->text)) throw ParseError("invalid identifier '" + it->text + "'", line_no, it->column);
                if (it->text == "eps") throw ParseError("'eps' is reserved", line_no, it->column);
                auto& seen = section == Section::Nonterminals ? nt_seen : act_seen;
                auto& list = section == Section::Nonterminals ? nts : acts;
                if (!seen.insert(it->text).second) throw ParseError("duplicate declaration of '" + it->text + "'", line_no, it->column);
                list.push_back(it->text);
            }
        };

        const std::string& first = tokens.front().text;
        if (first == "nonterminals:" || first == "actions:" || first == "rules:") {
            if (first == "nonterminals:") {
                if (saw_nt) throw ParseError("repeated 'nonterminals:' section", line_no, 1);
                section = Section::Nonterminals;
                saw_nt = true;
                nt_line = line_no;
            } else if (first == "actions:") {
                if (saw_act) throw ParseError("repeated 'actions:' section", line_no, 1);
                section = Section::Actions;
                saw_act = true;
                act_line = line_no;
            } else {
                section = Section::Rules;
                if (tokens.size() > 1) throw ParseError("rules start on the line after 'rules:'", line_no, tokens[1].column);
                continue;
            }
            declare(tokens.begin() + 1, tokens.end());
            continue;
        }
        switch (section) {
            case Section::None:
                throw ParseError("expected a section header ('nonterminals:', 'actions:' or 'rules:')", line_no,
                                 tokens.front().column);
            case Section::Nonterminals:
            case Section::Actions:
                declare(tokens.begin(), tokens.end());
                break;
            case Section::Rules: {
                if (tokens.size() < 4 || tokens[2].text != "->") {
                    std::size_t col = tokens.size() >= 3 ? tokens[2].column : tokens.back().column;
                    throw ParseError("expected '<Head> <action> -> <body>'", line_no, col);
                }
                PendingRule r{tokens[0], tokens[1], {tokens.begin() + 3, tokens.end()}, line_no};
                for (const auto& t : r.body) {
                    if (t.text == "eps" && r.body.size() != 1) throw ParseError("'eps' must stand alone", line_no, t.column);
                }
                pending.push_back(std::move(r));
                break;
            }
        }
    }

    std::map<std::string, Nt, std::less<>> nt_ids;
    std::map<std::string, Act, std::less<>> act_ids;
    for (std::size_t i = 0; i < nts.size(); ++i) nt_ids.emplace(nts[i], Nt{static_cast<std::uint32_t>(i)});
    for (std::size_t i = 0; i < acts.size(); ++i) act_ids.emplace(acts[i], Act{static_cast<std::uint32_t>(i)});

    auto nt_of = [&](const Tok& t, std::size_t line) {
        auto it = nt_ids.find(t.text);
        if (it == nt_ids.end()) throw ParseError("undeclared nonterminal '" + t.text + "'", line, t.column);
        return it->second;
    };

    std::vector<Rule> rules;
    for (const auto& p : pending) {
        Rule r;
        r.head = nt_of(p.head, p.line);
        auto a = act_ids.find(p.action.text);
        if (a == act_ids.end()) throw ParseError("undeclared action '" + p.action.text + "'", p.line, p.action.column);
        r.action = a->second;
        if (!(p.body.size() == 1 && p.body[0].text == "eps")) {
            for (const auto& t : p.body) r.body.push_back(nt_of(t, p.line));
        }
        rules.push_back(std::move(r));
    }
    if (nts.empty()) throw ParseError("empty nonterminal set", nt_line, 1);
    if (acts.empty()) throw ParseError("empty action set", act_line, 1);
    return BpaSystem(std::move(nts), std::move(acts), std::move(rules));
}

std::string serialize_system(const BpaSystem& system) {
    std::ostringstream os;
    os << "nonterminals:";
    for (const auto& n : system.nonterminal_names()) os << ' ' << n;
    os << "\nactions:";
    for (const auto& a : system.action_names()) os << ' ' << a;
    os << "\nrules:\n";
    for (const auto& r : system.rules()) {
        os << system.name(r.head) << ' ' << system.name(r.action) << " -> " << system.format(r.body) << '\n';
    }
    return os.str();
}

void validate(const BpaSystem& system) {
    if (system.nonterminal_count() == 0) throw ValidationError("the nonterminal set is empty");
    if (system.action_count() == 0) throw ValidationError("the action set is empty");
    auto dead = system.dead_nonterminals();
    if (!dead.empty()) {
        std::string msg = "dead nonterminals (no rule):";
        for (Nt n : dead) msg += " " + system.name(n);
        throw ValidationError(msg + " (use dead-completion first)");
    }
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
    auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
    if (!used(base)) return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!used(candidate)) return candidate;
    }
}

BpaSystem complete_dead(const BpaSystem& system) {
    auto dead = system.dead_nonterminals();
    if (dead.empty()) return system;
    std::vector<std::string> nts = system.nonterminal_names();
    std::vector<std::string> acts = system.action_names();
    std::vector<Rule> rules = system.rules();
    const Nt d_nt{static_cast<std::uint32_t>(nts.size())};
    const Act d_act{static_cast<std::uint32_t>(acts.size())};
    nts.push_back(fresh_name("D", nts));
    acts.push_back(fresh_name("d", acts));
    for (Nt n : dead) rules.push_back({n, d_act, {n}});
    rules.push_back({d_nt, d_act, {d_nt}});
    return BpaSystem(std::move(nts), std::move(acts), std::move(rules));
}

NormTable compute_norms(const BpaSystem& system) {
    const std::size_t n = system.nonterminal_count();
    std::vector<ExtNat> norms(n, ExtNat::omega());
    std::vector<bool> finished(n, false);
    for (;;) {
        std::optional<BigNat> best;
        std::size_t best_nt = n;
        for (std::size_t a = 0; a < n; ++a) {
            if (finished[a]) continue;
            for (std::size_t r : system.rules_of(Nt{static_cast<std::uint32_t>(a)})) {
                const Rule& rule = system.rules()[r];
                BigNat m = 0;
                bool ok = true;
                for (Nt b : rule.body) {
                    if (!finished[index(b)]) {
                        ok = false;
                        break;
                    }
                    m += norms[index(b)].value();
                }
                if (ok && (!best || m < *best)) {
                    best = m;
                    best_nt = a;
                }
            }
        }
        if (!best) break;
        norms[best_nt] = ExtNat(*best + 1);
        finished[best_nt] = true;
    }
    return NormTable(std::move(norms));
}

SystemConstants constants(const BpaSystem& system, const NormTable& norms) {
    SystemConstants c;
    for (std::size_t a = 0; a < norms.size(); ++a) {
        const ExtNat& v = norms[Nt{static_cast<std::uint32_t>(a)}];
        if (v.is_finite() && v.value() > c.max_norm) c.max_norm = v.value();
    }
    for (const Rule& r : system.rules()) {
        ExtNat body = norms.of(r.body);
        if (body.is_finite() && body.value() > c.max_rhs_norm) c.max_rhs_norm = body.value();
        BigNat size = norms.normed_prefix(r.body);
        if (size > c.max_rhs_size) c.max_rhs_size = size;
    }
    const BigNat nn = BigNat(system.nonterminal_count()) * system.nonterminal_count();
    c.cycle_bound = (2 * c.max_norm + nn * c.max_rhs_norm + c.max_rhs_size) * (1 + c.max_rhs_size);
    return c;
}

AnalyzedSystem::AnalyzedSystem(BpaSystem system) : data_(std::make_shared<Data>()) {
    validate(system);
    data_->norms = compute_norms(system);
    data_->constants = bpa::constants(system, data_->norms);
    data_->system = std::move(system);
}

BpaSystem chain_system(std::size_t k) {
    if (k == 0) throw ContractViolation("chain_system needs k >= 1");
    std::vector<std::string> nts;
    for (std::size_t i = 1; i <= k; ++i) nts.push_back("A" + std::to_string(i));
    std::vector<Rule> rules;
    for (std::size_t i = k; i >= 2; --i) {
        Nt prev{static_cast<std::uint32_t>(i - 2)};
        rules.push_back({Nt{static_cast<std::uint32_t>(i - 1)}, Act{0}, {prev, prev}});
    }
    rules.push_back({Nt{0}, Act{0}, {}});
    return BpaSystem(std::move(nts), {"a"}, std::move(rules));
}

}  // namespace bpa
