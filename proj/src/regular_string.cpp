#include "bpa/regular_string.hpp"

#include "bpa/errors.hpp"

#include <algorithm>
#include <cctype>

namespace bpa {

Nt RegularString::head() const {
    if (!prefix_.empty()) return prefix_.front();
    if (!cycle_.empty()) return cycle_.front();
    throw ContractViolation("head() of the empty string");
}

RegularString RegularString::tail() const {
    if (!prefix_.empty()) {
        RegularString r;
        r.prefix_.assign(prefix_.begin() + 1, prefix_.end());
        r.cycle_ = cycle_;
        return r;  // dropping a prefix symbol keeps the presentation canonical
    }
    if (cycle_.empty()) throw ContractViolation("tail() of the empty string");
    Word rotated(cycle_.begin() + 1, cycle_.end());
    rotated.push_back(cycle_.front());
    return canonicalize({}, std::move(rotated));
}

Word RegularString::unroll(std::size_t n) const {
    Word out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < prefix_.size()) {
            out.push_back(prefix_[i]);
        } else if (!cycle_.empty()) {
            out.push_back(cycle_[(i - prefix_.size()) % cycle_.size()]);
        } else {
            break;
        }
    }
    return out;
}

RegularString canonicalize(Word prefix, Word cycle) {
    RegularString r;
    if (cycle.empty()) {
        r.prefix_ = std::move(prefix);
        return r;
    }
    // primitive root of the cycle
    const std::size_t n = cycle.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - p];
        if (periodic) {
            cycle.resize(p);
            break;
        }
    }
    // roll the cycle back over matching prefix symbols
    while (!prefix.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
    r.prefix_ = std::move(prefix);
    r.cycle_ = std::move(cycle);
    return r;
}

std::vector<Word> rotations(const Word& word) {
    std::vector<Word> out;
    if (word.empty()) {
        out.emplace_back();
        return out;
    }
    for (std::size_t k = 0; k < word.size(); ++k) {
        Word r(word.begin() + static_cast<std::ptrdiff_t>(k), word.end());
        r.insert(r.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
    }
    return out;
}

RegularString concat(const RegularString& x, const RegularString& y) {
    if (!x.is_finite()) return x;
    if (x.is_empty()) return y;
    Word p = x.prefix();
    p.insert(p.end(), y.prefix().begin(), y.prefix().end());
    return canonicalize(std::move(p), y.cycle());
}

RegularString power_omega(const Word& word) { return canonicalize({}, word); }

RegularString power_omega(const RegularString& x) {
    if (!x.is_finite()) return x;
    return power_omega(x.prefix());
}

RegularString truncate_unnormed(const RegularString& x, const NormTable& norms) {
    const Word& p = x.prefix();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!norms.is_normed(p[i])) {
            if (i + 1 == p.size() && x.is_finite()) return x;
            return RegularString::finite(Word(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i) + 1));
        }
    }
    const Word& c = x.cycle();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (!norms.is_normed(c[j])) {
            Word w = p;
            w.insert(w.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            return RegularString::finite(std::move(w));
        }
    }
    return x;
}

bool is_truncated(const RegularString& x, const NormTable& norms) { return truncate_unnormed(x, norms) == x; }

ExtNat norm_of(const RegularString& x, const NormTable& norms) {
    if (!x.is_finite()) return ExtNat::omega();
    return norms.of(x.prefix());
}

BigNat size_of(const RegularString& x, const NormTable& norms) {
    if (!is_truncated(x, norms)) throw ContractViolation("size_of: string is not truncated after its first unnormed symbol");
    if (x.is_finite()) return norms.normed_prefix(x.prefix());
    return norms.of(x.prefix()).value() + norms.of(x.cycle()).value();
}

BigNat size_of_pair(const RegularString& x, const RegularString& y, const NormTable& norms) {
    BigNat a = size_of(x, norms);
    BigNat b = size_of(y, norms);
    return a < b ? b : a;
}

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize_literal(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '(') {
            out.push_back({"(", i + 1});
            ++i;
        } else if (ch == ')') {
            if (text.substr(i, 3) != ")^w") throw ParseError("expected ')^w' to close a cycle", 1, i + 1);
            out.push_back({")^w", i + 1});
            i += 3;
        } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            out.push_back({std::string(text.substr(i, j - i)), i + 1});
            i = j;
        } else {
            throw ParseError(std::string("unexpected character '") + ch + "'", 1, i + 1);
        }
    }
    return out;
}

Nt resolve_token(const Token& t, const SymbolResolver& resolve) {
    auto id = resolve(t.text);
    if (!id) throw ParseError("undeclared nonterminal '" + t.text + "'", 1, t.column);
    return *id;
}

}  // namespace

Word parse_word(std::string_view text, const SymbolResolver& resolve) {
    auto tokens = tokenize_literal(text);
    if (tokens.size() == 1 && tokens[0].text == "eps") return {};
    Word w;
    for (const auto& t : tokens) {
        if (t.text == "(" || t.text == ")^w") throw ParseError("cycles are not allowed in a finite word", 1, t.column);
        if (t.text == "eps") throw ParseError("'eps' must stand alone", 1, t.column);
        w.push_back(resolve_token(t, resolve));
    }
    return w;
}

RegularString parse_regular_string(std::string_view text, const SymbolResolver& resolve) {
    auto tokens = tokenize_literal(text);
    if (tokens.size() == 1 && tokens[0].text == "eps") return {};
    Word prefix;
    Word cycle;
    std::size_t i = 0;
    for (; i < tokens.size() && tokens[i].text != "("; ++i) {
        if (tokens[i].text == ")^w") throw ParseError("unbalanced ')^w'", 1, tokens[i].column);
        if (tokens[i].text == "eps") throw ParseError("'eps' must stand alone", 1, tokens[i].column);
        prefix.push_back(resolve_token(tokens[i], resolve));
    }
    if (i < tokens.size()) {
        const std::size_t open = tokens[i].column;
        ++i;
        for (; i < tokens.size() && tokens[i].text != ")^w"; ++i) {
            if (tokens[i].text == "(" || tokens[i].text == "eps") {
                throw ParseError("unexpected '" + tokens[i].text + "' inside a cycle", 1, tokens[i].column);
            }
            cycle.push_back(resolve_token(tokens[i], resolve));
        }
        if (i == tokens.size()) throw ParseError("unterminated cycle", 1, open);
        if (cycle.empty()) throw ParseError("empty cycle", 1, open);
        if (i + 1 != tokens.size()) throw ParseError("trailing input after cycle", 1, tokens[i + 1].column);
    }
    if (tokens.empty()) throw ParseError("empty string literal (use 'eps')", 1, 1);
    return canonicalize(std::move(prefix), std::move(cycle));
}

std::string format_word(const Word& w, const std::function<std::string(Nt)>& name) {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += name(w[i]);
    }
    return out;
}

std::string format_regular_string(const RegularString& x, const std::function<std::string(Nt)>& name) {
    if (x.is_finite()) return format_word(x.prefix(), name);
    std::string out;
    for (Nt n : x.prefix()) {
        out += name(n);
        out += ' ';
    }
    out += '(';
    for (std::size_t i = 0; i < x.cycle().size(); ++i) {
        if (i) out += ' ';
        out += name(x.cycle()[i]);
    }
    out += ")^w";
    return out;
}

}  // namespace bpa
