#include "picalc/parse.hpp"

#include <cctype>
#include <set>
#include <stdexcept>

namespace picalc {

namespace {

enum class Tok : unsigned char { Ident, Number, Private, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text, int first_line) {
    std::vector<Token> out;
    int line = first_line;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    int last_line = line, last_col = col;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t start = i;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            t.kind = Tok::Ident;
            t.text = std::string(text.substr(start, j - start));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            t.kind = Tok::Number;
            t.text = std::string(text.substr(start, j - start));
            advance(j - i);
        } else if (c == '{') {
            // `{tags}p'''` is a private name, any other brace is punctuation
            std::size_t j = i + 1;
            while (j < text.size() && (text[j] == 'e' || text[j] == 'l' || text[j] == 'r'))
                ++j;
            if (j + 1 < text.size() && text[j] == '}' && text[j + 1] == 'p' &&
                (j + 2 >= text.size() || !ident_char(text[j + 2]))) {
                j += 2;
                while (j < text.size() && text[j] == '\'')
                    ++j;
                t.kind = Tok::Private;
                t.text = std::string(text.substr(start, j - start));
                advance(j - i);
            } else {
                t.kind = Tok::Punct;
                t.text = "{";
                advance(1);
            }
        } else {
            static const char* two[] = {"||", "->", "=>", ":="};
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            for (const char* p : two)
                if (text.substr(i, 2) == p)
                    t.text = p;
            if (t.text.size() == 1 && std::string_view("!?()[]{}.,|+='<>/\\:").find(c) == std::string_view::npos)
                throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
            advance(t.text.size());
        }
        out.push_back(std::move(t));
        last_line = line;
        last_col = col;
    }
    // report end of input right after the last token, not after trailing blanks
    Token end;
    end.line = last_line;
    end.column = last_col;
    out.push_back(end);
    return out;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"tau", "nu", "sum"};
    return k;
}

class Parser {
public:
    Parser(std::string_view text, int first_line) : toks_(lex(text, first_line)) {}

    // ---- token helpers
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(std::string_view punct, std::size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == punct;
    }
    bool at_word(std::string_view word, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == word;
    }
    bool at_end() const { return peek().kind == Tok::End; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw SyntaxError(msg, t.line, t.column);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

    std::string describe(const Token& t) const { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

    void expect(std::string_view punct) {
        if (!at(punct))
            fail("expected '" + std::string(punct) + "', found " + describe(peek()));
        next();
    }

    void expect_end() {
        if (!at_end())
            fail("unexpected " + describe(peek()));
    }

    Name name() {
        const Token& t = peek();
        if (t.kind == Tok::Private) {
            next();
            std::size_t close = t.text.find('}');
            int primes = static_cast<int>(t.text.size() - close - 2);
            return Name::priv(t.text.substr(1, close - 1), primes);
        }
        if (t.kind != Tok::Ident || keywords().contains(t.text))
            fail("expected a name, found " + describe(t));
        next();
        if (looks_like_spare(t.text)) {
            if (t.text.size() > 10 || t.text[1] == '0')
                fail("malformed spare name " + t.text, t);
            return Name::spare(std::stoi(t.text.substr(1)));
        }
        return Name::pub(t.text);
    }

    std::vector<Name> name_list(std::string_view close) {
        std::vector<Name> out;
        if (at(close))
            return out;
        out.push_back(name());
        while (at(",")) {
            next();
            out.push_back(name());
        }
        return out;
    }

    // `[x=y]` at the current position
    bool at_match() const {
        return at("[") && (peek(1).kind == Tok::Ident || peek(1).kind == Tok::Private) && at("=", 2);
    }

    MatchSeq::Entry match() {
        expect("[");
        Name a = name();
        expect("=");
        Name b = name();
        expect("]");
        return {a, b};
    }

    // ---- relabellings
    Relabelling relabelling() {
        const Token& t = peek();
        if (at_word("map") && at(":", 1)) {
            next();
            next();
            Relabelling::Pairs pairs;
            if (!at("]")) {
                do {
                    if (at(","))
                        next();
                    Name a = name();
                    expect("->");
                    pairs.emplace_back(a, name());
                } while (at(","));
            }
            try {
                return Relabelling::finite_map(std::move(pairs));
            } catch (const std::invalid_argument& e) {
                fail(e.what(), t);
            }
        }
        if (at_word("shift") && peek(1).kind == Tok::Ident) {
            next();
            std::string base = next().text;
            int step = 1;
            if (peek().kind == Tok::Number)
                step = std::stoi(next().text);
            return Relabelling::shift(base, step);
        }
        if (t.kind == Tok::Ident && (at("]", 1) || at_end_after(1))) {
            if (t.text == "l" || t.text == "r" || t.text == "e") {
                next();
                return t.text == "l" ? Relabelling::tag_l() : t.text == "r" ? Relabelling::tag_r() : Relabelling::tag_e();
            }
            if (t.text.size() > 2 && t.text.compare(0, 2, "p_") == 0) {
                next();
                std::string rest = t.text.substr(2);
                return Relabelling::pnu(looks_like_spare(rest) ? Name::spare(std::stoi(rest.substr(1)))
                                                               : Name::pub(rest));
            }
        }
        std::vector<Name> targets = name_list("/");
        expect("/");
        std::vector<Name> sources = name_list("]");
        try {
            return Relabelling::subs(std::move(targets), std::move(sources));
        } catch (const std::invalid_argument& e) {
            fail(e.what(), t);
        }
    }

    bool at_end_after(std::size_t k) const { return peek(k).kind == Tok::End; }

    // ---- actions: `tau`, `M x!y`, `M x?y`, `x!`, `x?`, `M x!(y)`, `M x(y)`
    Action action(bool allow_bound) {
        std::vector<MatchSeq::Entry> m;
        while (at_match())
            m.push_back(match());
        MatchSeq guard(std::move(m));
        if (at_word("tau")) {
            next();
            return Action::silent(std::move(guard));
        }
        if (at("'")) {
            // 'a is a classic output, 'x<y> one carrying an object
            next();
            Name subject = name();
            std::optional<Name> obj;
            if (at("<")) {
                next();
                obj = name();
                expect(">");
            }
            return Action::free_out(std::move(guard), std::move(subject), std::move(obj));
        }
        Name subject = name();
        if (!allow_bound && at("."))
            return Action::free_in(std::move(guard), std::move(subject), std::nullopt);
        if (at("!") || at("?")) {
            bool out = next().text == "!";
            if (allow_bound && out && at("(")) {
                next();
                Name obj = name();
                expect(")");
                return Action::bound_out(std::move(guard), std::move(subject), std::move(obj));
            }
            std::optional<Name> obj;
            if (peek().kind == Tok::Ident || peek().kind == Tok::Private)
                obj = name();
            return out ? Action::free_out(std::move(guard), std::move(subject), std::move(obj))
                       : Action::free_in(std::move(guard), std::move(subject), std::move(obj));
        }
        if (allow_bound && at("(")) {
            next();
            Name obj = name();
            expect(")");
            return Action::bound_in(std::move(guard), std::move(subject), std::move(obj));
        }
        fail("expected '!' or '?' after " + subject.str());
    }

    // ---- π terms
    Pi pi_sum(Mode mode) {
        Pi p = pi_par(mode);
        while (at("+")) {
            next();
            p = pi::sum(p, pi_par(mode));
        }
        return p;
    }

    Pi pi_par(Mode mode) {
        Pi p = pi_unary(mode);
        while (at("|")) {
            next();
            p = pi::par(p, pi_unary(mode));
        }
        return p;
    }

    Name pi_name() {
        const Token& t = peek();
        Name n = name();
        if (!n.is_plain())
            fail("π terms use public names only, found " + n.str(), t);
        return n;
    }

    // True at `x(y).`: an input prefix rather than an identifier call.
    bool at_input() const {
        return peek().kind == Tok::Ident && at("(", 1) && peek(2).kind == Tok::Ident && at(")", 3) && at(".", 4);
    }

    Pi pi_unary(Mode mode) {
        const Token& start = peek();
        if (at_match()) {
            if (mode == Mode::Strict) {
                auto [a, b] = match();
                if (!a.is_plain() || !b.is_plain())
                    fail("π terms use public names only", start);
                return pi::match(a, b, pi_unary(mode));
            }
            std::vector<MatchSeq::Entry> m;
            while (at_match()) {
                auto e = match();
                if (!e.first.is_plain() || !e.second.is_plain())
                    fail("π terms use public names only", start);
                m.push_back(e);
            }
            if (!at_prefix())
                throw SemanticsError(std::to_string(start.line) + ":" + std::to_string(start.column) +
                                     ": the match operator is not available with implicit matching; "
                                     "a matching sequence must guard a prefix");
            return pi_prefix(MatchSeq(std::move(m)), mode);
        }
        if (at_word("nu")) {
            next();
            Name y = pi_name();
            expect(".");
            return pi::nu(y, pi_unary(mode));
        }
        if (at_prefix())
            return pi_prefix({}, mode);
        return pi_atom(mode);
    }

    bool at_prefix() const {
        if (at_word("tau"))
            return true;
        if (at("'"))
            return true;
        if (peek().kind == Tok::Ident && !keywords().contains(peek().text) && at("!", 1))
            return true;
        return at_input();
    }

    Pi pi_prefix(MatchSeq m, Mode mode) {
        if (at_word("tau")) {
            next();
            expect(".");
            return pi::tau(std::move(m), pi_unary(mode));
        }
        if (at("'")) {
            next();
            Name x = pi_name();
            expect("<");
            Name y = pi_name();
            expect(">");
            expect(".");
            return pi::out(std::move(m), x, y, pi_unary(mode));
        }
        Name x = pi_name();
        if (at("!")) {
            next();
            Name y = pi_name();
            expect(".");
            return pi::out(std::move(m), x, y, pi_unary(mode));
        }
        expect("(");
        Name y = pi_name();
        expect(")");
        expect(".");
        return pi::in(std::move(m), x, y, pi_unary(mode));
    }

    Pi pi_atom(Mode mode) {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            if (t.text != "0")
                fail("expected 0, found " + t.text);
            next();
            return pi::nil();
        }
        if (at("(")) {
            next();
            Pi p = pi_sum(mode);
            expect(")");
            return p;
        }
        if (t.kind == Tok::Ident && !keywords().contains(t.text) && !looks_like_spare(t.text)) {
            next();
            std::vector<Name> args;
            if (at("(")) {
                next();
                while (!at(")")) {
                    if (!args.empty())
                        expect(",");
                    args.push_back(pi_name());
                }
                expect(")");
            }
            return pi::ide(t.text, std::move(args));
        }
        fail("expected a process, found " + describe(t));
    }

    // ---- CCS terms
    Ccs ccs_sum() {
        std::vector<Ccs> branches{ccs_par()};
        while (at("+")) {
            next();
            branches.push_back(ccs_par());
        }
        return branches.size() == 1 ? branches.front() : ccs::sum(std::move(branches));
    }

    Ccs ccs_par() {
        Ccs e = ccs_unary();
        while (at("||") || at("|")) {
            bool gamma = next().text == "||";
            e = ccs::par(e, ccs_unary(), gamma);
        }
        return e;
    }

    Ccs ccs_unary() {
        const Token& start = peek();
        if (at_match() && at("=>", 5)) {
            auto [a, b] = match();
            next();
            return ccs::trigger(a, b, ccs_unary());
        }
        if (at_word("sum") && !at("{", 1))
            return input_sum(start);
        bool classic = (peek().kind == Tok::Ident || peek().kind == Tok::Private) && !keywords().contains(peek().text) &&
                       at(".", 1);
        if (at_match() || at_word("tau") || at("'") || classic ||
            (peek().kind != Tok::Number && !at("(") && (at("!", 1) || at("?", 1)))) {
            Action a = action(false);
            expect(".");
            return ccs::prefix(std::move(a), ccs_unary());
        }
        return ccs_postfix();
    }

    Ccs input_sum(const Token& start) {
        next();
        Name z = name();
        bool public_only = false;
        if (at(":")) {
            next();
            if (!at_word("N"))
                fail("expected N after ':'");
            next();
            public_only = true;
        }
        expect(".");
        std::vector<MatchSeq::Entry> m;
        while (at_match())
            m.push_back(match());
        Name x = name();
        expect("?");
        const Token& obj = peek();
        if (name() != z)
            fail("input sum must receive its summation variable " + z.str(), obj);
        expect(".");
        Ccs body = ccs_unary();
        MatchSeq guard(std::move(m));
        if (guard.mentions(z) || x == z)
            fail("summation variable " + z.str() + " used outside the received object", start);
        if (body->kind == CcsNode::Kind::Relabel && body->rel.pairs().size() == 1 &&
            body->rel.pairs().front().second == z &&
            (body->rel.kind() == Relabelling::Kind::SubS || body->rel.kind() == Relabelling::Kind::FiniteMap)) {
            const Ccs& inner = body->child();
            if (all_names(inner).contains(z))
                fail("summation variable " + z.str() + " occurs in the summand body", start);
            Instantiation inst =
                body->rel.kind() == Relabelling::Kind::SubS ? Instantiation::Spare : Instantiation::Plain;
            return ccs::input_sum(std::move(guard), std::move(x), body->rel.pairs().front().first, inner, inst,
                                  public_only);
        }
        return ccs::input_sum(std::move(guard), std::move(x), z, body, Instantiation::Spare, public_only);
    }

    Ccs ccs_postfix() {
        Ccs e = ccs_atom();
        for (;;) {
            if (at("[") && !at_match()) {
                next();
                e = ccs::relabel(e, relabelling());
                expect("]");
            } else if (at("\\")) {
                next();
                expect("{");
                std::vector<Name> names = name_list("}");
                expect("}");
                e = ccs::restrict(e, NameSet(names.begin(), names.end()));
            } else {
                return e;
            }
        }
    }

    Ccs ccs_atom() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            if (t.text != "0")
                fail("expected 0, found " + t.text);
            next();
            return ccs::nil();
        }
        if (at("(")) {
            next();
            Ccs e = ccs_sum();
            expect(")");
            return e;
        }
        if (at_word("sum")) {
            next();
            expect("{");
            std::vector<Ccs> branches;
            while (!at("}")) {
                if (!branches.empty())
                    expect(",");
                branches.push_back(ccs_sum());
            }
            expect("}");
            return ccs::sum(std::move(branches));
        }
        if (t.kind == Tok::Ident && !keywords().contains(t.text) && !looks_like_spare(t.text)) {
            next();
            return ccs::ide(t.text);
        }
        fail("expected a process, found " + describe(t));
    }

    // ---- definitions
    std::string def_head(std::vector<Name>* params) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || keywords().contains(t.text))
            fail("expected an agent identifier, found " + describe(t));
        next();
        if (params && at("(")) {
            next();
            *params = name_list(")");
            expect(")");
        }
        expect(":=");
        return t.text;
    }

    const Token& here() const { return peek(); }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool is_definition_line(std::string_view line) {
    std::size_t hash = line.find('#');
    return line.substr(0, hash).find(":=") != std::string_view::npos;
}

struct Split {
    std::string term;                               // non-definition lines, blanked definitions
    std::vector<std::pair<int, std::string>> defs;  // (line, text)
};

Split split_lines(std::string_view text) {
    Split out;
    int line = 1;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find('\n', i);
        if (j == std::string_view::npos)
            j = text.size();
        std::string_view l = text.substr(i, j - i);
        if (is_definition_line(l)) {
            out.defs.emplace_back(line, std::string(l));
        } else {
            out.term += l;
        }
        out.term += '\n';
        ++line;
        i = j + 1;
    }
    return out;
}

void add_pi_defs(std::string_view text, Mode mode, DefEnv& env) {
    for (auto& [line, def] : split_lines(text).defs) {
        Parser p(def, line);
        const Token& head = p.here();
        std::vector<Name> params;
        std::string ident = p.def_head(&params);
        Pi body = p.pi_sum(mode);
        p.expect_end();
        std::string where = std::to_string(head.line) + ":" + std::to_string(head.column) + ": ";
        NameSet ps;
        for (const auto& x : params) {
            if (!x.is_plain())
                throw SemanticsError(where + "parameters must be public names");
            if (!ps.insert(x).second)
                throw SemanticsError(where + "repeated parameter " + x.str() + " in " + ident);
        }
        for (const auto& n : free_names(body))
            if (!ps.contains(n))
                throw SemanticsError(where + "free name " + n.str() + " of " + ident + " is not a parameter");
        auto key = std::make_pair(ident, params.size());
        if (env.pi.contains(key))
            throw SemanticsError(where + "redefinition of " + ident + "/" + std::to_string(params.size()));
        env.pi.emplace(key, PiDefinition{ident, params, body});
    }
}

void add_ccs_defs(std::string_view text, DefEnv& env) {
    for (auto& [line, def] : split_lines(text).defs) {
        Parser p(def, line);
        const Token& head = p.here();
        std::string ident = p.def_head(nullptr);
        Ccs body = p.ccs_sum();
        p.expect_end();
        if (env.ccs.contains(ident))
            throw SemanticsError(std::to_string(head.line) + ":" + std::to_string(head.column) +
                                 ": redefinition of " + ident);
        env.ccs.emplace(ident, body);
    }
}

void check_pi_term(const Pi& p, const DefEnv& env, Mode mode) {
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return;
    case K::Prefix:
        if (mode == Mode::Strict && !p->m.empty())
            throw SemanticsError("matching sequence on a prefix needs implicit matching: " + print(p));
        break;
    case K::Match:
        if (mode == Mode::Im)
            throw SemanticsError("the match operator is not available with implicit matching: " + print(p));
        break;
    case K::Ide:
        env.pi_def(p->ident, p->args.size());
        return;
    default:
        break;
    }
    for (const auto& n : all_names(p))
        if (!n.is_plain())
            throw SemanticsError("π terms use public names only, found " + n.str());
    if (p->left)
        check_pi_term(p->left, env, mode);
    if (p->right)
        check_pi_term(p->right, env, mode);
}

void check_ccs_term(const Ccs& e, const DefEnv& env) {
    if (e->kind == CcsNode::Kind::Ide)
        env.ccs_def(e->ident);
    for (const auto& c : e->children)
        check_ccs_term(c, env);
}

} // namespace

void check_pi(const Pi& term, const DefEnv& env, Mode mode) {
    check_pi_term(term, env, mode);
    for (const auto& [key, def] : env.pi)
        check_pi_term(def.body, env, mode);
}

void check_ccs(const Ccs& term, const DefEnv& env) {
    check_ccs_term(term, env);
    for (const auto& [ident, body] : env.ccs)
        check_ccs_term(body, env);
}

PiProgram parse_pi(std::string_view text, Mode mode, std::string_view defs_text) {
    PiProgram out;
    add_pi_defs(defs_text, mode, out.env);
    add_pi_defs(text, mode, out.env);
    Split split = split_lines(text);
    Parser p(split.term, 1);
    if (p.at_end())
        p.fail("empty input: expected a process");
    out.term = p.pi_sum(mode);
    p.expect_end();
    check_pi(out.term, out.env, mode);
    return out;
}

CcsProgram parse_ccs(std::string_view text, std::string_view defs_text) {
    CcsProgram out;
    add_ccs_defs(defs_text, out.env);
    add_ccs_defs(text, out.env);
    Split split = split_lines(text);
    Parser p(split.term, 1);
    if (p.at_end())
        p.fail("empty input: expected a process");
    out.term = p.ccs_sum();
    p.expect_end();
    check_ccs(out.term, out.env);
    return out;
}

Name parse_name(std::string_view text) {
    Parser p(text, 1);
    Name n = p.name();
    p.expect_end();
    return n;
}

Action parse_action(std::string_view text) {
    Parser p(text, 1);
    Action a = p.action(true);
    p.expect_end();
    return a;
}

Relabelling parse_relabelling(std::string_view text) {
    Parser p(text, 1);
    Relabelling r = p.relabelling();
    p.expect_end();
    return r;
}

} // namespace picalc
