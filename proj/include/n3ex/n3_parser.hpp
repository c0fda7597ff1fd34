#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "n3ex/diagnostics.hpp"
#include "n3ex/formula.hpp"
#include "n3ex/term.hpp"
#include "n3ex/text_format.hpp"

namespace n3ex {

struct ParsedDocument {
    Formula formula;
    PrefixMap prefixes;
};

namespace detail {

enum class N3Tok {
    LBrace,
    RBrace,
    Dot,
    Arrow,
    AtPrefix,
    IriRef,
    PName,
    Literal,
    UVar,
    Blank,
    KeywordA,
    End
};

struct Token {
    N3Tok kind;
    std::string text;    // IRI text, literal content, variable name, local part
    std::string prefix;  // PName only
    SourceSpan span;
};

class N3Lexer {
public:
    explicit N3Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_trivia();
        Token tok;
        tok.span = here();
        if (pos_ >= src_.size()) {
            tok.kind = N3Tok::End;
            return tok;
        }
        char c = src_[pos_];
        switch (c) {
            case '{': advance(); tok.kind = N3Tok::LBrace; break;
            case '}': advance(); tok.kind = N3Tok::RBrace; break;
            case '.': advance(); tok.kind = N3Tok::Dot; break;
            case '=':
                advance();
                if (pos_ >= src_.size() || src_[pos_] != '>')
                    fail(tok.span, "expected '>' after '='");
                advance();
                tok.kind = N3Tok::Arrow;
                break;
            case '@': {
                advance();
                std::string word = read_while(is_name_char);
                if (word != "prefix") fail(tok.span, "unknown directive '@" + word + "'");
                tok.kind = N3Tok::AtPrefix;
                break;
            }
            case '<': {
                advance();
                std::string iri;
                while (pos_ < src_.size() && src_[pos_] != '>') {
                    char d = src_[pos_];
                    if (d == '\n' || d == '<' || d == '"')
                        fail(tok.span, "invalid character in IRI");
                    iri.push_back(d);
                    advance();
                }
                if (pos_ >= src_.size()) fail(tok.span, "unterminated IRI");
                advance();
                if (iri.empty()) fail(tok.span, "empty IRI");
                tok.kind = N3Tok::IriRef;
                tok.text = std::move(iri);
                break;
            }
            case '"': tok.kind = N3Tok::Literal; tok.text = read_literal(tok.span); break;
            case '?': {
                advance();
                std::string name = read_while(is_name_char);
                if (name.empty()) fail(tok.span, "expected variable name after '?'");
                tok.kind = N3Tok::UVar;
                tok.text = std::move(name);
                break;
            }
            case '_': {
                if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != ':')
                    fail(tok.span, "expected ':' after '_'");
                advance();
                advance();
                std::string name = read_while(is_name_char);
                if (name.empty()) fail(tok.span, "expected blank node label after '_:'");
                tok.kind = N3Tok::Blank;
                tok.text = std::move(name);
                break;
            }
            case ':': {
                advance();
                tok.kind = N3Tok::PName;
                tok.prefix = "";
                tok.text = read_while(is_local_char);
                break;
            }
            default: {
                if (!is_name_start(c)) fail(tok.span, std::string("unexpected character '") + c + "'");
                std::string word = read_while(is_name_char);
                if (pos_ < src_.size() && src_[pos_] == ':') {
                    advance();
                    tok.kind = N3Tok::PName;
                    tok.prefix = std::move(word);
                    tok.text = read_while(is_local_char);
                } else if (word == "a") {
                    tok.kind = N3Tok::KeywordA;
                } else {
                    fail(tok.span, "unexpected word '" + word + "'");
                }
                break;
            }
        }
        tok.span.end = pos_;
        return tok;
    }

    SourceSpan here() const { return {pos_, pos_, line_, col_}; }

    [[noreturn]] void fail(SourceSpan span, std::string msg) const {
        span.end = pos_ > span.begin ? pos_ : span.begin + 1;
        throw ParseError(ParseErrorKind::Lexical, span, std::move(msg));
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    template <typename Pred>
    std::string read_while(Pred pred) {
        std::string out;
        while (pos_ < src_.size() && pred(src_[pos_])) {
            out.push_back(src_[pos_]);
            advance();
        }
        return out;
    }

    std::string read_literal(SourceSpan start) {
        advance();  // opening quote
        std::string out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '"') {
                advance();
                return out;
            }
            if (c == '\n') fail(start, "unterminated literal");
            if (c == '\\') {
                advance();
                if (pos_ >= src_.size()) fail(start, "unterminated literal");
                char e = src_[pos_];
                switch (e) {
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    default: fail(start, std::string("unsupported escape '\\") + e + "'");
                }
                advance();
            } else {
                out.push_back(c);
                advance();
            }
        }
        fail(start, "unterminated literal");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// Blank node labels are renamed apart per scope (document vs. each rule
// part) and universals per implication, so every later pass can treat labels
// as globally meaningful. Fresh namespaces: b<k> for blanks, u<k> for
// universals; v<k> stays reserved for normalization.
class N3Parser {
public:
    explicit N3Parser(std::string_view src) : lex_(src) {
        prefixes_ = default_prefixes();
        tok_ = lex_.next();
    }

    ParsedDocument parse() {
        std::vector<Statement> stmts;
        while (tok_.kind != N3Tok::End) {
            if (tok_.kind == N3Tok::AtPrefix) {
                parse_prefix_directive();
            } else if (tok_.kind == N3Tok::LBrace) {
                stmts.push_back(parse_implication());
            } else {
                stmts.push_back(parse_top_triple());
            }
        }
        return {Formula::from_statements(std::move(stmts)), prefixes_};
    }

private:
    struct VarScope {
        std::map<std::string, std::string> blanks;
        std::map<std::string, std::string>* univs = nullptr;  // null at top level
    };

    void bump() { tok_ = lex_.next(); }

    [[noreturn]] void fail(std::string msg) const {
        throw ParseError(ParseErrorKind::Syntactic, tok_.span, std::move(msg));
    }

    void expect(N3Tok kind, const char* what) {
        if (tok_.kind != kind) fail(std::string("expected ") + what);
        bump();
    }

    void parse_prefix_directive() {
        bump();
        if (tok_.kind != N3Tok::PName || !tok_.text.empty())
            fail("expected prefix name ending in ':'");
        std::string prefix = tok_.prefix;
        bump();
        if (tok_.kind != N3Tok::IriRef) fail("expected IRI in prefix directive");
        std::string ns = tok_.text;
        bump();
        expect(N3Tok::Dot, "'.' after prefix directive");
        prefixes_.add(std::move(prefix), std::move(ns));
    }

    Term parse_term(VarScope& scope, bool predicate_position) {
        Token t = tok_;
        switch (t.kind) {
            case N3Tok::IriRef: bump(); return Term::iri(t.text);
            case N3Tok::Literal: bump(); return Term::literal(t.text);
            case N3Tok::KeywordA:
                if (!predicate_position)
                    fail("keyword 'a' is only valid in predicate position");
                bump();
                return Term::iri(rdf_type_iri());
            case N3Tok::PName: {
                const std::string* ns = prefixes_.expand(t.prefix);
                if (!ns)
                    throw ParseError(ParseErrorKind::Syntactic, t.span,
                                     "unknown prefix '" + t.prefix + ":'");
                bump();
                return Term::iri(*ns + t.text);
            }
            case N3Tok::Blank: {
                bump();
                auto [it, inserted] = scope.blanks.emplace(t.text, "");
                if (inserted) it->second = "b" + std::to_string(blank_counter_++);
                return Term::existential(it->second);
            }
            case N3Tok::UVar: {
                if (!scope.univs)
                    throw ParseError(ParseErrorKind::Syntactic, t.span,
                                     "universal variable ?" + t.text +
                                         " is not allowed outside an implication");
                bump();
                auto [it, inserted] = scope.univs->emplace(t.text, "");
                if (inserted) it->second = "u" + std::to_string(universal_counter_++);
                return Term::universal(it->second);
            }
            default: fail("expected a term");
        }
    }

    Triple parse_triple(VarScope& scope) {
        Term s = parse_term(scope, false);
        Term p = parse_term(scope, true);
        Term o = parse_term(scope, false);
        return {std::move(s), std::move(p), std::move(o)};
    }

    Statement parse_top_triple() {
        VarScope scope{{}, nullptr};
        scope.blanks = std::move(doc_blanks_);
        Triple t = parse_triple(scope);
        doc_blanks_ = std::move(scope.blanks);
        expect(N3Tok::Dot, "'.' after statement");
        return t;
    }

    // One rule part: triples separated by '.', optional trailing '.'.
    // Records the surface name and span of each universal for diagnostics.
    Expression parse_expression(std::map<std::string, std::string>& univs,
                                std::vector<std::pair<std::string, SourceSpan>>& surface_univs) {
        VarScope scope{{}, &univs};
        auto term = [&](bool pred_pos) {
            if (tok_.kind == N3Tok::UVar) surface_univs.emplace_back(tok_.text, tok_.span);
            return parse_term(scope, pred_pos);
        };
        Expression expr;
        SourceSpan open = tok_.span;
        while (tok_.kind != N3Tok::RBrace) {
            if (tok_.kind == N3Tok::End) fail("unterminated rule part");
            Term s = term(false);
            Term p = term(true);
            Term o = term(false);
            expr.push_back({std::move(s), std::move(p), std::move(o)});
            if (tok_.kind == N3Tok::Dot) bump();
            else break;
        }
        if (tok_.kind != N3Tok::RBrace) fail("expected '}' after rule part");
        if (expr.empty())
            throw ParseError(ParseErrorKind::Syntactic, open, "rule part must not be empty");
        bump();
        return expr;
    }

    Statement parse_implication() {
        SourceSpan start = tok_.span;
        bump();  // '{'
        std::map<std::string, std::string> univs;
        std::vector<std::pair<std::string, SourceSpan>> body_univs, head_univs;
        Expression body = parse_expression(univs, body_univs);
        expect(N3Tok::Arrow, "'=>' between rule body and head");
        expect(N3Tok::LBrace, "'{' starting rule head");
        Expression head = parse_expression(univs, head_univs);
        expect(N3Tok::Dot, "'.' after implication");
        (void)start;

        std::set<std::string> in_body;
        for (const auto& [name, span] : body_univs) in_body.insert(name);
        for (const auto& [name, span] : head_univs) {
            if (!in_body.count(name))
                throw ParseError(ParseErrorKind::WellFormedness, span,
                                 "universal variable ?" + name +
                                     " occurs in the rule head but not in the body");
        }
        return Implication{std::move(body), std::move(head)};
    }

    N3Lexer lex_;
    Token tok_;
    PrefixMap prefixes_;
    std::map<std::string, std::string> doc_blanks_;
    int blank_counter_ = 0;
    int universal_counter_ = 0;
};

}  // namespace detail

inline ParsedDocument parse_n3_document(std::string_view text) {
    return detail::N3Parser(text).parse();
}

inline Formula parse_n3(std::string_view text) { return parse_n3_document(text).formula; }

// --- serialization -----------------------------------------------------------

namespace detail {

inline std::string render_n3_term(const Term& t, const PrefixMap& prefixes,
                                  bool predicate_position) {
    switch (t.kind()) {
        case TermKind::Constant:
            if (predicate_position && t.text() == rdf_type_iri()) return "a";
            return render_constant(t, prefixes);
        case TermKind::Existential: return "_:" + t.text();
        case TermKind::Universal: return "?" + t.text();
    }
    return "";
}

inline std::string render_n3_triple(const Triple& t, const PrefixMap& prefixes) {
    return render_n3_term(t.subject, prefixes, false) + " " +
           render_n3_term(t.predicate, prefixes, true) + " " +
           render_n3_term(t.object, prefixes, false);
}

inline std::string render_expression(const Expression& e, const PrefixMap& prefixes) {
    std::string out = "{";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ". ";
        out += render_n3_triple(e[i], prefixes);
    }
    out += "}";
    return out;
}

inline void mark_used_prefixes(const Term& t, const PrefixMap& prefixes,
                               std::set<std::string>& used, bool predicate_position) {
    if (!t.is_iri()) return;
    if (predicate_position && t.text() == rdf_type_iri()) return;
    if (auto c = prefixes.compact(t.text())) used.insert(c->substr(0, c->find(':')));
}

}  // namespace detail

inline std::string serialize_n3_statement(const Statement& s, const PrefixMap& prefixes) {
    if (const Triple* t = std::get_if<Triple>(&s))
        return detail::render_n3_triple(*t, prefixes) + " .";
    const Implication& r = std::get<Implication>(s);
    return detail::render_expression(r.body, prefixes) + " => " +
           detail::render_expression(r.head, prefixes) + " .";
}

inline std::string serialize_n3(const Formula& f, const PrefixMap& prefixes = default_prefixes()) {
    std::set<std::string> used;
    auto mark_triple = [&](const Triple& t) {
        detail::mark_used_prefixes(t.subject, prefixes, used, false);
        detail::mark_used_prefixes(t.predicate, prefixes, used, true);
        detail::mark_used_prefixes(t.object, prefixes, used, false);
    };
    for (const Statement& s : f.statements()) {
        if (const Triple* t = std::get_if<Triple>(&s)) {
            mark_triple(*t);
        } else {
            const Implication& r = std::get<Implication>(s);
            for (const Triple& t : r.body) mark_triple(t);
            for (const Triple& t : r.head) mark_triple(t);
        }
    }
    std::string out;
    for (const auto& [prefix, ns] : prefixes.entries())
        if (used.count(prefix)) out += "@prefix " + prefix + ": <" + ns + "> .\n";
    for (const Statement& s : f.statements()) out += serialize_n3_statement(s, prefixes) + "\n";
    return out;
}

}  // namespace n3ex
