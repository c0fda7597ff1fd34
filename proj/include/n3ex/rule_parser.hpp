#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "n3ex/diagnostics.hpp"
#include "n3ex/rules.hpp"
#include "n3ex/text_format.hpp"

namespace n3ex {

namespace detail {

enum class ErlTok {
    Ident,
    LParen,
    RParen,
    Comma,
    Arrow,
    Dot,
    AtPrefix,
    IriRef,
    PName,
    Literal,
    UVar,
    EVar,
    NullRef,
    End
};

struct ErlToken {
    ErlTok kind;
    std::string text;
    std::string prefix;
    SourceSpan span;
};

class ErlLexer {
public:
    explicit ErlLexer(std::string_view src) : src_(src) {}

    ErlToken next() {
        skip_trivia();
        ErlToken tok;
        tok.span = {pos_, pos_, line_, col_};
        if (pos_ >= src_.size()) {
            tok.kind = ErlTok::End;
            return tok;
        }
        char c = src_[pos_];
        switch (c) {
            case '(': advance(); tok.kind = ErlTok::LParen; break;
            case ')': advance(); tok.kind = ErlTok::RParen; break;
            case ',': advance(); tok.kind = ErlTok::Comma; break;
            case '.': advance(); tok.kind = ErlTok::Dot; break;
            case '-':
                advance();
                if (pos_ >= src_.size() || src_[pos_] != '>') fail(tok.span, "expected '>' after '-'");
                advance();
                tok.kind = ErlTok::Arrow;
                break;
            case '@': {
                advance();
                std::string word = read_while(is_name_char);
                if (word != "prefix") fail(tok.span, "unknown directive '@" + word + "'");
                tok.kind = ErlTok::AtPrefix;
                break;
            }
            case '<': {
                advance();
                std::string iri;
                while (pos_ < src_.size() && src_[pos_] != '>') {
                    char d = src_[pos_];
                    if (d == '\n' || d == '<' || d == '"') fail(tok.span, "invalid character in IRI");
                    iri.push_back(d);
                    advance();
                }
                if (pos_ >= src_.size()) fail(tok.span, "unterminated IRI");
                advance();
                if (iri.empty()) fail(tok.span, "empty IRI");
                tok.kind = ErlTok::IriRef;
                tok.text = std::move(iri);
                break;
            }
            case '"': tok.kind = ErlTok::Literal; tok.text = read_literal(tok.span); break;
            case '?': {
                advance();
                std::string name = read_while(is_name_char);
                if (name.empty()) fail(tok.span, "expected variable name after '?'");
                tok.kind = ErlTok::UVar;
                tok.text = std::move(name);
                break;
            }
            case '!': {
                advance();
                std::string name = read_while(is_name_char);
                if (name.empty()) fail(tok.span, "expected variable name after '!'");
                tok.kind = ErlTok::EVar;
                tok.text = std::move(name);
                break;
            }
            case '_': {
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == ':') {
                    advance();
                    advance();
                    std::string name = read_while(is_name_char);
                    if (name.empty()) fail(tok.span, "expected null label after '_:'");
                    tok.kind = ErlTok::NullRef;
                    tok.text = std::move(name);
                    break;
                }
                [[fallthrough]];
            }
            default: {
                if (!is_name_start(c)) fail(tok.span, std::string("unexpected character '") + c + "'");
                std::string word = read_while(is_name_char);
                if (pos_ < src_.size() && src_[pos_] == ':') {
                    advance();
                    tok.kind = ErlTok::PName;
                    tok.prefix = std::move(word);
                    tok.text = read_while(is_local_char);
                } else {
                    tok.kind = ErlTok::Ident;
                    tok.text = std::move(word);
                }
                break;
            }
            case ':': {
                advance();
                tok.kind = ErlTok::PName;
                tok.prefix = "";
                tok.text = read_while(is_local_char);
                break;
            }
        }
        tok.span.end = pos_;
        return tok;
    }

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
            } else if (c == '%') {
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
        advance();
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

class ErlParser {
public:
    explicit ErlParser(std::string_view src) : lex_(src) {
        prefixes_ = default_prefixes();
        tok_ = lex_.next();
    }

    RuleSet parse() {
        RuleSet rs;
        while (tok_.kind != ErlTok::End) {
            if (tok_.kind == ErlTok::AtPrefix) {
                parse_prefix_directive();
                continue;
            }
            parse_statement(rs);
        }
        return rs;
    }

private:
    void bump() { tok_ = lex_.next(); }

    [[noreturn]] void fail(std::string msg, ParseErrorKind kind = ParseErrorKind::Syntactic) const {
        throw ParseError(kind, tok_.span, std::move(msg));
    }

    void expect(ErlTok kind, const char* what) {
        if (tok_.kind != kind) fail(std::string("expected ") + what);
        bump();
    }

    void parse_prefix_directive() {
        bump();
        if (tok_.kind != ErlTok::PName || !tok_.text.empty())
            fail("expected prefix name ending in ':'");
        std::string prefix = tok_.prefix;
        bump();
        if (tok_.kind != ErlTok::IriRef) fail("expected IRI in prefix directive");
        std::string ns = tok_.text;
        bump();
        expect(ErlTok::Dot, "'.' after prefix directive");
        prefixes_.add(std::move(prefix), std::move(ns));
    }

    RuleTerm parse_term(bool& saw_null) {
        ErlToken t = tok_;
        switch (t.kind) {
            case ErlTok::UVar: bump(); return RuleTerm::variable(t.text, Quantifier::Universal);
            case ErlTok::EVar: bump(); return RuleTerm::variable(t.text, Quantifier::Existential);
            case ErlTok::NullRef: {
                bump();
                saw_null = true;
                auto [it, inserted] = null_ids_.emplace(t.text, null_ids_.size() + 1);
                return RuleTerm::null(it->second);
            }
            case ErlTok::IriRef: bump(); return RuleTerm::constant(t.text);
            case ErlTok::Literal: bump(); return RuleTerm::constant("\"" + t.text + "\"");
            case ErlTok::PName: {
                const std::string* ns = prefixes_.expand(t.prefix);
                if (!ns)
                    throw ParseError(ParseErrorKind::Syntactic, t.span,
                                     "unknown prefix '" + t.prefix + ":'");
                bump();
                return RuleTerm::constant(*ns + t.text);
            }
            default: fail("expected a term");
        }
    }

    Atom parse_atom(bool& saw_null) {
        if (tok_.kind != ErlTok::Ident) fail("expected predicate name");
        std::string pred_name = tok_.text;
        SourceSpan pred_span = tok_.span;
        bump();
        expect(ErlTok::LParen, "'(' after predicate name");
        std::vector<RuleTerm> args;
        args.push_back(parse_term(saw_null));
        while (tok_.kind == ErlTok::Comma) {
            bump();
            args.push_back(parse_term(saw_null));
        }
        expect(ErlTok::RParen, "')' closing the argument list");

        Symbol pred = intern_symbol(pred_name);
        if (pred_name == tr_predicate_name() && args.size() != 3)
            throw ParseError(ParseErrorKind::Syntactic, pred_span,
                             "predicate tr has arity 3, got " + std::to_string(args.size()));
        auto [it, inserted] = arities_.emplace(pred, args.size());
        if (!inserted && it->second != args.size())
            throw ParseError(ParseErrorKind::Syntactic, pred_span,
                             "arity mismatch for predicate " + pred_name + ": declared " +
                                 std::to_string(it->second) + ", got " +
                                 std::to_string(args.size()));
        return Atom{pred, std::move(args)};
    }

    std::vector<Atom> parse_atom_list(bool& saw_null) {
        std::vector<Atom> atoms;
        atoms.push_back(parse_atom(saw_null));
        while (tok_.kind == ErlTok::Comma) {
            bump();
            atoms.push_back(parse_atom(saw_null));
        }
        return atoms;
    }

    void parse_statement(RuleSet& rs) {
        SourceSpan start = tok_.span;
        bool body_nulls = false, head_nulls = false;
        std::vector<Atom> first;
        if (tok_.kind != ErlTok::Arrow) first = parse_atom_list(body_nulls);

        if (tok_.kind == ErlTok::Arrow) {
            bump();
            std::vector<Atom> head = parse_atom_list(head_nulls);
            expect(ErlTok::Dot, "'.' after rule");
            if (body_nulls || head_nulls)
                throw ParseError(ParseErrorKind::Syntactic, start,
                                 "labeled nulls may not occur in rules");
            try {
                rs.rules.push_back(ExRule::make(std::move(first), std::move(head)));
            } catch (const std::invalid_argument& e) {
                throw ParseError(ParseErrorKind::WellFormedness, start, e.what());
            }
        } else {
            expect(ErlTok::Dot, "'.' after fact");
            for (Atom& a : first) {
                if (!a.is_ground())
                    throw ParseError(ParseErrorKind::Syntactic, start,
                                     "facts must be ground (no variables)");
                rs.facts.push_back(std::move(a));
            }
        }
    }

    ErlLexer lex_;
    ErlToken tok_;
    PrefixMap prefixes_;
    std::map<Symbol, std::size_t> arities_;
    std::map<std::string, std::uint64_t> null_ids_;
};

}  // namespace detail

inline RuleSet parse_rules(std::string_view text) { return detail::ErlParser(text).parse(); }

// --- serialization -----------------------------------------------------------

namespace detail {

inline std::string render_rule_term(const RuleTerm& t, const PrefixMap& prefixes) {
    switch (t.kind()) {
        case RuleTerm::Kind::Constant: {
            const std::string& text = t.text();
            if (!text.empty() && text[0] == '"')
                return escape_literal(std::string_view(text).substr(1, text.size() - 2));
            if (auto c = prefixes.compact(text)) return *c;
            return "<" + text + ">";
        }
        case RuleTerm::Kind::Variable:
            return (t.quantifier() == Quantifier::Universal ? "?" : "!") + t.text();
        case RuleTerm::Kind::Null: return "_:n" + std::to_string(t.null_id());
    }
    return "";
}

inline std::string render_rule_atom(const Atom& a, const PrefixMap& prefixes) {
    std::string out = symbol_text(a.predicate) + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += render_rule_term(a.args[i], prefixes);
    }
    out += ")";
    return out;
}

inline std::string render_atom_list(const std::vector<Atom>& atoms, const PrefixMap& prefixes) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += render_rule_atom(atoms[i], prefixes);
    }
    return out;
}

inline void mark_used_prefixes(const RuleTerm& t, const PrefixMap& prefixes,
                               std::set<std::string>& used) {
    if (!t.is_constant() || t.is_literal_constant()) return;
    if (auto c = prefixes.compact(t.text())) used.insert(c->substr(0, c->find(':')));
}

}  // namespace detail

inline std::string serialize_rule(const ExRule& r, const PrefixMap& prefixes = default_prefixes()) {
    if (r.is_fact()) return detail::render_atom_list(r.head(), prefixes) + " .";
    std::string out;
    if (!r.body().empty()) out += detail::render_atom_list(r.body(), prefixes) + " ";
    out += "-> " + detail::render_atom_list(r.head(), prefixes) + " .";
    return out;
}

inline std::string serialize_rules(const RuleSet& rs,
                                   const PrefixMap& prefixes = default_prefixes()) {
    std::set<std::string> used;
    auto mark_atoms = [&](const std::vector<Atom>& atoms) {
        for (const Atom& a : atoms)
            for (const RuleTerm& t : a.args) detail::mark_used_prefixes(t, prefixes, used);
    };
    for (const ExRule& r : rs.rules) {
        mark_atoms(r.body());
        mark_atoms(r.head());
    }
    mark_atoms(rs.facts);

    std::string out;
    for (const auto& [prefix, ns] : prefixes.entries())
        if (used.count(prefix)) out += "@prefix " + prefix + ": <" + ns + "> .\n";
    for (const Atom& a : rs.facts) out += detail::render_rule_atom(a, prefixes) + " .\n";
    for (const ExRule& r : rs.rules) out += serialize_rule(r, prefixes) + "\n";
    return out;
}

}  // namespace n3ex
