#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "n3ex/formula.hpp"
#include "n3ex/pnf.hpp"
#include "n3ex/rule_parser.hpp"
#include "n3ex/rules.hpp"
#include "n3ex/term.hpp"

namespace n3ex {

class TranslationError : public std::runtime_error {
public:
    explicit TranslationError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Term map between the two languages: universals and blanks become
/// variables (keeping the quantifier as a tag), constants carry over
/// unchanged.
inline RuleTerm term_translate(const Term& t) {
    switch (t.kind()) {
        case TermKind::Constant: return RuleTerm::constant(t.text());
        case TermKind::Universal: return RuleTerm::variable(t.text(), Quantifier::Universal);
        case TermKind::Existential: return RuleTerm::variable(t.text(), Quantifier::Existential);
    }
    throw TranslationError("unreachable term kind");
}

inline Term term_untranslate(const RuleTerm& t) {
    switch (t.kind()) {
        case RuleTerm::Kind::Constant: return Term::constant(t.text());
        case RuleTerm::Kind::Variable:
            return t.quantifier() == Quantifier::Universal ? Term::universal(t.text())
                                                           : Term::existential(t.text());
        case RuleTerm::Kind::Null: return Term::existential("n" + std::to_string(t.null_id()));
    }
    throw TranslationError("unreachable term kind");
}

inline Atom triple_to_tr_atom(const Triple& t) {
    return Atom{tr_predicate(),
                {term_translate(t.subject), term_translate(t.predicate), term_translate(t.object)}};
}

/// An atomic piece becomes one body-empty rule whose head conjoins the
/// tr-translations of its triples; the piece's blanks become the rule's
/// existential variables.
inline ExRule translate_atomic_piece(const Formula& piece) {
    std::vector<Atom> head;
    head.reserve(piece.size());
    for (const Statement& s : piece.statements()) {
        const Triple* t = std::get_if<Triple>(&s);
        if (!t) throw TranslationError("atomic piece may contain only atomic formulae");
        head.push_back(triple_to_tr_atom(*t));
    }
    return ExRule::make({}, std::move(head));
}

/// A normalized rule piece becomes one rule; body universals form the
/// frontier, head blanks the existentials.
inline ExRule translate_rule_piece(const Implication& r) {
    if (!free_existentials(r.body).empty())
        throw TranslationError("rule piece is not normalized: existential variable in the body");
    std::vector<Atom> body, head;
    body.reserve(r.body.size());
    head.reserve(r.head.size());
    for (const Triple& t : r.body) body.push_back(triple_to_tr_atom(t));
    for (const Triple& t : r.head) head.push_back(triple_to_tr_atom(t));
    return ExRule::make(std::move(body), std::move(head));
}

enum class FactsPolicy {
    IntoDatabase,  // ground atomic pieces land in the fact section
    AsRules        // every piece becomes a rule, facts as body-empty rules
};

/// Translates a piece set to a rule set, the union of the per-piece
/// translations. With FactsPolicy::IntoDatabase, ground atomic pieces are
/// stored as plain facts instead of body-empty rules; both readings are
/// equivalent, the fact form feeds the reasoner directly.
inline RuleSet translate_set(const PieceSet& pnf, FactsPolicy policy = FactsPolicy::IntoDatabase) {
    RuleSet out;
    for (const Piece& p : pnf.pieces) {
        if (p.kind == PieceKind::Rule) {
            out.rules.push_back(translate_rule_piece(std::get<Implication>(p.formula.statements()[0])));
            continue;
        }
        if (policy == FactsPolicy::IntoDatabase && free_existentials(p.formula).empty()) {
            for (const Statement& s : p.formula.statements())
                out.facts.push_back(triple_to_tr_atom(std::get<Triple>(s)));
        } else {
            out.rules.push_back(translate_atomic_piece(p.formula));
        }
    }
    return out;
}

/// Convenience pipeline: normalize then translate.
inline RuleSet translate_formula(const Formula& f, FactsPolicy policy = FactsPolicy::IntoDatabase) {
    return translate_set(to_pnf(f), policy);
}

// --- inverse direction --------------------------------------------------------

/// Canonical triple view of an atom: tr/3 maps positionally; a binary atom
/// p(a,b) becomes "a :p b" and a unary atom p(a) becomes "a rdf:type :p",
/// minting the predicate IRI under the example namespace.
inline Triple atom_to_triple(const Atom& a) {
    const std::string& pred_name = symbol_text(a.predicate);
    if (a.predicate == tr_predicate()) {
        if (a.args.size() != 3) throw TranslationError("predicate tr requires arity 3");
        return {term_untranslate(a.args[0]), term_untranslate(a.args[1]),
                term_untranslate(a.args[2])};
    }
    if (a.args.size() == 1)
        return {term_untranslate(a.args[0]), Term::iri(rdf_type_iri()),
                Term::iri(example_ns() + pred_name)};
    if (a.args.size() == 2)
        return {term_untranslate(a.args[0]), Term::iri(example_ns() + pred_name),
                term_untranslate(a.args[1])};
    throw TranslationError("predicate " + pred_name + "/" + std::to_string(a.args.size()) +
                           " has no triple form (only tr/3, binary and unary atoms do)");
}

/// Maps a rule set back to a formula: facts become atomic statements, rules
/// become implications, body-empty rules become blank-node conjunctions.
/// Existentials of body-empty rules are relabeled apart so that distinct
/// rules never share document blanks.
inline Formula inverse_translate(const RuleSet& rs) {
    std::vector<Statement> stmts;
    int fresh_blank = 0;
    for (const Atom& a : rs.facts) stmts.push_back(atom_to_triple(a));
    for (const ExRule& r : rs.rules) {
        if (r.has_empty_body()) {
            Substitution rename;
            for (Symbol v : r.existentials())
                rename.bind(Term::existential(symbol_text(v)),
                            Term::existential("b" + std::to_string(fresh_blank++)));
            for (const Atom& a : r.head()) stmts.push_back(apply(atom_to_triple(a), rename));
        } else {
            Expression body, head;
            for (const Atom& a : r.body()) body.push_back(atom_to_triple(a));
            for (const Atom& a : r.head()) head.push_back(atom_to_triple(a));
            stmts.push_back(Implication{std::move(body), std::move(head)});
        }
    }
    return Formula::from_statements(std::move(stmts));
}

/// Rewrites every unary/binary atom of a rule set into its tr-encoding,
/// leaving tr-atoms unchanged. Variables and nulls carry over untouched, so
/// this works on rules and on instance-level facts alike.
inline RuleSet tr_encode(const RuleSet& rs) {
    auto encode_atom = [](const Atom& a) -> Atom {
        if (a.predicate == tr_predicate()) {
            if (a.args.size() != 3) throw TranslationError("predicate tr requires arity 3");
            return a;
        }
        const std::string& pred_name = symbol_text(a.predicate);
        if (a.args.size() == 1)
            return Atom{tr_predicate(),
                        {a.args[0], RuleTerm::constant(rdf_type_iri()),
                         RuleTerm::constant(example_ns() + pred_name)}};
        if (a.args.size() == 2)
            return Atom{tr_predicate(),
                        {a.args[0], RuleTerm::constant(example_ns() + pred_name), a.args[1]}};
        throw TranslationError("predicate " + pred_name + "/" + std::to_string(a.args.size()) +
                               " has no triple form (only tr/3, binary and unary atoms do)");
    };
    RuleSet out;
    out.facts.reserve(rs.facts.size());
    for (const Atom& a : rs.facts) out.facts.push_back(encode_atom(a));
    out.rules.reserve(rs.rules.size());
    for (const ExRule& r : rs.rules) {
        std::vector<Atom> body, head;
        for (const Atom& a : r.body()) body.push_back(encode_atom(a));
        for (const Atom& a : r.head()) head.push_back(encode_atom(a));
        out.rules.push_back(ExRule::make(std::move(body), std::move(head)));
    }
    return out;
}

}  // namespace n3ex
