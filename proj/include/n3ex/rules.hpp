#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "n3ex/symbol_table.hpp"

namespace n3ex {

enum class Quantifier { Universal, Existential };

/// Term of the rule language: a constant (canonical text, interned), a
/// variable carrying its quantifier tag, or a labeled null. Nulls occur only
/// in instances and ingested facts, never inside rules.
class RuleTerm {
public:
    enum class Kind { Constant, Variable, Null };

    static RuleTerm constant(std::string_view canonical) {
        return RuleTerm(Kind::Constant, intern_symbol(canonical), Quantifier::Universal, 0);
    }
    static RuleTerm constant_symbol(Symbol s) {
        return RuleTerm(Kind::Constant, s, Quantifier::Universal, 0);
    }
    static RuleTerm variable(std::string_view label, Quantifier q) {
        return RuleTerm(Kind::Variable, intern_symbol(label), q, 0);
    }
    static RuleTerm null(std::uint64_t id) {
        return RuleTerm(Kind::Null, 0, Quantifier::Universal, id);
    }

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    bool is_variable() const { return kind_ == Kind::Variable; }
    bool is_null() const { return kind_ == Kind::Null; }

    Symbol symbol() const { return sym_; }
    const std::string& text() const { return symbol_text(sym_); }
    Quantifier quantifier() const { return quant_; }
    std::uint64_t null_id() const { return null_id_; }

    bool is_literal_constant() const {
        return is_constant() && !text().empty() && text()[0] == '"';
    }

    friend bool operator==(const RuleTerm& a, const RuleTerm& b) {
        return a.kind_ == b.kind_ && a.sym_ == b.sym_ && a.null_id_ == b.null_id_ &&
               (a.kind_ != Kind::Variable || a.quant_ == b.quant_);
    }
    friend bool operator<(const RuleTerm& a, const RuleTerm& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
        if (a.sym_ != b.sym_) return a.sym_ < b.sym_;
        return a.null_id_ < b.null_id_;
    }

private:
    RuleTerm(Kind kind, Symbol sym, Quantifier quant, std::uint64_t null_id)
        : kind_(kind), sym_(sym), quant_(quant), null_id_(null_id) {}

    Kind kind_;
    Symbol sym_;
    Quantifier quant_;
    std::uint64_t null_id_;
};

inline const std::string& tr_predicate_name() {
    static const std::string name = "tr";
    return name;
}
inline Symbol tr_predicate() { return intern_symbol(tr_predicate_name()); }

struct Atom {
    Symbol predicate;
    std::vector<RuleTerm> args;

    bool is_ground() const {
        return std::all_of(args.begin(), args.end(),
                           [](const RuleTerm& t) { return !t.is_variable(); });
    }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
};

inline Atom make_atom(std::string_view predicate, std::vector<RuleTerm> args) {
    return Atom{intern_symbol(predicate), std::move(args)};
}

/// Existential rule: body and head atom conjunctions. The frontier is the
/// set of variables shared between body and head; existential variables are
/// the head-only ones. Construction validates the shape:
///   - body variables are universally quantified,
///   - every universal in the head occurs in the body (safety),
///   - head-only variables carry the existential tag,
///   - nulls appear nowhere.
class ExRule {
public:
    static ExRule make(std::vector<Atom> body, std::vector<Atom> head) {
        if (head.empty()) throw std::invalid_argument("rule head must not be empty");
        std::set<Symbol> body_vars;
        for (const Atom& a : body) {
            for (const RuleTerm& t : a.args) {
                if (t.is_null()) throw std::invalid_argument("nulls may not occur in rules");
                if (!t.is_variable()) continue;
                if (t.quantifier() != Quantifier::Universal)
                    throw std::invalid_argument("existential variable !" + t.text() +
                                                " may not occur in a rule body");
                body_vars.insert(t.symbol());
            }
        }
        std::set<Symbol> frontier, existentials;
        for (const Atom& a : head) {
            for (const RuleTerm& t : a.args) {
                if (t.is_null()) throw std::invalid_argument("nulls may not occur in rules");
                if (!t.is_variable()) continue;
                if (t.quantifier() == Quantifier::Universal) {
                    if (!body_vars.count(t.symbol()))
                        throw std::invalid_argument("universal variable ?" + t.text() +
                                                    " occurs in the head but not in the body");
                    frontier.insert(t.symbol());
                } else {
                    if (body_vars.count(t.symbol()))
                        throw std::invalid_argument("variable " + t.text() +
                                                    " used both universally and existentially");
                    existentials.insert(t.symbol());
                }
            }
        }
        ExRule r;
        r.body_ = std::move(body);
        r.head_ = std::move(head);
        r.frontier_.assign(frontier.begin(), frontier.end());
        r.existentials_.assign(existentials.begin(), existentials.end());
        return r;
    }

    const std::vector<Atom>& body() const { return body_; }
    const std::vector<Atom>& head() const { return head_; }
    const std::vector<Symbol>& frontier() const { return frontier_; }
    const std::vector<Symbol>& existentials() const { return existentials_; }

    bool has_empty_body() const { return body_.empty(); }
    bool is_fact() const { return body_.empty() && existentials_.empty(); }

private:
    ExRule() = default;

    std::vector<Atom> body_, head_;
    std::vector<Symbol> frontier_, existentials_;
};

/// Rules plus the ground facts that accompany them. Facts may also be kept
/// as body-empty rules; both readings mean the same thing.
struct RuleSet {
    std::vector<ExRule> rules;
    std::vector<Atom> facts;  // ground atoms; nulls allowed only via instance I/O

    std::size_t rule_count() const { return rules.size(); }
    std::size_t fact_count() const { return facts.size(); }
};

// --- structural comparison up to variable renaming ---------------------------

namespace detail {

inline bool match_rule_terms(const RuleTerm& a, const RuleTerm& b,
                             std::map<Symbol, Symbol>& fwd, std::map<Symbol, Symbol>& rev) {
    if (a.kind() != b.kind()) return false;
    if (a.is_constant()) return a.symbol() == b.symbol();
    if (a.is_null()) return a.null_id() == b.null_id();
    if (a.quantifier() != b.quantifier()) return false;
    auto f = fwd.find(a.symbol());
    auto r = rev.find(b.symbol());
    if (f == fwd.end() && r == rev.end()) {
        fwd[a.symbol()] = b.symbol();
        rev[b.symbol()] = a.symbol();
        return true;
    }
    return f != fwd.end() && r != rev.end() && f->second == b.symbol() && r->second == a.symbol();
}

inline bool match_atoms_from(const std::vector<Atom>& a, const std::vector<Atom>& b,
                             std::map<Symbol, Symbol>& fwd, std::map<Symbol, Symbol>& rev,
                             std::size_t i, std::vector<bool>& used, const std::vector<Atom>& a2,
                             const std::vector<Atom>& b2) {
    if (i == a.size()) {
        if (&a == &a2) return true;  // already matching the second list
        std::vector<bool> used2(b2.size(), false);
        return match_atoms_from(a2, b2, fwd, rev, 0, used2, a2, b2);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        if (a[i].predicate != b[j].predicate || a[i].args.size() != b[j].args.size()) continue;
        std::map<Symbol, Symbol> fwd2 = fwd, rev2 = rev;
        bool ok = true;
        for (std::size_t k = 0; ok && k < a[i].args.size(); ++k)
            ok = match_rule_terms(a[i].args[k], b[j].args[k], fwd2, rev2);
        if (!ok) continue;
        used[j] = true;
        std::swap(fwd, fwd2);
        std::swap(rev, rev2);
        if (match_atoms_from(a, b, fwd, rev, i + 1, used, a2, b2)) return true;
        std::swap(fwd, fwd2);
        std::swap(rev, rev2);
        used[j] = false;
    }
    return false;
}

}  // namespace detail

/// Rule equality modulo variable renaming; atom order within body and head
/// is immaterial.
inline bool rules_structurally_equal(const ExRule& a, const ExRule& b) {
    if (a.body().size() != b.body().size() || a.head().size() != b.head().size()) return false;
    std::map<Symbol, Symbol> fwd, rev;
    std::vector<bool> used(b.body().size(), false);
    return detail::match_atoms_from(a.body(), b.body(), fwd, rev, 0, used, a.head(), b.head());
}

/// Rule-set equality modulo renaming and rule/fact order.
inline bool rulesets_structurally_equal(const RuleSet& a, const RuleSet& b) {
    if (a.rules.size() != b.rules.size() || a.facts.size() != b.facts.size()) return false;
    std::vector<bool> used(b.rules.size(), false);
    for (const ExRule& ra : a.rules) {
        bool found = false;
        for (std::size_t j = 0; !found && j < b.rules.size(); ++j) {
            if (used[j]) continue;
            if (rules_structurally_equal(ra, b.rules[j])) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    std::vector<bool> used_f(b.facts.size(), false);
    for (const Atom& fa : a.facts) {
        bool found = false;
        for (std::size_t j = 0; !found && j < b.facts.size(); ++j) {
            if (used_f[j]) continue;
            if (fa == b.facts[j]) {
                used_f[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace n3ex
