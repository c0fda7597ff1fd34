#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "n3ex/term.hpp"

namespace n3ex {

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Conjunction of triple expressions, as found in rule bodies and heads.
using Expression = std::vector<Triple>;

struct Implication {
    Expression body;
    Expression head;

    friend bool operator==(const Implication&, const Implication&) = default;
    friend auto operator<=>(const Implication&, const Implication&) = default;
};

using Statement = std::variant<Triple, Implication>;

inline bool is_triple(const Statement& s) { return std::holds_alternative<Triple>(s); }
inline bool is_implication(const Statement& s) { return std::holds_alternative<Implication>(s); }

/// A formula of the fragment. Conjunctions are kept flattened as an
/// order-preserving statement list; a single statement is an atomic formula
/// or an implication, an empty list is the trivially true document.
class Formula {
public:
    Formula() = default;

    static Formula atomic(Triple t) {
        validate_atomic(t);
        Formula f;
        f.stmts_.push_back(std::move(t));
        return f;
    }

    static Formula implication(Implication r) {
        validate_implication(r);
        Formula f;
        f.stmts_.push_back(std::move(r));
        return f;
    }

    static Formula from_statements(std::vector<Statement> stmts) {
        for (const Statement& s : stmts) {
            if (const Triple* t = std::get_if<Triple>(&s)) validate_atomic(*t);
            else validate_implication(std::get<Implication>(s));
        }
        Formula f;
        f.stmts_ = std::move(stmts);
        return f;
    }

    /// Flattening conjunction; statement order is preserved left to right.
    static Formula conjunction(const Formula& a, const Formula& b) {
        Formula f = a;
        f.stmts_.insert(f.stmts_.end(), b.stmts_.begin(), b.stmts_.end());
        return f;
    }

    void append(const Formula& g) {
        stmts_.insert(stmts_.end(), g.stmts_.begin(), g.stmts_.end());
    }

    const std::vector<Statement>& statements() const { return stmts_; }
    bool empty() const { return stmts_.empty(); }
    std::size_t size() const { return stmts_.size(); }

    bool is_atomic() const { return stmts_.size() == 1 && is_triple(stmts_[0]); }
    bool is_single_implication() const { return stmts_.size() == 1 && is_implication(stmts_[0]); }

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    static void validate_atomic(const Triple& t) {
        if (t.subject.is_universal() || t.predicate.is_universal() || t.object.is_universal())
            throw std::invalid_argument(
                "universal variables may not occur in atomic formulae outside implications");
    }

    static void validate_implication(const Implication& r) {
        if (r.body.empty() || r.head.empty())
            throw std::invalid_argument("implication body and head must be non-empty");
    }

    std::vector<Statement> stmts_;
};

// --- components -------------------------------------------------------------

/// A component is either a term or a whole rule-part expression; terms nested
/// inside implication bodies/heads are not components of the enclosing
/// formula.
using Component = std::variant<Term, Expression>;

inline void collect_components(const Triple& t, std::set<Component>& out) {
    out.insert(t.subject);
    out.insert(t.predicate);
    out.insert(t.object);
}

inline std::set<Component> components(const Triple& t) {
    std::set<Component> out;
    collect_components(t, out);
    return out;
}

inline std::set<Component> components(const Expression& e) {
    std::set<Component> out;
    for (const Triple& t : e) collect_components(t, out);
    return out;
}

inline std::set<Component> components(const Implication& r) {
    return {Component(r.body), Component(r.head)};
}

inline std::set<Component> components(const Formula& f) {
    std::set<Component> out;
    for (const Statement& s : f.statements()) {
        if (const Triple* t = std::get_if<Triple>(&s)) {
            collect_components(*t, out);
        } else {
            const Implication& r = std::get<Implication>(s);
            out.insert(Component(r.body));
            out.insert(Component(r.head));
        }
    }
    return out;
}

template <typename T>
std::set<Term> term_components(const T& x, TermKind kind) {
    std::set<Term> out;
    for (const Component& c : components(x))
        if (const Term* t = std::get_if<Term>(&c))
            if (t->kind() == kind) out.insert(*t);
    return out;
}

template <typename T>
std::set<Term> free_existentials(const T& x) {
    return term_components(x, TermKind::Existential);
}

template <typename T>
std::set<Term> universals(const T& x) {
    return term_components(x, TermKind::Universal);
}

// --- substitutions ----------------------------------------------------------

/// Finite map from variables (existential or universal) to terms. Applied at
/// component level only: implications are opaque to substitution.
class Substitution {
public:
    Substitution() = default;

    void bind(Term var, Term value) {
        if (!var.is_variable())
            throw std::invalid_argument("substitution domain must contain only variables");
        map_.insert_or_assign(std::move(var), std::move(value));
    }

    const Term* lookup(const Term& t) const {
        auto it = map_.find(t);
        return it == map_.end() ? nullptr : &it->second;
    }

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<Term, Term>& mapping() const { return map_; }

private:
    std::map<Term, Term> map_;
};

inline Term apply(const Term& t, const Substitution& sigma) {
    if (const Term* v = sigma.lookup(t)) return *v;
    return t;
}

inline Triple apply(const Triple& t, const Substitution& sigma) {
    return {apply(t.subject, sigma), apply(t.predicate, sigma), apply(t.object, sigma)};
}

inline Expression apply(const Expression& e, const Substitution& sigma) {
    Expression out;
    out.reserve(e.size());
    for (const Triple& t : e) out.push_back(apply(t, sigma));
    return out;
}

inline Formula apply(const Formula& f, const Substitution& sigma) {
    std::vector<Statement> out;
    out.reserve(f.size());
    for (const Statement& s : f.statements()) {
        if (const Triple* t = std::get_if<Triple>(&s)) out.push_back(apply(*t, sigma));
        else out.push_back(s);  // implications fall under the identity clause
    }
    return Formula::from_statements(std::move(out));
}

// --- well-formedness --------------------------------------------------------

/// A rule is well-formed when its head introduces no universal variable that
/// is absent from the body.
inline bool is_well_formed(const Implication& r) {
    std::set<Term> body_u = universals(r.body);
    for (const Term& u : universals(r.head))
        if (!body_u.count(u)) return false;
    return true;
}

inline bool is_well_formed(const Formula& f) {
    for (const Statement& s : f.statements())
        if (const Implication* r = std::get_if<Implication>(&s))
            if (!is_well_formed(*r)) return false;
    return true;
}

// --- variable inventory -----------------------------------------------------

/// All variable labels occurring anywhere in the formula, including inside
/// rule parts. Used when minting fresh variable names.
inline void collect_labels(const Expression& e, std::set<std::string>& out) {
    for (const Triple& t : e)
        for (const Term* x : {&t.subject, &t.predicate, &t.object})
            if (x->is_variable()) out.insert(x->text());
}

inline std::set<std::string> all_variable_labels(const Formula& f) {
    std::set<std::string> out;
    for (const Statement& s : f.statements()) {
        if (const Triple* t = std::get_if<Triple>(&s)) {
            for (const Term* x : {&t->subject, &t->predicate, &t->object})
                if (x->is_variable()) out.insert(x->text());
        } else {
            const Implication& r = std::get<Implication>(s);
            collect_labels(r.body, out);
            collect_labels(r.head, out);
        }
    }
    return out;
}

inline std::set<std::string> all_variable_labels(const Implication& r) {
    std::set<std::string> out;
    collect_labels(r.body, out);
    collect_labels(r.head, out);
    return out;
}

/// All constants occurring anywhere, including inside rule parts.
inline std::set<Term> all_constants(const Formula& f) {
    std::set<Term> out;
    auto add = [&](const Triple& t) {
        for (const Term* x : {&t.subject, &t.predicate, &t.object})
            if (x->is_constant()) out.insert(*x);
    };
    for (const Statement& s : f.statements()) {
        if (const Triple* t = std::get_if<Triple>(&s)) {
            add(*t);
        } else {
            const Implication& r = std::get<Implication>(s);
            for (const Triple& t : r.body) add(t);
            for (const Triple& t : r.head) add(t);
        }
    }
    return out;
}

// --- piece connectivity helper ----------------------------------------------

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void merge(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Groups statement indices into the finest partition in which any two
/// statements sharing an existential component are together. Groups are
/// ordered by first statement position; within a group, positions ascend.
inline std::vector<std::vector<std::size_t>> group_statements_by_blank(const Formula& f) {
    const auto& stmts = f.statements();
    detail::UnionFind uf(stmts.size());
    std::map<Term, std::size_t> owner;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (const Triple* t = std::get_if<Triple>(&stmts[i])) {
            for (const Term* x : {&t->subject, &t->predicate, &t->object}) {
                if (!x->is_existential()) continue;
                auto [it, inserted] = owner.emplace(*x, i);
                if (!inserted) uf.merge(i, it->second);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    std::vector<std::size_t> root_order;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        std::size_t r = uf.find(i);
        auto [it, inserted] = by_root.emplace(r, std::vector<std::size_t>{});
        if (inserted) root_order.push_back(r);
        it->second.push_back(i);
    }
    // order groups by their first member
    std::vector<std::vector<std::size_t>> groups;
    groups.reserve(by_root.size());
    for (std::size_t r : root_order) groups.push_back(std::move(by_root[r]));
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

// --- structural equivalence -------------------------------------------------
//
// Equality modulo conjunct order and injective variable renaming. Blank nodes
// in top-level triples co-refer document-wide, so their bijection threads
// through the whole match; rule-part variables are local to the part
// (universals to the implication).

namespace detail {

class Bijection {
public:
    bool relate(const std::string& a, const std::string& b) {
        auto f = fwd_.find(a);
        auto r = rev_.find(b);
        if (f == fwd_.end() && r == rev_.end()) {
            fwd_[a] = b;
            rev_[b] = a;
            trail_.push_back(a);
            return true;
        }
        return f != fwd_.end() && r != rev_.end() && f->second == b && r->second == a;
    }
    std::size_t mark() const { return trail_.size(); }
    void rollback(std::size_t m) {
        while (trail_.size() > m) {
            auto a = trail_.back();
            trail_.pop_back();
            auto it = fwd_.find(a);
            rev_.erase(it->second);
            fwd_.erase(it);
        }
    }

private:
    std::map<std::string, std::string> fwd_, rev_;
    std::vector<std::string> trail_;
};

// Variable scopes active while matching one triple: blanks resolve against
// the enclosing scope (document, or the rule part), universals against the
// implication-wide scope (absent at top level).
struct Scopes {
    Bijection* blanks;
    Bijection* universals;
};

inline bool match_term(const Term& a, const Term& b, const Scopes& sc) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Constant: return a.text() == b.text();
        case TermKind::Existential: return sc.blanks->relate(a.text(), b.text());
        case TermKind::Universal:
            return sc.universals && sc.universals->relate(a.text(), b.text());
    }
    return false;
}

inline bool match_triple(const Triple& a, const Triple& b, const Scopes& sc) {
    return match_term(a.subject, b.subject, sc) && match_term(a.predicate, b.predicate, sc) &&
           match_term(a.object, b.object, sc);
}

// Multiset match of two expressions under the given scopes; `k` continues the
// search so choices here can be revisited when later constraints fail.
template <typename K>
bool match_expression(const Expression& a, const Expression& b, const Scopes& sc, std::size_t i,
                      std::vector<bool>& used, K&& k) {
    if (i == a.size()) return k();
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        std::size_t mb = sc.blanks->mark();
        std::size_t mu = sc.universals ? sc.universals->mark() : 0;
        if (match_triple(a[i], b[j], sc)) {
            used[j] = true;
            if (match_expression(a, b, sc, i + 1, used, k)) return true;
            used[j] = false;
        }
        sc.blanks->rollback(mb);
        if (sc.universals) sc.universals->rollback(mu);
    }
    return false;
}

inline bool match_statement(const Statement& a, const Statement& b, Bijection& doc_blanks) {
    if (const Triple* ta = std::get_if<Triple>(&a)) {
        const Triple* tb = std::get_if<Triple>(&b);
        return tb && match_triple(*ta, *tb, {&doc_blanks, nullptr});
    }
    const Implication* ra = std::get_if<Implication>(&a);
    const Implication* rb = std::get_if<Implication>(&b);
    if (!rb || ra->body.size() != rb->body.size() || ra->head.size() != rb->head.size())
        return false;
    // universals span the implication; each rule part scopes its own blanks
    Bijection univ, body_blanks, head_blanks;
    std::vector<bool> used_b(rb->body.size(), false);
    std::vector<bool> used_h(rb->head.size(), false);
    return match_expression(ra->body, rb->body, {&body_blanks, &univ}, 0, used_b, [&] {
        return match_expression(ra->head, rb->head, {&head_blanks, &univ}, 0, used_h,
                                [] { return true; });
    });
}

inline bool match_statements(const std::vector<Statement>& a, const std::vector<Statement>& b,
                             Bijection& blanks, std::size_t i, std::vector<bool>& used) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        std::size_t m = blanks.mark();
        if (match_statement(a[i], b[j], blanks)) {
            used[j] = true;
            if (match_statements(a, b, blanks, i + 1, used)) return true;
            used[j] = false;
        }
        blanks.rollback(m);
    }
    return false;
}

}  // namespace detail

/// Equality modulo conjunct order and injective variable renaming.
inline bool structurally_equivalent(const Formula& f, const Formula& g) {
    if (f.size() != g.size()) return false;
    detail::Bijection blanks;
    std::vector<bool> used(g.size(), false);
    return detail::match_statements(f.statements(), g.statements(), blanks, 0, used);
}

}  // namespace n3ex
