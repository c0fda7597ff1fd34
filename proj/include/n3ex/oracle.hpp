#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "n3ex/diagnostics.hpp"
#include "n3ex/formula.hpp"
#include "n3ex/term.hpp"

namespace n3ex {

/// Herbrand-style interpretation over a finite constant universe: the domain
/// is the universe itself and the predicate function is given directly by a
/// triple set over it.
class FiniteInterpretation {
public:
    explicit FiniteInterpretation(std::vector<Term> universe) : universe_(std::move(universe)) {
        for (std::size_t i = 0; i < universe_.size(); ++i) {
            if (!universe_[i].is_constant())
                throw std::invalid_argument("universe must contain constants only");
            index_.emplace(universe_[i], i);
        }
        if (index_.size() != universe_.size())
            throw std::invalid_argument("universe contains duplicate constants");
    }

    const std::vector<Term>& universe() const { return universe_; }

    std::optional<std::size_t> index_of(const Term& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    void add(const Term& s, const Term& p, const Term& o) {
        triples_.insert({require(s), require(p), require(o)});
    }

    void add_indices(std::size_t s, std::size_t p, std::size_t o) { triples_.insert({s, p, o}); }

    bool has(const Term& s, const Term& p, const Term& o) const {
        auto si = index_of(s), pi = index_of(p), oi = index_of(o);
        if (!si || !pi || !oi) return false;
        return triples_.count({*si, *pi, *oi}) > 0;
    }

    const std::set<std::array<std::size_t, 3>>& triples() const { return triples_; }

private:
    std::size_t require(const Term& t) const {
        auto i = index_of(t);
        if (!i)
            throw std::invalid_argument("constant " + to_display(t) + " is not in the universe");
        return *i;
    }

    std::vector<Term> universe_;
    std::map<Term, std::size_t> index_;
    std::set<std::array<std::size_t, 3>> triples_;
};

namespace detail {

// Enumerates all assignments of `vars` into the universe, building the
// substitution incrementally; stops early when the callback returns true.
template <typename Fn>
bool for_each_assignment(const std::vector<Term>& vars, const std::vector<Term>& universe,
                         Substitution& sigma, std::size_t i, Fn&& fn) {
    if (i == vars.size()) return fn(sigma);
    for (const Term& c : universe) {
        sigma.bind(vars[i], c);
        if (for_each_assignment(vars, universe, sigma, i + 1, fn)) return true;
    }
    return false;
}

inline bool sat(const FiniteInterpretation& m, const Formula& f);

inline bool sat_expression_as_formula(const FiniteInterpretation& m, const Expression& e) {
    std::vector<Statement> stmts(e.begin(), e.end());
    return sat(m, Formula::from_statements(std::move(stmts)));
}

// The satisfaction relation, clause by clause:
//   (1) a formula with existential components holds iff some substitution of
//       them by universe constants makes it hold;
//   (2a) a ground atomic formula holds iff its triple is present;
//   (2b) a conjunction holds iff both conjuncts hold;
//   (2c) an implication holds iff every substitution of its universals that
//        satisfies the body also satisfies the head.
inline bool sat(const FiniteInterpretation& m, const Formula& f) {
    std::set<Term> blanks = free_existentials(f);
    if (!blanks.empty()) {
        std::vector<Term> vars(blanks.begin(), blanks.end());
        Substitution mu;
        return for_each_assignment(vars, m.universe(), mu, 0,
                                   [&](const Substitution& s) { return sat(m, n3ex::apply(f, s)); });
    }
    for (const Statement& st : f.statements()) {
        if (const Triple* t = std::get_if<Triple>(&st)) {
            if (!m.has(t->subject, t->predicate, t->object)) return false;
            continue;
        }
        const Implication& r = std::get<Implication>(st);
        std::set<Term> univ = universals(r.body);
        for (const Term& u : universals(r.head)) univ.insert(u);
        std::vector<Term> vars(univ.begin(), univ.end());
        Substitution sigma;
        bool violated = for_each_assignment(
            vars, m.universe(), sigma, 0, [&](const Substitution& s) {
                return sat_expression_as_formula(m, n3ex::apply(r.body, s)) &&
                       !sat_expression_as_formula(m, n3ex::apply(r.head, s));
            });
        if (violated) return false;
    }
    return true;
}

}  // namespace detail

/// Satisfaction over a finite universe; every constant of the formula must
/// be part of the universe.
inline bool satisfies(const FiniteInterpretation& m, const Formula& f) {
    for (const Term& c : all_constants(f))
        if (!m.index_of(c))
            throw std::invalid_argument("constant " + to_display(c) +
                                        " is not in the interpretation's universe");
    return detail::sat(m, f);
}

// --- equivalence by interpretation enumeration --------------------------------
//
// Satisfaction only ever queries triples obtainable by instantiating the
// formulas' own triple patterns with universe constants, so two formulas
// agree on every interpretation iff they agree on every subset of that
// instantiation closure (the "relevant" triples). The closure is what gets
// enumerated; its size is the budgeted quantity.

namespace detail {

struct SlotSpace {
    std::map<std::array<std::size_t, 3>, std::uint32_t> index;
    std::vector<std::array<std::size_t, 3>> triples;

    std::uint32_t slot(std::array<std::size_t, 3> triple) {
        auto [it, fresh] = index.emplace(triple, static_cast<std::uint32_t>(triples.size()));
        if (fresh) triples.push_back(triple);
        return it->second;
    }
};

using Mask = std::uint64_t;

struct RuleEval {
    // one entry per universal substitution: body alternatives imply head
    // alternatives, each alternative a required-slot mask
    std::vector<std::pair<std::vector<Mask>, std::vector<Mask>>> entries;
};

struct CompiledFormula {
    std::vector<Mask> top_alternatives;  // existential choices for top triples
    std::vector<RuleEval> rules;

    bool eval(Mask m) const {
        bool top = false;
        for (Mask alt : top_alternatives) {
            if ((alt & m) == alt) {
                top = true;
                break;
            }
        }
        if (!top) return false;
        for (const RuleEval& r : rules) {
            for (const auto& [body_alts, head_alts] : r.entries) {
                bool body = false;
                for (Mask alt : body_alts) {
                    if ((alt & m) == alt) {
                        body = true;
                        break;
                    }
                }
                if (!body) continue;
                bool head = false;
                for (Mask alt : head_alts) {
                    if ((alt & m) == alt) {
                        head = true;
                        break;
                    }
                }
                if (!head) return false;
            }
        }
        return true;
    }
};

class EquivalenceCompiler {
public:
    EquivalenceCompiler(const std::vector<Term>& universe, SlotSpace& slots,
                        std::size_t substitution_cap)
        : universe_(universe), slots_(slots), cap_(substitution_cap) {}

    /// Sizes the relevant-triple closure without building masks; stops
    /// counting once `stop_after` slots have been seen.
    void collect_closure(const Formula& f, std::size_t stop_after) {
        auto visit = [&](const Triple& t) {
            if (slots_.triples.size() > stop_after) return;
            std::set<Term> vars_set;
            for (const Term* x : {&t.subject, &t.predicate, &t.object})
                if (x->is_variable()) vars_set.insert(*x);
            std::vector<Term> vars(vars_set.begin(), vars_set.end());
            check_cap(vars.size());
            Substitution mu;
            for_each_assignment(vars, universe_, mu, 0, [&](const Substitution& s) {
                Triple g = n3ex::apply(t, s);
                slots_.slot({index_of(g.subject), index_of(g.predicate), index_of(g.object)});
                return slots_.triples.size() > stop_after;
            });
        };
        for (const Statement& st : f.statements()) {
            if (const Triple* t = std::get_if<Triple>(&st)) {
                visit(*t);
            } else {
                const Implication& r = std::get<Implication>(st);
                for (const Triple& t : r.body) visit(t);
                for (const Triple& t : r.head) visit(t);
            }
        }
    }

    CompiledFormula compile(const Formula& f) {
        CompiledFormula out;

        std::vector<Triple> top;
        std::vector<const Implication*> rules;
        for (const Statement& st : f.statements()) {
            if (const Triple* t = std::get_if<Triple>(&st)) top.push_back(*t);
            else rules.push_back(&std::get<Implication>(st));
        }

        out.top_alternatives = alternatives(top, TermKind::Existential);

        for (const Implication* r : rules) {
            std::set<Term> univ = universals(r->body);
            for (const Term& u : universals(r->head)) univ.insert(u);
            std::vector<Term> vars(univ.begin(), univ.end());
            check_cap(vars.size());

            RuleEval re;
            Substitution sigma;
            for_each_assignment(vars, universe_, sigma, 0, [&](const Substitution& s) {
                std::vector<Triple> body, head;
                for (const Triple& t : r->body) body.push_back(apply(t, s));
                for (const Triple& t : r->head) head.push_back(apply(t, s));
                re.entries.emplace_back(alternatives(body, TermKind::Existential),
                                        alternatives(head, TermKind::Existential));
                return false;
            });
            out.rules.push_back(std::move(re));
        }
        return out;
    }

private:
    // All ways to ground the triples' remaining variables over the universe,
    // each way reduced to the mask of required slots.
    std::vector<Mask> alternatives(const std::vector<Triple>& triples, TermKind kind) {
        std::set<Term> vars_set;
        for (const Triple& t : triples)
            for (const Term* x : {&t.subject, &t.predicate, &t.object})
                if (x->kind() == kind) vars_set.insert(*x);
        std::vector<Term> vars(vars_set.begin(), vars_set.end());
        check_cap(vars.size());

        std::vector<Mask> alts;
        Substitution mu;
        for_each_assignment(vars, universe_, mu, 0, [&](const Substitution& s) {
            Mask mask = 0;
            for (const Triple& t : triples) {
                Triple g = apply(t, s);
                auto si = index_of(g.subject), pi = index_of(g.predicate), oi = index_of(g.object);
                std::uint32_t slot = slots_.slot({si, pi, oi});
                if (slot >= 64) throw BudgetExceeded(slots_.triples.size(), 63);
                mask |= Mask(1) << slot;
            }
            alts.push_back(mask);
            return false;
        });
        std::sort(alts.begin(), alts.end());
        alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
        return alts;
    }

    std::size_t index_of(const Term& t) const {
        for (std::size_t i = 0; i < universe_.size(); ++i)
            if (universe_[i] == t) return i;
        throw std::invalid_argument("constant " + to_display(t) + " is not in the universe");
    }

    void check_cap(std::size_t var_count) const {
        std::size_t total = 1;
        for (std::size_t i = 0; i < var_count; ++i) {
            total *= universe_.size();
            if (total > cap_)
                throw BudgetExceeded(var_count * std::bit_width(universe_.size()),
                                     std::bit_width(cap_));
        }
    }

    const std::vector<Term>& universe_;
    SlotSpace& slots_;
    std::size_t cap_;
};

}  // namespace detail

struct EquivalenceOptions {
    int spare_constants = 2;        // fresh constants beyond those mentioned
    std::size_t budget_bits = 27;   // cap on the relevant-triple count
    std::size_t substitution_cap = 1u << 22;
};

/// Universe for comparing two formulas: every constant either mentions plus
/// the requested number of spare constants (named apart from the mentioned
/// ones). Spares matter: quantifiers can separate formulas only via
/// constants neither one mentions.
inline std::vector<Term> equivalence_universe(const Formula& f, const Formula& g,
                                              int spare_constants = 2) {
    std::set<Term> consts = all_constants(f);
    for (const Term& c : all_constants(g)) consts.insert(c);
    std::vector<Term> universe(consts.begin(), consts.end());
    int minted = 0;
    for (int k = 0; minted < spare_constants; ++k) {
        Term spare = Term::iri(example_ns() + "spare" + std::to_string(k));
        if (consts.count(spare)) continue;
        universe.push_back(spare);
        ++minted;
    }
    return universe;
}

struct EquivalenceResult {
    bool equivalent;
    std::optional<FiniteInterpretation> witness;  // distinguishes f from g
    std::size_t relevant_triples = 0;
};

/// Decides whether the two formulas are satisfied by exactly the same
/// interpretations over the given universe, by enumerating every subset of
/// the relevant-triple closure. Throws BudgetExceeded when the closure is
/// larger than budget_bits.
inline EquivalenceResult n3_equivalent_over(const Formula& f, const Formula& g,
                                            const std::vector<Term>& universe,
                                            std::size_t budget_bits = 27,
                                            std::size_t substitution_cap = 1u << 22) {
    detail::SlotSpace slots;
    detail::EquivalenceCompiler compiler(universe, slots, substitution_cap);

    // size the closure first so overruns are reported with their real extent
    std::size_t effective_budget = budget_bits > 63 ? 63 : budget_bits;
    compiler.collect_closure(f, 1u << 14);
    compiler.collect_closure(g, 1u << 14);
    if (slots.triples.size() > effective_budget)
        throw BudgetExceeded(slots.triples.size(), budget_bits);

    detail::CompiledFormula cf = compiler.compile(f);
    detail::CompiledFormula cg = compiler.compile(g);

    std::size_t n = slots.triples.size();
    if (n > budget_bits || n > 63) throw BudgetExceeded(n, budget_bits);

    EquivalenceResult result{true, std::nullopt, n};
    for (detail::Mask m = 0; m < (detail::Mask(1) << n); ++m) {
        if (cf.eval(m) == cg.eval(m)) continue;
        result.equivalent = false;
        FiniteInterpretation witness(universe);
        for (std::size_t s = 0; s < n; ++s)
            if (m & (detail::Mask(1) << s))
                witness.add_indices(slots.triples[s][0], slots.triples[s][1],
                                    slots.triples[s][2]);
        result.witness = std::move(witness);
        break;
    }
    return result;
}

inline bool n3_equivalent(const Formula& f, const Formula& g,
                          const std::vector<Term>& universe, std::size_t budget_bits = 27) {
    return n3_equivalent_over(f, g, universe, budget_bits).equivalent;
}

inline bool n3_equivalent(const Formula& f, const Formula& g,
                          const EquivalenceOptions& opts = {}) {
    return n3_equivalent_over(f, g, equivalence_universe(f, g, opts.spare_constants),
                              opts.budget_bits, opts.substitution_cap)
        .equivalent;
}

}  // namespace n3ex
