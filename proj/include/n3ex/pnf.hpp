#pragma once

#include <set>
#include <string>
#include <vector>

#include "n3ex/formula.hpp"

namespace n3ex {

enum class PieceKind { Atomic, Rule };

struct Piece {
    Formula formula;
    PieceKind kind;
};

struct PieceSet {
    std::vector<Piece> pieces;

    /// Conjunction of all pieces, in piece order. Pieces share no blank
    /// nodes, so the conjunction means the same as the set.
    Formula union_formula() const {
        Formula f;
        for (const Piece& p : pieces) f.append(p.formula);
        return f;
    }
};

/// Finest split of the top-level conjunction such that conjuncts sharing an
/// existential component stay together. Implications carry no term
/// components, so each one forms its own piece.
inline std::vector<Formula> split_pieces(const Formula& f) {
    std::vector<Formula> out;
    for (const auto& group : group_statements_by_blank(f)) {
        std::vector<Statement> stmts;
        stmts.reserve(group.size());
        for (std::size_t i : group) stmts.push_back(f.statements()[i]);
        out.push_back(Formula::from_statements(std::move(stmts)));
    }
    return out;
}

namespace detail {

inline std::string fresh_universal_label(const std::set<std::string>& avoid, int& counter) {
    for (;;) {
        std::string candidate = "v" + std::to_string(counter++);
        if (!avoid.count(candidate)) return candidate;
    }
}

inline Implication eliminate_body_existentials(const Implication& r,
                                               const std::set<std::string>& avoid, int& counter) {
    Substitution sigma;
    for (const Term& blank : free_existentials(r.body))
        sigma.bind(blank, Term::universal(fresh_universal_label(avoid, counter)));
    if (sigma.empty()) return r;
    return Implication{n3ex::apply(r.body, sigma), r.head};
}

}  // namespace detail

/// Replaces every existential variable of the body by a globally fresh
/// universal (injectively); the head is left untouched. Fresh names come
/// from the reserved v<k> namespace, skipping any label already used in the
/// rule.
inline Implication eliminate_body_existentials(const Implication& r) {
    std::set<std::string> avoid = all_variable_labels(r);
    int counter = 0;
    return detail::eliminate_body_existentials(r, avoid, counter);
}

/// Piece normal form: maximal piece split, then body-existential removal in
/// every rule piece. Output size stays linear in the input.
inline PieceSet to_pnf(const Formula& f) {
    std::set<std::string> avoid = all_variable_labels(f);
    int counter = 0;
    PieceSet out;
    for (Formula& piece : split_pieces(f)) {
        if (piece.is_single_implication()) {
            const Implication& r = std::get<Implication>(piece.statements()[0]);
            out.pieces.push_back(
                {Formula::implication(detail::eliminate_body_existentials(r, avoid, counter)),
                 PieceKind::Rule});
        } else {
            out.pieces.push_back({std::move(piece), PieceKind::Atomic});
        }
    }
    return out;
}

/// Checks the defining properties of a piece set: pairwise blank-disjoint,
/// rule pieces are single implications with existential-free bodies, atomic
/// pieces contain only triples.
inline bool is_valid_pnf(const PieceSet& ps) {
    std::set<Term> seen_blanks;
    for (const Piece& p : ps.pieces) {
        std::set<Term> blanks = free_existentials(p.formula);
        for (const Term& b : blanks)
            if (!seen_blanks.insert(b).second) return false;
        if (p.kind == PieceKind::Rule) {
            if (!p.formula.is_single_implication()) return false;
            const Implication& r = std::get<Implication>(p.formula.statements()[0]);
            if (!free_existentials(r.body).empty()) return false;
        } else {
            if (p.formula.empty()) return false;
            for (const Statement& s : p.formula.statements())
                if (!is_triple(s)) return false;
            // conjuncts of one piece must be transitively blank-connected
            if (group_statements_by_blank(p.formula).size() != 1) return false;
        }
    }
    return true;
}

}  // namespace n3ex
