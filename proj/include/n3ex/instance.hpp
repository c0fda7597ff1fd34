#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "n3ex/rules.hpp"
#include "n3ex/symbol_table.hpp"

namespace n3ex {

/// Ground term: an interned constant or a labeled null, packed into one
/// word. Nulls compare after constants; among themselves by id.
class GroundTerm {
public:
    GroundTerm() : bits_(0) {}

    static GroundTerm constant(Symbol s) { return GroundTerm(static_cast<std::uint64_t>(s)); }
    static GroundTerm constant(std::string_view canonical) {
        return constant(intern_symbol(canonical));
    }
    static GroundTerm null(std::uint64_t id) { return GroundTerm(kNullBit | id); }

    bool is_null() const { return bits_ & kNullBit; }
    Symbol symbol() const { return static_cast<Symbol>(bits_); }
    std::uint64_t null_id() const { return bits_ & ~kNullBit; }
    std::uint64_t bits() const { return bits_; }

    const std::string& text() const { return symbol_text(symbol()); }

    friend bool operator==(GroundTerm a, GroundTerm b) { return a.bits_ == b.bits_; }
    friend bool operator<(GroundTerm a, GroundTerm b) { return a.bits_ < b.bits_; }

private:
    explicit GroundTerm(std::uint64_t bits) : bits_(bits) {}
    static constexpr std::uint64_t kNullBit = 1ull << 63;

    std::uint64_t bits_;
};

inline GroundTerm to_ground(const RuleTerm& t) {
    if (t.is_constant()) return GroundTerm::constant(t.symbol());
    if (t.is_null()) return GroundTerm::null(t.null_id());
    throw std::invalid_argument("variable is not a ground term");
}

inline RuleTerm to_rule_term(GroundTerm t) {
    return t.is_null() ? RuleTerm::null(t.null_id()) : RuleTerm::constant_symbol(t.symbol());
}

struct GroundAtom {
    Symbol predicate;
    std::vector<GroundTerm> args;

    friend bool operator==(const GroundAtom& a, const GroundAtom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
};

inline GroundAtom ground(const Atom& a) {
    GroundAtom g{a.predicate, {}};
    g.args.reserve(a.args.size());
    for (const RuleTerm& t : a.args) g.args.push_back(to_ground(t));
    return g;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Set of ground atoms with set semantics and two lookup paths: by predicate
/// and by (predicate, argument position, term). Atom ids are dense and in
/// insertion order; index lists hold ids ascending, which keeps every
/// enumeration that walks them deterministic.
class Instance {
public:
    struct AtomView {
        Symbol predicate;
        std::span<const GroundTerm> args;
    };

    bool insert(Symbol predicate, std::span<const GroundTerm> args) {
        std::uint64_t h = hash_atom(predicate, args);
        auto [bucket_it, fresh] = buckets_.try_emplace(h);
        if (!fresh) {
            for (std::uint32_t id : bucket_it->second)
                if (equals(id, predicate, args)) return false;
        }
        std::uint32_t id = static_cast<std::uint32_t>(atoms_.size());
        AtomRec rec{predicate, static_cast<std::uint32_t>(arena_.size()),
                    static_cast<std::uint32_t>(args.size())};
        arena_.insert(arena_.end(), args.begin(), args.end());
        atoms_.push_back(rec);
        bucket_it->second.push_back(id);
        pred_index_[predicate].push_back(id);
        for (std::uint32_t pos = 0; pos < args.size(); ++pos) {
            pos_index_[PosKey{predicate, pos, args[pos]}].push_back(id);
            if (args[pos].is_null() && args[pos].null_id() > max_null_)
                max_null_ = args[pos].null_id();
        }
        return true;
    }

    bool insert(const GroundAtom& a) { return insert(a.predicate, a.args); }

    bool contains(Symbol predicate, std::span<const GroundTerm> args) const {
        auto it = buckets_.find(hash_atom(predicate, args));
        if (it == buckets_.end()) return false;
        for (std::uint32_t id : it->second)
            if (equals(id, predicate, args)) return true;
        return false;
    }

    bool contains(const GroundAtom& a) const { return contains(a.predicate, a.args); }

    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    AtomView at(std::uint32_t id) const {
        const AtomRec& r = atoms_[id];
        return {r.predicate, std::span<const GroundTerm>(arena_.data() + r.begin, r.arity)};
    }

    std::span<const std::uint32_t> by_predicate(Symbol pred) const {
        auto it = pred_index_.find(pred);
        if (it == pred_index_.end()) return {};
        return it->second;
    }

    std::span<const std::uint32_t> by_position(Symbol pred, std::uint32_t pos,
                                               GroundTerm term) const {
        auto it = pos_index_.find(PosKey{pred, pos, term});
        if (it == pos_index_.end()) return {};
        return it->second;
    }

    std::uint64_t max_null_id() const { return max_null_; }
    bool has_nulls() const { return max_null_ > 0; }

    std::vector<GroundAtom> to_atoms() const {
        std::vector<GroundAtom> out;
        out.reserve(atoms_.size());
        for (std::uint32_t id = 0; id < atoms_.size(); ++id) {
            AtomView v = at(id);
            out.push_back(GroundAtom{v.predicate, {v.args.begin(), v.args.end()}});
        }
        return out;
    }

private:
    struct AtomRec {
        Symbol predicate;
        std::uint32_t begin;
        std::uint32_t arity;
    };

    struct PosKey {
        Symbol pred;
        std::uint32_t pos;
        GroundTerm term;
        friend bool operator==(const PosKey& a, const PosKey& b) {
            return a.pred == b.pred && a.pos == b.pos && a.term == b.term;
        }
    };
    struct PosKeyHash {
        std::size_t operator()(const PosKey& k) const {
            return detail::mix64((static_cast<std::uint64_t>(k.pred) << 8) ^ k.pos ^
                                 detail::mix64(k.term.bits()));
        }
    };

    static std::uint64_t hash_atom(Symbol pred, std::span<const GroundTerm> args) {
        std::uint64_t h = detail::mix64(pred);
        for (GroundTerm t : args) h = detail::mix64(h ^ t.bits());
        return h;
    }

    bool equals(std::uint32_t id, Symbol pred, std::span<const GroundTerm> args) const {
        const AtomRec& r = atoms_[id];
        if (r.predicate != pred || r.arity != args.size()) return false;
        for (std::uint32_t i = 0; i < r.arity; ++i)
            if (!(arena_[r.begin + i] == args[i])) return false;
        return true;
    }

    std::vector<GroundTerm> arena_;
    std::vector<AtomRec> atoms_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
    std::unordered_map<PosKey, std::vector<std::uint32_t>, PosKeyHash> pos_index_;
    std::unordered_map<Symbol, std::vector<std::uint32_t>> pred_index_;
    std::uint64_t max_null_ = 0;
};

/// Finite, null-free fact set a chase starts from.
using Database = std::vector<GroundAtom>;

inline Database database_from_facts(const std::vector<Atom>& facts) {
    Database db;
    db.reserve(facts.size());
    for (const Atom& a : facts) {
        if (!a.is_ground())
            throw std::invalid_argument("database atoms must be ground");
        db.push_back(ground(a));
    }
    return db;
}

inline Instance instance_from(const Database& db) {
    Instance inst;
    for (const GroundAtom& a : db) inst.insert(a);
    return inst;
}

}  // namespace n3ex
