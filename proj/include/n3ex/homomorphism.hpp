#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "n3ex/instance.hpp"
#include "n3ex/rules.hpp"

namespace n3ex {

/// Homomorphism witness. Constants always map to themselves, so only the
/// bindings of variables (rule matching) and nulls (instance-to-instance
/// mapping) are recorded.
struct Hom {
    std::map<Symbol, GroundTerm> variables;
    std::map<std::uint64_t, GroundTerm> nulls;

    GroundTerm map_term(const RuleTerm& t) const {
        if (t.is_constant()) return GroundTerm::constant(t.symbol());
        if (t.is_null()) {
            auto it = nulls.find(t.null_id());
            return it == nulls.end() ? GroundTerm::null(t.null_id()) : it->second;
        }
        return variables.at(t.symbol());
    }
};

namespace detail {

struct PatternTerm {
    bool is_var;
    GroundTerm value;    // constant, when !is_var
    std::uint32_t slot;  // variable slot, when is_var
};

struct PatternAtom {
    Symbol pred;
    std::vector<PatternTerm> args;
};

struct SlotInfo {
    bool from_null;
    Symbol label;           // variable label, when !from_null
    std::uint64_t null_id;  // source null, when from_null
};

/// Dense slot numbering for the unknowns of a pattern. Pattern nulls count
/// as unknowns too: a null may map to any term of the target instance.
struct SlotTable {
    std::map<std::uint64_t, std::uint32_t> by_key;
    std::vector<SlotInfo> slots;

    std::uint32_t var_slot(Symbol label) {
        auto [it, fresh] = by_key.emplace(static_cast<std::uint64_t>(label) << 1, 0);
        if (fresh) {
            it->second = static_cast<std::uint32_t>(slots.size());
            slots.push_back({false, label, 0});
        }
        return it->second;
    }

    std::uint32_t null_slot(std::uint64_t id) {
        auto [it, fresh] = by_key.emplace((id << 1) | 1, 0);
        if (fresh) {
            it->second = static_cast<std::uint32_t>(slots.size());
            slots.push_back({true, 0, id});
        }
        return it->second;
    }

    const std::uint32_t* find_var(Symbol label) const {
        auto it = by_key.find(static_cast<std::uint64_t>(label) << 1);
        return it == by_key.end() ? nullptr : &it->second;
    }
};

inline std::vector<PatternAtom> compile_atoms(std::span<const Atom> atoms, SlotTable& table) {
    std::vector<PatternAtom> out;
    out.reserve(atoms.size());
    for (const Atom& a : atoms) {
        PatternAtom pa{a.predicate, {}};
        pa.args.reserve(a.args.size());
        for (const RuleTerm& t : a.args) {
            if (t.is_constant()) pa.args.push_back({false, GroundTerm::constant(t.symbol()), 0});
            else if (t.is_null()) pa.args.push_back({true, GroundTerm(), table.null_slot(t.null_id())});
            else pa.args.push_back({true, GroundTerm(), table.var_slot(t.symbol())});
        }
        out.push_back(std::move(pa));
    }
    return out;
}

struct IdRange {
    std::uint32_t lo = 0;
    std::uint32_t hi = std::numeric_limits<std::uint32_t>::max();
};

struct Binding {
    std::vector<GroundTerm> value;
    std::vector<bool> bound;

    void resize(std::size_t n) {
        value.assign(n, GroundTerm());
        bound.assign(n, false);
    }
};

/// Depth-first enumeration of all homomorphic images of `atoms[i..]` in
/// `inst`. Candidate atoms are taken from the most selective index for the
/// already-determined positions and visited in ascending id order within the
/// per-atom id range, which makes the emission order id-lexicographic no
/// matter which index gets picked. The callback returns true to stop; when
/// `chosen` is given it receives the atom id picked at each depth.
template <typename Fn>
bool enumerate(const Instance& inst, std::span<const PatternAtom> atoms,
               std::span<const IdRange> ranges, std::size_t i, Binding& b, std::uint32_t* chosen,
               Fn&& fn) {
    if (i == atoms.size()) return fn();
    const PatternAtom& pa = atoms[i];
    const IdRange range = i < ranges.size() ? ranges[i] : IdRange{};

    std::span<const std::uint32_t> candidates = inst.by_predicate(pa.pred);
    for (std::uint32_t pos = 0; pos < pa.args.size(); ++pos) {
        const PatternTerm& t = pa.args[pos];
        GroundTerm v;
        if (!t.is_var) v = t.value;
        else if (b.bound[t.slot]) v = b.value[t.slot];
        else continue;
        std::span<const std::uint32_t> list = inst.by_position(pa.pred, pos, v);
        if (list.size() < candidates.size()) candidates = list;
        if (candidates.empty()) return false;
    }

    auto begin = std::lower_bound(candidates.begin(), candidates.end(), range.lo);
    std::vector<std::uint32_t> trail;
    for (auto it = begin; it != candidates.end() && *it < range.hi; ++it) {
        Instance::AtomView av = inst.at(*it);
        if (av.args.size() != pa.args.size()) continue;
        bool ok = true;
        trail.clear();
        for (std::uint32_t pos = 0; ok && pos < pa.args.size(); ++pos) {
            const PatternTerm& t = pa.args[pos];
            if (!t.is_var) {
                ok = t.value == av.args[pos];
            } else if (b.bound[t.slot]) {
                ok = b.value[t.slot] == av.args[pos];
            } else {
                b.bound[t.slot] = true;
                b.value[t.slot] = av.args[pos];
                trail.push_back(t.slot);
            }
        }
        if (ok) {
            if (chosen) chosen[i] = *it;
            if (enumerate(inst, atoms, ranges, i + 1, b, chosen, fn)) return true;
        }
        for (std::uint32_t slot : trail) b.bound[slot] = false;
    }
    return false;
}

template <typename Fn>
bool enumerate(const Instance& inst, std::span<const PatternAtom> atoms,
               std::span<const IdRange> ranges, std::size_t i, Binding& b, Fn&& fn) {
    return enumerate(inst, atoms, ranges, i, b, nullptr, std::forward<Fn>(fn));
}

inline Hom binding_to_hom(std::span<const SlotInfo> slots, const Binding& b) {
    Hom h;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!b.bound[s]) continue;
        if (slots[s].from_null) h.nulls[slots[s].null_id] = b.value[s];
        else h.variables[slots[s].label] = b.value[s];
    }
    return h;
}

}  // namespace detail

/// Finds one homomorphism from the given atoms into the instance, if any.
/// `fixed` pre-binds variables (used for frontier-preserving checks).
/// Pattern nulls are free to map to constants or nulls of the target.
inline std::optional<Hom> find_hom(std::span<const Atom> from, const Instance& to,
                                   const std::map<Symbol, GroundTerm>& fixed = {}) {
    detail::SlotTable table;
    std::vector<detail::PatternAtom> pattern = detail::compile_atoms(from, table);
    detail::Binding b;
    b.resize(table.slots.size());
    for (const auto& [label, term] : fixed) {
        if (const std::uint32_t* slot = table.find_var(label)) {
            b.bound[*slot] = true;
            b.value[*slot] = term;
        }
    }
    std::optional<Hom> result;
    detail::enumerate(to, pattern, {}, 0, b, [&] {
        result = detail::binding_to_hom(table.slots, b);
        return true;
    });
    if (result)
        for (const auto& [label, term] : fixed) result->variables.emplace(label, term);
    return result;
}

/// Instance-to-instance homomorphism: constants fixed, nulls mapped freely.
inline std::optional<Hom> find_hom(const Instance& from, const Instance& to) {
    std::vector<Atom> pattern;
    pattern.reserve(from.size());
    for (std::uint32_t id = 0; id < from.size(); ++id) {
        Instance::AtomView av = from.at(id);
        Atom a{av.predicate, {}};
        a.args.reserve(av.args.size());
        for (GroundTerm t : av.args) a.args.push_back(to_rule_term(t));
        pattern.push_back(std::move(a));
    }
    return find_hom(pattern, to);
}

inline bool hom_equivalent(const Instance& a, const Instance& b) {
    return find_hom(a, b).has_value() && find_hom(b, a).has_value();
}

/// Rule compiled for matching: body and head atoms share one slot space, so
/// a body match directly pre-binds the head's frontier variables.
class CompiledRule {
public:
    static CompiledRule compile(const ExRule& r) {
        CompiledRule c;
        c.body_ = detail::compile_atoms(r.body(), c.table_);
        c.head_ = detail::compile_atoms(r.head(), c.table_);
        for (Symbol v : r.existentials())
            if (const std::uint32_t* slot = c.table_.find_var(v))
                c.existential_slots_.push_back(*slot);
        return c;
    }

    const std::vector<detail::PatternAtom>& body_atoms() const { return body_; }
    const std::vector<detail::PatternAtom>& head_atoms() const { return head_; }
    std::span<const detail::SlotInfo> slots() const { return table_.slots; }
    std::uint32_t slot_count() const { return static_cast<std::uint32_t>(table_.slots.size()); }
    const std::vector<std::uint32_t>& existential_slots() const { return existential_slots_; }

    /// True when the current body binding extends to an image of the head in
    /// `inst`, existentials ranging over all terms present. Existential
    /// slots are left unbound on return.
    bool head_satisfiable(const Instance& inst, detail::Binding& b) const {
        bool found = detail::enumerate(inst, head_, {}, 0, b, [] { return true; });
        for (std::uint32_t s : existential_slots_) b.bound[s] = false;
        return found;
    }

private:
    detail::SlotTable table_;
    std::vector<detail::PatternAtom> body_;
    std::vector<detail::PatternAtom> head_;
    std::vector<std::uint32_t> existential_slots_;
};

/// Enumerates every match (homomorphism of the body) of the rule in `inst`
/// in the deterministic id-lexicographic order. A body-empty rule has
/// exactly one match, the empty one.
template <typename Fn>
void for_each_match(const ExRule& r, const Instance& inst, Fn&& fn) {
    CompiledRule c = CompiledRule::compile(r);
    detail::Binding b;
    b.resize(c.slot_count());
    detail::enumerate(inst, c.body_atoms(), {}, 0, b, [&] {
        fn(detail::binding_to_hom(c.slots(), b));
        return false;
    });
}

inline std::vector<Hom> matches(const ExRule& r, const Instance& inst) {
    std::vector<Hom> out;
    for_each_match(r, inst, [&](const Hom& h) { out.push_back(h); });
    return out;
}

/// A rule is satisfied when every match extends to an image of the head.
inline bool is_satisfied(const ExRule& r, const Instance& inst) {
    CompiledRule c = CompiledRule::compile(r);
    detail::Binding b;
    b.resize(c.slot_count());
    bool violated = detail::enumerate(inst, c.body_atoms(), {}, 0, b,
                                      [&] { return !c.head_satisfiable(inst, b); });
    return !violated;
}

}  // namespace n3ex
