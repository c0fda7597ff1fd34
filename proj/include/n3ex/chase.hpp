#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "n3ex/homomorphism.hpp"
#include "n3ex/instance.hpp"
#include "n3ex/rules.hpp"
#include "n3ex/term.hpp"

namespace n3ex {

enum class ChaseStrategy { Restricted, Oblivious };

struct ChaseConfig {
    std::uint64_t max_steps = 10'000'000;
    std::uint64_t max_nulls = 1'000'000;
    ChaseStrategy strategy = ChaseStrategy::Restricted;
    bool trace = false;  // record one Firing per step
};

enum class ChaseStatus { Complete, Truncated };

struct Firing {
    std::uint32_t rule;
    std::vector<std::uint32_t> matched;   // body atom ids
    std::vector<std::uint32_t> produced;  // head atom ids (deduplicated away ones omitted)
};

struct ChaseReport {
    ChaseStatus status = ChaseStatus::Complete;
    std::uint64_t steps = 0;        // rule firings
    std::uint64_t nulls = 0;        // fresh nulls introduced
    std::uint64_t atoms_added = 0;  // atoms beyond the database
    std::uint64_t rounds = 0;
    std::string truncation_reason;
    std::vector<Firing> trace;

    bool complete() const { return status == ChaseStatus::Complete; }
};

struct ChaseResult {
    Instance instance;
    ChaseReport report;
};

namespace detail {

inline void require_null_free(const GroundAtom& a, const char* what) {
    for (GroundTerm t : a.args)
        if (t.is_null())
            throw std::invalid_argument(std::string(what) + " must be null-free");
}

// One enumerated body match, frozen so firing can happen after enumeration
// finished (inserting atoms invalidates index iterators held by the
// enumeration).
struct PendingMatch {
    std::vector<GroundTerm> values;
    std::vector<std::uint32_t> matched;
};

// Reverse index from atom shapes to the (rule, anchor) pairs whose anchor
// pattern could match such an atom. Keys hash the anchor's first constant
// position; pairs without one are filed under the bare predicate. Hash
// collisions merge buckets, which only adds probe candidates, so the
// pruning stays complete.
class RuleAnchorIndex {
public:
    struct Pair {
        std::uint32_t rule;
        std::uint32_t anchor;
        friend bool operator<(const Pair& a, const Pair& b) {
            return a.rule != b.rule ? a.rule < b.rule : a.anchor < b.anchor;
        }
    };

    explicit RuleAnchorIndex(const std::vector<CompiledRule>& rules) {
        for (std::uint32_t ri = 0; ri < rules.size(); ++ri) {
            const auto& body = rules[ri].body_atoms();
            for (std::uint32_t j = 0; j < body.size(); ++j) {
                const PatternTerm* constant = nullptr;
                std::uint32_t const_pos = 0;
                for (std::uint32_t p = 0; p < body[j].args.size(); ++p) {
                    if (!body[j].args[p].is_var) {
                        constant = &body[j].args[p];
                        const_pos = p;
                        break;
                    }
                }
                if (constant)
                    keyed_[key(body[j].pred, const_pos, constant->value)].push_back({ri, j});
                else
                    by_pred_[body[j].pred].push_back({ri, j});
                ++total_;
            }
        }
    }

    std::size_t total_pairs() const { return total_; }

    /// All pairs whose anchor could match some atom in [lo, hi) of inst,
    /// sorted by (rule, anchor) so the probing order stays canonical.
    std::vector<Pair> candidates(const Instance& inst, std::uint32_t lo, std::uint32_t hi) const {
        std::vector<Pair> out;
        std::set<std::uint64_t> seen;
        auto take = [&](const std::vector<Pair>* bucket) {
            if (!bucket) return;
            for (Pair p : *bucket)
                if (seen.insert((std::uint64_t(p.rule) << 32) | p.anchor).second) out.push_back(p);
        };
        for (std::uint32_t id = lo; id < hi; ++id) {
            Instance::AtomView av = inst.at(id);
            take(find(by_pred_, av.predicate));
            for (std::uint32_t p = 0; p < av.args.size(); ++p)
                take(find(keyed_, key(av.predicate, p, av.args[p])));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static std::uint64_t key(Symbol pred, std::uint32_t pos, GroundTerm term) {
        return detail::mix64((std::uint64_t(pred) << 8) ^ pos ^ detail::mix64(term.bits()));
    }

    template <typename Map, typename Key>
    static const std::vector<Pair>* find(const Map& m, const Key& k) {
        auto it = m.find(k);
        return it == m.end() ? nullptr : &it->second;
    }

    std::unordered_map<std::uint64_t, std::vector<Pair>> keyed_;
    std::unordered_map<Symbol, std::vector<Pair>> by_pred_;
    std::size_t total_ = 0;
};

}  // namespace detail

/// Standard chase over the rules and the database (plus the rule set's own
/// fact section). Matches are enumerated round by round: a match is
/// considered in the first round all its atoms exist, anchored on the atom
/// born latest; rules fire round-robin in input order, matches in
/// id-lexicographic order. The restricted strategy re-checks head
/// satisfiability against the live instance at fire time; the oblivious one
/// fires every match once. Hitting a limit truncates with a report rather
/// than failing.
inline ChaseResult chase(const RuleSet& rs, const Database& db, const ChaseConfig& cfg = {}) {
    ChaseResult out;
    Instance& inst = out.instance;
    ChaseReport& report = out.report;

    for (const GroundAtom& a : db) {
        detail::require_null_free(a, "database");
        inst.insert(a);
    }
    for (const Atom& a : rs.facts) {
        if (!a.is_ground()) throw std::invalid_argument("rule-set facts must be ground");
        GroundAtom g = ground(a);
        detail::require_null_free(g, "rule-set facts");
        inst.insert(g);
    }
    std::size_t database_size = inst.size();

    std::vector<CompiledRule> compiled;
    compiled.reserve(rs.rules.size());
    for (const ExRule& r : rs.rules) compiled.push_back(CompiledRule::compile(r));

    std::uint64_t null_counter = 0;
    bool truncated = false;

    detail::Binding binding;
    std::vector<detail::PendingMatch> pending;
    std::vector<std::uint32_t> chosen;
    std::vector<GroundTerm> head_args;

    auto truncate = [&](std::string reason) {
        report.status = ChaseStatus::Truncated;
        report.truncation_reason = std::move(reason);
        truncated = true;
    };

    // Fires the match currently loaded into `binding`; returns false when a
    // limit was hit.
    auto fire = [&](std::uint32_t rule_idx, const std::vector<std::uint32_t>& matched) {
        const CompiledRule& c = compiled[rule_idx];
        if (report.steps >= cfg.max_steps) {
            truncate("step limit reached");
            return false;
        }
        if (null_counter + c.existential_slots().size() > cfg.max_nulls) {
            truncate("null limit reached");
            return false;
        }
        ++report.steps;
        for (std::uint32_t s : c.existential_slots()) {
            binding.bound[s] = true;
            binding.value[s] = GroundTerm::null(++null_counter);
        }
        Firing firing;
        firing.rule = rule_idx;
        if (cfg.trace) firing.matched = matched;
        for (const detail::PatternAtom& pa : c.head_atoms()) {
            head_args.clear();
            for (const detail::PatternTerm& t : pa.args)
                head_args.push_back(t.is_var ? binding.value[t.slot] : t.value);
            if (inst.insert(pa.pred, head_args) && cfg.trace)
                firing.produced.push_back(static_cast<std::uint32_t>(inst.size() - 1));
        }
        for (std::uint32_t s : c.existential_slots()) binding.bound[s] = false;
        if (cfg.trace) report.trace.push_back(std::move(firing));
        return true;
    };

    std::uint32_t delta_lo = 0;
    std::uint32_t delta_hi = static_cast<std::uint32_t>(inst.size());

    detail::RuleAnchorIndex anchor_index(compiled);
    std::vector<std::uint32_t> empty_body_rules;
    for (std::uint32_t ri = 0; ri < compiled.size(); ++ri)
        if (compiled[ri].body_atoms().empty()) empty_body_rules.push_back(ri);

    auto probe_empty_body = [&](std::uint32_t ri) {
        binding.resize(compiled[ri].slot_count());
        if (cfg.strategy == ChaseStrategy::Restricted &&
            compiled[ri].head_satisfiable(inst, binding))
            return;
        fire(ri, {});
    };

    auto probe = [&](std::uint32_t ri, std::uint32_t anchor) {
        const CompiledRule& c = compiled[ri];
        const std::size_t body_len = c.body_atoms().size();
        // atoms before the anchor come from older rounds, the anchor from
        // the last delta, the rest from anything already known
        std::vector<detail::IdRange> ranges(body_len);
        for (std::size_t i = 0; i < body_len; ++i) {
            if (i < anchor) ranges[i] = {0, delta_lo};
            else if (i == anchor) ranges[i] = {delta_lo, delta_hi};
            else ranges[i] = {0, delta_hi};
        }
        binding.resize(c.slot_count());
        chosen.assign(body_len, 0);
        pending.clear();
        detail::enumerate(inst, c.body_atoms(), ranges, 0, binding, chosen.data(), [&] {
            pending.push_back({binding.value, chosen});
            return false;
        });
        for (detail::PendingMatch& m : pending) {
            binding.value = std::move(m.values);
            binding.bound.assign(binding.value.size(), false);
            for (const detail::PatternAtom& pa : c.body_atoms())
                for (const detail::PatternTerm& t : pa.args)
                    if (t.is_var) binding.bound[t.slot] = true;
            if (cfg.strategy == ChaseStrategy::Restricted && c.head_satisfiable(inst, binding))
                continue;
            if (!fire(ri, m.matched)) break;
        }
    };

    for (std::uint64_t round = 1; !truncated; ++round) {
        report.rounds = round;
        // with many rules and a small delta, only the rules whose anchor can
        // touch the delta are worth probing; the probe order (rule-major,
        // anchor-minor, body-empty rules interleaved by index in round one)
        // is the same either way, so both paths fire identically
        bool use_index = (delta_hi - delta_lo) < anchor_index.total_pairs() / 4;
        if (use_index) {
            std::vector<detail::RuleAnchorIndex::Pair> pairs =
                anchor_index.candidates(inst, delta_lo, delta_hi);
            std::size_t eb = 0;
            for (const auto& p : pairs) {
                if (round == 1)
                    while (eb < empty_body_rules.size() && empty_body_rules[eb] < p.rule &&
                           !truncated)
                        probe_empty_body(empty_body_rules[eb++]);
                if (truncated) break;
                probe(p.rule, p.anchor);
            }
            if (round == 1)
                while (eb < empty_body_rules.size() && !truncated)
                    probe_empty_body(empty_body_rules[eb++]);
        } else {
            for (std::uint32_t ri = 0; ri < compiled.size() && !truncated; ++ri) {
                const std::size_t body_len = compiled[ri].body_atoms().size();
                if (body_len == 0) {
                    if (round == 1) probe_empty_body(ri);
                    continue;
                }
                for (std::uint32_t anchor = 0; anchor < body_len && !truncated; ++anchor)
                    probe(ri, anchor);
            }
        }
        if (truncated) break;
        delta_lo = delta_hi;
        delta_hi = static_cast<std::uint32_t>(inst.size());
        if (delta_lo == delta_hi) break;  // fixpoint: no unsatisfied match exists
    }

    report.nulls = null_counter;
    report.atoms_added = inst.size() - database_size;
    return out;
}

// --- entailment and rule-set equivalence --------------------------------------

enum class Entailment { Entailed, NotEntailed, Unknown };

namespace detail {

inline std::string frozen_constant_iri(const std::string& label) {
    return "urn:n3ex:frozen#" + label;
}

}  // namespace detail

/// Decides whether the rule set entails the rule: chase the frozen body and
/// look for a frontier-preserving image of the head. A truncated chase can
/// still confirm entailment (the partial result embeds into the universal
/// model) but cannot refute it.
inline Entailment entails(const RuleSet& sigma, const ExRule& rho,
                          const ChaseConfig& cfg = {}) {
    Database frozen_body;
    std::map<Symbol, GroundTerm> frozen;
    for (const Atom& a : rho.body()) {
        GroundAtom g{a.predicate, {}};
        for (const RuleTerm& t : a.args) {
            if (t.is_constant()) {
                g.args.push_back(GroundTerm::constant(t.symbol()));
            } else {
                auto [it, fresh] = frozen.emplace(t.symbol(), GroundTerm());
                if (fresh)
                    it->second = GroundTerm::constant(detail::frozen_constant_iri(t.text()));
                g.args.push_back(it->second);
            }
        }
        frozen_body.push_back(std::move(g));
    }
    ChaseResult chased = chase(sigma, frozen_body, cfg);
    std::map<Symbol, GroundTerm> fixed;
    for (Symbol v : rho.frontier()) fixed.emplace(v, frozen.at(v));
    bool found = find_hom(rho.head(), chased.instance, fixed).has_value();
    if (found) return Entailment::Entailed;
    return chased.report.complete() ? Entailment::NotEntailed : Entailment::Unknown;
}

enum class EquivalenceVerdict { Equivalent, NotEquivalent, Inconclusive };

/// Sentence-wise mutual entailment between two rule sets, exact whenever all
/// the involved chases complete. Facts count as body-empty rules.
inline EquivalenceVerdict ruleset_equivalent(const RuleSet& a, const RuleSet& b,
                                             const ChaseConfig& cfg = {}) {
    bool unknown = false;
    auto check_side = [&](const RuleSet& premises, const RuleSet& conclusions) {
        for (const Atom& fact : conclusions.facts) {
            switch (entails(premises, ExRule::make({}, {fact}), cfg)) {
                case Entailment::NotEntailed: return false;
                case Entailment::Unknown: unknown = true; break;
                case Entailment::Entailed: break;
            }
        }
        for (const ExRule& r : conclusions.rules) {
            switch (entails(premises, r, cfg)) {
                case Entailment::NotEntailed: return false;
                case Entailment::Unknown: unknown = true; break;
                case Entailment::Entailed: break;
            }
        }
        return true;
    };
    if (!check_side(a, b) || !check_side(b, a)) return EquivalenceVerdict::NotEquivalent;
    return unknown ? EquivalenceVerdict::Inconclusive : EquivalenceVerdict::Equivalent;
}

/// The comparison the CLI offers as an alternative: chase both sides over
/// one shared database and compare the results up to homomorphic
/// equivalence. Sound for equivalent inputs, but a single database may fail
/// to separate inequivalent ones.
inline EquivalenceVerdict chase_db_equivalent(const RuleSet& a, const RuleSet& b,
                                              const Database& db, const ChaseConfig& cfg = {}) {
    ChaseResult ra = chase(a, db, cfg);
    ChaseResult rb = chase(b, db, cfg);
    if (!ra.report.complete() || !rb.report.complete()) return EquivalenceVerdict::Inconclusive;
    return hom_equivalent(ra.instance, rb.instance) ? EquivalenceVerdict::Equivalent
                                                    : EquivalenceVerdict::NotEquivalent;
}

/// All-tuples database over the constants of both rule sets plus one fresh
/// marker, per predicate of either side. Tuple count is capped; the cap
/// throws rather than silently truncating.
inline Database critical_instance(const RuleSet& a, const RuleSet& b,
                                  std::size_t max_tuples = 1'000'000) {
    std::set<Symbol> consts;
    std::map<Symbol, std::size_t> preds;
    auto scan = [&](const RuleSet& rs) {
        auto scan_atoms = [&](const std::vector<Atom>& atoms) {
            for (const Atom& at : atoms) {
                preds.emplace(at.predicate, at.args.size());
                for (const RuleTerm& t : at.args)
                    if (t.is_constant()) consts.insert(t.symbol());
            }
        };
        scan_atoms(rs.facts);
        for (const ExRule& r : rs.rules) {
            scan_atoms(r.body());
            scan_atoms(r.head());
        }
    };
    scan(a);
    scan(b);
    consts.insert(intern_symbol(example_ns() + "critical"));

    std::vector<GroundTerm> universe;
    for (Symbol s : consts) universe.push_back(GroundTerm::constant(s));

    Database db;
    for (const auto& [pred, arity] : preds) {
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < arity; ++i) tuples *= universe.size();
        if (db.size() + tuples > max_tuples)
            throw std::invalid_argument("critical instance would exceed " +
                                        std::to_string(max_tuples) + " tuples");
        std::vector<std::size_t> idx(arity, 0);
        for (;;) {
            GroundAtom g{pred, {}};
            for (std::size_t i = 0; i < arity; ++i) g.args.push_back(universe[idx[i]]);
            db.push_back(std::move(g));
            std::size_t k = 0;
            while (k < arity && ++idx[k] == universe.size()) idx[k++] = 0;
            if (k == arity) break;
        }
    }
    return db;
}

inline RuleSet instance_to_ruleset(const Instance& inst) {
    RuleSet rs;
    rs.facts.reserve(inst.size());
    for (std::uint32_t id = 0; id < inst.size(); ++id) {
        Instance::AtomView av = inst.at(id);
        Atom a{av.predicate, {}};
        for (GroundTerm t : av.args) a.args.push_back(to_rule_term(t));
        rs.facts.push_back(std::move(a));
    }
    return rs;
}

}  // namespace n3ex
