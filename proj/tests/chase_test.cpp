#include <catch2/catch_amalgamated.hpp>

#include "support/builders.hpp"
#include "support/corpus.hpp"
#include "support/exhaustive_hom.hpp"
#include "support/naive_chase.hpp"
#include "support/rng.hpp"

using namespace tb;
using testsupport::CorpusGen;
using testsupport::CorpusParams;
using testsupport::exhaustive_hom_exists;
using testsupport::naive_chase;
using testsupport::Rng;

namespace {

// the knows/name instances used throughout the motivation
Instance inst_I1() {
    return instance_of({gtr("lucy", "knows", "tom"), gtr("tom", "knows", "lucy")});
}
Instance inst_K1() { return instance_of({gtr("lucy", "knows", "tom")}); }
Instance inst_I2() {
    return instance_of({gtr("lucy", "knows", "tom"),
                        {tr_predicate(),
                         {GroundTerm::constant(example_ns() + "tom"),
                          GroundTerm::constant(example_ns() + "name"),
                          GroundTerm::constant("\"Tom\"")}}});
}
Instance inst_I3() {
    GroundTerm n = GroundTerm::null(1);
    return instance_of({gtr("lucy", "knows", "tom"),
                        {tr_predicate(),
                         {GroundTerm::constant(example_ns() + "lucy"),
                          GroundTerm::constant(example_ns() + "knows"), n}},
                        {tr_predicate(),
                         {n, GroundTerm::constant(example_ns() + "name"),
                          GroundTerm::constant("\"Tom\"")}}});
}

ExRule rule_knows_back() {  // body tr(:lucy,:knows,x), head tr(x,:knows,:lucy)
    return ExRule::make({tr(rc("lucy"), rc("knows"), ru("x"))},
                        {tr(ru("x"), rc("knows"), rc("lucy"))});
}

ExRule rule_knows_someone_named_tom() {
    return ExRule::make({tr(ru("x"), rc("knows"), rc("tom"))},
                        {tr(ru("x"), rc("knows"), re("y")), tr(re("y"), rc("name"), rlit("Tom"))});
}

}  // namespace

TEST_CASE("a null maps onto the constant it generalizes, but not back") {
    std::optional<Hom> fwd = find_hom(inst_I3(), inst_I2());
    REQUIRE(fwd.has_value());
    REQUIRE(fwd->nulls.size() == 1);
    CHECK(fwd->nulls.at(1) == GroundTerm::constant(example_ns() + "tom"));
    CHECK_FALSE(find_hom(inst_I2(), inst_I3()).has_value());
}

TEST_CASE("the empty atom set has the empty homomorphism") {
    Instance empty;
    std::optional<Hom> h = find_hom(empty, inst_I2());
    REQUIRE(h.has_value());
    CHECK(h->nulls.empty());
    CHECK(h->variables.empty());
}

TEST_CASE("matching binds the body variable to the known object") {
    std::vector<Hom> ms = matches(rule_knows_someone_named_tom(), inst_K1());
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].variables.at(intern_symbol("x")) == GroundTerm::constant(example_ns() + "lucy"));

    std::vector<Hom> ms2 = matches(rule_knows_back(), inst_K1());
    REQUIRE(ms2.size() == 1);
    CHECK(ms2[0].variables.at(intern_symbol("x")) == GroundTerm::constant(example_ns() + "tom"));
}

TEST_CASE("no matches on the empty instance; empty bodies match once") {
    Instance empty;
    CHECK(matches(rule_knows_back(), empty).empty());

    ExRule fact_rule = ExRule::make({}, {tr(rc("lucy"), rc("knows"), re("x"))});
    std::vector<Hom> ms = matches(fact_rule, empty);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].variables.empty());
}

TEST_CASE("rule satisfaction on the motivating instances") {
    CHECK(is_satisfied(rule_knows_back(), inst_I1()));
    CHECK_FALSE(is_satisfied(rule_knows_back(), inst_K1()));
    CHECK(is_satisfied(rule_knows_someone_named_tom(), inst_I3()));
    CHECK_FALSE(is_satisfied(rule_knows_someone_named_tom(), inst_K1()));
    CHECK(is_satisfied(rule_knows_someone_named_tom(), inst_I2()));
}

TEST_CASE("chasing the single-rule example fires once and shares the fresh null") {
    RuleSet rs;
    rs.rules.push_back(rule_knows_someone_named_tom());
    Database db{gtr("lucy", "knows", "tom")};
    ChaseResult res = chase(rs, db);
    CHECK(res.report.complete());
    CHECK(res.report.steps == 1);
    CHECK(res.report.nulls == 1);
    CHECK(res.report.atoms_added == 2);
    REQUIRE(res.instance.size() == 3);
    auto a1 = res.instance.at(1), a2 = res.instance.at(2);
    CHECK(a1.args[2].is_null());
    CHECK(a2.args[0] == a1.args[2]);
    CHECK(is_satisfied(rs.rules[0], res.instance));
}

TEST_CASE("the empty rule set returns the database unchanged") {
    Database db{gtr("a", "p", "b"), gtr("c", "q", "d")};
    ChaseResult res = chase(RuleSet{}, db);
    CHECK(res.report.complete());
    CHECK(res.report.steps == 0);
    CHECK(res.instance.size() == 2);
}

TEST_CASE("a model of the rules triggers no firings") {
    RuleSet rs;
    rs.rules.push_back(rule_knows_back());
    Database db{gtr("lucy", "knows", "tom"), gtr("tom", "knows", "lucy")};
    ChaseResult res = chase(rs, db);
    CHECK(res.report.steps == 0);
    CHECK(res.instance.size() == 2);
}

TEST_CASE("the database is contained in every chase result") {
    Rng rng(0xdb0001);
    for (int round = 0; round < 20; ++round) {
        Database db;
        for (int i = 0; i < 6; ++i)
            db.push_back(gtr("c" + std::to_string(rng.below(3)), "p" + std::to_string(rng.below(2)),
                             "c" + std::to_string(rng.below(3))));
        RuleSet rs;
        rs.rules.push_back(ExRule::make({tr(ru("x"), rc("p0"), ru("y"))},
                                        {tr(ru("y"), rc("p1"), re("z"))}));
        ChaseResult res = chase(rs, db);
        for (const GroundAtom& a : db) CHECK(res.instance.contains(a));
    }
}

TEST_CASE("every firing introduces nulls above all existing ids") {
    RuleSet rs;
    rs.rules.push_back(ExRule::make({tr(ru("x"), rc("p"), ru("y"))},
                                    {tr(ru("y"), rc("p"), re("z"))}));
    Database db{gtr("a", "p", "b")};
    ChaseConfig cfg;
    cfg.max_nulls = 40;
    cfg.trace = true;
    ChaseResult res = chase(rs, db, cfg);
    CHECK_FALSE(res.report.complete());  // the rule chains forever
    // nulls seen for the first time appear in strictly increasing order
    std::set<std::uint64_t> seen;
    std::uint64_t max_seen = 0;
    for (std::uint32_t id = 0; id < res.instance.size(); ++id)
        for (GroundTerm t : res.instance.at(id).args)
            if (t.is_null() && seen.insert(t.null_id()).second) {
                CHECK(t.null_id() > max_seen);
                max_seen = t.null_id();
            }
    CHECK(res.report.nulls <= 40);
}

TEST_CASE("truncation by step limit is reported, not thrown") {
    RuleSet rs;
    rs.rules.push_back(ExRule::make({tr(ru("x"), rc("p"), ru("y"))},
                                    {tr(ru("y"), rc("p"), re("z"))}));
    ChaseConfig cfg;
    cfg.max_steps = 5;
    ChaseResult res = chase(rs, {gtr("a", "p", "b")}, cfg);
    CHECK(res.report.status == ChaseStatus::Truncated);
    CHECK(res.report.steps == 5);
    CHECK_FALSE(res.report.truncation_reason.empty());
}

TEST_CASE("databases with nulls are rejected up front") {
    Database db{{tr_predicate(),
                 {GroundTerm::constant(example_ns() + "a"), GroundTerm::constant(example_ns() + "p"),
                  GroundTerm::null(3)}}};
    CHECK_THROWS_AS(chase(RuleSet{}, db), std::invalid_argument);
}

TEST_CASE("deep taxonomy saturates level by level") {
    DeepTaxonomy dt = generate_deep_taxonomy(3);
    Formula doc = dt.fact;
    doc.append(dt.rules);
    RuleSet rs = translate_set(to_pnf(doc));
    ChaseResult res = chase(rs, database_from_facts(rs.facts));
    CHECK(res.report.complete());
    CHECK(res.instance.size() == 10);  // N0 plus {N,I,J} at three levels
    for (std::uint32_t id = 0; id < res.instance.size(); ++id) {
        auto av = res.instance.at(id);
        CHECK(av.args[1] == GroundTerm::constant(rdf_type_iri()));
    }
    CHECK(res.instance.contains(GroundAtom{
        tr_predicate(),
        {GroundTerm::constant(example_ns() + "i"), GroundTerm::constant(rdf_type_iri()),
         GroundTerm::constant(example_ns() + "N3")}}));
}

TEST_CASE("oblivious chase refires satisfied matches, restricted does not") {
    RuleSet rs;
    rs.rules.push_back(ExRule::make({tr(ru("x"), rc("knows"), ru("y"))},
                                    {tr(ru("x"), rc("knows"), re("z"))}));
    Database db{gtr("lucy", "knows", "tom")};

    ChaseResult restricted = chase(rs, db);
    CHECK(restricted.report.complete());
    CHECK(restricted.report.steps == 0);  // body match is already satisfied

    ChaseConfig cfg;
    cfg.strategy = ChaseStrategy::Oblivious;
    cfg.max_nulls = 50;
    ChaseResult oblivious = chase(rs, db, cfg);
    CHECK(oblivious.report.steps > 0);
}

TEST_CASE("chase trace records provenance that replays") {
    RuleSet rs;
    rs.rules.push_back(rule_knows_someone_named_tom());
    rs.rules.push_back(rule_knows_back());
    Database db{gtr("lucy", "knows", "tom")};
    ChaseConfig cfg;
    cfg.trace = true;
    ChaseResult res = chase(rs, db, cfg);
    CHECK(res.report.complete());
    for (const Firing& f : res.report.trace) {
        for (std::uint32_t matched : f.matched)
            for (std::uint32_t produced : f.produced) CHECK(matched < produced);
    }
    CHECK(res.report.trace.size() == res.report.steps);
}

TEST_CASE("hom equivalence: identity, one-sided, and null-padded instances") {
    CHECK(hom_equivalent(inst_I2(), inst_I2()));
    CHECK_FALSE(hom_equivalent(inst_I3(), inst_I2()));  // only one direction exists

    // I2 plus a fresh null edge maps back onto I2
    Instance padded = inst_I2();
    padded.insert(GroundAtom{tr_predicate(),
                             {GroundTerm::constant(example_ns() + "lucy"),
                              GroundTerm::constant(example_ns() + "knows"), GroundTerm::null(9)}});
    CHECK(hom_equivalent(inst_I2(), padded));
}

TEST_CASE("find_hom agrees with exhaustive mapping enumeration on small instances") {
    Rng rng(0xcafe01);
    int disagreements = 0;
    for (int round = 0; round < 200; ++round) {
        auto mk = [&](int atoms, int nulls) {
            Instance inst;
            for (int i = 0; i < atoms; ++i) {
                auto term = [&]() -> GroundTerm {
                    if (nulls > 0 && rng.chance(35))
                        return GroundTerm::null(1 + rng.below(nulls));
                    return GroundTerm::constant(example_ns() + "k" + std::to_string(rng.below(3)));
                };
                std::vector<GroundTerm> args{term(), GroundTerm::constant(example_ns() + "p" +
                                                                          std::to_string(rng.below(2))),
                                             term()};
                inst.insert(intern_symbol("tr"), args);
            }
            return inst;
        };
        Instance a = mk(1 + rng.below(4), 2);
        Instance b = mk(1 + rng.below(8), 2);
        bool fast = find_hom(a, b).has_value();
        bool slow = exhaustive_hom_exists(a, b);
        if (fast != slow) ++disagreements;
        CHECK(fast == slow);
    }
    CHECK(disagreements == 0);
}

TEST_CASE("chase agrees with the naive implementation atom for atom") {
    Rng rng(0x0c0ffee);
    CorpusParams params;
    params.max_relevant_bits = 0;
    params.max_triples = 4;
    CorpusGen gen(rng, params);
    int compared = 0;
    for (int round = 0; round < 60; ++round) {
        RuleSet rs = translate_set(to_pnf(gen.next()), FactsPolicy::IntoDatabase);
        Database db = database_from_facts(rs.facts);
        rs.facts.clear();
        // a bit of extra data to chew on
        for (int i = 0; i < 3; ++i)
            db.push_back(gtr("c" + std::to_string(rng.below(3)), "c" + std::to_string(rng.below(3)),
                             "c" + std::to_string(rng.below(3))));
        ChaseConfig cfg;
        cfg.max_steps = 4000;
        cfg.max_nulls = 2000;
        ChaseResult engine = chase(rs, db, cfg);
        testsupport::NaiveChaseResult naive = naive_chase(rs, db, 4000, 2000);
        REQUIRE(engine.report.complete() == naive.complete);
        if (!engine.report.complete()) continue;
        ++compared;
        REQUIRE(engine.instance.size() == naive.atoms.size());
        for (std::size_t i = 0; i < naive.atoms.size(); ++i) {
            auto av = engine.instance.at(static_cast<std::uint32_t>(i));
            GroundAtom got{av.predicate, {av.args.begin(), av.args.end()}};
            CHECK(got == naive.atoms[i]);
        }
    }
    CHECK(compared >= 40);
}

TEST_CASE("restricted chase result is hom-equivalent to the naive saturation") {
    Rng rng(0xfeedf00d);
    CorpusParams params;
    params.max_relevant_bits = 0;
    CorpusGen gen(rng, params);
    for (int round = 0; round < 25; ++round) {
        RuleSet rs = translate_set(to_pnf(gen.next()));
        Database db = database_from_facts(rs.facts);
        rs.facts.clear();
        ChaseConfig cfg;
        cfg.max_steps = 2000;
        cfg.max_nulls = 1000;
        ChaseResult engine = chase(rs, db, cfg);
        auto naive = naive_chase(rs, db, 2000, 1000);
        if (!engine.report.complete() || !naive.complete) continue;
        Instance naive_inst;
        for (const GroundAtom& a : naive.atoms) naive_inst.insert(a);
        CHECK(hom_equivalent(engine.instance, naive_inst));
    }
}

// --- entailment---------------------------------------------------------------

TEST_CASE("transitive chains are entailed") {
    RuleSet sigma = parse_rules("p(?x, ?y) -> q(?x, ?y) .\nq(?x, ?y) -> r(?x, ?y) .");
    ExRule rho = parse_rules("p(?x, ?y) -> r(?x, ?y) .").rules[0];
    CHECK(entails(sigma, rho) == Entailment::Entailed);
    ExRule nope = parse_rules("r(?x, ?y) -> p(?x, ?y) .").rules[0];
    CHECK(entails(sigma, nope) == Entailment::NotEntailed);
}

TEST_CASE("existential heads are entailed through renaming") {
    RuleSet sigma = parse_rules("Student(?x) -> advisor(?x, !y), Professor(!y) .");
    ExRule weaker = parse_rules("Student(?x) -> advisor(?x, !z) .").rules[0];
    CHECK(entails(sigma, weaker) == Entailment::Entailed);
    ExRule stronger = parse_rules("Student(?x) -> advisor(?x, :Smith) .").rules[0];
    CHECK(entails(sigma, stronger) == Entailment::NotEntailed);
}

TEST_CASE("rule sets equal up to duplication are equivalent") {
    RuleSet a = parse_rules("tr(:lucy, :knows, ?x) -> tr(?x, :knows, :lucy) .");
    RuleSet b = parse_rules(
        "tr(:lucy, :knows, ?x) -> tr(?x, :knows, :lucy) .\n"
        "tr(:lucy, :knows, ?w) -> tr(?w, :knows, :lucy) .");
    CHECK(ruleset_equivalent(a, b) == EquivalenceVerdict::Equivalent);
}

TEST_CASE("the empty rule set differs from a non-trivial one even over the empty database") {
    RuleSet empty;
    RuleSet diag = parse_rules("tr(?x, ?y, ?z) -> tr(?x, ?x, ?x) .");
    CHECK(ruleset_equivalent(empty, diag) == EquivalenceVerdict::NotEquivalent);
    // the single-database comparison cannot see the difference over the empty db
    CHECK(chase_db_equivalent(empty, diag, {}) == EquivalenceVerdict::Equivalent);
}

TEST_CASE("fact differences separate rule sets") {
    RuleSet a = parse_rules("tr(:a, :p, :b) .");
    RuleSet b = parse_rules("tr(:a, :p, :c) .");
    CHECK(ruleset_equivalent(a, b) == EquivalenceVerdict::NotEquivalent);
    CHECK(ruleset_equivalent(a, a) == EquivalenceVerdict::Equivalent);
}

TEST_CASE("a side without facts is refuted even though its own chase starves") {
    RuleSet a = parse_rules("p(?x, ?y) -> p(?y, !z) .");
    RuleSet b = parse_rules("p(?x, ?y) -> p(?y, !z) .\np(:a, :b) .");
    ChaseConfig cfg;
    cfg.max_steps = 50;
    cfg.max_nulls = 50;
    CHECK(ruleset_equivalent(a, b, cfg) == EquivalenceVerdict::NotEquivalent);
}

TEST_CASE("nonterminating chases yield inconclusive equivalence") {
    RuleSet a = parse_rules("p(:a, :b) .\np(?x, ?y) -> p(?y, !z) .");
    RuleSet b = parse_rules("p(:a, :b) .\np(?x, ?y) -> p(?y, !z) .\nq(:c) .");
    ChaseConfig cfg;
    cfg.max_steps = 50;
    cfg.max_nulls = 50;
    // q(:c) can never be derived, but the starved chase cannot prove that
    CHECK(ruleset_equivalent(a, b, cfg) == EquivalenceVerdict::Inconclusive);
}

TEST_CASE("the critical instance separates what the empty database cannot, sometimes") {
    RuleSet a = parse_rules("tr(:lucy, :knows, ?x) -> tr(?x, :knows, :lucy) .");
    RuleSet b = parse_rules("tr(:lucy, :knows, ?x) -> tr(?x, :likes, :lucy) .");
    CHECK(chase_db_equivalent(a, b, {}) == EquivalenceVerdict::Equivalent);  // both derive nothing
    Database crit = critical_instance(a, b);
    // constants: lucy, knows, likes + the marker, all tr-triples over them
    CHECK(crit.size() == 4 * 4 * 4);
    CHECK(chase_db_equivalent(a, b, crit) == EquivalenceVerdict::Equivalent);  // saturated already
    // a generic single-edge database does separate them
    Database edge{gtr("lucy", "knows", "someone")};
    CHECK(chase_db_equivalent(a, b, edge) == EquivalenceVerdict::NotEquivalent);
    // the entailment route needs no database guessing
    CHECK(ruleset_equivalent(a, b) == EquivalenceVerdict::NotEquivalent);
}

TEST_CASE("csv fact tables load one predicate per file") {
    auto atoms = parse_fact_table("Student441,Professor8\nStudent442,Professor9\n", "advisor", ',');
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].predicate == intern_symbol("advisor"));
    CHECK(atoms[0].args.size() == 2);
    CHECK(atoms[0].args[0].text() == example_ns() + "Student441");
    auto unary = parse_fact_table("S1\nS2\nS3\n", "Student", ',');
    CHECK(unary.size() == 3);
    CHECK(unary[0].args.size() == 1);
    CHECK_THROWS_AS(parse_fact_table("a,b\nc\n", "p", ','), std::invalid_argument);
}
