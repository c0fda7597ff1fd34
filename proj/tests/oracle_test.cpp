#include <catch2/catch_amalgamated.hpp>

#include "support/builders.hpp"
#include "support/corpus.hpp"
#include "support/reference_semantics.hpp"
#include "support/rng.hpp"

using namespace tb;
using testsupport::CorpusGen;
using testsupport::CorpusParams;
using testsupport::ref_satisfies;
using testsupport::Rng;

namespace {

FiniteInterpretation lucy_knows_tom(std::vector<Term> universe) {
    FiniteInterpretation m(std::move(universe));
    m.add(c("lucy"), c("knows"), c("tom"));
    return m;
}

std::vector<Term> small_universe() { return {c("lucy"), c("knows"), c("tom")}; }

// every interpretation over the universe, including triples the formulas
// never mention; the dumb baseline the optimized check must agree with
template <typename Fn>
void for_all_interpretations(const std::vector<Term>& universe, Fn&& fn) {
    const std::size_t n = universe.size();
    const std::size_t slots = n * n * n;
    REQUIRE(slots <= 16);
    for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
        FiniteInterpretation m(universe);
        for (std::size_t s = 0; s < slots; ++s)
            if (mask & (1u << s)) m.add_indices(s / (n * n), (s / n) % n, s % n);
        fn(m);
    }
}

}  // namespace

TEST_CASE("an existential fact holds when some constant witnesses it") {
    FiniteInterpretation m = lucy_knows_tom(small_universe());
    CHECK(satisfies(m, parse_n3(":lucy :knows _:x .")));
    CHECK(satisfies(m, parse_n3(":lucy :knows :tom .")));
    CHECK_FALSE(satisfies(m, parse_n3(":tom :knows _:x .")));
}

TEST_CASE("implications with unsatisfiable bodies hold vacuously") {
    FiniteInterpretation empty(small_universe());
    CHECK(satisfies(empty, parse_n3("{?x :knows ?y} => {?y :knows ?x} .")));
    CHECK(satisfies(empty, parse_n3("{:lucy :knows :tom} => {:tom :knows :lucy} .")));
}

TEST_CASE("a datalog rule fails when a body match lacks its head") {
    FiniteInterpretation m = lucy_knows_tom(small_universe());
    CHECK_FALSE(satisfies(m, parse_n3("{:lucy :knows ?x} => {?x :knows :lucy} .")));
    m.add(c("tom"), c("knows"), c("lucy"));
    CHECK(satisfies(m, parse_n3("{:lucy :knows ?x} => {?x :knows :lucy} .")));
}

TEST_CASE("head existentials range over the whole universe") {
    FiniteInterpretation m = lucy_knows_tom(small_universe());
    // whoever lucy knows, lucy knows someone: witnessed by tom
    CHECK(satisfies(m, parse_n3("{:lucy :knows ?x} => {:lucy :knows _:y} .")));
    CHECK_FALSE(satisfies(m, parse_n3("{:lucy :knows ?x} => {?x :knows _:y} .")));
}

TEST_CASE("constants outside the universe are rejected") {
    FiniteInterpretation m(small_universe());
    CHECK_THROWS_AS(satisfies(m, parse_n3(":alien :knows :tom .")), std::invalid_argument);
    CHECK_THROWS_AS(FiniteInterpretation({c("a"), c("a")}), std::invalid_argument);
}

TEST_CASE("satisfaction of blank-free atomic conjunctions is monotone") {
    Rng rng(0x906f0123);
    std::vector<Term> universe{c("a"), c("b"), c("p")};
    for (int round = 0; round < 50; ++round) {
        FiniteInterpretation small(universe);
        FiniteInterpretation big(universe);
        for (int i = 0; i < 4; ++i) {
            std::size_t s = rng.below(3), p = rng.below(3), o = rng.below(3);
            if (rng.chance(60)) small.add_indices(s, p, o);
            big.add_indices(s, p, o);
        }
        for (const auto& t : small.triples()) big.add_indices(t[0], t[1], t[2]);
        Formula f = Formula::conjunction(atomic(c("a"), c("p"), bn("x")),
                                         atomic(bn("x"), c("p"), c("b")));
        if (satisfies(small, f)) CHECK(satisfies(big, f));
    }
}

TEST_CASE("equivalence is reflexive and separates distinct facts") {
    Formula f = parse_n3(":a :b :c .");
    Formula g = parse_n3(":a :b :d .");
    CHECK(n3_equivalent(f, f));
    std::vector<Term> universe{c("a"), c("b"), c("c"), c("d")};
    EquivalenceResult res = n3_equivalent_over(f, g, universe);
    CHECK_FALSE(res.equivalent);
    REQUIRE(res.witness.has_value());
    // the witness satisfies exactly one of the two
    CHECK(satisfies(*res.witness, f) != satisfies(*res.witness, g));
}

TEST_CASE("budget overruns raise an error naming the enumeration size") {
    Formula f = parse_n3(":k1 :k2 :k3 . _:a _:b _:c .");
    try {
        n3_equivalent(f, f, EquivalenceOptions{2, 10, 1u << 22});
        FAIL("expected budget exceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required_bits() > 10);
        CHECK(e.budget_bits() == 10);
        CHECK(std::string(e.what()).find("2^") != std::string::npos);
    }
}

TEST_CASE("the reduced enumeration agrees with full enumeration over tiny universes") {
    Rng rng(0xacc0dd);
    CorpusParams params;
    params.constant_pool = 1;
    params.max_triples = 3;
    params.max_relevant_bits = 8;
    CorpusGen gen(rng, params);
    std::vector<Term> universe{c("c0"), c("c1")};  // c1 doubles as the spare
    for (int round = 0; round < 40; ++round) {
        Formula f = gen.next();
        Formula g = rng.chance(50) ? to_pnf(f).union_formula() : gen.next();
        bool full = true;
        for_all_interpretations(universe, [&](const FiniteInterpretation& m) {
            if (satisfies(m, f) != satisfies(m, g)) full = false;
        });
        bool reduced = n3_equivalent(f, g, universe, 8);
        CAPTURE(serialize_n3(f), serialize_n3(g));
        CHECK(full == reduced);
    }
}

TEST_CASE("the oracle agrees with the reference recursion on random pairs") {
    Rng rng(0x5a715f1e);
    CorpusParams params;
    params.constant_pool = 2;
    params.max_relevant_bits = 0;
    CorpusGen gen(rng, params);
    std::vector<Term> universe{c("c0"), c("c1"), c("c2"), c("c3")};
    for (int round = 0; round < 150; ++round) {
        Formula f = gen.next();
        FiniteInterpretation m(universe);
        for (int i = 0; i < 5; ++i)
            if (rng.chance(70)) m.add_indices(rng.below(4), rng.below(4), rng.below(4));
        CAPTURE(serialize_n3(f));
        CHECK(satisfies(m, f) == ref_satisfies(m, f));
    }
}

TEST_CASE("adding spare constants never breaks a true equivalence") {
    Rng rng(0x57ab1e);
    CorpusParams params;
    params.max_relevant_bits = 12;
    CorpusGen gen(rng, params);
    for (int round = 0; round < 10; ++round) {
        Formula f = gen.next();
        Formula g = to_pnf(f).union_formula();
        bool with2 = n3_equivalent(f, g, EquivalenceOptions{2, 22, 1u << 22});
        bool with3 = n3_equivalent(f, g, EquivalenceOptions{3, 22, 1u << 22});
        CHECK(with2);
        CHECK(with3);
    }
}

TEST_CASE("fact versus blank fact splits on a fresh-constant interpretation") {
    Formula ground = parse_n3(":lucy :knows :tom .");
    Formula blank = parse_n3(":lucy :knows _:x .");
    CHECK_FALSE(n3_equivalent(ground, blank));
    // a model of the ground fact always models the blank version
    std::vector<Term> universe = equivalence_universe(ground, blank, 2);
    EquivalenceResult res = n3_equivalent_over(ground, blank, universe);
    REQUIRE(res.witness.has_value());
    CHECK(satisfies(*res.witness, blank));
    CHECK_FALSE(satisfies(*res.witness, ground));
}
