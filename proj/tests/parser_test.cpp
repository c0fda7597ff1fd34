#include <catch2/catch_amalgamated.hpp>

#include "support/builders.hpp"
#include "support/corpus.hpp"
#include "support/rng.hpp"

using namespace tb;
using testsupport::CorpusGen;
using testsupport::CorpusParams;
using testsupport::Rng;

TEST_CASE("parses a ground triple with prefixed names") {
    Formula f = parse_n3(":lucy :knows :tom .");
    REQUIRE(f.size() == 1);
    CHECK(f == atomic(c("lucy"), c("knows"), c("tom")));
}

TEST_CASE("parses an implication with universals and head blanks") {
    Formula f = parse_n3(R"({?x :knows :tom} => {?x :knows _:y. _:y :name "Tom"} .)");
    REQUIRE(f.is_single_implication());
    const Implication& r = std::get<Implication>(f.statements()[0]);
    REQUIRE(r.body.size() == 1);
    REQUIRE(r.head.size() == 2);
    CHECK(r.body[0].subject.is_universal());
    CHECK(r.body[0].subject == r.head[0].subject);
    CHECK(r.head[0].object.is_existential());
    CHECK(r.head[0].object == r.head[1].subject);
    CHECK(r.head[1].object == lit("Tom"));
    CHECK(is_well_formed(r));
}

TEST_CASE("rejects an implication introducing a universal in its head") {
    try {
        parse_n3("{:lucy :knows :tom} => {?x :is :happy} .");
        FAIL("expected a well-formedness error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::WellFormedness);
        CHECK(e.message().find("?x") != std::string::npos);
    }
}

TEST_CASE("prefix directives resolve and 'a' expands to rdf:type") {
    Formula f = parse_n3(
        "@prefix ex: <http://example.com/ns#> .\n"
        "ex:i a ex:C .");
    REQUIRE(f.size() == 1);
    const Triple& t = std::get<Triple>(f.statements()[0]);
    CHECK(t.subject == Term::iri("http://example.com/ns#i"));
    CHECK(t.predicate == rdf_type());
    CHECK(t.object == Term::iri("http://example.com/ns#C"));
}

TEST_CASE("unknown prefixes are rejected with a span") {
    try {
        parse_n3(":a :b unknown:c .");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::Syntactic);
        CHECK(e.span().begin < std::string(":a :b unknown:c .").size());
        CHECK_FALSE(e.message().empty());
    }
}

TEST_CASE("keyword 'a' is only a predicate") {
    CHECK_THROWS_AS(parse_n3("a :p :o ."), ParseError);
}

TEST_CASE("universal variables are not allowed in top-level triples") {
    CHECK_THROWS_AS(parse_n3("?x :p :o ."), ParseError);
}

TEST_CASE("blank labels co-refer at document scope but not into rule parts") {
    Formula f = parse_n3("_:x :p :o . {_:x :b :c} => {_:x :d :e} . _:x :q :o .");
    REQUIRE(f.size() == 3);
    const Triple& t1 = std::get<Triple>(f.statements()[0]);
    const Triple& t3 = std::get<Triple>(f.statements()[2]);
    const Implication& r = std::get<Implication>(f.statements()[1]);
    CHECK(t1.subject == t3.subject);                    // document scope co-refers
    CHECK(t1.subject != r.body[0].subject);             // body scope is its own
    CHECK(r.body[0].subject != r.head[0].subject);      // head scope is its own
}

TEST_CASE("universal scope spans body and head of one implication only") {
    Formula f = parse_n3("{?x :p :o} => {?x :q :o} . {?x :r :o} => {?x :s :o} .");
    const Implication& r1 = std::get<Implication>(f.statements()[0]);
    const Implication& r2 = std::get<Implication>(f.statements()[1]);
    CHECK(r1.body[0].subject == r1.head[0].subject);
    CHECK(r1.body[0].subject != r2.body[0].subject);  // renamed apart per rule
}

TEST_CASE("parse errors carry spans inside the input") {
    const std::string inputs[] = {
        ":a :b .",             // missing object
        ":a :b :c",            // missing dot
        "{:a :b :c} => .",     // missing head
        "{} => {:a :b :c} .",  // empty body
        ":a :b \"unterminated",
        "@prefix foo <http://x#> .",
        ":a :b <unterminated-iri .",
        "=> :a :b :c .",
    };
    for (const std::string& input : inputs) {
        CAPTURE(input);
        try {
            parse_n3(input);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.span().begin <= input.size());
            CHECK_FALSE(e.message().empty());
        }
    }
}

TEST_CASE("serialization round trip preserves structure") {
    const char* docs[] = {
        ":lucy :knows :tom .",
        ":lucy :knows _:x .",
        "{:lucy :knows ?x} => {?x :knows :lucy} .",
        "{?x :knows :tom} => {?x :knows _:y. _:y :name \"Tom\"} .",
        ":lucy :knows _:y . _:y :likes :cake .",
        "{_:x :likes :cake} => {:cake :is :good} .",
        ":s :p \"esc\\\"aped\\n\" . <http://other.org/x> a :C .",
    };
    for (const char* doc : docs) {
        CAPTURE(doc);
        Formula f = parse_n3(doc);
        std::string text = serialize_n3(f);
        Formula g = parse_n3(text);
        CHECK(structurally_equivalent(f, g));
    }
}

TEST_CASE("serialization emits one statement per line with used prefixes") {
    Formula f = Formula::conjunction(atomic(c("a"), c("p"), c("b")),
                                     atomic(c("x"), rdf_type(), c("C")));
    std::string text = serialize_n3(f);
    CHECK(text == "@prefix : <http://www.example.org#> .\n:a :p :b .\n:x a :C .\n");
}

TEST_CASE("random documents round trip through text") {
    Rng rng(0x5eedbeef);
    CorpusParams params;
    params.max_relevant_bits = 0;
    CorpusGen gen(rng, params);
    for (int i = 0; i < 150; ++i) {
        Formula f = gen.next();
        std::string text = serialize_n3(f);
        CAPTURE(text);
        Formula g;
        REQUIRE_NOTHROW(g = parse_n3(text));
        CHECK(structurally_equivalent(f, g));
        // a second round trip is textually stable up to the parser's renaming
        CHECK(structurally_equivalent(parse_n3(serialize_n3(g)), g));
    }
}

// --- rule text format ---------------------------------------------------------

TEST_CASE("parses a rule with universals and existentials") {
    RuleSet rs = parse_rules(R"(tr(?x, :knows, :tom) -> tr(?x, :knows, !y), tr(!y, :name, "Tom") .)");
    REQUIRE(rs.rules.size() == 1);
    REQUIRE(rs.facts.empty());
    const ExRule& r = rs.rules[0];
    REQUIRE(r.body().size() == 1);
    REQUIRE(r.head().size() == 2);
    CHECK(r.frontier().size() == 1);
    CHECK(r.existentials().size() == 1);
    CHECK(r.body()[0].predicate == tr_predicate());
}

TEST_CASE("parses a body-empty rule") {
    RuleSet rs = parse_rules("-> tr(:lucy, :knows, !x) .");
    REQUIRE(rs.rules.size() == 1);
    CHECK(rs.rules[0].has_empty_body());
    CHECK(rs.rules[0].existentials().size() == 1);
    CHECK_FALSE(rs.rules[0].is_fact());
}

TEST_CASE("parses facts and comments") {
    RuleSet rs = parse_rules("% a comment\ntr(:a, :b, :c) .\nStudent(:s1) .\n");
    CHECK(rs.rules.empty());
    REQUIRE(rs.facts.size() == 2);
    CHECK(rs.facts[0].predicate == tr_predicate());
    CHECK(rs.facts[1].args.size() == 1);
}

TEST_CASE("rejects unsafe rules naming the variable") {
    try {
        parse_rules("tr(:a, :b, :c) -> tr(?x, :b, :c) .");
        FAIL("expected a safety error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseErrorKind::WellFormedness);
        CHECK(e.message().find("?x") != std::string::npos);
    }
}

TEST_CASE("rejects existentials in rule bodies") {
    CHECK_THROWS_AS(parse_rules("tr(!x, :b, :c) -> tr(:a, :b, :c) ."), ParseError);
}

TEST_CASE("rejects arity mismatches and misuses of tr") {
    CHECK_THROWS_AS(parse_rules("p(:a) .\np(:a, :b) ."), ParseError);
    CHECK_THROWS_AS(parse_rules("tr(:a, :b) ."), ParseError);
}

TEST_CASE("rejects non-ground facts and nulls in rules") {
    CHECK_THROWS_AS(parse_rules("p(?x) ."), ParseError);
    CHECK_THROWS_AS(parse_rules("p(_:n1) -> q(_:n1) ."), ParseError);
}

TEST_CASE("facts may carry labeled nulls for instance round trips") {
    RuleSet rs = parse_rules("tr(:lucy, :knows, _:n1) .\ntr(_:n1, :name, \"Tom\") .");
    REQUIRE(rs.facts.size() == 2);
    CHECK(rs.facts[0].args[2].is_null());
    CHECK(rs.facts[0].args[2] == rs.facts[1].args[0]);
}

TEST_CASE("rule text round trips") {
    const char* files[] = {
        "tr(:lucy, :knows, :tom) .",
        "-> tr(:lucy, :knows, !x) .",
        "tr(:lucy, :knows, ?x) -> tr(?x, :knows, :lucy) .",
        "tr(?x, :knows, :tom) -> tr(?x, :knows, !y), tr(!y, :name, \"Tom\") .",
        "advisor(?x, ?y) -> Student(?x) .\nProfessor(?p) -> worksFor(?p, !d), Department(!d) .",
        "tr(:a, :b, _:n1) .",
    };
    for (const char* file : files) {
        CAPTURE(file);
        RuleSet rs = parse_rules(file);
        std::string text = serialize_rules(rs);
        RuleSet back = parse_rules(text);
        CHECK(rulesets_structurally_equal(rs, back));
        CHECK(serialize_rules(back) == text);  // serialization is a fixpoint
    }
}
