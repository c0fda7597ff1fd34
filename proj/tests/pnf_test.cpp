#include <catch2/catch_amalgamated.hpp>

#include "support/builders.hpp"
#include "support/corpus.hpp"
#include "support/rng.hpp"

using namespace tb;
using testsupport::CorpusGen;
using testsupport::CorpusParams;
using testsupport::Rng;

TEST_CASE("conjuncts sharing a blank stay in one piece") {
    Formula f = parse_n3(":lucy :knows _:y . _:y :likes :cake .");
    auto pieces = split_pieces(f);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].size() == 2);
}

TEST_CASE("blank-disjoint conjuncts split apart") {
    Formula f = parse_n3(":a :p _:x . :b :q _:y .");
    auto pieces = split_pieces(f);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0] == parse_n3(":a :p _:x ."));
}

TEST_CASE("a single ground triple is its own piece") {
    Formula f = parse_n3(":a :p :b .");
    auto pieces = split_pieces(f);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0] == f);
}

TEST_CASE("ground conjuncts split one piece per triple") {
    Formula f = parse_n3(":a :p :b . :c :q :d . :e :r :f .");
    CHECK(split_pieces(f).size() == 3);
}

TEST_CASE("blank connectivity is transitive") {
    Formula f = parse_n3(":a :p _:x . _:x :q _:y . _:y :r :b . :other :s :t .");
    auto pieces = split_pieces(f);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].size() == 3);
    CHECK(pieces[1].size() == 1);
}

TEST_CASE("implications are always singleton pieces") {
    Formula f = parse_n3("_:x :p :o . {_:x :b :c} => {_:x :d :e} .");
    auto pieces = split_pieces(f);
    REQUIRE(pieces.size() == 2);  // rule-part blanks do not connect to the document
}

TEST_CASE("body existentials become fresh universals") {
    Formula f = parse_n3("{_:x :likes :cake} => {:cake :is :good} .");
    const Implication& r = std::get<Implication>(f.statements()[0]);
    Implication n = eliminate_body_existentials(r);
    REQUIRE(n.body.size() == 1);
    CHECK(n.body[0].subject.is_universal());
    CHECK(n.body[0].subject.text() == "v0");
    CHECK(n.head == r.head);
    CHECK(free_existentials(n.body).empty());
}

TEST_CASE("rules without body existentials are unchanged") {
    Formula f = parse_n3("{?x :knows :tom} => {?x :knows _:y} .");
    const Implication& r = std::get<Implication>(f.statements()[0]);
    CHECK(eliminate_body_existentials(r) == r);
}

TEST_CASE("repeated body existential gets one fresh universal for both occurrences") {
    Formula f = parse_n3("{_:x :p _:x} => {:a :b :c} .");
    const Implication& r = std::get<Implication>(f.statements()[0]);
    Implication n = eliminate_body_existentials(r);
    CHECK(n.body[0].subject == n.body[0].object);
    CHECK(n.body[0].subject.is_universal());
}

TEST_CASE("distinct body existentials get distinct universals") {
    Implication r{{t(bn("x"), c("p"), bn("y"))}, {t(c("a"), c("b"), c("c"))}};
    Implication n = eliminate_body_existentials(r);
    CHECK(n.body[0].subject.is_universal());
    CHECK(n.body[0].object.is_universal());
    CHECK(n.body[0].subject != n.body[0].object);  // injective
}

TEST_CASE("fresh names skip labels already used in the rule") {
    Implication r{{t(bn("x"), c("p"), uv("v0"))}, {t(uv("v0"), c("q"), c("c"))}};
    Implication n = eliminate_body_existentials(r);
    CHECK(n.body[0].subject.is_universal());
    CHECK(n.body[0].subject != uv("v0"));
}

TEST_CASE("an already-normalized rule is a single piece of its own") {
    Formula f = parse_n3("{?x :knows :tom} => {?x :knows _:y. _:y :name \"Tom\"} .");
    PieceSet ps = to_pnf(f);
    REQUIRE(ps.pieces.size() == 1);
    CHECK(ps.pieces[0].kind == PieceKind::Rule);
    CHECK(structurally_equivalent(ps.pieces[0].formula, f));
    CHECK(is_valid_pnf(ps));
}

TEST_CASE("pnf splits pieces and normalizes rule bodies") {
    Formula f = parse_n3(
        ":lucy :knows _:y . _:y :likes :cake . {_:x :likes :cake} => {:cake :is :good} .");
    PieceSet ps = to_pnf(f);
    REQUIRE(ps.pieces.size() == 2);
    CHECK(ps.pieces[0].kind == PieceKind::Atomic);
    CHECK(ps.pieces[0].formula.size() == 2);
    CHECK(ps.pieces[1].kind == PieceKind::Rule);
    const Implication& r = std::get<Implication>(ps.pieces[1].formula.statements()[0]);
    CHECK(free_existentials(r.body).empty());
    CHECK(is_valid_pnf(ps));
}

TEST_CASE("ground documents normalize to one piece per triple") {
    PieceSet ps = to_pnf(parse_n3(":a :p :b . :c :q :d ."));
    REQUIRE(ps.pieces.size() == 2);
    for (const Piece& p : ps.pieces) {
        CHECK(p.kind == PieceKind::Atomic);
        CHECK(p.formula.size() == 1);
    }
}

TEST_CASE("pnf is idempotent modulo renaming") {
    Rng rng(0x9e3779b9);
    CorpusParams params;
    params.max_relevant_bits = 0;
    CorpusGen gen(rng, params);
    for (int i = 0; i < 80; ++i) {
        Formula f = gen.next();
        PieceSet first = to_pnf(f);
        PieceSet second = to_pnf(first.union_formula());
        REQUIRE(second.pieces.size() == first.pieces.size());
        for (std::size_t p = 0; p < first.pieces.size(); ++p) {
            CHECK(second.pieces[p].kind == first.pieces[p].kind);
            CHECK(structurally_equivalent(second.pieces[p].formula, first.pieces[p].formula));
        }
    }
}

TEST_CASE("pnf output is maximally split") {
    Rng rng(0x13371337);
    CorpusParams params;
    params.max_relevant_bits = 0;
    CorpusGen gen(rng, params);
    int merged_pairs = 0;
    for (int i = 0; i < 120 && merged_pairs < 30; ++i) {
        PieceSet ps = to_pnf(gen.next());
        CHECK(is_valid_pnf(ps));
        if (ps.pieces.size() < 2) continue;
        ++merged_pairs;
        Formula merged = Formula::conjunction(ps.pieces[0].formula, ps.pieces[1].formula);
        CHECK(split_pieces(merged).size() >= 2);
    }
    CHECK(merged_pairs >= 30);
}

TEST_CASE("pnf size stays linear in the input") {
    Rng rng(0xabcdef01);
    CorpusParams params;
    params.max_relevant_bits = 0;
    CorpusGen gen(rng, params);
    for (int i = 0; i < 80; ++i) {
        Formula f = gen.next();
        PieceSet ps = to_pnf(f);
        std::size_t in_statements = f.size();
        std::size_t out_statements = 0;
        for (const Piece& p : ps.pieces) out_statements += p.formula.size();
        CHECK(out_statements == in_statements);  // renaming and regrouping only
    }
}

TEST_CASE("pnf preserves meaning on small formulas, oracle-checked") {
    Rng rng(0x0acce55);
    CorpusParams params;
    params.max_relevant_bits = 14;
    CorpusGen gen(rng, params);
    for (int i = 0; i < 25; ++i) {
        Formula f = gen.next();
        Formula g = to_pnf(f).union_formula();
        CAPTURE(serialize_n3(f));
        CHECK(n3_equivalent(f, g));
    }
}
