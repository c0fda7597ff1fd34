#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "n3ex/formula.hpp"
#include "n3ex/n3_parser.hpp"
#include "n3ex/rules.hpp"
#include "n3ex/term.hpp"

namespace n3ex {

// --- deep taxonomy -------------------------------------------------------------
//
// One individual in class N0; every level k rewrites membership in N_k to
// N_{k+1}, I_{k+1} and J_{k+1}, and only the N chain continues. The query of
// interest is membership in the last N class.

struct DeepTaxonomy {
    Formula fact;   // ":i a :N0 ."
    Formula rules;  // 3*depth implications
    int depth;

    /// Statement total by the benchmark's bundled-file convention: the
    /// membership fact plus all subclass rules.
    std::size_t rule_side_statements() const { return 3 * static_cast<std::size_t>(depth) + 1; }
};

inline DeepTaxonomy generate_deep_taxonomy(int depth) {
    if (depth < 1) throw std::invalid_argument("deep taxonomy depth must be at least 1");
    Term individual = Term::iri(example_ns() + "i");
    Term rdf_type = Term::iri(rdf_type_iri());
    auto cls = [](const char* stem, int k) {
        return Term::iri(example_ns() + stem + std::to_string(k));
    };

    DeepTaxonomy dt;
    dt.depth = depth;
    dt.fact = Formula::atomic({individual, rdf_type, cls("N", 0)});

    std::vector<Statement> rules;
    rules.reserve(3 * static_cast<std::size_t>(depth));
    Term x = Term::universal("x");
    for (int k = 0; k < depth; ++k) {
        for (const char* stem : {"N", "I", "J"}) {
            Expression body{{x, rdf_type, cls("N", k)}};
            Expression head{{x, rdf_type, cls(stem, k + 1)}};
            rules.push_back(Implication{std::move(body), std::move(head)});
        }
    }
    dt.rules = Formula::from_statements(std::move(rules));
    return dt;
}

// --- synthetic fact-scaling dataset ---------------------------------------------
//
// University-flavored rule set over unary and binary predicates: subclass
// and domain/range axioms, a few subproperties and joins, and a dozen
// existence axioms with existential heads. The existential dependencies are
// acyclic, so the chase terminates on any fact base.

namespace detail {

inline RuleTerm uv(const char* name) { return RuleTerm::variable(name, Quantifier::Universal); }
inline RuleTerm ev(const char* name) { return RuleTerm::variable(name, Quantifier::Existential); }

inline Atom a1(const char* pred, RuleTerm t) { return make_atom(pred, {std::move(t)}); }
inline Atom a2(const char* pred, RuleTerm t1, RuleTerm t2) {
    return make_atom(pred, {std::move(t1), std::move(t2)});
}

}  // namespace detail

inline RuleSet synthetic_university_rules() {
    using detail::a1;
    using detail::a2;
    auto x = [] { return detail::uv("x"); };
    auto y = [] { return detail::uv("y"); };
    auto z = [] { return detail::uv("z"); };
    auto ny = [] { return detail::ev("y"); };

    RuleSet rs;
    auto subclass = [&](const char* sub, const char* super) {
        rs.rules.push_back(ExRule::make({a1(sub, x())}, {a1(super, x())}));
    };
    auto domain = [&](const char* pred, const char* cls) {
        rs.rules.push_back(ExRule::make({a2(pred, x(), y())}, {a1(cls, x())}));
    };
    auto range = [&](const char* pred, const char* cls) {
        rs.rules.push_back(ExRule::make({a2(pred, x(), y())}, {a1(cls, y())}));
    };
    auto subproperty = [&](const char* sub, const char* super) {
        rs.rules.push_back(ExRule::make({a2(sub, x(), y())}, {a2(super, x(), y())}));
    };
    // C(x) -> exists y. p(x,y), D(y)
    auto existence = [&](const char* cls, const char* pred, const char* target) {
        rs.rules.push_back(
            ExRule::make({a1(cls, x())}, {a2(pred, x(), ny()), a1(target, ny())}));
    };

    subclass("GraduateStudent", "Student");
    subclass("UndergraduateStudent", "Student");
    subclass("TeachingAssistant", "Student");
    subclass("ResearchAssistant", "Student");
    subclass("Student", "Person");
    subclass("Lecturer", "Faculty");
    subclass("AssistantProfessor", "Professor");
    subclass("AssociateProfessor", "Professor");
    subclass("FullProfessor", "Professor");
    subclass("Chair", "Professor");
    subclass("Dean", "Professor");
    subclass("Professor", "Faculty");
    subclass("Faculty", "Employee");
    subclass("Employee", "Person");
    subclass("University", "Organization");
    subclass("Department", "Organization");
    subclass("ResearchGroup", "Organization");
    subclass("GraduateCourse", "Course");
    subclass("Article", "Publication");
    subclass("Book", "Publication");

    domain("advisor", "Student");
    range("advisor", "Professor");
    domain("takesCourse", "Student");
    range("takesCourse", "Course");
    domain("teacherOf", "Faculty");
    range("teacherOf", "Course");
    domain("worksFor", "Employee");
    range("worksFor", "Organization");
    domain("memberOf", "Person");
    range("memberOf", "Organization");
    domain("headOf", "Chair");
    range("headOf", "Department");
    domain("subOrganizationOf", "Organization");
    range("subOrganizationOf", "Organization");
    domain("teachingAssistantOf", "TeachingAssistant");
    range("teachingAssistantOf", "Course");
    domain("publicationAuthor", "Publication");
    range("publicationAuthor", "Person");
    domain("degreeFrom", "Person");
    range("degreeFrom", "University");

    subproperty("undergraduateDegreeFrom", "degreeFrom");
    subproperty("doctoralDegreeFrom", "degreeFrom");
    subproperty("headOf", "worksFor");

    existence("Professor", "worksFor", "Department");
    existence("GraduateStudent", "advisor", "Professor");
    existence("Faculty", "degreeFrom", "University");
    existence("Department", "subOrganizationOf", "University");
    existence("Student", "takesCourse", "Course");
    // every graduate course has some teacher (existential in subject position)
    rs.rules.push_back(ExRule::make({a1("GraduateCourse", x())},
                                    {a2("teacherOf", ny(), x()), a1("Faculty", ny())}));
    existence("Publication", "publicationAuthor", "Faculty");
    existence("ResearchGroup", "subOrganizationOf", "Department");
    existence("Chair", "headOf", "Department");
    existence("GraduateStudent", "undergraduateDegreeFrom", "University");
    existence("FullProfessor", "doctoralDegreeFrom", "University");
    existence("Dean", "headOf", "Department");

    // joins
    rs.rules.push_back(ExRule::make({a2("advisor", x(), y()), a2("worksFor", y(), z())},
                                    {a2("memberOf", x(), z())}));
    rs.rules.push_back(ExRule::make({a2("worksFor", x(), y()), a2("subOrganizationOf", y(), z())},
                                    {a2("memberOf", x(), z())}));
    rs.rules.push_back(ExRule::make({a2("memberOf", x(), y()), a2("subOrganizationOf", y(), z())},
                                    {a2("memberOf", x(), z())}));
    rs.rules.push_back(ExRule::make({a2("teacherOf", x(), y()), a2("takesCourse", z(), y())},
                                    {a2("instructs", x(), z())}));
    return rs;
}

/// Deterministic fact stream: entity ids are spread with a fixed linear
/// congruential generator, and a slice of each entity class is left without
/// its "expected" links so the existence axioms have work to do.
inline std::vector<Atom> synthetic_university_facts(std::uint64_t count) {
    using detail::a1;
    using detail::a2;
    std::vector<Atom> facts;
    facts.reserve(count);

    std::uint64_t state = 0x853c49e6748fea9bull;
    auto next = [&state] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    };
    auto ent = [](const char* stem, std::uint64_t id) {
        return RuleTerm::constant(example_ns() + stem + std::to_string(id));
    };

    for (std::uint64_t i = 0; facts.size() < count; ++i) {
        std::uint64_t r = next();
        std::uint64_t block = i / 16;
        RuleTerm student = ent("Student", i % (1 + count / 8));
        RuleTerm prof = ent("Professor", block % (1 + count / 64));
        RuleTerm course = ent("Course", i % (1 + count / 24));
        RuleTerm dept = ent("Department", block % (1 + count / 256));
        RuleTerm univ = ent("University", block % (1 + count / 2048));
        RuleTerm pub = ent("Publication", i % (1 + count / 32));
        switch (i % 16) {
            case 0: facts.push_back(a1(r % 3 == 0   ? "FullProfessor"
                                       : r % 3 == 1 ? "AssociateProfessor"
                                                    : "AssistantProfessor",
                                       prof));
                break;
            case 1: facts.push_back(a2("teacherOf", prof, course)); break;
            case 2: facts.push_back(a2("takesCourse", student, course)); break;
            case 3: facts.push_back(a1(r % 2 ? "UndergraduateStudent" : "GraduateStudent", student));
                break;
            case 4: facts.push_back(a2("takesCourse", student, course)); break;
            case 5: facts.push_back(a1("GraduateStudent", student)); break;
            case 6:
                if (r % 2) facts.push_back(a2("advisor", student, prof));
                else facts.push_back(a1(r % 4 == 0 ? "Book" : "Article", pub));
                break;
            case 7: facts.push_back(a2("publicationAuthor", pub, prof)); break;
            case 8:
                if (r % 2) facts.push_back(a2("worksFor", prof, dept));
                else facts.push_back(a1("Department", dept));
                break;
            case 9:
                if (r % 4 == 0) facts.push_back(a1("University", univ));
                else facts.push_back(a2("subOrganizationOf", dept, univ));
                break;
            case 10: facts.push_back(a2("memberOf", student, dept)); break;
            case 11: facts.push_back(a1(r % 2 ? "Course" : "GraduateCourse", course)); break;
            case 12: facts.push_back(a2("teachingAssistantOf", student, course)); break;
            case 13: facts.push_back(a2("undergraduateDegreeFrom", prof, univ)); break;
            case 14: facts.push_back(a1(r % 8 == 0 ? "ResearchGroup" : "Department", dept)); break;
            case 15:
                if (r % 2) facts.push_back(a2("headOf", prof, dept));
                else facts.push_back(a1("Lecturer", ent("Lecturer", block)));
                break;
        }
    }
    facts.resize(count);
    return facts;
}

// --- CSV/TSV fact ingestion -----------------------------------------------------

/// One row per atom; the predicate is supplied by the caller (by convention
/// the file's stem). Cells: "..." literal, <...> IRI, prefixed-style :name,
/// anything with "://" a full IRI, otherwise a bare name minted under the
/// example namespace.
inline std::vector<Atom> parse_fact_table(std::string_view text, std::string_view predicate,
                                          char separator) {
    auto cell_term = [](std::string cell) -> RuleTerm {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        std::size_t first = cell.find_first_not_of(' ');
        if (first == std::string::npos)
            throw std::invalid_argument("empty cell in fact table");
        cell = cell.substr(first);
        if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"')
            return RuleTerm::constant(cell);
        if (cell.size() >= 2 && cell.front() == '<' && cell.back() == '>')
            return RuleTerm::constant(cell.substr(1, cell.size() - 2));
        if (cell.front() == ':') return RuleTerm::constant(example_ns() + cell.substr(1));
        if (cell.find("://") != std::string::npos) return RuleTerm::constant(cell);
        return RuleTerm::constant(example_ns() + cell);
    };

    std::vector<Atom> out;
    Symbol pred = intern_symbol(predicate);
    std::size_t arity = 0;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;
        if (line.empty() || line == "\r") {
            if (line_start > text.size()) break;
            continue;
        }
        Atom a{pred, {}};
        std::size_t cell_start = 0;
        for (;;) {
            std::size_t cell_end = line.find(separator, cell_start);
            std::string cell(line.substr(cell_start, cell_end == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : cell_end - cell_start));
            a.args.push_back(cell_term(std::move(cell)));
            if (cell_end == std::string_view::npos) break;
            cell_start = cell_end + 1;
        }
        if (arity == 0) arity = a.args.size();
        else if (arity != a.args.size())
            throw std::invalid_argument("inconsistent column count in fact table for predicate " +
                                        std::string(predicate));
        out.push_back(std::move(a));
        if (line_start > text.size()) break;
    }
    return out;
}

}  // namespace n3ex
