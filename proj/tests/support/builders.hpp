#pragma once

// Shorthand constructors shared by the test suites.

#include <string>
#include <vector>

#include "n3ex/n3ex.hpp"

namespace tb {

using namespace n3ex;

inline Term c(const std::string& local) { return Term::iri(example_ns() + local); }
inline Term lit(const std::string& content) { return Term::literal(content); }
inline Term bn(const std::string& label) { return Term::existential(label); }
inline Term uv(const std::string& label) { return Term::universal(label); }
inline Term rdf_type() { return Term::iri(rdf_type_iri()); }

inline Triple t(Term s, Term p, Term o) { return {std::move(s), std::move(p), std::move(o)}; }

inline Formula atomic(Term s, Term p, Term o) {
    return Formula::atomic(t(std::move(s), std::move(p), std::move(o)));
}

inline Formula rule(Expression body, Expression head) {
    return Formula::implication({std::move(body), std::move(head)});
}

// rule-language side
inline RuleTerm rc(const std::string& local) { return RuleTerm::constant(example_ns() + local); }
inline RuleTerm rlit(const std::string& content) { return RuleTerm::constant("\"" + content + "\""); }
inline RuleTerm ru(const std::string& label) {
    return RuleTerm::variable(label, Quantifier::Universal);
}
inline RuleTerm re(const std::string& label) {
    return RuleTerm::variable(label, Quantifier::Existential);
}

inline Atom tr(RuleTerm s, RuleTerm p, RuleTerm o) {
    return Atom{tr_predicate(), {std::move(s), std::move(p), std::move(o)}};
}

inline GroundAtom gtr(const std::string& s, const std::string& p, const std::string& o) {
    return GroundAtom{tr_predicate(),
                      {GroundTerm::constant(example_ns() + s), GroundTerm::constant(example_ns() + p),
                       GroundTerm::constant(example_ns() + o)}};
}

inline Instance instance_of(const std::vector<GroundAtom>& atoms) {
    Instance inst;
    for (const GroundAtom& a : atoms) inst.insert(a);
    return inst;
}

}  // namespace tb
