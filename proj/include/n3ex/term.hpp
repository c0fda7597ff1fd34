#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace n3ex {

inline const std::string& example_ns() {
    static const std::string ns = "http://www.example.org#";
    return ns;
}

inline const std::string& rdf_ns() {
    static const std::string ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    return ns;
}

inline const std::string& rdf_type_iri() {
    static const std::string iri = rdf_ns() + "type";
    return iri;
}

enum class TermKind { Constant, Existential, Universal };

/// A term of the N3 fragment: a constant (IRI or literal), an existential
/// variable (blank node) or a universal variable.
///
/// Constants store a canonical text: the full IRI, or the literal content
/// wrapped in double quotes. The leading quote is what distinguishes the two
/// lexical categories; the logic treats both uniformly.
class Term {
public:
    Term() : kind_(TermKind::Constant), text_("\"\"") {}

    static Term iri(std::string full_iri) {
        if (full_iri.empty()) throw std::invalid_argument("empty IRI");
        return Term(TermKind::Constant, std::move(full_iri));
    }

    static Term literal(std::string_view content) {
        std::string text;
        text.reserve(content.size() + 2);
        text.push_back('"');
        text.append(content);
        text.push_back('"');
        return Term(TermKind::Constant, std::move(text));
    }

    /// Constant from canonical text (IRI, or quote-wrapped literal).
    static Term constant(std::string canonical) {
        if (canonical.empty()) throw std::invalid_argument("empty constant");
        return Term(TermKind::Constant, std::move(canonical));
    }

    static Term existential(std::string label) {
        if (label.empty()) throw std::invalid_argument("empty blank node label");
        return Term(TermKind::Existential, std::move(label));
    }

    static Term universal(std::string label) {
        if (label.empty()) throw std::invalid_argument("empty variable label");
        return Term(TermKind::Universal, std::move(label));
    }

    TermKind kind() const { return kind_; }
    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_existential() const { return kind_ == TermKind::Existential; }
    bool is_universal() const { return kind_ == TermKind::Universal; }
    bool is_variable() const { return kind_ != TermKind::Constant; }

    /// Canonical text for constants, label for variables.
    const std::string& text() const { return text_; }

    bool is_literal() const { return is_constant() && !text_.empty() && text_[0] == '"'; }
    bool is_iri() const { return is_constant() && !is_literal(); }

    /// Literal content without the surrounding quotes.
    std::string_view literal_content() const {
        std::string_view v = text_;
        v.remove_prefix(1);
        v.remove_suffix(1);
        return v;
    }

    friend bool operator==(const Term& a, const Term& b) = default;
    friend auto operator<=>(const Term& a, const Term& b) = default;

private:
    Term(TermKind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

    TermKind kind_;
    std::string text_;
};

/// Debug/display rendering; file serialization lives in the parsers.
inline std::string to_display(const Term& t) {
    switch (t.kind()) {
        case TermKind::Constant: return t.is_literal() ? t.text() : "<" + t.text() + ">";
        case TermKind::Existential: return "_:" + t.text();
        case TermKind::Universal: return "?" + t.text();
    }
    return "?";
}

struct TermHash {
    std::size_t operator()(const Term& t) const {
        return std::hash<std::string>()(t.text()) * 3 + static_cast<std::size_t>(t.kind());
    }
};

}  // namespace n3ex
