#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "n3ex/term.hpp"

namespace n3ex {

inline bool is_name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

inline bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9');
}

inline bool is_local_char(char c) { return is_name_char(c) || c == '-'; }

inline bool is_valid_local(std::string_view s) {
    for (char c : s)
        if (!is_local_char(c)) return false;
    return true;
}

/// Namespace prefix table; insertion-ordered so that output is deterministic.
/// The empty prefix is stored as "".
class PrefixMap {
public:
    void add(std::string prefix, std::string ns) {
        for (auto& e : entries_) {
            if (e.first == prefix) {
                e.second = std::move(ns);
                return;
            }
        }
        entries_.emplace_back(std::move(prefix), std::move(ns));
    }

    const std::string* expand(std::string_view prefix) const {
        for (const auto& e : entries_)
            if (e.first == prefix) return &e.second;
        return nullptr;
    }

    /// Longest-namespace compaction to "prefix:local"; nullopt when no
    /// declared namespace matches with a serializable local part.
    std::optional<std::string> compact(const std::string& iri) const {
        const std::pair<std::string, std::string>* best = nullptr;
        for (const auto& e : entries_) {
            const std::string& ns = e.second;
            if (iri.size() < ns.size() || iri.compare(0, ns.size(), ns) != 0) continue;
            if (!is_valid_local(std::string_view(iri).substr(ns.size()))) continue;
            if (!best || ns.size() > best->second.size()) best = &e;
        }
        if (!best) return std::nullopt;
        return best->first + ":" + iri.substr(best->second.size());
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

inline PrefixMap default_prefixes() {
    PrefixMap m;
    m.add("", example_ns());
    m.add("rdf", rdf_ns());
    return m;
}

inline std::string escape_literal(std::string_view content) {
    std::string out;
    out.reserve(content.size() + 2);
    out.push_back('"');
    for (char c : content) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

/// Renders a constant for file output: compacted or bracketed IRI, or an
/// escaped literal.
inline std::string render_constant(const Term& t, const PrefixMap& prefixes) {
    if (t.is_literal()) return escape_literal(t.literal_content());
    if (auto c = prefixes.compact(t.text())) return *c;
    return "<" + t.text() + ">";
}

}  // namespace n3ex
