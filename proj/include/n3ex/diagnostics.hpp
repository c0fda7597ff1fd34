#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace n3ex {

/// Byte range in a source text, with line/column of the start for messages.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

enum class ParseErrorKind { Lexical, Syntactic, WellFormedness };

inline const char* to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::Lexical: return "lexical";
        case ParseErrorKind::Syntactic: return "syntactic";
        case ParseErrorKind::WellFormedness: return "well-formedness";
    }
    return "?";
}

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, SourceSpan span, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + " error at line " +
                             std::to_string(span.line) + ":" + std::to_string(span.column) +
                             ": " + message),
          kind_(kind),
          span_(span),
          message_(std::move(message)) {}

    ParseErrorKind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }
    const std::string& message() const { return message_; }

private:
    ParseErrorKind kind_;
    SourceSpan span_;
    std::string message_;
};

/// Thrown when an equivalence check would need to enumerate more
/// interpretations than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t required_bits, std::size_t budget_bits)
        : std::runtime_error("equivalence check requires enumerating 2^" +
                             std::to_string(required_bits) +
                             " interpretations (budget: 2^" + std::to_string(budget_bits) + ")"),
          required_bits_(required_bits),
          budget_bits_(budget_bits) {}

    std::size_t required_bits() const { return required_bits_; }
    std::size_t budget_bits() const { return budget_bits_; }

private:
    std::size_t required_bits_;
    std::size_t budget_bits_;
};

}  // namespace n3ex
