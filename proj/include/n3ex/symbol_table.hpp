#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace n3ex {

using Symbol = std::uint32_t;

/// Process-wide append-only interner for constant and predicate names.
/// Interned ids make ground-term comparison O(1); all ordering that reaches
/// output goes through the text, so ids never leak into serialized results.
class SymbolTable {
public:
    static SymbolTable& global() {
        static SymbolTable table;
        return table;
    }

    Symbol intern(std::string_view name) {
        {
            std::shared_lock lock(mutex_);
            auto it = ids_.find(name);
            if (it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        Symbol id = static_cast<Symbol>(texts_.size());
        texts_.emplace_back(name);
        ids_.emplace(texts_.back(), id);
        return id;
    }

    const std::string& text(Symbol id) const {
        std::shared_lock lock(mutex_);
        return texts_[id];
    }

private:
    struct StringViewHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>()(s);
        }
    };
    struct StringViewEq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const { return a == b; }
    };

    mutable std::shared_mutex mutex_;
    std::deque<std::string> texts_;  // deque: stable references for the map keys
    std::unordered_map<std::string_view, Symbol, StringViewHash, StringViewEq> ids_;
};

inline Symbol intern_symbol(std::string_view name) { return SymbolTable::global().intern(name); }
inline const std::string& symbol_text(Symbol id) { return SymbolTable::global().text(id); }

}  // namespace n3ex
