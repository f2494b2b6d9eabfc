#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vpt {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;
using StackId = std::uint32_t;

/// Bidirectional map between symbol names and dense integer ids.
/// Ids are assigned in insertion order, starting at 0.
class Interner {
public:
    /// Returns the id of `name`, interning it if unseen.
    SymbolId add(std::string_view name) {
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) return it->second;
        SymbolId id = static_cast<SymbolId>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return id;
    }

    std::optional<SymbolId> find(std::string_view name) const {
        auto it = ids_.find(std::string(name));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(std::string_view name) const { return find(name).has_value(); }

    const std::string& name(SymbolId id) const { return names_.at(id); }

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }

    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Interner& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> ids_;
};

/// Input alphabet partitioned into call and return symbols, plus a separate
/// output alphabet. Output symbols are single characters so that transition
/// outputs can be written as plain strings.
struct StructuredAlphabet {
    Interner calls;
    Interner returns;
    std::string outputs;  // sorted, unique chars

    void add_output(char c) {
        auto pos = outputs.find(c);
        if (pos == std::string::npos) {
            outputs.push_back(c);
            std::sort(outputs.begin(), outputs.end());
        }
    }

    bool has_output(char c) const { return outputs.find(c) != std::string::npos; }

    /// True iff every character of `word` is a declared output symbol.
    bool output_word_ok(std::string_view word) const {
        for (char c : word)
            if (!has_output(c)) return false;
        return true;
    }

    bool operator==(const StructuredAlphabet& other) const {
        return calls == other.calls && returns == other.returns && outputs == other.outputs;
    }
};

}  // namespace vpt
