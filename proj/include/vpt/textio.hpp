#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "vpt/machines.hpp"

namespace vpt {

/// Diagnostic for a malformed machine file or input word.
struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t col;

    ParseError(std::size_t line_, std::size_t col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(col_) +
                             ": " + msg),
          line(line_),
          col(col_) {}
};

using Machine = std::variant<Vpa, Vpt, Fst>;

/// Parses the line-oriented machine format (see FORMAT.md). Throws
/// ParseError with position information on malformed input.
Machine parse_machine(std::string_view text);

std::string serialize(const Vpt& m);
std::string serialize(const Vpa& m);
std::string serialize(const Fst& m);
std::string serialize(const Machine& m);

/// Parses a space separated list of declared call/return symbol names.
InputWord parse_word(std::string_view text, const StructuredAlphabet& alphabet);

/// Renders a word as space separated symbol names; empty word renders as
/// the empty string.
std::string word_text(const InputWord& w, const StructuredAlphabet& alphabet);

}  // namespace vpt
