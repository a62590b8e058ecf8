#pragma once

#include <string>
#include <variant>

#include "tilescott/diagram.hpp"
#include "tilescott/tiling.hpp"

namespace tilescott {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

using Document = std::variant<BicoloredTiling, PathDiagram>;

// Normative v1 text formats; see README for the grammar.
Document parse_document(const std::string& text);
std::string serialize_document(const BicoloredTiling& t);
std::string serialize_document(const PathDiagram& d);
std::string serialize_document(const Document& doc);

}  // namespace tilescott
