#pragma once

#include "chaselab/model.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chaselab {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

ConstraintSet parse_constraints(std::string_view text);
ConstraintSet parse_constraints(std::istream& in);

// When `schema` is given, atoms are checked against it as well as against each other.
Instance parse_instance(std::string_view text, const Schema* schema = nullptr);
Instance parse_instance(std::istream& in, const Schema* schema = nullptr);

// Normalized text; parse_* of the result reproduces the input value.
std::string serialize(const ConstraintSet& s);
std::string serialize(const Instance& inst);
// Instance-file spelling: constants bare unless they need quotes, nulls with `_`.
std::string serialize(const Term& t);
std::string serialize(const Atom& a);

ConstraintSet load_constraints(const std::string& path);
Instance load_instance(const std::string& path, const Schema* schema = nullptr);

} // namespace chaselab
