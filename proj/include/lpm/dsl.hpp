#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lpm/magma.hpp"

namespace lpm {

/// Positioned syntax error (1-based line and column).
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

/// Parses the `lpm-table v1` format.
FiniteMagma parse_table(const std::string& text);

/// Parses the `lpm-rules v1` format. Both sections are required unless
/// `require_mul` is cleared (division-only inputs for the mul
/// construction pipeline); a missing mul section then yields no clauses.
RuleMagma parse_rules(const std::string& text, bool require_mul = true);

/// Dispatches on the header magic.
std::shared_ptr<const Magma> parse_magma(const std::string& text,
                                         bool require_mul = true);

std::string print_magma(const Magma& m);
std::string print_magma(const FiniteMagma& m);
std::string print_magma(const RuleMagma& m);

/// Registry of the built-in structures: nwp-N, wp-Z, pnl-N, z2, triv.
std::shared_ptr<const Magma> builtin(const std::string& name);
std::vector<std::string> builtin_names();
/// One-line description for the listing command.
std::string builtin_blurb(const std::string& name);
/// The canonical source text a builtin is parsed from.
const std::string& builtin_source(const std::string& name);

}  // namespace lpm
