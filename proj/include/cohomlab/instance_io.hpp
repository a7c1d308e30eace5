#pragma once

// Plain-text instance files.  A Kummer instance is stored as blocks
// PARAMS, UMODULE, Y, GROUP, CHI, LAMBDA; the derived blocks are written
// canonically and re-verified bit-exactly on read.  Module files carry a
// single UMODULE block with an optional DSUB block of submodule
// generators.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "cohomlab/graded.hpp"
#include "cohomlab/massey.hpp"
#include "cohomlab/unipotent.hpp"

namespace cohomlab::io {

struct ParseError : std::runtime_error {
  ParseError(const std::string& where, int line, const std::string& msg)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + msg),
        line_number(line) {}
  int line_number;
};

massey::Instance read_instance(std::istream& in, const std::string& name);
massey::Instance read_instance_file(const std::string& path);
std::string write_instance(const massey::Instance& inst);

struct ModuleFile {
  graded::FilteredModule module;
  std::optional<linalg::RowSpan> dsub;  // embedded span when present
};
ModuleFile read_module(std::istream& in, const std::string& name);
ModuleFile read_module_file(const std::string& path);
std::string write_module(const graded::FilteredModule& m,
                         const std::optional<linalg::RowSpan>& dsub = {});

// Group-ring elements as `p m n : c_0 c_1 ... c_{|G|-1}` lines (n = 0 when
// the ring carries no character modulus).
std::string write_element(const groupring::GroupRingElement& x);
groupring::GroupRingElement read_element(const std::string& line);

// Unipotent matrices as row-major strict upper triangles.
std::vector<linalg::i64> upper_triangle(const unipotent::UnipotentMatrix& u);
unipotent::UnipotentMatrix from_upper_triangle(int dim, linalg::i64 modulus,
                                               const std::vector<linalg::i64>& entries);

}  // namespace cohomlab::io
