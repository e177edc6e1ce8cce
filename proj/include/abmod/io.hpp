#ifndef ABMOD_IO_HPP
#define ABMOD_IO_HPP

#include <string>

#include "abmod/abmodule.hpp"

namespace abmod {

// Structured text description of a module, schema "abmod/1":
//
//   abmod/1
//   rank: 2
//   truncation: 18
//   name: E2            (optional)
//   a_matrix:
//   0 ; b^2
//   1 ; 0
//
// The a_matrix block has `rank` rows of `rank` series entries separated by
// ';'.  print/parse round-trip bit-exactly.
struct ModuleDescription {
    int rank = 0;
    int truncation = 1;
    std::string name;
    SeriesMatrix a_matrix;

    AbModule to_module() const { return AbModule(a_matrix); }
    static ModuleDescription from_module(const AbModule& m, std::string name = "");
};

// Throws ParseError with 1-based line/column positions.
ModuleDescription parse_module_description(const std::string& text);

std::string print_module_description(const ModuleDescription& d);

// Reads and parses a file; throws Error when unreadable.
ModuleDescription load_module_file(const std::string& path);

void save_module_file(const std::string& path, const ModuleDescription& d);

// FNV-1a digest of a byte string, rendered as 16 hex digits.
std::string content_digest(const std::string& bytes);

}  // namespace abmod

#endif
