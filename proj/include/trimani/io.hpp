#pragma once

// Facet-list text format:
//   d=3 n=<f0>
//   a b c d        (one facet per line, 1-based labels)
// '#' starts a comment; blank lines are ignored.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "trimani/complex.hpp"

namespace trimani {

Complex parse_facet_text(std::string_view text);
Complex read_facet_file(const std::filesystem::path& path);

std::string format_facets(const Complex& k);
void write_facets(std::ostream& out, const Complex& k);
void write_facet_file(const std::filesystem::path& path, const Complex& k);

}  // namespace trimani
