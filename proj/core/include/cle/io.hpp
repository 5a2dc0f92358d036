#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cle/hexgrid.hpp"

namespace cle::io {

// Patch description file: one "q r" integer pair per line, '#' comments.
std::vector<hexgrid::Axial> read_patch_file(std::istream& in);
std::vector<hexgrid::Axial> read_patch_file(const std::string& path);
void write_patch_file(std::ostream& out, const std::vector<hexgrid::Axial>& faces);

// Resolve a --faces argument: a builtin patch name or a file path.
std::vector<hexgrid::Axial> resolve_faces(const std::string& name_or_path);

// Parse "0,3,5" into face indices.
std::vector<int> parse_int_list(const std::string& csv);

// Shortest round-trippable representation of a double.
std::string format_double(double x);

}  // namespace cle::io
