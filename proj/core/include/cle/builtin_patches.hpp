#pragma once

#include <string>
#include <vector>

#include "cle/hexgrid.hpp"

namespace cle::hexgrid {

// Face sets of the built-in patch library: "hex1", "pair2", "flower7",
// "rhombus N" (also accepted as "rhombusN" or "rhombus:N") and "row N".
std::vector<Axial> builtin_faces(const std::string& name);

std::vector<Axial> rhombus_faces(int n);
std::vector<Axial> row_faces(int n);
std::vector<Axial> flower_faces();  // center plus its six neighbors

}  // namespace cle::hexgrid
