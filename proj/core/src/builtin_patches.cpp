#include "cle/builtin_patches.hpp"

#include <charconv>
#include <stdexcept>

namespace cle::hexgrid {

std::vector<Axial> rhombus_faces(int n) {
    if (n < 1) throw Error("rhombus size must be positive");
    std::vector<Axial> faces;
    faces.reserve(std::size_t(n) * n);
    for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r) faces.push_back({q, r});
    return faces;
}

std::vector<Axial> row_faces(int n) {
    if (n < 1) throw Error("row size must be positive");
    std::vector<Axial> faces;
    for (int q = 0; q < n; ++q) faces.push_back({q, 0});
    return faces;
}

std::vector<Axial> flower_faces() {
    std::vector<Axial> faces{{0, 0}};
    for (const Axial& nb : axial_neighbors({0, 0})) faces.push_back(nb);
    return faces;
}

std::vector<Axial> builtin_faces(const std::string& name) {
    if (name == "hex1") return {{0, 0}};
    if (name == "pair2") return {{0, 0}, {1, 0}};
    if (name == "flower7") return flower_faces();
    for (const std::string& prefix : {std::string("rhombus"), std::string("row")}) {
        if (name.rfind(prefix, 0) != 0) continue;
        std::string arg = name.substr(prefix.size());
        if (!arg.empty() && (arg[0] == ':' || arg[0] == ' ')) arg = arg.substr(1);
        int n = 0;
        auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
        if (ec != std::errc{} || p != arg.data() + arg.size())
            throw Error("bad patch size in '" + name + "'");
        return prefix == "rhombus" ? rhombus_faces(n) : row_faces(n);
    }
    throw Error("unknown patch name '" + name + "'");
}

}  // namespace cle::hexgrid
