#include "cle/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cle/builtin_patches.hpp"

namespace cle::io {

std::vector<hexgrid::Axial> read_patch_file(std::istream& in) {
    std::vector<hexgrid::Axial> faces;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int q, r;
        if (ls >> q >> r) faces.push_back({q, r});
    }
    return faces;
}

std::vector<hexgrid::Axial> read_patch_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hexgrid::Error("cannot open patch file '" + path + "'");
    return read_patch_file(in);
}

void write_patch_file(std::ostream& out, const std::vector<hexgrid::Axial>& faces) {
    for (const auto& f : faces) out << f.q << ' ' << f.r << '\n';
}

std::vector<hexgrid::Axial> resolve_faces(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) return read_patch_file(name_or_path);
    return hexgrid::builtin_faces(name_or_path);
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < csv.size()) {
        std::size_t j = csv.find(',', i);
        if (j == std::string::npos) j = csv.size();
        if (j > i) {
            int v = 0;
            auto [p, ec] = std::from_chars(csv.data() + i, csv.data() + j, v);
            if (ec != std::errc{} || p != csv.data() + j)
                throw hexgrid::Error("bad integer list '" + csv + "'");
            out.push_back(v);
        }
        i = j + 1;
    }
    return out;
}

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    std::string s  = os.str();
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        std::ostringstream t;
        t.precision(prec);
        t << x;
        double back{};
        std::istringstream(t.str()) >> back;
        if (back == x) return t.str();
    }
    return s;
}

}  // namespace cle::io
