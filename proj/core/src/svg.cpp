#include "cle/svg.hpp"

#include <cmath>
#include <iomanip>

namespace cle::svg {

namespace {
std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(8) << x;
    return os.str();
}
}  // namespace

void Document::grow(double x, double y) {
    b_.xlo = std::min(b_.xlo, x);
    b_.xhi = std::max(b_.xhi, x);
    b_.ylo = std::min(b_.ylo, y);
    b_.yhi = std::max(b_.yhi, y);
}

void Document::comment(const std::string& text) { body_.push_back("<!-- " + text + " -->"); }

void Document::polygon(const std::vector<std::pair<double, double>>& pts,
                       const std::string& fill, const std::string& stroke,
                       double stroke_width) {
    std::ostringstream os;
    os << "<polygon points=\"";
    for (const auto& [x, y] : pts) {
        grow(x, y);
        os << fmt(x) << ',' << fmt(-y) << ' ';
    }
    os << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
       << fmt(stroke_width) << "\"/>";
    body_.push_back(os.str());
}

void Document::polyline(const std::vector<std::pair<double, double>>& pts,
                        const std::string& stroke, double width, bool closed) {
    std::ostringstream os;
    os << (closed ? "<polygon points=\"" : "<polyline points=\"");
    for (const auto& [x, y] : pts) {
        grow(x, y);
        os << fmt(x) << ',' << fmt(-y) << ' ';
    }
    os << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
       << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>";
    body_.push_back(os.str());
}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                    double width) {
    grow(x1, y1);
    grow(x2, y2);
    std::ostringstream os;
    os << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(-y1) << "\" x2=\"" << fmt(x2)
       << "\" y2=\"" << fmt(-y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
       << fmt(width) << "\" stroke-linecap=\"round\"/>";
    body_.push_back(os.str());
}

void Document::circle(double x, double y, double r, const std::string& fill) {
    grow(x - r, y - r);
    grow(x + r, y + r);
    std::ostringstream os;
    os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(-y) << "\" r=\"" << fmt(r)
       << "\" fill=\"" << fill << "\"/>";
    body_.push_back(os.str());
}

void Document::arrow(double x1, double y1, double x2, double y2, const std::string& stroke,
                     double width) {
    line(x1, y1, x2, y2, stroke, width);
    // Arrow head.
    const double dx = x2 - x1, dy = y2 - y1;
    const double len = std::hypot(dx, dy);
    if (len <= 0) return;
    const double ux = dx / len, uy = dy / len;
    const double s = 4.0 * width;
    line(x2, y2, x2 - s * (ux + 0.5 * uy), y2 - s * (uy - 0.5 * ux), stroke, width);
    line(x2, y2, x2 - s * (ux - 0.5 * uy), y2 - s * (uy + 0.5 * ux), stroke, width);
}

std::string Document::render(double margin, double scale) const {
    const double xlo = b_.xlo - margin, ylo = -b_.yhi - margin;
    const double w = (b_.xhi - b_.xlo) + 2 * margin;
    const double h = (b_.yhi - b_.ylo) + 2 * margin;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << fmt(w * scale) << "\" height=\"" << fmt(h * scale) << "\" viewBox=\"" << fmt(xlo)
       << ' ' << fmt(ylo) << ' ' << fmt(w) << ' ' << fmt(h) << "\">\n";
    for (const auto& s : body_) os << s << '\n';
    os << "</svg>\n";
    return os.str();
}

}  // namespace cle::svg
