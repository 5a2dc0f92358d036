#pragma once

#include <complex>
#include <sstream>
#include <string>
#include <vector>

namespace cle::svg {

// Minimal SVG 1.1 writer.  Input coordinates are mathematical (y up); the
// writer flips the y axis into screen coordinates.
class Document {
  public:
    void comment(const std::string& text);
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                 const std::string& stroke = "none", double stroke_width = 0.0);
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double width, bool closed = false);
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width);
    void circle(double x, double y, double r, const std::string& fill);
    void arrow(double x1, double y1, double x2, double y2, const std::string& stroke,
               double width);

    std::string render(double margin = 1.0, double scale = 40.0) const;

  private:
    struct Bounds {
        double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    };
    void grow(double x, double y);

    std::vector<std::string> body_;
    Bounds b_;
};

}  // namespace cle::svg
