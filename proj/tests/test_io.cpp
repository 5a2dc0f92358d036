#include <doctest.h>

#include <sstream>

#include "cle/io.hpp"
#include "cle/stats.hpp"
#include "cle/svg.hpp"

using namespace cle;

TEST_CASE("patch file round trip") {
    std::stringstream ss;
    ss << "# comment line\n0 0\n1 0   # trailing comment\n\n2 -1\n";
    const auto faces = io::read_patch_file(ss);
    REQUIRE(faces.size() == 3);
    CHECK(faces[1].q == 1);
    CHECK(faces[2].r == -1);
    std::stringstream out;
    io::write_patch_file(out, faces);
    const auto back = io::read_patch_file(out);
    CHECK(back == faces);
}

TEST_CASE("integer list parsing") {
    CHECK(io::parse_int_list("0,3,5") == std::vector<int>{0, 3, 5});
    CHECK(io::parse_int_list("").empty());
    CHECK(io::parse_int_list("7") == std::vector<int>{7});
    CHECK_THROWS(io::parse_int_list("1,x"));
}

TEST_CASE("double formatting round trips") {
    for (double x : {0.1, 1.0 / 3.0, 9.869604401089358, -1e-7, 12345.0}) {
        double back{};
        std::istringstream(io::format_double(x)) >> back;
        CHECK(back == x);
    }
}

TEST_CASE("svg document renders valid structure") {
    svg::Document doc;
    doc.comment("seed=7");
    doc.polygon({{0, 0}, {1, 0}, {1, 1}}, "#fff", "#000", 0.1);
    doc.polyline({{0, 0}, {0.5, 0.5}}, "#f00", 0.05);
    doc.circle(0.5, 0.5, 0.1, "#00f");
    const auto s = doc.render();
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("seed=7") != std::string::npos);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("<polygon") != std::string::npos);
    // y axis flipped into screen coordinates
    CHECK(s.find("0.5,-0.5") != std::string::npos);
}

TEST_CASE("statistics helpers") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    CHECK(stats::mean(xs) == doctest::Approx(2.5));
    CHECK(stats::variance(xs) == doctest::Approx(5.0 / 3.0));
    std::vector<double> ys{2.0, 4.0, 6.0, 8.0};
    CHECK(stats::correlation(xs, ys) == doctest::Approx(1.0));
    const auto fit = stats::linear_fit(xs, ys);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(0.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    // Kolmogorov tail: Q(very small) ~ 1, Q(large) ~ 0, Q(0.83) ~ 0.5.
    CHECK(stats::kolmogorov_q(0.05) == doctest::Approx(1.0));
    CHECK(stats::kolmogorov_q(2.5) < 1e-4);
    CHECK(stats::kolmogorov_q(0.8276) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("histogram bins") {
    std::vector<double> xs{0.1, 0.2, 0.5, 0.9, 1.5, -0.5};
    const auto h = stats::histogram(xs, 0.0, 1.0, 4);
    CHECK(h.counts == std::vector<std::size_t>{2, 0, 1, 1});
    CHECK(h.underflow == 1);
    CHECK(h.overflow == 1);
}
