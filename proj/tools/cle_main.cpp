// cle: sampling, verification and figure emission for hexagonal loop
// ensembles and Schramm-Loewner/conformal-loop-ensemble processes.

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cle/builtin_patches.hpp"
#include "cle/gasket.hpp"
#include "cle/hexgrid.hpp"
#include "cle/io.hpp"
#include "cle/loewner.hpp"
#include "cle/loops.hpp"
#include "cle/onmodel.hpp"
#include "cle/stats.hpp"
#include "cle/stochastic.hpp"
#include "cle/svg.hpp"
#include "cle/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using cle::hexgrid::HexPatch;

uint64_t default_seed() {
    if (const char* env = std::getenv("CLE_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

HexPatch load_patch(const std::string& faces, int root_choice) {
    return HexPatch::build(cle::io::resolve_faces(faces), root_choice);
}

cle::loops::BoundaryCondition parse_bc(const HexPatch& patch, const std::string& bc) {
    if (bc == "free" || bc.empty()) return cle::loops::AllWhiteOutside{};
    if (bc.rfind("arc:", 0) == 0) {
        const auto ab = cle::io::parse_int_list(bc.substr(4));
        if (ab.size() != 2) throw cle::hexgrid::Error("expected arc:a,b");
        const auto& cyc = patch.boundary_cycle();
        return cle::loops::ChordalArc{cyc.at(ab[0]), cyc.at(ab[1])};
    }
    throw cle::hexgrid::Error("unknown boundary condition '" + bc + "'");
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    out << body;
    std::cout << (std::filesystem::path(dir) / name).string() << "\n";
}

std::pair<double, double> hex_center(const cle::hexgrid::Axial f) {
    const auto [cx, cy] = cle::hexgrid::face_center(f);
    return {cx * std::sqrt(3.0) / 2.0, cy * 0.5};
}

void draw_patch(cle::svg::Document& doc, const HexPatch& patch,
                const cle::loops::Coloring* coloring) {
    for (int f = 0; f < patch.num_faces(); ++f) {
        std::vector<std::pair<double, double>> pts;
        for (int v : patch.face_vertices(f)) pts.push_back(patch.embedding(v));
        const bool black = coloring && coloring->black()[f];
        doc.polygon(pts, black ? "#555555" : "#f4f4f4", "#999999", 0.03);
    }
}

int run_verify(const std::string& suite, uint64_t seed, int jobs) {
    cle::verify::Options opt;
    opt.seed = seed;
    opt.jobs = jobs;
    opt.progress = &std::cout;
    const auto results = cle::verify::run_suite(suite, opt);
    return cle::verify::report(results, std::cout, false);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hexagonal loop ensembles and SLE/CLE simulation"};
    app.require_subcommand(1);

    uint64_t seed = default_seed();
    std::string out_dir = ".";
    int jobs = 1;
    app.add_option("--seed", seed, "master RNG seed (default: CLE_SEED or 0)");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--jobs", jobs, "Monte Carlo worker count");

    std::string faces = "flower7", black_list, bc_text = "free";
    int root_choice = 0, target_pos = -1, root_position = 0;

    auto* patch_info = app.add_subcommand("patch-info", "print patch counts");
    patch_info->add_option("--faces", faces);
    patch_info->add_option("--root-choice", root_choice);

    auto* on_sample = app.add_subcommand("on-sample", "loop-model Metropolis sampling");
    double on_n = 1.0, on_x = 1.0;
    int sweeps = 1000;
    on_sample->add_option("--faces", faces);
    on_sample->add_option("--n", on_n);
    on_sample->add_option("--x", on_x);
    on_sample->add_option("--sweeps", sweeps);
    on_sample->add_option("--bc", bc_text);

    auto* on_exact = app.add_subcommand("on-exact", "exact loop-model distribution");
    on_exact->add_option("--faces", faces);
    on_exact->add_option("--n", on_n);
    on_exact->add_option("--x", on_x);
    on_exact->add_option("--bc", bc_text);

    auto* tree_svg = app.add_subcommand("tree-svg", "render a coloring and its tree");
    tree_svg->add_option("--faces", faces);
    tree_svg->add_option("--black", black_list);
    tree_svg->add_option("--bc", bc_text);
    tree_svg->add_option("--root-choice", root_choice);

    auto* heights_csv = app.add_subcommand("heights-csv", "face height function");
    heights_csv->add_option("--faces", faces);
    heights_csv->add_option("--black", black_list);
    heights_csv->add_option("--root-position", root_position);

    auto* boundary_path = app.add_subcommand("boundary-path", "loop-spliced boundary path");
    boundary_path->add_option("--faces", faces);
    boundary_path->add_option("--black", black_list);
    boundary_path->add_option("--target", target_pos, "boundary position of the target");

    auto* bessel_csv = app.add_subcommand("bessel-csv", "Bessel path with companions");
    double delta = 1.0, x0 = 0.0, dt = 1e-3, T = 1.0, beta = 1.0, mu = 0.0;
    std::optional<double> eps_opt;
    double eps = 1e-3;
    bessel_csv->add_option("--delta", delta);
    bessel_csv->add_option("--x0", x0);
    bessel_csv->add_option("--dt", dt);
    bessel_csv->add_option("--T", T);
    bessel_csv->add_option("--eps", eps_opt, "use the epsilon-jump variant");

    auto* eps_report = app.add_subcommand("eps-bessel-report", "jump statistics across eps");
    std::string eps_list = "0.1,0.05,0.025";
    int paths = 400;
    eps_report->add_option("--delta", delta);
    eps_report->add_option("--eps-list", eps_list);
    eps_report->add_option("--dt", dt);
    eps_report->add_option("--T", T);
    eps_report->add_option("--paths", paths);

    auto* stable_check = app.add_subcommand("stable-check", "stable sampler vs its cf");
    double alpha = 1.5, sbeta = 0.0, smu = 0.0, sb = 1.0;
    long count = 100000;
    stable_check->add_option("--alpha", alpha);
    stable_check->add_option("--beta", sbeta);
    stable_check->add_option("--mu", smu);
    stable_check->add_option("--b", sb);
    stable_check->add_option("--count", count);

    auto* sle_trace = app.add_subcommand("sle-trace-svg", "render an SLE trace");
    double kappa = 6.0;
    std::string mode = "chordal", variant = "";
    double rho = 0.0;
    sle_trace->add_option("--kappa", kappa);
    sle_trace->add_option("--mode", mode)->check(CLI::IsMember({"chordal", "radial"}));
    sle_trace->add_option("--dt", dt);
    sle_trace->add_option("--T", T);

    auto* slekr_csv = app.add_subcommand("slekr-driver-csv", "SLE_kappa(rho) driving pair");
    slekr_csv->add_option("--kappa", kappa);
    slekr_csv->add_option("--rho", rho);
    slekr_csv->add_option("--mode", mode)->check(CLI::IsMember({"chordal", "radial"}));
    slekr_csv->add_option("--variant", variant)->check(CLI::IsMember({"exact", "eps"}));
    slekr_csv->add_option("--eps", eps);
    slekr_csv->add_option("--beta", beta);
    slekr_csv->add_option("--mu", mu);
    slekr_csv->add_option("--x0", x0);
    slekr_csv->add_option("--dt", dt);
    slekr_csv->add_option("--T", T);

    auto* radius_hist = app.add_subcommand("cle-radius-hist", "conformal-radius statistics");
    long rcount = 10000;
    int bins = 50;
    double rdt = 1e-5, reps = 1e-3;
    radius_hist->add_option("--kappa", kappa);
    radius_hist->add_option("--beta", beta);
    radius_hist->add_option("--n", rcount);
    radius_hist->add_option("--bins", bins);
    radius_hist->add_option("--dt", rdt);
    radius_hist->add_option("--eps", reps);

    auto* loops_svg = app.add_subcommand("cle-loops-svg", "render partially traced loops");
    int j_max = 3;
    double ldt = 2e-3, leps = 1e-2;
    loops_svg->add_option("--kappa", kappa);
    loops_svg->add_option("--beta", beta);
    loops_svg->add_option("--jmax", j_max);
    loops_svg->add_option("--dt", ldt);
    loops_svg->add_option("--eps", leps);

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    std::string suite = "all";
    verify_cmd->add_option("--suite", suite)
        ->check(CLI::IsMember({"all", "discrete", "onmodel", "stochastic", "loewner", "cle"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*patch_info) {
            const auto p = load_patch(faces, root_choice);
            json j;
            j["seed"] = seed;
            j["faces"] = p.num_faces();
            j["vertices"] = p.num_vertices();
            j["edges"] = p.num_edges();
            j["boundary_length"] = p.boundary_cycle().size();
            j["root_degree"] = p.degree(p.root());
            std::cout << j.dump(2) << "\n";
        } else if (*on_sample) {
            const auto p = load_patch(faces, root_choice);
            cle::onmodel::OnParams params{on_n, on_x, parse_bc(p, bc_text)};
            json j;
            j["seed"] = seed;
            j["n"] = on_n;
            j["x"] = on_x;
            const long proposals = long(sweeps) * p.num_faces();
            if (p.num_faces() <= 20) {
                const auto freq = cle::onmodel::on_mcmc_state_frequencies(p, params, proposals, seed);
                const auto exact = cle::onmodel::on_exact_distribution(p, params);
                j["tv_distance"] = cle::onmodel::total_variation(freq, exact.probability);
                json marg = json::array();
                for (int f = 0; f < p.num_faces(); ++f) {
                    double m = 0.0;
                    for (std::size_t s = 0; s < freq.size(); ++s)
                        if (s >> f & 1) m += freq[s];
                    marg.push_back(m);
                }
                j["black_marginals"] = marg;
            } else {
                const auto c = cle::onmodel::on_mcmc_sample(p, params, sweeps, seed);
                json blacks = json::array();
                for (int f = 0; f < p.num_faces(); ++f)
                    if (c.black()[f]) blacks.push_back(f);
                j["final_black_faces"] = blacks;
            }
            std::cout << j.dump(2) << "\n";
        } else if (*on_exact) {
            const auto p = load_patch(faces, root_choice);
            cle::onmodel::OnParams params{on_n, on_x, parse_bc(p, bc_text)};
            const auto exact = cle::onmodel::on_exact_distribution(p, params);
            json j;
            j["seed"] = seed;
            j["log_partition"] = exact.log_partition;
            j["probability"] = exact.probability;
            std::cout << j.dump(2) << "\n";
        } else if (*tree_svg) {
            const auto p = load_patch(faces, root_choice);
            const auto c = cle::loops::make_coloring(p, cle::io::parse_int_list(black_list),
                                                     parse_bc(p, bc_text));
            const auto tree = cle::loops::exploration_tree(c);
            cle::svg::Document doc;
            doc.comment("seed=" + std::to_string(seed));
            draw_patch(doc, p, &c);
            for (const auto& loop : cle::loops::loops_from_coloring(c).loops) {
                std::vector<std::pair<double, double>> pts;
                for (const auto& de : loop) pts.push_back(p.embedding(de.tail));
                doc.polyline(pts, "#4a90d9", 0.1, true);
            }
            for (int v = 0; v < p.num_vertices(); ++v) {
                if (tree.parent[v] < 0) continue;
                const auto [x1, y1] = p.embedding(tree.parent[v]);
                const auto [x2, y2] = p.embedding(v);
                doc.arrow(x1, y1, x2, y2, "#c0392b", 0.045);
            }
            const auto [rx, ry] = p.embedding(p.root());
            doc.circle(rx, ry, 0.14, "#c0392b");
            write_file(out_dir, "tree.svg", doc.render());
        } else if (*heights_csv) {
            const auto p = load_patch(faces, root_choice);
            const auto c = cle::loops::make_coloring(p, cle::io::parse_int_list(black_list));
            const auto h = cle::loops::height_function(c, root_position);
            std::ostringstream os;
            os << "# seed=" << seed << "\nq,r,height\n";
            for (int f = 0; f < p.num_faces(); ++f)
                os << p.face(f).q << "," << p.face(f).r << "," << h.values[f] << "\n";
            write_file(out_dir, "heights.csv", os.str());
        } else if (*boundary_path) {
            const auto p = load_patch(faces, root_choice);
            const auto c = cle::loops::make_coloring(p, cle::io::parse_int_list(black_list));
            const int target = p.boundary_cycle().at(
                target_pos < 0 ? int(p.boundary_cycle().size()) / 2 : target_pos);
            const auto ens = cle::loops::loops_from_coloring(c);
            const auto q = cle::loops::boundary_path_from_loops(c, ens, target);
            const cle::loops::Coloring chordal(p, c.black(),
                                               cle::loops::ChordalArc{p.root(), target});
            const auto t = cle::loops::exploration_path(chordal, target);
            json j;
            j["seed"] = seed;
            j["spliced_path"] = q;
            j["exploration_path"] = t;
            j["equal"] = (q == t);
            std::cout << j.dump(2) << "\n";
        } else if (*bessel_csv) {
            std::ostringstream os;
            os << "# seed=" << seed << "\nt,X,Y,B,J\n";
            if (eps_opt) {
                const auto sp = cle::stochastic::eps_bessel_path({delta, x0, *eps_opt, 1.0, 0.0},
                                                                 dt, T, seed);
                double b = 0.0;
                for (std::size_t k = 0; k < sp.values.size(); ++k) {
                    if (k > 0) b += sp.driver_noise[k - 1];
                    os << cle::io::format_double(sp.time_at(k)) << ","
                       << cle::io::format_double(sp.values[k]) << ",,"
                       << cle::io::format_double(b) << ","
                       << cle::io::format_double(sp.jump_compensator(k)) << "\n";
                }
            } else {
                const auto bp =
                    cle::stochastic::bessel_path({delta, x0, {}, 1.0, 0.0}, dt, T, seed);
                double b = 0.0;
                for (std::size_t k = 0; k < bp.x.values.size(); ++k) {
                    if (k > 0) b += bp.x.driver_noise[k - 1];
                    os << cle::io::format_double(bp.x.time_at(k)) << ","
                       << cle::io::format_double(bp.x.values[k]) << ","
                       << cle::io::format_double(bp.y[k]) << ","
                       << cle::io::format_double(b) << ",\n";
                }
            }
            write_file(out_dir, "bessel.csv", os.str());
        } else if (*eps_report) {
            json j;
            j["seed"] = seed;
            j["delta"] = delta;
            json rows = json::array();
            std::vector<double> eps_values;
            {
                std::stringstream ss(eps_list);
                std::string tok;
                while (std::getline(ss, tok, ',')) eps_values.push_back(std::stod(tok));
            }
            for (double e : eps_values) {
                double mj = 0.0, ms = 0.0, mz = 0.0;
                for (int i = 0; i < paths; ++i) {
                    const auto sp = cle::stochastic::eps_bessel_path({delta, 0.0, e, 1.0, 0.0},
                                                                     dt, T, seed + i);
                    mj += sp.jump_compensator(sp.steps());
                    ms += sp.sum_squared_jumps();
                    mz += double(cle::stochastic::upcrossing_count(sp, e));
                }
                json row;
                row["eps"] = e;
                row["mean_J"] = mj / paths;
                row["mean_sum_sq_jumps"] = ms / paths;
                row["eps_mean_upcrossings"] = e * mz / paths;
                rows.push_back(row);
            }
            j["rows"] = rows;
            std::cout << j.dump(2) << "\n";
        } else if (*stable_check) {
            cle::stochastic::StableParams sp{alpha, sbeta, smu, sb};
            const auto xs = cle::stochastic::stable_sample(sp, std::size_t(count), seed);
            double sup = 0.0;
            for (double lam = -5.0; lam <= 5.0 + 1e-9; lam += 0.25)
                sup = std::max(sup, std::abs(cle::stats::empirical_char_fn(xs, lam) -
                                             cle::stochastic::stable_char_fn(sp, lam)));
            json j;
            j["seed"] = seed;
            j["alpha"] = alpha;
            j["beta"] = sbeta;
            j["sup_cf_error"] = sup;
            j["all_positive"] = std::all_of(xs.begin(), xs.end(), [](double v) { return v > 0; });
            std::cout << j.dump(2) << "\n";
        } else if (*sle_trace) {
            cle::svg::Document doc;
            doc.comment("seed=" + std::to_string(seed));
            const auto m = mode == "radial" ? cle::loewner::Mode::Radial
                                            : cle::loewner::Mode::Chordal;
            const auto d = cle::loewner::sle_driver(kappa, m, dt, T, seed);
            const auto tr = m == cle::loewner::Mode::Radial ? cle::loewner::radial_trace(d)
                                                            : cle::loewner::chordal_trace(d);
            std::vector<std::pair<double, double>> pts;
            for (const auto& z : tr.points) pts.push_back({z.real(), z.imag()});
            if (m == cle::loewner::Mode::Radial) {
                std::vector<std::pair<double, double>> circle;
                for (int i = 0; i <= 128; ++i) {
                    const double a = 2.0 * std::numbers::pi * i / 128;
                    circle.push_back({std::cos(a), std::sin(a)});
                }
                doc.polyline(circle, "#bbbbbb", 0.01);
            } else {
                doc.line(-2.0, 0.0, 2.0, 0.0, "#bbbbbb", 0.01);
            }
            doc.polyline(pts, "#2c3e50", 0.012);
            write_file(out_dir, "trace.svg", doc.render());
        } else if (*slekr_csv) {
            cle::loewner::SleKrParams p;
            p.kappa = kappa;
            p.rho = rho;
            p.mode = mode == "radial" ? cle::loewner::Mode::Radial : cle::loewner::Mode::Chordal;
            p.eps_variant = (variant == "eps");
            p.epsilon = eps;
            p.beta = beta;
            p.mu = mu;
            p.x0 = x0;
            const auto d = cle::loewner::sle_kr_driver(p, dt, T, seed);
            std::ostringstream os;
            os << "# seed=" << seed << "\nt,W,O\n";
            for (std::size_t k = 0; k < d.W.size(); ++k)
                os << cle::io::format_double(k * dt) << "," << cle::io::format_double(d.W[k])
                   << "," << cle::io::format_double(d.O[k]) << "\n";
            write_file(out_dir, "driver.csv", os.str());
        } else if (*radius_hist) {
            const auto sample = cle::gasket::conformal_radius_sample(
                kappa, kappa == 4.0 ? 0.0 : beta, reps, rdt, std::size_t(rcount), seed, jobs);
            const double mean = cle::stats::mean(sample);
            const double var = cle::stats::variance(sample);
            double hi = 0.0;
            for (double v : sample) hi = std::max(hi, v);
            const auto h = cle::stats::histogram(sample, 0.0, hi * 1.0000001, std::size_t(bins));
            std::ostringstream os;
            os << "# seed=" << seed << "\nbin_lo,bin_hi,count\n";
            for (std::size_t i = 0; i < h.counts.size(); ++i) {
                const double w = (h.hi - h.lo) / double(h.counts.size());
                os << cle::io::format_double(h.lo + i * w) << ","
                   << cle::io::format_double(h.lo + (i + 1) * w) << "," << h.counts[i] << "\n";
            }
            write_file(out_dir, "radius_hist.csv", os.str());
            json j;
            j["seed"] = seed;
            j["kappa"] = kappa;
            j["count"] = rcount;
            j["mean"] = mean;
            j["variance"] = var;
            if (kappa == 4.0) {
                const double pi2 = std::numbers::pi * std::numbers::pi;
                j["reference_mean"] = pi2;
                j["relative_error"] = std::abs(mean - pi2) / pi2;
            }
            std::cout << j.dump(2) << "\n";
        } else if (*loops_svg) {
            const auto arcs = cle::gasket::cle_loop_arcs(
                kappa, kappa == 4.0 ? 0.0 : beta, leps, ldt, j_max, seed);
            cle::svg::Document doc;
            doc.comment("seed=" + std::to_string(seed));
            std::vector<std::pair<double, double>> circle;
            for (int i = 0; i <= 128; ++i) {
                const double a = 2.0 * std::numbers::pi * i / 128;
                circle.push_back({std::cos(a), std::sin(a)});
            }
            doc.polyline(circle, "#bbbbbb", 0.008);
            const char* colors[] = {"#c0392b", "#27ae60", "#2980b9", "#8e44ad", "#d35400"};
            std::vector<std::pair<double, double>> pts;
            for (const auto& z : arcs.trace.points) pts.push_back({z.real(), z.imag()});
            doc.polyline(pts, "#dddddd", 0.006);
            for (std::size_t a = 0; a < arcs.arcs.size(); ++a) {
                pts.clear();
                for (const auto& z : arcs.arcs[a].points) pts.push_back({z.real(), z.imag()});
                if (!pts.empty()) doc.polyline(pts, colors[a % 5], 0.012);
            }
            write_file(out_dir, "cle_loops.svg", doc.render());
        } else if (*verify_cmd) {
            return run_verify(suite, seed, jobs);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
