#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chordal/bottleneck.hpp"
#include "chordal/critical.hpp"
#include "chordal/io.hpp"
#include "chordal/mobius_grid.hpp"
#include "chordal/nerve.hpp"
#include "chordal/persistence.hpp"
#include "chordal/smooth.hpp"
#include "chordal/volume.hpp"

namespace {

using namespace chordal;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct LoopOptions {
    std::string input;
    std::string format = "auto";
    double tol = -1.0;  // negative: scale-relative default
    double perturb = 0.0;
    uint64_t seed = 0;
};

void add_loop_options(CLI::App* cmd, LoopOptions& opt) {
    cmd->add_option("input", opt.input, "points file (CSV rows or JSON)")
        ->required();
    cmd->add_option("--format", opt.format, "csv, json or auto")
        ->check(CLI::IsMember({"csv", "json", "auto"}));
    cmd->add_option("--tol", opt.tol,
                    "validation tolerance (default 1e-9 * bounding box)");
    cmd->add_option("--perturb", opt.perturb,
                    "seeded uniform vertex jitter applied before any check");
    cmd->add_option("--seed", opt.seed, "random seed for --perturb");
}

PolyLoop load_loop(const LoopOptions& opt) {
    std::vector<Vec> pts = io::read_points(opt.input, opt.format);
    if (opt.perturb > 0.0) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u(-opt.perturb, opt.perturb);
        for (Vec& p : pts)
            for (double& x : p) x += u(rng);
    }
    return PolyLoop::build(pts);
}

double loop_tolerance(const PolyLoop& loop, const LoopOptions& opt) {
    return opt.tol >= 0.0 ? opt.tol : default_tolerance(loop);
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("CHORDAL_PH_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? int(hc) : 1;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        io::write_text_file(output_path, text);
}

PersistenceDiagram diagram_of_loop(const PolyLoop& loop, int p, bool unsquared,
                                   std::vector<DiagramPoint>* zero_pairs,
                                   const std::string& export_complex) {
    const NerveComplex nerve = collapse_nerve(build_nerve(loop));
    const FilteredComplex fc = to_filtered_complex(nerve);
    if (!export_complex.empty()) io::write_filtered_complex_text(fc, export_complex);
    PersistenceDiagram diag = compute_persistence(fc, p, zero_pairs);
    if (unsquared) diag = square_map(diag, SquareDirection::to_unsquared);
    return diag;
}

int cmd_check(const LoopOptions& opt) {
    const PolyLoop loop = load_loop(opt);
    const NondegeneracyReport rep =
        check_nondegeneracy(loop, loop_tolerance(loop, opt));
    emit(io::report_to_json(rep), "");
    return rep.pass() ? 0 : kExitValidation;
}

int cmd_diagram(const LoopOptions& opt, int p, bool unsquared, bool zero_pairs,
                const std::string& output, const std::string& export_complex) {
    const PolyLoop loop = load_loop(opt);
    const NondegeneracyReport rep =
        check_nondegeneracy(loop, loop_tolerance(loop, opt));
    if (!rep.embedding_ok()) {
        std::fputs(io::report_to_json(rep).c_str(), stderr);
        std::fputs("input is not an embedded loop (C1/C2 failed)\n", stderr);
        return kExitValidation;
    }
    std::vector<DiagramPoint> zp;
    const PersistenceDiagram diag = diagram_of_loop(
        loop, p, unsquared, zero_pairs ? &zp : nullptr, export_complex);
    emit(io::diagram_to_json(diag, zero_pairs ? &zp : nullptr), output);
    return 0;
}

int cmd_critical(const LoopOptions& opt, int p, double right_tol,
                 const std::string& output) {
    const PolyLoop loop = load_loop(opt);
    const NondegeneracyReport rep =
        check_nondegeneracy(loop, loop_tolerance(loop, opt));
    if (!rep.pass()) {
        std::fputs(io::report_to_json(rep).c_str(), stderr);
        if (!rep.c3_violations.empty())
            std::fputs(
                "loop has (anti)parallel segments (C3); classification is "
                "unsound -- consider --perturb with a small magnitude\n",
                stderr);
        return kExitValidation;
    }
    const std::vector<CriticalChord> chords =
        enumerate_critical_chords(loop, right_tol, loop_tolerance(loop, opt));
    const NerveComplex nerve = build_nerve(loop);
    const AgreementReport agreement = check_agreement(loop, nerve, chords, p);
    emit(io::chords_to_json(chords, &agreement), output);
    return 0;
}

int cmd_heatmap(const LoopOptions& opt, int m, int threads,
                const std::string& output) {
    const PolyLoop loop = load_loop(opt);
    const MobiusGrid grid = build_grid(loop, m, resolve_threads(threads));
    export_heatmap(grid, output);
    std::string msg = "{\"csv\":\"" + output + ".csv\",\"pgm\":\"" + output +
                      ".pgm\",\"sidecar\":\"" + output + ".json\"}\n";
    std::fputs(msg.c_str(), stdout);
    return 0;
}

int cmd_compare(const LoopOptions& a, const LoopOptions& b, int p,
                bool unsquared) {
    const PolyLoop la = load_loop(a), lb = load_loop(b);
    const PersistenceDiagram da =
        diagram_of_loop(la, p, unsquared, nullptr, "");
    const PersistenceDiagram db =
        diagram_of_loop(lb, p, unsquared, nullptr, "");
    const double b0 = bottleneck(da, db, 0);
    const double b1 = bottleneck(da, db, 1);
    std::string out = "{\"bottleneck\":{\"dim0\":" + io::format_double(b0) +
                      ",\"dim1\":" + io::format_double(b1) + "}}\n";
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_smooth(const std::string& curve, double r, double av, double bv,
               int grid_n, int iters, double tol, double cutoff,
               const std::string& output) {
    SmoothCurve c;
    if (curve == "circle")
        c = make_circle(r);
    else if (curve == "ellipse")
        c = make_ellipse(av, bv);
    else
        c = make_trefoil();
    const std::vector<SmoothCriticalPoint> pts =
        find_smooth_critical(c, grid_n, iters, tol, cutoff);
    std::string out = "{\"critical_points\":[";
    for (size_t k = 0; k < pts.size(); ++k) {
        const SmoothCriticalPoint& q = pts[k];
        const char* type = "degenerate";
        switch (q.type) {
            case SmoothCriticalPoint::Type::minimum: type = "minimum"; break;
            case SmoothCriticalPoint::Type::saddle: type = "saddle"; break;
            case SmoothCriticalPoint::Type::maximum: type = "maximum"; break;
            default: break;
        }
        out += "{\"t1\":" + io::format_double(q.t1) +
               ",\"t2\":" + io::format_double(q.t2) +
               ",\"value\":" + io::format_double(q.value) +
               ",\"kappa12\":" + io::format_double(q.kappa12) +
               ",\"kappa21\":" + io::format_double(q.kappa21) +
               ",\"cos_theta12\":" + io::format_double(q.cos_theta12) +
               ",\"type\":\"" + type + "\"}";
        if (k + 1 < pts.size()) out += ",";
    }
    out += "]}\n";
    emit(out, output);
    return 0;
}

int cmd_volume(int k, int trials, uint64_t seed, int dim, int n_samples,
               const std::string& output) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> domain(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) domain[size_t(i)] = double(i) / n_samples;

    std::vector<StabilityReport> reports;
    bool all_pass = true;
    for (int t = 0; t < trials; ++t) {
        // Random low-order trigonometric map and a bounded perturbation.
        std::vector<double> c1(size_t(dim) * 5), c2(size_t(dim) * 5);
        for (double& x : c1) x = gauss(rng);
        for (double& x : c2) x = 0.05 * gauss(rng);
        auto eval = [dim](const std::vector<double>& cs, double x) {
            Vec p(static_cast<size_t>(dim));
            for (int a = 0; a < dim; ++a) {
                const double* q = cs.data() + size_t(a) * 5;
                p[size_t(a)] = q[0] + q[1] * std::cos(2 * M_PI * x) +
                               q[2] * std::sin(2 * M_PI * x) +
                               q[3] * std::cos(4 * M_PI * x) +
                               q[4] * std::sin(4 * M_PI * x);
            }
            return p;
        };
        auto e1 = [&](double x) { return eval(c1, x); };
        auto e2 = [&](double x) {
            Vec p = eval(c1, x), q = eval(c2, x);
            for (size_t i = 0; i < p.size(); ++i) p[i] += q[i];
            return p;
        };

        std::vector<std::vector<double>> configs(64);
        for (auto& cfg : configs) {
            cfg.resize(size_t(k) + 1);
            for (double& x : cfg)
                x = domain[size_t(rng() % uint64_t(n_samples))];
        }
        StabilityReport rep = check_stability_bound(e1, e2, k, domain, configs);
        all_pass = all_pass && rep.pass;
        reports.push_back(rep);
    }
    emit(io::stability_reports_to_json(reports), output);
    return all_pass ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact persistent homology of the chord-length filtration of closed "
        "polygonal loops, with geometric classification of critical chords"};
    app.require_subcommand(1);

    LoopOptions opt, opt_b;
    int p = 3;
    int m = 128;
    int threads = 0;
    bool unsquared = false, zero_pairs = false;
    double right_tol = kRightAngleTol;
    std::string output, export_complex;

    CLI::App* check = app.add_subcommand("check", "validate loop non-degeneracy");
    add_loop_options(check, opt);

    CLI::App* diagram =
        app.add_subcommand("diagram", "persistence diagram of the loop");
    add_loop_options(diagram, opt);
    diagram->add_option("-p,--prime", p, "field characteristic (prime)");
    diagram->add_flag("--unsquared", unsquared,
                      "report chord lengths instead of half squared lengths");
    diagram->add_flag("--emit-zero-pairs", zero_pairs,
                      "include dropped zero-persistence pairs");
    diagram->add_option("-o,--output", output, "write JSON here (default stdout)");
    diagram->add_option("--export-complex", export_complex,
                        "also write the filtered complex as plain text");

    CLI::App* critical =
        app.add_subcommand("critical", "classified critical chords");
    add_loop_options(critical, opt);
    critical->add_option("-p,--prime", p, "field characteristic (prime)");
    critical->add_option("--right-angle-tol", right_tol,
                         "cosine tolerance for right angles");
    critical->add_option("-o,--output", output, "write JSON here");

    CLI::App* heatmap = app.add_subcommand("heatmap", "chord-length heatmap");
    add_loop_options(heatmap, opt);
    heatmap->add_option("-m,--grid", m, "grid resolution (>= 8)");
    heatmap->add_option("--threads", threads,
                        "worker threads (default: cores, or CHORDAL_PH_THREADS)");
    heatmap->add_option("-o,--output", output, "output base path")->required();

    CLI::App* compare =
        app.add_subcommand("compare", "bottleneck distance of two loops");
    add_loop_options(compare, opt);
    compare->add_option("input_b", opt_b.input, "second points file")->required();
    compare->add_option("--format-b", opt_b.format, "format of the second file");
    compare->add_option("-p,--prime", p, "field characteristic (prime)");
    compare->add_flag("--unsquared", unsquared, "compare unsquared diagrams");

    CLI::App* smooth =
        app.add_subcommand("smooth", "critical chords of a built-in smooth curve");
    std::string curve = "ellipse";
    double rv = 1.0, av = 2.0, bv = 1.0, sm_tol = 1e-9, cutoff = 0.02;
    int grid_n = 24, iters = 40;
    smooth->add_option("--curve", curve, "circle, ellipse or trefoil")
        ->check(CLI::IsMember({"circle", "ellipse", "trefoil"}));
    smooth->add_option("--radius", rv, "circle radius");
    smooth->add_option("-a", av, "ellipse semi-axis a");
    smooth->add_option("-b", bv, "ellipse semi-axis b");
    smooth->add_option("--grid-n", grid_n, "Newton seed grid size");
    smooth->add_option("--newton-iters", iters, "Newton iteration cap");
    smooth->add_option("--tol", sm_tol, "criticality/degeneracy tolerance");
    smooth->add_option("--cutoff", cutoff, "minimal parameter offset kept");
    smooth->add_option("-o,--output", output, "write JSON here");

    CLI::App* volume =
        app.add_subcommand("volume", "randomized volume-transform stability check");
    int vol_k = 2, vol_trials = 100, vol_dim = 4, vol_samples = 64;
    uint64_t vol_seed = 0;
    volume->add_option("-k", vol_k, "simplex dimension")->check(CLI::Range(1, 8));
    volume->add_option("--trials", vol_trials, "number of randomized trials");
    volume->add_option("--seed", vol_seed, "random seed");
    volume->add_option("--dim", vol_dim, "ambient dimension");
    volume->add_option("--samples", vol_samples, "domain sample count");
    volume->add_option("-o,--output", output, "write JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(opt);
        if (diagram->parsed()) {
            if (!is_prime(p)) {
                std::fputs("-p must be prime\n", stderr);
                return kExitValidation;
            }
            return cmd_diagram(opt, p, unsquared, zero_pairs, output,
                               export_complex);
        }
        if (critical->parsed()) {
            if (!is_prime(p)) {
                std::fputs("-p must be prime\n", stderr);
                return kExitValidation;
            }
            return cmd_critical(opt, p, right_tol, output);
        }
        if (heatmap->parsed()) return cmd_heatmap(opt, m, threads, output);
        if (compare->parsed()) return cmd_compare(opt, opt_b, p, unsquared);
        if (smooth->parsed())
            return cmd_smooth(curve, rv, av, bv, grid_n, iters, sm_tol, cutoff,
                              output);
        if (volume->parsed())
            return cmd_volume(vol_k, vol_trials, vol_seed, vol_dim, vol_samples,
                              output);
    } catch (const chordal::io::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const LoopError& e) {
        std::fprintf(stderr, "invalid loop: %s\n", e.what());
        return kExitValidation;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "numerical degeneracy: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return 0;
}
