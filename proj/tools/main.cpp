// ctrlk: exact controlled-algebra toolkit for geometric modules on the line.
//
// Subcommands: size, rep, vanish, squeeze, render, selftest. All numeric
// input and output is exact "p/q" text, never floating point. Exit codes:
// 0 success, 1 checks ran and failed, 2 input parse error, 3 usage or
// dimension error, 4 mathematical precondition violated.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ctrlk/acceptance.hpp"
#include "ctrlk/errors.hpp"
#include "ctrlk/functors.hpp"
#include "ctrlk/json_io.hpp"
#include "ctrlk/render.hpp"
#include "ctrlk/reps.hpp"
#include "ctrlk/vanish.hpp"

using namespace ctrlk;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

Window parse_window(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4)
        throw UsageError("window must be 'x0,x1,t0,t1', got '" + spec + "'");
    Window w;
    w.x_lo = Rational::parse(parts[0]);
    w.x_hi = Rational::parse(parts[1]);
    w.t_lo = Rational::parse(parts[2]);
    w.t_hi = Rational::parse(parts[3]);
    if (!(w.x_lo < w.x_hi) || !(w.t_lo < w.t_hi))
        throw UsageError("window must have positive extent");
    return w;
}

// Determinant guard: CTRLK_DET_BOUND wins when set, otherwise the default
// bound grows to fit matrices the tool built itself.
int det_bound_for(std::size_t dim) {
    if (const char* env = std::getenv("CTRLK_DET_BOUND")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw UsageError("CTRLK_DET_BOUND must be an integer");
        }
    }
    return std::max(kDefaultDetBound, static_cast<int>(dim) + 1);
}

void emit(const Document& doc, const std::string& out_path, bool json_to_stdout) {
    if (!out_path.empty()) write_file(out_path, emit_document(doc));
    if (json_to_stdout) std::cout << emit_document(doc);
}

struct SizeCmd {
    std::string input;
    int n = 0;
    std::string out, format = "text";
};

int run_size(const SizeCmd& cmd) {
    Document doc = parse_document(read_file(cmd.input));
    if (doc.kind != "laurent-matrix")
        throw UsageError("size expects a laurent-matrix document, got '" + doc.kind + "'");
    Matrix<LaurentPoly> a = laurent_matrix_from(doc.payload);
    if (!a.is_square()) throw UsageError("size expects a square matrix");
    int n = cmd.n > 0 ? cmd.n : static_cast<int>(a.rows());
    if (a.rows() != static_cast<std::size_t>(n))
        throw UsageError("matrix dimension " + std::to_string(a.rows()) +
                         " does not match --n " + std::to_string(n));

    Rational size = matrix_size(a, n);
    Rational geometric = grid_morphism(a, n).sizes().size;
    const bool cross_ok = size == geometric;

    long k_lo = 0, k_hi = 0;
    bool any = false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero()) {
                long lo = a.at(i, j).min_degree(), hi = a.at(i, j).max_degree();
                k_lo = any ? std::min(k_lo, lo) : lo;
                k_hi = any ? std::max(k_hi, hi) : hi;
                any = true;
            }

    Json degrees = Json::array();
    if (cmd.format == "text") std::cout << "size = " << size << "\n";
    for (long k = k_lo; any && k <= k_hi; ++k) {
        Matrix<Rational> d = distance_matrix(k, n);
        Rational dk(0);
        bool present = false;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!a.at(i, j).coeff(k).is_zero()) {
                    dk = max(dk, d.at(i, j));
                    present = true;
                }
        if (!present) continue;
        degrees.push_back(Json{{"degree", k}, {"size", dk.str()}});
        if (cmd.format == "text")
            std::cout << "  degree " << k << ": size " << dk << "\n";
    }
    if (cmd.format == "text")
        std::cout << "grid cross-check: " << (cross_ok ? "ok" : "MISMATCH") << "\n";

    Document report = make_report_document(Json{{"type", "size-report"},
                                                {"n", n},
                                                {"size", size.str()},
                                                {"per_degree", std::move(degrees)},
                                                {"grid_cross_check", cross_ok}});
    emit(report, cmd.out, cmd.format == "json");
    return cross_ok ? 0 : 1;
}

struct RepCmd {
    std::string kind;
    int n = 0;
    long k = 0;
    std::string eps = "1/10";
    std::string matrix_path;
    std::string out, format = "text";
};

int run_rep(const RepCmd& cmd) {
    RepBundle b;
    if (cmd.kind == "xi" || cmd.kind == "nu" || cmd.kind == "r") {
        if (cmd.n < 1) throw UsageError("'" + cmd.kind + "' needs --n >= 1");
        b = cmd.kind == "xi" ? xi_rep(cmd.n) : cmd.kind == "nu" ? nu_rep(cmd.n) : r_rep(cmd.n);
    } else if (cmd.kind == "s") {
        b = s_rep();
    } else if (cmd.kind == "class") {
        Matrix<Rational> m = Matrix<Rational>::identity(1);
        if (!cmd.matrix_path.empty()) {
            Document doc = parse_document(read_file(cmd.matrix_path));
            if (doc.kind == "laurent-matrix") {
                Matrix<LaurentPoly> lm = laurent_matrix_from(doc.payload);
                Matrix<Rational> sm(lm.rows(), lm.cols());
                for (std::size_t i = 0; i < lm.rows(); ++i)
                    for (std::size_t j = 0; j < lm.cols(); ++j) {
                        const LaurentPoly& e = lm.at(i, j);
                        if (!e.is_zero() && (e.min_degree() != 0 || e.max_degree() != 0))
                            throw UsageError("class matrix must be constant in t");
                        sm.at(i, j) = e.coeff(0);
                    }
                m = sm;
            } else {
                throw UsageError("--matrix expects a laurent-matrix document");
            }
        }
        b = squeeze_class(cmd.k, m, Rational::parse(cmd.eps));
    } else {
        throw UsageError("unknown representative kind '" + cmd.kind +
                         "' (expected xi, nu, s, r, class)");
    }

    std::size_t dim = 0;
    for (const auto& [p, rank] : b.fwd.source().orbit_data())
        dim += static_cast<std::size_t>(rank);
    Json payload = rep_bundle_json(b, det_bound_for(dim));

    if (cmd.format == "text") {
        std::cout << "family: " << b.family << "\n";
        std::cout << "size: " << b.fwd_sizes.size << " (inverse " << b.inv_sizes.size << ")\n";
        if (payload.contains("determinant_text"))
            std::cout << "determinant: " << payload["determinant_text"].get<std::string>()
                      << "\n";
        if (payload.contains("determinant_matches_class"))
            std::cout << "class certificate: "
                      << (payload["determinant_matches_class"].get<bool>() ? "ok" : "MISMATCH")
                      << "\n";
        if (payload.contains("witness_verifies"))
            std::cout << "witness: "
                      << (payload["witness_verifies"].get<bool>() ? "verified" : "MISMATCH")
                      << "\n";
    }
    emit(make_report_document(std::move(payload)), cmd.out, cmd.format == "json");
    return 0;
}

struct VanishCmd {
    std::string input;
    std::string inverse_path;
    std::string interval = "0";
    int layers = 16;
    std::string window = "-2,2,1,10";
    bool preshift = false;
    std::string out, format = "text";
};

int run_vanish(const VanishCmd& cmd) {
    Document doc = parse_document(read_file(cmd.input));
    GeoMorphism fwd, inv;
    if (doc.kind == "morphism") {
        if (cmd.inverse_path.empty())
            throw UsageError("a morphism input needs --inverse with the inverse morphism");
        fwd = morphism_from(doc.payload);
        inv = morphism_from(parse_document(read_file(cmd.inverse_path)).payload);
    } else if (doc.kind == "report" && doc.payload.contains("type") &&
               doc.payload["type"] == "rep-bundle") {
        std::tie(fwd, inv) = bundle_pair_from(doc.payload);
    } else {
        throw UsageError("vanish expects a morphism document or a rep-bundle report");
    }

    if (cmd.preshift) {
        Rational off = default_preshift(fwd.source());
        fwd = fwd.shifted(off);
        inv = inv.shifted(off);
    }

    IntervalSpec I{Rational::parse(cmd.interval)};
    VanishReport rep = verify_vanishing(fwd, inv, I, cmd.layers, parse_window(cmd.window));
    if (cmd.format == "text") {
        auto line = [](const char* name, bool v) {
            std::cout << name << ": " << (v ? "ok" : "FAIL") << "\n";
        };
        std::cout << "input hsize: " << rep.input_hsize << " (inverse " << rep.input_inv_hsize
                  << ")\nschedule step: " << rep.schedule_step << ", layers: " << rep.layers
                  << "\n";
        line("beta matches closed form", rep.beta_matches_closed_form);
        line("beta restricts to half-shifted cells", rep.beta_restricts);
        line("beta is the identity on V", rep.beta_identity_on_v);
        line("eta and mu invert", rep.eta_mu_invertible);
    }
    emit(make_report_document(vanish_report_json(rep)), cmd.out, cmd.format == "json");
    return rep.all_ok() ? 0 : 1;
}

struct SqueezeCmd {
    std::string input;
    std::string interval = "0";
    int layers = 8;
    std::string out, format = "text";
};

int run_squeeze(const SqueezeCmd& cmd) {
    Document doc = parse_document(read_file(cmd.input));
    IntervalSpec I{Rational::parse(cmd.interval)};
    LayerSchedule sched{Rational(1)};
    Json payload;
    if (doc.kind == "module") {
        payload = stack_json(squeeze_total(module_from(doc.payload), I, sched, cmd.layers), I,
                             sched);
    } else if (doc.kind == "morphism") {
        payload = stack_json(squeeze_total(morphism_from(doc.payload), I, sched, cmd.layers), I,
                             sched);
    } else {
        throw UsageError("squeeze expects a module or morphism document");
    }
    if (cmd.format == "text")
        std::cout << "squeezed " << doc.kind << " into " << cmd.layers << " layers over ("
                  << I.a << ", " << I.a + Rational(1) << ")\n";
    emit(make_report_document(std::move(payload)), cmd.out, cmd.format == "json");
    return 0;
}

struct RenderCmd {
    std::string input;
    std::string window;
    std::string out;
};

int run_render(const RenderCmd& cmd) {
    Document doc = parse_document(read_file(cmd.input));
    std::string svg = render_document_svg(doc, parse_window(cmd.window));
    if (cmd.out.empty())
        std::cout << svg;
    else
        write_file(cmd.out, svg);
    return 0;
}

int run_selftest() {
    bool ok = true;
    for (const auto& r : run_acceptance()) {
        std::printf("criterion %d (%s): %s — %s (%.2fs)\n", r.index, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact controlled-algebra toolkit: geometric modules over the line, size "
                 "metrics, squeezing, and vanishing certificates"};
    app.require_subcommand(1);

    SizeCmd size_cmd;
    auto* size_app = app.add_subcommand("size", "size of a Laurent matrix on the 1/n grid");
    size_app->add_option("input", size_cmd.input, "laurent-matrix document")->required();
    size_app->add_option("--n", size_cmd.n, "grid resolution (default: matrix dimension)");
    size_app->add_option("--out", size_cmd.out, "write the report document here");
    size_app->add_option("--format", size_cmd.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    RepCmd rep_cmd;
    auto* rep_app = app.add_subcommand("rep", "build a small representative bundle");
    rep_app->add_option("kind", rep_cmd.kind, "xi | nu | s | r | class")->required();
    rep_app->add_option("--n", rep_cmd.n, "grid resolution for xi/nu/r");
    rep_app->add_option("--k", rep_cmd.k, "power of the generator for class");
    rep_app->add_option("--eps", rep_cmd.eps, "size budget p/q for class");
    rep_app->add_option("--matrix", rep_cmd.matrix_path,
                        "constant invertible matrix document for class");
    rep_app->add_option("--out", rep_cmd.out, "write the bundle report here");
    rep_app->add_option("--format", rep_cmd.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    VanishCmd vanish_cmd;
    auto* vanish_app =
        app.add_subcommand("vanish", "verify the vanishing construction for an automorphism");
    vanish_app->add_option("input", vanish_cmd.input, "morphism document or rep-bundle report")
        ->required();
    vanish_app->add_option("--inverse", vanish_cmd.inverse_path,
                           "inverse morphism document (for morphism inputs)");
    vanish_app->add_option("--interval", vanish_cmd.interval, "left endpoint a of I = (a, a+1)");
    vanish_app->add_option("--layers", vanish_cmd.layers, "stack truncation (default 16)");
    vanish_app->add_option("--window", vanish_cmd.window, "certification window x0,x1,t0,t1");
    vanish_app->add_flag("--preshift", vanish_cmd.preshift,
                         "shift the input off integers and half-integers first");
    vanish_app->add_option("--out", vanish_cmd.out, "write the report document here");
    vanish_app->add_option("--format", vanish_cmd.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    SqueezeCmd squeeze_cmd;
    auto* squeeze_app = app.add_subcommand("squeeze", "squeeze a module or morphism into layers");
    squeeze_app->add_option("input", squeeze_cmd.input, "module or morphism document")
        ->required();
    squeeze_app->add_option("--interval", squeeze_cmd.interval,
                            "left endpoint a of I = (a, a+1)");
    squeeze_app->add_option("--layers", squeeze_cmd.layers, "number of layers (default 8)");
    squeeze_app->add_option("--out", squeeze_cmd.out, "write the stack document here");
    squeeze_app->add_option("--format", squeeze_cmd.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    RenderCmd render_cmd;
    auto* render_app = app.add_subcommand("render", "render a document as a support diagram");
    render_app->add_option("input", render_cmd.input, "module, morphism, or stack document")
        ->required();
    render_app->add_option("--window", render_cmd.window, "view window x0,x1,t0,t1")->required();
    render_app->add_option("--out", render_cmd.out, "SVG output path (default stdout)");

    auto* selftest_app =
        app.add_subcommand("selftest", "run the full verification suite with fixed seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints help or the error message
        return e.get_exit_code() == 0 ? 0 : 3;
    }

    try {
        if (size_app->parsed()) return run_size(size_cmd);
        if (rep_app->parsed()) return run_rep(rep_cmd);
        if (vanish_app->parsed()) return run_vanish(vanish_cmd);
        if (squeeze_app->parsed()) return run_squeeze(squeeze_cmd);
        if (render_app->parsed()) return run_render(render_cmd);
        if (selftest_app->parsed()) return run_selftest();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 4;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
