#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "unisum/analysis.hpp"
#include "unisum/spec_io.hpp"

namespace {

using unisum::OperatorHandle;

constexpr int kExitAxiomFailure = 1;
constexpr int kExitSchemaError = 2;
constexpr int kExitInvalidConstruction = 3;
constexpr int kExitResidualFailure = 4;

// Jumps below this are treated as continuous slope at grid resolution and
// render as background in the overlay.
constexpr double kOverlayThreshold = 0.05;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

OperatorHandle load_operator(const std::string& path) {
    return unisum::build_operator(unisum::load_spec_file(path));
}

int cmd_eval(const std::string& path, double x, double y) {
    OperatorHandle u = load_operator(path);
    std::cout << fmt(u(x, y)) << "\n";
    return 0;
}

int cmd_render(const std::string& path, int grid, const std::string& out) {
    OperatorHandle u = load_operator(path);
    std::vector<double> xs = unisum::uniform_grid(grid);
    std::vector<double> vals(xs.size() * xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) vals[i * xs.size() + j] = u(xs[i], xs[j]);

    std::ofstream csv(out + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + out + ".csv");
    csv << "x,y,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            csv << fmt(xs[i]) << "," << fmt(xs[j]) << "," << fmt(vals[i * xs.size() + j]) << "\n";

    std::ofstream pgm(out + ".pgm", std::ios::binary);
    if (!pgm) throw std::runtime_error("cannot write " + out + ".pgm");
    pgm << "P5\n" << xs.size() << " " << xs.size() << "\n255\n";
    for (std::size_t row = 0; row < xs.size(); ++row) {
        // Row 0 at the top of the image corresponds to y = 1.
        std::size_t j = xs.size() - 1 - row;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double jump = 0.0;
            if (i + 1 < xs.size())
                jump = std::max(jump,
                                std::abs(vals[(i + 1) * xs.size() + j] - vals[i * xs.size() + j]));
            if (j + 1 < xs.size())
                jump = std::max(jump,
                                std::abs(vals[i * xs.size() + j + 1] - vals[i * xs.size() + j]));
            unsigned char pixel =
                jump < kOverlayThreshold
                    ? 0
                    : static_cast<unsigned char>(std::lround(255.0 * std::min(1.0, jump)));
            pgm.put(static_cast<char>(pixel));
        }
    }
    std::cout << "wrote " << out << ".csv and " << out << ".pgm\n";
    return 0;
}

const char* kind_name(unisum::SummandKind k) {
    switch (k) {
        case unisum::SummandKind::Representable: return "representable";
        case unisum::SummandKind::SInternal: return "s-internal";
        case unisum::SummandKind::ArchimedeanTNorm: return "archimedean-tnorm";
        case unisum::SummandKind::ArchimedeanTConorm: return "archimedean-tconorm";
        case unisum::SummandKind::Internal: return "internal";
    }
    return "unknown";
}

int cmd_decompose(const std::string& path, int grid) {
    OperatorHandle u = load_operator(path);
    unisum::DecompositionResult r = unisum::decompose(u, grid);
    const auto& base = r.spec.base();
    std::vector<double> breakpoints{base.e()};
    for (const auto& s : base.summands())
        for (double p : {s.a, s.b, s.c, s.d}) breakpoints.push_back(p);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    std::cout << "e=" << fmt(base.e()) << "\n";
    std::cout << "breakpoints=";
    for (std::size_t i = 0; i < breakpoints.size(); ++i)
        std::cout << (i ? "," : "") << fmt(breakpoints[i]);
    std::cout << "\n";
    for (std::size_t k = 0; k < base.summands().size(); ++k) {
        const auto& s = base.summands()[k];
        std::cout << "summand a=" << fmt(s.a) << " b=" << fmt(s.b) << " c=" << fmt(s.c)
                  << " d=" << fmt(s.d) << " v=" << fmt(base.v(k))
                  << " kind=" << kind_name(r.summand_kinds[k]) << "\n";
    }
    for (const auto& [x, c] : r.spec.g())
        std::cout << "g(" << fmt(x) << ")=[0," << fmt(c.upto) << (c.closed ? "]" : ")") << "\n";
    for (const auto& [x, c] : r.spec.h())
        std::cout << "h(" << fmt(x) << ")=[0," << fmt(c.upto) << (c.closed ? "]" : ")") << "\n";
    std::cout << "residual=" << fmt(r.residual) << " witness=" << fmt(r.residual_witness.first)
              << "," << fmt(r.residual_witness.second) << "\n";
    return 0;
}

int cmd_axioms(const std::string& path, int grid, double tol, unsigned seed) {
    OperatorHandle u = load_operator(path);
    unisum::AxiomReport report = unisum::check_axioms(u, grid);

    // Randomized associativity witness search on top of the deterministic
    // ternary grid.
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto& assoc = report.entries[1];
    for (int i = 0; i < 20000; ++i) {
        double x = unit(rng), y = unit(rng), z = unit(rng);
        double v = std::abs(u(std::clamp(u(x, y), 0.0, 1.0), z) -
                            u(x, std::clamp(u(y, z), 0.0, 1.0)));
        if (v > assoc.max_violation) assoc = {"associativity", v, {x, y, z}};
    }
    for (const auto& entry : report.entries)
        std::cout << "axiom=" << entry.name << " max_violation=" << fmt(entry.max_violation)
                  << " witness=" << fmt(entry.witness[0]) << "," << fmt(entry.witness[1]) << ","
                  << fmt(entry.witness[2]) << "\n";
    return report.ok(tol) ? 0 : kExitAxiomFailure;
}

int cmd_verify(const std::string& path_a, const std::string& path_b, int grid, double tol) {
    OperatorHandle a = load_operator(path_a);
    OperatorHandle b = load_operator(path_b);
    unisum::DiffReport diff = unisum::verify_pointwise(a, b, grid, tol);
    std::cout << "max_diff=" << fmt(diff.max_diff) << " witness=" << fmt(diff.x) << ","
              << fmt(diff.y) << "\n";
    return diff.within(tol) ? 0 : kExitAxiomFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uninorm construction, rendering, and decomposition"};
    app.require_subcommand(1);

    int grid = 0;  // 0 = per-verb default
    double tol = 1e-9;
    std::string out = "render";
    unsigned seed = 1;
    app.add_option("--grid", grid, "grid points per axis");
    app.add_option("--tol", tol, "tolerance for axiom/verify checks");
    app.add_option("--out", out, "output path prefix for render");
    app.add_option("--seed", seed, "seed for randomized witness search");

    std::string spec, spec_b;
    double x = 0, y = 0;
    CLI::App* eval = app.add_subcommand("eval", "evaluate V(x,y)");
    eval->add_option("spec", spec)->required();
    eval->add_option("x", x)->required();
    eval->add_option("y", y)->required();
    CLI::App* render = app.add_subcommand("render", "write CSV grid and jump-overlay PGM");
    render->add_option("spec", spec)->required();
    CLI::App* decompose = app.add_subcommand("decompose", "recover an extended ordinal sum");
    decompose->add_option("spec", spec)->required();
    CLI::App* axioms = app.add_subcommand("axioms", "check uninorm axioms");
    axioms->add_option("spec", spec)->required();
    CLI::App* verify = app.add_subcommand("verify", "pointwise diff of two specs");
    verify->add_option("spec_a", spec)->required();
    verify->add_option("spec_b", spec_b)->required();
    for (CLI::App* sub : {eval, render, decompose, axioms, verify}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(spec, x, y);
        if (render->parsed()) return cmd_render(spec, grid ? grid : 201, out);
        if (decompose->parsed()) return cmd_decompose(spec, grid ? grid : 201);
        if (axioms->parsed()) return cmd_axioms(spec, grid ? grid : 51, tol, seed);
        if (verify->parsed()) return cmd_verify(spec, spec_b, grid ? grid : 101, tol);
    } catch (const unisum::SchemaError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitSchemaError;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "error: schema: " << ex.what() << "\n";
        return kExitSchemaError;
    } catch (const unisum::ResidualError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitResidualFailure;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: invalid construction: " << ex.what() << "\n";
        return kExitInvalidConstruction;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: invalid construction: " << ex.what() << "\n";
        return kExitInvalidConstruction;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
