// steklov: command-line front end.
//
// Subcommands: spectrum, trace, invariants, hear, check-inequalities,
// validate. JSON for configs and reports, CSV for bulk numeric tables; all
// artifact files are written atomically (write-temp-then-rename). Exit codes:
// 0 success, 1 validation failures, 2 configuration errors, 3 numerical
// failures (NotConverged and friends).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include <steklov/hearing.hpp>
#include <steklov/inequalities.hpp>
#include <steklov/invariants.hpp>
#include <steklov/io.hpp>
#include <steklov/spectrum.hpp>
#include <steklov/subordination.hpp>
#include <steklov/validate.hpp>

namespace fs = std::filesystem;
using namespace steklov;

namespace {

struct RunConfig {
    std::string domain_path;
    std::string field_path; // user-supplied CurvatureField CSV (CustomField)
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
    std::string cache_dir;      // STEKLOV_CACHE overrides
    int modes = 64;
    long long count = 0; // 0: pick a default per command
    double t_min = 0.0, t_max = 0.0;
    int orders = 0; // 0: pick by n
    int band_limit = 32;
    std::uint64_t seed = 20240809ull;
    int nodes = 0; // quadrature nodes; 0: per-dimension default
};

DomainSpec load_domain(const RunConfig& cfg) {
    if (cfg.domain_path.empty()) fail("ConfigError", "--domain is required");
    return domain_from_json(load_json_file(cfg.domain_path));
}

std::string effective_cache(const RunConfig& cfg) {
    if (const char* env = std::getenv("STEKLOV_CACHE")) return env;
    return cfg.cache_dir;
}

// Spectrum for a domain: closed form where it exists, the numeric DtN path
// for star-shaped planar domains. Cached as CSV keyed by a content hash of
// the domain JSON plus the numeric knobs.
Spectrum domain_spectrum(const DomainSpec& spec, const RunConfig& cfg) {
    const bool closed = spec.kind == DomainKind::Disk || spec.kind == DomainKind::Annulus ||
                        spec.kind == DomainKind::Ball;
    const long long K = cfg.count > 0 ? cfg.count : (closed ? 2001 : cfg.modes);

    std::string cache_file;
    const std::string cache_dir = effective_cache(cfg);
    if (!cache_dir.empty()) {
        std::ostringstream key;
        key << to_json(spec).dump() << '|' << (closed ? "closed" : "numeric") << '|' << K << '|'
            << cfg.modes;
        cache_file = (fs::path(cache_dir) / ("spectrum_" + hex64(fnv1a64(key.str())) + ".csv"))
                         .string();
        if (fs::exists(cache_file)) {
            std::ifstream in(cache_file);
            std::stringstream ss;
            ss << in.rdbuf();
            return spectrum_from_csv(ss.str());
        }
    }

    Spectrum s = closed ? steklov_closed_form(spec, K)
                        : steklov_numeric(spec, cfg.modes, int(K));
    if (!cache_file.empty()) atomic_write_file(cache_file, to_csv(s));
    return s;
}

json spectrum_json(const Spectrum& s) {
    json j;
    j["n"] = s.n;
    j["vol"] = s.boundary_volume;
    j["source"] = s.source == SpectrumSource::ClosedForm ? "closed_form" : "numeric";
    j["accuracy"] = s.accuracy;
    j["eigenvalues"] = s.eigenvalues;
    j["multiplicities"] = s.multiplicities;
    return j;
}

void write_artifact(const RunConfig& cfg, const std::string& stem, const std::string& csv,
                    const json& as_json) {
    const fs::path out = fs::path(cfg.out_dir) / (stem + (cfg.format == "json" ? ".json" : ".csv"));
    atomic_write_file(out, cfg.format == "json" ? as_json.dump(2) + "\n" : csv);
    std::cout << "wrote " << out.string() << "\n";
}

int default_nodes(const DomainSpec& spec) {
    return spec.n == 1 ? 512 : spec.n == 2 ? 800 : 3000;
}

FitWindow window_for(const Spectrum& s, const RunConfig& cfg, int M) {
    FitWindow w;
    if (cfg.t_min > 0.0 && cfg.t_max > 0.0) {
        w.t_min = cfg.t_min;
        w.t_max = cfg.t_max;
        return w;
    }
    w = choose_fit_window(s, M);
    if (cfg.t_min > 0.0) w.t_min = cfg.t_min;
    if (cfg.t_max > 0.0) w.t_max = cfg.t_max;
    return w;
}

int cmd_spectrum(const RunConfig& cfg) {
    const DomainSpec spec = load_domain(cfg);
    const Spectrum s = domain_spectrum(spec, cfg);
    write_artifact(cfg, "spectrum", to_csv(s), spectrum_json(s));
    return 0;
}

int cmd_trace(const RunConfig& cfg) {
    const DomainSpec spec = load_domain(cfg);
    const Spectrum s = domain_spectrum(spec, cfg);
    const FitWindow w = window_for(s, cfg, 3);
    const HeatTraceSamples h = make_trace_samples(s, w.t_min, w.t_max);
    json j;
    j["t"] = h.t_grid;
    j["Z"] = h.values;
    j["tail_estimate"] = h.tail_estimates;
    j["spectrum_hash"] = h.spectrum_hash;
    write_artifact(cfg, "trace", to_csv(h), j);
    return 0;
}

CurvatureField load_field(const RunConfig& cfg) {
    if (!cfg.field_path.empty()) {
        std::ifstream in(cfg.field_path);
        if (!in) fail("ConfigError", "cannot open " + cfg.field_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return curvature_field_from_csv(ss.str());
    }
    const DomainSpec spec = load_domain(cfg);
    if (spec.kind == DomainKind::CustomField)
        fail("ConfigError", "CustomField domains need --field <csv>");
    return curvature_field(spec, cfg.nodes > 0 ? cfg.nodes : default_nodes(spec));
}

int cmd_invariants(const RunConfig& cfg) {
    const CurvatureField field = load_field(cfg);
    const CoefficientSet cs = integrated_coefficients(field);
    json j = to_json(cs);
    const FractionalCoefficients fc = fractional_coefficients(field);
    j["fractional"] = {{"orders", {-field.n, 2 - field.n, 4 - field.n, 6 - field.n}},
                       {"coefficients", fc.coeff},
                       {"available", fc.available},
                       {"alt_r_coefficient_gauss_convention", fc.alt_r_coeff},
                       {"alt_quadratic_coefficient_proof_denominator", fc.alt_quadratic_coeff}};

    // per-node densities as CSV
    std::ostringstream os;
    os << "node_index";
    for (int m : cs.valid_orders) os << ",a" << m;
    os << '\n';
    for (int i = 0; i < field.nodes; ++i) {
        os << i;
        for (int m : cs.valid_orders) os << ',' << format_double(cs.densities[m][i]);
        os << '\n';
    }
    atomic_write_file(fs::path(cfg.out_dir) / "densities.csv", os.str());
    atomic_write_file(fs::path(cfg.out_dir) / "field.csv", to_csv(field));
    atomic_write_file(fs::path(cfg.out_dir) / "invariants.json", j.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "invariants.json").string()
              << " (+densities.csv, field.csv)\n";
    for (int m : cs.valid_orders)
        std::cout << "  int a" << m << " dS = " << format_double(cs.integrals[m]) << "\n";
    return 0;
}

int cmd_hear(const RunConfig& cfg) {
    const DomainSpec spec = load_domain(cfg);
    const Spectrum s = domain_spectrum(spec, cfg);
    const int M = cfg.orders > 0 ? cfg.orders : std::min(4, spec.n + 1);
    const FitWindow w = window_for(s, cfg, M);
    const HeatTraceSamples h = make_trace_samples(s, w.t_min, w.t_max);
    const ExpansionFit fit = fit_expansion(h, spec.n, M);
    const RecoveredGeometry geo = invert_geometry(fit);

    json j = to_json(fit);
    j["recovered"] = {{"boundary_volume", geo.boundary_volume},
                      {"curvature_recoverable", geo.curvature_recoverable},
                      {"mean_curvature_integral", geo.mean_curvature_integral},
                      {"a2_integral", geo.a2_integral}};

    // comparison table: fitted c_m vs the quadrature integrals of a_m
    std::cout << "order  fitted c_m        int a_m dS        abs gap      rel gap\n";
    if (spec.kind != DomainKind::CustomField) {
        const CurvatureField field =
            curvature_field(spec, cfg.nodes > 0 ? cfg.nodes : default_nodes(spec));
        const CoefficientSet cs = integrated_coefficients(field);
        json rows = json::array();
        for (int m = 0; m < M && m <= 3; ++m) {
            if (std::find(cs.valid_orders.begin(), cs.valid_orders.end(), m) ==
                cs.valid_orders.end())
                continue;
            const double fit_c = fit.coefficients[m];
            const double quad = cs.integrals[m];
            const double gap = fit_c - quad;
            if (std::abs(quad) > 1e-14)
                std::printf("a_%d    %-16.10g  %-16.10g  %-11.3g  %.3g\n", m, fit_c, quad, gap,
                            std::abs(gap) / std::abs(quad));
            else
                std::printf("a_%d    %-16.10g  %-16.10g  %-11.3g  -\n", m, fit_c, quad, gap);
            rows.push_back({{"m", m}, {"fitted", fit_c}, {"integral", quad}, {"gap", gap}});
        }
        j["comparison"] = rows;
    }
    std::cout << "recovered boundary volume " << format_double(geo.boundary_volume);
    if (geo.curvature_recoverable)
        std::cout << ", mean-curvature integral " << format_double(geo.mean_curvature_integral);
    std::cout << "\n";
    atomic_write_file(fs::path(cfg.out_dir) / "hear.json", j.dump(2) + "\n");
    return 0;
}

int cmd_check_inequalities(const RunConfig& cfg, int samples, int rlc_samples,
                           bool beta_sweep) {
    const SphereContext ctx(cfg.band_limit, 2 * cfg.band_limit);
    const SphereContext rlc_ctx(24, 48);
    const double A = sharp_sobolev_gradient_constant(2);
    const double B = calibrate_sobolev_B(ctx, A, std::max(200, samples), cfg.seed,
                                         cfg.band_limit);

    std::ostringstream lines;
    lines << json{{"seed", cfg.seed}, {"A", A}, {"B", B}, {"band_limit", cfg.band_limit}}.dump()
          << '\n';
    long pass = 0, total = 0;
    for (int i = 0; i < samples; ++i) {
        const BoundaryFunction f = random_boundary_function(cfg.band_limit, cfg.seed + 1000 + i);
        for (InequalityKind kind :
             {InequalityKind::SobolevTrace, InequalityKind::NashTrace}) {
            InequalityReport r = functional_inequality_check(ctx, kind, f, A, B);
            r.witness = "sample " + std::to_string(i);
            lines << to_json(r).dump() << '\n';
            pass += r.holds;
            ++total;
        }
        for (double eps : {0.1, 1.0, 10.0}) {
            InequalityReport r = functional_inequality_check(
                ctx, InequalityKind::LogSobolevTrace, f, A, B, eps);
            r.witness = "sample " + std::to_string(i);
            lines << to_json(r).dump() << '\n';
            pass += r.holds;
            ++total;
        }
    }
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i) grid.push_back(1e-3 * std::pow(1e4, i / 120.0));
    InequalityReport kb = kernel_bound_check(detail::model_ball(2), A, B, grid);
    lines << to_json(kb).dump() << '\n';
    pass += kb.holds;
    ++total;
    for (int i = 0; i < rlc_samples; ++i) {
        BoundaryFunction q = random_boundary_function(8, cfg.seed + 77000 + i);
        q.coeffs *= 1.0 / rlc_ctx.values(q).cwiseAbs().maxCoeff();
        q.coeffs(0) -= 1.5 * std::sqrt(4.0 * kPi);
        RlcResult res = rlc_count(rlc_ctx, q, A, B, 16);
        InequalityReport r = res.report;
        r.witness = "rlc sample " + std::to_string(i) + ", count " + std::to_string(res.count);
        lines << to_json(r).dump() << '\n';
        pass += r.holds;
        ++total;
    }
    atomic_write_file(fs::path(cfg.out_dir) / "inequalities.jsonl", lines.str());
    std::cout << pass << "/" << total << " inequality checks hold (A = " << A << ", B = " << B
              << ", seed " << cfg.seed << ")\n";

    if (beta_sweep) {
        // diagnostic: scaled counting asymptotics on a plot-ready grid
        const SphereContext sweep_ctx(28, 56);
        BoundaryFunction q = random_boundary_function(6, cfg.seed + 31337);
        q.coeffs *= 0.25 / sweep_ctx.values(q).cwiseAbs().maxCoeff();
        q.coeffs(0) -= 0.3 * std::sqrt(4.0 * kPi);
        const BetaSweep sweep =
            rlc_beta_sweep(sweep_ctx, q, A, B, 24, {1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 10.0, 12.0});
        atomic_write_file(fs::path(cfg.out_dir) / "beta_sweep.csv", to_csv(sweep));
        std::cout << "wrote " << (fs::path(cfg.out_dir) / "beta_sweep.csv").string()
                  << " (predicted limit " << format_double(sweep.predicted_limit) << ")\n";
    }
    return pass == total ? 0 : 1;
}

int cmd_validate(const RunConfig& cfg) {
    const ValidateOutcome out = run_acceptance_suite(cfg.seed);
    for (const auto& r : out.results)
        std::printf("[%d/9] %s  %-55s (%.1fs)  %s\n", r.id, r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.details.c_str());
    atomic_write_file(fs::path(cfg.out_dir) / "validate.json",
                      out.to_report(cfg.seed).dump(2) + "\n");
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "validate.json").string() << "\n";
    return out.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov spectra, DtN heat traces, and curvature hearing"};
    app.require_subcommand(1);

    RunConfig cfg;
    int samples = 200, rlc_samples = 20;
    bool beta_sweep = false;
    for (CLI::App* sub : {app.add_subcommand("spectrum", "compute a Steklov spectrum"),
                          app.add_subcommand("trace", "evaluate the heat trace on a grid"),
                          app.add_subcommand("invariants", "heat-coefficient densities and integrals"),
                          app.add_subcommand("hear", "fit the trace expansion and invert geometry"),
                          app.add_subcommand("check-inequalities", "run the trace-inequality harness"),
                          app.add_subcommand("validate", "run the full acceptance suite")}) {
        sub->add_option("--domain", cfg.domain_path, "domain JSON document");
        sub->add_option("--field", cfg.field_path,
                        "user-supplied CurvatureField CSV (CustomField path)");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--modes", cfg.modes, "DtN trig band limit N_modes");
        sub->add_option("--count", cfg.count, "eigenvalue count K");
        sub->add_option("--tmin", cfg.t_min, "fit window lower end");
        sub->add_option("--tmax", cfg.t_max, "fit window upper end");
        sub->add_option("--orders", cfg.orders, "fit order M (<= 4)");
        sub->add_option("--band-limit", cfg.band_limit, "spherical-harmonic band limit L");
        sub->add_option("--seed", cfg.seed, "RNG seed, recorded in outputs");
        sub->add_option("--cache", cfg.cache_dir, "spectrum cache directory");
        sub->add_option("--nodes", cfg.nodes, "boundary quadrature nodes");
        if (sub->get_name() == "check-inequalities") {
            sub->add_option("--samples", samples, "random test functions");
            sub->add_option("--rlc-samples", rlc_samples, "random RLC potentials");
            sub->add_flag("--beta-sweep", beta_sweep,
                          "emit the scaled counting-asymptotics diagnostic CSV");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0; parse errors are config errors
    }

    try {
        if (app.got_subcommand("spectrum")) return cmd_spectrum(cfg);
        if (app.got_subcommand("trace")) return cmd_trace(cfg);
        if (app.got_subcommand("invariants")) return cmd_invariants(cfg);
        if (app.got_subcommand("hear")) return cmd_hear(cfg);
        if (app.got_subcommand("check-inequalities"))
            return cmd_check_inequalities(cfg, samples, rlc_samples, beta_sweep);
        if (app.got_subcommand("validate")) return cmd_validate(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "ConfigError" ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
