#pragma once

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/envelope_bounds.hpp"
#include "plurikernel/expression.hpp"
#include "plurikernel/geodesics.hpp"
#include "plurikernel/green_link.hpp"
#include "plurikernel/io.hpp"
#include "plurikernel/julia_jwc.hpp"
#include "plurikernel/model_kernels.hpp"
#include "plurikernel/reproducing.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace plurikernel::cli {

enum ExitCode { ok = 0, validation_error = 2, numerical_error = 3 };

/// Everything a subcommand produces; the format flag picks one view.
struct Output {
    Json json;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> plot_header;
    std::vector<std::vector<double>> plot_rows;
};

inline std::string fmt(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::vector<std::string> coordinate_header(int n, const std::string& prefix = "z")
{
    std::vector<std::string> h;
    for (int j = 1; j <= n; ++j) {
        h.push_back("re_" + prefix + std::to_string(j));
        h.push_back("im_" + prefix + std::to_string(j));
    }
    return h;
}

inline void append_coordinates(std::vector<std::string>& row, const CVec& z)
{
    for (int j = 0; j < z.size(); ++j) {
        row.push_back(fmt(z(j).real()));
        row.push_back(fmt(z(j).imag()));
    }
}

inline void write_output(const Output& o, const std::string& format, std::ostream& os)
{
    if (format == "json") {
        os << o.json.dump(2) << '\n';
    } else if (format == "csv") {
        for (std::size_t i = 0; i < o.csv_header.size(); ++i) os << (i ? "," : "") << o.csv_header[i];
        os << '\n';
        for (const auto& row : o.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << '\n';
        }
    } else {
        os << '#';
        for (const auto& h : o.plot_header) os << ' ' << h;
        os << '\n';
        for (const auto& row : o.plot_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << fmt(row[i]);
            os << '\n';
        }
    }
}

inline std::vector<CVec> parse_points(const std::vector<std::string>& texts, int n)
{
    std::vector<CVec> pts;
    for (const auto& t : texts) pts.push_back(parse_point(t, n));
    return pts;
}

inline ScalarField parse_field(const std::string& text, int n)
{
    auto e = std::make_shared<Expression>(Expression::parse(text, n));
    return [e](const CVec& z) { return e->evaluate_real(z); };
}

inline void require_round(const DomainSpec& d, const char* what)
{
    if (!d.is_round()) fail(ErrorKind::unsupported, std::string(what) + " requires the disc or a ball");
}

// ---------------------------------------------------------------------------
// Subcommands

struct KernelArgs {
    std::string domain, pole;
    std::vector<std::string> points;
    int ray = 0;
    double tolerance = boundary_tolerance;
};

inline KernelValue kernel_value(const DomainSpec& d, const CVec& p, const CVec& z)
{
    return d.is_round() ? omega_round(d, p, z) : sandwich_bounds(d, p, z);
}

inline Output run_kernel(const KernelArgs& a)
{
    const DomainSpec d = parse_domain(a.domain);
    const int n = d.dimension();
    const CVec p = parse_point(a.pole, n);
    require_boundary(d, p, a.tolerance);
    std::vector<CVec> pts = parse_points(a.points, n);
    const BoundaryFrame frame = boundary_frame(d, p, a.tolerance);
    for (int k = 1; k <= a.ray; ++k) pts.push_back(p - std::ldexp(1.0, -k) * frame.nu);
    if (pts.empty()) fail(ErrorKind::invalid_argument, "kernel: give at least one --point or --ray");

    Output o;
    o.csv_header = coordinate_header(n);
    for (const char* h : {"value", "lo", "hi", "provenance"}) o.csv_header.push_back(h);
    o.plot_header = {"distance_to_pole", "value", "lo", "hi"};
    Json results = Json::array();
    for (const auto& z : pts) {
        const KernelValue kv = kernel_value(d, p, z);
        std::vector<std::string> row;
        append_coordinates(row, z);
        for (double x : {kv.value(), kv.lo, kv.hi}) row.push_back(fmt(x));
        row.push_back(to_string(kv.provenance));
        o.csv_rows.push_back(std::move(row));
        o.plot_rows.push_back({(z - p).norm(), kv.value(), kv.lo, kv.hi});
        results.push_back({{"point", vector_to_json(z)},
                           {"value", kv.value()},
                           {"lo", kv.lo},
                           {"hi", kv.hi},
                           {"provenance", to_string(kv.provenance)}});
    }
    o.json = {{"pole", vector_to_json(p)}, {"domain", to_string(d.kind())}, {"results", results}};
    if (results.size() == 1) {
        for (const char* key : {"value", "lo", "hi", "provenance", "point"}) o.json[key] = results[0][key];
    }
    if (a.ray > 0 && d.is_round()) {
        BoundaryCurve normal{[&](double t) { return CVec(p - (1.0 - t) * frame.nu); }, frame.nu};
        const auto lim = boundary_limit([&](const CVec& z) { return omega_round(d, p, z).value(); }, frame, normal);
        o.json["normal_limit"] = {{"estimate", lim.estimate},
                                  {"error_estimate", lim.error_estimate},
                                  {"predicted", lim.predicted}};
    }
    return o;
}

struct BoundsArgs {
    std::string domain, pole;
    std::vector<std::string> points;
    double tolerance = boundary_tolerance;
};

inline Output run_bounds(const BoundsArgs& a)
{
    const DomainSpec d = parse_domain(a.domain);
    const int n = d.dimension();
    const CVec p = parse_point(a.pole, n);
    require_boundary(d, p, a.tolerance);
    const TangentBalls tb = certified_tangent_balls(d, p);
    const std::vector<CandidateMember> cands{peak_candidate(d, p), ball_restriction_candidate(d, p)};

    Output o;
    o.csv_header = coordinate_header(n);
    for (const char* h : {"lower", "upper", "envelope", "provenance"}) o.csv_header.push_back(h);
    o.plot_header = {"distance_to_pole", "lower", "upper", "envelope"};
    Json results = Json::array();
    for (const auto& z : parse_points(a.points, n)) {
        const KernelValue kv = sandwich_bounds(d, p, z);
        const double env = lower_envelope(d, p, z, cands);
        std::vector<std::string> row;
        append_coordinates(row, z);
        for (double x : {kv.lo, kv.hi, env}) row.push_back(fmt(x));
        row.push_back(to_string(kv.provenance));
        o.csv_rows.push_back(std::move(row));
        o.plot_rows.push_back({(z - p).norm(), kv.lo, kv.hi, env});
        results.push_back({{"point", vector_to_json(z)},
                           {"lower", kv.lo},
                           {"upper", kv.hi},
                           {"envelope", env},
                           {"provenance", to_string(kv.provenance)}});
    }
    o.json = {{"pole", vector_to_json(p)},
              {"domain", to_string(d.kind())},
              {"r_in", tb.r_in},
              {"r_out", real_to_json(tb.r_out)},
              {"results", results}};
    return o;
}

struct GeodesicArgs {
    std::string domain, pole, through, direction;
    bool chl = false;
    int samples = 21;
    double tolerance = boundary_tolerance;
};

inline Output run_geodesic(const GeodesicArgs& a)
{
    const DomainSpec d = parse_domain(a.domain);
    require_round(d, "geodesic");
    const int n = d.dimension();
    const CVec p = parse_point(a.pole, n);
    require_boundary(d, p, a.tolerance);
    if (a.through.empty() == a.direction.empty())
        fail(ErrorKind::invalid_argument, "geodesic: give exactly one of --through and --direction");
    if (a.samples < 2) fail(ErrorKind::invalid_argument, "geodesic: --samples must be at least 2");
    const GeodesicDisc g = a.direction.empty()
                               ? geodesic_through(d, parse_point(a.through, n), p, a.chl)
                               : chl_geodesic(d.center(), d.radius(), p, parse_point(a.direction, n).normalized());
    const CVec nu = (p - d.center()).normalized();
    const Complex theta = herm(g.phi_prime(1.0), nu);
    const double factor = (1.0 / theta).real();
    const double deviation = restriction_identity_check(d.center(), d.radius(), p, g, disc_grid(10, 20));

    Output o;
    o.csv_header = {"re_zeta", "im_zeta"};
    for (const auto& h : coordinate_header(n, "phi")) o.csv_header.push_back(h);
    o.csv_header.push_back("omega");
    o.csv_header.push_back("predicted");
    o.plot_header = {"zeta", "omega", "predicted"};
    Json samples = Json::array();
    for (int k = 0; k < a.samples; ++k) {
        const double x = -0.95 + 1.9 * k / (a.samples - 1);
        const CVec w = g.phi(x);
        const double om = omega_round(d, p, w).value();
        const double pred = factor * poisson_disc(1.0, x);
        std::vector<std::string> row{fmt(x), fmt(0.0)};
        append_coordinates(row, w);
        row.push_back(fmt(om));
        row.push_back(fmt(pred));
        o.csv_rows.push_back(std::move(row));
        o.plot_rows.push_back({x, om, pred});
        samples.push_back({{"zeta", complex_to_json(x)}, {"phi", vector_to_json(w)}, {"omega", om}, {"predicted", pred}});
    }
    o.json = {{"pole", vector_to_json(p)},
              {"chl", g.chl()},
              {"chl_defect", g.chl() ? Json(chl_defect(g)) : Json(nullptr)},
              {"theta_phi_prime", complex_to_json(theta)},
              {"restriction_max_deviation", deviation},
              {"samples", samples}};
    return o;
}

struct GreenArgs {
    std::string domain, pole;
    std::vector<std::string> boundary_points;
    double h0 = 1e-3;
    int halvings = 8;
    double tolerance = boundary_tolerance;
};

inline Output run_green(const GreenArgs& a)
{
    const DomainSpec d = parse_domain(a.domain);
    require_round(d, "green");
    const int n = d.dimension();
    const CVec z = parse_point(a.pole, n);
    const NormalDerivativeOptions opt{a.h0, a.halvings};

    Output o;
    o.csv_header = coordinate_header(n, "p");
    for (const char* h : {"minus_dG_dnu", "omega", "abs_diff", "error_estimate", "lipschitz"}) o.csv_header.push_back(h);
    o.plot_header = {"h", "quotient"};
    Json results = Json::array();
    bool first = true;
    for (const auto& p : parse_points(a.boundary_points, n)) {
        require_boundary(d, p, a.tolerance);
        const auto r = normal_derivative_green(d, z, p, opt);
        const double om = omega_round(d, p, z).value();
        std::vector<std::string> row;
        append_coordinates(row, p);
        for (double x : {r.value, om, std::abs(r.value - om), r.error_estimate, r.lipschitz_estimate}) row.push_back(fmt(x));
        o.csv_rows.push_back(std::move(row));
        Json steps = Json::array();
        for (const auto& [h, q] : r.step_sequence) {
            steps.push_back({h, q});
            if (first) o.plot_rows.push_back({h, q});
        }
        first = false;
        results.push_back({{"boundary_point", vector_to_json(p)},
                           {"minus_dG_dnu", r.value},
                           {"omega", om},
                           {"abs_diff", std::abs(r.value - om)},
                           {"error_estimate", r.error_estimate},
                           {"lipschitz", r.lipschitz_estimate},
                           {"demailly_density", std::pow(std::abs(r.value), n) * levi_density(d, p)},
                           {"steps", steps}});
    }
    if (results.empty()) fail(ErrorKind::invalid_argument, "green: give at least one --boundary-point");
    o.json = {{"pole", vector_to_json(z)}, {"results", results}};
    return o;
}

struct ReproduceArgs {
    std::string domain, f, laplacian, export_rule;
    std::vector<std::string> points;
    int resolution = 64;
    int grid = 200;
    double tolerance = 1e-5;
};

inline Output run_reproduce(const ReproduceArgs& a)
{
    const DomainSpec d = parse_domain(a.domain);
    require_round(d, "reproduce");
    const int n = d.dimension();
    const ScalarField f = parse_field(a.f, n);
    const QuadratureRule rule = boundary_quadrature(d, a.resolution);
    if (!a.export_rule.empty()) {
        std::ofstream out(a.export_rule);
        if (!out) fail(ErrorKind::invalid_argument, "cannot write quadrature rule to '" + a.export_rule + "'");
        write_quadrature_csv(out, rule);
    }
    const bool riesz = !a.laplacian.empty();
    if (riesz && (d.kind() != DomainKind::disc)) fail(ErrorKind::invalid_argument, "--laplacian requires the unit disc");
    const ScalarField lap = riesz ? parse_field(a.laplacian, 1) : ScalarField{};

    Output o;
    o.csv_header = coordinate_header(n);
    for (const char* h : {"reproduced", "direct", "abs_error", "within_tolerance"}) o.csv_header.push_back(h);
    if (riesz) {
        o.csv_header.push_back("boundary_term");
        o.csv_header.push_back("correction");
    }
    o.plot_header = {"index", "reproduced", "direct"};
    Json results = Json::array();
    const auto pts = parse_points(a.points, n);
    if (pts.empty()) fail(ErrorKind::invalid_argument, "reproduce: give at least one --z");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const CVec& z = pts[i];
        RieszResult rr;
        double value = 0.0;
        if (riesz) {
            rr = riesz_correction_1d(f, lap, z, rule, {a.grid, a.grid});
            value = rr.result;
        } else {
            value = reproduce(d, f, z, rule);
        }
        const double direct = f(z);
        const double err = std::abs(value - direct);
        std::vector<std::string> row;
        append_coordinates(row, z);
        for (double x : {value, direct, err}) row.push_back(fmt(x));
        row.push_back(err <= a.tolerance ? "1" : "0");
        if (riesz) {
            row.push_back(fmt(rr.boundary_term));
            row.push_back(fmt(rr.correction));
        }
        o.csv_rows.push_back(std::move(row));
        o.plot_rows.push_back({static_cast<double>(i), value, direct});
        Json r = {{"z", vector_to_json(z)},
                  {"reproduced", value},
                  {"direct", direct},
                  {"abs_error", err},
                  {"within_tolerance", err <= a.tolerance}};
        if (riesz) {
            r["boundary_term"] = rr.boundary_term;
            r["correction"] = rr.correction;
        }
        results.push_back(r);
    }
    o.json = {{"rule",
               {{"dimension", rule.dimension},
                {"resolution", rule.resolution},
                {"nodes", rule.nodes.size()},
                {"total_weight", rule.total_weight()},
                {"descriptor", rule.descriptor}}},
              {"field", a.f},
              {"tolerance", a.tolerance},
              {"results", results}};
    return o;
}

struct JuliaArgs {
    std::string map, p, q;
    std::vector<double> radii{0.1, 1.0, 10.0};
    int samples = 500;
    double aperture = 0.5;
    double lambda = 0.0;  // > 0 overrides the estimate in the inclusion check
    double tolerance = 1e-4;
    std::uint64_t seed = 1;
};

inline Json ray_json(const RayLimit& r)
{
    return {{"finite", r.finite}, {"limit", real_to_json(r.limit)}, {"error_estimate", real_to_json(r.error_estimate)}};
}

inline Output run_julia(const JuliaArgs& a)
{
    const HolomorphicMap f = parse_map(a.map);
    const CVec p = parse_point(a.p, f.source_dimension());
    const CVec q = parse_point(a.q, f.target_dimension());
    SamplingPlan plan;
    plan.seed = a.seed;
    const JuliaReport rep = lambda_estimate(f, p, q, plan);

    Output o;
    o.csv_header = {"s", "ratio"};
    o.plot_header = {"s", "ratio"};
    Json ray = Json::array();
    for (const auto& [s, r] : rep.ray_samples) {
        o.csv_rows.push_back({fmt(s), fmt(r)});
        o.plot_rows.push_back({s, r});
        ray.push_back({s, real_to_json(r)});
    }
    Json j = {{"map", f.name()},
              {"p", vector_to_json(p)},
              {"q", vector_to_json(q)},
              {"finite", rep.finite},
              {"lambda", real_to_json(rep.finite ? rep.normal_ray_limit : rep.lambda_estimate)},
              {"lambda_estimate", real_to_json(rep.lambda_estimate)},
              {"normal_ray_limit", real_to_json(rep.normal_ray_limit)},
              {"normal_ray_error", real_to_json(rep.normal_ray_error)},
              {"grid_points", rep.grid_points},
              {"ray_samples", ray}};

    if (rep.finite) {
        const double lam = a.lambda > 0.0 ? a.lambda : std::max(rep.lambda_estimate, rep.normal_ray_limit);
        const InclusionReport inc =
            horoball_inclusion_check(f, p, q, lam, a.radii, static_cast<std::size_t>(a.samples), a.seed);
        Json viol = Json::array();
        for (const auto& v : inc.violations)
            viol.push_back({{"z", vector_to_json(v.z)}, {"R", v.R}, {"margin", v.margin}});
        j["inclusion"] = {{"lambda_used", lam},
                          {"radii", a.radii},
                          {"samples", inc.samples},
                          {"violations", viol},
                          {"undetermined_count", inc.undetermined_count},
                          {"min_relative_margin", real_to_json(inc.min_relative_margin)}};

        const JwcProbeReport pr = jwc_derivative_probes(f, p, q, a.aperture);
        Json probes = Json::array();
        for (const auto& t : pr.probes)
            probes.push_back({{"name", t.name},
                              {"applicable", t.applicable},
                              {"limit", complex_to_json(t.limit)},
                              {"limit_error", real_to_json(t.limit_error)},
                              {"max_abs", t.max_abs},
                              {"cone_spread", t.cone_spread},
                              {"last_value", real_to_json(t.values.empty() ? 0.0 : std::abs(t.values.back()))}});
        j["probes"] = probes;
    } else {
        j["inclusion"] = nullptr;
        j["probes"] = nullptr;
        j["diagnostic"] = "kernel ratio diverges along the normal ray; inclusion and probes skipped";
    }
    const ConditionReport c = condition_equivalence_check(f, p, CVec::Zero(f.source_dimension()),
                                                          CVec::Zero(f.target_dimension()), 2, 20, a.tolerance);
    j["conditions"] = {{"lambda", ray_json(c.lambda)},
                       {"kobayashi_gap", ray_json(c.kobayashi_gap)},
                       {"distance_ratio", ray_json(c.distance_ratio)},
                       {"agree", c.agree},
                       {"values_consistent", c.values_consistent}};
    o.json = j;
    return o;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pluricomplex Poisson kernels, Green functions, boundary quadrature and Julia-type estimates"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 1;
    std::function<Output()> action;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "plotdata"}));
        sub->add_option("--output,-o", output, "Output file (default: standard output)");
        sub->add_option("--seed", seed, "Random seed for sampled checks");
    };

    KernelArgs ka;
    auto* kernel = app.add_subcommand("kernel", "Evaluate Omega_{D,p} at points (closed form or certified interval)");
    kernel->add_option("--domain", ka.domain, "Domain: inline JSON, JSON file, or shorthand")->required();
    kernel->add_option("--pole", ka.pole, "Boundary pole p")->required();
    kernel->add_option("--point", ka.points, "Evaluation points");
    kernel->add_option("--ray", ka.ray, "Also sample p - 2^-k nu for k = 1..K")->check(CLI::Range(0, 40));
    kernel->add_option("--tolerance", ka.tolerance, "Boundary tolerance for the pole")->check(CLI::PositiveNumber);
    common(kernel);
    kernel->callback([&] { action = [&] { return run_kernel(ka); }; });

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Sandwich interval and lower envelope of Omega_{D,p}");
    bounds->add_option("--domain", ba.domain, "Domain")->required();
    bounds->add_option("--pole", ba.pole, "Boundary pole p")->required();
    bounds->add_option("--point", ba.points, "Evaluation points")->required();
    bounds->add_option("--tolerance", ba.tolerance, "Boundary tolerance for the pole")->check(CLI::PositiveNumber);
    common(bounds);
    bounds->callback([&] { action = [&] { return run_bounds(ba); }; });

    GeodesicArgs ga;
    auto* geo = app.add_subcommand("geodesic", "Complex geodesic at a boundary pole and the restriction identity");
    geo->add_option("--domain", ga.domain, "Round domain")->required();
    geo->add_option("--pole", ga.pole, "Boundary pole p")->required();
    geo->add_option("--through", ga.through, "Interior point on the geodesic");
    geo->add_option("--direction", ga.direction, "CHL direction v with <v, nu_p> > 0");
    geo->add_flag("--chl", ga.chl, "Normalize the --through geodesic in CHL form");
    geo->add_option("--samples", ga.samples, "Samples on the real diameter")->check(CLI::Range(2, 100000));
    geo->add_option("--tolerance", ga.tolerance, "Boundary tolerance for the pole")->check(CLI::PositiveNumber);
    common(geo);
    geo->callback([&] { action = [&] { return run_geodesic(ga); }; });

    GreenArgs gra;
    auto* green = app.add_subcommand("green", "Normal derivative of the Green function versus Omega");
    green->add_option("--domain", gra.domain, "Round domain")->required();
    green->add_option("--pole", gra.pole, "Interior pole z")->required();
    green->add_option("--boundary-point", gra.boundary_points, "Boundary points p")->required();
    green->add_option("--h0", gra.h0, "Initial step")->check(CLI::PositiveNumber);
    green->add_option("--halvings", gra.halvings, "Number of step halvings")->check(CLI::Range(2, 40));
    green->add_option("--tolerance", gra.tolerance, "Boundary tolerance for p")->check(CLI::PositiveNumber);
    common(green);
    green->callback([&] { action = [&] { return run_green(gra); }; });

    ReproduceArgs ra;
    auto* repro = app.add_subcommand("reproduce", "Boundary reproducing formula by quadrature");
    repro->add_option("--domain", ra.domain, "Round domain")->required();
    repro->add_option("--f", ra.f, "Scalar field expression in z1..zn")->required();
    repro->add_option("--z", ra.points, "Interior points")->required();
    repro->add_option("--resolution", ra.resolution, "Quadrature resolution m")->check(CLI::Range(4, 4096));
    repro->add_option("--laplacian", ra.laplacian, "Laplacian of f (disc only): adds the Riesz correction");
    repro->add_option("--grid", ra.grid, "Polar grid size for the Riesz correction")->check(CLI::Range(4, 100000));
    repro->add_option("--export-rule", ra.export_rule, "Write the quadrature rule as CSV");
    repro->add_option("--tolerance", ra.tolerance, "Threshold for within_tolerance")->check(CLI::PositiveNumber);
    common(repro);
    repro->callback([&] { action = [&] { return run_reproduce(ra); }; });

    JuliaArgs ja;
    auto* julia = app.add_subcommand("julia", "Boundary dilation coefficient, horoball inclusion, JWC probes");
    julia->add_option("--map", ja.map, "Map spec JSON")->required();
    julia->add_option("--p", ja.p, "Boundary point of the source")->required();
    julia->add_option("--q", ja.q, "Boundary point of the target")->required();
    julia->add_option("--radii", ja.radii, "Horoball radii")->check(CLI::PositiveNumber);
    julia->add_option("--samples", ja.samples, "Samples per horoball")->check(CLI::Range(1, 10000000));
    julia->add_option("--aperture", ja.aperture, "Cone slope for the probes")->check(CLI::NonNegativeNumber);
    julia->add_option("--lambda", ja.lambda, "Use this lambda in the inclusion check")->check(CLI::PositiveNumber);
    julia->add_option("--tolerance", ja.tolerance, "Relative tolerance for the condition check")
        ->check(CLI::PositiveNumber);
    common(julia);
    julia->callback([&] {
        action = [&] {
            ja.seed = seed;
            return run_julia(ja);
        };
    });

    auto emit_error = [&](const Error& e) {
        err << error_to_json(e).dump() << '\n';
        return is_numerical(e.kind()) ? numerical_error : validation_error;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        return emit_error(Error(ErrorKind::invalid_argument, e.what(), e.get_name()));
    }

    try {
        const Output o = action();
        if (output.empty()) {
            write_output(o, format, out);
        } else {
            std::ofstream file(output);
            if (!file) fail(ErrorKind::invalid_argument, "cannot open output file '" + output + "'");
            write_output(o, format, file);
        }
        return ok;
    } catch (const Error& e) {
        return emit_error(e);
    } catch (const Json::exception& e) {
        return emit_error(Error(ErrorKind::invalid_argument, e.what(), "json"));
    } catch (const std::exception& e) {
        return emit_error(Error(ErrorKind::numerical_failure, e.what(), "unexpected"));
    }
}

}  // namespace plurikernel::cli
