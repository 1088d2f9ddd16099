// Command-line surface: counting curves, blocking verification and search,
// torus certificates, hyperbolic insecurity certificates, growth fits and
// entropy estimators. All outputs are deterministic given (inputs, seed).

#include <blockgeo/io.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace blockgeo;

std::vector<Rat> make_grid(const Rat& tmin, const Rat& tmax, const Rat& step) {
    if (step <= 0 || tmax < tmin) throw std::invalid_argument("bad T grid");
    std::vector<Rat> grid;
    for (Rat t = tmin; t <= tmax; t += step) grid.push_back(t);
    if (grid.empty()) throw std::invalid_argument("empty T grid");
    return grid;
}

std::vector<Point> load_point_list(const Space& sp, const std::string& path,
                                   const Configuration* cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file '" + path + "'");
    Json j = Json::parse(in);
    std::vector<Point> out;
    if (j.contains("grid")) {
        if (j.at("grid").get<std::string>() != "uniform")
            throw std::invalid_argument("unknown grid kind");
        const auto* t = std::get_if<LatticeTorus>(&sp.v);
        if (!t) throw std::invalid_argument("uniform grids are torus-only");
        Int k = Int(j.at("denominator").get<long long>());
        if (k <= 0) throw std::invalid_argument("denominator must be positive");
        std::vector<Int> idx(t->dim, 0);
        auto rec = [&](auto&& self, int i) -> void {
            if (i == t->dim) {
                RatVec c(t->dim);
                for (int d = 0; d < t->dim; ++d) c[d] = Rat(idx[d], k);
                Point p = make_point(make_torus_point(std::move(c)));
                if (cfg && (points_equal(p, cfg->x) || points_equal(p, cfg->y))) return;
                out.push_back(std::move(p));
                return;
            }
            for (idx[i] = 0; idx[i] < k; ++idx[i]) self(self, i + 1);
        };
        rec(rec, 0);
        return out;
    }
    for (const auto& lit : j.at("points")) out.push_back(parse_point(sp, lit.get<std::string>()));
    return out;
}

struct Common {
    std::string space_arg;
    std::string out_path;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string command_line;
};

RunManifest make_manifest(const Common& c, const Space& sp) {
    RunManifest m;
    m.command_line = c.command_line;
    m.space = space_to_json(sp);
    m.seed = c.seed;
    m.tolerance = c.tolerance;
    return m;
}

void emit_json(const Common& c, const Json& j) {
    if (c.out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(c.out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace blockgeo;
    CLI::App app{"geodesic counting, blocking and growth toolkit"};
    app.require_subcommand(1);

    Common common;
    for (int i = 0; i < argc; ++i) {
        if (i) common.command_line += ' ';
        common.command_line += argv[i];
    }

    std::string x_arg, y_arg, z_arg;
    std::string blockers_path, candidates_path, in_path, model_arg = "polynomial";
    std::string check_name;
    double tmaxd = 10.0;  // not used directly; grids are rational
    (void)tmaxd;
    std::string tmax_s = "10", tmin_s, step_s = "1";
    std::size_t samples = 200, max_size = 4;
    double h1 = 0, h2 = 0, delta = 0, s_thresh = 0, window_fraction = 0.5;
    double m_xyz = 0, m_xz = 0, m_zy = 0;

    auto add_common = [&](CLI::App* sub, bool need_space) {
        if (need_space) sub->add_option("--space", common.space_arg, "space JSON file or 'genus2'")->required();
        sub->add_option("--out", common.out_path, "output file");
        sub->add_option("--tolerance", common.tolerance, "hyperbolic passage tolerance");
        sub->add_option("--seed", common.seed, "RNG seed");
        sub->add_option("--threads", common.threads, "worker cap")->check(CLI::PositiveNumber);
    };

    auto* count = app.add_subcommand("count", "emit a T,n_T,m_T curve as CSV");
    add_common(count, true);
    count->add_option("--x", x_arg)->required();
    count->add_option("--y", y_arg)->required();
    count->add_option("--tmax", tmax_s)->required();
    count->add_option("--tmin", tmin_s);
    count->add_option("--step", step_s);

    auto* block = app.add_subcommand("block", "blocking-set operations");
    auto* bverify = block->add_subcommand("verify", "verify a finite blocking set at T");
    add_common(bverify, true);
    bverify->add_option("--x", x_arg)->required();
    bverify->add_option("--y", y_arg)->required();
    bverify->add_option("--blockers", blockers_path)->required();
    bverify->add_option("--tmax", tmax_s)->required();
    auto* bsearch = block->add_subcommand("search", "exhaustive minimal-blocking search");
    add_common(bsearch, true);
    bsearch->add_option("--x", x_arg)->required();
    bsearch->add_option("--y", y_arg)->required();
    bsearch->add_option("--candidates", candidates_path)->required();
    bsearch->add_option("--tmax", tmax_s)->required();
    bsearch->add_option("--max-size", max_size);
    auto* bcertify = block->add_subcommand("certify", "all-T torus blocking certificate");
    add_common(bcertify, true);
    bcertify->add_option("--x", x_arg)->required();
    bcertify->add_option("--y", y_arg)->required();
    bcertify->add_option("--blockers", blockers_path, "defaults to the midpoint set");
    bcertify->add_option("--tmax", tmax_s, "fallback finite-scope T");

    auto* insecure = app.add_subcommand("insecure", "hyperbolic non-blocking certificate");
    add_common(insecure, true);
    insecure->add_option("--x", x_arg)->required();
    insecure->add_option("--y", y_arg)->required();
    insecure->add_option("--blockers", blockers_path)->required();
    insecure->add_option("--tmax", tmax_s)->required();

    auto* fit = app.add_subcommand("fit", "growth fit over a counting curve CSV");
    add_common(fit, false);
    fit->add_option("--in", in_path)->required();
    fit->add_option("--model", model_arg)->check(CLI::IsMember({"polynomial", "exponential"}));
    fit->add_option("--window", window_fraction, "fraction of the T window used, from the top");

    auto* entropy = app.add_subcommand("entropy", "entropy estimators");
    auto* mane = entropy->add_subcommand("mane", "Monte-Carlo joining-count growth rate");
    add_common(mane, true);
    mane->add_option("--samples", samples);
    mane->add_option("--tmax", tmax_s)->required();
    mane->add_option("--tmin", tmin_s);
    mane->add_option("--step", step_s);
    auto* bb = entropy->add_subcommand("berger-bott", "integrated count vs cover-ball volume");
    add_common(bb, true);
    bb->add_option("--x", x_arg)->required();
    bb->add_option("--tmax", tmax_s)->required();
    bb->add_option("--samples", samples);

    auto* check = app.add_subcommand("check", "run a named bound check");
    add_common(check, false);
    check->add_option("--name", check_name)
        ->required()
        ->check(CLI::IsMember({"mn", "split", "security", "entropy-window"}));
    check->add_option("--in", in_path, "counting curve CSV (mn, security, entropy-window)");
    check->add_option("--delta", delta, "injectivity radius");
    check->add_option("--s", s_thresh, "security threshold");
    check->add_option("--h1", h1);
    check->add_option("--h2", h2);
    check->add_option("--m-xyz", m_xyz);
    check->add_option("--m-xz", m_xz);
    check->add_option("--m-zy", m_zy);

    CLI11_PARSE(app, argc, argv);

    const auto t_start = std::chrono::steady_clock::now();
    int exit_code = 0;
    try {
        OrbitOptions opts;

        if (count->parsed()) {
            Space sp = load_space(common.space_arg);
            if (auto* h = std::get_if<Genus2Surface>(&sp.v)) h->tol_geo = common.tolerance;
            Configuration cfg{parse_point(sp, x_arg), parse_point(sp, y_arg)};
            Rat tmax = parse_rational(tmax_s);
            Rat step = parse_rational(step_s);
            Rat tmin = tmin_s.empty() ? step : parse_rational(tmin_s);
            auto curve = compute_count_curve(sp, cfg, make_grid(tmin, tmax, step), opts);
            std::string csv = count_curve_csv(curve);
            if (common.out_path.empty()) {
                std::cout << csv;
            } else {
                write_text_file(common.out_path, csv);
                write_json_file(common.out_path + ".manifest.json",
                                manifest_to_json(make_manifest(common, sp)));
            }
        } else if (bverify->parsed()) {
            Space sp = load_space(common.space_arg);
            Configuration cfg{parse_point(sp, x_arg), parse_point(sp, y_arg)};
            auto blockers = load_point_list(sp, blockers_path, &cfg);
            auto rep = verify_blocking_finite(sp, cfg, blockers, parse_rational(tmax_s), opts);
            emit_json(common, block_report_to_json(rep, sp, make_manifest(common, sp)));
        } else if (bsearch->parsed()) {
            Space sp = load_space(common.space_arg);
            Configuration cfg{parse_point(sp, x_arg), parse_point(sp, y_arg)};
            auto candidates = load_point_list(sp, candidates_path, &cfg);
            auto tb = search_min_blocking(sp, cfg, parse_rational(tmax_s), candidates, max_size, opts);
            emit_json(common, threshold_bound_to_json(tb, sp, make_manifest(common, sp)));
        } else if (bcertify->parsed()) {
            Space sp = load_space(common.space_arg);
            const auto* t = std::get_if<LatticeTorus>(&sp.v);
            if (!t) throw std::invalid_argument("block certify requires a torus space");
            auto xp = std::get<TorusPoint>(parse_point(sp, x_arg).v);
            auto yp = std::get<TorusPoint>(parse_point(sp, y_arg).v);
            std::vector<TorusPoint> B;
            if (blockers_path.empty()) {
                B = midpoint_blocking_set(*t, xp, yp);
            } else {
                Configuration cfg{make_point(xp), make_point(yp)};
                for (const auto& p : load_point_list(sp, blockers_path, &cfg))
                    B.push_back(std::get<TorusPoint>(p.v));
            }
            auto cert = certify_blocking_all(*t, xp, yp, B);
            if (cert.scope == CertificateScope::FiniteT) {
                // fall back to finite verification at --tmax
                Rat T = parse_rational(tmax_s);
                Configuration cfg{make_point(xp), make_point(yp)};
                std::vector<Point> bpts;
                for (const auto& b : B) bpts.push_back(make_point(b));
                auto rep = verify_blocking_finite(sp, cfg, bpts, T, opts);
                cert.finite_T = T;
                cert.certified = rep.blocked;
            }
            emit_json(common, blocking_certificate_to_json(cert, sp, make_manifest(common, sp)));
        } else if (insecure->parsed()) {
            Space sp = load_space(common.space_arg);
            const auto* h = std::get_if<Genus2Surface>(&sp.v);
            if (!h) throw std::invalid_argument("insecure requires the genus2 space");
            auto xp = std::get<DiskPoint>(parse_point(sp, x_arg).v);
            auto yp = std::get<DiskPoint>(parse_point(sp, y_arg).v);
            std::vector<DiskPoint> cands;
            for (const auto& p : load_point_list(sp, blockers_path, nullptr))
                cands.push_back(std::get<DiskPoint>(p.v));
            double T = to_double(parse_rational(tmax_s));
            auto cert = non_blocking_certificate(*h, xp, yp, cands, T, opts);
            emit_json(common, non_blocking_certificate_to_json(cert, sp, make_manifest(common, sp)));
        } else if (fit->parsed()) {
            std::ifstream in(in_path);
            if (!in) throw std::runtime_error("cannot open '" + in_path + "'");
            auto curve = count_curve_from_csv(in);
            auto model = model_arg == "polynomial" ? GrowthModel::Polynomial : GrowthModel::Exponential;
            auto f = fit_growth(curve, model, window_fraction);
            emit_json(common, growth_fit_to_json(f));
        } else if (mane->parsed()) {
            Space sp = load_space(common.space_arg);
            Rat tmax = parse_rational(tmax_s);
            Rat step = parse_rational(step_s);
            Rat tmin = tmin_s.empty() ? step : parse_rational(tmin_s);
            auto f = mane_estimate(sp, samples, make_grid(tmin, tmax, step), common.seed, opts);
            emit_json(common, growth_fit_to_json(f));
        } else if (bb->parsed()) {
            Space sp = load_space(common.space_arg);
            Point x = parse_point(sp, x_arg);
            auto c = berger_bott_check(sp, x, parse_rational(tmax_s), samples, common.seed, opts);
            emit_json(common, bound_check_to_json(c));
            if (!c.satisfied) exit_code = 2;
        } else if (check->parsed()) {
            Json out = Json::array();
            bool all_ok = true;
            auto push = [&](const BoundCheck& c) {
                out.push_back(bound_check_to_json(c));
                all_ok = all_ok && c.satisfied;
            };
            if (check_name == "split") {
                push(check_split_bound(m_xyz, m_xz, m_zy));
            } else {
                std::ifstream in(in_path);
                if (!in) throw std::runtime_error("cannot open '" + in_path + "'");
                auto curve = count_curve_from_csv(in);
                if (check_name == "mn") {
                    if (delta <= 0) throw std::invalid_argument("--delta required");
                    for (std::size_t i = 0; i < curve.grid.size(); ++i)
                        push(check_mn_bound(double(curve.n[i]), double(curve.m[i]),
                                            to_double(curve.grid[i]), delta));
                } else if (check_name == "security") {
                    if (delta <= 0 || s_thresh < 1)
                        throw std::invalid_argument("--delta and --s required");
                    for (std::size_t i = 0; i < curve.grid.size(); ++i)
                        push(check_uniform_security_bound(double(curve.n[i]),
                                                          to_double(curve.grid[i]), delta,
                                                          s_thresh));
                } else {  // entropy-window
                    if (h1 <= 0 || h2 <= 0) throw std::invalid_argument("--h1 and --h2 required");
                    push(check_entropy_window(curve, h1, h2));
                }
            }
            emit_json(common, out);
            if (!all_ok) exit_code = 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t_start)
                             .count();
    std::cerr << "wall time: " << wall_ms << " ms\n";
    return exit_code;
}
