// chylab: command-line driver for the scattering-equations toolkit.
//
// Subcommands: kinematics gen, solve, amplitude {chy|feynman|compare|partial},
// uequations check, binary check, trop amplitude, scatform pullback,
// scatmap check, string {eval|ftlimit}, sectors census, mhv check, accept.
// Numerical failures exit 1 with a diagnostic JSON object on stdout.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "chy/acceptance.hpp"
#include "chy/json_io.hpp"
#include "chy/parallel.hpp"
#include "chy/scattering_form.hpp"
#include "chy/spinor.hpp"
#include "chy/string_integrals.hpp"
#include "chy/tropical.hpp"

using namespace chy;

namespace {

json fail_json(const std::string& what) {
    json out;
    out["error"] = what;
    return out;
}

PlanarPoint<Rational> load_or_random_planar(const std::string& file, int n, std::uint64_t seed, bool positive) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open " + file);
        json j;
        in >> j;
        return planar_from_json(j);
    }
    if (positive) {
        std::mt19937_64 g(seed);
        PlanarPoint<Rational> p(n);
        for (auto& v : p.x) v = Rational(rng_int(g, 1, 20), rng_int(g, 1, 20));
        return p;
    }
    return random_planar(n, seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering equations, amplitudes, and moduli-space checks"};
    app.require_subcommand(1);

    int n = 5, trials = 10, samples = 100;
    std::uint64_t seed = 1;
    long range = 10;
    double alpha = 0.05, tol = 1e-8;
    bool as_json = false;
    std::string xfile, name = "hexagon";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "particle count");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_flag("--json", as_json, "machine-readable output");
    };

    auto* kin = app.add_subcommand("kinematics", "kinematic points");
    auto* kin_gen = kin->add_subcommand("gen", "generate a random integer kinematic point");
    add_common(kin_gen);
    kin_gen->add_option("--range", range, "integer X range");

    auto* solve_cmd = app.add_subcommand("solve", "solve the scattering equations");
    add_common(solve_cmd);

    auto* amp = app.add_subcommand("amplitude", "scalar amplitudes");
    auto* amp_chy = amp->add_subcommand("chy", "CHY sum over solutions");
    add_common(amp_chy);
    auto* amp_feyn = amp->add_subcommand("feynman", "exact planar phi^3 sum");
    add_common(amp_feyn);
    amp_feyn->add_option("--x-file", xfile, "JSON file with planar variables");
    auto* amp_cmp = amp->add_subcommand("compare", "CHY vs Feynman over random points");
    add_common(amp_cmp);
    amp_cmp->add_option("--trials", trials, "number of kinematic points");
    amp_cmp->add_option("--tol", tol, "relative tolerance");
    auto* amp_part = amp->add_subcommand("partial", "partial amplitudes for all orderings");
    add_common(amp_part);

    auto* ueq = app.add_subcommand("uequations", "dihedral coordinate relations");
    auto* ueq_check = ueq->add_subcommand("check", "residuals at random positive points");
    add_common(ueq_check);

    auto* bin = app.add_subcommand("binary", "binary geometry systems");
    auto* bin_check = bin->add_subcommand("check", "complex checks and Newton witnesses");
    bin_check->add_option("--name", name, "square|hexagon|octagon|pell3|M0n(n)");
    bin_check->add_flag("--json", as_json);
    bin_check->add_option("--seed", seed);

    auto* trop = app.add_subcommand("trop", "tropical amplitudes");
    auto* trop_amp = trop->add_subcommand("amplitude", "Laplace transform over the positive fan");
    add_common(trop_amp);
    trop_amp->add_option("--x-file", xfile, "JSON file with planar variables");

    auto* form = app.add_subcommand("scatform", "scattering form");
    auto* form_pull = form->add_subcommand("pullback", "pullback coefficient vs Feynman");
    add_common(form_pull);

    auto* smap = app.add_subcommand("scatmap", "scattering map");
    auto* smap_check = smap->add_subcommand("check", "associahedron positivity sampling");
    add_common(smap_check);
    smap_check->add_option("--samples", samples, "number of positive samples");

    auto* str = app.add_subcommand("string", "stringy integrals");
    auto* str_eval = str->add_subcommand("eval", "evaluate at one alpha'");
    add_common(str_eval);
    str_eval->add_option("--alpha", alpha, "inverse string tension");
    auto* str_ft = str->add_subcommand("ftlimit", "field-theory limit");
    add_common(str_ft);

    auto* sect = app.add_subcommand("sectors", "4D sector decomposition");
    auto* sect_census = sect->add_subcommand("census", "classify solutions over trials");
    add_common(sect_census);
    sect_census->add_option("--trials", trials);

    auto* mhv = app.add_subcommand("mhv", "Parke-Taylor MHV identities");
    auto* mhv_check = mhv->add_subcommand("check", "bracket identities at random spinors");
    add_common(mhv_check);

    auto* acc = app.add_subcommand("accept", "run the acceptance suite");
    acc->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);

    try {
        json out;
        if (kin_gen->parsed()) {
            auto m = random_point(n, seed, range);
            out = mandelstam_to_json(m);
            out["X"] = planar_to_json(x_from_s(m))["X"];
        } else if (solve_cmd->parsed()) {
            auto m = random_point(n, seed);
            auto sols = solve_all(mandelstam_to_complex(m));
            out = solutions_to_json(sols);
            out["n"] = n;
            out["seed"] = seed;
        } else if (amp_chy->parsed()) {
            auto m = mandelstam_to_complex(random_point(n, seed));
            auto A = chy_scalar(m, solve_all(m));
            out["n"] = n;
            out["chy"] = {A.real(), A.imag()};
        } else if (amp_feyn->parsed()) {
            auto X = load_or_random_planar(xfile, n, seed, false);
            out["n"] = X.n;
            out["feynman"] = to_string(feynman_phi3(X));
        } else if (amp_cmp->parsed()) {
            std::vector<double> devs(trials, 0.0);
            std::vector<int> bad(trials, 0);
            parallel_for(trials, [&](int t) {
                auto m = random_point(n, seed + t);
                try {
                    auto sols = solve_all(mandelstam_to_complex(m));
                    double chy = std::abs(chy_scalar(mandelstam_to_complex(m), sols).real());
                    double feyn = std::abs(to_double(feynman_phi3(x_from_s(m))));
                    devs[t] = std::abs(chy - feyn) / std::max(std::abs(feyn), 1e-300);
                } catch (const std::exception&) {
                    bad[t] = 1;
                }
            });
            double worst = 0;
            int rejected = 0;
            for (int t = 0; t < trials; ++t) {
                worst = std::max(worst, devs[t]);
                rejected += bad[t];
            }
            out["n"] = n;
            out["trials"] = trials;
            out["rejected"] = rejected;
            out["max_relative_deviation"] = worst;
            out["pass"] = worst < tol && rejected == 0;
            if (!out["pass"].get<bool>()) {
                std::cout << out.dump(2) << std::endl;
                return 1;
            }
        } else if (amp_part->parsed()) {
            auto m = random_point(n, seed);
            auto mc = mandelstam_to_complex(m);
            auto sols = solve_all(mc);
            auto X = x_from_s(m);
            std::vector<int> alphav = identity_ordering(n);
            json list = json::array();
            double worst = 0;
            do {
                double feyn = std::abs(to_double(partial_feynman(X, alphav)));
                double chy = std::abs(chy_partial(mc, sols, identity_ordering(n), alphav));
                worst = std::max(worst, std::abs(chy - feyn) / std::max(feyn, 1e-300));
                list.push_back({{"ordering", alphav}, {"feynman", feyn}, {"chy", chy}});
            } while (std::next_permutation(alphav.begin(), alphav.end()));
            out["n"] = n;
            out["max_relative_deviation"] = worst;
            if (as_json) out["orderings"] = list;
        } else if (ueq_check->parsed()) {
            std::mt19937_64 g(seed);
            std::vector<double> y;
            for (int k = 0; k < n - 3; ++k) y.push_back(std::exp(rng_uniform(g, -2.0, 2.0)));
            auto u = u_from_y(PositivePoint(n, y));
            auto R = u_equation_residuals(u);
            double worst = 0;
            for (double v : R.u) worst = std::max(worst, std::abs(v));
            out["n"] = n;
            out["y"] = y;
            out["max_residual"] = worst;
            out["pass"] = worst < 1e-12;
        } else if (bin_check->parsed()) {
            auto sys = builtin_system(name);
            out["name"] = name;
            out["flag"] = sys.complex.is_flag();
            out["pure"] = sys.complex.is_pure();
            out["pseudomanifold"] = sys.complex.is_pseudomanifold();
            std::mt19937_64 g(seed);
            std::vector<std::pair<int, double>> fixed;
            for (int k = 0; k <= sys.complex.dim(); ++k) fixed.push_back({k, rng_uniform(g, 0.25, 0.75)});
            auto w = sample_solution(sys, fixed, seed);
            out["witness_residual"] = w.residual_norm;
            out["witness_converged"] = w.converged;
        } else if (trop_amp->parsed()) {
            auto X = load_or_random_planar(xfile, n, seed, true);
            out["n"] = X.n;
            out["laplace"] = to_string(laplace_amplitude(X));
            out["feynman"] = to_string(feynman_phi3(X));
            out["equal"] = laplace_amplitude(X) == feynman_phi3(X);
        } else if (form_pull->parsed()) {
            std::mt19937_64 g(seed);
            SubspaceSpec<Rational> c;
            c.n = n;
            for (auto [i, j] : subspace_index_pairs<Rational>(n)) c.c.push_back({{i, j}, Rational(rng_int(g, 1, 10))});
            std::vector<Rational> free_x;
            for (int k = 0; k < n - 3; ++k) free_x.push_back(Rational(rng_int(g, 1, 12)));
            auto X = planar_on_subspace(c, free_x);
            auto pb = pullback_coefficient(n, c, X);
            auto fe = feynman_phi3(X);
            out["n"] = n;
            out["pullback"] = to_string(pb);
            out["feynman"] = to_string(fe);
            out["match_up_to_sign"] = (pb == fe || pb == -fe);
        } else if (smap_check->parsed()) {
            SubspaceSpec<double> c;
            c.n = n;
            for (auto [i, j] : subspace_index_pairs<double>(n)) c.c.push_back({{i, j}, 1.0});
            auto rep = associahedron_check(n, c, samples, seed);
            out["n"] = n;
            out["samples"] = rep.samples;
            out["positive"] = rep.positive;
            out["min_X"] = rep.min_x;
            out["pass"] = rep.all_positive();
        } else if (str_eval->parsed()) {
            auto X = load_or_random_planar("", n, seed, true);
            auto m = s_from_x(X);
            auto q = stringy_integral(m0n_integrand(m, alpha));
            out["n"] = n;
            out["alpha"] = alpha;
            out["value"] = q.value;
            out["error_estimate"] = q.error;
            out["feynman"] = to_double(feynman_phi3(X));
        } else if (str_ft->parsed()) {
            auto X = load_or_random_planar("", n, seed, true);
            auto m = s_from_x(X);
            auto ft = ft_limit([&](double a) { return stringy_integral(m0n_integrand(m, a)).value; });
            out["n"] = n;
            out["ft_limit"] = ft.value;
            out["raw"] = ft.raw;
            out["feynman"] = to_double(feynman_phi3(X));
        } else if (sect_census->parsed()) {
            auto census = sector_census(n, trials, seed);
            out["n"] = n;
            out["trials"] = trials;
            out["expected"] = census.expected;
            out["per_trial"] = census.per_trial;
            out["all_match"] = census.all_match;
            if (!census.all_match) {
                std::cout << out.dump(2) << std::endl;
                return 1;
            }
        } else if (mhv_check->parsed()) {
            auto p = random_spinors(n, seed);
            auto m = s_from_spinors(p);
            double cons = 0;
            for (int i = 1; i <= n; ++i) {
                Complex row(0, 0);
                for (int j = 1; j <= n; ++j) row += m.s(i, j);
                cons = std::max(cons, std::abs(row));
            }
            out["n"] = n;
            out["conservation_residual"] = cons;
            if (n == 5) {
                Complex l5 = mhv_partial(p, {1, 2, 5, 3, 4}, 1, 2);
                Complex r5 = mhv_partial(p, {1, 2, 4, 3, 5}, 1, 2) + mhv_partial(p, {1, 4, 2, 3, 5}, 1, 2) +
                             mhv_partial(p, {1, 4, 3, 2, 5}, 1, 2);
                out["five_point_identity_residual"] = std::abs(l5 - r5) / std::abs(l5);
            }
        } else if (acc->parsed()) {
            auto results = accept::run_all();
            bool all = true;
            json list = json::array();
            for (const auto& res : results) {
                all = all && res.pass;
                std::cout << (res.pass ? "PASS" : "FAIL") << " criterion " << res.id << ": " << res.name << " ["
                          << res.detail << "] (" << res.seconds << " s)" << std::endl;
                list.push_back({{"id", res.id}, {"name", res.name}, {"pass", res.pass}, {"detail", res.detail}});
            }
            if (as_json) {
                json summary;
                summary["criteria"] = list;
                summary["all_pass"] = all;
                std::cout << summary.dump(2) << std::endl;
            }
            return all ? 0 : 1;
        }
        std::cout << out.dump(2) << std::endl;
        return 0;
    } catch (const std::exception& e) {
        std::cout << fail_json(e.what()).dump(2) << std::endl;
        return 1;
    }
}
