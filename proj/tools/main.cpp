// Command-line front-end: root data, kernel tables, transform values, joint
// density grids, sojourn marginals, the lattice oracle, and the validation
// ledger/ladder, emitted as CSV or JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pseudoproc/heat_kernel.hpp"
#include "pseudoproc/lattice_oracle.hpp"
#include "pseudoproc/root_system.hpp"
#include "pseudoproc/special_functions.hpp"
#include "pseudoproc/transforms.hpp"
#include "pseudoproc/validation.hpp"

namespace {

using nlohmann::json;
using namespace pseudoproc;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json cplx_json(const std::complex<double>& z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

PseudoParams make_params(int order, std::optional<int> kappa) {
    if (order % 2 == 0) return PseudoParams::make(order);
    if (!kappa) throw std::invalid_argument("odd order requires --kappa (+1 or -1)");
    return PseudoParams::make(order, kappa);
}

void formal_banner(const PseudoParams& p) {
    if (p.formal_odd)
        std::cerr << "warning: order " << p.order
                  << " is odd; downstream distributional results are computed "
                     "formally and are not rigorously justified\n";
}

json effective_config(const PseudoParams& p) {
    return json{{"order", p.order}, {"kappa", p.kappa}, {"formal_odd", p.formal_odd}};
}

int cmd_roots(int order, std::optional<int> kappa, const std::string& out) {
    const PseudoParams params = make_params(order, kappa);
    formal_banner(params);
    RootSystem rs(params);
    json j;
    j["config"] = effective_config(params);
    for (const auto& th : rs.roots()) j["roots"].push_back(cplx_json(th));
    j["plus_indices"] = rs.plus_indices();
    j["minus_indices"] = rs.minus_indices();
    for (int a = 0; a < rs.n_plus(); ++a) j["plus_weights"].push_back(cplx_json(rs.plus_weight(a)));
    for (int a = 0; a < rs.n_minus(); ++a)
        j["minus_weights"].push_back(cplx_json(rs.minus_weight(a)));
    for (int m = -order; m <= order; ++m) {
        j["plus_power_sums"][std::to_string(m)] = cplx_json(rs.plus_power_sum(m));
        j["minus_power_sums"][std::to_string(m)] = cplx_json(rs.minus_power_sum(m));
    }
    for (int l = 0; l <= rs.n_minus(); ++l)
        j["minus_elementary_symmetric"].push_back(cplx_json(rs.minus_elementary_symmetric(l)));
    emit(j.dump(2), out);
    return 0;
}

int cmd_kernel(int order, std::optional<int> kappa, double t, double grid_h, double grid_l,
               const std::string& format, const std::string& out) {
    const PseudoParams params = make_params(order, kappa);
    formal_banner(params);
    HeatKernel kernel(params);
    std::string csv = "x,p\n";
    json rows = json::array();
    for (double x = -grid_l; x <= grid_l + 1e-12; x += grid_h) {
        const double v = kernel.value(t, x);
        csv += fmt(x) + "," + fmt(v) + "\n";
        rows.push_back({{"x", x}, {"p", v}});
    }
    if (format == "csv") {
        emit(csv, out);
    } else {
        json j{{"config", effective_config(params)}, {"t", t}, {"values", rows}};
        emit(j.dump(2), out);
    }
    return 0;
}

int cmd_transform(int order, std::optional<int> kappa, double lambda, double mu, double nu,
                  std::optional<double> s, std::optional<double> x, const std::string& out) {
    const PseudoParams params = make_params(order, kappa);
    formal_banner(params);
    RootSystem rs(params);
    json j;
    j["config"] = effective_config(params);
    j["lambda"] = lambda;
    j["mu"] = mu;
    j["nu"] = nu;
    j["triple_transform"] = cplx_json(transforms::triple_transform(rs, lambda, mu, nu));
    const auto f = transforms::spitzer_factors(rs, lambda, mu, nu);
    j["factor_plus"] = cplx_json(f.plus);
    j["factor_minus"] = cplx_json(f.minus);
    if (x) {
        if (nu > 0.0) j["level2"] = transforms::level2_density(rs, lambda, nu, *x);
        if (s) {
            j["level3"] = transforms::level3_density(rs, lambda, *s, *x);
            j["level3_formal"] = params.formal_odd;
        }
    }
    emit(j.dump(2), out);
    return 0;
}

int cmd_density(int order, std::optional<int> kappa, double t, double grid_h, double grid_l,
                int s_count, const std::string& format, const std::string& out) {
    const PseudoParams params = make_params(order, kappa);
    formal_banner(params);
    RootSystem rs(params);
    // default sojourn nodes exclude the clipped boundary layers
    std::string csv = "s,x,value,flags\n";
    json rows = json::array();
    for (int i = 0; i < s_count; ++i) {
        const double frac = 0.01 + (0.98 * (i + 0.5)) / s_count;
        const double s = frac * t;
        const bool clipped = frac < 0.01 || frac > 0.99;
        for (double x = -grid_l; x <= grid_l + 1e-12; x += grid_h) {
            const double v = transforms::level4_density(rs, t, s, x);
            const std::string flags = clipped ? "clipped" : "";
            csv += fmt(s) + "," + fmt(x) + "," + fmt(v) + "," + flags + "\n";
            rows.push_back({{"s", s}, {"x", x}, {"value", v}, {"flags", flags}});
        }
    }
    if (format == "csv") {
        emit(csv, out);
    } else {
        json j{{"config", effective_config(params)},
               {"t", t},
               {"level", "L4"},
               {"formal_odd", params.formal_odd},
               {"grid", {{"h", grid_h}, {"half_width", grid_l}, {"s_count", s_count}}},
               {"values", rows}};
        emit(j.dump(2), out);
    }
    return 0;
}

int cmd_marginal(int order, std::optional<int> kappa, double t, std::optional<double> s,
                 int s_count, const std::string& format, const std::string& out) {
    const PseudoParams params = make_params(order, kappa);
    formal_banner(params);
    RootSystem rs(params);
    std::string csv = "s,density,neg,pos\n";
    json rows = json::array();
    auto add_row = [&](double sv) {
        const double d = transforms::sojourn_density(rs, t, sv);
        const auto [n, ppos] = transforms::sojourn_density_signed(rs, t, sv);
        csv += fmt(sv) + "," + fmt(d) + "," + fmt(n) + "," + fmt(ppos) + "\n";
        rows.push_back({{"s", sv}, {"density", d}, {"neg", n}, {"pos", ppos}});
    };
    if (s) {
        add_row(*s);
    } else {
        for (int i = 0; i < s_count; ++i) add_row(t * (i + 0.5) / s_count);
    }
    if (format == "csv") {
        emit(csv, out);
    } else {
        json j{{"config", effective_config(params)}, {"t", t}, {"values", rows}};
        emit(j.dump(2), out);
    }
    return 0;
}

int cmd_oracle(int order, std::optional<int> kappa, int level, double lambda, double mu,
               double nu, int kmax, double grid_h, double grid_l, const std::string& out) {
    const PseudoParams params = make_params(order, kappa);
    RootSystem rs(params);
    oracle::OracleConfig cfg;
    cfg.kmax = kmax;
    cfg.h_scale = grid_h;
    cfg.width_scale = grid_l;
    const auto run = oracle::run_lattice(rs, level, lambda, mu, nu, cfg);
    json j;
    j["config"] = effective_config(params);
    j["level"] = level;
    j["lambda"] = lambda;
    j["mu"] = mu;
    j["nu"] = nu;
    j["steps"] = run.steps;
    j["grid_cells"] = run.grid;
    j["E_n"] = cplx_json(run.e_series);
    j["E_n_product_assembly"] = cplx_json(run.e_product);
    j["E_closed"] = cplx_json(run.e_closed);
    j["rel_err"] = run.rel_err_series;
    j["assembly_gap"] = run.assembly_gap;
    j["leakage"] = run.leakage;
    j["budget"] = run.abs_mass_peak;
    emit(j.dump(2), out);
    return 0;
}

int cmd_validate(std::vector<int> orders, std::optional<int> kappa, const std::string& check,
                 bool with_ladder, double t, const std::string& format,
                 const std::string& out) {
    std::vector<PseudoParams> list;
    if (orders.empty()) orders = {2, 3, 4, 6};
    for (int n : orders) {
        if (n % 2 == 0) {
            list.push_back(PseudoParams::make(n));
        } else if (kappa) {
            list.push_back(PseudoParams::make(n, kappa));
        } else {
            list.push_back(PseudoParams::make(n, +1));
            list.push_back(PseudoParams::make(n, -1));
        }
    }
    for (const auto& p : list) formal_banner(p);

    ValidationReport rep = validation::run_ledger(list);
    if (with_ladder) {
        for (const auto& p : list) {
            RootSystem rs(p);
            rep.merge(validation::run_ladder(rs, t));
        }
        rep.sort_by_name();
    }
    if (!check.empty()) rep = rep.filtered(check);

    if (format == "csv") {
        std::string csv = "name,anchor,expected,computed,abs_err,rel_err,tolerance,pass,formal\n";
        for (const auto& e : rep.entries())
            csv += e.name + "," + e.anchor + "," + fmt(e.expected) + "," + fmt(e.computed) +
                   "," + fmt(e.abs_err) + "," + fmt(e.rel_err) + "," + fmt(e.tolerance) + "," +
                   (e.pass ? "1" : "0") + "," + (e.formal_odd ? "1" : "0") + "\n";
        emit(csv, out);
    } else {
        emit(rep.to_json(), out);
    }
    std::cerr << "checks: " << rep.size() << "  failed: " << rep.failures()
              << "  failed(non-formal): " << rep.hard_failures() << "\n";
    return rep.hard_failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-N heat-type pseudo-process: sojourn/position distribution stack"};
    app.require_subcommand(1);

    int order = 2;
    std::optional<int> kappa;
    double t = 1.0, lambda = 1.0, mu = 0.0, nu = 1.0;
    std::optional<double> s_opt, x_opt;
    double grid_h = 0.1, grid_l = 5.0;
    int level = 4, kmax = 64, s_count = 9;
    std::string format = "csv", out_path, check;
    bool with_ladder = false;
    std::vector<int> order_list;

    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--order", order, "equation order N >= 2");
        sub->add_option("--kappa", kappa, "sign for odd orders (+1 or -1)");
        sub->add_option("--out", out_path, "output path (default stdout)");
        if (with_format)
            sub->add_option("--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* roots = app.add_subcommand("roots", "root system and derived coefficient tables");
    add_common(roots, false);

    auto* kern = app.add_subcommand("kernel", "elementary solution p(t;x) on a grid");
    add_common(kern);
    kern->add_option("--t", t, "time");
    kern->add_option("--grid-h", grid_h, "grid step");
    kern->add_option("--grid-L", grid_l, "grid half width");

    auto* tr = app.add_subcommand("transform", "transform-ladder values at a point");
    add_common(tr, false);
    tr->add_option("--lambda", lambda, "Laplace dual of t");
    tr->add_option("--mu", mu, "Fourier dual of x");
    tr->add_option("--nu", nu, "Laplace dual of the sojourn time");
    tr->add_option("--s", s_opt, "sojourn value (enables level 3)");
    tr->add_option("--x", x_opt, "position (enables levels 2 and 3)");

    auto* dens = app.add_subcommand("density", "joint density grid of (sojourn, position)");
    add_common(dens);
    dens->add_option("--t", t, "time horizon");
    dens->add_option("--grid-h", grid_h, "x step");
    dens->add_option("--grid-L", grid_l, "x half width");
    dens->add_option("--s-count", s_count, "number of sojourn nodes");

    auto* marg = app.add_subcommand("marginal", "sojourn-time marginal (arcsine family)");
    add_common(marg);
    marg->add_option("--t", t, "time horizon");
    marg->add_option("--s", s_opt, "single sojourn value");
    marg->add_option("--s-count", s_count, "grid size when --s is absent");

    auto* orc = app.add_subcommand("oracle", "dyadic lattice evolution oracle");
    add_common(orc, false);
    orc->add_option("--level", level, "dyadic refinement n");
    orc->add_option("--lambda", lambda, "Laplace dual of t");
    orc->add_option("--mu", mu, "Fourier dual of x");
    orc->add_option("--nu", nu, "Laplace dual of the sojourn time");
    orc->add_option("--kmax", kmax, "step count");
    double oracle_h = 0.02, oracle_w = 8.0;
    orc->add_option("--grid-h", oracle_h, "h scale (times t_max^{1/N})");
    orc->add_option("--grid-L", oracle_w, "half-width scale (times t_max^{1/N})");

    auto* val = app.add_subcommand("validate", "identity ledger and consistency ladder");
    val->add_option("--order", order_list, "orders to validate (default 2 3 4 6)");
    val->add_option("--kappa", kappa, "restrict odd orders to one sign");
    val->add_option("--check", check, "only entries whose name contains this substring");
    val->add_flag("--ladder", with_ladder, "also run the consistency ladder");
    val->add_option("--t", t, "ladder time horizon");
    val->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    val->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (roots->parsed()) return cmd_roots(order, kappa, out_path);
        if (kern->parsed())
            return cmd_kernel(order, kappa, t, grid_h, grid_l, format, out_path);
        if (tr->parsed())
            return cmd_transform(order, kappa, lambda, mu, nu, s_opt, x_opt, out_path);
        if (dens->parsed())
            return cmd_density(order, kappa, t, grid_h, grid_l, s_count, format, out_path);
        if (marg->parsed())
            return cmd_marginal(order, kappa, t, s_opt, s_count, format, out_path);
        if (orc->parsed()) {
            oracle::OracleConfig cfg;
            return cmd_oracle(order, kappa, level, lambda, mu, nu, kmax, oracle_h, oracle_w,
                              out_path);
        }
        if (val->parsed())
            return cmd_validate(order_list, kappa, check, with_ladder, t, format, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
