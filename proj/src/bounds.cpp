#include "tuza/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tuza {
namespace {

void check_k(double k, const OdeSolution& sol) {
    if (!(k >= 0.0) || k > sol.t_end() * (1.0 + 1e-12)) {
        throw std::out_of_range("k = " + std::to_string(k) + " outside the solved range [0, " +
                                std::to_string(sol.t_end()) + "]");
    }
}

double z_integrand(double z) { return z * z + std::expm1(-z * z); }

}  // namespace

double l_nu_star(double k, const OdeSolution& y) {
    check_k(k, y);
    return (k - y(k) / 2.0) / 3.0;
}

double l_nu_old(double k, const OdeSolution& z, std::size_t intervals) {
    check_k(k, z);
    if (k == 0.0) return 0.0;
    if (intervals == 0) intervals = static_cast<std::size_t>(std::ceil(k / z.step() - 1e-9));
    intervals = std::max<std::size_t>(2, intervals + (intervals % 2));
    const double h = k / static_cast<double>(intervals);
    double sum = z_integrand(z(0.0)) + z_integrand(z(k));
    for (std::size_t i = 1; i < intervals; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * z_integrand(z(h * static_cast<double>(i)));
    }
    const double integral = sum * h / 3.0;
    return (k - z(k) / 2.0 - 2.0 * integral) / 3.0;
}

TauBound u_tau(double k, const OdeSolution& a) {
    check_k(k, a);
    const double tfp = k - a(k);
    const double cut = k / 2.0;
    if (tfp <= cut) return {tfp, TauBranch::TriangleFree};
    return {cut, TauBranch::MaxCut};
}

Solutions solve_all(double t_end, double h) {
    return {integrate(System::Y, t_end, h), integrate(System::A, t_end, h), integrate(System::Z, t_end, h)};
}

double g_closed(double k, const OdeSolution& y) {
    check_k(k, y);
    return 3.0 * k / (2.0 * k - y(k));
}

BoundsTable bounds_table(const Solutions& sol, double k_min, double k_max, double step) {
    if (!(step > 0.0) || k_max < k_min) throw std::invalid_argument("bounds_table: bad grid");
    BoundsTable table;
    const auto count = static_cast<std::size_t>(std::floor((k_max - k_min) / step + 1e-9));
    table.rows.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        BoundsRow row;
        row.k = k_min + step * static_cast<double>(i);
        row.y = sol.y(row.k);
        row.a = sol.a(row.k);
        row.z = sol.z(row.k);
        row.l_nu_star = l_nu_star(row.k, sol.y);
        row.l_nu_old = l_nu_old(row.k, sol.z);
        const TauBound tau = u_tau(row.k, sol.a);
        row.u_tau = tau.value;
        row.branch = tau.branch;
        if (row.l_nu_star > 0.0) {
            row.g = (row.k / 2.0) / row.l_nu_star;
            row.h = (row.k - row.a) / row.l_nu_star;
            row.ratio = row.u_tau / row.l_nu_star;
        }
        row.dg_numerator = 18.0 * row.k * std::exp(-row.y * row.y) - 3.0 * row.y - 12.0 * row.k;
        table.rows.push_back(row);
    }
    return table;
}

bool AppendixReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

AppendixReport appendix_report(double grid_step, double h) {
    if (!(grid_step > 0.0) || grid_step > 1e-3 + 1e-15) {
        throw std::invalid_argument("ratio check grid step must be in (0, 1e-3]");
    }
    constexpr double margin = 1e-9;
    const Solutions sol = solve_all(3.0, h);
    AppendixReport rep;
    rep.grid_step = grid_step;
    rep.table = bounds_table(sol, 0.2, 3.0, grid_step);

    rep.l_nu_star_128 = l_nu_star(1.28, sol.y);
    rep.g_at_128 = (1.28 / 2.0) / rep.l_nu_star_128;
    rep.h_at_129 = (1.29 - sol.a(1.29)) / l_nu_star(1.29, sol.y);

    rep.min_h_increment = std::numeric_limits<double>::infinity();
    rep.max_g_increment = -std::numeric_limits<double>::infinity();
    rep.max_min_gh = -std::numeric_limits<double>::infinity();
    const auto& rows = rep.table.rows;
    double worst_g_mismatch = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BoundsRow& r = rows[i];
        if (r.ratio > rep.max_min_gh) {
            rep.max_min_gh = r.ratio;
            rep.argmax_min_gh = r.k;
        }
        worst_g_mismatch = std::max(worst_g_mismatch, std::abs(r.g - g_closed(r.k, sol.y)) / r.g);
        if (i == 0) continue;
        const BoundsRow& prev = rows[i - 1];
        if (r.k <= 1.29 + 1e-12) rep.min_h_increment = std::min(rep.min_h_increment, r.h - prev.h);
        if (prev.k >= 1.28 - 1e-12) rep.max_g_increment = std::max(rep.max_g_increment, r.g - prev.g);
    }

    // The numerator of dg/dk over [0, 3] on the same grid spacing.
    rep.max_dg_numerator = -std::numeric_limits<double>::infinity();
    const auto num_count = static_cast<std::size_t>(std::floor(3.0 / grid_step + 1e-9));
    for (std::size_t i = 0; i <= num_count; ++i) {
        const double k = grid_step * static_cast<double>(i);
        const double y = sol.y(k);
        rep.max_dg_numerator = std::max(rep.max_dg_numerator, 18.0 * k * std::exp(-y * y) - 3.0 * y - 12.0 * k);
    }
    const double y0 = sol.y(0.0);
    const double numerator_at_zero = 18.0 * 0.0 * std::exp(-y0 * y0) - 3.0 * y0 - 12.0 * 0.0;

    double z_max = 0.0;
    for (double v : sol.z.values()) z_max = std::max(z_max, v);

    auto add = [&rep](std::string name, bool pass, double value, std::string detail) {
        rep.checks.push_back({std::move(name), pass, value, std::move(detail)});
    };
    add("l_nu_star_1.28_ge_0.3205", rep.l_nu_star_128 >= 0.3205, rep.l_nu_star_128, "L*(1.28) >= 0.3205");
    add("g_1.28_le_1.9969", rep.g_at_128 <= 1.9969, rep.g_at_128, "g(1.28) <= 1.9969");
    add("h_1.29_le_1.987", rep.h_at_129 <= 1.987, rep.h_at_129, "h(1.29) <= 1.987");
    add("h_increasing_0.2_1.29", rep.min_h_increment > margin, rep.min_h_increment,
        "smallest successive increment of h on [0.2, 1.29]");
    add("g_decreasing_1.28_3", rep.max_g_increment < -margin, rep.max_g_increment,
        "largest successive increment of g on [1.28, 3]");
    add("g_h_below_2", rep.g_at_128 < 2.0 && rep.h_at_129 < 2.0, std::max(rep.g_at_128, rep.h_at_129),
        "max(g(1.28), h(1.29)) < 2");
    add("ratio_below_2_0.2_3", rep.max_min_gh < 2.0, rep.max_min_gh,
        "max over [0.2, 3] of min(g, h) = U_tau / L*");
    add("dg_numerator_nonpositive", rep.max_dg_numerator <= 1e-12, rep.max_dg_numerator,
        "max of 18k e^{-y^2} - 3y - 12k on [0, 3]");
    add("dg_numerator_zero_at_0", numerator_at_zero == 0.0, numerator_at_zero, "numerator of dg/dk at k = 0");
    add("g_two_routes_agree", worst_g_mismatch <= 1e-12, worst_g_mismatch,
        "relative gap between (k/2)/L* and 3k/(2k - y)");
    add("z_below_0.5932", z_max <= 0.5932, z_max, "max of z on [0, 3]");
    return rep;
}

void write_bounds_csv(std::ostream& out, const BoundsTable& table) {
    const auto old_precision = out.precision(12);
    out << "k,y,a,z,l_nu_star,l_nu_old,u_tau,branch,g,h,ratio,dg_numerator\n";
    for (const auto& r : table.rows) {
        out << r.k << ',' << r.y << ',' << r.a << ',' << r.z << ',' << r.l_nu_star << ',' << r.l_nu_old << ','
            << r.u_tau << ',' << (r.branch == TauBranch::TriangleFree ? "tfp" : "maxcut") << ',' << r.g << ','
            << r.h << ',' << r.ratio << ',' << r.dg_numerator << '\n';
    }
    out.precision(old_precision);
}

std::string appendix_text(const AppendixReport& report) {
    std::ostringstream out;
    out << std::setprecision(12);
    out << "ratio check on [0.2, 3], grid step " << report.grid_step << "\n";
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << "  (" << c.detail << ")\n";
    }
    out << "argmax of min(g, h): k = " << report.argmax_min_gh << "\n";
    out << (report.all_pass() ? "all checks pass\n" : "SOME CHECKS FAILED\n");
    return out.str();
}

std::string appendix_json(const AppendixReport& report) {
    nlohmann::ordered_json j;
    j["grid_step"] = report.grid_step;
    j["g_1.28"] = report.g_at_128;
    j["h_1.29"] = report.h_at_129;
    j["l_nu_star_1.28"] = report.l_nu_star_128;
    j["max_min_gh"] = report.max_min_gh;
    j["argmax_min_gh"] = report.argmax_min_gh;
    j["all_pass"] = report.all_pass();
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"detail", c.detail}});
    }
    return j.dump(2);
}

}  // namespace tuza
