#include "tuza/ode.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tuza {

std::string_view system_name(System which) {
    switch (which) {
        case System::Y: return "y";
        case System::A: return "a";
        case System::Z: return "z";
    }
    return "?";
}

double rhs(System which, double x) {
    switch (which) {
        case System::Y: return 6.0 * std::exp(-x * x) - 4.0;
        case System::A: return std::exp(-4.0 * x * x);
        case System::Z: return 2.0 * std::exp(-x * x) - 4.0 * x * x;
    }
    return 0.0;
}

double zeta() { return std::sqrt(std::log(1.5)); }

OdeSolution::OdeSolution(System which, double step, std::vector<double> values)
    : which_(which), step_(step), values_(std::move(values)) {
    if (values_.size() < 2 || !(step_ > 0.0)) {
        throw std::invalid_argument("OdeSolution needs a positive step and at least two nodes");
    }
}

std::size_t OdeSolution::segment(double t) const {
    // Tolerate rounding at the right end.
    if (!(t >= 0.0) || t > t_end() * (1.0 + 1e-12) + 1e-15) {
        throw std::out_of_range("t = " + std::to_string(t) + " outside solution range [0, " +
                                std::to_string(t_end()) + "]");
    }
    const auto i = static_cast<std::size_t>(t / step_);
    return std::min(i, values_.size() - 2);
}

double OdeSolution::operator()(double t) const {
    const std::size_t i = segment(t);
    const double h = step_;
    const double s = (t - time_at(i)) / h;
    const double y0 = values_[i];
    const double y1 = values_[i + 1];
    const double d0 = rhs(which_, y0) * h;
    const double d1 = rhs(which_, y1) * h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
}

double OdeSolution::derivative(double t) const {
    const std::size_t i = segment(t);
    const double h = step_;
    const double s = (t - time_at(i)) / h;
    const double y0 = values_[i];
    const double y1 = values_[i + 1];
    const double d0 = rhs(which_, y0) * h;
    const double d1 = rhs(which_, y1) * h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * d0 + (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * d1) / h;
}

void OdeSolution::write_csv(std::ostream& out, std::size_t stride) const {
    stride = std::max<std::size_t>(stride, 1);
    out << "t," << system_name(which_) << ",derivative\n";
    const auto old_precision = out.precision(12);
    for (std::size_t i = 0; i < values_.size(); i += stride) {
        out << time_at(i) << ',' << values_[i] << ',' << rhs(which_, values_[i]) << '\n';
    }
    if ((values_.size() - 1) % stride != 0) {
        const std::size_t i = values_.size() - 1;
        out << time_at(i) << ',' << values_[i] << ',' << rhs(which_, values_[i]) << '\n';
    }
    out.precision(old_precision);
}

OdeSolution integrate(System which, double t_end, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("integration step must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("integration end time must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    const double step = t_end / static_cast<double>(steps);
    std::vector<double> values(steps + 1);
    double x = 0.0;
    values[0] = x;
    for (std::size_t i = 0; i < steps; ++i) {
        const double k1 = rhs(which, x);
        const double k2 = rhs(which, x + 0.5 * step * k1);
        const double k3 = rhs(which, x + 0.5 * step * k2);
        const double k4 = rhs(which, x + step * k3);
        x += step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        values[i + 1] = x;
    }
    return OdeSolution(which, step, std::move(values));
}

double euler_value(System which, double t_end, double h) {
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    const double step = t_end / static_cast<double>(steps);
    double x = 0.0;
    for (std::size_t i = 0; i < steps; ++i) x += step * rhs(which, x);
    return x;
}

ClosedForms::ClosedForms(double y, std::size_t cap) : y_(y) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::domain_error("closed forms need 0 <= y <= 1, got " + std::to_string(y));
    }
    r_.resize(cap + 1);
    const double y2 = y * y;
    r_[0] = std::exp(-y2);
    for (std::size_t c = 1; c <= cap; ++c) r_[c] = r_[c - 1] * y2 / static_cast<double>(c);
    alpha_ = 2.0 * r_[0] * y;
    kappa_ = y == 0.0 ? 0.0 : 2.0 * (-std::expm1(-y2)) / y;
}

double ClosedForms::r(long c) const {
    if (c < 0) return 0.0;
    if (static_cast<std::size_t>(c) >= r_.size()) throw std::out_of_range("closed form index above cap");
    return r_[static_cast<std::size_t>(c)];
}

double ClosedForms::s(long c) const { return r(c) * y_; }

// e^{-2y^2} y^{2b+2c}/(b!c!) factors as r_b r_c.
double ClosedForms::q(long b, long c) const { return r(b) * r(c); }

ClosedForms closed_forms_at(double y, std::size_t cap) { return ClosedForms(y, cap); }

double kappa_series(double y, std::size_t terms) {
    double sum = 0.0;
    double term = y;  // y^{2c+1}/(c+1)! at c = 0
    for (std::size_t c = 0; c <= terms; ++c) {
        sum += term;
        term *= y * y / static_cast<double>(c + 2);
    }
    return 2.0 * std::exp(-y * y) * sum;
}

namespace {

struct Rates {
    double q, r, s;
};

Rates master_rhs(const ClosedForms& f, long b, long c) {
    const double al = f.alpha();
    const double ka = f.kappa();
    const double dq = 2 * f.q(b - 1, c) * al + 2 * f.q(b, c - 1) * al + 4.0 * (b + 1) * ka * f.q(b + 1, c) +
                      4.0 * (c + 1) * ka * f.q(b, c + 1) - 4 * f.q(b, c) * (al + b * ka + c * ka);
    const double dr = 2 * f.r(c - 1) * al + 4.0 * (c + 1) * ka * f.r(c + 1) - (2 * al + 4.0 * c * ka) * f.r(c);
    const double ds = 2 * f.s(c - 1) * al + 4.0 * (c + 1) * ka * f.s(c + 1) + 2 * f.q(c, 0) -
                      2 * (al + 2.0 * c * ka + ka) * f.s(c);
    return {dq, dr, ds};
}

Rates values_at(const OdeSolution& y, double t, long b, long c) {
    const ClosedForms f(y(t), static_cast<std::size_t>(std::max(b, c)) + 2);
    return {f.q(b, c), f.r(c), f.s(c)};
}

}  // namespace

MasterResidual master_equation_residual(const OdeSolution& y, double t, std::size_t b, std::size_t c) {
    if (y.which() != System::Y) throw std::invalid_argument("master equations need the y solution");
    constexpr double delta = 1e-5;
    const auto lb = static_cast<long>(b);
    const auto lc = static_cast<long>(c);
    Rates deriv{};
    MasterResidual out;
    if (t - delta >= 0.0 && t + delta <= y.t_end()) {
        const Rates hi = values_at(y, t + delta, lb, lc);
        const Rates lo = values_at(y, t - delta, lb, lc);
        deriv = {(hi.q - lo.q) / (2 * delta), (hi.r - lo.r) / (2 * delta), (hi.s - lo.s) / (2 * delta)};
    } else {
        // Second-order one-sided difference, pointing into the grid.
        const double d = t - delta < 0.0 ? delta : -delta;
        const Rates f0 = values_at(y, t, lb, lc);
        const Rates f1 = values_at(y, t + d, lb, lc);
        const Rates f2 = values_at(y, t + 2 * d, lb, lc);
        auto diff = [d](double a0, double a1, double a2) { return (-3 * a0 + 4 * a1 - a2) / (2 * d); };
        deriv = {diff(f0.q, f1.q, f2.q), diff(f0.r, f1.r, f2.r), diff(f0.s, f1.s, f2.s)};
        out.one_sided = true;
    }
    const Rates model = master_rhs(ClosedForms(y(t), std::max(b, c) + 2), lb, lc);
    out.q = std::abs(deriv.q - model.q);
    out.r = std::abs(deriv.r - model.r);
    out.s = std::abs(deriv.s - model.s);
    return out;
}

double error_band(double n, double t) {
    if (!(n >= 10.0)) throw std::invalid_argument("error_band needs n >= 10");
    if (!(t >= 0.0)) throw std::invalid_argument("error_band needs t >= 0");
    const double log_n = std::log(n);
    return std::exp(1000.0 * log_n / std::log(log_n) * t) * std::pow(n, -0.2);
}

}  // namespace tuza
