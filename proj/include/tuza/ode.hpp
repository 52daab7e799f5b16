#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace tuza {

/// The three scalar autonomous systems, each started from x(0) = 0.
///   Y: y' = 6 exp(-y^2) - 4    unmatched degree of the packing process, scaled by n^{1/2}
///   A: a' = exp(-4 a^2)        accepted edges of the triangle-free process, scaled by n^{3/2}
///   Z: z' = 2 exp(-z^2) - 4z^2 unmatched degree of the older K_{1,1,s} packing variant
enum class System { Y, A, Z };

std::string_view system_name(System which);

double rhs(System which, double x);

/// sqrt(log(3/2)), the positive root of 6 exp(-x^2) - 4.
double zeta();

/// Fixed-step RK4 solution on a uniform grid with cubic Hermite dense output
/// (the node derivatives are the exact right-hand sides).
class OdeSolution {
public:
    OdeSolution(System which, double step, std::vector<double> values);

    System which() const noexcept { return which_; }
    double step() const noexcept { return step_; }
    double t_end() const noexcept { return step_ * static_cast<double>(values_.size() - 1); }
    std::size_t nodes() const noexcept { return values_.size(); }
    double time_at(std::size_t i) const noexcept { return step_ * static_cast<double>(i); }
    double value_at(std::size_t i) const { return values_.at(i); }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Interpolated value; throws std::out_of_range outside [0, t_end].
    double operator()(double t) const;
    /// Derivative of the interpolant.
    double derivative(double t) const;

    /// Rows "t,value,derivative" at every `stride`-th node, 12 significant digits.
    void write_csv(std::ostream& out, std::size_t stride = 1) const;

private:
    std::size_t segment(double t) const;

    System which_;
    double step_;
    std::vector<double> values_;
};

/// Integrates `which` on [0, t_end] with a step no larger than h (the grid is
/// uniform, so the step is t_end / ceil(t_end / h)). Throws
/// std::invalid_argument for nonpositive t_end or h.
OdeSolution integrate(System which, double t_end, double h = 1e-4);

/// Forward Euler on the same problem; a deliberately independent check.
double euler_value(System which, double t_end, double h);

/// Deterministic counterparts of the tracked counts at one value of y.
///   q_{b,c} = e^{-2y^2} y^{2b+2c} / (b! c!)
///   r_c     = e^{-y^2} y^{2c} / c!
///   s_c     = e^{-y^2} y^{2c+1} / c!
///   alpha   = 2 s_0,  kappa = 2 (1 - e^{-y^2}) / y  (0 at y = 0)
/// Negative indices evaluate to 0.
class ClosedForms {
public:
    /// Throws std::domain_error for y outside [0, 1].
    ClosedForms(double y, std::size_t cap = 40);

    double y() const noexcept { return y_; }
    std::size_t cap() const noexcept { return r_.size() - 1; }

    double q(long b, long c) const;
    double r(long c) const;
    double s(long c) const;
    double alpha() const noexcept { return alpha_; }
    double kappa() const noexcept { return kappa_; }

private:
    double y_;
    std::vector<double> r_;
    double alpha_;
    double kappa_;
};

ClosedForms closed_forms_at(double y, std::size_t cap = 40);

/// kappa(y) by its series 2 e^{-y^2} sum_{c<=terms} y^{2c+1}/(c+1)!.
double kappa_series(double y, std::size_t terms);

struct MasterResidual {
    double q = 0.0;
    double r = 0.0;
    double s = 0.0;
    bool one_sided = false;  // a one-sided difference was used at a grid boundary
};

/// |d/dt closed form - right-hand side of its master equation| for q_{b,c},
/// r_c (index c) and s_c (index c) along y(t), differentiating by finite
/// differences with step 1e-5. Requires a System::Y solution.
MasterResidual master_equation_residual(const OdeSolution& y, double t, std::size_t b, std::size_t c);

/// exp((1000 log n / log log n) t) n^{-1/5}. Exposed as a diagnostic; it is
/// larger than 1 almost immediately at reachable n.
double error_band(double n, double t);

}  // namespace tuza
