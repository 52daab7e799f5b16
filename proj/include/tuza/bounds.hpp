#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tuza/ode.hpp"

namespace tuza {

/// Lower bound on nu(G(n, k n^{3/2})) / n^{3/2} from the packing process: (k - y(k)/2) / 3.
double l_nu_star(double k, const OdeSolution& y);

/// The older K_{1,1,s} bound, (k - z(k)/2 - 2 int_0^k [z^2 - 1 + e^{-z^2}] dt) / 3.
/// The integral is composite Simpson with `intervals` (rounded up to even)
/// subintervals; 0 means one per solution grid cell.
double l_nu_old(double k, const OdeSolution& z, std::size_t intervals = 0);

enum class TauBranch { TriangleFree, MaxCut };

struct TauBound {
    double value = 0.0;
    TauBranch branch = TauBranch::TriangleFree;
};

/// Upper bound on tau per n^{3/2}: min(k - a(k), k/2).
TauBound u_tau(double k, const OdeSolution& a);

struct BoundsRow {
    double k = 0.0;
    double y = 0.0;
    double a = 0.0;
    double z = 0.0;
    double l_nu_star = 0.0;
    double l_nu_old = 0.0;
    double u_tau = 0.0;
    TauBranch branch = TauBranch::TriangleFree;
    double g = 0.0;             // (k/2) / L*
    double h = 0.0;             // (k - a) / L*
    double ratio = 0.0;         // U_tau / L* = min(g, h)
    double dg_numerator = 0.0;  // 18 k e^{-y^2} - 3y - 12k
};

struct BoundsTable {
    std::vector<BoundsRow> rows;
};

/// Solutions of all three systems on [0, t_end].
struct Solutions {
    OdeSolution y;
    OdeSolution a;
    OdeSolution z;
};

Solutions solve_all(double t_end, double h = 1e-4);

/// Rows at k = k_min, k_min + step, ..., through k_max (inclusive, up to rounding).
BoundsTable bounds_table(const Solutions& sol, double k_min, double k_max, double step);

/// g as 3k / (2k - y(k)), the closed rearrangement of (k/2)/L*.
double g_closed(double k, const OdeSolution& y);

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

struct AppendixReport {
    double grid_step = 0.0;
    double g_at_128 = 0.0;
    double h_at_129 = 0.0;
    double l_nu_star_128 = 0.0;
    double max_min_gh = 0.0;  // max over [0.2, 3] of the ratio
    double argmax_min_gh = 0.0;
    double min_h_increment = 0.0;  // on [0.2, 1.29]
    double max_g_increment = 0.0;  // on [1.28, 3]
    double max_dg_numerator = 0.0; // on [0, 3]
    std::vector<Check> checks;
    BoundsTable table;  // rows over [0.2, 3]

    bool all_pass() const;
};

/// Recomputes the ratio verification on a grid of the given step over
/// [0.2, 3]. Monotonicity is strict with a 1e-9 margin on successive
/// differences. Throws std::invalid_argument for a step above 1e-3.
AppendixReport appendix_report(double grid_step = 1e-3, double h = 1e-4);

void write_bounds_csv(std::ostream& out, const BoundsTable& table);
std::string appendix_text(const AppendixReport& report);
/// Machine-readable verdicts, one object per check.
std::string appendix_json(const AppendixReport& report);

}  // namespace tuza
