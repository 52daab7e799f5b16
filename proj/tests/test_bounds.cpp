#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <stdexcept>

#include "tuza/bounds.hpp"

using namespace tuza;

TEST_CASE("bound functions at reference points") {
    const Solutions sol = solve_all(3.0);
    CHECK(l_nu_star(0.0, sol.y) == 0.0);
    CHECK(l_nu_star(1.28, sol.y) >= 0.3205);
    CHECK(l_nu_star(1.28, sol.y) == doctest::Approx(0.320752).epsilon(1e-5));
    CHECK(l_nu_old(0.0, sol.z) == 0.0);
    CHECK_THROWS_AS(l_nu_star(3.5, sol.y), std::out_of_range);

    // Small k: k - a(k) = 4k^3/3 + O(k^5) is the active branch.
    const TauBound small = u_tau(0.1, sol.a);
    CHECK(small.branch == TauBranch::TriangleFree);
    CHECK(small.value == doctest::Approx(4e-3 / 3.0).epsilon(0.05));
    const TauBound big = u_tau(3.0, sol.a);
    CHECK(big.branch == TauBranch::MaxCut);
    CHECK(big.value == doctest::Approx(1.5));
}

TEST_CASE("old bound never beats the new one on [0.2, 3]") {
    const Solutions sol = solve_all(3.0);
    const BoundsTable table = bounds_table(sol, 0.2, 3.0, 1e-2);
    CHECK(table.rows.size() == 281);
    for (const auto& r : table.rows) {
        CHECK(r.l_nu_old <= r.l_nu_star);
        CHECK(r.u_tau <= r.k / 2.0 + 1e-15);
        CHECK(r.ratio == doctest::Approx(std::min(r.g, r.h)));
    }
    CHECK_THROWS_AS(bounds_table(sol, 1.0, 0.5, 0.1), std::invalid_argument);
}

TEST_CASE("Simpson integral converges") {
    const Solutions sol = solve_all(3.0);
    const double fine = l_nu_old(2.0, sol.z);
    CHECK(std::abs(l_nu_old(2.0, sol.z, 200) - fine) < 1e-9);
}

TEST_CASE("ratio verification report") {
    const AppendixReport rep = appendix_report();
    CHECK(rep.all_pass());
    CHECK(rep.g_at_128 <= 1.9969);
    CHECK(rep.h_at_129 <= 1.987);
    CHECK(rep.max_min_gh < 2.0);
    CHECK(rep.argmax_min_gh == doctest::Approx(1.294).epsilon(1e-3));
    CHECK(rep.table.rows.size() == 2801);
    CHECK_THROWS_AS(appendix_report(2e-3), std::invalid_argument);

    const auto j = nlohmann::json::parse(appendix_json(rep));
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].size() == rep.checks.size());
    CHECK(appendix_text(rep).find("all checks pass") != std::string::npos);
    std::ostringstream csv;
    write_bounds_csv(csv, rep.table);
    CHECK(csv.str().rfind("k,y,a,z,", 0) == 0);
}
