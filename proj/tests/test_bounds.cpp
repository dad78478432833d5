#include "subtrees/bounds.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subtrees/gcount.hpp"

using namespace subtrees;

namespace {

// Reference rows, independently certified elsewhere at far higher precision:
// K, lower, upper1, upper2, conj_upper, r_frac, multiplier (all to 8 dp).
struct RefRow {
    int K;
    double lower, upper1, upper2, conj_upper, r_frac, multiplier;
};
const std::vector<RefRow> kRefRows = {
    {1, 1.29045464, 2.00000000, 1.43208050, 2.00000000, 0.63212055, 2.00000000},
    {2, 1.36324560, 1.92362926, 1.43208050, 1.66745319, 0.49678527, 1.50000000},
    {3, 1.39061488, 1.86325819, 1.43208050, 1.55596710, 0.42210467, 1.30495588},
    {4, 1.40310215, 1.81740886, 1.43138632, 1.50231117, 0.37326296, 1.20085291},
    {5, 1.40946163, 1.78177319, 1.43028338, 1.47223973, 0.33816949, 1.13753267},
    {6, 1.41293442, 1.75332505, 1.42906778, 1.45396472, 0.31139897, 1.09628284},
    {7, 1.41492327, 1.73007752, 1.42789078, 1.44231043, 0.29011286, 1.06831339},
    {8, 1.41610182, 1.71070328, 1.42681559, 1.43464704, 0.27266454, 1.04887463},
    {9, 1.41681820, 1.69428865, 1.42586149, 1.42950426, 0.25802502, 1.03515096},
    {10, 1.41726225, 1.68018579, 1.42502733, 1.42600450, 0.24551402, 1.02536358},
    {11, 1.41754178, 1.66792305, 1.42430332, 1.42359935, 0.23466147, 1.01833777},
    {12, 1.41771993, 1.65714906, 1.42367665, 1.42193478, 0.22513081, 1.01327326},
};

// Reference values are printed to 8 dp, so they sit within one ulp of the
// truth; the upper2 column of the reference carries a little extra noise.
constexpr double kTol = 1.01e-8;
constexpr double kTolUpper2 = 3e-8;

bool contains_zero(const Enclosure& e) { return e.lo_d() <= 0.0 && e.hi_d() >= 0.0; }

}  // namespace

TEST_CASE("density examples") {
    // f_K(K) keeps only the leading term e^{-K}/K!
    for (int K : {1, 2, 5, 9}) {
        Enclosure f = f_closed(K, K);
        double expect = std::exp(-double(K));
        for (int j = 2; j <= K; ++j) expect /= j;
        CHECK(f.mid_d() == doctest::Approx(expect).epsilon(1e-13));
        CHECK(f.width_d() < 1e-60);
    }
    // f_1(1) = 1/e, f_2(1) = e^{-1} - e^{-2}
    CHECK(f_closed(1, 1).mid_d() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(f_closed(2, 1).mid_d() ==
          doctest::Approx(std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(f_closed(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(f_closed(5, 6), std::invalid_argument);
    CHECK_THROWS_AS(f_closed(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(h_fraction(0), std::invalid_argument);
}

TEST_CASE("closed form and recurrence enclose the same densities") {
    for (int K = 1; K <= 12; ++K) {
        for (int k = 1; k <= K; ++k) {
            Enclosure a = f_closed(K, k);
            Enclosure b = f_recurrence(K, k);
            CHECK(a.overlaps(b));
            CHECK(a.width_d() < 1e-50);
            CHECK(b.width_d() < 1e-50);
        }
    }
}

TEST_CASE("remainder fraction h(K)") {
    CHECK(h_fraction(1).mid_d() == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(h_fraction(2).mid_d() ==
          doctest::Approx(1 - std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-14));
    CHECK(std::abs(h_fraction(10).mid_d() - 0.24551402) < kTol);
    // the hybrid exact/log-domain paths must agree across the switchover
    for (int K : {64, 65, 70, 128}) {
        Enclosure h = h_fraction(K);
        CHECK(h.proper());
        CHECK(h.width_d() < 1e-40);
        CHECK(h.lo_d() > 0.0);
        CHECK(h.hi_d() < h_fraction(K - 1).lo_d());  // strictly decreasing in K
    }
}

TEST_CASE("class fractions conserve mass") {
    // sum_k k^k f_K(k) + h(K) = 1 exactly; the enclosure must witness it.
    for (int K = 1; K <= 12; ++K) {
        DensityTable d = density_table(K);
        Enclosure total = d.h - Enclosure::from_long(1);
        for (int k = 1; k <= K; ++k) {
            mpz_class kk;
            mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
            total += d.f[k].mul_mpz(kk);
        }
        CHECK(contains_zero(total));
        CHECK(total.width_d() < 1e-40);
    }
}

TEST_CASE("bounds reproduce the reference table") {
    GCountTable table = compute_tables(12);
    std::vector<BoundsRow> rows = bounds_rows(table, 12, 10000);
    REQUIRE(rows.size() == 12);
    for (size_t i = 0; i < rows.size(); ++i) {
        const BoundsRow& r = rows[i];
        const RefRow& ref = kRefRows[i];
        INFO("K = ", ref.K);
        CHECK(r.K == ref.K);
        CHECK(std::abs(r.lower.mid_d() - ref.lower) < kTol);
        CHECK(std::abs(r.upper1.mid_d() - ref.upper1) < kTol);
        CHECK(std::abs(r.upper2.mid_d() - ref.upper2) < kTolUpper2);
        CHECK(std::abs(r.conj_upper.mid_d() - ref.conj_upper) < kTol);
        CHECK(std::abs(r.r_frac.mid_d() - ref.r_frac) < kTol);
        CHECK(std::abs(r.multiplier.mid_d() - ref.multiplier) < kTol);
        // every enclosure is tight enough that the printed digits are exact
        CHECK(r.lower.width_d() < 1e-40);
        CHECK(r.upper2.width_d() < 1e-40);
    }

    SUBCASE("row orderings certified by the enclosures") {
        for (const BoundsRow& r : rows) {
            CHECK(r.lower.hi_d() <= r.upper2.lo_d());
            CHECK(r.upper2.hi_d() <= r.upper1.lo_d());
            CHECK(r.lower.hi_d() <= r.conj_upper.lo_d());
            // conj_upper(1) = upper1(1) = 2 exactly, so non-strict via endpoints
            CHECK(r.conj_upper.lo_d() <= r.upper1.hi_d());
        }
    }

    SUBCASE("column monotonicity") {
        for (size_t i = 0; i + 1 < rows.size(); ++i) {
            CHECK(rows[i].lower.hi_d() < rows[i + 1].lower.lo_d());
            CHECK(rows[i].upper1.lo_d() > rows[i + 1].upper1.hi_d());
            CHECK(rows[i].conj_upper.lo_d() > rows[i + 1].conj_upper.hi_d());
            CHECK(rows[i].r_frac.lo_d() > rows[i + 1].r_frac.hi_d());
            CHECK(rows[i].multiplier.lo_d() > rows[i + 1].multiplier.hi_d());
            // upper2 is constant on K = 1..3 and strictly decreasing after
            if (i + 1 < 3)
                CHECK(rows[i].upper2.overlaps(rows[i + 1].upper2));
            else
                CHECK(rows[i].upper2.lo_d() > rows[i + 1].upper2.hi_d());
        }
        CHECK(std::abs(rows[0].upper2.mid_d() - rows[2].upper2.mid_d()) < 1e-30);
    }

    SUBCASE("conjectured bound crosses certified upper 2 between K=10 and K=11") {
        CHECK(rows[9].conj_upper.lo_d() > rows[9].upper2.hi_d());
        CHECK(rows[10].conj_upper.hi_d() < rows[10].upper2.lo_d());
    }

    SUBCASE("CSV rendering") {
        std::string csv = format_bounds_csv(rows);
        std::istringstream in(csv);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "K,lower,upper1,upper2,conj_upper,r_frac,multiplier");
        int n_rows = 0;
        while (std::getline(in, line)) {
            std::istringstream fields(line);
            std::string cell;
            REQUIRE(std::getline(fields, cell, ','));
            CHECK(std::stoi(cell) == rows[n_rows].K);
            double vals[6];
            for (double& v : vals) {
                REQUIRE(std::getline(fields, cell, ','));
                CHECK(cell.find('.') == 1);  // d.dddddddd, 8 decimals
                CHECK(cell.size() == 10);
                v = std::stod(cell);
            }
            const BoundsRow& r = rows[n_rows];
            // printed lower is a true lower bound, printed uppers true uppers
            CHECK(vals[0] <= r.lower.lo_d());
            CHECK(vals[1] >= r.upper1.hi_d() - 1e-15);
            CHECK(vals[2] >= r.upper2.hi_d() - 1e-15);
            CHECK(vals[3] >= r.conj_upper.hi_d() - 1e-15);
            CHECK(std::abs(vals[4] - r.r_frac.mid_d()) < kTol);
            CHECK(std::abs(vals[5] - r.multiplier.mid_d()) < kTol);
            ++n_rows;
        }
        CHECK(n_rows == 12);
        // upper1(1) is exactly 2, so its outward-rounded print ticks up one ulp
        CHECK(csv.find("1,1.29045464,2.00000001,") != std::string::npos);
    }

    SUBCASE("markdown rendering") {
        std::string md = format_bounds_markdown(rows);
        CHECK(md.rfind("| K |", 0) == 0);
        int lines = 0;
        for (char c : md)
            if (c == '\n') ++lines;
        CHECK(lines == 14);
        CHECK(md.find("| 10 | 1.41726225 |") != std::string::npos);
    }
}

TEST_CASE("upper bound 2 is constant for K <= 3") {
    Enclosure u1 = upper_bound_2(compute_tables(1), density_table(1), 2000);
    Enclosure u2 = upper_bound_2(compute_tables(2), density_table(2), 2000);
    GCountTable table = compute_tables(3);
    Enclosure u3 = upper_bound_2(table, density_table(3), 2000);
    CHECK(u1.overlaps(u2));
    CHECK(u2.overlaps(u3));
    CHECK(std::abs(u1.mid_d() - u3.mid_d()) < 1e-30);
    CHECK_THROWS_AS(upper_bound_2(table, density_table(3), 3), std::invalid_argument);
}

TEST_CASE("truncation point only moves upper bound 2 by its tail") {
    GCountTable table = compute_tables(4);
    DensityTable d = density_table(4);
    double u_small = upper_bound_2(table, d, 1000).mid_d();
    double u_big = upper_bound_2(table, d, 10000).mid_d();
    CHECK(u_big <= u_small + 1e-18);  // larger khat never increases the bound estimate
    CHECK(std::abs(u_big - u_small) < 1e-4);
}

TEST_CASE("lower bound input validation") {
    GCountTable table = compute_tables(4);
    CHECK_THROWS_AS(lower_bound(table, density_table(3)), std::invalid_argument);
    CHECK_THROWS_AS(bounds_rows(table, 5, 10000), std::invalid_argument);
    CHECK_THROWS_AS(bounds_rows(table, 0, 10000), std::invalid_argument);
}

TEST_CASE("closed-form constants") {
    TrivialConstants c = trivial_constants();
    // 2^{1/e}
    CHECK(c.two_pow_inv_e.lo_d() >= 1.29045);
    CHECK(std::abs(c.two_pow_inv_e.mid_d() - 1.29045464) < kTol);
    // displayed three-piece split of the unit of mass
    CHECK(std::abs(c.beta_L.mid_d() - 0.1724) < 1e-4);
    CHECK(std::abs(c.beta_C.mid_d() - 0.3591) < 1e-4);
    CHECK(std::abs(c.beta_R.mid_d() - 0.4685) < 1e-4);
    Enclosure split = c.beta_L + c.beta_C + c.beta_R - Enclosure::from_long(1);
    CHECK(contains_zero(split));  // the three pieces partition the unit of mass
    // certified endpoints of the coarse bounds
    CHECK(c.beta.lo_d() > 1.37135);
    CHECK(c.beta.hi_d() < 1.3714);
    CHECK(c.alpha.hi_d() < 1.89756);
    CHECK(c.alpha.lo_d() > 1.8975);
    for (const Enclosure* e :
         {&c.two_pow_inv_e, &c.beta_L, &c.beta, &c.beta_C, &c.beta_R, &c.alpha})
        CHECK(e->width_d() < 1e-20);
}

TEST_CASE("exact decomposition identities") {
    for (long b = 2; b <= 25; ++b) {
        INFO("b = ", b);
        CHECK(identity_check(b));
    }
    CHECK_THROWS_AS(identity_check(1), std::invalid_argument);
    CHECK_THROWS_AS(identity_check(-3), std::invalid_argument);
}
