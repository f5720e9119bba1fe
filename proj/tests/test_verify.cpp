#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fmm/marcher.hpp"
#include "fmm/speed_catalog.hpp"
#include "fmm/verify.hpp"
#include "test_support.hpp"

using namespace fmm;
using fmm::testing::constant_field;
using fmm::testing::random_field;
using fmm::testing::single_source;

TEST_CASE("sweep oracle: all sources returns zeros") {
    const auto f = constant_field(6);
    const auto t = sweep_oracle(f, BoundarySet::all(f.spec()), 1e-12);
    for (double v : t.values()) CHECK(v == 0.0);
    CHECK_THROWS_AS(sweep_oracle(f, BoundarySet::all(f.spec()), 0.0), std::invalid_argument);
}

TEST_CASE("sweep oracle solves the discrete equation on a random field") {
    const auto f = random_field(30, 77, 0.2, 5.0);
    const auto src = single_source(30, 12, 4);
    const auto t = sweep_oracle(f, src, 1e-14);
    const auto r = residual_range(t, f, src);
    CHECK(r.min >= 1.0 - 1e-8);
    CHECK(r.max <= 1.0 + 1e-8);
    for (double v : t.values()) CHECK(v <= value_ceiling(f));
}

TEST_CASE("sweep oracle reports non-convergence") {
    const auto f = random_field(12, 3);
    const auto src = single_source(12, 0, 0);
    CHECK_THROWS_AS(sweep_oracle(f, src, 1e-14, 1), OracleDivergenceError);
    const auto t = sweep_oracle(f, src, 1e-300);
    CHECK(max_abs_difference(t, sweep_oracle(f, src, 1e-300)) == 0.0);
}

TEST_CASE("check_comparison examples") {
    const auto f = random_field(20, 9);
    const auto src = single_source(20, 0, 20);
    const auto t = march_exact(f, src).t;

    CHECK(check_comparison(t.scaled(0.9), t, f, src));
    CHECK(check_comparison(t, t, f, src));

    try {
        check_comparison(t.scaled(1.1), t, f, src);
        FAIL("expected a hypothesis error");
    } catch (const ComparisonHypothesisError& e) {
        CHECK(e.which() == Hypothesis::Subsolution);
        CHECK(e.residual_value() == doctest::Approx(1.1).epsilon(1e-9));
    }
    try {
        check_comparison(t, t.scaled(0.5), f, src);
        FAIL("expected a hypothesis error");
    } catch (const ComparisonHypothesisError& e) {
        CHECK(e.which() == Hypothesis::Supersolution);
    }
}

TEST_CASE("check_comparison with shifted solutions") {
    // A constant shift keeps the residual, so boundary excess carries over.
    const auto f = constant_field(10);
    const auto src = single_source(10, 5, 5);
    const auto t = march_exact(f, src).t;
    const auto shifted = t.shifted(0.25);
    CHECK(check_comparison(shifted, t, f, src));
    CHECK(check_comparison(t, shifted, f, src));
}

TEST_CASE("error bound: constant speed") {
    const auto f = constant_field(30);
    const auto rep = check_error_bound(f, single_source(30, 30, 0), {2, {}, {}});
    CHECK(rep.error_bound == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
    CHECK(rep.max_rel_err <= rep.error_bound);
    CHECK(rep.max_rel_err >= 0.0);
    CHECK(rep.monotone_ok);
    CHECK(rep.ok());
}

TEST_CASE("error bound: ratio 64 with 512 buckets") {
    const SpeedModel model("sin-ratio", {{"r", 64.0}});
    const auto f = model.build(GridSpec(40));
    const auto rep = check_error_bound(f, single_source(40, 40, 0),
                                       {512, model.analytic_f_min(), model.analytic_f_max()});
    CHECK(rep.error_bound == doctest::Approx(0.17677669529663687).epsilon(1e-14));
    CHECK(rep.max_rel_err <= rep.error_bound);
}

TEST_CASE("error bound: very many buckets is nearly exact") {
    const auto f = random_field(20, 31);
    const auto rep = check_error_bound(f, single_source(20, 20, 0), {1 << 20, {}, {}});
    CHECK(rep.max_rel_err <= 1e-6);
}

TEST_CASE("error bound flags a corrupted untidy solution") {
    const auto f = constant_field(12);
    const auto src = single_source(12, 0, 0);
    const auto exact = march_exact(f, src).t;
    auto bad = exact;
    bad.set(3, 4, exact.at(3, 4) - 1e-6);
    auto rep = measure_error_bound(exact, bad, f, src, {4, {}, {}});
    CHECK_FALSE(rep.monotone_ok);
    REQUIRE(rep.violation);
    CHECK(rep.violation->find("(3, 4)") != std::string::npos);

    auto far_off = exact.scaled(2.0);
    for (const auto& p : src.points()) far_off.set(p, 0.0);
    rep = measure_error_bound(exact, far_off, f, src, {4, {}, {}});
    CHECK(rep.monotone_ok);
    REQUIRE(rep.violation);
    CHECK(rep.violation->find("relative error bound") != std::string::npos);
}

TEST_CASE("band trace checks") {
    const auto f = constant_field(20);
    const auto src = single_source(20, 0, 0);
    MarchOptions opts;
    opts.record_band_trace = true;
    const double h = f.spec().h();

    const auto exact = march_exact(f, src, opts);
    CHECK(check_band_trace(exact.band_trace, h, f.f_min(), 0.0, false));
    for (const auto& b : exact.band_trace) CHECK(b.width() <= h + 1e-14);

    const UntidyParams up{8, std::nullopt};
    const auto untidy = march_untidy(f, src, up, opts);
    CHECK(check_band_trace(untidy.band_trace, h, f.f_min(), untidy_delta(f, up), true));

    const std::vector<BandRange> single{{0.3, 0.3}};
    CHECK(check_band_trace(single, h, 1.0, 0.0, false));
    const std::vector<BandRange> wide{{0.0, 2 * h}};
    CHECK_FALSE(check_band_trace(wide, h, 1.0, 0.0, false));
    CHECK_FALSE(check_band_trace(wide, h, 1.0, h, true));  // strict inequality
}

TEST_CASE("error report CSV row") {
    ErrorReport r;
    r.n = 50;
    r.buckets = 32;
    r.f_ratio = 1.0;
    r.max_rel_err = 0.0;
    r.error_bound = std::sqrt(2.0) / 32;
    std::ostringstream os;
    write_error_report_header(os);
    write_error_report_row(os, r);
    CHECK(os.str() == "n,n_B,f_ratio,max_rel_err,error_bound,monotone_ok\n"
                      "50,32,1,0,0.04419417382415922,true\n");
}
