#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellergy/moments.hpp"
#include "cellergy/ppp.hpp"
#include "cellergy/stats.hpp"

using namespace cellergy;

TEST_CASE("indicator kernel on a set of measure two gives Poisson(2) moments") {
    const std::vector<double> integrals{2.0, 2.0, 2.0};
    const auto report = campbell_moments(integrals);
    CHECK(report.values[0] == 2.0);
    CHECK(report.values[1] == 6.0);  // E[N^2] = lambda + lambda^2 with lambda = 2
    CHECK(report.values[2] == 22.0); // E[N^3] = B_3(2,2,2)
    CHECK(report.mean == 2.0);
    CHECK(report.variance == 2.0);
    CHECK(report.skewness == doctest::Approx(2.0 / std::pow(2.0, 1.5)).epsilon(1e-14));
}

TEST_CASE("zero kernel integrals give zero moments") {
    const std::vector<double> zeros{0.0, 0.0, 0.0, 0.0};
    const auto report = campbell_moments(zeros);
    for (double v : report.values) CHECK(v == 0.0);
    CHECK(report.variance == 0.0);
}

TEST_CASE("norm kernel on the unit disk at intensity three, against Monte Carlo") {
    // I_k = 3 * integral |x|^k dx = 3 * 2 pi / (k + 2).
    std::vector<double> integrals(3);
    for (int k = 1; k <= 3; ++k) {
        integrals[static_cast<std::size_t>(k - 1)] =
            3.0 * 2.0 * std::numbers::pi / (k + 2.0);
    }
    const auto report = campbell_moments(integrals);
    CHECK(report.mean == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));

    const long n = 100000;
    std::vector<double> f1(static_cast<std::size_t>(n));
    std::vector<double> f2(static_cast<std::size_t>(n));
    std::vector<double> f3(static_cast<std::size_t>(n));
    const Window window = Window::disk(1.0);
    for (long i = 0; i < n; ++i) {
        const auto cfg = sample_ppp(3.0, window, {31337, static_cast<std::uint64_t>(i)});
        double f = 0.0;
        for (const auto& user : cfg.users) f += user.position0.norm();
        f1[static_cast<std::size_t>(i)] = f;
        f2[static_cast<std::size_t>(i)] = f * f;
        f3[static_cast<std::size_t>(i)] = f * f * f;
    }
    const auto m1 = SampleMoments::from(f1);
    const auto m2 = SampleMoments::from(f2);
    const auto m3 = SampleMoments::from(f3);
    CHECK(std::abs(m1.mean - report.values[0]) < 3.0 * m1.std_error_mean());
    CHECK(std::abs(m2.mean - report.values[1]) < 3.0 * m2.std_error_mean());
    CHECK(std::abs(m3.mean - report.values[2]) < 3.0 * m3.std_error_mean());
}

TEST_CASE("report validation rejects malformed content") {
    MomentReport report;
    report.orders = {1, 2};
    report.values = {1.0};
    CHECK_THROWS_AS(report.validate(), NumericError);

    report = campbell_moments(std::vector<double>{1.0, 2.0});
    CHECK_NOTHROW(report.validate());
    report.variance = -1.0;
    CHECK_THROWS_AS(report.validate(), NumericError);

    const std::vector<double> bad{1.0, std::nan("")};
    CHECK_THROWS_AS(campbell_moments(bad), NumericError);
}

TEST_CASE("json serialization carries the documented keys") {
    const auto report = campbell_moments(std::vector<double>{1.0, 2.0, 3.0});
    const auto j = to_json(report);
    CHECK(j.at("orders").size() == 3);
    CHECK(j.at("values").size() == 3);
    CHECK(j.at("mean").get<double>() == 1.0);
    CHECK(j.at("variance").get<double>() == 2.0);
    CHECK(j.at("provenance").get<std::string>() == "analytic");
    CHECK(j.contains("formula_refs"));
    // Two-order reports have no skewness; it serializes as null.
    const auto short_report = campbell_moments(std::vector<double>{1.0, 2.0});
    CHECK(to_json(short_report).at("skewness").is_null());
}
