#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cellergy/rng.hpp"
#include "cellergy/stats.hpp"
#include "cellergy/traffic.hpp"

using namespace cellergy;

namespace {
TrafficModel exp_model(double mu_on, double mu_off) {
    return {TrafficKind::ExponentialOnOff, mu_on, mu_off};
}
const TrafficModel kAlwaysOn{TrafficKind::AlwaysOn, 0.0, 0.0};
} // namespace

TEST_CASE("stationary ON probability") {
    CHECK(exp_model(1.0, 1.0).pi_on() == 0.5);
    CHECK(exp_model(0.3, 0.7).pi_on() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(kAlwaysOn.pi_on() == 1.0);
}

TEST_CASE("always-on trajectories have no switches") {
    RngStream rng(derive_key(53));
    const auto traj = sample_trajectory(kAlwaysOn, 7.0, rng);
    CHECK(traj.initial_on);
    CHECK(traj.switch_times.empty());
    CHECK(integrate_activity(traj, 7.0) == 7.0);
}

TEST_CASE("exact activity integral of a hand-built trajectory") {
    TrafficTrajectory traj;
    traj.initial_on = false;
    traj.switch_times = {5.0};
    CHECK(integrate_activity(traj, 10.0) == 5.0);
    CHECK(traj.on_at(6.0));
    CHECK(!traj.on_at(4.0));

    traj.initial_on = true;
    traj.switch_times = {1.0, 3.0, 9.0};
    // ON over [0,1) and [3,9): total 7.
    CHECK(integrate_activity(traj, 10.0) == 7.0);
}

TEST_CASE("streaming activity integral replays the trajectory sampler") {
    const auto model = exp_model(0.4, 0.6);
    for (int trial = 0; trial < 200; ++trial) {
        RngStream rng_a(derive_key(59, trial));
        RngStream rng_b(derive_key(59, trial));
        const auto traj = sample_trajectory(model, 25.0, rng_a);
        const double direct = sample_activity_integral(model, 25.0, rng_b);
        CHECK(direct == integrate_activity(traj, 25.0));
        CHECK(rng_a.draw_count() == rng_b.draw_count());
    }
}

TEST_CASE("initial state frequency matches the stationary law") {
    const auto model = exp_model(0.4, 0.6); // pi_on = 0.6
    RngStream rng(derive_key(61));
    long on = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
        if (sample_trajectory(model, 1.0, rng).initial_on) ++on;
    }
    const double se = std::sqrt(0.6 * 0.4 / static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(on) / n - 0.6) < 4.0 * se);
}

TEST_CASE("stationarity: the ON fraction is flat in time") {
    const auto model = exp_model(0.3, 0.7); // pi_on = 0.7
    RngStream rng(derive_key(67));
    const long n = 40000;
    const double T = 10.0;
    for (double t : {0.0, 2.5, 5.0, 7.5, 9.99}) {
        CAPTURE(t);
        RngStream local(derive_key(67, static_cast<std::uint64_t>(t * 100)));
        long on = 0;
        for (long i = 0; i < n; ++i) {
            if (sample_trajectory(model, T, local).on_at(t)) ++on;
        }
        const double se = std::sqrt(0.7 * 0.3 / static_cast<double>(n));
        CHECK(std::abs(static_cast<double>(on) / n - 0.7) < 4.0 * se);
    }
    (void)rng;
}

TEST_CASE("mean switching rate equals 2 mu_on mu_off / (mu_on + mu_off)") {
    const auto model = exp_model(0.4, 0.6);
    const double T = 25.0;
    const double expected = T * 2.0 * 0.4 * 0.6 / (0.4 + 0.6); // 12 switches
    RngStream rng(derive_key(71));
    const long n = 50000;
    std::vector<double> counts(static_cast<std::size_t>(n));
    for (auto& c : counts) {
        c = static_cast<double>(sample_trajectory(model, T, rng).switch_times.size());
    }
    const auto m = SampleMoments::from(counts);
    CHECK(std::abs(m.mean - expected) < 4.0 * m.std_error_mean());
}

TEST_CASE("first moment is pi_on T for every model") {
    CHECK(traffic_moment(exp_model(0.01, 0.01), 1, 3600.0,
                         TrafficMomentMethod::Analytic)
              .value == doctest::Approx(1800.0).epsilon(1e-14));
    CHECK(traffic_moment(kAlwaysOn, 1, 5.0, TrafficMomentMethod::Analytic).value ==
          5.0);
}

TEST_CASE("always-on moments are T^k in every method") {
    RngStream rng(derive_key(73));
    const double expected = 32.0; // T = 2, k = 5
    CHECK(traffic_moment(kAlwaysOn, 5, 2.0, TrafficMomentMethod::Analytic).value ==
          expected);
    CHECK(traffic_moment(kAlwaysOn, 5, 2.0, TrafficMomentMethod::Asymptotic).value ==
          expected);
    CHECK(traffic_moment(kAlwaysOn, 5, 2.0, TrafficMomentMethod::MonteCarlo, 100, &rng)
              .value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("second-moment closed form validated by a large Monte Carlo oracle") {
    // Covariance of the stationary chain gives
    //   m_2 = (pi_on T)^2 + 2 pi_on pi_off (T/theta - (1 - e^(-theta T))/theta^2).
    // Before trusting it anywhere we pin it against 10^6 sampled trajectories.
    struct Case {
        double mu_on, mu_off, T;
    };
    for (const auto& c : {Case{1.0, 1.0, 10.0}, Case{0.3, 0.7, 8.0},
                          Case{2.0, 0.5, 3.0}}) {
        CAPTURE(c.mu_on);
        CAPTURE(c.mu_off);
        const auto model = exp_model(c.mu_on, c.mu_off);
        const double analytic =
            traffic_moment(model, 2, c.T, TrafficMomentMethod::Analytic).value;
        RngStream rng(derive_key(79, static_cast<std::uint64_t>(c.mu_on * 10),
                                 static_cast<std::uint64_t>(c.mu_off * 10)));
        const auto mc =
            traffic_moment(model, 2, c.T, TrafficMomentMethod::MonteCarlo, 1000000, &rng);
        CHECK(std::abs(analytic - mc.value) < 3.0 * mc.std_error);
    }
    // Frozen spot value for mu_on = mu_off = 1, T = 10:
    //   25 + 0.5 (10/2 - (1 - e^-20)/4) = 27.375 + e^-20/8.
    const double frozen = 27.375 + std::exp(-20.0) / 8.0;
    CHECK(traffic_moment(exp_model(1.0, 1.0), 2, 10.0, TrafficMomentMethod::Analytic)
              .value == doctest::Approx(frozen).epsilon(1e-14));
}

TEST_CASE("sampled mean activity integral recovers pi_on T") {
    const auto model = exp_model(0.25, 0.75); // pi_on = 0.75
    RngStream rng(derive_key(91));
    const auto mc =
        traffic_moment(model, 1, 12.0, TrafficMomentMethod::MonteCarlo, 100000, &rng);
    CHECK(std::abs(mc.value - 0.75 * 12.0) < 3.0 * mc.std_error);
    CHECK(mc.std_error > 0.0);
}

TEST_CASE("analytic moments of order three and above are refused for ON/OFF") {
    CHECK_THROWS_AS(
        traffic_moment(exp_model(1.0, 1.0), 3, 1.0, TrafficMomentMethod::Analytic),
        std::invalid_argument);
}

TEST_CASE("asymptotic moments and the large-T limit") {
    const auto model = exp_model(0.2, 0.6); // pi_on = 0.75
    CHECK(traffic_moment(model, 3, 10.0, TrafficMomentMethod::Asymptotic).value ==
          doctest::Approx(std::pow(7.5, 3)).epsilon(1e-14));
    // m_2 / T^2 approaches pi_on^2 as T grows.
    double prev_gap = 1e9;
    for (double T : {10.0, 100.0, 1000.0, 10000.0}) {
        const double m2 =
            traffic_moment(model, 2, T, TrafficMomentMethod::Analytic).value;
        const double gap = std::abs(m2 / (T * T) - 0.75 * 0.75);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
}

TEST_CASE("moments sit inside [0, T^k] and respect Jensen") {
    const auto model = exp_model(0.5, 0.5);
    const double T = 6.0;
    RngStream rng(derive_key(83));
    const auto m3 =
        traffic_moment(model, 3, T, TrafficMomentMethod::MonteCarlo, 200000, &rng);
    const double m1 = traffic_moment(model, 1, T, TrafficMomentMethod::Analytic).value;
    CHECK(m3.value >= 0.0);
    CHECK(m3.value <= std::pow(T, 3));
    // Jensen: E[X^3] >= (E X)^3 for X >= 0.
    CHECK(m3.value >= m1 * m1 * m1 - 3.0 * m3.std_error);
}

TEST_CASE("traffic_moments_upto uses exact low orders in Monte Carlo mode") {
    const auto model = exp_model(0.7, 0.9);
    RngStream rng(derive_key(89));
    const auto ms =
        traffic_moments_upto(model, 4, 5.0, TrafficMomentMethod::MonteCarlo, 50000, &rng);
    CHECK(ms[0] ==
          traffic_moment(model, 1, 5.0, TrafficMomentMethod::Analytic).value);
    CHECK(ms[1] ==
          traffic_moment(model, 2, 5.0, TrafficMomentMethod::Analytic).value);
    CHECK(ms.size() == 4);
    CHECK(ms[3] > 0.0);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(exp_model(0.0, 1.0).validate(), ConfigError);
    CHECK_NOTHROW(kAlwaysOn.validate());
}
