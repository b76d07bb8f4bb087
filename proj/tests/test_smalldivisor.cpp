#include <doctest.h>

#include <cmath>
#include <complex>

#include "resonant/smalldivisor.hpp"
#include "test_support.hpp"

using namespace resonant;
using namespace resonant::testing;

namespace {

/// Brute-force sigma for d = 2 (sup-norm window): a plain double loop, the
/// independent oracle.
double brute_sigma_2d(std::complex<double> l1, std::complex<double> l2, unsigned cap) {
    double best = std::numeric_limits<double>::infinity();
    for (unsigned a = 0; a <= cap; ++a) {
        for (unsigned b = 0; b <= cap; ++b) {
            if (a + b == 0) continue;
            std::complex<double> dot = double(a) * l1 + double(b) * l2;
            for (int i = 0; i < 2; ++i) {
                if ((i == 0 && b == 0 && a == 1) || (i == 1 && a == 0 && b == 1)) continue;  // J = E_i
                std::complex<double> v = dot - (i == 0 ? l1 : l2);
                double m = std::abs(v);
                if (m > 1e-14 && m < best) best = m;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("sigma of the opposite pair is identically one") {
    FrequencyVector f = freq_hopf();
    BrunoReport rep = sigma_sequence(f, 6);
    REQUIRE(rep.sigma.size() == 7);
    for (double s : rep.sigma) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.verdict == SigmaVerdict::bruno_up_to_kmax);
}

TEST_CASE("sigma of the golden pair follows the brute-force oracle") {
    double gamma = (1.0 + std::sqrt(5.0)) / 2.0;
    FrequencyVector f = FrequencyVector::from_numeric({{1.0, 0.0}, {gamma, 0.0}});
    BrunoReport rep = sigma_sequence(f, 10);
    REQUIRE(rep.sigma.size() == 11);
    for (unsigned k = 0; k + 1 < rep.sigma.size(); ++k) CHECK(rep.sigma[k] >= rep.sigma[k + 1]);
    for (unsigned k = 0; k <= 6; ++k)
        CHECK(rep.sigma[k] == doctest::Approx(brute_sigma_2d(1.0, gamma, 1u << k)).epsilon(1e-12));
    CHECK(rep.verdict == SigmaVerdict::bruno_up_to_kmax);
    for (unsigned k = 0; k + 1 < rep.partial_sums.size(); ++k)
        CHECK(rep.partial_sums[k] <= rep.partial_sums[k + 1] + 1e-15);
}

TEST_CASE("sigma at kmax zero is the hand-checkable minimum") {
    double gamma = (1.0 + std::sqrt(5.0)) / 2.0;
    FrequencyVector f = FrequencyVector::from_numeric({{1.0, 0.0}, {gamma, 0.0}});
    BrunoReport rep = sigma_sequence(f, 0);
    REQUIRE(rep.sigma.size() == 1);
    // candidates at ||J|| <= 1: divisors |1 - gamma|, |gamma - 1|, |1|, |gamma|
    CHECK(rep.sigma[0] == doctest::Approx(gamma - 1.0).epsilon(1e-12));
}

TEST_CASE("sigma prefixes agree between horizons") {
    FrequencyVector f = freq_two_pairs();
    BrunoReport a = sigma_sequence(f, 6);
    BrunoReport b = sigma_sequence(f, 5);
    for (unsigned k = 0; k <= 5; ++k) CHECK(a.sigma[k] == b.sigma[k]);
}

TEST_CASE("sigma is monotone non-increasing on random numeric vectors") {
    Rng rng(13579);
    for (int rep = 0; rep < 10; ++rep) {
        unsigned d = 1 + rng.index(3);
        std::vector<std::complex<double>> lam(d);
        for (auto& v : lam) v = {rng.real(-2, 2), rng.real(-2, 2)};
        FrequencyVector f = FrequencyVector::from_numeric(lam);
        BrunoReport r = sigma_sequence(f, 6);
        if (r.verdict == SigmaVerdict::contains_exact_zero) continue;
        for (unsigned k = 0; k + 1 < r.sigma.size(); ++k) CHECK(r.sigma[k] >= r.sigma[k + 1]);
    }
}

TEST_CASE("exact zeros are excluded only by the exact test") {
    // (1,-1): every skipped divisor is an exact resonance; all kept ones are
    // integers, so the minimum is exactly 1 (never a float-noise value)
    FrequencyVector f = freq_hopf();
    BrunoReport rep = sigma_sequence(f, 4);
    for (double s : rep.sigma) CHECK(s >= 1.0 - 1e-14);
}

TEST_CASE("degenerate vector with no nonzero divisor") {
    FrequencyVector f = FrequencyVector::from_numeric({{0.0, 0.0}});
    BrunoReport rep = sigma_sequence(f, 3);
    CHECK(rep.verdict == SigmaVerdict::contains_exact_zero);
}

TEST_CASE("bruno partial sums of the three model sequences") {
    SUBCASE("a_k = 1/2: geometric, converging to 2 log 2") {
        std::vector<double> a(41, 0.5);
        BrunoSumResult r = bruno_sum(a);
        CHECK(r.converging);
        CHECK(r.partial_sums.back() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    }
    SUBCASE("a_k = 2^(-2^k): every term contributes log 2, diverging trend") {
        std::vector<double> a;
        for (int k = 0; k <= 10; ++k) a.push_back(std::exp2(-std::exp2(k)));
        BrunoSumResult r = bruno_sum(a);
        CHECK_FALSE(r.converging);
        for (size_t k = 0; k + 1 < r.partial_sums.size(); ++k)
            CHECK(r.partial_sums[k + 1] - r.partial_sums[k] == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    }
    SUBCASE("a_k = 1/(k+1): converging") {
        std::vector<double> a;
        for (int k = 0; k <= 40; ++k) a.push_back(1.0 / (k + 1));
        BrunoSumResult r = bruno_sum(a);
        CHECK(r.converging);
    }
    SUBCASE("rejects non-positive entries") {
        std::vector<double> a = {1.0, 0.0};
        CHECK_THROWS_AS(bruno_sum(a), PreconditionError);
    }
}

TEST_CASE("cantor membership") {
    FrequencyVector f = freq_hopf();
    std::vector<double> a(11, 0.25);

    SUBCASE("phi = 0 with bounds below sigma") {
        std::vector<std::complex<double>> phi(2, {0.0, 0.0});
        CHECK(cantor_membership(f, phi, 4, 0.5, 1.0, a));
    }
    SUBCASE("outside the polydisc") {
        std::vector<std::complex<double>> phi = {{0.6, 0.0}, {0.0, 0.0}};
        CHECK_FALSE(cantor_membership(f, phi, 4, 0.5, 1.0, a));
    }
    SUBCASE("membership at phi = 0 only flips true -> false as s grows") {
        std::vector<std::complex<double>> phi(2, {0.0, 0.0});
        bool prev = cantor_membership(f, phi, 4, 1e-3, 1.0, a);
        CHECK(prev);
        for (double s : {0.05, 0.2, 0.5, 0.9, 0.999}) {
            bool now = cantor_membership(f, phi, 4, s, 1.0, a);
            CHECK((prev || !now));  // no false -> true transition
            prev = now;
        }
    }
    SUBCASE("a detuning near a resonance moves the boundary") {
        // phi = (delta, 0) shifts lambda to (1 + delta, -1): the divisor at
        // J = (1,1), i = 2 becomes |delta|, so membership needs
        // |delta| >= a_k (s0 - s); locate the flip by bisection
        double s = 0.25, s0 = 1.0;
        std::vector<double> loose(11, 0.1);  // threshold 0.075
        auto member = [&](double delta) {
            std::vector<std::complex<double>> phi = {{delta, 0.0}, {0.0, 0.0}};
            return cantor_membership(f, phi, 2, s, s0, loose);
        };
        CHECK(member(0.2));
        CHECK_FALSE(member(0.01));
        double lo = 0.01, hi = 0.2;
        for (int it = 0; it < 45; ++it) {
            double mid = 0.5 * (lo + hi);
            if (member(mid)) hi = mid;
            else lo = mid;
        }
        CHECK(0.5 * (lo + hi) == doctest::Approx(0.075).epsilon(1e-6));
    }
    SUBCASE("parameter validation") {
        std::vector<std::complex<double>> phi(2, {0.0, 0.0});
        CHECK_THROWS_AS(cantor_membership(f, phi, 4, 0.0, 1.0, a), PreconditionError);
        CHECK_THROWS_AS(cantor_membership(f, phi, 4, 2.0, 1.0, a), PreconditionError);
    }
}

TEST_CASE("kmax cap is enforced") {
    FrequencyVector f = freq_hopf();
    CHECK_THROWS_AS(sigma_sequence(f, 15), PreconditionError);
}

TEST_CASE("the 1-norm window is available") {
    // under the 1-norm the k = 0 window holds only the degree-1 exponents,
    // so sigma_0 = 2 for the opposite pair; the sup-norm default gives 1
    FrequencyVector f = freq_hopf();
    BrunoReport rep = sigma_sequence(f, 2, SigmaNorm::l1);
    REQUIRE(rep.sigma.size() == 3);
    CHECK(rep.sigma[0] == doctest::Approx(2.0));
    CHECK(rep.sigma[1] == doctest::Approx(1.0));
    CHECK(rep.sigma[2] == doctest::Approx(1.0));
}
