#include <doctest.h>

#include <set>

#include "resonant/resonance.hpp"
#include "test_support.hpp"

using namespace resonant;
using namespace resonant::testing;

namespace {

std::vector<unsigned> uv(std::initializer_list<unsigned> v) { return {v}; }

}  // namespace

TEST_CASE("monomial resonance tests on the opposite pair") {
    FrequencyVector f = freq_hopf();
    CHECK(resonant_monomial_test(f, uv({1, 1})));         // xy invariant
    CHECK(resonant_monomial_test(f, uv({2, 1}), 0u));     // x^2 y d/dx
    CHECK_FALSE(resonant_monomial_test(f, uv({2, 0})));
    CHECK_FALSE(resonant_monomial_test(f, uv({2, 0}), 0u));
}

TEST_CASE("monomial resonance test on the sum pair") {
    FrequencyVector f = freq_sum_pair();
    CHECK(resonant_monomial_test(f, uv({0, 1, 1}), 0u));  // yz d/dx
    CHECK_FALSE(resonant_monomial_test(f, uv({0, 1, 1})));
    CHECK_FALSE(resonant_monomial_test(f, uv({0, 1, 1}), 1u));
}

TEST_CASE("resonance tests agree with brute-force rational recomputation") {
    Rng rng(987654);
    for (int rep = 0; rep < 1000; ++rep) {
        unsigned d = 1 + rng.index(6);
        unsigned m = 1 + rng.index(3);
        std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(m));
        for (auto& row : rows)
            for (auto& q : row) q = Rational(static_cast<int>(rng.index(9)) - 4, 1 + rng.index(3));
        std::vector<Cplx> omega(m, Cplx(BigFloat(1)));
        for (unsigned j = 0; j < m; ++j) omega[j] = Cplx(BigFloat(1 + j) + sqrt(BigFloat(2 + j)));
        FrequencyVector f = FrequencyVector::make(rows, omega);
        std::vector<unsigned> K(d, 0);
        unsigned total = rng.index(13);
        for (unsigned t = 0; t < total; ++t) K[rng.index(d)] += 1;
        // brute force: accumulate the rational vector by hand
        std::vector<Rational> acc(m, Rational(0));
        for (unsigned i = 0; i < d; ++i)
            for (unsigned j = 0; j < m; ++j) acc[j] += Rational(K[i]) * rows[i][j];
        bool brute = true;
        for (const auto& q : acc)
            if (q != 0) brute = false;
        CHECK(resonant_monomial_test(f, K) == brute);

        unsigned dir = rng.index(d);
        for (unsigned j = 0; j < m; ++j) acc[j] -= rows[dir][j];
        bool brute_dir = true;
        for (const auto& q : acc)
            if (q != 0) brute_dir = false;
        CHECK(resonant_monomial_test(f, K, dir) == brute_dir);
    }
}

TEST_CASE("hilbert basis of the opposite pair") {
    FrequencyVector f = freq_hopf();
    ResonanceBasis basis = hilbert_basis(f, 6);
    REQUIRE(basis.generators.size() == 1);
    CHECK(basis.generators[0] == uv({1, 1}));
    CHECK(basis.complete);
    CHECK(check_P1(f, basis, 6) == Verdict::holds);
    CHECK(check_P2(f, basis, 6) == Verdict::holds);
}

TEST_CASE("hilbert basis of the (1,1,-2) resonance") {
    FrequencyVector f = freq_112();
    ResonanceBasis basis = hilbert_basis(f, 6);
    std::set<std::vector<unsigned>> got(basis.generators.begin(), basis.generators.end());
    std::set<std::vector<unsigned>> expect = {uv({2, 0, 1}), uv({0, 2, 1}), uv({1, 1, 1})};
    CHECK(got == expect);
    CHECK(basis.complete);

    SUBCASE("P1 fails with the quadric relation witness") {
        CHECK(check_P1(f, basis, 6) == Verdict::fails);
        REQUIRE(basis.p1_witness.has_value());
        CHECK(basis.p1_witness->j == uv({2, 2, 2}));
        CHECK(basis.p1_witness->combo_a != basis.p1_witness->combo_b);
    }
    SUBCASE("P2 fails on the linear cross terms") {
        CHECK(check_P2(f, basis, 6) == Verdict::fails);
        REQUIRE(basis.p2_witness.has_value());
        // y d/dx or x d/dy, depending on enumeration order
        bool y_dx = basis.p2_witness->k == uv({0, 1, 0}) && basis.p2_witness->direction == 0;
        bool x_dy = basis.p2_witness->k == uv({1, 0, 0}) && basis.p2_witness->direction == 1;
        CHECK((y_dx || x_dy));
        CHECK_FALSE(basis.p2_witness->representable);
    }
}

TEST_CASE("two generic pairs") {
    FrequencyVector f = freq_two_pairs();
    ResonanceBasis basis = hilbert_basis(f, 6);
    std::set<std::vector<unsigned>> got(basis.generators.begin(), basis.generators.end());
    // block ordering (x1, x2, y1, y2): invariants x1 y1 and x2 y2
    std::set<std::vector<unsigned>> expect = {uv({1, 0, 1, 0}), uv({0, 1, 0, 1})};
    CHECK(got == expect);
    CHECK(basis.complete);
    CHECK(check_P1(f, basis, 6) == Verdict::holds);
    CHECK(check_P2(f, basis, 6) == Verdict::holds);
}

TEST_CASE("sum pair: P1 holds vacuously, P2 fails") {
    FrequencyVector f = freq_sum_pair();
    ResonanceBasis basis = hilbert_basis(f, 6);
    CHECK(basis.generators.empty());
    CHECK(basis.complete);
    CHECK(check_P1(f, basis, 6) == Verdict::holds);
    CHECK(check_P2(f, basis, 6) == Verdict::fails);
    REQUIRE(basis.p2_witness.has_value());
    CHECK(basis.p2_witness->k == uv({0, 1, 1}));
    CHECK(basis.p2_witness->direction == 0);
    CHECK_FALSE(basis.p2_witness->representable);
}

TEST_CASE("generators are never sums of other generators") {
    for (auto make : {freq_hopf, freq_112, freq_two_pairs}) {
        FrequencyVector f = make();
        ResonanceBasis basis = hilbert_basis(f, 12);
        for (size_t drop = 0; drop < basis.generators.size(); ++drop) {
            std::vector<std::vector<unsigned>> others;
            for (size_t j = 0; j < basis.generators.size(); ++j)
                if (j != drop) others.push_back(basis.generators[j]);
            CHECK(count_representations(basis.generators[drop], others, 1) == 0);
        }
    }
}

TEST_CASE("decomposition is a bijection under P1 and P2") {
    // with both verdicts holding, every resonant pair within the bound has
    // exactly one decomposition
    for (auto make : {freq_hopf, freq_two_pairs}) {
        FrequencyVector f = make();
        ResonanceBasis basis = hilbert_basis(f, 12);
        REQUIRE(check_P1(f, basis, 12) == Verdict::holds);
        REQUIRE(check_P2(f, basis, 12) == Verdict::holds);
        unsigned max_gen_deg = 0;
        for (const auto& g : basis.generators) {
            unsigned deg = 0;
            for (unsigned e : g) deg += e;
            max_gen_deg = std::max(max_gen_deg, deg);
        }
        unsigned bound = 2 * max_gen_deg + 4;
        unsigned checked = 0;
        for_each_exponent(f.d, bound, [&](std::span<const unsigned> k) {
            for (unsigned i = 0; i < f.d; ++i) {
                if (!f.resonant_field_exponent(k, i)) continue;
                REQUIRE(k[i] >= 1);
                std::vector<unsigned> rest(k.begin(), k.end());
                rest[i] -= 1;
                CHECK(count_representations(rest, basis.generators, 3) == 1);
                ++checked;
            }
        });
        CHECK(checked > 0);
    }
}

TEST_CASE("verdicts degrade to unknown at tiny bounds") {
    // bound 1 cannot reach the xy generator: incomplete, so no 'holds'
    FrequencyVector f = freq_hopf();
    ResonanceBasis basis = hilbert_basis(f, 1);
    CHECK_FALSE(basis.complete);
    CHECK(check_P1(f, basis, 1) == Verdict::unknown);
    CHECK(check_P2(f, basis, 1) == Verdict::unknown);
}

TEST_CASE("verdicts are deterministic") {
    FrequencyVector f = freq_112();
    ResonanceBasis a = hilbert_basis(f, 8), b = hilbert_basis(f, 8);
    CHECK(a.generators == b.generators);
    check_P1(f, a, 8);
    check_P1(f, b, 8);
    REQUIRE(a.p1_witness.has_value());
    REQUIRE(b.p1_witness.has_value());
    CHECK(a.p1_witness->j == b.p1_witness->j);
    CHECK(a.p1_witness->combo_a == b.p1_witness->combo_a);
}
