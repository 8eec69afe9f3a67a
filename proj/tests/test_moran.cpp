#include "fsum/moran.hpp"
#include "fsum/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fsum;
using namespace fsum::test;

namespace {

std::vector<Point> pts1(std::initializer_list<Rational> values) {
    std::vector<Point> out;
    for (const auto& v : values) out.push_back(pt1(v));
    return out;
}

double dbl(const Float& x) { return static_cast<double>(x); }

} // namespace

TEST_CASE("parameter tables") {
    MoranParams half = ev_params(Rational(1, 2), 4);
    CHECK(half.m == std::vector<Int>{2, 6, 24, 120});
    CHECK(half.n == std::vector<Int>{4, 36, 576, 14400});

    MoranParams third = ev_params(Rational(1, 3), 3);
    CHECK(third.n == std::vector<Int>{8, 216, 13824});

    MoranParams two_fifths = ev_params(Rational(2, 5), 1);
    CHECK(two_fifths.n == std::vector<Int>{5}); // floor(sqrt(32))

    MoranParams with_ell = ev_params(Rational(1, 2), 4, 2);
    CHECK(with_ell.m_prime_at(3) == 12);
    CHECK(with_ell.m_prime_at(4) == 60);

    CHECK_THROWS_AS(ev_params(Rational(3, 2), 3), std::invalid_argument);
    CHECK_THROWS_AS(ev_params(Rational(0), 3), std::invalid_argument);
    // alpha close enough to 1 collapses m_k < N_k.
    CHECK_THROWS_AS(ev_params(Rational(99, 100), 2), hypothesis_error);
}

TEST_CASE("prefix enumeration") {
    MoranParams half = ev_params(Rational(1, 2), 4);
    CHECK(ev_prefix(half, 0).points == pts1({0}));
    CHECK(ev_prefix(half, 1).points == pts1({0, Rational(1, 4)}));

    PointCloud depth2 = ev_prefix(half, 2);
    CHECK(depth2.size() == 12); // 2 * 6, no carries
    std::vector<Point> expected;
    for (int d1 = 0; d1 < 2; ++d1)
        for (int d2 = 0; d2 < 6; ++d2) expected.push_back(pt1(Rational(d1, 4) + Rational(d2, 144)));
    CHECK(depth2.points == canonicalize(std::move(expected)));

    CHECK(ev_prefix(half, 3).size() == 2 * 6 * 24); // distinctness, cardinality = prod m_k
    CHECK_THROWS_AS(ev_prefix(half, 4, 1000), budget_error);
    CHECK_THROWS_AS(ev_prefix(half, 9), horizon_error);
}

TEST_CASE("sumset containment certificate") {
    MoranParams params = ev_params(Rational(1, 2), 20, 2);
    DecompositionCertificate cert = b_ell_containment(params, 4);
    CHECK(cert.verified);
    CHECK(cert.details.at("digitwise_verified") == Json(true));
    CHECK(cert.details.at("no_carry_verified") == Json(true));
    CHECK(cert.details.at("sum_equals_digit_range") == Json(true));
    CHECK(cert.part_cardinalities == std::vector<std::int64_t>{720, 720}); // 12 * 60 free digits
    CHECK(cert.details.at("digit_range_cardinality") == Json(23 * 119));
    CHECK(cert.target_cardinality == 2 * 6 * 24 * 120);

    // Digitwise instances: 2*(12-1) <= 23 and 2*(60-1) <= 119.
    CHECK(Int(2) * (params.m_prime_at(3) - 1) <= params.m_at(3) - 1);
    CHECK(Int(2) * (params.m_prime_at(4) - 1) <= params.m_at(4) - 1);

    CHECK_THROWS_AS(b_ell_containment(params, 2), std::invalid_argument);
    CHECK_THROWS_AS(b_ell_containment(ev_params(Rational(1, 2), 20), 4), std::invalid_argument);
}

TEST_CASE("digitwise identity for every summand count") {
    // l(m_k/l - 1) = m_k - l <= m_k - 1, strict for l > 1.
    for (int ell : {2, 3, 4, 6}) {
        MoranParams params = ev_params(Rational(1, 2), 12, ell);
        for (int k = ell + 1; k <= params.k_max; ++k) {
            Int lhs = Int(ell) * (params.m_prime_at(k) - 1);
            CHECK(lhs == params.m_at(k) - ell);
            CHECK(lhs < params.m_at(k) - 1); // strict once l > 1
            CHECK(lhs < params.n_at(k));     // no carries in the l-fold sum
        }
    }
}

TEST_CASE("prefix dimension ratios") {
    MoranParams half = ev_params(Rational(1, 2), 6);
    for (int k = 1; k <= 6; ++k) {
        MoranDimEstimate est = moran_dim_estimate(half, k);
        CHECK(est.equals_alpha_exactly);
        CHECK(est.lower_bound_certified);
        CHECK(dbl(est.value) == doctest::Approx(0.5).epsilon(1e-30));
    }

    MoranParams third = ev_params(Rational(1, 3), 6);
    for (int k = 1; k <= 6; ++k) CHECK(moran_dim_estimate(third, k).equals_alpha_exactly);

    MoranParams two_fifths = ev_params(Rational(2, 5), 6);
    for (int k = 1; k <= 6; ++k) {
        MoranDimEstimate est = moran_dim_estimate(two_fifths, k);
        CHECK(est.lower_bound_certified);
        CHECK(dbl(est.value) >= 0.4);
        CHECK(dbl(est.value) <= 0.4 + 0.02);
    }

    CHECK_THROWS_AS(moran_dim_estimate(half, 0), std::invalid_argument);
    CHECK_THROWS_AS(moran_dim_estimate(half, 7), std::invalid_argument);
}
