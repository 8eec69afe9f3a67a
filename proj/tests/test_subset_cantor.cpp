#include "fsum/subset_cantor.hpp"
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

PointCloud cloud_of(std::vector<Point> points) {
    PointCloud c;
    c.points = canonicalize(std::move(points));
    return c;
}

double dbl(const Float& x) { return static_cast<double>(x); }

} // namespace

TEST_CASE("subset prefixes of the middle-third system") {
    HomogeneousIFS cantor = middle_third_cantor();

    SubsetCantorSpec only_first{cantor, IndexSet::explicit_prefix({1}, 2), 2};
    CHECK(subset_prefix(only_first).points == pts1({0, Rational(2, 3)}));

    SubsetCantorSpec everything{cantor, IndexSet::naturals(), 2};
    CHECK(subset_prefix(everything).points == prefix_points(cantor, 2).points);

    SubsetCantorSpec nothing{cantor, IndexSet::explicit_prefix({}, 5), 5};
    CHECK(subset_prefix(nothing).points == pts1({0}));
}

TEST_CASE("subset prefix preconditions") {
    HomogeneousIFS cantor = middle_third_cantor();
    CHECK_THROWS_AS(subset_prefix(SubsetCantorSpec{cantor, IndexSet::explicit_prefix({1}, 2), 5}),
                    horizon_error);
    CHECK_THROWS_AS(subset_prefix(SubsetCantorSpec{cantor, IndexSet::naturals(), 25}, 1000), budget_error);

    HomogeneousIFS shifted(Rational(1, 3), OrthoMatrix::identity(1), DigitSet({pt1(1), pt1(2)}));
    CHECK_THROWS_AS(subset_prefix(SubsetCantorSpec{shifted, IndexSet::naturals(), 2}),
                    std::invalid_argument);
}

TEST_CASE("minkowski sums") {
    PointCloud a = cloud_of(pts1({0, 1}));
    PointCloud b = cloud_of(pts1({0, 2}));
    CHECK(minkowski_sum({a, b}).points == pts1({0, 1, 2, 3}));

    PointCloud c = cloud_of(pts1({0, Rational(2, 3)}));
    PointCloud d = cloud_of(pts1({0, Rational(2, 9)}));
    CHECK(minkowski_sum({c, d}).points == prefix_points(middle_third_cantor(), 2).points);

    PointCloud x = prefix_points(middle_third_cantor(), 4);
    PointCloud zero = cloud_of(pts1({0}));
    CHECK(minkowski_sum({x, zero}).points == x.points);

    CHECK_THROWS_AS(minkowski_sum({x, x, x}, 100), budget_error);
}

TEST_CASE("positional independence: disjoint index sets factor the prefix") {
    HomogeneousIFS cantor = middle_third_cantor();
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int depth = 6;
        std::vector<std::int64_t> s_members, t_members, union_members;
        std::uniform_int_distribution<int> owner(0, 2);
        for (std::int64_t k = 1; k <= depth; ++k) {
            switch (owner(rng)) {
                case 0: s_members.push_back(k); union_members.push_back(k); break;
                case 1: t_members.push_back(k); union_members.push_back(k); break;
                default: break;
            }
        }
        IndexSet s = IndexSet::explicit_prefix(s_members, depth);
        IndexSet t = IndexSet::explicit_prefix(t_members, depth);
        IndexSet u = IndexSet::explicit_prefix(union_members, depth);
        PointCloud left = subset_prefix(SubsetCantorSpec{cantor, u, depth});
        PointCloud right = minkowski_sum({subset_prefix(SubsetCantorSpec{cantor, s, depth}),
                                          subset_prefix(SubsetCantorSpec{cantor, t, depth})});
        CHECK(left.points == right.points);
    }
}

TEST_CASE("psp equality with covering residues") {
    HomogeneousIFS cantor = middle_third_cantor();
    for (int ell : {2, 3}) {
        DecompositionCertificate cert = psp_decompose(cantor, ell, 6, PartitionSource::CoveringResidues);
        CHECK(cert.verified);
        CHECK(cert.sum_cardinality == 64);
        CHECK(cert.target_cardinality == 64);
    }
    DecompositionCertificate degenerate =
        psp_decompose(cantor, 2, 0, PartitionSource::CoveringResidues);
    CHECK(degenerate.verified);
    CHECK(degenerate.sum_cardinality == 1);
}

TEST_CASE("psp equality with checkpoint blocks") {
    HomogeneousIFS cantor = middle_third_cantor();
    DecompositionCertificate cert = psp_decompose(cantor, 2, 10, PartitionSource::CheckpointBlocks, 2);
    CHECK(cert.verified);
    CHECK(cert.sum_cardinality == 1024);
    CHECK(cert.details.at("checkpoints") == Json::array({0, 1, 3, 10, 41}));

    // Depth past the certified horizon is refused, not guessed.
    CHECK_THROWS_AS(psp_decompose(cantor, 2, 50, PartitionSource::CheckpointBlocks, 2), hypothesis_error);
}

TEST_CASE("psp equality holds for arbitrary partitions of the positions") {
    HomogeneousIFS cantor = middle_third_cantor();
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int depth = 7;
        std::uniform_int_distribution<int> owner(0, 2);
        std::vector<std::vector<std::int64_t>> members(3);
        for (std::int64_t k = 1; k <= depth; ++k)
            members[static_cast<std::size_t>(owner(rng))].push_back(k);
        std::vector<PointCloud> clouds;
        for (const auto& part : members)
            clouds.push_back(
                subset_prefix(SubsetCantorSpec{cantor, IndexSet::explicit_prefix(part, depth), depth}));
        CHECK(minkowski_sum(clouds).points == prefix_points(cantor, depth).points);
    }
}

TEST_CASE("pdsp containment for the middle-third system") {
    HomogeneousIFS cantor = middle_third_cantor();
    DecompositionCertificate cert = pdsp_decompose(cantor, 2, 4);
    CHECK(cert.verified);
    CHECK(cert.details.at("sub_prefix_relation_verified") == Json(true));

    // S_1 = {2,4}: hand enumeration of the free positions 2 and 4.
    PointCloud first = subset_prefix(SubsetCantorSpec{cantor, IndexSet::shifted_multiples(2, 1), 4});
    CHECK(first.points == pts1({0, Rational(2, 81), Rational(2, 9), Rational(2, 9) + Rational(2, 81)}));

    // Index shift: (rho O) applied to the S_1 prefix at depth 4 equals the
    // S_2 prefix at depth 5.
    PointCloud second = subset_prefix(SubsetCantorSpec{cantor, IndexSet::shifted_multiples(2, 2), 5});
    std::vector<Point> scaled;
    for (const auto& p : first.points) scaled.push_back(cantor.linear() * p);
    CHECK(canonicalize(std::move(scaled)) == second.points);

    // Sub-system dimension: log 2 / log 9.
    HomogeneousIFS sub(Rational(1, 9), OrthoMatrix::identity(1), cantor.digits(), true);
    CHECK(dbl(similarity_dimension(sub).value) == doctest::Approx(0.31547).epsilon(1e-4));
}

TEST_CASE("pdsp with more summands than depth degenerates to zero") {
    HomogeneousIFS cantor = middle_third_cantor();
    // Every class l*N + j - 1 starts past the depth, so every summand is {0}.
    DecompositionCertificate cert = pdsp_decompose(cantor, 5, 4);
    CHECK(cert.verified);
    CHECK(cert.sum_cardinality == 1);
}

TEST_CASE("address estimates") {
    HomogeneousIFS cantor = middle_third_cantor();
    BoxCountReport odd = address_boxdim_estimate(cantor, IndexSet::residue_class(2, 1), 10);
    CHECK(odd.count_exponent == 5);
    CHECK(dbl(odd.estimate) == doctest::Approx(0.5 * std::log(2.0) / std::log(3.0)).epsilon(1e-14));

    BoxCountReport full = address_boxdim_estimate(cantor, IndexSet::naturals(), 10);
    CHECK(dbl(full.estimate) == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-14));
    CHECK(dbl(full.estimate) <= dbl(similarity_dimension(cantor).value) + 1e-15);

    // Monotone in the index set.
    BoxCountReport sparse = address_boxdim_estimate(cantor, IndexSet::explicit_prefix({1, 2}, 10), 10);
    CHECK(dbl(sparse.estimate) <= dbl(odd.estimate));
    CHECK(dbl(odd.estimate) <= dbl(full.estimate));
}

TEST_CASE("grid box counts") {
    PointCloud small = cloud_of(pts1({0, Rational(2, 9), Rational(2, 3), Rational(8, 9)}));
    BoxCountReport r = grid_box_count(small, Rational(1, 9));
    CHECK(r.count == 4);
    CHECK(r.grid_ball_constant == 3);

    CHECK(grid_box_count(cloud_of(pts1({0})), Rational(1, 7)).count == 1);

    PointCloud depth6 = prefix_points(middle_third_cantor(), 6);
    CHECK(grid_box_count(depth6, Rational(1, 729)).count == 64);

    // Antitone in delta.
    std::int64_t previous = -1;
    for (const Rational& delta : {Rational(1, 3), Rational(1, 9), Rational(1, 27)}) {
        std::int64_t count = grid_box_count(depth6, delta).count.convert_to<std::int64_t>();
        if (previous >= 0) CHECK(count >= previous);
        previous = count;
    }
    CHECK(grid_box_count(depth6, Rational(1, 729)).point_count == 64);
}

TEST_CASE("covering inequality shadow at prefix level") {
    HomogeneousIFS cantor = middle_third_cantor();
    IndexSet odds = IndexSet::residue_class(2, 1);
    for (int n : {4, 6, 8}) {
        Rational delta(1);
        for (int i = 0; i < n; ++i) delta *= cantor.ratio();
        std::int64_t k_count = grid_box_count(prefix_points(cantor, n), delta).count.convert_to<std::int64_t>();
        PointCloud ks = subset_prefix(SubsetCantorSpec{cantor, odds, n});
        BoxCountReport ks_report = grid_box_count(ks, delta);
        std::int64_t ks_count = ks_report.count.convert_to<std::int64_t>();
        std::int64_t constant = ks_report.grid_ball_constant.convert_to<std::int64_t>();
        std::int64_t forced = n - odds.prefix_count(n);
        CHECK(k_count <= (std::int64_t{1} << forced) * ks_count * constant);
    }
}

TEST_CASE("homogenize the middle-third pair") {
    std::vector<AffineMap> maps{AffineMap(Rational(1, 3), OrthoMatrix::identity(1), pt1(0)),
                                AffineMap(Rational(1, 3), OrthoMatrix::identity(1), pt1(Rational(2, 3)))};
    HomogenizeResult result = homogenize(maps);
    CHECK(result.ifs.ratio() == Rational(1, 9));
    CHECK(result.ifs.digits().points() == pts1({Rational(2, 9), Rational(2, 3)}));
    CHECK_FALSE(result.squared_first);
    CHECK(result.dictionary[0].str() == "12");
    CHECK(result.dictionary[1].str() == "21");

    HomogenizeCheck check = homogenize_containment_check(result, maps, 3);
    CHECK(check.substitution_exact);
    CHECK(check.subset_of_original);
    CHECK(check.original_depth == 6);
}

TEST_CASE("homogenize the planar quarter-turn pair") {
    OrthoMatrix r90 = OrthoMatrix::rotation2(Rational(0), Rational(1));
    std::vector<AffineMap> maps{AffineMap(Rational(1, 2), r90, pt2(0, 0)),
                                AffineMap(Rational(1, 2), r90, pt2(1, 0))};
    HomogenizeResult result = homogenize(maps);
    CHECK(result.ifs.ratio() == Rational(1, 16));
    CHECK(result.ifs.ortho() == OrthoMatrix::identity(2));
    CHECK(result.squared_first);
    std::vector<Point> expected{pt2(Rational(-1, 4), Rational(-1, 8)), pt2(1, Rational(1, 2))};
    CHECK(result.ifs.digits().points() == expected);
    CHECK(result.dictionary[0].str() == "1122");
    CHECK(result.dictionary[1].str() == "2211");

    HomogenizeCheck check = homogenize_containment_check(result, maps, 3);
    CHECK(check.substitution_exact);
    CHECK(check.subset_of_original);
    CHECK(check.original_depth == 12);
}

TEST_CASE("homogenize handles opposite reflections on the line") {
    std::vector<AffineMap> maps{
        AffineMap(Rational(1, 2), OrthoMatrix(Matrix(1, {Rational(-1)})), pt1(0)),
        AffineMap(Rational(1, 3), OrthoMatrix::identity(1), pt1(1))};
    HomogenizeResult result = homogenize(maps);
    CHECK(result.squared_first);
    CHECK(result.ifs.ratio() == Rational(1, 36));
    CHECK(result.ifs.ortho() == OrthoMatrix::identity(1));
    HomogenizeCheck check = homogenize_containment_check(result, maps, 2);
    CHECK(check.substitution_exact);
    CHECK(check.subset_of_original);
}

TEST_CASE("homogenize hypothesis failures") {
    std::vector<AffineMap> same{AffineMap(Rational(1, 2), OrthoMatrix::identity(1), pt1(0)),
                                AffineMap(Rational(1, 2), OrthoMatrix::identity(1), pt1(0))};
    CHECK_THROWS_AS(homogenize(same), hypothesis_error);

    std::vector<AffineMap> tall{AffineMap(Rational(1, 2), OrthoMatrix::identity(3), Point::zero(3)),
                                AffineMap(Rational(1, 2), OrthoMatrix::identity(3),
                                          Point(Point::Coords{Rational(1), Rational(0), Rational(0)}))};
    CHECK_THROWS_AS(homogenize(tall), std::invalid_argument);

    CHECK_THROWS_AS(homogenize({same.front()}), std::invalid_argument);
}

TEST_CASE("word evaluation over an inhomogeneous family") {
    std::vector<AffineMap> maps{AffineMap(Rational(1, 2), OrthoMatrix::identity(1), pt1(0)),
                                AffineMap(Rational(1, 3), OrthoMatrix::identity(1), pt1(1))};
    // (f1 o f2)(0) = f1(1) = 1/2.
    CHECK(word_point(maps, Word{{1, 2}}) == pt1(Rational(1, 2)));
    CHECK(word_point(maps, Word{{2, 1}}) == pt1(1));
    CHECK_THROWS_AS(word_point(maps, Word{{3}}), std::invalid_argument);
}
