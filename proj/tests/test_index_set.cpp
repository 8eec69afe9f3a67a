#include "fsum/index_set.hpp"
#include "fsum/errors.hpp"

#include <doctest.h>

using namespace fsum;

namespace {

// Reference scan: advance one integer at a time. Slow but independent of the
// jump logic in greedy_checkpoints.
std::vector<std::int64_t> scan_checkpoints(const IndexSet& s, const Rational& beta, int count,
                                           std::int64_t give_up = 200'000) {
    std::vector<std::int64_t> bounds{0};
    for (int k = 1; k <= count; ++k) {
        std::int64_t n = bounds.back() + 1;
        while (true) {
            std::int64_t c = s.count_range(bounds.back() + 1, n);
            if (Rational(c) > (beta - Rational(1, k)) * Rational(n)) break;
            ++n;
            REQUIRE(n < give_up);
        }
        bounds.push_back(n);
    }
    return bounds;
}

} // namespace

TEST_CASE("prefix counts") {
    IndexSet odds = IndexSet::residue_class(2, 1);
    CHECK(odds.prefix_count(10) == 5);
    CHECK(odds.contains(7));
    CHECK_FALSE(odds.contains(8));

    CHECK(IndexSet::naturals().prefix_count(7) == 7);

    IndexSet blocks = IndexSet::blocks({{2, 3}, {11, 41}});
    CHECK(blocks.prefix_count(20) == 12);
    CHECK(blocks.count_range(11, 20) == 10);
    CHECK(blocks.contains(3));
    CHECK_FALSE(blocks.contains(4));
}

TEST_CASE("horizon queries are errors, not guesses") {
    IndexSet blocks = IndexSet::blocks({{2, 3}}, 10);
    CHECK(blocks.prefix_count(10) == 2);
    CHECK_THROWS_AS(blocks.prefix_count(11), horizon_error);
    CHECK_THROWS_AS(blocks.contains(11), horizon_error);

    IndexSet list = IndexSet::explicit_prefix({1, 4, 10}, 20);
    CHECK(list.prefix_count(20) == 3);
    CHECK_THROWS_AS(list.prefix_count(21), horizon_error);

    IndexSet infinite = IndexSet::residue_class(2, 1);
    CHECK(infinite.prefix_count(1'000'000'007LL) == 500'000'004LL);
}

TEST_CASE("index-set literals parse and round-trip") {
    CHECK(parse_index_set("mod:2,1").prefix_count(10) == 5);
    CHECK(parse_index_set("blocks:2-3,11-41").prefix_count(20) == 12);
    CHECK(parse_index_set("list:1,4,10@20").prefix_count(20) == 3);
    CHECK(parse_index_set("list:1,4,10").horizon() == 10);

    for (const std::string& lit :
         {"mod:2,1", "mod:3,0", "blocks:2-3,11-41", "list:1,4,10@20", "mod:2,0,from:4"}) {
        IndexSet s = parse_index_set(lit);
        CHECK(parse_index_set(s.literal()).literal() == s.literal());
    }
    CHECK(parse_index_set("mod:2,0,from:4").prefix_count(10) == 4); // {4,6,8,10}

    CHECK_THROWS_AS(parse_index_set("junk"), parse_error);
    CHECK_THROWS_AS(parse_index_set("mod:2"), parse_error);
    CHECK_THROWS_AS(parse_index_set("blocks:5-2"), std::invalid_argument);
}

TEST_CASE("greedy checkpoints on the naturals") {
    Checkpoints cps = greedy_checkpoints(IndexSet::naturals(), Rational(1), 5);
    CHECK(cps.bounds == std::vector<std::int64_t>{0, 1, 3, 10, 41, 206});
    // Recurrence n_k = k * n_{k-1} + 1 for the full set.
    for (int k = 2; k <= 5; ++k)
        CHECK(cps.bounds[static_cast<std::size_t>(k)] == k * cps.bounds[static_cast<std::size_t>(k - 1)] + 1);
}

TEST_CASE("greedy checkpoints match the linear-scan oracle") {
    struct Case {
        IndexSet set;
        Rational beta;
        int rounds;
    };
    std::vector<Case> cases;
    cases.push_back({IndexSet::naturals(), Rational(1), 6});
    cases.push_back({IndexSet::residue_class(2, 1), Rational(1, 2), 5});
    cases.push_back({IndexSet::residue_class(3, 1), Rational(1, 3), 4});
    cases.push_back({IndexSet::blocks({{1, 100}, {200, 100000}}, 200000), Rational(1, 2), 4});
    for (const auto& c : cases) {
        Checkpoints fast = greedy_checkpoints(c.set, c.beta, c.rounds);
        CHECK(fast.bounds == scan_checkpoints(c.set, c.beta, c.rounds));
    }

    // The example value fixed by the oracle: odds with beta = 1/2 put the
    // second checkpoint at 3, the first odd number past position 1.
    Checkpoints odds = greedy_checkpoints(IndexSet::residue_class(2, 1), Rational(1, 2), 2);
    CHECK(odds.bounds == std::vector<std::int64_t>{0, 1, 3});
}

TEST_CASE("checkpoint inequality recounts and minimality") {
    Checkpoints cps = greedy_checkpoints(IndexSet::naturals(), Rational(1), 12);
    for (int k = 1; k <= 12; ++k) {
        std::int64_t prev = cps.bounds[static_cast<std::size_t>(k - 1)];
        std::int64_t n_k = cps.bounds[static_cast<std::size_t>(k)];
        CHECK(checkpoint_inequality_holds(IndexSet::naturals(), Rational(1), k, prev, n_k));
        if (n_k > prev + 1)
            CHECK_FALSE(checkpoint_inequality_holds(IndexSet::naturals(), Rational(1), k, prev, n_k - 1));
    }
}

TEST_CASE("checkpoint scan reports horizon exhaustion") {
    IndexSet blocks = IndexSet::blocks({{1, 4}}, 100);
    CHECK_THROWS_AS(greedy_checkpoints(blocks, Rational(1), 4), horizon_error);
}

TEST_CASE("checkpoint partition of the naturals") {
    LimsupPartition partition = partition_limsup(IndexSet::naturals(), 2, 2, Rational(1));
    CHECK(partition.checkpoints.bounds == std::vector<std::int64_t>{0, 1, 3, 10, 41});
    REQUIRE(partition.parts.size() == 2);
    CHECK(partition.parts[0].block_list() ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {4, 10}});
    CHECK(partition.parts[1].block_list() ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}, {11, 41}});

    LimsupPartition three = partition_limsup(IndexSet::naturals(), 3, 1, Rational(1));
    CHECK(three.parts[0].block_list() == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}});
    CHECK(three.parts[1].block_list() == std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}});
    CHECK(three.parts[2].block_list() == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 10}});
}

TEST_CASE("checkpoint partition is a partition with certified densities") {
    for (int ell : {2, 3}) {
        for (int rounds : {1, 2}) {
            LimsupPartition partition = partition_limsup(IndexSet::naturals(), ell, rounds, Rational(1));
            std::int64_t covered = partition.checkpoints.bounds.back();
            for (std::int64_t n = 1; n <= covered; ++n) {
                int owners = 0;
                for (const auto& part : partition.parts) owners += part.contains(n) ? 1 : 0;
                CHECK(owners == 1);
            }
            // Each part beats the checkpoint threshold at its own checkpoints.
            for (std::size_t j = 0; j < partition.parts.size(); ++j)
                for (auto [cp, have] : partition.part_checkpoints[j]) {
                    std::int64_t index = 0;
                    for (std::size_t i = 1; i < partition.checkpoints.bounds.size(); ++i)
                        if (partition.checkpoints.bounds[i] == cp) index = static_cast<std::int64_t>(i);
                    CHECK(Rational(have) > (Rational(1) - Rational(1, index)) * Rational(cp));
                }
        }
    }
}

TEST_CASE("checkpoint partition of a sparse set uses explicit members") {
    IndexSet odds = IndexSet::residue_class(2, 1);
    LimsupPartition partition = partition_limsup(odds, 2, 1, Rational(1, 2));
    std::int64_t covered = partition.checkpoints.bounds.back();
    for (std::int64_t n = 1; n <= covered; ++n) {
        int owners = 0;
        for (const auto& part : partition.parts) owners += part.contains(n) ? 1 : 0;
        CHECK(owners == (odds.contains(n) ? 1 : 0));
    }
}

TEST_CASE("shifted residue partition") {
    std::vector<IndexSet> parts = residue_partition(2);
    CHECK(parts[0].first_member() == 2);
    CHECK(parts[0].contains(4));
    CHECK(parts[1].first_member() == 3);
    CHECK_FALSE(parts[0].contains(1));
    CHECK_FALSE(parts[1].contains(1)); // index 1 uncovered

    std::vector<IndexSet> three = residue_partition(3);
    CHECK(three[0].first_member() == 3);
    CHECK(three[1].first_member() == 4);
    CHECK(three[2].first_member() == 5);
    CHECK(three[0].contains(9));
    CHECK(three[1].contains(7));
    CHECK(three[2].contains(8));

    for (std::int64_t n = 1; n <= 500; ++n) {
        int owners = 0;
        for (const auto& part : three) owners += part.contains(n) ? 1 : 0;
        CHECK(owners == (n >= 3 ? 1 : 0)); // union is everything from l on
    }

    CHECK_THROWS_AS(residue_partition(1), std::invalid_argument);
}

TEST_CASE("covering residue classes cover everything") {
    for (int ell : {2, 3, 5}) {
        std::vector<IndexSet> classes = covering_residue_classes(ell);
        for (std::int64_t n = 1; n <= 400; ++n) {
            int owners = 0;
            for (const auto& part : classes) owners += part.contains(n) ? 1 : 0;
            CHECK(owners == 1);
        }
    }
}

TEST_CASE("shifted residue classes approach density 1/l") {
    for (int ell : {2, 3}) {
        std::vector<IndexSet> parts = residue_partition(ell);
        for (const auto& part : parts)
            for (std::int64_t n = 1; n <= 1'000'000; n += (n < 100 ? 1 : 997)) {
                std::int64_t count = part.prefix_count(n);
                CHECK(std::abs(count * ell - n) <= ell * ell); // |count/n - 1/l| <= l/n
            }
    }
}

TEST_CASE("member enumeration honors its cap") {
    IndexSet naturals = IndexSet::naturals();
    CHECK(naturals.members_in(3, 6) == std::vector<std::int64_t>{3, 4, 5, 6});
    CHECK_THROWS_AS(naturals.members_in(1, 1'000'000'000LL, 1000), budget_error);
}
