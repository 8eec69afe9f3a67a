#pragma once

/// Subsets of N = {1,2,3,...} with exact prefix counting, the greedy
/// checkpoint scan for density targets, and the checkpoint-block partition
/// that splits a set into l pieces of the same upper density.
///
/// Convention fixed globally: N starts at 1. Queries past a set's declared
/// horizon are errors, never guesses.

#include "fsum/json.hpp"
#include "fsum/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fsum {

class IndexSet {
public:
    enum class Kind { ResidueClass, Blocks, Explicit };

    /// {n >= 1 : n = residue (mod modulus)}; infinite horizon.
    static IndexSet residue_class(std::int64_t modulus, std::int64_t residue);
    /// The arithmetic progression first, first+step, ...; infinite horizon.
    static IndexSet progression(std::int64_t first, std::int64_t step);
    /// {l*k + j - 1 : k >= 1} = the residue class j-1 started at l+j-1.
    static IndexSet shifted_multiples(std::int64_t ell, std::int64_t j);
    static IndexSet naturals();
    /// Disjoint sorted closed intervals; horizon defaults to the last block end.
    static IndexSet blocks(std::vector<std::pair<std::int64_t, std::int64_t>> intervals,
                           std::optional<std::int64_t> horizon = std::nullopt);
    static IndexSet explicit_prefix(std::vector<std::int64_t> members,
                                    std::optional<std::int64_t> horizon = std::nullopt);

    Kind kind() const { return kind_; }
    /// nullopt means infinite.
    std::optional<std::int64_t> horizon() const { return horizon_; }

    bool contains(std::int64_t n) const;
    /// #(S cap [1,n]), exact.
    std::int64_t prefix_count(std::int64_t n) const;
    /// #(S cap [lo,hi]).
    std::int64_t count_range(std::int64_t lo, std::int64_t hi) const;
    /// Members in [lo,hi], ascending; throws budget_error past `cap` entries.
    std::vector<std::int64_t> members_in(std::int64_t lo, std::int64_t hi, std::int64_t cap = 1'000'000) const;

    std::int64_t modulus() const { return step_; }
    std::int64_t first_member() const { return first_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& block_list() const { return blocks_; }
    const std::vector<std::int64_t>& member_list() const { return members_; }

    /// CLI literal: "mod:l,r" | "blocks:a-b,c-d[@H]" | "list:1,4,10[@H]".
    std::string literal() const;

private:
    IndexSet() = default;
    void check_horizon(std::int64_t n) const;

    Kind kind_ = Kind::ResidueClass;
    std::optional<std::int64_t> horizon_;
    // ResidueClass as the arithmetic progression first, first+step, ...
    std::int64_t first_ = 1, step_ = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks_;
    std::vector<std::int64_t> members_;
};

IndexSet parse_index_set(const std::string& literal);
Json index_set_to_json(const IndexSet& s);

/// Strictly increasing n_0 = 0 < n_1 < ... < n_K for a target density beta:
/// every segment satisfies #(S cap [n_{k-1}+1, n_k]) > (beta - 1/k) * n_k,
/// and each n_k is the smallest integer past n_{k-1} that does.
struct Checkpoints {
    Rational beta{1};
    std::vector<std::int64_t> bounds;         // n_0 = 0 first
    std::vector<std::int64_t> segment_counts; // per k >= 1

    int rounds() const { return static_cast<int>(bounds.size()) - 1; }
};

/// Minimal greedy scan. Probes advance by certified jumps (an integer n
/// below the jump target provably fails the segment inequality), so the
/// located n_k is minimal without visiting every integer.
Checkpoints greedy_checkpoints(const IndexSet& s, const Rational& beta, int count,
                               std::int64_t scan_limit = 4'000'000'000LL);

/// Segment inequality for one k, recomputed from scratch.
bool checkpoint_inequality_holds(const IndexSet& s, const Rational& beta, int k, std::int64_t n_prev,
                                 std::int64_t n);

struct LimsupPartition {
    std::vector<IndexSet> parts;
    Checkpoints checkpoints;
    Rational beta{1};
    /// For part j (0-based), the checkpoints n_{kl+j+1} it owns and the
    /// exact member counts of the part at those checkpoints.
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> part_checkpoints;
};

/// Splits S cap [1, n_{Kl}] into l disjoint pieces along checkpoint blocks:
/// part j takes S cap [n_{kl+j-1}+1, n_{kl+j}] for k = 0..K-1. Each part's
/// count at its own checkpoints beats (beta - 1/(kl+j)) * n_{kl+j}.
LimsupPartition partition_limsup(const IndexSet& s, int ell, int rounds, const Rational& beta,
                                 std::int64_t scan_limit = 4'000'000'000LL);

/// S_j = {l*k + j - 1 : k >= 1} for j = 1..l; pairwise disjoint with union
/// {l, l+1, l+2, ...}; indices 1..l-1 stay uncovered.
std::vector<IndexSet> residue_partition(int ell);

/// The l full residue classes {n = j (mod l)}, j = 1..l; they cover N.
std::vector<IndexSet> covering_residue_classes(int ell);

} // namespace fsum
