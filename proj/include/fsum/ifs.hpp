#pragma once

/// Homogeneous iterated function systems over exact rationals: digit sets,
/// the difference-set system, depth-n attractor prefixes, and a three-valued
/// strong-separation checker.

#include "fsum/geometry.hpp"
#include "fsum/json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fsum {

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

/// Canonically lex-sorted, deduplicated digit list with at least 2 digits.
class DigitSet {
public:
    explicit DigitSet(std::vector<Point> digits);

    int dimension() const { return digits_.front().dimension(); }
    int size() const { return static_cast<int>(digits_.size()); }
    const Point& at(int i) const { return digits_[static_cast<std::size_t>(i)]; }
    const std::vector<Point>& points() const { return digits_; }
    bool contains(const Point& p) const;

    bool operator==(const DigitSet& other) const = default;

private:
    std::vector<Point> digits_;
};

/// {a - b : a, b in D}, canonicalized. Contains the zero vector and is
/// symmetric under negation.
DigitSet difference_digits(const DigitSet& digits);

/// The system { x |-> ratio*O*x + b : b in D }. Digits are indexed 1..m in
/// lex order. When normalized_zero_digit is set, digit #1 must be the zero
/// vector (required by the subset-attractor constructions).
class HomogeneousIFS {
public:
    HomogeneousIFS(Rational ratio, OrthoMatrix ortho, DigitSet digits, bool normalized_zero_digit = false);

    int dimension() const { return digits_.dimension(); }
    int digit_count() const { return digits_.size(); }
    const Rational& ratio() const { return linear_.ratio; }
    const OrthoMatrix& ortho() const { return linear_.ortho; }
    const LinearPart& linear() const { return linear_; }
    const DigitSet& digits() const { return digits_; }
    bool normalized_zero_digit() const { return normalized_zero_digit_; }

    /// Map for the 1-based digit index.
    AffineMap map(int letter) const;

    bool operator==(const HomogeneousIFS& other) const = default;

private:
    LinearPart linear_;
    DigitSet digits_;
    bool normalized_zero_digit_;
};

/// Same contraction and rotation over the digit set D - D; generates the
/// difference set of the attractor.
HomogeneousIFS difference_ifs(const HomogeneousIFS& ifs);

/// Finite letter sequence over {1..m}.
struct Word {
    std::vector<int> letters;

    int depth() const { return static_cast<int>(letters.size()); }
    bool valid_for(int digit_count) const;
    std::string str() const;
};

/// Canonical finite depth-n approximation of an attractor (or of a subset
/// attractor). Sorted, duplicate-free, reproducible bit-for-bit.
struct PointCloud {
    int depth = 0;
    std::vector<Point> points;
    std::string description;
    /// Exact bound: every attractor point lies within sqrt(tail_bound_sq)
    /// of some cloud point (squared to stay rational).
    Rational tail_bound_sq{0};

    int dimension() const { return points.front().dimension(); }
    std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
    bool contains(const Point& p) const;
    bool subset_of(const PointCloud& other) const;
    bool operator==(const PointCloud& other) const { return depth == other.depth && points == other.points; }
};

/// Sorts and removes duplicates under the lexicographic order.
std::vector<Point> canonicalize(std::vector<Point> points);

/// Depth-n truncations of all codings:
/// { sum_{k=1..n} (ratio*O)^{k-1} b_{i_k} : i_k in {1..m} }.
PointCloud prefix_points(const HomogeneousIFS& ifs, int depth, std::int64_t cap = kDefaultEnumerationCap);

enum class Separation { Holds, Fails, UnknownAtDepth };

std::string to_string(Separation s);

/// Exact witness for a separation verdict.
///  - Holds: every pairwise difference walk dies by holds_depth; bound data kept.
///  - Fails: two codings with distinct first letters evaluating to the same
///    exact point (eventually periodic; prefix + cycle recorded per side).
struct SeparationVerdict {
    Separation status = Separation::UnknownAtDepth;
    int probe_depth = 0;

    // Holds
    int holds_depth = 0;
    Rational bound_sq{0};
    std::optional<Rational> min_rejected_norm_sq;

    // Fails
    Word left_prefix, left_cycle;
    Word right_prefix, right_cycle;
    std::optional<Point> common_point;

    std::int64_t states_explored = 0;
};

/// Three-valued strong-separation check via the exact difference-walk state
/// graph. States s are pruned once |s|^2 exceeds the squared diameter bound
/// of the first-level cylinder covers; an empty level certifies Holds, a
/// reachable cycle certifies Fails with an exact common point, and budget
/// exhaustion reports UnknownAtDepth.
SeparationVerdict ssc_check(const HomogeneousIFS& ifs, int probe_depth, std::int64_t state_cap = 20'000);

struct SimilarityDimension {
    int digit_count = 0;
    Rational ratio{0};
    Float value{0};
};

/// log(m) / (-log ratio); formal value, no separation hypothesis attached.
SimilarityDimension similarity_dimension(const HomogeneousIFS& ifs);

/// Per-position digit sets D cap (D + t_k) for k = 1..horizon. An empty
/// position certifies that the translated attractor misses the original
/// (under strong separation of the difference system).
std::vector<std::vector<Point>> translation_intersection_digits(const DigitSet& digits,
                                                                const std::vector<Point>& translation_digits);

/// IFS description file schema shared by all subcommands:
/// {dimension, ratio "p/q", ortho row-major rationals, digits, normalized_zero_digit}.
HomogeneousIFS ifs_from_json(const Json& j);
Json ifs_to_json(const HomogeneousIFS& ifs);
HomogeneousIFS load_ifs(const std::string& path);

} // namespace fsum
