#pragma once

/// Digit-translation combinatorics: the intersection-cardinality bound with
/// its brute-force oracle, the gamma/beta machinery behind the HSP failure
/// certificate, coding-pair dimension bounds, and the one-parameter family
/// E_{rho,N} of certified HSP-2 failures.

#include "fsum/ifs.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fsum {

/// Exact record for #( intersection over j of (A + t_j) ) <= #A + 1 - l.
/// The bound is a theorem; `satisfied` can only be false if the
/// implementation itself is broken, and the checked entry point aborts
/// rather than return such a report.
struct IntersectionReport {
    std::vector<Point> input_set;
    std::vector<Point> translations;
    std::vector<Point> intersection;
    std::int64_t cardinality = 0;
    std::int64_t bound = 0;
    bool satisfied = false;
};

/// Requires #A >= 2, pairwise distinct translations, 1 <= #T <= #A + 1.
/// Throws std::logic_error if the theorem bound were ever violated.
IntersectionReport translate_intersection(const std::vector<Point>& a, const std::vector<Point>& t);

struct ExhaustiveBoundReport {
    std::int64_t subsets_enumerated = 0;
    std::int64_t cases_checked = 0;
    std::int64_t violations = 0;
    int max_size = 0;
    int dimension = 0;
    int coordinate_range = 0;
};

/// Enumerates every A in {0..coordinate_range}^dimension with
/// 2 <= #A <= max_size and every distinct translation tuple drawn from
/// (A-A) union ((A-A) + (1/2,...,1/2)) with 1 <= l <= #A + 1, recomputing
/// the intersection bound for each. Zero violations expected.
ExhaustiveBoundReport intersection_bound_exhaustive(int max_size, int dimension, int coordinate_range,
                                                    std::int64_t case_budget = 100'000'000);

/// gamma = max{ log m + log(#D + 1 - m) : 1 <= m <= #D }, with the
/// maximizing splits and the exact integer max product. The strictness
/// gamma < 2 log #D is decided symbolically: max_product < (#D)^2.
struct GammaValue {
    int digit_count = 0;
    std::int64_t max_product = 0;
    std::vector<int> argmax;
    Float gamma{0};
    bool strict = false;
};

GammaValue gamma_of(int digit_count);

/// Certificate data for the dimension-sum bound
/// dim K_1 + dim K_2 <= 2 beta < 2 dim K, valid when the difference system
/// satisfies strong separation.
struct HspCertificate {
    HomogeneousIFS ifs;
    /// Lex-min digit subtracted so the zero digit convention holds; both
    /// original and normalized digit coordinates are reported.
    std::optional<Point> normalization_shift;
    std::vector<Point> normalized_digits;
    GammaValue gamma;
    Float beta{0};
    Float dim{0};
    bool strict = false;
    SeparationVerdict psi_ssc;
    /// #D = 2 sharpening: dim K_1 + dim K_2 <= dim K.
    bool sharpened_two_digit = false;
    bool certified = false;
};

HspCertificate hsp_beta(const HomogeneousIFS& ifs, int probe_depth = 8, std::int64_t state_cap = 20'000);

/// Per-position translation digit sets Lambda_j (zero digit always present)
/// together with m_j = #( intersection over b in Lambda_j of (D + b) ).
struct PerPositionDigits {
    std::vector<std::vector<Point>> lambda;
    std::vector<std::int64_t> intersection_counts;

    int horizon() const { return static_cast<int>(lambda.size()); }
};

/// Validates Lambda_j subset of D-D, 0 in Lambda_j, and recomputes every
/// m_j; aborts if m_j + #Lambda_j ever exceeded #D + 1.
PerPositionDigits make_per_position_digits(const DigitSet& digits, std::vector<std::vector<Point>> lambda);

/// Finite-horizon value sum_j (log m_j + log #Lambda_j) / (-k log rho).
/// Not finite when some position has empty intersection (the second summand
/// set is forced empty).
struct CodingPairBound {
    int horizon = 0;
    bool finite = true;
    Float value{0};
};

CodingPairBound coding_pair_bound(const HomogeneousIFS& ifs, const PerPositionDigits& ppd);

/// E_{rho,N} digit set {(1-rho) j / N : j = 0..N} on the line; its HSP-2
/// failure is certified only under the hypothesis rho < 1/(2N+1).
struct EFamilyCertificate {
    Rational rho{0};
    int n_param = 0;
    bool hypothesis_met = false;
    DigitSet digits;
    std::optional<HspCertificate> hsp;
};

EFamilyCertificate e_rho_n_certificate(const Rational& rho, int N, int probe_depth = 8);

/// The digit set of E_{rho,N}.
DigitSet e_rho_n_digits(const Rational& rho, int N);

} // namespace fsum
