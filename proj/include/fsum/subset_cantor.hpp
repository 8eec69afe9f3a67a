#pragma once

/// Subset attractors K_S (free digit choice on S, forced zero digit off S),
/// exact Minkowski sums, sumset decomposition certificates, box-dimension
/// estimators, and homogenization of inhomogeneous map families.

#include "fsum/ifs.hpp"
#include "fsum/index_set.hpp"
#include "fsum/json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fsum {

/// Depth-n truncation data for K_S. The system must carry the zero digit
/// first (digit #1) so that forced positions contribute nothing.
struct SubsetCantorSpec {
    HomogeneousIFS ifs;
    IndexSet index_set;
    int depth = 0;
};

/// Exact depth-n truncation of K_S; cardinality m^{#(S cap [1,n])} under
/// strong separation.
PointCloud subset_prefix(const SubsetCantorSpec& spec, std::int64_t cap = kDefaultEnumerationCap);

/// Exact elementwise sumset of the clouds, canonicalized. The product of
/// cardinalities is capped up front.
PointCloud minkowski_sum(const std::vector<PointCloud>& clouds, std::int64_t cap = kDefaultEnumerationCap);

enum class DecompositionKind { PspEquality, PdspContainment, HspSumContainment };

std::string to_string(DecompositionKind k);

/// Machine-checkable verdict for one sumset decomposition instance; the
/// verdict is recomputed from point clouds, never cached across depths.
struct DecompositionCertificate {
    DecompositionKind kind = DecompositionKind::PspEquality;
    int ell = 0;
    int depth = 0;
    std::vector<std::string> part_descriptions;
    std::vector<std::int64_t> part_cardinalities;
    std::int64_t sum_cardinality = 0;
    std::int64_t target_cardinality = 0;
    bool verified = false;
    Json details = Json::object();
};

enum class PartitionSource { CoveringResidues, CheckpointBlocks };

/// Verifies exactly that the l-fold Minkowski sum of the K_{S_j} prefixes
/// reassembles the full attractor prefix, for a partition of [1, depth]
/// into residue classes or checkpoint blocks. Density data per part is
/// attached to the certificate.
DecompositionCertificate psp_decompose(const HomogeneousIFS& ifs, int ell, int depth,
                                       PartitionSource source, int rounds = 2,
                                       const Rational& beta = Rational(1),
                                       std::int64_t cap = kDefaultEnumerationCap);

/// Verifies the sumset containment for the shifted classes S_j = lN + j - 1
/// (positions 1..l-1 forced to the zero digit), together with the scaling
/// relations between the parts and the positive-dimension sub-attractor.
DecompositionCertificate pdsp_decompose(const HomogeneousIFS& ifs, int ell, int depth,
                                        std::int64_t cap = kDefaultEnumerationCap);

/// Covering-count report at one scale. Address counts stay symbolic
/// (base^exponent) because exponents grow far past integer range.
struct BoxCountReport {
    std::string estimator;     // "cylinder-address" or "grid"
    Rational delta_base{0};    // scale = delta_base^delta_exponent
    std::int64_t delta_exponent = 1;
    std::int64_t count_base = 0;     // address: m
    std::int64_t count_exponent = 0; // address: #(S cap [1,n]); grid: 1
    bool count_materialized = false;
    Int count{0};
    std::int64_t point_count = 0; // grid: size of the counted cloud
    Float estimate{0};
    Int grid_ball_constant{0}; // (2 ceil(sqrt(d)) + 1)^d
};

/// Cylinder-address count: m^{#(S cap [1,n])} depth-n cylinders meet the
/// subset coding space; estimate #(S cap [1,n]) log m / (-n log rho).
BoxCountReport address_boxdim_estimate(const HomogeneousIFS& ifs, const IndexSet& s, int depth);

/// Occupancy count of half-open axis-aligned cells [i*delta, (i+1)*delta)^d.
/// Differs from the closed-ball covering number by at most the reported
/// constant factor.
BoxCountReport grid_box_count(const PointCloud& cloud, const Rational& delta);

/// Output of homogenization: a two-map homogeneous system whose attractor
/// sits inside the attractor of the original family, plus the words of
/// original letters that each new letter expands to.
struct HomogenizeResult {
    HomogeneousIFS ifs;
    std::vector<Word> dictionary; // per output letter, 1-based original letters
    int pair_first = 0;           // chosen original maps (1-based)
    int pair_second = 0;
    bool squared_first = false;   // composed f_i o f_i before pairing
};

/// Picks the first two maps with distinct fixed points. On the line the
/// output is {f_i o f_j, f_j o f_i} (ratio rho_i rho_j); with opposite
/// reflections, and always in the plane, each map is composed with itself
/// first so the linear parts match exactly.
HomogenizeResult homogenize(const std::vector<AffineMap>& maps);

struct HomogenizeCheck {
    int output_depth = 0;
    int original_depth = 0;
    bool substitution_exact = false;  // word-by-word evaluation matches
    bool subset_of_original = false;  // output prefix inside the original enumeration
};

/// Word-substitution containment: every depth-k prefix point of the output
/// system equals the original family's evaluation of the substituted word,
/// and the whole output prefix embeds in the original depth-kL enumeration.
HomogenizeCheck homogenize_containment_check(const HomogenizeResult& result,
                                             const std::vector<AffineMap>& original, int output_depth,
                                             std::int64_t cap = kDefaultEnumerationCap);

/// (f_{w_1} o ... o f_{w_n})(0) for an inhomogeneous family.
Point word_point(const std::vector<AffineMap>& maps, const Word& word);

} // namespace fsum
