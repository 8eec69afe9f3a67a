#pragma once

/// The factorial-branching Moran construction: per-level branching
/// m_k = (k+1)!, scaling denominators N_k = floor(m_k^{1/alpha}), the
/// subsets B_l whose l-fold sumset stays inside the set, and prefix
/// dimension-ratio estimates s_k converging to alpha from above.

#include "fsum/subset_cantor.hpp"

#include <optional>
#include <vector>

namespace fsum {

struct MoranParams {
    Rational alpha{0};
    int k_max = 0;
    std::optional<int> ell;
    std::vector<Int> m;       // m_k = (k+1)!, 1-based level k stored at k-1
    std::vector<Int> n;       // N_k = floor(m_k^{1/alpha})
    std::vector<Int> m_prime; // m_k / l for k > l, else 0

    const Int& m_at(int k) const { return m[static_cast<std::size_t>(k - 1)]; }
    const Int& n_at(int k) const { return n[static_cast<std::size_t>(k - 1)]; }
    const Int& m_prime_at(int k) const { return m_prime[static_cast<std::size_t>(k - 1)]; }
};

/// Exact integer sequences up to k_max. alpha = p/q rational in (0,1);
/// N_k is computed as floor((m_k^q)^(1/p)) by exact integer root
/// extraction. Rejects parameters that break m_k < N_k.
MoranParams ev_params(const Rational& alpha, int k_max, std::optional<int> ell = std::nullopt);

/// Exact depth-n prefix of the set: all sums
/// sum_{k<=n} d_k / (N_1...N_k) with d_k in {0..m_k-1}.
PointCloud ev_prefix(const MoranParams& params, int depth, std::int64_t cap = kDefaultEnumerationCap);

/// Depth-n prefix of B_l: digits forced to 0 for k <= l and bounded by
/// m'_k - 1 beyond.
PointCloud b_ell_prefix(const MoranParams& params, int depth, std::int64_t cap = kDefaultEnumerationCap);

/// Certifies l*B_l inside the set, twice over: digitwise
/// l(m'_k - 1) <= m_k - 1 for all l < k <= k_max (with the no-carry bound
/// l(m'_k - 1) < N_k), and pointwise at the given depth by an exact l-fold
/// Minkowski sum compared against the digit-range enumeration and the
/// full prefix.
DecompositionCertificate b_ell_containment(const MoranParams& params, int depth,
                                           std::int64_t cap = kDefaultEnumerationCap);

/// Prefix ratio s_k = log(m_1...m_k) / log(N_1...N_k), with the bound
/// alpha <= s_k decided exactly on integers: (prod m)^q >= (prod N)^p.
struct MoranDimEstimate {
    int level = 0;
    Float value{0};
    bool lower_bound_certified = false; // s_k >= alpha, exact
    bool equals_alpha_exactly = false;  // (prod m)^q == (prod N)^p
};

MoranDimEstimate moran_dim_estimate(const MoranParams& params, int level);

} // namespace fsum
