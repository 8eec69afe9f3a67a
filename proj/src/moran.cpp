#include "fsum/moran.hpp"
#include "fsum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fsum {

MoranParams ev_params(const Rational& alpha, int k_max, std::optional<int> ell) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("ev_params: alpha must lie in (0,1)");
    if (k_max < 1) throw std::invalid_argument("ev_params: k_max must be >= 1");
    if (ell && *ell < 2) throw std::invalid_argument("ev_params: l must be >= 2");

    MoranParams params;
    params.alpha = alpha;
    params.k_max = k_max;
    params.ell = ell;

    Int p = numerator(alpha);
    Int q = denominator(alpha);
    unsigned p_u = p.convert_to<unsigned>();
    unsigned q_u = q.convert_to<unsigned>();

    Int factorial(1);
    for (int k = 1; k <= k_max; ++k) {
        factorial *= k + 1; // m_k = (k+1)!
        params.m.push_back(factorial);
        Int n_k = iroot(pow(factorial, q_u), p_u);
        if (!(factorial < n_k)) {
            std::ostringstream os;
            os << "ev_params: m_k >= N_k at level " << k << " (alpha too close to 1)";
            throw hypothesis_error(os.str());
        }
        params.n.push_back(n_k);
        if (ell && k > *ell) {
            if (factorial % *ell != 0) throw std::logic_error("ev_params: l does not divide (k+1)!");
            params.m_prime.push_back(factorial / *ell);
        } else {
            params.m_prime.push_back(Int(0));
        }
    }
    return params;
}

namespace {

// Iterate from the deepest level inward: T <- { (d + t) / N_k }, where the
// digit bound per level is supplied by the caller.
PointCloud moran_cloud(const MoranParams& params, int depth, const std::vector<Int>& digit_counts,
                       std::int64_t cap, const std::string& description) {
    if (depth < 0) throw std::invalid_argument("moran prefix: negative depth");
    if (depth > params.k_max)
        throw horizon_error("moran prefix: depth " + std::to_string(depth) + " exceeds k_max " +
                            std::to_string(params.k_max));
    Int required(1);
    for (int k = 1; k <= depth; ++k) required *= std::max(digit_counts[static_cast<std::size_t>(k - 1)], Int(1));
    if (required > cap)
        throw budget_error("moran prefix enumeration cap exceeded", required.str(), std::to_string(cap));

    std::vector<Rational> values{Rational(0)};
    for (int k = depth; k >= 1; --k) {
        const Int& count = digit_counts[static_cast<std::size_t>(k - 1)];
        const Int& n_k = params.n_at(k);
        std::vector<Rational> next;
        if (count <= 1) {
            next.reserve(values.size());
            for (const auto& t : values) next.push_back(t / n_k);
        } else {
            next.reserve(values.size() * count.convert_to<std::size_t>());
            for (Int d(0); d < count; ++d)
                for (const auto& t : values) next.push_back((d + t) / n_k);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        values = std::move(next);
    }

    PointCloud cloud;
    cloud.depth = depth;
    cloud.points.reserve(values.size());
    for (auto& v : values) cloud.points.push_back(Point(Point::Coords{std::move(v)}));
    // Tail of the full series is below 1/(N_1...N_n) * sum m_{n+1}/N_{n+1}...,
    // itself below the last cell width; record that width as the bound.
    Rational width(1);
    for (int k = 1; k <= depth; ++k) width /= Rational(params.n_at(k));
    cloud.tail_bound_sq = width * width;
    cloud.description = description;
    return cloud;
}

std::vector<Int> full_digit_counts(const MoranParams& params, int depth) {
    std::vector<Int> counts;
    for (int k = 1; k <= depth; ++k) counts.push_back(params.m_at(k));
    return counts;
}

} // namespace

PointCloud ev_prefix(const MoranParams& params, int depth, std::int64_t cap) {
    std::ostringstream os;
    os << "moran prefix depth " << depth << ", alpha=" << format_rational(params.alpha);
    return moran_cloud(params, depth, full_digit_counts(params, depth), cap, os.str());
}

PointCloud b_ell_prefix(const MoranParams& params, int depth, std::int64_t cap) {
    if (!params.ell) throw std::invalid_argument("b_ell_prefix: params carry no l");
    std::vector<Int> counts;
    for (int k = 1; k <= depth; ++k)
        counts.push_back(k > *params.ell ? params.m_prime_at(k) : Int(1));
    std::ostringstream os;
    os << "B_" << *params.ell << " prefix depth " << depth << ", alpha=" << format_rational(params.alpha);
    return moran_cloud(params, depth, counts, cap, os.str());
}

DecompositionCertificate b_ell_containment(const MoranParams& params, int depth, std::int64_t cap) {
    if (!params.ell) throw std::invalid_argument("b_ell_containment: params carry no l");
    const int ell = *params.ell;
    if (depth <= ell) throw std::invalid_argument("b_ell_containment: depth must exceed l");

    DecompositionCertificate cert;
    cert.kind = DecompositionKind::HspSumContainment;
    cert.ell = ell;
    cert.depth = depth;

    // (a) digitwise, over the whole parameter table.
    bool digitwise = true;
    bool no_carry = true;
    Json digit_rows = Json::array();
    for (int k = ell + 1; k <= params.k_max; ++k) {
        Int lhs = Int(ell) * (params.m_prime_at(k) - 1);
        bool row_ok = lhs <= params.m_at(k) - 1;
        bool carry_ok = lhs < params.n_at(k);
        digitwise = digitwise && row_ok;
        no_carry = no_carry && carry_ok;
        Json row;
        row["k"] = k;
        row["max_sum_digit"] = lhs.str();
        row["digit_bound"] = (params.m_at(k) - 1).str();
        row["scale"] = params.n_at(k).str();
        digit_rows.push_back(std::move(row));
    }
    cert.details["digitwise_rows"] = std::move(digit_rows);
    cert.details["digitwise_verified"] = digitwise;
    cert.details["no_carry_verified"] = no_carry;

    // (b) pointwise at small depth.
    PointCloud b_cloud = b_ell_prefix(params, depth, cap);
    std::vector<PointCloud> copies(static_cast<std::size_t>(ell), b_cloud);
    PointCloud sum = minkowski_sum(copies, cap);

    std::vector<Int> range_counts;
    for (int k = 1; k <= depth; ++k)
        range_counts.push_back(k > ell ? Int(ell) * (params.m_prime_at(k) - 1) + 1 : Int(1));
    std::ostringstream os;
    os << "digit-range set depth " << depth << " for l=" << ell;
    PointCloud digit_range = moran_cloud(params, depth, range_counts, cap, os.str());

    PointCloud full = ev_prefix(params, depth, cap);

    bool sum_equals_range = sum.points == digit_range.points;
    bool contained = sum.subset_of(full);

    for (int j = 0; j < ell; ++j) {
        cert.part_descriptions.push_back(b_cloud.description);
        cert.part_cardinalities.push_back(b_cloud.size());
    }
    cert.sum_cardinality = sum.size();
    cert.target_cardinality = full.size();
    cert.details["sum_equals_digit_range"] = sum_equals_range;
    cert.details["digit_range_cardinality"] = digit_range.size();
    cert.verified = digitwise && no_carry && sum_equals_range && contained;
    return cert;
}

MoranDimEstimate moran_dim_estimate(const MoranParams& params, int level) {
    if (level < 1 || level > params.k_max)
        throw std::invalid_argument("moran_dim_estimate: level out of range");
    MoranDimEstimate est;
    est.level = level;

    Int prod_m(1), prod_n(1);
    for (int k = 1; k <= level; ++k) {
        prod_m *= params.m_at(k);
        prod_n *= params.n_at(k);
    }
    est.value = log(to_float(prod_m)) / log(to_float(prod_n));

    unsigned p = numerator(params.alpha).convert_to<unsigned>();
    unsigned q = denominator(params.alpha).convert_to<unsigned>();
    Int lhs = pow(prod_m, q);
    Int rhs = pow(prod_n, p);
    est.lower_bound_certified = lhs >= rhs; // s_k >= alpha
    est.equals_alpha_exactly = lhs == rhs;
    return est;
}

} // namespace fsum
