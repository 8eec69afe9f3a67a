#include "fsum/sumset.hpp"
#include "fsum/errors.hpp"

#include <algorithm>
#include <limits>

namespace fsum {

namespace {

std::vector<Point> translate(const std::vector<Point>& a, const Point& t) {
    std::vector<Point> out;
    out.reserve(a.size());
    for (const auto& p : a) out.push_back(p + t); // order preserved: lex order is translation invariant
    return out;
}

std::vector<Point> intersect_sorted(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::vector<Point> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), PointLexLess{});
    return out;
}

} // namespace

IntersectionReport translate_intersection(const std::vector<Point>& a, const std::vector<Point>& t) {
    IntersectionReport report;
    report.input_set = canonicalize(a);
    if (report.input_set.size() < 2)
        throw std::invalid_argument("translate_intersection: input set needs at least 2 points");
    report.translations = canonicalize(t);
    if (report.translations.size() != t.size())
        throw std::invalid_argument("translate_intersection: duplicate translations");
    std::size_t ell = report.translations.size();
    if (ell < 1 || ell > report.input_set.size() + 1)
        throw std::invalid_argument("translate_intersection: translation count out of range [1, #A+1]");

    std::vector<Point> acc = translate(report.input_set, report.translations.front());
    for (std::size_t j = 1; j < ell; ++j)
        acc = intersect_sorted(acc, translate(report.input_set, report.translations[j]));

    report.intersection = std::move(acc);
    report.cardinality = static_cast<std::int64_t>(report.intersection.size());
    report.bound = static_cast<std::int64_t>(report.input_set.size()) + 1 - static_cast<std::int64_t>(ell);
    report.satisfied = report.cardinality <= report.bound;
    if (!report.satisfied)
        throw std::logic_error("translate_intersection: cardinality bound violated (internal bug)");
    return report;
}

namespace {

struct OracleContext {
    std::vector<std::vector<Point>> translates; // A + u for each u in the universe
    std::int64_t max_tuple = 0;                 // #A + 1
    std::int64_t bound_base = 0;                // #A + 1
    ExhaustiveBoundReport* report = nullptr;
    std::int64_t budget = 0;
};

void tuple_dfs(OracleContext& ctx, std::size_t next_index, std::int64_t chosen,
               const std::vector<Point>& current) {
    if (chosen >= 1) {
        ++ctx.report->cases_checked;
        if (ctx.report->cases_checked > ctx.budget)
            throw budget_error("exhaustive intersection oracle budget exceeded",
                               std::to_string(ctx.report->cases_checked), std::to_string(ctx.budget));
        std::int64_t bound = ctx.bound_base - chosen;
        if (static_cast<std::int64_t>(current.size()) > bound) ++ctx.report->violations;
    }
    if (chosen == ctx.max_tuple) return;
    for (std::size_t i = next_index; i < ctx.translates.size(); ++i) {
        std::vector<Point> next =
            chosen == 0 ? ctx.translates[i] : intersect_sorted(current, ctx.translates[i]);
        tuple_dfs(ctx, i + 1, chosen + 1, next);
    }
}

void subset_dfs(int universe_index, const std::vector<Point>& universe, std::vector<Point>& subset,
                int max_size, ExhaustiveBoundReport& report, std::int64_t budget) {
    if (subset.size() >= 2) {
        ++report.subsets_enumerated;
        // Translation universe (A-A) union ((A-A) + (1/2,...,1/2)).
        std::vector<Point> diffs;
        for (const auto& a : subset)
            for (const auto& b : subset) diffs.push_back(a - b);
        diffs = canonicalize(std::move(diffs));
        Point::Coords half_coords(static_cast<std::size_t>(subset.front().dimension()), Rational(1, 2));
        Point half{half_coords};
        std::vector<Point> shifted;
        shifted.reserve(diffs.size());
        for (const auto& t : diffs) shifted.push_back(t + half);
        diffs.insert(diffs.end(), shifted.begin(), shifted.end());
        diffs = canonicalize(std::move(diffs));

        std::vector<Point> sorted_subset = canonicalize(subset);
        OracleContext ctx;
        ctx.translates.reserve(diffs.size());
        for (const auto& t : diffs) ctx.translates.push_back(translate(sorted_subset, t));
        ctx.max_tuple = static_cast<std::int64_t>(subset.size()) + 1;
        ctx.bound_base = static_cast<std::int64_t>(subset.size()) + 1;
        ctx.report = &report;
        ctx.budget = budget;
        tuple_dfs(ctx, 0, 0, {});
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (std::size_t i = static_cast<std::size_t>(universe_index); i < universe.size(); ++i) {
        subset.push_back(universe[i]);
        subset_dfs(static_cast<int>(i) + 1, universe, subset, max_size, report, budget);
        subset.pop_back();
    }
}

} // namespace

ExhaustiveBoundReport intersection_bound_exhaustive(int max_size, int dimension, int coordinate_range,
                                                    std::int64_t case_budget) {
    if (max_size < 2) throw std::invalid_argument("intersection_bound_exhaustive: max_size must be >= 2");
    if (dimension < 1 || coordinate_range < 1)
        throw std::invalid_argument("intersection_bound_exhaustive: bad grid parameters");

    // Grid {0..coordinate_range}^dimension in lex order.
    std::vector<Point> universe;
    std::vector<int> coords(static_cast<std::size_t>(dimension), 0);
    while (true) {
        Point::Coords c;
        for (int v : coords) c.push_back(Rational(v));
        universe.push_back(Point(std::move(c)));
        int pos = dimension - 1;
        while (pos >= 0 && coords[static_cast<std::size_t>(pos)] == coordinate_range) {
            coords[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++coords[static_cast<std::size_t>(pos)];
    }

    ExhaustiveBoundReport report;
    report.max_size = max_size;
    report.dimension = dimension;
    report.coordinate_range = coordinate_range;
    std::vector<Point> subset;
    subset_dfs(0, universe, subset, max_size, report, case_budget);
    return report;
}

GammaValue gamma_of(int digit_count) {
    if (digit_count < 2) throw std::invalid_argument("gamma_of: digit count must be >= 2");
    GammaValue out;
    out.digit_count = digit_count;
    for (int m = 1; m <= digit_count; ++m) {
        std::int64_t product = static_cast<std::int64_t>(m) * (digit_count + 1 - m);
        if (product > out.max_product) {
            out.max_product = product;
            out.argmax = {m};
        } else if (product == out.max_product) {
            out.argmax.push_back(m);
        }
    }
    out.gamma = log(Float(out.max_product));
    out.strict = out.max_product < static_cast<std::int64_t>(digit_count) * digit_count;
    return out;
}

HspCertificate hsp_beta(const HomogeneousIFS& ifs, int probe_depth, std::int64_t state_cap) {
    HspCertificate cert{ifs,    std::nullopt, {}, gamma_of(ifs.digit_count()), Float(0), Float(0),
                        false,  {},           false, false};
    Point zero = Point::zero(ifs.dimension());
    Point base = ifs.digits().at(0);
    if (!(base == zero)) cert.normalization_shift = base;
    for (const auto& b : ifs.digits().points()) cert.normalized_digits.push_back(b - base);

    Float minus_log_rho = -log(to_float(ifs.ratio()));
    cert.beta = cert.gamma.gamma / (2 * minus_log_rho);
    cert.dim = log(Float(ifs.digit_count())) / minus_log_rho;
    cert.strict = cert.gamma.strict;
    cert.psi_ssc = ssc_check(difference_ifs(ifs), probe_depth, state_cap);
    cert.sharpened_two_digit = ifs.digit_count() == 2;
    cert.certified = cert.strict && cert.psi_ssc.status == Separation::Holds;
    return cert;
}

PerPositionDigits make_per_position_digits(const DigitSet& digits, std::vector<std::vector<Point>> lambda) {
    DigitSet diffs = difference_digits(digits);
    Point zero = Point::zero(digits.dimension());
    PerPositionDigits out;
    out.lambda.reserve(lambda.size());
    for (auto& raw : lambda) {
        std::vector<Point> position = canonicalize(std::move(raw));
        if (!std::binary_search(position.begin(), position.end(), zero, PointLexLess{}))
            throw std::invalid_argument("per-position digit set must contain the zero vector");
        for (const auto& b : position)
            if (!diffs.contains(b))
                throw std::invalid_argument("per-position digit " + format_point(b) + " is not in D-D");

        std::vector<Point> acc = digits.points();
        for (const auto& b : position) {
            std::vector<Point> translated = translate(digits.points(), b);
            acc = intersect_sorted(acc, translated);
            if (acc.empty()) break;
        }
        std::int64_t m_j = static_cast<std::int64_t>(acc.size());
        if (m_j + static_cast<std::int64_t>(position.size()) > digits.size() + 1)
            throw std::logic_error("per-position counts exceed #D + 1 (internal bug)");
        out.lambda.push_back(std::move(position));
        out.intersection_counts.push_back(m_j);
    }
    return out;
}

CodingPairBound coding_pair_bound(const HomogeneousIFS& ifs, const PerPositionDigits& ppd) {
    if (ppd.horizon() == 0) throw std::invalid_argument("coding_pair_bound: horizon must be >= 1");
    CodingPairBound out;
    out.horizon = ppd.horizon();
    Float sum(0);
    for (int j = 0; j < ppd.horizon(); ++j) {
        std::int64_t m_j = ppd.intersection_counts[static_cast<std::size_t>(j)];
        std::int64_t lam = static_cast<std::int64_t>(ppd.lambda[static_cast<std::size_t>(j)].size());
        if (m_j == 0) {
            out.finite = false;
            out.value = -std::numeric_limits<Float>::infinity();
            return out;
        }
        sum += log(Float(m_j)) + log(Float(lam));
    }
    out.value = sum / (-Float(out.horizon) * log(to_float(ifs.ratio())));
    return out;
}

DigitSet e_rho_n_digits(const Rational& rho, int N) {
    if (N < 1) throw std::invalid_argument("e_rho_n_digits: N must be >= 1");
    if (!(rho > 0 && rho < 1)) throw std::invalid_argument("e_rho_n_digits: rho must lie in (0,1)");
    std::vector<Point> digits;
    for (int j = 0; j <= N; ++j)
        digits.push_back(Point(Point::Coords{(1 - rho) * j / N}));
    return DigitSet(std::move(digits));
}

EFamilyCertificate e_rho_n_certificate(const Rational& rho, int N, int probe_depth) {
    EFamilyCertificate cert{rho, N, false, e_rho_n_digits(rho, N), std::nullopt};
    cert.hypothesis_met = rho < Rational(1, 2 * N + 1);
    if (cert.hypothesis_met) {
        HomogeneousIFS ifs(rho, OrthoMatrix::identity(1), cert.digits, true);
        cert.hsp = hsp_beta(ifs, probe_depth);
    }
    return cert;
}

} // namespace fsum
