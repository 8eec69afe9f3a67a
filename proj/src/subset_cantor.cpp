#include "fsum/subset_cantor.hpp"
#include "fsum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fsum {

PointCloud subset_prefix(const SubsetCantorSpec& spec, std::int64_t cap) {
    const HomogeneousIFS& ifs = spec.ifs;
    if (!(ifs.digits().at(0) == Point::zero(ifs.dimension())))
        throw std::invalid_argument("subset_prefix: digit #1 must be the zero vector");
    if (spec.depth < 0) throw std::invalid_argument("subset_prefix: negative depth");
    if (spec.index_set.horizon() && spec.depth > *spec.index_set.horizon())
        throw horizon_error("subset_prefix: depth " + std::to_string(spec.depth) + " exceeds index-set horizon " +
                            std::to_string(*spec.index_set.horizon()));

    std::int64_t free_positions = spec.index_set.prefix_count(spec.depth);
    Int required = pow(Int(ifs.digit_count()), static_cast<unsigned>(free_positions));
    if (required > cap)
        throw budget_error("subset_prefix enumeration cap exceeded", required.str(), std::to_string(cap));

    // Build from the deepest position inward: T_k = digits_k + rho*O*T_{k+1}.
    std::vector<Point> cloud{Point::zero(ifs.dimension())};
    for (int k = spec.depth; k >= 1; --k) {
        std::vector<Point> next;
        if (spec.index_set.contains(k)) {
            next.reserve(cloud.size() * static_cast<std::size_t>(ifs.digit_count()));
            for (const auto& digit : ifs.digits().points())
                for (const auto& p : cloud) next.push_back(digit + ifs.linear() * p);
        } else {
            next.reserve(cloud.size());
            for (const auto& p : cloud) next.push_back(ifs.linear() * p); // forced zero digit
        }
        cloud = canonicalize(std::move(next));
    }

    Rational max_norm(0);
    for (const auto& digit : ifs.digits().points()) max_norm = std::max(max_norm, digit.norm_sq());
    Rational rho_n(1);
    for (int i = 0; i < spec.depth; ++i) rho_n *= ifs.ratio();
    Rational one_minus = 1 - ifs.ratio();

    PointCloud result;
    result.depth = spec.depth;
    result.points = std::move(cloud);
    result.tail_bound_sq = rho_n * rho_n * max_norm / (one_minus * one_minus);
    std::ostringstream os;
    os << "subset prefix depth " << spec.depth << ", S=" << spec.index_set.literal() << ", ifs(ratio="
       << format_rational(ifs.ratio()) << ", digits=" << ifs.digit_count() << ")";
    result.description = os.str();
    return result;
}

PointCloud minkowski_sum(const std::vector<PointCloud>& clouds, std::int64_t cap) {
    if (clouds.empty()) throw std::invalid_argument("minkowski_sum: no clouds");
    Int product(1);
    for (const auto& c : clouds) {
        if (c.points.empty()) throw std::invalid_argument("minkowski_sum: empty cloud");
        require_same_dimension(c.dimension(), clouds.front().dimension(), "minkowski_sum");
        product *= c.size();
    }
    if (product > cap)
        throw budget_error("minkowski_sum product cap exceeded", product.str(), std::to_string(cap));

    std::vector<Point> acc = clouds.front().points;
    for (std::size_t i = 1; i < clouds.size(); ++i) {
        std::vector<Point> next;
        next.reserve(acc.size() * clouds[i].points.size());
        for (const auto& a : acc)
            for (const auto& b : clouds[i].points) next.push_back(a + b);
        acc = canonicalize(std::move(next));
    }

    PointCloud result;
    result.depth = 0;
    Rational tail_sum(0);
    for (const auto& c : clouds) {
        result.depth = std::max(result.depth, c.depth);
        tail_sum += c.tail_bound_sq;
    }
    result.points = std::move(acc);
    // (sum of tails)^2 <= l * sum of squared tails.
    result.tail_bound_sq = Rational(static_cast<std::int64_t>(clouds.size())) * tail_sum;
    result.description = "minkowski sum of " + std::to_string(clouds.size()) + " clouds";
    return result;
}

std::string to_string(DecompositionKind k) {
    switch (k) {
        case DecompositionKind::PspEquality: return "PSP-equality";
        case DecompositionKind::PdspContainment: return "PDSP-containment";
        case DecompositionKind::HspSumContainment: return "HSP-sum-containment";
    }
    return "?";
}

namespace {

void check_partition_covers(const std::vector<IndexSet>& parts, int depth) {
    for (std::int64_t k = 1; k <= depth; ++k) {
        int owners = 0;
        for (const auto& part : parts) owners += part.contains(k) ? 1 : 0;
        if (owners != 1) {
            std::ostringstream os;
            os << "partition does not cover position " << k << " exactly once (covered " << owners
               << " times)";
            throw hypothesis_error(os.str());
        }
    }
}

} // namespace

DecompositionCertificate psp_decompose(const HomogeneousIFS& ifs, int ell, int depth, PartitionSource source,
                                       int rounds, const Rational& beta, std::int64_t cap) {
    if (ell < 2) throw std::invalid_argument("psp_decompose: l must be >= 2");
    if (depth < 0) throw std::invalid_argument("psp_decompose: negative depth");

    DecompositionCertificate cert;
    cert.kind = DecompositionKind::PspEquality;
    cert.ell = ell;
    cert.depth = depth;

    std::vector<IndexSet> parts;
    Json density = Json::array();
    if (source == PartitionSource::CoveringResidues) {
        parts = covering_residue_classes(ell);
        cert.details["partition"] = "residues-covering";
        for (const auto& part : parts) {
            Json item;
            item["set"] = index_set_to_json(part);
            std::int64_t count = depth > 0 ? part.prefix_count(depth) : 0;
            item["count_at_depth"] = count;
            if (depth > 0) item["density_at_depth"] = format_rational(Rational(count, depth));
            density.push_back(std::move(item));
        }
    } else {
        LimsupPartition partition = partition_limsup(IndexSet::naturals(), ell, rounds, beta);
        if (partition.checkpoints.bounds.back() < depth)
            throw hypothesis_error("checkpoint partition covers [1," +
                                   std::to_string(partition.checkpoints.bounds.back()) +
                                   "] which is short of depth " + std::to_string(depth));
        parts = partition.parts;
        cert.details["partition"] = "checkpoint-blocks";
        cert.details["beta"] = format_rational(beta);
        cert.details["checkpoints"] = partition.checkpoints.bounds;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            Json item;
            item["set"] = index_set_to_json(parts[j]);
            Json cps = Json::array();
            for (auto [cp, count] : partition.part_checkpoints[j]) {
                Json row;
                row["checkpoint"] = cp;
                row["count"] = count;
                cps.push_back(std::move(row));
            }
            item["checkpoint_counts"] = std::move(cps);
            item["density_claim"] =
                "consistent with density " + format_rational(beta) + " at horizon " +
                std::to_string(partition.checkpoints.bounds.back());
            density.push_back(std::move(item));
        }
    }
    cert.details["parts_density"] = std::move(density);
    check_partition_covers(parts, depth);

    std::vector<PointCloud> clouds;
    for (const auto& part : parts) {
        clouds.push_back(subset_prefix(SubsetCantorSpec{ifs, part, depth}, cap));
        cert.part_descriptions.push_back(part.literal());
        cert.part_cardinalities.push_back(clouds.back().size());
    }
    PointCloud sum = minkowski_sum(clouds, cap);
    PointCloud target = prefix_points(ifs, depth, cap);
    cert.sum_cardinality = sum.size();
    cert.target_cardinality = target.size();
    cert.verified = sum.points == target.points;
    return cert;
}

DecompositionCertificate pdsp_decompose(const HomogeneousIFS& ifs, int ell, int depth, std::int64_t cap) {
    if (ell < 2) throw std::invalid_argument("pdsp_decompose: l must be >= 2");
    if (depth < 0) throw std::invalid_argument("pdsp_decompose: negative depth");

    DecompositionCertificate cert;
    cert.kind = DecompositionKind::PdspContainment;
    cert.ell = ell;
    cert.depth = depth;

    std::vector<IndexSet> parts = residue_partition(ell);
    std::vector<PointCloud> clouds;
    for (const auto& part : parts) {
        clouds.push_back(subset_prefix(SubsetCantorSpec{ifs, part, depth}, cap));
        cert.part_descriptions.push_back(part.literal());
        cert.part_cardinalities.push_back(clouds.back().size());
    }
    PointCloud sum = minkowski_sum(clouds, cap);
    PointCloud target = prefix_points(ifs, depth, cap);
    cert.sum_cardinality = sum.size();
    cert.target_cardinality = target.size();
    cert.verified = sum.subset_of(target);

    // The first part rides on the sub-system {(rho O)^l x + b_j}: its prefix
    // equals (rho O)^{l-1} applied to that system's prefix.
    LinearPart power_ell = ifs.linear().pow(ell);
    HomogeneousIFS sub(power_ell.ratio, power_ell.ortho, ifs.digits(), ifs.normalized_zero_digit());
    cert.details["sub_ifs"] = ifs_to_json(sub);
    SimilarityDimension sub_dim = similarity_dimension(sub);
    cert.details["sub_dimension"] = decimal(sub_dim.value);
    cert.details["sub_dimension_positive"] = sub.digit_count() >= 2; // log m > 0 symbolically
    cert.details["sub_prefix_relation"] = "K_{S_1} prefix = (rho O)^{l-1} * sub-system prefix";

    bool sub_relation = true;
    {
        LinearPart prefactor = ifs.linear().pow(ell - 1);
        PointCloud sub_cloud = prefix_points(sub, depth / ell, cap);
        std::vector<Point> scaled;
        scaled.reserve(sub_cloud.points.size());
        for (const auto& p : sub_cloud.points) scaled.push_back(prefactor * p);
        sub_relation = canonicalize(std::move(scaled)) == clouds.front().points;
    }
    cert.details["sub_prefix_relation_verified"] = sub_relation;

    // Scaling relation between the parts: S_j prefix at depth n equals
    // (rho O)^{j-1} applied to the S_1 prefix at depth n - (j-1).
    Json scaling = Json::array();
    bool scaling_all = true;
    for (int j = 2; j <= ell; ++j) {
        int reduced_depth = std::max(depth - (j - 1), 0);
        PointCloud base = subset_prefix(SubsetCantorSpec{ifs, parts.front(), reduced_depth}, cap);
        LinearPart prefactor = ifs.linear().pow(j - 1);
        std::vector<Point> scaled;
        scaled.reserve(base.points.size());
        for (const auto& p : base.points) scaled.push_back(prefactor * p);
        bool ok = canonicalize(std::move(scaled)) == clouds[static_cast<std::size_t>(j - 1)].points;
        scaling_all = scaling_all && ok;
        Json row;
        row["j"] = j;
        row["verified"] = ok;
        scaling.push_back(std::move(row));
    }
    cert.details["scaling_relation"] = std::move(scaling);
    cert.verified = cert.verified && sub_relation && scaling_all;
    return cert;
}

BoxCountReport address_boxdim_estimate(const HomogeneousIFS& ifs, const IndexSet& s, int depth) {
    if (depth < 1) throw std::invalid_argument("address_boxdim_estimate: depth must be >= 1");
    BoxCountReport report;
    report.estimator = "cylinder-address";
    report.delta_base = ifs.ratio();
    report.delta_exponent = depth;
    report.count_base = ifs.digit_count();
    report.count_exponent = s.prefix_count(depth);
    if (report.count_exponent <= 256) {
        report.count = pow(Int(report.count_base), static_cast<unsigned>(report.count_exponent));
        report.count_materialized = true;
    }
    report.estimate = Float(report.count_exponent) * log(Float(report.count_base)) /
                      (-Float(depth) * log(to_float(ifs.ratio())));
    return report;
}

BoxCountReport grid_box_count(const PointCloud& cloud, const Rational& delta) {
    if (!(delta > 0)) throw std::invalid_argument("grid_box_count: delta must be positive");
    if (cloud.points.empty()) throw std::invalid_argument("grid_box_count: empty cloud");
    const int d = cloud.dimension();

    std::vector<std::vector<Int>> cells;
    cells.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
        std::vector<Int> cell;
        cell.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) cell.push_back(floor_rational(p[i] / delta));
        cells.push_back(std::move(cell));
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    BoxCountReport report;
    report.estimator = "grid";
    report.delta_base = delta;
    report.delta_exponent = 1;
    report.count = Int(cells.size());
    report.count_base = static_cast<std::int64_t>(cells.size());
    report.count_exponent = 1;
    report.count_materialized = true;
    report.point_count = cloud.size();
    report.estimate = log(Float(report.count)) / -log(to_float(delta));
    Int ceil_sqrt_d = iroot(Int(d), 2);
    if (ceil_sqrt_d * ceil_sqrt_d < d) ++ceil_sqrt_d;
    report.grid_ball_constant = pow(2 * ceil_sqrt_d + 1, static_cast<unsigned>(d));
    return report;
}

Point word_point(const std::vector<AffineMap>& maps, const Word& word) {
    if (maps.empty()) throw std::invalid_argument("word_point: no maps");
    if (!word.valid_for(static_cast<int>(maps.size())))
        throw std::invalid_argument("word_point: letter out of range");
    Point p = Point::zero(maps.front().dimension());
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it)
        p = apply(maps[static_cast<std::size_t>(*it - 1)], p);
    return p;
}

HomogenizeResult homogenize(const std::vector<AffineMap>& maps) {
    if (maps.size() < 2) throw std::invalid_argument("homogenize: need at least 2 maps");
    const int d = maps.front().dimension();
    if (d > 2) throw std::invalid_argument("homogenize: only dimensions 1 and 2 are handled");
    for (const auto& f : maps) require_same_dimension(f.dimension(), d, "homogenize");

    int first = -1, second = -1;
    for (std::size_t i = 0; i < maps.size() && first < 0; ++i)
        for (std::size_t j = i + 1; j < maps.size(); ++j)
            if (!(maps[i].fixed_point() == maps[j].fixed_point())) {
                first = static_cast<int>(i);
                second = static_cast<int>(j);
                break;
            }
    if (first < 0)
        throw hypothesis_error("homogenize: all fixed points coincide, the attractor is a singleton");

    const AffineMap& f = maps[static_cast<std::size_t>(first)];
    const AffineMap& g = maps[static_cast<std::size_t>(second)];

    bool square_first = d == 2 || !(f.ortho() == g.ortho());
    Word left, right;
    AffineMap h1 = square_first ? compose(compose(f, f), compose(g, g)) : compose(f, g);
    AffineMap h2 = square_first ? compose(compose(g, g), compose(f, f)) : compose(g, f);
    if (square_first) {
        left.letters = {first + 1, first + 1, second + 1, second + 1};
        right.letters = {second + 1, second + 1, first + 1, first + 1};
    } else {
        left.letters = {first + 1, second + 1};
        right.letters = {second + 1, first + 1};
    }

    if (!(h1.linear() == h2.linear()))
        throw std::logic_error("homogenize: composed linear parts differ (internal bug)");

    DigitSet digits({h1.shift(), h2.shift()});
    // Dictionary follows the lex order the digit set imposes on the letters.
    std::vector<Word> dictionary;
    if (lex_less(h1.shift(), h2.shift()))
        dictionary = {left, right};
    else
        dictionary = {right, left};

    HomogenizeResult result{HomogeneousIFS(h1.ratio(), h1.ortho(), digits), std::move(dictionary),
                            first + 1, second + 1, square_first};
    return result;
}

HomogenizeCheck homogenize_containment_check(const HomogenizeResult& result,
                                             const std::vector<AffineMap>& original, int output_depth,
                                             std::int64_t cap) {
    HomogenizeCheck check;
    check.output_depth = output_depth;
    const int expansion = result.dictionary.front().depth();
    check.original_depth = output_depth * expansion;

    const HomogeneousIFS& out_ifs = result.ifs;
    Int out_words = pow(Int(out_ifs.digit_count()), static_cast<unsigned>(output_depth));
    Int orig_words = pow(Int(original.size()), static_cast<unsigned>(check.original_depth));
    Int total_words = out_words + orig_words;
    if (total_words > cap)
        throw budget_error("homogenize containment enumeration cap exceeded", total_words.str(),
                           std::to_string(cap));

    // Word-by-word: the output word evaluates to the original family's
    // evaluation of the substituted word.
    bool substitution = true;
    std::vector<AffineMap> out_maps;
    for (int l = 1; l <= out_ifs.digit_count(); ++l) out_maps.push_back(out_ifs.map(l));
    std::vector<Word> frontier{Word{}};
    for (int k = 0; k < output_depth; ++k) {
        std::vector<Word> next;
        next.reserve(frontier.size() * static_cast<std::size_t>(out_ifs.digit_count()));
        for (const auto& w : frontier)
            for (int l = 1; l <= out_ifs.digit_count(); ++l) {
                Word e = w;
                e.letters.push_back(l);
                next.push_back(std::move(e));
            }
        frontier = std::move(next);
    }
    for (const auto& w : frontier) {
        Word substituted;
        for (int letter : w.letters) {
            const Word& expansionWord = result.dictionary[static_cast<std::size_t>(letter - 1)];
            substituted.letters.insert(substituted.letters.end(), expansionWord.letters.begin(),
                                       expansionWord.letters.end());
        }
        if (!(word_point(out_maps, w) == word_point(original, substituted))) {
            substitution = false;
            break;
        }
    }
    check.substitution_exact = substitution;

    // Whole-cloud: output prefix inside the full original enumeration.
    PointCloud out_cloud = prefix_points(out_ifs, output_depth, cap);
    std::vector<Point> all;
    std::vector<Word> orig_frontier{Word{}};
    for (int k = 0; k < check.original_depth; ++k) {
        std::vector<Word> next;
        next.reserve(orig_frontier.size() * original.size());
        for (const auto& w : orig_frontier)
            for (int l = 1; l <= static_cast<int>(original.size()); ++l) {
                Word e = w;
                e.letters.push_back(l);
                next.push_back(std::move(e));
            }
        orig_frontier = std::move(next);
    }
    all.reserve(orig_frontier.size());
    for (const auto& w : orig_frontier) all.push_back(word_point(original, w));
    all = canonicalize(std::move(all));
    check.subset_of_original = std::includes(all.begin(), all.end(), out_cloud.points.begin(),
                                             out_cloud.points.end(), PointLexLess{});
    return check;
}

} // namespace fsum
