#include "fsum/certificate.hpp"

namespace fsum {

Json word_to_json(const Word& w) {
    Json j = Json::array();
    for (int letter : w.letters) j.push_back(letter);
    return j;
}

Json separation_to_json(const SeparationVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["probe_depth"] = v.probe_depth;
    j["bound_sq"] = format_rational(v.bound_sq);
    j["states_explored"] = v.states_explored;
    if (v.status == Separation::Holds) {
        j["holds_depth"] = v.holds_depth;
        if (v.min_rejected_norm_sq)
            j["min_rejected_norm_sq"] = format_rational(*v.min_rejected_norm_sq);
    }
    if (v.status == Separation::Fails) {
        Json witness;
        witness["common_point"] = format_point(*v.common_point);
        witness["left_prefix"] = word_to_json(v.left_prefix);
        witness["left_cycle"] = word_to_json(v.left_cycle);
        witness["right_prefix"] = word_to_json(v.right_prefix);
        witness["right_cycle"] = word_to_json(v.right_cycle);
        j["overlap_witness"] = std::move(witness);
    }
    return j;
}

Json gamma_to_json(const GammaValue& g) {
    Json j;
    j["digit_count"] = g.digit_count;
    j["max_product"] = g.max_product;
    j["argmax"] = g.argmax;
    j["gamma"] = decimal(g.gamma);
    j["strict"] = g.strict;
    return j;
}

Json box_report_to_json(const BoxCountReport& r) {
    Json j;
    j["estimator"] = r.estimator;
    if (r.delta_exponent == 1)
        j["delta"] = format_rational(r.delta_base);
    else
        j["delta"] = format_rational(r.delta_base) + "^" + std::to_string(r.delta_exponent);
    if (r.count_materialized)
        j["count"] = r.count.str();
    else
        j["count"] = std::to_string(r.count_base) + "^" + std::to_string(r.count_exponent);
    if (r.estimator == "cylinder-address") {
        j["count_base"] = r.count_base;
        j["count_exponent"] = r.count_exponent;
    } else {
        j["point_count"] = r.point_count;
        j["grid_ball_constant"] = r.grid_ball_constant.str();
    }
    j["estimate"] = decimal(r.estimate);
    return j;
}

Json moran_params_to_json(const MoranParams& p) {
    Json j;
    j["alpha"] = format_rational(p.alpha);
    j["k_max"] = p.k_max;
    if (p.ell) j["ell"] = *p.ell;
    Json rows = Json::array();
    for (int k = 1; k <= p.k_max; ++k) {
        Json row;
        row["k"] = k;
        row["m_k"] = p.m_at(k).str();
        row["N_k"] = p.n_at(k).str();
        if (p.ell && k > *p.ell) row["m_prime_k"] = p.m_prime_at(k).str();
        rows.push_back(std::move(row));
    }
    j["levels"] = std::move(rows);
    return j;
}

Json hsp_certificate_json(const HspCertificate& cert) {
    Json j;
    j["claim"] = "hsp2-failure-bound";
    Json hypotheses = Json::array();
    hypotheses.push_back("difference-system strong separation == Holds");
    hypotheses.push_back("digit count >= 2");
    j["hypotheses"] = std::move(hypotheses);

    Json witness;
    witness["ifs"] = ifs_to_json(cert.ifs);
    if (cert.normalization_shift)
        witness["normalization_shift"] = format_point(*cert.normalization_shift);
    Json normalized = Json::array();
    for (const auto& p : cert.normalized_digits) normalized.push_back(format_point(p));
    witness["normalized_digits"] = std::move(normalized);
    witness["gamma"] = gamma_to_json(cert.gamma);
    witness["difference_system_ssc"] = separation_to_json(cert.psi_ssc);
    j["witness"] = std::move(witness);

    j["verified"] = cert.certified;

    Json numeric;
    numeric["gamma"] = decimal(cert.gamma.gamma);
    numeric["beta"] = decimal(cert.beta);
    numeric["dim_similarity"] = decimal(cert.dim);
    j["numeric_values"] = std::move(numeric);

    Json exact;
    exact["rho"] = format_rational(cert.ifs.ratio());
    exact["digit_count"] = std::to_string(cert.ifs.digit_count());
    exact["gamma_max_product"] = std::to_string(cert.gamma.max_product);
    exact["strict_inequality"] = std::to_string(cert.gamma.max_product) + " < " +
                                 std::to_string(static_cast<std::int64_t>(cert.ifs.digit_count()) *
                                                cert.ifs.digit_count());
    exact["beta_below_dim"] = cert.strict ? "true" : "false";
    if (cert.sharpened_two_digit)
        exact["two_digit_sharpening"] = "dim K_1 + dim K_2 <= dim K";
    j["exact_values"] = std::move(exact);
    return j;
}

Json e_family_certificate_json(const EFamilyCertificate& cert) {
    Json j;
    j["claim"] = "e-family-hsp2-failure";
    Json hypotheses = Json::array();
    hypotheses.push_back("rho < 1/(2N+1)");
    j["hypotheses"] = std::move(hypotheses);

    Json witness;
    witness["rho"] = format_rational(cert.rho);
    witness["N"] = cert.n_param;
    witness["hypothesis_bound"] = format_rational(Rational(1, 2 * cert.n_param + 1));
    Json digits = Json::array();
    for (const auto& p : cert.digits.points()) digits.push_back(format_point(p));
    witness["digits"] = std::move(digits);
    witness["hypothesis_met"] = cert.hypothesis_met;
    if (cert.hsp) witness["hsp_bound"] = hsp_certificate_json(*cert.hsp);
    j["witness"] = std::move(witness);

    j["verified"] = cert.hypothesis_met && cert.hsp && cert.hsp->certified;

    Json numeric;
    numeric["rho"] = decimal(cert.rho);
    if (cert.hsp) {
        numeric["beta"] = decimal(cert.hsp->beta);
        numeric["dim_similarity"] = decimal(cert.hsp->dim);
    }
    j["numeric_values"] = std::move(numeric);
    Json exact;
    exact["rho"] = format_rational(cert.rho);
    exact["N"] = std::to_string(cert.n_param);
    j["exact_values"] = std::move(exact);
    return j;
}

Json intersection_report_json(const IntersectionReport& report) {
    Json j;
    j["claim"] = "translate-intersection-bound";
    Json hypotheses = Json::array();
    hypotheses.push_back("#A >= 2");
    hypotheses.push_back("1 <= #T <= #A + 1, translations pairwise distinct");
    j["hypotheses"] = std::move(hypotheses);

    Json witness;
    Json a = Json::array();
    for (const auto& p : report.input_set) a.push_back(format_point(p));
    witness["input_set"] = std::move(a);
    Json t = Json::array();
    for (const auto& p : report.translations) t.push_back(format_point(p));
    witness["translations"] = std::move(t);
    Json inter = Json::array();
    for (const auto& p : report.intersection) inter.push_back(format_point(p));
    witness["intersection"] = std::move(inter);
    j["witness"] = std::move(witness);

    j["verified"] = report.satisfied;
    j["numeric_values"] = Json::object();
    Json exact;
    exact["cardinality"] = std::to_string(report.cardinality);
    exact["bound"] = std::to_string(report.bound);
    j["exact_values"] = std::move(exact);
    return j;
}

Json exhaustive_report_json(const ExhaustiveBoundReport& report) {
    Json j;
    j["claim"] = "translate-intersection-bound-exhaustive";
    Json hypotheses = Json::array();
    hypotheses.push_back("all subsets of the grid with 2 <= #A <= max_size");
    hypotheses.push_back("translation tuples from (A-A) union ((A-A)+1/2)");
    j["hypotheses"] = std::move(hypotheses);
    Json witness;
    witness["max_size"] = report.max_size;
    witness["dimension"] = report.dimension;
    witness["coordinate_range"] = report.coordinate_range;
    witness["subsets_enumerated"] = report.subsets_enumerated;
    witness["cases_checked"] = report.cases_checked;
    witness["violations"] = report.violations;
    j["witness"] = std::move(witness);
    j["verified"] = report.violations == 0;
    j["numeric_values"] = Json::object();
    Json exact;
    exact["cases_checked"] = std::to_string(report.cases_checked);
    exact["violations"] = std::to_string(report.violations);
    j["exact_values"] = std::move(exact);
    return j;
}

Json decomposition_certificate_json(const DecompositionCertificate& cert) {
    Json j;
    j["claim"] = "sumset-decomposition";
    j["kind"] = to_string(cert.kind);
    Json hypotheses = Json::array();
    switch (cert.kind) {
        case DecompositionKind::PspEquality:
            hypotheses.push_back("partition of [1,depth], zero digit first");
            break;
        case DecompositionKind::PdspContainment:
            hypotheses.push_back("shifted residue classes lN+j-1, zero digit first");
            break;
        case DecompositionKind::HspSumContainment:
            hypotheses.push_back("digitwise bound l(m'_k - 1) <= m_k - 1");
            break;
    }
    j["hypotheses"] = std::move(hypotheses);

    Json witness;
    witness["ell"] = cert.ell;
    witness["depth"] = cert.depth;
    witness["parts"] = cert.part_descriptions;
    witness["part_cardinalities"] = cert.part_cardinalities;
    witness["sum_cardinality"] = cert.sum_cardinality;
    witness["target_cardinality"] = cert.target_cardinality;
    witness["details"] = cert.details;
    j["witness"] = std::move(witness);

    j["verified"] = cert.verified;
    j["numeric_values"] = Json::object();
    Json exact;
    exact["sum_cardinality"] = std::to_string(cert.sum_cardinality);
    exact["target_cardinality"] = std::to_string(cert.target_cardinality);
    j["exact_values"] = std::move(exact);
    return j;
}

Json gamma_table_certificate_json(int max_digit_count) {
    Json j;
    j["claim"] = "gamma-strictness-table";
    Json hypotheses = Json::array();
    hypotheses.push_back("digit counts 2..max");
    j["hypotheses"] = std::move(hypotheses);

    bool all_strict = true;
    Json rows = Json::array();
    for (int m = 2; m <= std::min(max_digit_count, 64); ++m) {
        GammaValue g = gamma_of(m);
        all_strict = all_strict && g.strict;
        Json row;
        row["digit_count"] = m;
        row["max_product"] = g.max_product;
        row["gamma"] = decimal(g.gamma);
        rows.push_back(std::move(row));
    }
    for (int m = 65; m <= max_digit_count; ++m) all_strict = all_strict && gamma_of(m).strict;

    Json witness;
    witness["max_digit_count"] = max_digit_count;
    witness["table_prefix"] = std::move(rows);
    j["witness"] = std::move(witness);
    j["verified"] = all_strict;
    j["numeric_values"] = Json::object();
    Json exact;
    exact["strictness"] = "m*(#D+1-m) < (#D)^2 for all splits";
    j["exact_values"] = std::move(exact);
    return j;
}

Json homogenize_certificate_json(const HomogenizeResult& result, const HomogenizeCheck& check) {
    Json j;
    j["claim"] = "homogenization-containment";
    Json hypotheses = Json::array();
    hypotheses.push_back("two maps with distinct fixed points, dimension 1 or 2");
    j["hypotheses"] = std::move(hypotheses);

    Json witness;
    witness["pair"] = Json::array({result.pair_first, result.pair_second});
    witness["squared_first"] = result.squared_first;
    witness["output_ifs"] = ifs_to_json(result.ifs);
    Json dict = Json::object();
    for (std::size_t i = 0; i < result.dictionary.size(); ++i)
        dict[std::to_string(i + 1)] = result.dictionary[i].str();
    witness["dictionary"] = std::move(dict);
    witness["output_depth_checked"] = check.output_depth;
    witness["original_depth_checked"] = check.original_depth;
    witness["substitution_exact"] = check.substitution_exact;
    witness["subset_of_original"] = check.subset_of_original;
    j["witness"] = std::move(witness);

    j["verified"] = check.substitution_exact && check.subset_of_original;
    j["numeric_values"] = Json::object();
    Json exact;
    exact["output_ratio"] = format_rational(result.ifs.ratio());
    j["exact_values"] = std::move(exact);
    return j;
}

Json moran_dim_certificate_json(const MoranParams& params, const std::vector<MoranDimEstimate>& estimates) {
    Json j;
    j["claim"] = "moran-prefix-dimension-ratio";
    Json hypotheses = Json::array();
    hypotheses.push_back("N_k = floor(m_k^{1/alpha}) with m_k = (k+1)!");
    j["hypotheses"] = std::move(hypotheses);

    bool all_bounded = true;
    Json rows = Json::array();
    for (const auto& est : estimates) {
        all_bounded = all_bounded && est.lower_bound_certified;
        Json row;
        row["k"] = est.level;
        row["s_k"] = decimal(est.value);
        row["s_k_at_least_alpha"] = est.lower_bound_certified;
        row["s_k_equals_alpha"] = est.equals_alpha_exactly;
        rows.push_back(std::move(row));
    }

    Json witness;
    witness["alpha"] = format_rational(params.alpha);
    witness["estimates"] = std::move(rows);
    j["witness"] = std::move(witness);
    j["verified"] = all_bounded;
    j["numeric_values"] = Json::object();
    Json exact;
    exact["alpha"] = format_rational(params.alpha);
    exact["bound"] = "s_k >= alpha decided on integers: (prod m)^q >= (prod N)^p";
    j["exact_values"] = std::move(exact);
    return j;
}

} // namespace fsum
