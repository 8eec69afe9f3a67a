#pragma once

/// JSON emission for every certificate kind. All records share the layout
/// {claim, hypotheses[], witness, verified, numeric_values{}, exact_values{}}
/// with numeric fields carried twice: exact rational text and a decimal
/// rendering. Serialization is insertion-ordered and deterministic.

#include "fsum/ifs.hpp"
#include "fsum/index_set.hpp"
#include "fsum/json.hpp"
#include "fsum/moran.hpp"
#include "fsum/subset_cantor.hpp"
#include "fsum/sumset.hpp"

namespace fsum {

inline constexpr int kSchemaVersion = 1;

Json word_to_json(const Word& w);
Json separation_to_json(const SeparationVerdict& v);
Json gamma_to_json(const GammaValue& g);
Json box_report_to_json(const BoxCountReport& r);
Json moran_params_to_json(const MoranParams& p);

Json hsp_certificate_json(const HspCertificate& cert);
Json e_family_certificate_json(const EFamilyCertificate& cert);
Json intersection_report_json(const IntersectionReport& report);
Json exhaustive_report_json(const ExhaustiveBoundReport& report);
Json decomposition_certificate_json(const DecompositionCertificate& cert);
Json gamma_table_certificate_json(int max_digit_count);
Json homogenize_certificate_json(const HomogenizeResult& result, const HomogenizeCheck& check);
Json moran_dim_certificate_json(const MoranParams& params, const std::vector<MoranDimEstimate>& estimates);

} // namespace fsum
