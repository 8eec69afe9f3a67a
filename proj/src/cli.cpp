#include "fsum/cli.hpp"

#include "fsum/certificate.hpp"
#include "fsum/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fsum {

namespace {

std::vector<AffineMap> affine_maps_from_json(const Json& j) {
    try {
        int dimension = j.at("dimension").get<int>();
        std::vector<AffineMap> maps;
        for (const auto& item : j.at("maps")) {
            Rational ratio = parse_rational(item.at("ratio").get<std::string>());
            std::vector<Rational> entries;
            for (const auto& e : item.at("ortho")) {
                if (e.is_array())
                    for (const auto& inner : e) entries.push_back(parse_rational(inner.get<std::string>()));
                else
                    entries.push_back(parse_rational(e.get<std::string>()));
            }
            OrthoMatrix ortho{Matrix(dimension, std::move(entries))};
            Point shift = parse_point(item.at("shift").get<std::string>());
            maps.emplace_back(ratio, ortho, shift);
        }
        if (maps.size() < 2) throw parse_error("affine map list needs at least 2 maps");
        return maps;
    } catch (const Json::exception& e) {
        throw parse_error(std::string("bad affine map list: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw parse_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

/// Splits a point list "(0),(2/3)" or "0,2/3" at commas outside parens.
std::vector<Point> parse_point_list(const std::string& text) {
    std::vector<Point> points;
    int depth = 0;
    std::string current;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            points.push_back(parse_point(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) points.push_back(parse_point(current));
    if (points.empty()) throw parse_error("empty point list: '" + text + "'");
    return points;
}

Json points_to_json(const std::vector<Point>& points) {
    Json arr = Json::array();
    for (const auto& p : points) arr.push_back(format_point(p));
    return arr;
}

std::vector<Point> points_from_json(const Json& arr) {
    std::vector<Point> points;
    for (const auto& item : arr) points.push_back(parse_point(item.get<std::string>()));
    return points;
}

// ---------------------------------------------------------------- executors

ExecOutcome exec_hsp_bound(const Json& in) {
    HomogeneousIFS ifs = ifs_from_json(in.at("ifs"));
    HspCertificate cert = hsp_beta(ifs, in.value("probe_depth", 8), in.value("state_cap", 20'000));
    ExecOutcome out;
    out.certificates.push_back(hsp_certificate_json(cert));
    if (!cert.certified) out.status_override = "hypothesis-not-met";
    return out;
}

ExecOutcome exec_e_family(const Json& in) {
    Rational rho = parse_rational(in.at("rho").get<std::string>());
    int n_param = in.at("N").get<int>();
    EFamilyCertificate cert = e_rho_n_certificate(rho, n_param, in.value("probe_depth", 8));
    ExecOutcome out;
    out.certificates.push_back(e_family_certificate_json(cert));
    if (!cert.hypothesis_met || !cert.hsp || !cert.hsp->certified)
        out.status_override = "hypothesis-not-met";
    return out;
}

ExecOutcome exec_lemma21(const Json& in) {
    ExecOutcome out;
    std::string mode = in.at("mode").get<std::string>();
    if (mode == "single") {
        IntersectionReport report =
            translate_intersection(points_from_json(in.at("set")), points_from_json(in.at("translations")));
        out.certificates.push_back(intersection_report_json(report));
    } else if (mode == "exhaustive") {
        ExhaustiveBoundReport report = intersection_bound_exhaustive(
            in.at("max_size").get<int>(), in.at("dimension").get<int>(), in.at("range").get<int>(),
            in.value("budget", std::int64_t{100'000'000}));
        out.certificates.push_back(exhaustive_report_json(report));
    } else if (mode == "random") {
        int instances = in.at("instances").get<int>();
        std::uint64_t seed = in.at("seed").get<std::uint64_t>();
        int max_size = in.value("max_size", 6);
        int range = in.value("range", 8);
        int dimension = in.value("dimension", 1);
        std::mt19937_64 rng(seed);
        for (int i = 0; i < instances; ++i) {
            std::uniform_int_distribution<int> size_dist(2, max_size);
            std::uniform_int_distribution<int> coord_dist(0, range);
            std::vector<Point> a;
            int target = size_dist(rng);
            while (static_cast<int>(a.size()) < target) {
                Point::Coords coords;
                for (int c = 0; c < dimension; ++c) coords.push_back(Rational(coord_dist(rng)));
                a.push_back(Point(std::move(coords)));
                a = canonicalize(std::move(a));
            }
            std::vector<Point> universe;
            for (const auto& x : a)
                for (const auto& y : a) universe.push_back(x - y);
            universe = canonicalize(std::move(universe));
            Point::Coords half(static_cast<std::size_t>(dimension), Rational(1, 2));
            std::size_t base = universe.size();
            for (std::size_t u = 0; u < base; ++u) universe.push_back(universe[u] + Point(half));
            std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
            std::uniform_int_distribution<int> len_dist(1, static_cast<int>(a.size()) + 1);
            std::vector<Point> translations;
            int len = len_dist(rng);
            while (static_cast<int>(translations.size()) < len) {
                translations.push_back(universe[pick(rng)]);
                translations = canonicalize(std::move(translations));
            }
            translate_intersection(a, translations); // aborts on any violation
        }
        Json cert;
        cert["claim"] = "translate-intersection-bound-random";
        cert["hypotheses"] = Json::array({"seeded random instances"});
        Json witness;
        witness["instances"] = instances;
        witness["seed"] = seed;
        witness["max_size"] = max_size;
        witness["dimension"] = dimension;
        witness["range"] = range;
        cert["witness"] = std::move(witness);
        cert["verified"] = true;
        cert["numeric_values"] = Json::object();
        cert["exact_values"] = Json::object();
        out.certificates.push_back(std::move(cert));
    } else {
        throw parse_error("lemma21: unknown mode '" + mode + "'");
    }
    return out;
}

ExecOutcome exec_psp(const Json& in) {
    HomogeneousIFS ifs = ifs_from_json(in.at("ifs"));
    std::string partition = in.at("partition").get<std::string>();
    PartitionSource source;
    if (partition == "residues")
        source = PartitionSource::CoveringResidues;
    else if (partition == "lemma32")
        source = PartitionSource::CheckpointBlocks;
    else
        throw parse_error("psp: partition must be 'residues' or 'lemma32'");
    DecompositionCertificate cert = psp_decompose(
        ifs, in.at("ell").get<int>(), in.at("depth").get<int>(), source, in.value("rounds", 2),
        parse_rational(in.value("beta", std::string("1"))), in.value("cap", kDefaultEnumerationCap));
    ExecOutcome out;
    out.certificates.push_back(decomposition_certificate_json(cert));
    return out;
}

ExecOutcome exec_pdsp(const Json& in) {
    HomogeneousIFS ifs = ifs_from_json(in.at("ifs"));
    DecompositionCertificate cert = pdsp_decompose(ifs, in.at("ell").get<int>(), in.at("depth").get<int>(),
                                                   in.value("cap", kDefaultEnumerationCap));
    ExecOutcome out;
    out.certificates.push_back(decomposition_certificate_json(cert));
    return out;
}

ExecOutcome exec_homogenize(const Json& in) {
    std::vector<AffineMap> maps = affine_maps_from_json(in.at("maps"));
    HomogenizeResult result = homogenize(maps);
    HomogenizeCheck check = homogenize_containment_check(result, maps, in.value("check_depth", 3),
                                                         in.value("cap", kDefaultEnumerationCap));
    ExecOutcome out;
    out.certificates.push_back(homogenize_certificate_json(result, check));
    return out;
}

ExecOutcome exec_boxdim(const Json& in) {
    HomogeneousIFS ifs = ifs_from_json(in.at("ifs"));
    IndexSet set = parse_index_set(in.value("set", std::string("mod:1,0")));
    int depth_min = in.at("min_depth").get<int>();
    int depth_max = in.at("max_depth").get<int>();
    if (depth_min < 1 || depth_max < depth_min) throw parse_error("boxdim: bad depth range");
    std::string estimator = in.value("estimator", std::string("address"));
    std::int64_t cap = in.value("cap", kDefaultEnumerationCap);

    ExecOutcome out;
    out.sweep = Json::array();
    for (int n = depth_min; n <= depth_max; ++n) {
        BoxCountReport report;
        if (estimator == "address") {
            report = address_boxdim_estimate(ifs, set, n);
        } else if (estimator == "grid") {
            PointCloud cloud = set.prefix_count(n) == n
                                   ? prefix_points(ifs, n, cap)
                                   : subset_prefix(SubsetCantorSpec{ifs, set, n}, cap);
            Rational delta(1);
            for (int i = 0; i < n; ++i) delta *= ifs.ratio();
            report = grid_box_count(cloud, delta);
        } else {
            throw parse_error("boxdim: estimator must be 'address' or 'grid'");
        }
        Json row;
        row["n"] = n;
        row["count"] = report.count_materialized
                           ? report.count.str()
                           : std::to_string(report.count_base) + "^" + std::to_string(report.count_exponent);
        row["estimate"] = decimal(report.estimate);
        row["report"] = box_report_to_json(report);
        out.sweep.push_back(std::move(row));
    }
    return out;
}

ExecOutcome exec_moran(const Json& in) {
    Rational alpha = parse_rational(in.at("alpha").get<std::string>());
    int k_max = in.value("k_max", 20);
    std::optional<int> ell;
    if (in.contains("ell") && !in.at("ell").is_null()) ell = in.at("ell").get<int>();
    MoranParams params = ev_params(alpha, k_max, ell);

    ExecOutcome out;
    std::vector<MoranDimEstimate> estimates;
    out.sweep = Json::array();
    for (int k = 1; k <= k_max; ++k) {
        estimates.push_back(moran_dim_estimate(params, k));
        Json row;
        row["k"] = k;
        row["m_k"] = params.m_at(k).str();
        row["N_k"] = params.n_at(k).str();
        row["s_k"] = decimal(estimates.back().value);
        out.sweep.push_back(std::move(row));
    }
    out.certificates.push_back(moran_dim_certificate_json(params, estimates));
    if (ell) {
        DecompositionCertificate cert =
            b_ell_containment(params, in.value("depth", 4), in.value("cap", kDefaultEnumerationCap));
        out.certificates.push_back(decomposition_certificate_json(cert));
    }
    return out;
}

ExecOutcome exec_gamma_table(const Json& in) {
    ExecOutcome out;
    out.certificates.push_back(gamma_table_certificate_json(in.value("max_digit_count", 10'000)));
    return out;
}

} // namespace

ExecOutcome exec_subcommand(const std::string& name, const Json& inputs) {
    if (name == "hsp-bound") return exec_hsp_bound(inputs);
    if (name == "e-family") return exec_e_family(inputs);
    if (name == "lemma21") return exec_lemma21(inputs);
    if (name == "psp") return exec_psp(inputs);
    if (name == "pdsp") return exec_pdsp(inputs);
    if (name == "homogenize") return exec_homogenize(inputs);
    if (name == "boxdim") return exec_boxdim(inputs);
    if (name == "moran") return exec_moran(inputs);
    if (name == "gamma-table") return exec_gamma_table(inputs);
    throw parse_error("unknown subcommand: '" + name + "'");
}

Json RunReport::to_json(bool include_timing) const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "fsumset";
    j["subcommand"] = subcommand;
    j["index_convention"] = "positions are 1-based; N = {1,2,3,...}";
    j["inputs"] = inputs;
    j["certificates"] = certificates;
    if (!sweep.is_null()) j["sweep"] = sweep;
    j["status"] = status;
    if (!message.empty()) j["message"] = message;
    j["exit_code"] = exit_code;
    if (include_timing) j["timing_ms"] = timing_ms;
    return j;
}

std::string sweep_to_csv(const Json& sweep) {
    std::ostringstream os;
    if (!sweep.is_array() || sweep.empty()) return "";
    const Json& first = sweep.front();
    std::vector<std::string> columns;
    if (first.contains("n"))
        columns = {"n", "count", "estimate"};
    else
        columns = {"k", "m_k", "N_k", "s_k"};
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : sweep) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const Json& cell = row.at(columns[i]);
            os << (i ? "," : "");
            if (cell.is_string())
                os << cell.get<std::string>();
            else
                os << cell.dump();
        }
        os << "\n";
    }
    return os.str();
}

namespace {

struct ParsedCommand {
    std::string name;
    Json inputs;
    std::string out_path;
    std::string csv_path;
    std::string verify_path; // set only for `verify`
};

struct help_requested {
    std::string text;
};

ParsedCommand parse_args(const std::vector<std::string>& args) {
    CLI::App app{"exact sumset-decomposition certificates for homogeneous self-similar sets"};
    app.require_subcommand(1);

    ParsedCommand cmd;

    // hsp-bound
    std::string hsp_ifs_path, hsp_rho, hsp_digits;
    int hsp_probe = 8;
    std::int64_t hsp_state_cap = 20'000;
    auto* hsp = app.add_subcommand("hsp-bound", "dimension-sum failure bound for one system");
    hsp->add_option("--ifs", hsp_ifs_path, "IFS description file");
    hsp->add_option("--rho", hsp_rho, "contraction ratio p/q (with --digits)");
    hsp->add_option("--digits", hsp_digits, "digit points, e.g. \"(0),(4/5)\"");
    hsp->add_option("--probe-depth", hsp_probe, "separation probe depth");
    hsp->add_option("--state-cap", hsp_state_cap, "separation state budget");

    // e-family
    std::string ef_rho;
    int ef_n = 1, ef_probe = 8;
    auto* efam = app.add_subcommand("e-family", "certified HSP-2 failure for E_{rho,N}");
    efam->add_option("--rho", ef_rho, "contraction ratio p/q")->required();
    efam->add_option("--N", ef_n, "largest digit index")->required();
    efam->add_option("--probe-depth", ef_probe, "separation probe depth");

    // lemma21
    std::string l21_set, l21_translations;
    bool l21_exhaustive = false;
    int l21_max_size = 3, l21_dim = 1, l21_range = 3, l21_random = 0;
    std::int64_t l21_budget = 100'000'000;
    std::uint64_t l21_seed = 0;
    auto* l21 = app.add_subcommand("lemma21", "translate-intersection cardinality bound");
    l21->add_option("--set", l21_set, "point set, e.g. \"(0),(1)\"");
    l21->add_option("--translations", l21_translations, "translation points");
    l21->add_flag("--exhaustive", l21_exhaustive, "run the exhaustive grid oracle");
    l21->add_option("--max-size", l21_max_size, "largest subset size");
    l21->add_option("--dimension", l21_dim, "grid dimension");
    l21->add_option("--range", l21_range, "grid coordinate range 0..range");
    l21->add_option("--budget", l21_budget, "case budget");
    l21->add_option("--random", l21_random, "check this many seeded random instances");
    l21->add_option("--seed", l21_seed, "random sweep seed");

    // psp
    std::string psp_ifs_path, psp_partition = "residues", psp_beta = "1";
    int psp_ell = 2, psp_depth = 6, psp_rounds = 2;
    std::int64_t psp_cap = kDefaultEnumerationCap;
    auto* psp = app.add_subcommand("psp", "full-prefix sumset equality decomposition");
    psp->add_option("--ifs", psp_ifs_path, "IFS description file")->required();
    psp->add_option("--ell", psp_ell, "number of summands")->required();
    psp->add_option("--depth", psp_depth, "prefix depth")->required();
    psp->add_option("--partition", psp_partition, "residues | lemma32");
    psp->add_option("--rounds", psp_rounds, "checkpoint rounds for lemma32");
    psp->add_option("--beta", psp_beta, "target density for lemma32");
    psp->add_option("--cap", psp_cap, "enumeration cap");

    // pdsp
    std::string pdsp_ifs_path;
    int pdsp_ell = 2, pdsp_depth = 4;
    std::int64_t pdsp_cap = kDefaultEnumerationCap;
    auto* pdsp = app.add_subcommand("pdsp", "shifted-residue sumset containment");
    pdsp->add_option("--ifs", pdsp_ifs_path, "IFS description file")->required();
    pdsp->add_option("--ell", pdsp_ell, "number of summands")->required();
    pdsp->add_option("--depth", pdsp_depth, "prefix depth")->required();
    pdsp->add_option("--cap", pdsp_cap, "enumeration cap");

    // homogenize
    std::string hog_maps_path;
    int hog_check_depth = 3;
    std::int64_t hog_cap = kDefaultEnumerationCap;
    auto* hog = app.add_subcommand("homogenize", "homogeneous subsystem from an affine map family");
    hog->add_option("--maps", hog_maps_path, "affine map list file")->required();
    hog->add_option("--check-depth", hog_check_depth, "output prefix depth for the containment check");
    hog->add_option("--cap", hog_cap, "enumeration cap");

    // boxdim
    std::string box_ifs_path, box_set = "mod:1,0", box_estimator = "address";
    int box_min = 1, box_max = 10;
    std::int64_t box_cap = kDefaultEnumerationCap;
    auto* box = app.add_subcommand("boxdim", "address and grid covering sweeps over depths");
    box->add_option("--ifs", box_ifs_path, "IFS description file")->required();
    box->add_option("--set", box_set, "index-set literal (default: all of N)");
    box->add_option("--min-depth", box_min, "first depth");
    box->add_option("--max-depth", box_max, "last depth");
    box->add_option("--estimator", box_estimator, "address | grid");
    box->add_option("--cap", box_cap, "enumeration cap");

    // moran
    std::string mor_alpha;
    int mor_ell = 0, mor_kmax = 20, mor_depth = 4;
    std::int64_t mor_cap = kDefaultEnumerationCap;
    auto* mor = app.add_subcommand("moran", "factorial-branching construction certificates");
    mor->add_option("--alpha", mor_alpha, "target dimension p/q in (0,1)")->required();
    mor->add_option("--ell", mor_ell, "summand count for the containment certificate (0 = skip)");
    mor->add_option("--k-max", mor_kmax, "levels in the parameter table");
    mor->add_option("--depth", mor_depth, "pointwise check depth");
    mor->add_option("--cap", mor_cap, "enumeration cap");

    // gamma-table
    int gt_max = 10'000;
    auto* gt = app.add_subcommand("gamma-table", "strictness table for the split maximum");
    gt->add_option("--max-digit-count", gt_max, "largest digit count checked");

    // verify
    std::string verify_in;
    auto* ver = app.add_subcommand("verify", "re-run a report from its recorded inputs");
    ver->add_option("--in", verify_in, "report JSON file")->required();

    std::string out_path, csv_path;
    for (auto* sub : {hsp, efam, l21, psp, pdsp, hog, box, mor, gt, ver}) {
        sub->add_option("--out", out_path, "write the JSON report here");
        sub->add_option("--csv", csv_path, "write the sweep CSV here");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw help_requested{app.help()};
    }

    cmd.out_path = out_path;
    cmd.csv_path = csv_path;

    if (app.got_subcommand(hsp)) {
        cmd.name = "hsp-bound";
        Json ifs_json;
        if (!hsp_ifs_path.empty()) {
            ifs_json = ifs_to_json(load_ifs(hsp_ifs_path));
        } else if (!hsp_rho.empty() && !hsp_digits.empty()) {
            std::vector<Point> digits = parse_point_list(hsp_digits);
            int d = digits.front().dimension();
            HomogeneousIFS ifs(parse_rational(hsp_rho), OrthoMatrix::identity(d), DigitSet(digits));
            ifs_json = ifs_to_json(ifs);
        } else {
            throw parse_error("hsp-bound: provide --ifs or both --rho and --digits");
        }
        cmd.inputs["ifs"] = std::move(ifs_json);
        cmd.inputs["probe_depth"] = hsp_probe;
        cmd.inputs["state_cap"] = hsp_state_cap;
    } else if (app.got_subcommand(efam)) {
        cmd.name = "e-family";
        cmd.inputs["rho"] = format_rational(parse_rational(ef_rho));
        cmd.inputs["N"] = ef_n;
        cmd.inputs["probe_depth"] = ef_probe;
    } else if (app.got_subcommand(l21)) {
        cmd.name = "lemma21";
        if (l21_exhaustive) {
            cmd.inputs["mode"] = "exhaustive";
            cmd.inputs["max_size"] = l21_max_size;
            cmd.inputs["dimension"] = l21_dim;
            cmd.inputs["range"] = l21_range;
            cmd.inputs["budget"] = l21_budget;
        } else if (l21_random > 0) {
            cmd.inputs["mode"] = "random";
            cmd.inputs["instances"] = l21_random;
            cmd.inputs["seed"] = l21_seed;
            cmd.inputs["max_size"] = l21_max_size;
            cmd.inputs["dimension"] = l21_dim;
            cmd.inputs["range"] = l21_range;
        } else {
            if (l21_set.empty() || l21_translations.empty())
                throw parse_error("lemma21: provide --set and --translations, or --exhaustive/--random");
            cmd.inputs["mode"] = "single";
            cmd.inputs["set"] = points_to_json(parse_point_list(l21_set));
            cmd.inputs["translations"] = points_to_json(parse_point_list(l21_translations));
        }
    } else if (app.got_subcommand(psp)) {
        cmd.name = "psp";
        cmd.inputs["ifs"] = ifs_to_json(load_ifs(psp_ifs_path));
        cmd.inputs["ell"] = psp_ell;
        cmd.inputs["depth"] = psp_depth;
        cmd.inputs["partition"] = psp_partition;
        cmd.inputs["rounds"] = psp_rounds;
        cmd.inputs["beta"] = format_rational(parse_rational(psp_beta));
        cmd.inputs["cap"] = psp_cap;
    } else if (app.got_subcommand(pdsp)) {
        cmd.name = "pdsp";
        cmd.inputs["ifs"] = ifs_to_json(load_ifs(pdsp_ifs_path));
        cmd.inputs["ell"] = pdsp_ell;
        cmd.inputs["depth"] = pdsp_depth;
        cmd.inputs["cap"] = pdsp_cap;
    } else if (app.got_subcommand(hog)) {
        cmd.name = "homogenize";
        Json maps = load_json_file(hog_maps_path);
        affine_maps_from_json(maps); // validate now so parse errors map to 64
        cmd.inputs["maps"] = std::move(maps);
        cmd.inputs["check_depth"] = hog_check_depth;
        cmd.inputs["cap"] = hog_cap;
    } else if (app.got_subcommand(box)) {
        cmd.name = "boxdim";
        cmd.inputs["ifs"] = ifs_to_json(load_ifs(box_ifs_path));
        cmd.inputs["set"] = parse_index_set(box_set).literal();
        cmd.inputs["min_depth"] = box_min;
        cmd.inputs["max_depth"] = box_max;
        cmd.inputs["estimator"] = box_estimator;
        cmd.inputs["cap"] = box_cap;
    } else if (app.got_subcommand(mor)) {
        cmd.name = "moran";
        cmd.inputs["alpha"] = format_rational(parse_rational(mor_alpha));
        if (mor_ell > 0) cmd.inputs["ell"] = mor_ell;
        cmd.inputs["k_max"] = mor_kmax;
        cmd.inputs["depth"] = mor_depth;
        cmd.inputs["cap"] = mor_cap;
    } else if (app.got_subcommand(gt)) {
        cmd.name = "gamma-table";
        cmd.inputs["max_digit_count"] = gt_max;
    } else if (app.got_subcommand(ver)) {
        cmd.name = "verify";
        cmd.verify_path = verify_in;
    }
    return cmd;
}

bool all_verified(const Json& certificates) {
    for (const auto& cert : certificates)
        if (!cert.value("verified", false)) return false;
    return true;
}

} // namespace

RunReport run_cli(const std::vector<std::string>& args) {
    RunReport report;
    auto start = std::chrono::steady_clock::now();
    auto stamp = [&] {
        report.timing_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    ParsedCommand cmd;
    try {
        cmd = parse_args(args);
    } catch (const help_requested& h) {
        report.subcommand = "help";
        report.status = "help";
        report.exit_code = kExitVerified;
        report.message = h.text;
        stamp();
        return report;
    } catch (const CLI::ParseError& e) {
        report.status = "parse-error";
        report.message = e.what();
        report.exit_code = kExitUsage;
        stamp();
        return report;
    } catch (const parse_error& e) {
        report.status = "parse-error";
        report.message = e.what();
        report.exit_code = kExitUsage;
        stamp();
        return report;
    } catch (const std::invalid_argument& e) {
        report.status = "parse-error";
        report.message = e.what();
        report.exit_code = kExitUsage;
        stamp();
        return report;
    }

    report.subcommand = cmd.name;
    report.inputs = cmd.inputs;
    report.out_path = cmd.out_path;
    report.csv_path = cmd.csv_path;

    try {
        if (cmd.name == "verify") {
            Json stored = load_json_file(cmd.verify_path);
            std::string inner_name = stored.at("subcommand").get<std::string>();
            Json inner_inputs = stored.at("inputs");
            report.inputs = Json::object();
            report.inputs["subcommand"] = inner_name;
            report.inputs["inputs"] = inner_inputs;
            ExecOutcome redo = exec_subcommand(inner_name, inner_inputs);
            bool same_certs = redo.certificates == stored.at("certificates");
            bool same_sweep = true;
            if (stored.contains("sweep") || !redo.sweep.is_null())
                same_sweep = stored.contains("sweep") && !redo.sweep.is_null() &&
                             redo.sweep == stored.at("sweep");
            report.certificates = redo.certificates;
            if (!redo.sweep.is_null()) report.sweep = redo.sweep;
            if (same_certs && same_sweep) {
                report.status = "verified";
                report.exit_code = kExitVerified;
                report.message = "re-verified " + std::to_string(report.certificates.size()) + " certificate(s)";
            } else {
                report.status = "verification-failed";
                report.exit_code = kExitVerificationFailed;
                report.message = "recomputed certificates differ from the stored report";
            }
        } else {
            ExecOutcome outcome = exec_subcommand(cmd.name, cmd.inputs);
            report.certificates = outcome.certificates;
            report.sweep = outcome.sweep;
            if (!outcome.status_override.empty()) {
                report.status = outcome.status_override;
                report.exit_code = report.status == "hypothesis-not-met" ? kExitHypothesis
                                                                         : kExitVerificationFailed;
            } else if (all_verified(report.certificates)) {
                report.status = "verified";
                report.exit_code = kExitVerified;
            } else {
                report.status = "verification-failed";
                report.exit_code = kExitVerificationFailed;
            }
        }
    } catch (const hypothesis_error& e) {
        report.status = "hypothesis-not-met";
        report.message = e.what();
        report.exit_code = kExitHypothesis;
    } catch (const budget_error& e) {
        report.status = "budget-exceeded";
        report.message = e.what();
        report.exit_code = kExitBudget;
    } catch (const horizon_error& e) {
        report.status = "budget-exceeded";
        report.message = e.what();
        report.exit_code = kExitBudget;
    } catch (const verification_error& e) {
        report.status = "verification-failed";
        report.message = e.what();
        report.exit_code = kExitVerificationFailed;
    } catch (const parse_error& e) {
        report.status = "parse-error";
        report.message = e.what();
        report.exit_code = kExitUsage;
    } catch (const std::invalid_argument& e) {
        report.status = "parse-error";
        report.message = e.what();
        report.exit_code = kExitUsage;
    } catch (const std::out_of_range& e) {
        report.status = "parse-error";
        report.message = e.what();
        report.exit_code = kExitUsage;
    }
    stamp();
    return report;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunReport report = run_cli(args);

    std::cout << "fsumset " << report.subcommand << ": " << report.status << " (exit " << report.exit_code
              << ", " << report.timing_ms << " ms)\n";
    if (!report.message.empty()) std::cout << "  " << report.message << "\n";
    for (std::size_t i = 0; i < report.certificates.size(); ++i) {
        const Json& cert = report.certificates[i];
        std::cout << "  certificate[" << i << "] " << cert.value("claim", std::string("?")) << ": "
                  << (cert.value("verified", false) ? "verified" : "NOT verified") << "\n";
    }
    if (!report.sweep.is_null())
        std::cout << "  sweep rows: " << report.sweep.size() << "\n";

    if (!report.out_path.empty()) {
        std::ofstream out(report.out_path);
        if (!out) {
            std::cerr << "cannot write report to " << report.out_path << "\n";
            return kExitUsage;
        }
        out << report.to_json(true).dump(2) << "\n";
        std::cout << "  report: " << report.out_path << "\n";
    }
    if (!report.csv_path.empty()) {
        if (report.sweep.is_null()) {
            std::cerr << "--csv given but this subcommand produced no sweep\n";
            return kExitUsage;
        }
        std::ofstream csv(report.csv_path);
        if (!csv) {
            std::cerr << "cannot write csv to " << report.csv_path << "\n";
            return kExitUsage;
        }
        csv << sweep_to_csv(report.sweep);
        std::cout << "  csv: " << report.csv_path << "\n";
    }
    return report.exit_code;
}

} // namespace fsum
