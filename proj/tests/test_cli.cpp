#include "fsum/cli.hpp"
#include "fsum/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace fsum;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("fsum_test_" + name);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string cantor_ifs_json() {
    return R"({"dimension":1,"ratio":"1/3","ortho":["1"],"digits":["(0)","(2/3)"],"normalized_zero_digit":true})";
}

} // namespace

TEST_CASE("e-family subcommand statuses") {
    RunReport ok = run_cli({"e-family", "--rho", "1/5", "--N", "1"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.status == "verified");
    CHECK(ok.certificates.size() == 1);
    CHECK(ok.certificates[0].at("verified") == Json(true));

    RunReport boundary = run_cli({"e-family", "--rho", "1/3", "--N", "1"});
    CHECK(boundary.exit_code == 2);
    CHECK(boundary.status == "hypothesis-not-met");

    RunReport bad = run_cli({"e-family", "--rho", "nonsense", "--N", "1"});
    CHECK(bad.exit_code == 64);
}

TEST_CASE("psp subcommand over an ifs file") {
    auto path = temp_file("cantor.json");
    write_file(path, cantor_ifs_json());

    RunReport report = run_cli({"psp", "--ifs", path.string(), "--ell", "2", "--depth", "6",
                                "--partition", "residues"});
    CHECK(report.exit_code == 0);
    const Json& witness = report.certificates[0].at("witness");
    CHECK(witness.at("sum_cardinality") == Json(64));
    CHECK(witness.at("part_cardinalities") == Json::array({8, 8}));

    RunReport missing = run_cli({"psp", "--ifs", "/nonexistent.json", "--ell", "2", "--depth", "6"});
    CHECK(missing.exit_code == 64);
}

TEST_CASE("pdsp and hsp-bound subcommands") {
    auto path = temp_file("cantor2.json");
    write_file(path, cantor_ifs_json());

    RunReport pdsp = run_cli({"pdsp", "--ifs", path.string(), "--ell", "2", "--depth", "4"});
    CHECK(pdsp.exit_code == 0);

    // The middle-third system's difference system overlaps: conditional only.
    RunReport hsp = run_cli({"hsp-bound", "--ifs", path.string()});
    CHECK(hsp.exit_code == 2);
    CHECK(hsp.status == "hypothesis-not-met");

    RunReport direct = run_cli({"hsp-bound", "--rho", "1/5", "--digits", "(0),(4/5)"});
    CHECK(direct.exit_code == 0);
}

TEST_CASE("lemma21 subcommand modes") {
    RunReport single =
        run_cli({"lemma21", "--set", "(0),(1)", "--translations", "(0),(1)"});
    CHECK(single.exit_code == 0);
    CHECK(single.certificates[0].at("exact_values").at("cardinality") == Json("1"));

    RunReport exhaustive = run_cli({"lemma21", "--exhaustive", "--max-size", "3", "--range", "3"});
    CHECK(exhaustive.exit_code == 0);
    CHECK(exhaustive.certificates[0].at("witness").at("violations") == Json(0));

    RunReport random_sweep = run_cli({"lemma21", "--random", "50", "--seed", "7"});
    CHECK(random_sweep.exit_code == 0);

    RunReport usage = run_cli({"lemma21"});
    CHECK(usage.exit_code == 64);
}

TEST_CASE("homogenize subcommand") {
    auto path = temp_file("maps.json");
    write_file(path, R"({"dimension":1,"maps":[
        {"ratio":"1/3","ortho":["1"],"shift":"(0)"},
        {"ratio":"1/3","ortho":["1"],"shift":"(2/3)"}]})");
    RunReport report = run_cli({"homogenize", "--maps", path.string(), "--check-depth", "3"});
    CHECK(report.exit_code == 0);
    const Json& witness = report.certificates[0].at("witness");
    CHECK(witness.at("output_ifs").at("ratio") == Json("1/9"));
    CHECK(witness.at("dictionary").at("1") == Json("12"));

    auto singleton = temp_file("maps_singleton.json");
    write_file(singleton, R"({"dimension":1,"maps":[
        {"ratio":"1/2","ortho":["1"],"shift":"(0)"},
        {"ratio":"1/2","ortho":["1"],"shift":"(0)"}]})");
    RunReport refused = run_cli({"homogenize", "--maps", singleton.string()});
    CHECK(refused.exit_code == 2);
}

TEST_CASE("boxdim sweep and csv rendering") {
    auto path = temp_file("cantor3.json");
    write_file(path, cantor_ifs_json());
    RunReport report = run_cli({"boxdim", "--ifs", path.string(), "--set", "mod:2,1", "--min-depth", "2",
                                "--max-depth", "6", "--estimator", "address"});
    CHECK(report.exit_code == 0);
    CHECK(report.sweep.size() == 5);
    std::string csv = sweep_to_csv(report.sweep);
    CHECK(csv.rfind("n,count,estimate\n", 0) == 0);
    CHECK(csv.find("\n2,2,") != std::string::npos);

    RunReport grid = run_cli({"boxdim", "--ifs", path.string(), "--min-depth", "2", "--max-depth", "4",
                              "--estimator", "grid"});
    CHECK(grid.exit_code == 0);
    CHECK(grid.sweep[0].at("count") == Json("4"));
}

TEST_CASE("moran subcommand with containment certificate") {
    RunReport report = run_cli({"moran", "--alpha", "1/2", "--ell", "2", "--k-max", "8", "--depth", "4"});
    CHECK(report.exit_code == 0);
    CHECK(report.certificates.size() == 2);
    CHECK(report.sweep.size() == 8);
    std::string csv = sweep_to_csv(report.sweep);
    CHECK(csv.rfind("k,m_k,N_k,s_k\n", 0) == 0);
    CHECK(csv.find("\n4,120,14400,0.5") != std::string::npos);

    RunReport budget = run_cli({"moran", "--alpha", "1/2", "--ell", "2", "--depth", "7", "--k-max", "8"});
    CHECK(budget.exit_code == 3);
    CHECK(budget.status == "budget-exceeded");
}

TEST_CASE("reports re-verify and detect tampering") {
    auto report_path = temp_file("efam_report.json");
    RunReport original = run_cli({"e-family", "--rho", "1/5", "--N", "1"});
    {
        std::ofstream out(report_path);
        out << original.to_json(true).dump(2) << "\n";
    }

    RunReport verified = run_cli({"verify", "--in", report_path.string()});
    CHECK(verified.exit_code == 0);
    CHECK(verified.status == "verified");

    Json tampered = original.to_json(true);
    tampered["certificates"][0]["numeric_values"]["beta"] = "0.999";
    auto tampered_path = temp_file("efam_tampered.json");
    {
        std::ofstream out(tampered_path);
        out << tampered.dump(2) << "\n";
    }
    RunReport failed = run_cli({"verify", "--in", tampered_path.string()});
    CHECK(failed.exit_code == 4);
    CHECK(failed.status == "verification-failed");
}

TEST_CASE("reports are deterministic modulo timing") {
    RunReport a = run_cli({"e-family", "--rho", "1/7", "--N", "2"});
    RunReport b = run_cli({"e-family", "--rho", "1/7", "--N", "2"});
    CHECK(a.to_json(false).dump(2) == b.to_json(false).dump(2));

    RunReport c = run_cli({"moran", "--alpha", "2/5", "--k-max", "6"});
    RunReport d = run_cli({"moran", "--alpha", "2/5", "--k-max", "6"});
    CHECK(c.to_json(false).dump(2) == d.to_json(false).dump(2));
}

TEST_CASE("gamma table subcommand") {
    RunReport report = run_cli({"gamma-table", "--max-digit-count", "500"});
    CHECK(report.exit_code == 0);
    CHECK(report.certificates[0].at("verified") == Json(true));
}

TEST_CASE("unknown subcommands and help") {
    CHECK(run_cli({"frobnicate"}).exit_code == 64);
    CHECK(run_cli({"--help"}).exit_code == 0);
    CHECK(run_cli({}).exit_code == 64);
}
