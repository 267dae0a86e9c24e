#include "doctest.h"

#include <cstdlib>

#include "cohwit/analysis.hpp"
#include "cohwit/document.hpp"
#include "support/generators.hpp"
#include "support/golden_cases.hpp"

using namespace cohwit;
using namespace cohwit::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json run_json(const std::string& name)
{
    for (const auto& c : golden_cases())
        if (c.name == name) {
            const auto r = run_case(c);
            REQUIRE(r.exit_code == 0);
            return json::parse(r.out);
        }
    FAIL("no such case " << name);
    return {};
}

HermitianMatrix<double> input_matrix(const std::string& stem)
{
    return to_hermitian(read_matrix_file((golden_dir() / "inputs" / (stem + ".json")).string()), 1e-12);
}

} // namespace

TEST_CASE("golden reports")
{
    // COHWIT_UPDATE_GOLDEN=1 rewrites the expected reports instead of checking.
    const bool update = std::getenv("COHWIT_UPDATE_GOLDEN") != nullptr;
    for (const auto& c : golden_cases()) {
        CAPTURE(c.name);
        if (update && c.exit_code == 0) {
            const auto r = run_case(c);
            REQUIRE(r.exit_code == 0);
            std::ofstream(golden_dir() / "expected" / (c.name + ".json"), std::ios::binary) << r.out;
            continue;
        }
        CHECK(check_case(c) == "");
    }
}

TEST_CASE("every subcommand has a golden case")
{
    for (const std::string sub : {"validate", "detect", "synthesize", "evade", "common", "intersect", "relation",
                                  "family", "kerneldim"}) {
        bool seen = false;
        for (const auto& c : golden_cases())
            seen = seen || (c.exit_code == 0 && std::find(c.args.begin(), c.args.end(), sub) != c.args.end());
        CHECK_MESSAGE(seen, sub);
    }
}

TEST_CASE("input documents round-trip byte for byte")
{
    int count = 0;
    for (const auto& entry : fs::directory_iterator(golden_dir() / "inputs")) {
        if (entry.path().stem() == "truncated")
            continue;
        const auto text = read_text(entry.path());
        CHECK(serialize(parse_matrix_document(text)) == text);
        ++count;
    }
    CHECK(count >= 10);
    for (const auto& entry : fs::directory_iterator(golden_dir() / "expected")) {
        const auto text = read_text(entry.path());
        CHECK(serialize(json::parse(text)) == text);
    }
}

TEST_CASE("document parsing is strict")
{
    CHECK_THROWS_AS(parse_matrix_document("{"), ParseError);
    CHECK_THROWS_AS(parse_matrix_document(R"({"dim": 2, "entries": [[1, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_document(R"({"dim": 1, "entries": [[1, 0]], "extra": 1})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_document(R"({"dim": 1, "entries": [[1, 0, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_document(R"({"dim": 1, "entries": [["1", 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_document(R"({"dim": 0, "entries": []})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_document(R"({"entries": [[1, 0]]})"), ParseError);
    const auto doc = parse_matrix_document(R"({"dim": 1, "entries": [[2.5, 0]]})");
    CHECK(doc.dim == 1);
    CHECK_FALSE(doc.label);
    CHECK_THROWS_AS(read_matrix_file((golden_dir() / "inputs" / "missing.json").string()), ParseError);

    Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        const auto h = random_hermitian(uniform_dim(rng, 1, 5), rng);
        const auto back = to_hermitian(parse_matrix_document(serialize(to_document(h, "m"))), 1e-12);
        CHECK(back == h);
    }
}

TEST_CASE("report contents")
{
    SUBCASE("validate")
    {
        const auto p = run_json("validate_example")["payload"];
        CHECK(p["member"] == true);
        CHECK(p["nontrivial"] == true);
        CHECK(p["trace"] == 1.0);
        CHECK(p["region"] == "two_lobes");
        const auto q = run_json("validate_identity_geq")["payload"];
        CHECK(q["member"] == true);
        CHECK(q["nontrivial"] == false);
    }
    SUBCASE("detect")
    {
        const auto w1 = run_json("detect_pair_w1")["payload"];
        CHECK(std::abs(w1["expectation"].get<double>() + 1.0 / 12) <= 1e-12);
        CHECK(w1["outcome"] == "detected_below");
        const auto w2 = run_json("detect_pair_w2")["payload"];
        CHECK(std::abs(w2["expectation"].get<double>() - 13.0 / 12) <= 1e-12);
        CHECK(w2["outcome"] == "detected_above");
        const auto mixed = run_json("detect_mixed")["payload"];
        CHECK(mixed["expectation"] == 0.5);
        CHECK(mixed["outcome"] == "compatible_incoherent");
        CHECK(mixed["interval"]["hi"] == 1.0);
    }
    SUBCASE("family and kerneldim")
    {
        CHECK(run_json("family_x0_d3")["payload"]["members"].size() == 6);
        CHECK(run_json("family_geq_d2")["payload"]["count"] == 4);
        CHECK(run_json("kerneldim_triple_w1")["payload"]["dimension"] == 8);
        CHECK(run_json("kerneldim_example")["payload"]["dimension"] == 3);
    }
    SUBCASE("intersect")
    {
        CHECK(run_json("intersect_triple")["payload"]["sufficient_condition_holds"] == true);
        const auto pair = run_json("intersect_pair_r1")["payload"];
        CHECK(pair["sufficient_condition_holds"] == false);
        CHECK(pair["failing_subset"] == json::array({1}));
        const auto seeded = run_json("intersect_single_gt_seeded");
        CHECK(seeded["seed"] == 7);
        CHECK(seeded["tolerances"]["psd"] == 1e-10);
        CHECK(seeded["payload"]["status"] == "found_common_state");
    }
    SUBCASE("relation")
    {
        const auto scaled = run_json("relation_scaled_geq")["payload"];
        CHECK(scaled["relation"] == "equal");
        CHECK(std::abs(scaled["scale"].get<double>() - 3.0) <= 1e-12);
        CHECK(run_json("relation_complement_r1")["payload"]["relation"] == "equal");
        CHECK(run_json("relation_included_geq")["payload"]["relation"] == "included");
        CHECK(std::abs(run_json("relation_real_scale_x0")["payload"]["scale"].get<double>() + 2.0) <= 1e-12);
        CHECK(run_json("relation_incomparable_x0")["payload"]["relation"] == "incomparable");
    }
}

TEST_CASE("reports are self-verifying")
{
    SUBCASE("simplex certificate")
    {
        const auto report = run_json("intersect_pair_geq");
        const auto& cert = report["payload"]["certificate"];
        REQUIRE(report["payload"]["status"] == "proved_empty");
        const auto w = cert["weights"].get<std::vector<double>>();
        REQUIRE(w.size() == 2);
        const auto combo = w[0] * input_matrix("pair_w1") + w[1] * input_matrix("pair_w2");
        CHECK(std::abs(min_eigenvalue(combo) - cert["combined_min_eigenvalue"].get<double>()) <= 1e-9);
        CHECK(min_eigenvalue(combo) >= -report["tolerances"]["psd"].get<double>());
    }
    SUBCASE("constructed states")
    {
        for (const auto& [name, stems] :
             std::vector<std::pair<std::string, std::vector<std::string>>>{
                 {"evade_triple", {"triple_w1", "triple_w2", "triple_w3"}},
                 {"common_pair", {"pair_r12", "pair_i12"}},
                 {"intersect_single_gt_seeded", {"example_w_r025"}}}) {
            CAPTURE(name);
            const auto p = run_json(name)["payload"];
            const auto rho = DensityMatrix<double>::from(to_hermitian(matrix_document_from_json(p["state"]), 1e-12));
            const auto e = p["expectations"].get<std::vector<double>>();
            REQUIRE(e.size() == stems.size());
            for (std::size_t i = 0; i < stems.size(); ++i)
                CHECK(expectation(input_matrix(stems[i]), rho) == e[i]);
        }
    }
    SUBCASE("relation remainder")
    {
        const auto p = run_json("relation_included_geq")["payload"];
        const auto rem = to_hermitian(matrix_document_from_json(p["psd_remainder"]), 1e-12);
        const double a = p["scale"].get<double>();
        CHECK(max_abs(input_matrix("psd_shift_w2") - (a * input_matrix("psd_shift_w1") + rem)) <= 1e-9);
        CHECK(min_eigenvalue(rem) >= -1e-9);
    }
}

TEST_CASE("--out writes the same report")
{
    const auto path = fs::temp_directory_path() / "cohwit_cli_out_test.json";
    fs::remove(path);
    auto args = resolve_args({"x", {"--x", "r=1", "--out", path.string(), "detect", "@pair_w1", "@pair_rho"}});
    std::ostringstream out, err;
    CHECK(cli::run(args, out, err) == 0);
    CHECK(out.str().empty());
    CHECK(read_text(path) == read_text(golden_dir() / "expected" / "detect_pair_w1.json"));
    fs::remove(path);
}

TEST_CASE("help and version exit cleanly")
{
    std::ostringstream out, err;
    CHECK(cli::run({"--version"}, out, err) == 0);
    CHECK(out.str() == std::string(cli::version) + "\n");
    std::ostringstream hout, herr;
    CHECK(cli::run({"--help"}, hout, herr) == 0);
    CHECK(hout.str().find("kerneldim") != std::string::npos);
}
