#include <doctest.h>

// Subprocess-level checks of the command-line tool: exit codes, output
// determinism, result round-trips.

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "resonant/bigfloat.hpp"

namespace {

using Json = nlohmann::ordered_json;

std::string example(const char* name) { return std::string(RESONANT_EXAMPLE_DIR "/") + name; }

int run(const std::string& args) {
    std::string cmd = std::string(RESONANT_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("resonance subcommand and positivity exit codes") {
    CHECK(run("resonance " + example("hopf.example")) == 0);
    CHECK(run("resonance " + example("hopf.example") + " --require-positivity") == 0);
    CHECK(run("resonance " + example("resonance112.example")) == 0);
    CHECK(run("resonance " + example("resonance112.example") + " --require-positivity") == 2);
    CHECK(run("check-positivity " + example("resonance112.example")) == 2);
}

TEST_CASE("malformed input exits 1") {
    std::ofstream("bad.json") << "{ not json";
    CHECK(run("resonance bad.json") == 1);
    CHECK(run("normalize no_such_file.json") == 1);
}

TEST_CASE("normalize produces byte-identical results across runs") {
    REQUIRE(run("normalize " + example("hopf.example") + " --out run_a.json") == 0);
    REQUIRE(run("normalize " + example("hopf.example") + " --out run_b.json") == 0);
    std::string a = slurp("run_a.json"), b = slurp("run_b.json");
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("versal command emits parseable JSON with the ideal data") {
    REQUIRE(run("versal " + example("hopf.example") + " --json") == 0);
    Json doc = Json::parse(slurp("cli_stdout.txt"));
    CHECK(doc.at("schema").get<std::string>() == "resonant-forms/result-v1");
    CHECK(doc.at("versal").at("bs_generators").size() == 1);
    CHECK(doc.at("versal").at("nondegenerate").get<bool>());
    // the stored residuals are tiny
    resonant::BigFloat res =
        resonant::bf_from_string(doc.at("normal_form").at("residual").get<std::string>());
    CHECK(static_cast<double>(res) < 1e-30);
}

TEST_CASE("verify accepts stored results and rejects tampered ones") {
    REQUIRE(run("versal " + example("hopf.example") + " --out verify_me.json") == 0);
    CHECK(run("verify verify_me.json") == 0);

    // flip the sign of one generator coefficient
    Json doc = Json::parse(slurp("verify_me.json"));
    auto& gens = doc.at("normal_form").at("generators");
    bool flipped = false;
    for (auto& g : gens) {
        for (auto& comp : g.at("phi_components")) {
            auto& terms = comp.at("terms");
            if (!terms.empty()) {
                resonant::BigFloat v = resonant::bf_from_string(terms[0].at("re").get<std::string>());
                terms[0]["re"] = resonant::bf_to_hex(-v);
                flipped = true;
                break;
            }
        }
        if (flipped) break;
    }
    REQUIRE(flipped);
    std::ofstream("tampered.json") << doc.dump(2) << "\n";
    CHECK(run("verify tampered.json") == 3);
}

TEST_CASE("bruno subcommand") {
    CHECK(run("bruno " + example("hopf.example") + " --kmax 4") == 0);
    std::string out = slurp("cli_stdout.txt");
    CHECK(out.find("sigma: 1 1 1 1 1") != std::string::npos);
    CHECK(out.find("bruno_up_to_kmax") != std::string::npos);

    CHECK(run("bruno " + example("hopf.example") + " --kmax 3 --phi 0.9:0,0:0 --s 0.5 --s0 1") == 0);
    CHECK(slurp("cli_stdout.txt").find("Z membership: false") != std::string::npos);
}

TEST_CASE("versal pipeline without positivity exits 2") {
    CHECK(run("versal " + example("resonance112.example")) == 2);
}

TEST_CASE("a small divisor below the guard exits 4") {
    // lambda = (1, -1 - 2^-40) at 128-bit precision: the divisor at
    // K = (2,1) is 2^-40, below the 2^-32 guard
    Json doc;
    doc["dim"] = 2;
    doc["mu_count"] = 0;
    doc["truncation"] = 8;
    doc["precision"] = 128;
    doc["mode"] = "poincare_dulac";
    doc["trans_basis"] = Json::object({{"size", 1}, {"omega", Json::array({"1"})}});
    long long den = 1LL << 40;
    doc["lambda_exact"] = Json::parse("[[[1,1]],[[-" + std::to_string(den + 1) + "," + std::to_string(den) + "]]]");
    doc["field_terms"] = Json::array();
    doc["field_terms"].push_back(
        Json::object({{"target", 1}, {"exponent", Json::array({1, 0})}, {"coefficient", 1}}));
    // the nearly-resonant eigenvalue, written exactly: -(2^40+1)/2^40
    doc["field_terms"].push_back(Json::object({{"target", 2},
                                               {"exponent", Json::array({0, 1})},
                                               {"coefficient", Json::object({{"re", "-0x1.0000000001p+0"}})}}));
    doc["field_terms"].push_back(
        Json::object({{"target", 1}, {"exponent", Json::array({2, 1})}, {"coefficient", 1}}));
    std::ofstream("blowup.json") << doc.dump(2) << "\n";
    CHECK(run("normalize blowup.json") == 4);
}

TEST_CASE("precision environment variable overrides the default") {
    // the env var applies when neither the file nor --precision pins it
    Json doc = Json::parse(slurp(example("hopf.example")));
    doc.erase("precision");
    std::ofstream("hopf_nopre.json") << doc.dump(2) << "\n";

    std::string cmd = std::string("RESONANT_FORMS_PRECISION=128 ") + RESONANT_CLI_PATH +
                      " normalize hopf_nopre.json --json > cli_stdout.txt 2> cli_stderr.txt";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    Json out = Json::parse(slurp("cli_stdout.txt"));
    CHECK(out.at("meta").at("precision").get<unsigned>() == 128);

    // an explicit file setting wins over the environment
    cmd = std::string("RESONANT_FORMS_PRECISION=128 ") + RESONANT_CLI_PATH + " normalize " +
          example("hopf.example") + " --json > cli_stdout.txt 2> cli_stderr.txt";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    out = Json::parse(slurp("cli_stdout.txt"));
    CHECK(out.at("meta").at("precision").get<unsigned>() == 256);
}
