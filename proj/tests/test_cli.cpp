#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "rigeig/io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(RIGEIG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("rigeig_test_" + name);
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("gen emits identical bytes for identical flags") {
    auto out1 = temp_file("gen1.json"), out2 = temp_file("gen2.json");
    CHECK(run_cli("gen --N 3 --seed 42 --rad 1e-5 --output " + out1.string()).exit_code == 0);
    CHECK(run_cli("gen --N 3 --seed 42 --rad 1e-5 --output " + out2.string()).exit_code == 0);
    CHECK(testsupport::read_file(out1.string()) == testsupport::read_file(out2.string()));

    auto doc = rigeig::parse_matrix_document(testsupport::read_file(out1.string()));
    CHECK(doc.n == 4);
    CHECK(doc.entries[0].re_rad == 1e-5);
}

TEST_CASE("verify on the Floquet fixture succeeds end to end") {
    auto out = temp_file("lorenz_report.json");
    auto res = run_cli("verify " + testsupport::fixture_path("lorenz_floquet.json") +
                       " --output " + out.string());
    CHECK(res.exit_code == 0);

    auto report = rigeig::parse_report_json(testsupport::read_file(out.string()));
    REQUIRE(report.records.size() == 3);
    CHECK(report.method == "radiipol");
    CHECK(report.all_verified());
    for (const auto& rec : report.records) {
        CHECK(rec.is_real);
        CHECK(rec.r_exist.has_value());
        CHECK(*rec.r_exist <= *rec.r_unique);
    }
}

TEST_CASE("verify with the krawczyk baseline") {
    auto out = temp_file("lorenz_krawczyk.json");
    auto res = run_cli("verify " + testsupport::fixture_path("lorenz_floquet.json") +
                       " --method krawczyk --output " + out.string());
    CHECK(res.exit_code == 0);
    auto report = rigeig::parse_report_json(testsupport::read_file(out.string()));
    CHECK(report.method == "krawczyk");
    CHECK(report.all_verified());
}

TEST_CASE("verify exits 1 when enclosures fail") {
    auto in = temp_file("identity.json");
    rigeig::MatrixDocument doc;
    doc.n = 2;
    doc.entries.resize(4);
    doc.at(0, 0) = {1.0, 0.0, 0.0, 0.0};
    doc.at(1, 1) = {1.0, 0.0, 0.0, 0.0};
    write_file(in, rigeig::serialize_matrix_document(doc));

    auto out = temp_file("identity_report.json");
    auto res = run_cli("verify " + in.string() + " --output " + out.string());
    CHECK(res.exit_code == 1);
    auto report = rigeig::parse_report_json(testsupport::read_file(out.string()));
    for (const auto& rec : report.records) {
        CHECK(rec.status != "Verified");
        CHECK_FALSE(rec.failure_reason.empty());
    }
}

TEST_CASE("verify exits 2 on malformed input") {
    auto in = temp_file("truncated.json");
    write_file(in, "{\"n\": 3, \"entries\": [[");
    CHECK(run_cli("verify " + in.string()).exit_code == 2);
    CHECK(run_cli("verify /nonexistent/path.json").exit_code == 2);
}

TEST_CASE("csv report format") {
    auto out = temp_file("report.csv");
    auto res = run_cli("verify " + testsupport::fixture_path("lorenz_floquet.json") +
                       " --format csv --output " + out.string());
    CHECK(res.exit_code == 0);
    auto text = testsupport::read_file(out.string());
    CHECK(text.rfind("status,", 0) == 0);
    CHECK(text.find("Verified") != std::string::npos);
}

TEST_CASE("rad flag inflates a point document") {
    auto in = temp_file("point.json");
    rigeig::MatrixDocument doc;
    doc.n = 2;
    doc.entries.resize(4);
    doc.at(0, 0) = {1.0, 0.0, 0.0, 0.0};
    doc.at(1, 1) = {2.0, 0.0, 0.0, 0.0};
    write_file(in, rigeig::serialize_matrix_document(doc));
    CHECK(run_cli("verify " + in.string() + " --rad 1e-8").exit_code == 0);
}

TEST_CASE("bench subcommand writes a CSV") {
    auto out = temp_file("bench.csv");
    auto res = run_cli("bench --N-list 2,3 --rad 1e-15 --methods radiipol --output " +
                       out.string());
    CHECK(res.exit_code == 0);
    auto text = testsupport::read_file(out.string());
    CHECK(text.rfind("N,method,", 0) == 0);
    CHECK(text.find("2,radiipol,") != std::string::npos);
    CHECK(text.find("3,radiipol,") != std::string::npos);
}

TEST_CASE("bench rejects an empty N list") {
    CHECK(run_cli("bench --N-list \"\" --methods radiipol").exit_code == 2);
}
