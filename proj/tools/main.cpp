#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigeig/genbench.hpp"
#include "rigeig/io.hpp"
#include "rigeig/krawczyk.hpp"
#include "rigeig/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartialFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rigeig::ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

int run_verify(const std::string& input, const std::string& method_name, double inflate,
               const std::string& output, const std::string& format, bool parallel) {
    const auto method = rigeig::method_from_string(method_name);
    if (!method) {
        std::cerr << "error: unknown method '" << method_name << "'\n";
        return kExitInputError;
    }
    if (format != "json" && format != "csv") {
        std::cerr << "error: unknown report format '" << format << "'\n";
        return kExitInputError;
    }

    std::string bytes;
    rigeig::IntervalMatrix a;
    try {
        bytes = read_file(input);
        a = rigeig::parse_matrix_document(bytes).to_interval(inflate);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    rigeig::ReportDocument report;
    report.input_hash = rigeig::fnv1a_hex(bytes);
    report.method = method_name;
    report.n = a.rows();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (*method == rigeig::Method::RadiiPolynomials) {
            const auto results = rigeig::verify_eigendecomposition(a, parallel);
            for (const auto& [i, j] : rigeig::find_duplicate_enclosures(results))
                std::cerr << "warning: enclosures " << i << " and " << j
                          << " overlap; the approximate solver likely returned duplicate"
                             " candidates\n";
            for (const auto& enc : results)
                report.records.push_back(rigeig::record_from_enclosure(enc));
        } else {
            const auto cands =
                rigeig::approx_eigendecomposition(rigeig::midpoint_matrix(a));
            for (const auto& cand : cands) {
                const auto kr = rigeig::krawczyk_verify(a, cand);
                const auto asmres = rigeig::assemble_problem(a, cand);
                rigeig::ReportRecord rec;
                rec.lambda = asmres.problem.x_bar[0];
                rec.vector_center = asmres.problem.full_vector(asmres.problem.x_bar);
                rec.pivot_k = asmres.problem.pivot + 1;
                if (kr.success) {
                    rec.status = "Verified";
                    rec.r_exist = kr.box_radius;
                    rec.r_unique = kr.box_radius;
                    rec.is_real =
                        rigeig::realness_check(a, rec.lambda, rec.vector_center);
                } else {
                    rec.status = "Failed";
                    rec.failure_reason = "krawczyk containment failed after " +
                                         std::to_string(kr.iterations) + " inflations";
                }
                report.records.push_back(std::move(rec));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    const auto t1 = std::chrono::steady_clock::now();
    report.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();

    const std::string rendered = format == "json" ? rigeig::serialize_report_json(report)
                                                  : rigeig::serialize_report_csv(report);
    try {
        write_output(output, rendered);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return report.all_verified() ? kExitOk : kExitPartialFailure;
}

int run_gen(std::size_t n, std::uint64_t seed, double rad, const std::string& output) {
    try {
        const rigeig::ComplexMatrix mid = rigeig::generate_midpoint(n, seed);
        write_output(output, rigeig::serialize_matrix_document(
                                 rigeig::document_from_midrad(mid, rad)));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

int run_bench(const std::vector<std::size_t>& n_list, double rad,
              const std::vector<std::string>& method_names, const std::string& output,
              std::uint64_t seed) {
    if (n_list.empty()) {
        std::cerr << "error: --N-list must not be empty\n";
        return kExitInputError;
    }
    std::set<rigeig::Method> methods;
    for (const auto& name : method_names) {
        const auto m = rigeig::method_from_string(name);
        if (!m) {
            std::cerr << "error: unknown method '" << name << "'\n";
            return kExitInputError;
        }
        methods.insert(*m);
    }
    try {
        const auto rows = rigeig::timing_benchmark(n_list, rad, methods, seed);
        std::ostringstream ss;
        rigeig::write_bench_csv(ss, rows);
        write_output(output, ss.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigorous eigendecomposition enclosures for complex interval matrices"};
    app.require_subcommand(1);

    // verify
    std::string verify_input, verify_output, verify_format = "json",
                verify_method = "radiipol";
    double verify_rad = 0.0;
    bool verify_parallel = false;
    auto* verify = app.add_subcommand(
        "verify", "verify the eigendecomposition of a matrix document");
    verify->add_option("input", verify_input, "matrix document (JSON)")->required();
    verify->add_option("--method", verify_method, "radiipol or krawczyk")
        ->default_val("radiipol");
    verify->add_option("--rad", verify_rad,
                       "inflate every entry's radii by this amount before verification")
        ->default_val(0.0);
    verify->add_option("--output", verify_output, "report path (default stdout)");
    verify->add_option("--format", verify_format, "report format: json or csv")
        ->default_val("json");
    verify->add_flag("--parallel", verify_parallel, "verify candidates concurrently");

    // gen
    std::size_t gen_n = 5;
    std::uint64_t gen_seed = 0;
    double gen_rad = 0.0;
    std::string gen_output;
    auto* gen = app.add_subcommand("gen", "generate a test matrix document");
    gen->add_option("--N", gen_n, "spectrum size (matrix dimension N+1)")->required();
    gen->add_option("--seed", gen_seed, "generator seed")->default_val(0);
    gen->add_option("--rad", gen_rad, "entrywise radius")->default_val(0.0);
    gen->add_option("--output", gen_output, "output path (default stdout)");

    // bench
    std::vector<std::size_t> bench_n;
    double bench_rad = 1e-15;
    std::vector<std::string> bench_methods{"radiipol", "krawczyk"};
    std::string bench_output;
    std::uint64_t bench_seed = 0;
    auto* bench =
        app.add_subcommand("bench", "time full eigendecomposition verification");
    bench->add_option("--N-list", bench_n, "spectrum sizes, comma separated")
        ->required()
        ->delimiter(',');
    bench->add_option("--rad", bench_rad, "entrywise radius")->default_val(1e-15);
    bench->add_option("--methods", bench_methods, "methods to time, comma separated")
        ->delimiter(',');
    bench->add_option("--seed", bench_seed, "generator seed")->default_val(0);
    bench->add_option("--output", bench_output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (verify->parsed())
        return run_verify(verify_input, verify_method, verify_rad, verify_output,
                          verify_format, verify_parallel);
    if (gen->parsed()) return run_gen(gen_n, gen_seed, gen_rad, gen_output);
    if (bench->parsed())
        return run_bench(bench_n, bench_rad, bench_methods, bench_output, bench_seed);
    return kExitInputError;
}
