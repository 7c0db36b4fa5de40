#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigeig/matrix.hpp"
#include "rigeig/verifier.hpp"

namespace rigeig {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// On-disk matrix: entrywise midpoints and radii. A plain point matrix is
/// the special case of all radii zero.
struct MatrixDocument {
    struct Entry {
        double re_mid = 0.0;
        double im_mid = 0.0;
        double re_rad = 0.0;
        double im_rad = 0.0;
    };

    std::size_t n = 0;
    std::vector<Entry> entries;  // row-major n*n

    Entry& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const Entry& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    // extra_rad inflates every entry's radii before conversion.
    IntervalMatrix to_interval(double extra_rad = 0.0) const;
};

MatrixDocument parse_matrix_document(const std::string& text);
std::string serialize_matrix_document(const MatrixDocument& doc);

MatrixDocument document_from_midrad(const ComplexMatrix& mid, double rad);

/// Per-eigenpair verification record plus run metadata.
struct ReportRecord {
    std::string status;
    Complex lambda{};
    std::vector<Complex> vector_center;
    std::size_t pivot_k = 0;  // 1-based in documents
    std::optional<double> r_exist;
    std::optional<double> r_unique;
    bool is_real = false;
    std::string failure_reason;  // empty on Verified
};

struct ReportDocument {
    std::string input_hash;
    std::string method;
    double wall_time_seconds = 0.0;
    std::size_t n = 0;
    std::vector<ReportRecord> records;

    bool all_verified() const;
};

ReportRecord record_from_enclosure(const EigenpairEnclosure& enc);

std::string serialize_report_json(const ReportDocument& doc);
std::string serialize_report_csv(const ReportDocument& doc);
ReportDocument parse_report_json(const std::string& text);

/// FNV-1a 64-bit hash of raw bytes, as a fixed-width hex string.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace rigeig
