#include "rigeig/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace rigeig {

namespace {

using nlohmann::json;

// shortest decimal that round-trips the exact double
std::string roundtrip(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double require_number(const json& j, const std::string& context) {
    if (!j.is_number()) throw ParseError(context + ": expected a number");
    return j.get<double>();
}

}  // namespace

IntervalMatrix MatrixDocument::to_interval(double extra_rad) const {
    if (!(std::isfinite(extra_rad) && extra_rad >= 0.0))
        throw ParseError("matrix document: inflation radius must be finite and nonnegative");
    IntervalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Entry& e = at(i, j);
            m(i, j) = ComplexInterval::from_midrad(e.re_mid, e.im_mid,
                                                   rnd::add_up(e.re_rad, extra_rad),
                                                   rnd::add_up(e.im_rad, extra_rad));
        }
    }
    return m;
}

MatrixDocument parse_matrix_document(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("matrix document: ") + e.what());
    }
    if (!root.is_object() || !root.contains("n") || !root.contains("entries"))
        throw ParseError("matrix document: expected an object with fields 'n' and 'entries'");
    if (!root["n"].is_number_unsigned() || root["n"].get<std::size_t>() == 0)
        throw ParseError("matrix document: 'n' must be a positive integer");

    MatrixDocument doc;
    doc.n = root["n"].get<std::size_t>();
    const json& rows = root["entries"];
    if (!rows.is_array() || rows.size() != doc.n)
        throw ParseError("matrix document: 'entries' must be an array of n rows");

    doc.entries.resize(doc.n * doc.n);
    for (std::size_t i = 0; i < doc.n; ++i) {
        const json& row = rows[i];
        const std::string rc = "entries[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != doc.n)
            throw ParseError("matrix document: " + rc + " must be an array of n entries");
        for (std::size_t j = 0; j < doc.n; ++j) {
            const json& cell = row[j];
            const std::string cc = rc + "[" + std::to_string(j) + "]";
            if (!cell.is_object()) throw ParseError("matrix document: " + cc + ": expected object");
            MatrixDocument::Entry& e = doc.at(i, j);
            for (const char* field : {"re_mid", "im_mid", "re_rad", "im_rad"}) {
                if (!cell.contains(field))
                    throw ParseError("matrix document: " + cc + ": missing field '" + field + "'");
            }
            e.re_mid = require_number(cell["re_mid"], "matrix document: " + cc + ".re_mid");
            e.im_mid = require_number(cell["im_mid"], "matrix document: " + cc + ".im_mid");
            e.re_rad = require_number(cell["re_rad"], "matrix document: " + cc + ".re_rad");
            e.im_rad = require_number(cell["im_rad"], "matrix document: " + cc + ".im_rad");
            if (e.re_rad < 0.0 || e.im_rad < 0.0)
                throw ParseError("matrix document: " + cc + ": negative radius");
            if (!std::isfinite(e.re_mid) || !std::isfinite(e.im_mid) ||
                !std::isfinite(e.re_rad) || !std::isfinite(e.im_rad))
                throw ParseError("matrix document: " + cc + ": non-finite value");
        }
    }
    return doc;
}

std::string serialize_matrix_document(const MatrixDocument& doc) {
    json rows = json::array();
    for (std::size_t i = 0; i < doc.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < doc.n; ++j) {
            const auto& e = doc.at(i, j);
            row.push_back({{"re_mid", e.re_mid},
                           {"im_mid", e.im_mid},
                           {"re_rad", e.re_rad},
                           {"im_rad", e.im_rad}});
        }
        rows.push_back(std::move(row));
    }
    json root{{"n", doc.n}, {"entries", std::move(rows)}};
    return root.dump(2) + "\n";
}

MatrixDocument document_from_midrad(const ComplexMatrix& mid, double rad) {
    MatrixDocument doc;
    doc.n = mid.rows();
    doc.entries.resize(doc.n * doc.n);
    for (std::size_t i = 0; i < doc.n; ++i)
        for (std::size_t j = 0; j < doc.n; ++j)
            doc.at(i, j) = {mid(i, j).real(), mid(i, j).imag(), rad, rad};
    return doc;
}

bool ReportDocument::all_verified() const {
    if (records.empty()) return false;
    for (const auto& r : records)
        if (r.status != "Verified") return false;
    return true;
}

ReportRecord record_from_enclosure(const EigenpairEnclosure& enc) {
    ReportRecord rec;
    rec.status = to_string(enc.status);
    rec.lambda = enc.lambda_center;
    rec.vector_center = enc.vector_center;
    rec.pivot_k = enc.pivot + 1;
    if (enc.verified()) {
        rec.r_exist = enc.r_exist;
        rec.r_unique = enc.r_unique;
    } else {
        rec.failure_reason = rec.status;
    }
    rec.is_real = enc.is_real;
    return rec;
}

std::string serialize_report_json(const ReportDocument& doc) {
    json pairs = json::array();
    for (const auto& rec : doc.records) {
        json vec = json::array();
        for (const auto& z : rec.vector_center)
            vec.push_back({{"re", z.real()}, {"im", z.imag()}});
        json j{{"status", rec.status},
               {"lambda", {{"re", rec.lambda.real()}, {"im", rec.lambda.imag()}}},
               {"vector", std::move(vec)},
               {"pivot_k", rec.pivot_k},
               {"is_real", rec.is_real}};
        j["r_exist"] = rec.r_exist ? json(*rec.r_exist) : json(nullptr);
        j["r_unique"] = rec.r_unique ? json(*rec.r_unique) : json(nullptr);
        j["failure_reason"] =
            rec.failure_reason.empty() ? json(nullptr) : json(rec.failure_reason);
        pairs.push_back(std::move(j));
    }
    json root{{"metadata",
               {{"input_hash", doc.input_hash},
                {"method", doc.method},
                {"wall_time_seconds", doc.wall_time_seconds},
                {"n", doc.n}}},
              {"eigenpairs", std::move(pairs)}};
    return root.dump(2) + "\n";
}

std::string serialize_report_csv(const ReportDocument& doc) {
    std::string out = "status,lambda_re,lambda_im,pivot_k,r_exist,r_unique,is_real,failure_reason";
    for (std::size_t i = 0; i < doc.n; ++i) {
        out += ",v" + std::to_string(i) + "_re,v" + std::to_string(i) + "_im";
    }
    out += "\n";
    for (const auto& rec : doc.records) {
        out += rec.status;
        out += ',' + roundtrip(rec.lambda.real()) + ',' + roundtrip(rec.lambda.imag());
        out += ',' + std::to_string(rec.pivot_k);
        out += ',';
        if (rec.r_exist) out += roundtrip(*rec.r_exist);
        out += ',';
        if (rec.r_unique) out += roundtrip(*rec.r_unique);
        out += ',';
        out += rec.is_real ? "true" : "false";
        out += ',' + rec.failure_reason;
        for (const auto& z : rec.vector_center)
            out += ',' + roundtrip(z.real()) + ',' + roundtrip(z.imag());
        out += '\n';
    }
    return out;
}

ReportDocument parse_report_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report document: ") + e.what());
    }
    ReportDocument doc;
    const json& meta = root.at("metadata");
    doc.input_hash = meta.at("input_hash").get<std::string>();
    doc.method = meta.at("method").get<std::string>();
    doc.wall_time_seconds = meta.at("wall_time_seconds").get<double>();
    doc.n = meta.at("n").get<std::size_t>();
    for (const json& j : root.at("eigenpairs")) {
        ReportRecord rec;
        rec.status = j.at("status").get<std::string>();
        rec.lambda = {j.at("lambda").at("re").get<double>(),
                      j.at("lambda").at("im").get<double>()};
        for (const json& z : j.at("vector"))
            rec.vector_center.emplace_back(z.at("re").get<double>(), z.at("im").get<double>());
        rec.pivot_k = j.at("pivot_k").get<std::size_t>();
        if (!j.at("r_exist").is_null()) rec.r_exist = j.at("r_exist").get<double>();
        if (!j.at("r_unique").is_null()) rec.r_unique = j.at("r_unique").get<double>();
        rec.is_real = j.at("is_real").get<bool>();
        if (!j.at("failure_reason").is_null())
            rec.failure_reason = j.at("failure_reason").get<std::string>();
        doc.records.push_back(std::move(rec));
    }
    return doc;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace rigeig
