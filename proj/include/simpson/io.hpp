#pragma once

/**
 * @file io.hpp
 * @brief JSON wire format (format 1) for instances, algebras and reports.
 *
 * Scalars are strings in the text form of parse_scalar ("a", "a/b", "v:u",
 * optionally "@k"); plain JSON integers are accepted on input.
 */

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simpson/higgs.hpp"
#include "simpson/koszul.hpp"
#include "simpson/spectral.hpp"

namespace simpson::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

inline json header(const std::string& kind, const Context& ctx) {
    return json{{"format", kFormat}, {"kind", kind}, {"p", ctx->prime()}, {"precision", ctx->precision()}};
}

inline json scalar_to_json(const PadicScalar& x) { return format_scalar(x, x.context()->precision()); }

inline PadicScalar scalar_from_json(const Context& ctx, const json& j) {
    if (j.is_string()) return parse_scalar(ctx, j.get<std::string>());
    if (j.is_number_integer()) return PadicScalar::from_int(ctx, j.get<long>());
    throw ParseError("scalar must be a string or an integer, got " + j.dump());
}

inline json vector_to_json(const std::vector<PadicScalar>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(scalar_to_json(x));
    return a;
}

inline std::vector<PadicScalar> vector_from_json(const Context& ctx, const json& j, std::size_t len,
                                                 const std::string& what) {
    if (!j.is_array() || j.size() != len)
        throw ParseError(what + ": expected an array of length " + std::to_string(len));
    std::vector<PadicScalar> v;
    for (const auto& x : j) v.push_back(scalar_from_json(ctx, x));
    return v;
}

inline json matrix_to_json(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
        a.push_back(std::move(row));
    }
    return a;
}

inline Matrix matrix_from_json(const Context& ctx, const json& j, std::size_t rows, std::size_t cols,
                               const std::string& what) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
    Matrix m(ctx, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = vector_from_json(ctx, j[i], cols, what + " row " + std::to_string(i + 1));
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
    }
    return m;
}

namespace detail {

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

} // namespace detail

inline void check_format(const json& j) {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    if (!j.contains("format")) throw ParseError("missing field 'format'");
    if (detail::field<int>(j, "format") != kFormat)
        throw ParseError("unsupported format " + j.at("format").dump() + " (expected 1)");
}

inline std::string kind_of(const json& j) {
    check_format(j);
    return detail::field<std::string>(j, "kind");
}

/// Context from the instance's p and precision; a positive override replaces the precision.
inline Context context_from_json(const json& j, std::int64_t precision_override = 0) {
    const auto p = detail::field<std::int64_t>(j, "p");
    const auto prec = precision_override > 0 ? precision_override : detail::field<std::int64_t>(j, "precision");
    try {
        return PrimeContext::create(p, prec);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline std::vector<Matrix> family_from_json(const Context& ctx, const json& j, const char* key, std::size_t d,
                                            std::size_t n) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const json& a = j.at(key);
    if (!a.is_array() || a.size() != d)
        throw ParseError(std::string("field '") + key + "' must hold d = " + std::to_string(d) + " matrices");
    std::vector<Matrix> ms;
    for (std::size_t i = 0; i < d; ++i)
        ms.push_back(matrix_from_json(ctx, a[i], n, n, std::string(key) + "[" + std::to_string(i + 1) + "]"));
    return ms;
}

inline json family_to_json(const std::vector<Matrix>& ms) {
    json a = json::array();
    for (const auto& m : ms) a.push_back(matrix_to_json(m));
    return a;
}

inline json higgs_to_json(const HiggsModule& h) {
    json j = header("higgs", h.ctx);
    j["d"] = h.d();
    j["rank"] = h.rank;
    j["theta"] = family_to_json(h.theta);
    return j;
}

inline json rep_to_json(const SmallRep& v) {
    json j = header("rep", v.ctx);
    j["d"] = v.d();
    j["rank"] = v.rank;
    j["rho"] = family_to_json(v.rho);
    return j;
}

inline HiggsModule higgs_from_json(const json& j, std::int64_t precision_override = 0) {
    if (kind_of(j) != "higgs") throw ParseError("expected an instance of kind 'higgs', got '" + kind_of(j) + "'");
    const Context ctx = context_from_json(j, precision_override);
    const auto d = detail::field<std::size_t>(j, "d");
    const auto n = detail::field<std::size_t>(j, "rank");
    return HiggsModule{ctx, n, family_from_json(ctx, j, "theta", d, n)};
}

inline SmallRep rep_from_json(const json& j, std::int64_t precision_override = 0) {
    if (kind_of(j) != "rep") throw ParseError("expected an instance of kind 'rep', got '" + kind_of(j) + "'");
    const Context ctx = context_from_json(j, precision_override);
    const auto d = detail::field<std::size_t>(j, "d");
    const auto n = detail::field<std::size_t>(j, "rank");
    return SmallRep{ctx, n, family_from_json(ctx, j, "rho", d, n)};
}

inline json algebra_body(const FinAlgebra& a) {
    json mul = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        json plane = json::array();
        for (std::size_t k = 0; k < a.dim(); ++k) plane.push_back(vector_to_json(a.constants()[i][k]));
        mul.push_back(std::move(plane));
    }
    return json{{"dim", a.dim()}, {"mul", mul}, {"one", vector_to_json(a.unit_vector())}, {"labels", a.labels()}};
}

inline json algebra_to_json(const FinAlgebra& a) {
    json j = header("algebra", a.context());
    const json body = algebra_body(a);
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
}

inline Algebra algebra_from_body(const Context& ctx, const json& j) {
    const auto m = detail::field<std::size_t>(j, "dim");
    if (!j.contains("mul") || !j.at("mul").is_array() || j.at("mul").size() != m)
        throw ParseError("field 'mul' must be an m x m x m array");
    FinAlgebra::Constants c(m, std::vector<std::vector<PadicScalar>>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const json& plane = j.at("mul")[i];
        if (!plane.is_array() || plane.size() != m) throw ParseError("field 'mul' must be an m x m x m array");
        for (std::size_t k = 0; k < m; ++k) c[i][k] = vector_from_json(ctx, plane[k], m, "mul");
    }
    if (!j.contains("one")) throw ParseError("missing field 'one'");
    auto one = vector_from_json(ctx, j.at("one"), m, "one");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = detail::field<std::vector<std::string>>(j, "labels");
    return FinAlgebra::create(ctx, std::move(c), std::move(one), std::move(labels));
}

inline Algebra algebra_from_json(const json& j, std::int64_t precision_override = 0) {
    if (kind_of(j) != "algebra") throw ParseError("expected an instance of kind 'algebra'");
    return algebra_from_body(context_from_json(j, precision_override), j);
}

inline json element_to_json(const AlgElement& x) { return vector_to_json(x.coords()); }

inline json twist_to_json(const SpectralAlgebra& s, const BTwist& t) {
    json j = header("twist", s.algebra->context());
    j["d"] = t.tau.size();
    j["rank"] = s.basis.empty() ? 0 : s.basis[0].rows();
    j["algebra"] = algebra_body(*s.algebra);
    j["embedding"] = family_to_json(s.basis);
    json tau = json::array(), units = json::array();
    for (const auto& x : t.tau) tau.push_back(element_to_json(x));
    for (const auto& x : t.units) units.push_back(element_to_json(x));
    j["tau"] = tau;
    j["units"] = units;
    return j;
}

inline json report_to_json(const CohomologyReport& r) {
    return json{{"h", r.h}, {"margins", r.margins}, {"side", r.side}};
}

inline CohomologyReport report_from_json(const json& j) {
    CohomologyReport r;
    r.h = detail::field<std::vector<std::size_t>>(j, "h");
    r.margins = detail::field<std::vector<std::int64_t>>(j, "margins");
    r.side = detail::field<std::string>(j, "side");
    return r;
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

} // namespace simpson::io
