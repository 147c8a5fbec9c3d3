#include "io.hpp"

#include <fstream>
#include <sstream>

namespace twistorkit {

using twistor::ExactMatrix;
using twistor::GaussianRational;

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

int integer_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

GaussianRational literal(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return GaussianRational(mpq_class(v.get<long>()));
    if (!v.is_string()) throw ParseError(where + ": expected a GAUSS literal string");
    try {
        return GaussianRational::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

void check_shape(const ExactMatrix& m, int r, const std::string& what) {
    if (m.rows() != static_cast<std::size_t>(r + 1) || m.cols() != static_cast<std::size_t>(r))
        throw InvalidObject(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                            std::to_string(r + 1) + "x" + std::to_string(r));
}

int checked_r(const Json& j) {
    const int r = integer_field(j, "r");
    if (r < 1) throw InvalidObject("r must be at least 1");
    return r;
}

}  // namespace

Json matrix_to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

ExactMatrix matrix_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a non-empty array of rows");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    ExactMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array()) throw ParseError(what + ": row " + std::to_string(i) + " is not an array");
        if (j[i].size() != cols) throw InvalidObject(what + ": ragged rows");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = literal(j[i][k], what + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

CurveDocument CurveDocument::of(const twistor::LinearMatrix& m, Json metadata) {
    CurveDocument doc;
    doc.r = m.r;
    doc.A = m.A;
    doc.metadata = std::move(metadata);
    return doc;
}

Json to_json(const CurveDocument& doc) {
    Json j;
    j["r"] = doc.r;
    for (int k = 0; k < 4; ++k) j["A" + std::to_string(k + 1)] = matrix_to_json(doc.A[k]);
    if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
    return j;
}

CurveDocument curve_from_json(const Json& j) {
    CurveDocument doc;
    doc.r = checked_r(j);
    for (int k = 0; k < 4; ++k) {
        const std::string name = "A" + std::to_string(k + 1);
        doc.A[k] = matrix_from_json(field(j, name.c_str()), name);
        check_shape(doc.A[k], doc.r, name);
    }
    if (auto it = j.find("metadata"); it != j.end()) doc.metadata = *it;
    return doc;
}

std::string serialize(const CurveDocument& doc) { return to_json(doc).dump(2) + "\n"; }

CurveDocument parse_curve(const std::string& text) { return curve_from_json(parse_json(text)); }

twistor::Pencil pencil_from_json(const Json& j) {
    const int r = checked_r(j);
    ExactMatrix a1 = matrix_from_json(field(j, "A1"), "A1");
    ExactMatrix a2 = matrix_from_json(field(j, "A2"), "A2");
    check_shape(a1, r, "A1");
    check_shape(a2, r, "A2");
    return {std::move(a1), std::move(a2)};
}

Json to_json(const twistor::RationalCurveMap& f) {
    Json j;
    j["d"] = f.d;
    Json forms = Json::array();
    for (const auto& p : f.f) {
        Json c = Json::array();
        for (std::size_t k = 0; k < p.size(); ++k) c.push_back(p.coeff(k).to_string());
        forms.push_back(std::move(c));
    }
    j["forms"] = std::move(forms);
    return j;
}

twistor::RationalCurveMap map_from_json(const Json& j) {
    const int d = integer_field(j, "d");
    if (d < 1) throw InvalidObject("d must be at least 1");
    const Json& forms = field(j, "forms");
    if (!forms.is_array() || forms.size() != 4) throw InvalidObject("forms must list four binary forms");
    std::array<twistor::HomogPoly, 4> f;
    for (int i = 0; i < 4; ++i) {
        const Json& c = forms[i];
        if (!c.is_array()) throw ParseError("forms[" + std::to_string(i) + "] is not an array");
        if (c.size() != static_cast<std::size_t>(d + 1))
            throw InvalidObject("forms[" + std::to_string(i) + "] needs " + std::to_string(d + 1) + " coefficients");
        f[i] = twistor::HomogPoly(2, d);
        for (int k = 0; k <= d; ++k)
            f[i].coeff(k) = literal(c[k], "forms[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return {d, f};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace twistorkit
