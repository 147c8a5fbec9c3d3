#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "twistor/linear_matrix.hpp"
#include "twistor/pencil.hpp"
#include "twistor/rational_curve.hpp"

namespace twistorkit {

using Json = nlohmann::ordered_json;

/// Malformed JSON, a missing field or a literal outside the GAUSS grammar (exit 2).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed document describing an object the toolkit rejects (exit 3).
class InvalidObject : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"r": r, "A1": [[GAUSS, ...], ...], ..., "A4": ..., "metadata": {...}}
struct CurveDocument {
    int r = 0;
    std::array<twistor::ExactMatrix, 4> A;
    Json metadata;  ///< null when absent

    twistor::LinearMatrix matrix() const { return {A[0], A[1], A[2], A[3]}; }
    static CurveDocument of(const twistor::LinearMatrix& m, Json metadata = nullptr);

    friend bool operator==(const CurveDocument& a, const CurveDocument& b) {
        return a.r == b.r && a.A == b.A && a.metadata == b.metadata;
    }
};

Json matrix_to_json(const twistor::ExactMatrix& m);
twistor::ExactMatrix matrix_from_json(const Json& j, const std::string& what);

Json to_json(const CurveDocument& doc);
CurveDocument curve_from_json(const Json& j);
std::string serialize(const CurveDocument& doc);
CurveDocument parse_curve(const std::string& text);

/// Pencil file: a curve document whose A3 and A4 may be omitted.
twistor::Pencil pencil_from_json(const Json& j);

/// {"d": d, "forms": [[c_0, ..., c_d] x 4]} with c_k the coefficient of s^(d-k) t^k.
Json to_json(const twistor::RationalCurveMap& f);
twistor::RationalCurveMap map_from_json(const Json& j);

Json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace twistorkit
