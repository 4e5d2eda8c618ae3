#pragma once

#include <json.hpp>

#include <string>

#include "orbitmle/matrix_normal.hpp"
#include "orbitmle/null_cone.hpp"
#include "orbitmle/tdag.hpp"
#include "orbitmle/types.hpp"

namespace orbitmle {

/// Parse failure with a line/column diagnostic where available.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// -- input -------------------------------------------------------------

/// {"m1":..,"m2":..,"n":..,"matrices":[[[row],[row]],...]} (row-major).
SampleTuple parse_sample_tuple(const nlohmann::json& j);
SampleTuple load_sample_tuple(const std::string& path);

/// Sample matrix, rows = variables: CSV (one row per line) or
/// {"m":..,"n":..,"rows":[[..],..]} JSON, chosen by file extension.
Matrix load_sample_matrix(const std::string& path);

/// Graph: edge-list text ("j i" per line, 1-based, optional "m" header line
/// "nodes m") or {"m":..,"edges":[[j,i],..]} JSON, chosen by extension.
Dag load_dag(const std::string& path);

// -- output ------------------------------------------------------------

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const ConcentrationPair& pair);
nlohmann::json to_json(const StabilityReport& report);
nlohmann::json to_json(const MltBounds& row);
nlohmann::json to_json(const TdagMle& mle);

/// Aligned text table in the row order of mlt_table.
std::string format_mlt_table(const std::vector<MltBounds>& rows);

}  // namespace orbitmle
