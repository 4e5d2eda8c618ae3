#include "orbitmle/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace orbitmle {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool has_extension(const std::string& path, const char* ext) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return false;
    std::string e = path.substr(dot + 1);
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return e == ext;
}

// nlohmann reports byte offsets; turn them into line/column for diagnostics
std::string position_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json_text(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + " (" + position_of(text, e.byte) + "): " + e.what());
    }
}

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

int positive_int_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw ParseError(where + ": missing or non-integer field \"" + key + "\"");
    }
    const int v = j[key].get<int>();
    if (v < 1) throw ParseError(where + ": field \"" + key + "\" must be >= 1");
    return v;
}

Matrix matrix_from_rows(const json& rows, int expect_rows, int expect_cols,
                        const std::string& where) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != expect_rows) {
        throw ParseError(where + ": expected " + std::to_string(expect_rows) + " rows");
    }
    Matrix m(expect_rows, expect_cols);
    for (int r = 0; r < expect_rows; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || static_cast<int>(row.size()) != expect_cols) {
            throw ParseError(where + ", row " + std::to_string(r + 1) + ": expected " +
                             std::to_string(expect_cols) + " entries");
        }
        for (int c = 0; c < expect_cols; ++c) {
            m(r, c) = number_at(row[c], where + ", row " + std::to_string(r + 1) +
                                            ", entry " + std::to_string(c + 1));
        }
    }
    return m;
}

}  // namespace

SampleTuple parse_sample_tuple(const json& j) {
    if (!j.is_object()) throw ParseError("sample tuple: expected a JSON object");
    const int m1 = positive_int_field(j, "m1", "sample tuple");
    const int m2 = positive_int_field(j, "m2", "sample tuple");
    const int n = positive_int_field(j, "n", "sample tuple");
    if (!j.contains("matrices") || !j["matrices"].is_array()) {
        throw ParseError("sample tuple: missing array field \"matrices\"");
    }
    const json& mats = j["matrices"];
    if (static_cast<int>(mats.size()) != n) {
        throw ParseError("sample tuple: \"matrices\" has " + std::to_string(mats.size()) +
                         " entries but n = " + std::to_string(n));
    }
    std::vector<Matrix> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        out.push_back(matrix_from_rows(mats[i], m1, m2,
                                       "matrix " + std::to_string(i + 1)));
    }
    return SampleTuple::from_matrices(std::move(out));
}

SampleTuple load_sample_tuple(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_sample_tuple(parse_json_text(text, path));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Matrix load_sample_matrix(const std::string& path) {
    const std::string text = read_file(path);
    if (has_extension(path, "json")) {
        const json j = parse_json_text(text, path);
        if (!j.is_object()) throw ParseError(path + ": expected a JSON object");
        const int m = positive_int_field(j, "m", path);
        const int n = positive_int_field(j, "n", path);
        if (!j.contains("rows")) throw ParseError(path + ": missing field \"rows\"");
        return matrix_from_rows(j["rows"], m, n, path);
    }

    // CSV: one variable per line, comma-separated observations
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        int col = 0;
        while (std::getline(fields, field, ',')) {
            ++col;
            std::istringstream value(field);
            double v;
            if (!(value >> v)) {
                throw ParseError(path + " (line " + std::to_string(lineno) +
                                 ", column " + std::to_string(col) +
                                 "): not a number: \"" + field + "\"");
            }
            std::string rest;
            if (value >> rest) {
                throw ParseError(path + " (line " + std::to_string(lineno) +
                                 ", column " + std::to_string(col) +
                                 "): trailing garbage: \"" + field + "\"");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError(path + " (line " + std::to_string(lineno) + "): expected " +
                             std::to_string(rows.front().size()) + " entries, found " +
                             std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": no data rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Dag load_dag(const std::string& path) {
    const std::string text = read_file(path);
    int m = -1;
    std::vector<std::pair<int, int>> edges;

    if (has_extension(path, "json")) {
        const json j = parse_json_text(text, path);
        if (!j.is_object()) throw ParseError(path + ": expected a JSON object");
        m = positive_int_field(j, "m", path);
        if (!j.contains("edges") || !j["edges"].is_array()) {
            throw ParseError(path + ": missing array field \"edges\"");
        }
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const json& e = j["edges"][i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw ParseError(path + ": edge " + std::to_string(i + 1) +
                                 " must be a pair of node indices");
            }
            edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        int max_node = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (!line.empty() && line[0] == '#') continue;
            std::istringstream fields(line);
            std::string first;
            fields >> first;
            if (first == "nodes") {
                if (!(fields >> m) || m < 1) {
                    throw ParseError(path + " (line " + std::to_string(lineno) +
                                     "): \"nodes\" header needs a positive count");
                }
                continue;
            }
            int j, i;
            std::istringstream pair(line);
            if (!(pair >> j >> i)) {
                throw ParseError(path + " (line " + std::to_string(lineno) +
                                 "): expected \"j i\" (1-based edge j -> i)");
            }
            std::string rest;
            if (pair >> rest) {
                throw ParseError(path + " (line " + std::to_string(lineno) +
                                 "): trailing garbage: \"" + rest + "\"");
            }
            if (j < 1 || i < 1) {
                throw ParseError(path + " (line " + std::to_string(lineno) +
                                 "): node indices are 1-based");
            }
            max_node = std::max({max_node, j, i});
            edges.emplace_back(j - 1, i - 1);
        }
        if (m < 0) m = max_node;
        if (m < 1) throw ParseError(path + ": no edges and no \"nodes\" header");
    }

    try {
        return Dag::from_edges(m, edges);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const ConcentrationPair& pair) {
    return json{{"psi1", to_json(pair.psi1)}, {"psi2", to_json(pair.psi2)}};
}

json to_json(const StabilityReport& report) {
    json j{{"classification", to_string(report.classification)},
           {"capacity_estimate", report.capacity_estimate},
           {"moment_residual", report.moment_residual},
           {"iterations", report.iterations}};
    if (report.stabilizer_dim >= 0) j["stabilizer_dim"] = report.stabilizer_dim;
    if (report.mle) j["mle"] = to_json(*report.mle);
    return j;
}

json to_json(const MltBounds& row) {
    return json{{"m1", row.m1},
                {"m2", row.m2},
                {"lower", row.lower_L},
                {"mlt", row.exact_mltb},
                {"alpha", row.alpha_upper},
                {"upper", row.simple_upper_U}};
}

json to_json(const TdagMle& mle) {
    json omega = json::array();
    for (Eigen::Index i = 0; i < mle.omega.size(); ++i) omega.push_back(mle.omega[i]);
    return json{{"lambda", to_json(mle.lambda)},
                {"omega", std::move(omega)},
                {"psi", to_json(mle.psi)}};
}

std::string format_mlt_table(const std::vector<MltBounds>& rows) {
    std::ostringstream out;
    out << std::setw(4) << "m1" << std::setw(4) << "m2" << std::setw(6) << "lower"
        << std::setw(6) << "mlt" << std::setw(7) << "alpha" << std::setw(7) << "upper"
        << '\n';
    for (const MltBounds& r : rows) {
        out << std::setw(4) << r.m1 << std::setw(4) << r.m2 << std::setw(6) << r.lower_L
            << std::setw(6) << r.exact_mltb << std::setw(7) << r.alpha_upper
            << std::setw(7) << r.simple_upper_U << '\n';
    }
    return out.str();
}

}  // namespace orbitmle
