#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "schoenberg/datasets.hpp"
#include "schoenberg/discriminant.hpp"
#include "schoenberg/errors.hpp"
#include "schoenberg/matrix.hpp"

namespace schoenberg {
namespace csv {

// Formats and layouts:
//   point cloud   header x1..xp plus optional trailing `label` column
//   matrix        square, headerless
//   embedding     header dim1..dimk
//   scree         header eigenvalue,proportion,cumulative
//   assignments   header object,label,assignment
//   sweep         header parameter,accuracy,invalid_transform
// Doubles are written with %.17g so identical runs produce identical bytes
// and values round-trip exactly.

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    for (std::string& f : fields) {
        std::size_t b = f.find_first_not_of(" \t");
        std::size_t e = f.find_last_not_of(" \t");
        f = (b == std::string::npos) ? "" : f.substr(b, e - b + 1);
    }
    return fields;
}

inline double parse_number(const std::string& field, const std::string& path,
                           std::size_t line) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != field.size() || field.empty())
        throw ParseError(path + ":" + std::to_string(line) + ": non-numeric cell '" + field +
                             "'",
                         line);
    return v;
}

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no platform newline translation
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

}  // namespace detail

/// Loads a point cloud: header `x1..xp[,label]`, one point per row.
inline PointCloud load_cloud(const std::string& path) {
    std::ifstream in = detail::open_for_read(path);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw ParseError(path + ":1: empty file, expected a header like x1,x2", 1);

    const std::vector<std::string> header = detail::split_fields(line);
    bool labeled = header.back() == "label";
    const std::size_t p = header.size() - (labeled ? 1 : 0);
    if (p == 0) throw ParseError(path + ":1: header has no coordinate columns", 1);
    for (std::size_t j = 0; j < p; ++j)
        if (header[j] != "x" + std::to_string(j + 1))
            throw ParseError(path + ":1: unknown header column '" + header[j] +
                                 "', expected x" + std::to_string(j + 1),
                             1);

    std::vector<double> coords;
    std::vector<int> labels;
    std::size_t line_no = 1, n = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = detail::split_fields(line);
        if (fields.size() != header.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        for (std::size_t j = 0; j < p; ++j)
            coords.push_back(detail::parse_number(fields[j], path, line_no));
        if (labeled) {
            const double v = detail::parse_number(fields[p], path, line_no);
            const int l = static_cast<int>(v);
            if (static_cast<double>(l) != v || l < 1)
                throw ParseError(path + ":" + std::to_string(line_no) +
                                     ": label must be a positive integer, got '" + fields[p] +
                                     "'",
                                 line_no);
            labels.push_back(l);
        }
        ++n;
    }
    if (n == 0) throw ParseError(path + ": no data rows", line_no);

    Matrix x(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) x(i, j) = coords[i * p + j];
    std::optional<GroupLabels> group_labels;
    if (labeled) group_labels = GroupLabels(std::move(labels));
    return {std::move(x), std::move(group_labels), path};
}

/// Loads a square headerless numeric matrix.
inline Matrix load_matrix(const std::string& path) {
    std::ifstream in = detail::open_for_read(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = detail::split_fields(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) row.push_back(detail::parse_number(f, path, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": ragged row, expected " +
                                 std::to_string(rows.front().size()) + " fields",
                             line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": empty matrix file", 0);
    if (rows.size() != rows.front().size())
        throw ParseError(path + ": matrix is " + std::to_string(rows.size()) + "x" +
                             std::to_string(rows.front().size()) + ", expected square",
                         0);
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

/// Loads a flat list of numbers (one per line and/or comma-separated).
inline std::vector<double> load_vector(const std::string& path) {
    std::ifstream in = detail::open_for_read(path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        for (const std::string& f : detail::split_fields(line))
            if (!f.empty()) values.push_back(detail::parse_number(f, path, line_no));
    }
    if (values.empty()) throw ParseError(path + ": no values", 0);
    return values;
}

inline void write_cloud(const std::string& path, const PointCloud& cloud) {
    std::ofstream out = detail::open_for_write(path);
    for (std::size_t j = 0; j < cloud.dimension(); ++j)
        out << (j ? "," : "") << "x" << j + 1;
    if (cloud.labels) out << ",label";
    out << "\n";
    for (std::size_t i = 0; i < cloud.point_count(); ++i) {
        for (std::size_t j = 0; j < cloud.dimension(); ++j)
            out << (j ? "," : "") << detail::format_double(cloud.coordinates(i, j));
        if (cloud.labels) out << "," << (*cloud.labels)[i];
        out << "\n";
    }
}

inline void write_embedding(const std::string& path, const Matrix& coordinates) {
    std::ofstream out = detail::open_for_write(path);
    for (std::size_t j = 0; j < coordinates.cols(); ++j)
        out << (j ? "," : "") << "dim" << j + 1;
    out << "\n";
    for (std::size_t i = 0; i < coordinates.rows(); ++i) {
        for (std::size_t j = 0; j < coordinates.cols(); ++j)
            out << (j ? "," : "") << detail::format_double(coordinates(i, j));
        out << "\n";
    }
}

inline void write_scree(const std::string& path, const std::vector<double>& eigenvalues,
                        const std::vector<double>& proportions) {
    std::ofstream out = detail::open_for_write(path);
    out << "eigenvalue,proportion,cumulative\n";
    double cumulative = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const double prop = i < proportions.size() ? proportions[i] : 0.0;
        cumulative += prop;
        out << detail::format_double(eigenvalues[i]) << "," << detail::format_double(prop)
            << "," << detail::format_double(cumulative) << "\n";
    }
}

inline void write_assignments(const std::string& path, const GroupLabels& labels,
                              const std::vector<int>& assignments) {
    std::ofstream out = detail::open_for_write(path);
    out << "object,label,assignment\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << i + 1 << "," << labels[i] << "," << assignments[i] << "\n";
}

inline void write_sweep(const std::string& path, const SweepResult& sweep) {
    std::ofstream out = detail::open_for_write(path);
    out << "parameter,accuracy,invalid_transform\n";
    for (std::size_t i = 0; i < sweep.parameters.size(); ++i)
        out << detail::format_double(sweep.parameters[i]) << ","
            << detail::format_double(sweep.accuracies[i]) << ","
            << (sweep.invalid_transform[i] ? 1 : 0) << "\n";
}

}  // namespace csv
}  // namespace schoenberg
