// table.hpp — tidy numeric tables with unit-annotated headers, the common
// currency of every CLI export (CSV or JSON, byte-deterministic).

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bhc {

struct Table {
    std::vector<std::string> columns;   // header carries units, e.g. "freq[GHz]"
    std::vector<std::string> row_labels; // optional; empty = unlabeled rows
    Eigen::MatrixXd data;               // rows x columns
    std::string label_column = "state";

    int rows() const { return static_cast<int>(data.rows()); }
    int cols() const { return static_cast<int>(data.cols()); }
    bool labeled() const { return !row_labels.empty(); }

    void add_row(const std::string& label, const std::vector<double>& values);
    void reserve_columns(const std::vector<std::string>& names);

    // provenance lines are emitted as leading '#' comments (CSV) or a
    // "provenance" object (JSON)
    std::string to_csv(const std::vector<std::string>& provenance = {}) const;
    std::string to_json(const std::vector<std::string>& provenance = {}) const;
};

// FNV-1a 64-bit over raw bytes; used for config provenance hashes
std::string fnv1a_hex(const std::string& bytes);

} // namespace bhc
