#include "core/table.hpp"

#include "core/errors.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace bhc {

void Table::reserve_columns(const std::vector<std::string>& names) {
    columns = names;
    data.resize(0, static_cast<Eigen::Index>(names.size()));
}

void Table::add_row(const std::string& label, const std::vector<double>& values) {
    if (static_cast<int>(values.size()) != cols())
        throw ValidationError("table row width mismatch");
    data.conservativeResize(data.rows() + 1, Eigen::NoChange);
    for (int c = 0; c < cols(); ++c) data(data.rows() - 1, c) = values[static_cast<size_t>(c)];
    row_labels.push_back(label);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string Table::to_csv(const std::vector<std::string>& provenance) const {
    std::ostringstream os;
    for (const auto& p : provenance) os << "# " << p << "\n";
    if (labeled()) os << label_column << ",";
    for (int c = 0; c < cols(); ++c) os << columns[static_cast<size_t>(c)] << (c + 1 < cols() ? "," : "");
    os << "\n";
    for (int r = 0; r < rows(); ++r) {
        if (labeled()) os << row_labels[static_cast<size_t>(r)] << ",";
        for (int c = 0; c < cols(); ++c) os << fmt(data(r, c)) << (c + 1 < cols() ? "," : "");
        os << "\n";
    }
    return os.str();
}

std::string Table::to_json(const std::vector<std::string>& provenance) const {
    nlohmann::json j;
    j["provenance"] = provenance;
    j["columns"] = columns;
    j["rows"] = nlohmann::json::array();
    for (int r = 0; r < rows(); ++r) {
        nlohmann::json row;
        if (labeled()) row[label_column] = row_labels[static_cast<size_t>(r)];
        for (int c = 0; c < cols(); ++c) row[columns[static_cast<size_t>(c)]] = data(r, c);
        j["rows"].push_back(row);
    }
    return j.dump(2);
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

} // namespace bhc
