#include "finder/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace finder {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool is_nan_token(const std::string& s) {
    if (s.size() != 3) return false;
    return std::tolower(static_cast<unsigned char>(s[0])) == 'n' &&
           std::tolower(static_cast<unsigned char>(s[1])) == 'a' &&
           std::tolower(static_cast<unsigned char>(s[2])) == 'n';
}

} // namespace

CsvTable load_csv_table(const std::string& path,
                        const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw DataError("'" + path + "' is empty; expected a header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header = split_line(line);
    for (std::string& h : header) h = trim(h);

    Index label_at = -1;
    if (!label_column.empty()) {
        for (size_t i = 0; i < header.size(); ++i) {
            if (header[i] == label_column) {
                label_at = static_cast<Index>(i);
                break;
            }
        }
        if (label_at < 0)
            throw DataError("label column '" + label_column +
                            "' not found in '" + path + "'");
    }

    CsvTable out;
    for (size_t i = 0; i < header.size(); ++i)
        if (static_cast<Index>(i) != label_at)
            out.data.feature_names.push_back(header[i]);
    const Index f = static_cast<Index>(out.data.feature_names.size());
    if (f < 1) throw DataError("'" + path + "' has no feature columns");

    std::vector<std::vector<double>> values;
    std::vector<std::vector<bool>> missing;
    bool any_missing = false;
    Index row_no = 1; // header was line 1
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            std::ostringstream msg;
            msg << path << ":" << row_no << ": expected " << header.size()
                << " cells, found " << cells.size();
            throw DataError(msg.str());
        }

        std::vector<double> row(static_cast<size_t>(f));
        std::vector<bool> row_missing(static_cast<size_t>(f), false);
        Index at = 0;
        for (size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (static_cast<Index>(c) == label_at) {
                if (cell.empty()) {
                    std::ostringstream msg;
                    msg << path << ":" << row_no << ": missing label value";
                    throw DataError(msg.str());
                }
                out.row_labels.push_back(cell);
                continue;
            }
            if (cell.empty() || is_nan_token(cell)) {
                row[static_cast<size_t>(at)] =
                    std::numeric_limits<double>::quiet_NaN();
                row_missing[static_cast<size_t>(at)] = true;
                any_missing = true;
            } else {
                char* end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                if (end != cell.c_str() + cell.size()) {
                    std::ostringstream msg;
                    msg << path << ":" << row_no << ": column '" << header[c]
                        << "': cannot parse '" << cell << "'";
                    throw DataError(msg.str());
                }
                row[static_cast<size_t>(at)] = v;
            }
            ++at;
        }
        values.push_back(std::move(row));
        missing.push_back(std::move(row_missing));
    }

    const Index n = static_cast<Index>(values.size());
    if (n < 1) throw DataError("'" + path + "' has no data rows");

    out.data.values.resize(n, f);
    out.data.missing_mask.setConstant(n, f, false);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < f; ++j) {
            out.data.values(i, j) =
                values[static_cast<size_t>(i)][static_cast<size_t>(j)];
            out.data.missing_mask(i, j) =
                missing[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    if (!any_missing) out.data.missing_mask.resize(0, 0);
    return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label) {
    CsvTable table = load_csv_table(path, label_column);
    Dataset out = std::move(table.data);
    if (!label_column.empty()) {
        out.labels.reserve(table.row_labels.size());
        for (const std::string& l : table.row_labels)
            out.labels.push_back(l == positive_label ? ClassLabel::B
                                                     : ClassLabel::A);
    }
    out.validate();
    return out;
}

Dataset load_csv(const std::string& path) { return load_csv(path, "", ""); }

namespace {

void write_csv_impl(const std::string& path, const Dataset& data,
                    const std::string& label_column,
                    const std::vector<std::string>& row_labels) {
    data.validate();
    const Index n = data.n_samples();
    const Index f = data.n_features();
    const bool labeled = !row_labels.empty();
    if (labeled && static_cast<Index>(row_labels.size()) != n)
        throw DataError("write_csv: label count does not match rows");

    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");

    for (Index j = 0; j < f; ++j) {
        if (j) out << ',';
        if (data.feature_names.empty())
            out << 'f' << j;
        else
            out << data.feature_names[static_cast<size_t>(j)];
    }
    if (labeled) out << ',' << label_column;
    out << '\n';

    char buf[40];
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < f; ++j) {
            if (j) out << ',';
            if (data.has_mask() && data.missing_mask(i, j)) continue;
            std::snprintf(buf, sizeof buf, "%.17g", data.values(i, j));
            out << buf;
        }
        if (labeled) out << ',' << row_labels[static_cast<size_t>(i)];
        out << '\n';
    }
    if (!out) throw DataError("write to '" + path + "' failed");
}

} // namespace

void write_csv(const std::string& path, const Dataset& data,
               const std::string& label_column, const std::string& label_a,
               const std::string& label_b) {
    std::vector<std::string> row_labels;
    if (data.has_labels()) {
        row_labels.reserve(data.labels.size());
        for (ClassLabel l : data.labels)
            row_labels.push_back(l == ClassLabel::B ? label_b : label_a);
    }
    write_csv_impl(path, data, label_column, row_labels);
}

void write_csv_table(const std::string& path, const Dataset& data,
                     const std::string& label_column,
                     const std::vector<std::string>& row_labels) {
    write_csv_impl(path, data, label_column, row_labels);
}

} // namespace finder
