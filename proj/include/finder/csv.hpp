#pragma once

#include <string>

#include "finder/types.hpp"

namespace finder {

// Comma-separated loader.  First line is a mandatory header; no quoting
// rules (cells must not contain commas).  Empty cells and the token "nan"
// (any case) become missing values.  With a non-empty label_column, rows
// whose label equals positive_label become class B and every other row
// class A; pass an empty label_column to load unlabeled data.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label);
Dataset load_csv(const std::string& path);

// Loader variant that keeps the label column as raw text, for tools that
// must pass labels through untouched (imputation).  row_labels is empty
// when label_column is.
struct CsvTable {
    Dataset data; // unlabeled
    std::vector<std::string> row_labels;
};
CsvTable load_csv_table(const std::string& path,
                        const std::string& label_column);

// Writer matching the loader: missing cells are written empty, values use
// 17 significant digits so that a write -> load round trip is
// bit-identical.  Labeled datasets gain a label column (class A/B written
// as label_a/label_b).
void write_csv(const std::string& path, const Dataset& data,
               const std::string& label_column = "label",
               const std::string& label_a = "A",
               const std::string& label_b = "B");

// Same writer with explicit per-row label text.
void write_csv_table(const std::string& path, const Dataset& data,
                     const std::string& label_column,
                     const std::vector<std::string>& row_labels);

} // namespace finder
