#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace finder {

using Index = Eigen::Index;

// Raised for malformed or inconsistent input data (files, labels, masks).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a numerical routine cannot produce a trustworthy result
// (non-symmetric covariance, negative eigenvalues beyond tolerance,
// optimizer hitting its iteration cap, ...).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for invalid configuration values before any computation starts.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ClassLabel { A, B };

// Row-major sample container: one observation per row, one feature per
// column.  Labels and the missing-value mask are optional; an empty mask
// means every entry is observed.
struct Dataset {
    Eigen::MatrixXd values;                 // N x F
    std::vector<ClassLabel> labels;         // empty or size N
    std::vector<std::string> feature_names; // empty or size F
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> missing_mask; // empty or N x F

    Index n_samples() const { return values.rows(); }
    Index n_features() const { return values.cols(); }
    bool has_labels() const { return !labels.empty(); }
    bool has_mask() const { return missing_mask.size() > 0; }
    bool any_missing() const { return has_mask() && missing_mask.any(); }

    // Throws DataError if the optional parts disagree about shapes.
    void validate() const {
        if (has_labels() && static_cast<Index>(labels.size()) != n_samples())
            throw DataError("label count does not match sample count");
        if (!feature_names.empty() &&
            static_cast<Index>(feature_names.size()) != n_features())
            throw DataError("feature name count does not match feature count");
        if (has_mask() && (missing_mask.rows() != values.rows() ||
                           missing_mask.cols() != values.cols()))
            throw DataError("missing mask shape does not match values");
    }

    // Rows of one class, in stored order.
    std::vector<Index> rows_of(ClassLabel c) const {
        std::vector<Index> out;
        for (Index i = 0; i < static_cast<Index>(labels.size()); ++i)
            if (labels[i] == c) out.push_back(i);
        return out;
    }

    // Copy of the selected rows (values only).
    Eigen::MatrixXd rows(const std::vector<Index>& idx) const {
        Eigen::MatrixXd out(static_cast<Index>(idx.size()), values.cols());
        for (Index i = 0; i < out.rows(); ++i) out.row(i) = values.row(idx[i]);
        return out;
    }
};

} // namespace finder
