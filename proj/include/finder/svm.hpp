#pragma once

#include <Eigen/Dense>

#include "finder/types.hpp"

namespace finder {

struct Kernel {
    enum class Type { Linear, Rbf };
    Type type = Type::Linear;
    double gamma = 0.0; // only read for Rbf; must be positive there

    static Kernel linear() { return {Type::Linear, 0.0}; }
    static Kernel rbf(double gamma) { return {Type::Rbf, gamma}; }
};

double kernel_eval(const Kernel& k, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

// Standard width heuristic: 1 / (M * mean per-coordinate sample variance)
// of the training features; falls back to 1 / M for constant data.
double default_rbf_gamma(const Eigen::MatrixXd& features);

// Soft-margin SVM in dual form.  dual_coefficients[i] = alpha_i * y_i for
// the retained support vectors, so the decision value of x is
// sum_i dual_coefficients[i] * k(sv_i, x) + bias.
struct SvmModel {
    Eigen::MatrixXd support_vectors;   // K x M
    Eigen::VectorXd dual_coefficients; // K, each in [-cost, cost]
    double bias = 0.0;
    Kernel kernel;
    double cost = 1.0;
};

// Trains by sequential minimal optimization on the dual: repeatedly pick
// the maximal-violating pair (first index on ties, so the schedule is a
// pure function of the inputs), solve the two-variable subproblem
// analytically, clip to the box, and maintain the gradient.  Stops when
// the maximal violation drops to tol.  Throws DataError when only one
// class is present and NumericError when max_iter is exhausted.
SvmModel svm_train(const Eigen::MatrixXd& features,
                   const Eigen::VectorXi& labels, // entries in {-1, +1}
                   const Kernel& kernel, double cost = 1.0,
                   double tol = 1e-3, long max_iter = 10000000);

// Decision values, one per row of `features`.
Eigen::VectorXd svm_score(const SvmModel& model,
                          const Eigen::MatrixXd& features);

} // namespace finder
