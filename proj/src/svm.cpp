#include "finder/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace finder {

double kernel_eval(const Kernel& k, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
    switch (k.type) {
        case Kernel::Type::Linear: return x.dot(y);
        case Kernel::Type::Rbf: return std::exp(-k.gamma * (x - y).squaredNorm());
    }
    return 0.0; // unreachable
}

double default_rbf_gamma(const Eigen::MatrixXd& features) {
    const Index n = features.rows();
    const Index m = features.cols();
    if (n == 0 || m == 0)
        throw DataError("default_rbf_gamma: empty feature matrix");
    if (n < 2) return 1.0 / static_cast<double>(m);
    const Eigen::RowVectorXd mean = features.colwise().mean();
    const double mean_var =
        (features.rowwise() - mean).array().square().sum() /
        (static_cast<double>(n - 1) * static_cast<double>(m));
    if (mean_var <= 0.0) return 1.0 / static_cast<double>(m);
    return 1.0 / (static_cast<double>(m) * mean_var);
}

namespace {

// Full kernel matrix; training sets here are small (a few hundred rows).
Eigen::MatrixXd kernel_matrix(const Kernel& k, const Eigen::MatrixXd& x) {
    const Index n = x.rows();
    Eigen::MatrixXd out(n, n);
    if (k.type == Kernel::Type::Linear) {
        out.noalias() = x * x.transpose();
        return out;
    }
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    out.noalias() = -2.0 * (x * x.transpose());
    out.colwise() += sq;
    out.rowwise() += sq.transpose();
    out = (-k.gamma * out.array()).exp();
    // Guarantee k(x, x) = 1 exactly despite the expanded-square formula.
    out.diagonal().setOnes();
    return out;
}

} // namespace

SvmModel svm_train(const Eigen::MatrixXd& features,
                   const Eigen::VectorXi& labels, const Kernel& kernel,
                   double cost, double tol, long max_iter) {
    const Index n = features.rows();
    if (labels.size() != n)
        throw DataError("svm_train: label count does not match rows");
    if (!(cost > 0.0)) throw UsageError("svm_train: cost must be positive");
    if (!(tol > 0.0)) throw UsageError("svm_train: tol must be positive");
    if (kernel.type == Kernel::Type::Rbf && !(kernel.gamma > 0.0))
        throw UsageError("svm_train: RBF gamma must be positive");

    bool has_pos = false, has_neg = false;
    for (Index i = 0; i < n; ++i) {
        if (labels[i] == 1) has_pos = true;
        else if (labels[i] == -1) has_neg = true;
        else throw DataError("svm_train: labels must be -1 or +1");
    }
    if (!has_pos || !has_neg)
        throw DataError("svm_train: training data contains a single class");

    const Eigen::MatrixXd k = kernel_matrix(kernel, features);
    const Eigen::VectorXd y = labels.cast<double>();

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    // Gradient of 1/2 a^T Q a - e^T a with Q_ij = y_i y_j K_ij; at a = 0
    // every component is -1.
    Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);

    double up_val = 0.0, low_val = 0.0;
    long iter = 0;
    for (;; ++iter) {
        if (iter >= max_iter) {
            std::ostringstream msg;
            msg << "svm_train: no convergence within " << max_iter
                << " iterations (tol " << tol << ")";
            throw NumericError(msg.str());
        }

        // Maximal-violating pair.  -y_i grad_i estimates the bias from
        // sample i; optimality means the upper estimates sit below the
        // lower ones within tol.
        Index i = -1, j = -1;
        up_val = -std::numeric_limits<double>::infinity();
        low_val = std::numeric_limits<double>::infinity();
        for (Index t = 0; t < n; ++t) {
            const bool up = (y[t] > 0.0) ? (alpha[t] < cost) : (alpha[t] > 0.0);
            const bool low = (y[t] > 0.0) ? (alpha[t] > 0.0) : (alpha[t] < cost);
            const double v = -y[t] * grad[t];
            if (up && v > up_val) { up_val = v; i = t; }
            if (low && v < low_val) { low_val = v; j = t; }
        }
        if (i < 0 || j < 0 || up_val - low_val <= tol) break;

        // Two-variable subproblem along alpha_i += y_i t, alpha_j -= y_j t
        // (the direction that keeps sum alpha_k y_k fixed).
        double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
        if (quad <= 0.0) quad = 1e-12;
        double t = (up_val - low_val) / quad;

        double t_lo = (y[i] > 0.0) ? -alpha[i] : alpha[i] - cost;
        double t_hi = (y[i] > 0.0) ? cost - alpha[i] : alpha[i];
        t_lo = std::max(t_lo, (y[j] > 0.0) ? alpha[j] - cost : -alpha[j]);
        t_hi = std::min(t_hi, (y[j] > 0.0) ? alpha[j] : cost - alpha[j]);
        t = std::clamp(t, t_lo, t_hi);

        const double old_i = alpha[i], old_j = alpha[j];
        alpha[i] = std::clamp(alpha[i] + y[i] * t, 0.0, cost);
        alpha[j] = std::clamp(alpha[j] - y[j] * t, 0.0, cost);
        const double d_i = alpha[i] - old_i, d_j = alpha[j] - old_j;

        grad += (y[i] * d_i) * y.cwiseProduct(k.col(i)) +
                (y[j] * d_j) * y.cwiseProduct(k.col(j));
    }

    // Bias: average -y grad over free support vectors; with none free,
    // any value between the two bound estimates is optimal -- take the
    // midpoint.
    double bias_sum = 0.0;
    Index n_free = 0;
    for (Index t = 0; t < n; ++t) {
        if (alpha[t] > 0.0 && alpha[t] < cost) {
            bias_sum += -y[t] * grad[t];
            ++n_free;
        }
    }
    const double bias =
        n_free > 0 ? bias_sum / static_cast<double>(n_free)
                   : 0.5 * (up_val + low_val);

    Index n_sv = 0;
    for (Index t = 0; t < n; ++t)
        if (alpha[t] > 0.0) ++n_sv;

    SvmModel model;
    model.support_vectors.resize(n_sv, features.cols());
    model.dual_coefficients.resize(n_sv);
    Index at = 0;
    for (Index t = 0; t < n; ++t) {
        if (alpha[t] <= 0.0) continue;
        model.support_vectors.row(at) = features.row(t);
        model.dual_coefficients[at] = alpha[t] * y[t];
        ++at;
    }
    model.bias = bias;
    model.kernel = kernel;
    model.cost = cost;
    return model;
}

Eigen::VectorXd svm_score(const SvmModel& model,
                          const Eigen::MatrixXd& features) {
    if (features.cols() != model.support_vectors.cols())
        throw DataError("svm_score: feature width differs from training width");
    const Index n = features.rows();
    Eigen::VectorXd out(n);
    for (Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Index s = 0; s < model.support_vectors.rows(); ++s)
            acc += model.dual_coefficients[s] *
                   kernel_eval(model.kernel, model.support_vectors.row(s),
                               features.row(i));
        out[i] = acc + model.bias;
    }
    return out;
}

} // namespace finder
