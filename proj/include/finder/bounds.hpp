#pragma once

#include "finder/kle.hpp"
#include "finder/subspace.hpp"

namespace finder {

// Distribution-free concentration statement for the energy a centered
// sample of the expansion deposits into a subspace S:
//
//   Pr( ||P_S (v - Ev)||^2 >= eps^2 ) <= eps^-2 * sum_m sum_r lambda_r <phi_r, s_m>^2
//
// The double sum is the expected captured energy, so the right-hand side
// is a plain Markov bound.  It only uses second moments -- nothing about
// the shape of the coefficient law -- and it is reported as computed,
// even when it exceeds one and is therefore vacuous.
struct MarkovBound {
    double epsilon = 0.0;
    double expected_energy = 0.0; // sum_m sum_r lambda_r <phi_r, s_m>^2
    double rhs = 0.0;             // expected_energy / epsilon^2
    Eigen::MatrixXd per_term;     // m_res x R, one addend per (m, r)
};

// Bound for the subspace spanned by `basis` under the expansion `eig`.
// The inner sum runs over the effective rank of the spectrum; directions
// with numerically zero variance cannot contribute.
MarkovBound markov_rhs(const Eigensystem& eig, const SubspaceBasis& basis,
                       double epsilon);

// Expected energy outside the rank-m_a truncation: sum of the trailing
// eigenvalues.  Divided by eps^2 it bounds the probability that the
// truncation error of a single sample exceeds eps.
double tail_bound(const Eigensystem& eig, Index m_a);

} // namespace finder
