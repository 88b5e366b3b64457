#include "finder/bounds.hpp"

namespace finder {

MarkovBound markov_rhs(const Eigensystem& eig, const SubspaceBasis& basis,
                       double epsilon) {
    if (!(epsilon > 0.0))
        throw UsageError("markov_rhs: epsilon must be positive");
    if (basis.dim() != eig.dim())
        throw DataError("markov_rhs: basis and eigensystem dimensions differ");

    const Index r_eff = eig.effective_rank;
    MarkovBound out;
    out.epsilon = epsilon;
    out.per_term.resize(basis.m_res(), r_eff);
    for (Index m = 0; m < basis.m_res(); ++m) {
        for (Index r = 0; r < r_eff; ++r) {
            const double ip = eig.eigenvectors.col(r).dot(basis.vectors.col(m));
            out.per_term(m, r) = eig.eigenvalues[r] * ip * ip;
        }
    }
    out.expected_energy = out.per_term.sum();
    out.rhs = out.expected_energy / (epsilon * epsilon);
    return out;
}

double tail_bound(const Eigensystem& eig, Index m_a) {
    return truncation_error(eig, m_a);
}

} // namespace finder
