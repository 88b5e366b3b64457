#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finder/subspace.hpp"
#include "finder/svm.hpp"
#include "finder/types.hpp"

namespace finder {

enum class Regime { Balanced, Unbalanced };

const char* regime_name(Regime r);

// One leave-pair-out round.  Indices are positions within each class's
// stored-order row list (0..n_a-1 resp. 0..n_b-1); the runner maps them to
// dataset rows.  a_cov feeds the class-A covariance estimate, a_svm the
// classifier, b_train both the class-B covariance and the classifier.
struct ClassSplit {
    std::vector<Index> a_cov;
    std::vector<Index> a_svm;
    std::vector<Index> b_train;
    Index test_a = 0;
    Index test_b = 0;
    Regime regime = Regime::Unbalanced;
};

// All n_a * n_b test pairs, ordered test_a-major.  In the balanced regime
// the remaining class-A rows are partitioned: the first n_b - 1 of them
// (stored order) train the classifier, the other n_a - n_b estimate the
// covariance.  The unbalanced regime reuses every remaining class-A row
// for both purposes.
std::vector<ClassSplit> make_splits(Index n_a, Index n_b, Regime regime);

// Pairwise ranking statistic with class B positive: the fraction of
// (a, b) score pairs with score_b above score_a, ties counted one half.
// Computed with integer pair counts, so it is exact.
double auc(const std::vector<double>& scores_a,
           const std::vector<double>& scores_b);

// Fraction of correct decisions at the threshold: scores strictly above
// it mean class B, everything else (ties included) class A.
double accuracy(const std::vector<double>& scores_a,
                const std::vector<double>& scores_b,
                double threshold = 0.0);

// Truncation order policy for the class-A expansion: a fixed count, or
// the smallest count capturing a fraction of the spectral energy
// (resolved per round from the covariance rows only).
struct MaPolicy {
    bool use_energy = false;
    Index fixed = 5;
    double fraction = 0.95;

    static MaPolicy count(Index m) { return {false, m, 0.0}; }
    static MaPolicy energy(double fraction) { return {true, 0, fraction}; }
    std::string describe() const;
};

struct PipelineConfig {
    Variant variant = Variant::AcaS;
    MaPolicy m_a = MaPolicy::count(5);
    Index m_res = 5; // ignored by the direct variant (it emits F - m_a)
    Regime regime = Regime::Unbalanced;
    Kernel::Type kernel = Kernel::Type::Rbf;
    double cost = 1.0;
    double gamma = 0.0;       // <= 0: per-round width heuristic
    double gamma_scale = 1.0; // multiplier on the heuristic (grid search)
    double svm_tol = 1e-3;
    std::uint64_t seed = 0; // consumed only when shuffle is on
    bool shuffle = false;   // seeded shuffle of class-A order before splitting
    int threads = 0;        // 0 = hardware concurrency

    std::string describe() const;
};

struct RoundResult {
    Index round = 0;  // index into the split list
    Index test_a = 0; // dataset row numbers
    Index test_b = 0;
    double score_a = 0.0;
    double score_b = 0.0;
    double ms = 0.0; // transform construction + SVM training
};

struct CvReport {
    std::vector<RoundResult> per_round;
    double auc = 0.0;
    double accuracy = 0.0;
    double mean_round_ms = 0.0;
    Index m_a_used = 0; // from the first round (identical across rounds
                        // unless the energy policy adapts per round)
    std::string config_echo;
};

// One round end to end: standardize on training rows, estimate the
// class-A expansion on a_cov, build the variant transform, train the
// classifier on a_svm + b_train, score the held-out pair.  Exposed
// separately so tests can check that the model ignores test rows.
struct RoundOutput {
    RoundResult result;
    SvmModel model;
    Index m_a_used = 0;
};
RoundOutput run_round(const Dataset& data, const ClassSplit& split,
                      const std::vector<Index>& rows_a,
                      const std::vector<Index>& rows_b,
                      const PipelineConfig& config);

// Full leave-pair-out pass: n_a * n_b rounds, run concurrently, metrics
// pooled over all rounds.  Any round failure aborts the run with the
// failing split named; no partial metrics are produced.
CvReport run_lpocv(const Dataset& data, const PipelineConfig& config);

} // namespace finder
