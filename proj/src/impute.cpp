#include "finder/impute.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

namespace finder {

Dataset knn_impute(const Dataset& data, Index k) {
    if (k < 1) throw UsageError("knn_impute: k must be at least 1");
    data.validate();

    Dataset out = data;
    if (!data.any_missing()) {
        out.missing_mask.resize(0, 0);
        return out;
    }

    const Index n = data.n_samples();
    const Index f = data.n_features();
    const auto& mask = data.missing_mask;

    for (Index j = 0; j < f; ++j) {
        bool observed = false;
        for (Index i = 0; i < n && !observed; ++i) observed = !mask(i, j);
        if (!observed) {
            std::ostringstream msg;
            msg << "knn_impute: column "
                << (data.feature_names.empty()
                        ? std::to_string(j)
                        : "'" + data.feature_names[static_cast<size_t>(j)] +
                              "'")
                << " has no observed values";
            throw DataError(msg.str());
        }
    }

    // Squared distance over mutually observed coordinates; infinity when
    // the two rows share none, so such neighbours sort last.
    auto distance2 = [&](Index a, Index b) {
        double acc = 0.0;
        bool any = false;
        for (Index j = 0; j < f; ++j) {
            if (mask(a, j) || mask(b, j)) continue;
            const double d = data.values(a, j) - data.values(b, j);
            acc += d * d;
            any = true;
        }
        return any ? acc : std::numeric_limits<double>::infinity();
    };

    // Fill values are decided against the original data only, then
    // applied in one sweep, so imputation order cannot matter.
    std::vector<std::pair<Index, Index>> holes;
    std::vector<double> fills;
    for (Index i = 0; i < n; ++i) {
        // Candidate neighbours are shared across this row's holes except
        // for the column-observed requirement, so rank once per (i, j).
        for (Index j = 0; j < f; ++j) {
            if (!mask(i, j)) continue;
            std::vector<std::pair<double, Index>> ranked;
            ranked.reserve(static_cast<size_t>(n - 1));
            for (Index c = 0; c < n; ++c) {
                if (c == i || mask(c, j)) continue;
                ranked.emplace_back(distance2(i, c), c);
            }
            const size_t take =
                std::min(static_cast<size_t>(k), ranked.size());
            std::partial_sort(ranked.begin(), ranked.begin() + take,
                              ranked.end()); // pair order = distance, index
            double acc = 0.0;
            for (size_t t = 0; t < take; ++t)
                acc += data.values(ranked[t].second, j);
            holes.emplace_back(i, j);
            fills.push_back(acc / static_cast<double>(take));
        }
    }

    for (size_t h = 0; h < holes.size(); ++h)
        out.values(holes[h].first, holes[h].second) = fills[h];
    out.missing_mask.setConstant(n, f, false);
    return out;
}

} // namespace finder
