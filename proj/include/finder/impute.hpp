#pragma once

#include "finder/types.hpp"

namespace finder {

// k-nearest-neighbour mean imputation.  For every missing cell, neighbour
// rows are the ones with that column observed, ranked by Euclidean
// distance over the coordinates both rows observe (ties broken by row
// index; rows sharing no observed coordinate rank last); the cell becomes
// the mean of the column over the k closest.  All fills are computed from
// the original data before any of them is applied.  Throws DataError when
// a column has no observed value at all.
Dataset knn_impute(const Dataset& data, Index k);

} // namespace finder
