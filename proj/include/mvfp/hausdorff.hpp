#pragma once

#include "mvfp/metric.hpp"

namespace mvfp {

// max over a in A of the distance from a to B. A and B must be level-1
// sets of compatible points.
Scalar directed_hausdorff(const Metric& metric, const FiniteSet& A, const FiniteSet& B);

// max of the two directed distances; a metric on canonical finite sets.
Scalar hausdorff(const Metric& metric, const FiniteSet& A, const FiniteSet& B);

// Same value as hausdorff, computed with an early-break inner scan and,
// for float-mode dense points in low dimension, a kd-tree nearest-neighbour
// index. Requires dense points under the euclidean or sup metric.
Scalar hausdorff_accelerated(const Metric& metric, const FiniteSet& A,
                             const FiniteSet& B);

// Iterated construction: level 1 is hausdorff; level k uses the level-(k-1)
// distance as the ground distance.
Scalar hyperspace_distance(const Metric& metric, const FiniteSet& U,
                           const FiniteSet& V);

}  // namespace mvfp
