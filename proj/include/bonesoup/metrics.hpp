#pragma once

#include <vector>

#include "bonesoup/core_types.hpp"

namespace bonesoup {

struct MetricsReport {
    double hypervolume = 0.0;
    double inner_product = 0.0;
    double controllability = 0.0;
    int front_length = 0;
    double sparsity = 0.0;
    double spacing = 0.0;
};

// Exact union-of-boxes volume dominated by `points` relative to `reference`
// (maximization). Supports n in {2, 3}.
double hypervolume(const std::vector<Vec>& points, const Vec& reference);

// Mean over front points of mu^T r.
double inner_product_score(const std::vector<FrontPoint>& front);

// Fraction of ordered pairs whose per-dimension reward orderings match the
// preference orderings. Dimensions with equal preference components are
// skipped; reward differences with |delta| <= epsilon count as ties and
// mismatch any nonzero preference sign.
double controllability(const std::vector<FrontPoint>& front, double epsilon = 0.0);

// Mean squared Euclidean distance between consecutive reward vectors, in the
// given (preference-grid) order.
double sparsity(const std::vector<FrontPoint>& front);

// sqrt((1/N) sum (d_i - p)^2) with d_i the nearest-neighbor distance.
double spacing(const std::vector<FrontPoint>& front);

// Cardinality of the non-dominated subset (exact duplicates deduplicated).
int front_length(const std::vector<FrontPoint>& front);

// Maximal non-dominated subset in stable input order; exact duplicates keep
// one representative.
std::vector<Vec> pareto_filter(const std::vector<Vec>& points);

MetricsReport compute_metrics(const std::vector<FrontPoint>& front, const Vec& hv_reference,
                              double epsilon = 0.0);

}  // namespace bonesoup
