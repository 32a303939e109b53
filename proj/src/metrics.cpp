#include "bonesoup/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bonesoup {

namespace {

// 2-D sweep over points already clipped against the reference.
double hv2d(std::vector<Vec> pts, const Vec& ref) {
    std::erase_if(pts, [&](const Vec& p) { return p[0] <= ref[0] || p[1] <= ref[1]; });
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a[0] > b[0]; });
    double hv = 0.0;
    double max_y = ref[1];
    for (const Vec& p : pts) {
        if (p[1] > max_y) {
            hv += (p[0] - ref[0]) * (p[1] - max_y);
            max_y = p[1];
        }
    }
    return hv;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

double sq_dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

double hypervolume(const std::vector<Vec>& points, const Vec& reference) {
    const std::size_t n = reference.size();
    if (n != 2 && n != 3) {
        throw ConfigError("UnsupportedDimension: hypervolume supports n in {2, 3}");
    }
    for (const Vec& p : points) {
        if (p.size() != n) {
            throw DimensionMismatch("hypervolume: point dimension mismatch");
        }
    }
    if (points.empty()) return 0.0;
    if (n == 2) return hv2d(points, reference);

    // Slice over the sorted third coordinate; each slab contributes the 2-D
    // hypervolume of the points reaching at least its top level.
    std::vector<double> levels;
    for (const Vec& p : points) {
        if (p[2] > reference[2]) levels.push_back(p[2]);
    }
    if (levels.empty()) return 0.0;
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    levels.push_back(reference[2]);

    const Vec ref2{reference[0], reference[1]};
    double hv = 0.0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const double top = levels[i];
        const double height = top - levels[i + 1];
        std::vector<Vec> slab;
        for (const Vec& p : points) {
            if (p[2] >= top) slab.push_back(Vec{p[0], p[1]});
        }
        hv += height * hv2d(std::move(slab), ref2);
    }
    return hv;
}

double inner_product_score(const std::vector<FrontPoint>& front) {
    if (front.empty()) {
        throw ConfigError("EmptyFront: inner product needs at least one point");
    }
    double total = 0.0;
    for (const FrontPoint& fp : front) {
        double ip = 0.0;
        for (std::size_t i = 0; i < fp.rewards.size(); ++i) {
            ip += fp.preference[i] * fp.rewards[i];
        }
        total += ip;
    }
    return total / static_cast<double>(front.size());
}

double controllability(const std::vector<FrontPoint>& front, double epsilon) {
    const std::size_t n_pts = front.size();
    if (n_pts == 0) {
        throw ConfigError("EmptyFront: controllability needs at least one point");
    }
    const std::size_t dim = front.front().rewards.size();
    for (const FrontPoint& fp : front) {
        if (fp.rewards.size() != dim) {
            throw DimensionMismatch("controllability: inconsistent dimensions");
        }
    }
    if (n_pts == 1) return 1.0;  // vacuous

    long matches = 0;
    for (std::size_t i = 0; i < n_pts; ++i) {
        for (std::size_t j = 0; j < n_pts; ++j) {
            if (i == j) continue;
            bool ok = true;
            for (std::size_t k = 0; k < dim; ++k) {
                const int pref_sign = sign_of(front[i].preference[k] - front[j].preference[k]);
                if (pref_sign == 0) continue;
                const double dr = front[i].rewards[k] - front[j].rewards[k];
                const int reward_sign = std::fabs(dr) <= epsilon ? 0 : sign_of(dr);
                if (reward_sign != pref_sign) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++matches;
        }
    }
    return static_cast<double>(matches) /
           (static_cast<double>(n_pts) * static_cast<double>(n_pts - 1));
}

double sparsity(const std::vector<FrontPoint>& front) {
    if (front.size() < 2) {
        throw ConfigError("TooFewPoints: sparsity needs N >= 2");
    }
    double total = 0.0;
    for (std::size_t i = 1; i < front.size(); ++i) {
        total += sq_dist(front[i].rewards, front[i - 1].rewards);
    }
    return total / static_cast<double>(front.size() - 1);
}

double spacing(const std::vector<FrontPoint>& front) {
    const std::size_t n_pts = front.size();
    if (n_pts < 2) {
        throw ConfigError("TooFewPoints: spacing needs N >= 2");
    }
    std::vector<double> d(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n_pts; ++j) {
            if (i == j) continue;
            best = std::min(best, sq_dist(front[i].rewards, front[j].rewards));
        }
        d[i] = std::sqrt(best);
    }
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(n_pts);
    double var = 0.0;
    for (double v : d) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(n_pts));
}

std::vector<Vec> pareto_filter(const std::vector<Vec>& points) {
    std::vector<Vec> unique_pts;
    for (const Vec& p : points) {
        if (std::find(unique_pts.begin(), unique_pts.end(), p) == unique_pts.end()) {
            unique_pts.push_back(p);
        }
    }
    std::vector<Vec> out;
    for (const Vec& p : unique_pts) {
        bool dominated = false;
        for (const Vec& q : unique_pts) {
            if (&q == &p || q == p) continue;
            bool geq_all = true;
            for (std::size_t k = 0; k < p.size(); ++k) {
                if (q[k] < p[k]) {
                    geq_all = false;
                    break;
                }
            }
            if (geq_all) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(p);
    }
    return out;
}

int front_length(const std::vector<FrontPoint>& front) {
    std::vector<Vec> points;
    points.reserve(front.size());
    for (const FrontPoint& fp : front) points.push_back(fp.rewards);
    return static_cast<int>(pareto_filter(points).size());
}

MetricsReport compute_metrics(const std::vector<FrontPoint>& front, const Vec& hv_reference,
                              double epsilon) {
    MetricsReport report;
    std::vector<Vec> points;
    points.reserve(front.size());
    for (const FrontPoint& fp : front) points.push_back(fp.rewards);
    report.hypervolume = hypervolume(points, hv_reference);
    report.inner_product = inner_product_score(front);
    report.controllability = controllability(front, epsilon);
    report.front_length = front_length(front);
    report.sparsity = sparsity(front);
    report.spacing = spacing(front);
    return report;
}

}  // namespace bonesoup
