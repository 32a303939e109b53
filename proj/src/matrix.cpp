#include "bonesoup/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bonesoup {

namespace {

void check_square(const Matrix& m) {
    if (m.empty()) {
        throw ConfigError("BadDimension: empty matrix");
    }
    for (const Vec& row : m) {
        if (row.size() != m.size()) {
            throw DimensionMismatch("matrix must be square");
        }
    }
}

}  // namespace

CombinationMatrix::CombinationMatrix(Matrix entries, MatrixProvenance provenance, double beta,
                                     int catalog_id)
    : entries_(std::move(entries)), provenance_(provenance), beta_(beta), catalog_id_(catalog_id) {
    check_square(entries_);
    const std::size_t n = entries_.size();
    if (n < 2) {
        throw ConfigError("BadDimension: combination matrix needs n >= 2");
    }
    if (n > 16) {
        throw ConfigError("BadDimension: combination matrix limited to n <= 16");
    }
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += entries_[i][j];
        if (std::fabs(sum - 1.0) > kSimplexTol) {
            throw ConfigError("CombinationMatrix: column " + std::to_string(j) +
                              " does not sum to 1");
        }
    }
    if (std::fabs(determinant(entries_)) <= kDetTol) {
        throw Singular("CombinationMatrix: matrix is singular");
    }
}

Vec CombinationMatrix::column(std::size_t i) const {
    Vec col(dim());
    for (std::size_t r = 0; r < dim(); ++r) col[r] = entries_[r][i];
    return col;
}

CombinationMatrix build_circulant(int n, double beta) {
    if (n < 2) {
        throw ConfigError("BadDimension: circulant needs n >= 2");
    }
    if (!(beta > 0.5 && beta < 1.0)) {
        throw ConfigError("BetaOutOfRange: circulant needs beta in (0.5, 1)");
    }
    const double off = (1.0 - beta) / (n - 1);
    Matrix m(n, Vec(n, off));
    for (int i = 0; i < n; ++i) m[i][i] = beta;
    return CombinationMatrix(std::move(m), MatrixProvenance::Circulant, beta);
}

CombinationMatrix identity_matrix(int n) {
    if (n < 2) {
        throw ConfigError("BadDimension: identity needs n >= 2");
    }
    Matrix m(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) m[i][i] = 1.0;
    return CombinationMatrix(std::move(m), MatrixProvenance::Identity);
}

RuleReport validate_rules(const Matrix& m) {
    check_square(m);
    const std::size_t n = m.size();
    RuleReport report;

    report.dominance = true;
    for (std::size_t j = 0; j < n; ++j) {
        double best = m[0][j];
        std::size_t best_count = 1;
        for (std::size_t i = 1; i < n; ++i) {
            if (m[i][j] > best) {
                best = m[i][j];
                best_count = 1;
            } else if (m[i][j] == best) {
                ++best_count;
            }
        }
        const bool ok = best_count == 1 && best > 1.0 / static_cast<double>(n) && best < 1.0;
        if (!ok) {
            report.dominance = false;
            report.dominance_violations.push_back(static_cast<int>(j));
        }
    }

    report.det = determinant(m);
    report.invertible = std::fabs(report.det) > kDetTol;

    report.normalized = true;
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += m[i][j];
        if (std::fabs(sum - 1.0) > kSimplexTol) {
            report.normalized = false;
            report.normalization_violations.push_back(static_cast<int>(j));
        }
    }
    return report;
}

RuleReport validate_rules(const CombinationMatrix& m) { return validate_rules(m.entries()); }

double determinant(const Matrix& m) {
    check_square(m);
    Matrix a = m;
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

Matrix invert(const Matrix& m) {
    check_square(m);
    if (std::fabs(determinant(m)) <= kDetTol) {
        throw Singular("invert: |det| <= 1e-9");
    }
    const std::size_t n = m.size();
    // Gauss-Jordan on [m | I] with partial pivoting.
    Matrix a = m;
    Matrix inv(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) {
            throw Singular("invert: zero pivot");
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double p = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

Matrix invert(const CombinationMatrix& m) { return invert(m.entries()); }

Vec solve_linear(Matrix a, Vec rhs) {
    check_square(a);
    const std::size_t n = a.size();
    if (rhs.size() != n) {
        throw DimensionMismatch("solve_linear: rhs size mismatch");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (std::fabs(a[pivot][col]) < 1e-14) {
            throw Singular("solve_linear: singular system");
        }
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

double mixup_decompose(int n, double beta) {
    if (n < 2) {
        throw ConfigError("BadDimension: mixup needs n >= 2");
    }
    if (!(beta > 1.0 / n && beta <= 1.0)) {
        throw ConfigError("BetaOutOfRange: mixup needs beta in (1/n, 1]");
    }
    return (beta * n - 1.0) / (n - 1.0);
}

CombinationMatrix random_catalog(int id) {
    static const Matrix catalog[8] = {
        {{0.70, 0.20, 0.15}, {0.15, 0.60, 0.15}, {0.15, 0.20, 0.70}},
        {{0.70, 0.10, 0.10}, {0.15, 0.80, 0.10}, {0.15, 0.10, 0.80}},
        {{0.70, 0.15, 0.10}, {0.15, 0.70, 0.10}, {0.15, 0.15, 0.80}},
        {{0.70, 0.15, 0.20}, {0.15, 0.70, 0.20}, {0.15, 0.15, 0.60}},
        {{0.80, 0.15, 0.20}, {0.10, 0.70, 0.20}, {0.10, 0.15, 0.60}},
        {{0.70, 0.20, 0.10}, {0.15, 0.60, 0.10}, {0.15, 0.20, 0.80}},
        {{0.70, 0.20, 0.20}, {0.15, 0.60, 0.20}, {0.15, 0.20, 0.60}},
        {{0.80, 0.20, 0.20}, {0.10, 0.60, 0.20}, {0.10, 0.20, 0.60}},
    };
    if (id < 1 || id > 8) {
        throw ConfigError("UnknownId: random catalog has matrices 1..8");
    }
    return CombinationMatrix(catalog[id - 1], MatrixProvenance::RandomCatalog, 0.0, id);
}

}  // namespace bonesoup
