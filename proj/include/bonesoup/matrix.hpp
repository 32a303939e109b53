#pragma once

#include <cstddef>
#include <vector>

#include "bonesoup/core_types.hpp"

namespace bonesoup {

// Row-major square matrix, n <= 16.
using Matrix = std::vector<Vec>;

inline constexpr double kDetTol = 1e-9;

enum class MatrixProvenance { Circulant, Identity, RandomCatalog, Custom };

// Column-stochastic combination-weight matrix; column i is the reward
// combination weight w_i used to train backbone model i.
class CombinationMatrix {
  public:
    CombinationMatrix(Matrix entries, MatrixProvenance provenance, double beta = 0.0,
                      int catalog_id = 0);

    const Matrix& entries() const { return entries_; }
    std::size_t dim() const { return entries_.size(); }
    MatrixProvenance provenance() const { return provenance_; }
    double beta() const { return beta_; }
    int catalog_id() const { return catalog_id_; }

    Vec column(std::size_t i) const;

  private:
    Matrix entries_;
    MatrixProvenance provenance_;
    double beta_;
    int catalog_id_;
};

struct RuleReport {
    bool dominance = false;      // Rule 1: unique strict column max in (1/n, 1)
    bool invertible = false;     // Rule 2: |det| > 1e-9
    bool normalized = false;     // Rule 3: columns sum to 1
    std::vector<int> dominance_violations;
    std::vector<int> normalization_violations;
    double det = 0.0;

    bool all_pass() const { return dominance && invertible && normalized; }
};

// Symmetric circulant B: diagonal beta, off-diagonal (1-beta)/(n-1).
CombinationMatrix build_circulant(int n, double beta);

CombinationMatrix identity_matrix(int n);

RuleReport validate_rules(const Matrix& m);
RuleReport validate_rules(const CombinationMatrix& m);

// Partial-pivot Gauss-Jordan inverse; throws Singular when |det| <= 1e-9.
Matrix invert(const Matrix& m);
Matrix invert(const CombinationMatrix& m);

// Solve m * x = rhs by partial-pivot elimination.
Vec solve_linear(Matrix m, Vec rhs);

double determinant(const Matrix& m);

// Mixup weight xi with w_1 = xi * o_1 + (1 - xi) * u; xi = (beta*n - 1)/(n - 1).
double mixup_decompose(int n, double beta);

// The eight fixed 3x3 random baseline matrices B_1..B_8.
CombinationMatrix random_catalog(int id);

}  // namespace bonesoup
