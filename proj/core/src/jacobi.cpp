#include "jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "layerchain/errors.hpp"

namespace layerchain::detail {

namespace {

double off_diagonal_norm(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) acc += 2.0 * a[i][j] * a[i][j];
    return std::sqrt(acc);
}

double frobenius_norm(const std::vector<std::vector<double>>& a) {
    double acc = 0.0;
    for (const auto& row : a)
        for (double v : row) acc += v * v;
    return std::sqrt(acc);
}

// One rotation in the (p, q) plane annihilating a[p][q].
void rotate(std::vector<std::vector<double>>& a,
            std::vector<std::vector<double>>& v, int p, int q) {
    const double apq = a[p][q];
    if (apq == 0.0) return;

    const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;  // tan -> 1/(2 theta) for huge theta
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    const int n = static_cast<int>(a.size());
    a[p][p] -= t * apq;
    a[q][q] += t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == p || j == q) continue;
        const double ajp = a[j][p];
        const double ajq = a[j][q];
        a[j][p] = ajp - s * (ajq + tau * ajp);
        a[j][q] = ajq + s * (ajp - tau * ajq);
        a[p][j] = a[j][p];
        a[q][j] = a[j][q];
    }
    for (int j = 0; j < n; ++j) {
        const double vjp = v[j][p];
        const double vjq = v[j][q];
        v[j][p] = vjp - s * (vjq + tau * vjp);
        v[j][q] = vjq + s * (vjp - tau * vjq);
    }
}

void fix_sign(std::vector<double>& vec) {
    int arg = 0;
    double best = 0.0;
    for (int j = 0; j < static_cast<int>(vec.size()); ++j) {
        if (std::abs(vec[j]) > best) {
            best = std::abs(vec[j]);
            arg = j;
        }
    }
    if (vec[arg] < 0.0)
        for (double& x : vec) x = -x;
}

// Replace the eigenvectors of a degenerate cluster with the Gram-Schmidt
// orthonormalization of the coordinate axes projected onto the cluster's
// subspace, taken in index order.  The result depends only on the subspace,
// not on the rotation history.
void canonicalize_cluster(std::vector<std::vector<double>>& vectors,
                          int begin, int end) {
    const int n = static_cast<int>(vectors[begin].size());
    const int dim = end - begin;
    std::vector<std::vector<double>> basis;
    basis.reserve(dim);
    for (int axis = 0; axis < n && static_cast<int>(basis.size()) < dim; ++axis) {
        // project e_axis onto the cluster subspace
        std::vector<double> w(n, 0.0);
        for (int m = begin; m < end; ++m) {
            const double coef = vectors[m][axis];
            for (int j = 0; j < n; ++j) w[j] += coef * vectors[m][j];
        }
        for (const auto& prev : basis) {
            const double coef =
                std::inner_product(w.begin(), w.end(), prev.begin(), 0.0);
            for (int j = 0; j < n; ++j) w[j] -= coef * prev[j];
        }
        const double norm =
            std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        if (norm < 1e-6) continue;  // axis nearly inside the span built so far
        for (double& x : w) x /= norm;
        basis.push_back(std::move(w));
    }
    if (static_cast<int>(basis.size()) != dim)
        throw numeric_error("jacobi_eigen: failed to canonicalize degenerate cluster");
    for (int m = 0; m < dim; ++m) vectors[begin + m] = std::move(basis[m]);
}

}  // namespace

EigenResult jacobi_eigen(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) throw domain_error("jacobi_eigen: empty matrix");

    double scale = frobenius_norm(a);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(a[i].size()) != n)
            throw domain_error("jacobi_eigen: matrix is not square");
        for (int j = 0; j < n; ++j)
            if (std::abs(a[i][j] - a[j][i]) > 1e-12 * std::max(scale, 1.0))
                throw domain_error("jacobi_eigen: matrix is not symmetric");
    }
    // symmetrize exactly so rotations preserve symmetry bit-for-bit
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = m;
            a[j][i] = m;
        }

    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    if (scale == 0.0) scale = 1.0;
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-14 * scale) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_norm(a) > 1e-14 * scale)
        throw numeric_error("jacobi_eigen: rotations did not converge");

    EigenResult result;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int x, int y) { return a[x][x] < a[y][y]; });

    result.values.resize(n);
    result.vectors.assign(n, std::vector<double>(n));
    for (int m = 0; m < n; ++m) {
        result.values[m] = a[order[m]][order[m]];
        for (int j = 0; j < n; ++j) result.vectors[m][j] = v[j][order[m]];
    }

    // canonical basis inside each numerically degenerate cluster
    const double gap_scale = std::max(scale, 1.0);
    int begin = 0;
    while (begin < n) {
        int end = begin + 1;
        while (end < n &&
               result.values[end] - result.values[end - 1] <= 1e-9 * gap_scale)
            ++end;
        if (end - begin > 1) canonicalize_cluster(result.vectors, begin, end);
        begin = end;
    }
    for (auto& vec : result.vectors) fix_sign(vec);

    return result;
}

}  // namespace layerchain::detail
