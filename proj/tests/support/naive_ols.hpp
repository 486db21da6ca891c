#pragma once

// Reference cluster-robust fit computed with nothing but raw loops and a
// Gauss-Jordan inverse, so any agreement with the library goes through two
// unrelated numerical routes.

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix invert(Matrix a) {
    std::size_t n = a.size();
    Matrix inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        double d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

struct Fit {
    std::vector<double> coef;
    Matrix vcov;
};

inline Fit cluster_fit(Matrix X, std::vector<double> y, const std::vector<std::string>& village,
                       bool fe) {
    std::size_t N = X.size();
    std::size_t k = X[0].size();

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < N; ++r) groups[village[r]].push_back(r);

    if (fe) {
        for (const auto& [g, rows] : groups) {
            std::vector<double> mx(k, 0.0);
            double my = 0.0;
            for (std::size_t r : rows) {
                for (std::size_t j = 0; j < k; ++j) mx[j] += X[r][j];
                my += y[r];
            }
            for (double& m : mx) m /= static_cast<double>(rows.size());
            my /= static_cast<double>(rows.size());
            for (std::size_t r : rows) {
                for (std::size_t j = 0; j < k; ++j) X[r][j] -= mx[j];
                y[r] -= my;
            }
        }
    }

    Matrix xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += X[r][i] * y[r];
            for (std::size_t j = 0; j < k; ++j) xtx[i][j] += X[r][i] * X[r][j];
        }
    Matrix bread = invert(xtx);

    Fit fit;
    fit.coef.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) fit.coef[i] += bread[i][j] * xty[j];

    std::vector<double> u(N, 0.0);
    for (std::size_t r = 0; r < N; ++r) {
        double pred = 0.0;
        for (std::size_t j = 0; j < k; ++j) pred += X[r][j] * fit.coef[j];
        u[r] = y[r] - pred;
    }

    Matrix meat(k, std::vector<double>(k, 0.0));
    for (const auto& [g, rows] : groups) {
        std::vector<double> h(k, 0.0);
        for (std::size_t r : rows)
            for (std::size_t j = 0; j < k; ++j) h[j] += X[r][j] * u[r];
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) meat[i][j] += h[i] * h[j];
    }

    double G = static_cast<double>(groups.size());
    double cr1 =
        (G / (G - 1.0)) *
        ((static_cast<double>(N) - 1.0) / (static_cast<double>(N) - static_cast<double>(k)));
    Matrix tmp(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t m = 0; m < k; ++m) tmp[i][j] += bread[i][m] * meat[m][j];
    fit.vcov.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t m = 0; m < k; ++m) fit.vcov[i][j] += tmp[i][m] * bread[m][j];
            fit.vcov[i][j] *= cr1;
        }
    return fit;
}

}  // namespace oracle
