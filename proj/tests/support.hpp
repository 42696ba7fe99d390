#pragma once

#include "symphill/matrix.hpp"

#include <cmath>
#include <random>

namespace oracle {

using symphill::Matrix;

// Taylor series with scaling and squaring, independent of the library kernels
inline Matrix expm(const Matrix& a)
{
    double n = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = n > 0.25 ? static_cast<int>(std::ceil(std::log2(n / 0.25))) : 0;
    Matrix x = a / std::pow(2.0, s);
    Matrix term = Matrix::Identity(a.rows(), a.cols()), sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * x / k;
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

inline Matrix triple_loop(const Matrix& a, const Matrix& b)
{
    Matrix c = Matrix::Zero(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            long double s = 0;
            for (int k = 0; k < a.cols(); ++k) s += (long double)a(i, k) * b(k, j);
            c(i, j) = static_cast<double>(s);
        }
    return c;
}

inline Matrix random_matrix(int r, std::mt19937& g, double scale = 1.0)
{
    std::uniform_real_distribution<double> d(-scale, scale);
    Matrix m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = d(g);
    return m;
}

inline Matrix random_symmetric(int r, std::mt19937& g, double scale = 1.0)
{
    Matrix m = random_matrix(r, g, scale);
    return 0.5 * (m + m.transpose());
}

inline Matrix block(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d)
{
    Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
    m << a, b, c, d;
    return m;
}

// fundamental matrix of z' = [[0, I], [-M(t), 0]] z by plain RK4 with many steps
template <class F>
Matrix reference_fundamental(F&& mfun, int r, double t0, double t1, long steps)
{
    Matrix phi = Matrix::Identity(2 * r, 2 * r);
    double h = (t1 - t0) / steps;
    auto f = [&](double t, const Matrix& y) {
        Matrix out(2 * r, 2 * r);
        out.topRows(r) = y.bottomRows(r);
        out.bottomRows(r) = -mfun(t) * y.topRows(r);
        return out;
    };
    for (long n = 0; n < steps; ++n) {
        double t = t0 + n * h;
        Matrix k1 = f(t, phi);
        Matrix k2 = f(t + h / 2, phi + h / 2 * k1);
        Matrix k3 = f(t + h / 2, phi + h / 2 * k2);
        Matrix k4 = f(t + h, phi + h * k3);
        phi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return phi;
}

inline double slope(const std::vector<double>& h, const std::vector<double>& e)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(h.size());
    for (int i = 0; i < n; ++i) {
        double x = std::log(h[i]), y = std::log(e[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}
