#pragma once
// Small dense vector/matrix helpers. Dimensions in this library are tiny
// (portfolio-sized), so plain std::vector storage is enough.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosco {

using Vec = std::vector<double>;

// Row-major dense matrix.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline void check_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch, got " +
                                    std::to_string(got) + ", expected " +
                                    std::to_string(want));
    }
}

// A * v, A is (r x c), v has length c.
inline Vec matvec(const Mat& a, const Vec& v) {
    check_dim(v.size(), a.cols, "matvec");
    Vec out(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

// A^T * v, A is (r x c), v has length r.
inline Vec matvec_t(const Mat& a, const Vec& v) {
    check_dim(v.size(), a.rows, "matvec_t");
    Vec out(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out[j] += a(i, j) * v[i];
    return out;
}

// A * B, (r x k) * (k x c).
inline Mat matmul(const Mat& a, const Mat& b) {
    check_dim(b.rows, a.cols, "matmul");
    Mat out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline double dot(const Vec& a, const Vec& b) {
    check_dim(b.size(), a.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
    check_dim(y.size(), x.size(), "axpy");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + y[i];
    return out;
}

}  // namespace cosco
