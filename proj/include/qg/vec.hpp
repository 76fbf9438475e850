#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qg/error.hpp"

namespace qg {

// Dense column vector in R^d. Coordinates are required to stay finite;
// construction helpers and runners check this.
using Vec = std::vector<double>;

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

inline bool all_finite(const Vec& v) {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

inline void require_finite(const Vec& v, const char* what) {
    if (!all_finite(v)) throw Error(std::string(what) + ": non-finite coordinate");
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2_sq(const Vec& a) { return dot(a, a); }
inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double c : a) m = std::max(m, std::fabs(c));
    return m;
}

inline double dist2(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, double c) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

// r = a + c*b
inline Vec add_scaled(const Vec& a, double c, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
    return r;
}

inline void axpy(double c, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline bool is_zero(const Vec& a) {
    for (double c : a)
        if (c != 0.0) return false;
    return true;
}

inline Vec basis(std::size_t d, std::size_t i, double scale = 1.0) {
    Vec r(d, 0.0);
    r[i] = scale;
    return r;
}

}  // namespace qg
