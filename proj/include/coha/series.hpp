#pragma once

// Truncated power series in q with exact rational coefficients. Operations on
// mismatched truncations work at the minimum order.

#include "coha/numeric.hpp"

#include <string>
#include <vector>

namespace coha {

class QSeries {
public:
    QSeries() : trunc_(0), c_(1, Rat(0)) {}
    explicit QSeries(long trunc) : trunc_(check(trunc)), c_((std::size_t)trunc + 1, Rat(0)) {}

    static QSeries one(long trunc) {
        QSeries s(trunc);
        s.c_[0] = 1;
        return s;
    }

    long trunc() const { return trunc_; }
    const Rat& coeff(long k) const { return c_.at((std::size_t)k); }
    void set_coeff(long k, Rat v) { c_.at((std::size_t)k) = std::move(v); }
    const std::vector<Rat>& coeffs() const { return c_; }

    QSeries operator+(const QSeries& o) const {
        QSeries r(std::min(trunc_, o.trunc_));
        for (long k = 0; k <= r.trunc_; ++k) r.c_[(std::size_t)k] = c_[(std::size_t)k] + o.c_[(std::size_t)k];
        return r;
    }
    QSeries operator-(const QSeries& o) const {
        QSeries r(std::min(trunc_, o.trunc_));
        for (long k = 0; k <= r.trunc_; ++k) r.c_[(std::size_t)k] = c_[(std::size_t)k] - o.c_[(std::size_t)k];
        return r;
    }
    QSeries operator*(const QSeries& o) const {
        QSeries r(std::min(trunc_, o.trunc_));
        for (long i = 0; i <= r.trunc_; ++i) {
            if (c_[(std::size_t)i] == 0) continue;
            for (long j = 0; i + j <= r.trunc_; ++j) {
                if (o.c_[(std::size_t)j] == 0) continue;
                r.c_[(std::size_t)(i + j)] += c_[(std::size_t)i] * o.c_[(std::size_t)j];
            }
        }
        return r;
    }
    QSeries& operator+=(const QSeries& o) { *this = *this + o; return *this; }
    QSeries& operator*=(const QSeries& o) { *this = *this * o; return *this; }

    bool operator==(const QSeries& o) const { return trunc_ == o.trunc_ && c_ == o.c_; }

    // multiply by (1 + sign q^k)^m, sign in {+1,-1}
    QSeries& mul_binomial(long k, long m, int sign) {
        for (long j = 0; j < m; ++j) {
            QSeries f(trunc_);
            f.c_[0] = 1;
            if (k <= trunc_) f.c_[(std::size_t)k] = sign;
            *this = *this * f;
        }
        return *this;
    }

    // multiply by 1/(1 - q^k)^m
    QSeries& mul_geometric(long k, long m) {
        if (k <= 0) throw std::invalid_argument("geometric factor needs k >= 1");
        QSeries f(trunc_);
        for (long j = 0; j * k <= trunc_; ++j) f.c_[(std::size_t)(j * k)] = 1;
        for (long j = 0; j < m; ++j) *this = *this * f;
        return *this;
    }

    // "1 + 4q + 2q^2"; zero series prints "0"
    std::string str() const {
        std::string out;
        for (long k = 0; k <= trunc_; ++k) {
            const Rat& v = c_[(std::size_t)k];
            if (v == 0) continue;
            const bool neg = v < 0;
            const Rat mag = neg ? Rat(-v) : v;
            if (out.empty()) out += neg ? "-" : "";
            else out += neg ? " - " : " + ";
            std::string coeff = rat_str(mag);
            if (k == 0) { out += coeff; continue; }
            if (coeff != "1") out += coeff;
            out += (k == 1) ? "q" : ("q^" + std::to_string(k));
        }
        return out.empty() ? "0" : out;
    }

private:
    static long check(long t) {
        if (t < 0) throw std::invalid_argument("truncation order must be >= 0");
        return t;
    }
    long trunc_;
    std::vector<Rat> c_;
};

} // namespace coha
