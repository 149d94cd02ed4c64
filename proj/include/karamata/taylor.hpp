#pragma once

#include <array>
#include <cmath>

namespace karamata {

// Truncated Taylor series a0 + a1 e + ... + aN e^N, used to get exact
// derivatives of closed-form kernels.
template <int N>
struct Taylor {
    std::array<double, N + 1> c{};

    static Taylor variable(double x0) {
        Taylor t;
        t.c[0] = x0;
        if constexpr (N >= 1) t.c[1] = 1.0;
        return t;
    }
    static Taylor constant(double v) {
        Taylor t;
        t.c[0] = v;
        return t;
    }

    // k-th derivative at the expansion point
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }

    friend Taylor operator+(Taylor a, const Taylor& b) {
        for (int i = 0; i <= N; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend Taylor operator-(Taylor a, const Taylor& b) {
        for (int i = 0; i <= N; ++i) a.c[i] -= b.c[i];
        return a;
    }
    friend Taylor operator*(double s, Taylor a) {
        for (auto& v : a.c) v *= s;
        return a;
    }
    friend Taylor operator+(double s, Taylor a) {
        a.c[0] += s;
        return a;
    }
    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Taylor reciprocal(const Taylor& a) {
        Taylor r;
        r.c[0] = 1.0 / a.c[0];
        for (int k = 1; k <= N; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
            r.c[k] = -s / a.c[0];
        }
        return r;
    }
    friend Taylor exp(const Taylor& a) {
        // r' = a' r
        Taylor r;
        r.c[0] = std::exp(a.c[0]);
        for (int k = 1; k <= N; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
            r.c[k] = s / k;
        }
        return r;
    }
};

template <int N>
Taylor<N> taylor_exp(const Taylor<N>& a) {
    return exp(a);
}

}  // namespace karamata
