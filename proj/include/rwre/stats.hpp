#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rwre {

struct MeanCi {
    double mean = 0, se = 0, lo = 0, hi = 0;
    std::size_t n = 0;
};

inline MeanCi mean_ci(const std::vector<double>& xs, double z = 3.0) {
    MeanCi r;
    r.n = xs.size();
    if (r.n == 0) throw std::invalid_argument("mean_ci: empty sample");
    double m = std::accumulate(xs.begin(), xs.end(), 0.0) / double(r.n);
    double s2 = 0;
    for (double x : xs) s2 += (x - m) * (x - m);
    s2 = r.n > 1 ? s2 / double(r.n - 1) : 0.0;
    r.mean = m;
    r.se = std::sqrt(s2 / double(r.n));
    r.lo = m - z * r.se;
    r.hi = m + z * r.se;
    return r;
}

inline double variance(const std::vector<double>& xs) {
    double m = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
    double s2 = 0;
    for (double x : xs) s2 += (x - m) * (x - m);
    return xs.size() > 1 ? s2 / double(xs.size() - 1) : 0.0;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Regularized lower incomplete gamma P(a,x), series + continued fraction.
inline double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_p: bad args");
    if (x == 0) return 0.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Lentz continued fraction for Q
    double b = x + 1.0 - a, c = 1e300, dd = 1.0 / b, h = dd;
    for (int i = 1; i <= 500; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        dd = an * dd + b;
        if (std::fabs(dd) < 1e-300) dd = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        dd = 1.0 / dd;
        double del = dd * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

// P[Chi2_k > x]
inline double chi2_sf(double x, double k) { return 1.0 - gamma_p(k / 2.0, x / 2.0); }

// Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_sf(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double s = 0;
    for (int k = 1; k <= 100; ++k) {
        double t = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
        s += t;
        if (std::fabs(t) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, s));
}

// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
inline double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample_p: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double dmax = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        dmax = std::max(dmax, std::fabs(double(i) / na - double(j) / nb));
    }
    double ne = std::sqrt(na * nb / (na + nb));
    double lambda = (ne + 0.12 + 0.11 / ne) * dmax;
    return kolmogorov_sf(lambda);
}

// Anderson-Darling normality test with estimated mean and variance
// (Stephens' A*^2 correction, D'Agostino p-value approximation).
struct AdResult {
    double a2 = 0, a2_star = 0, p = 0;
};
inline AdResult anderson_darling_normal(std::vector<double> xs) {
    std::size_t n = xs.size();
    if (n < 8) throw std::invalid_argument("anderson_darling_normal: need >= 8 samples");
    double m = std::accumulate(xs.begin(), xs.end(), 0.0) / double(n);
    double s = std::sqrt(variance(xs));
    if (s == 0) throw std::invalid_argument("anderson_darling_normal: degenerate sample");
    std::sort(xs.begin(), xs.end());
    double a2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = (xs[i] - m) / s;
        double f = std::min(1.0 - 1e-15, std::max(1e-15, normal_cdf(z)));
        double zr = (xs[n - 1 - i] - m) / s;
        double fr = std::min(1.0 - 1e-15, std::max(1e-15, normal_cdf(zr)));
        a2 += (2.0 * double(i) + 1.0) * (std::log(f) + std::log(1.0 - fr));
    }
    a2 = -double(n) - a2 / double(n);
    AdResult r;
    r.a2 = a2;
    r.a2_star = a2 * (1.0 + 4.0 / double(n) - 25.0 / double(n * n));
    double z = r.a2_star;
    if (z < 0.2)
        r.p = 1.0 - std::exp(-13.436 + 101.14 * z - 223.73 * z * z);
    else if (z < 0.34)
        r.p = 1.0 - std::exp(-8.318 + 42.796 * z - 59.938 * z * z);
    else if (z < 0.6)
        r.p = std::exp(0.9177 - 4.279 * z - 1.38 * z * z);
    else
        r.p = std::exp(1.2937 - 5.709 * z + 0.0186 * z * z);
    r.p = std::min(1.0, std::max(0.0, r.p));
    return r;
}

// Wilson score interval for a binomial proportion.
struct Interval {
    double lo = 0, hi = 0;
};
inline Interval wilson_interval(std::int64_t successes, std::int64_t n, double z = 3.0) {
    if (n <= 0) throw std::invalid_argument("wilson_interval: n <= 0");
    double p = double(successes) / double(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / double(n);
    double center = (p + z2 / (2.0 * double(n))) / denom;
    double half = z / denom * std::sqrt(p * (1.0 - p) / double(n) + z2 / (4.0 * double(n) * double(n)));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Rule-of-three upper bound for an event never observed in n trials.
inline double rule_of_three(std::int64_t n) { return 3.0 / double(n); }

// Weighted least squares line y = a + b x; weights w_i = 1/var_i.
struct LineFit {
    double intercept = 0, slope = 0, se_intercept = 0, se_slope = 0;
};
inline LineFit wls_line(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw std::invalid_argument("wls_line: bad input");
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    double det = sw * swxx - swx * swx;
    if (det <= 0) throw std::runtime_error("wls_line: singular design");
    LineFit f;
    f.slope = (sw * swxy - swx * swy) / det;
    f.intercept = (swxx * swy - swx * swxy) / det;
    f.se_slope = std::sqrt(sw / det);
    f.se_intercept = std::sqrt(swxx / det);
    return f;
}

// Lag-1 Spearman rank autocorrelation with a normal z-score.
struct AutocorrResult {
    double rho = 0, z = 0;
};
inline AutocorrResult spearman_lag1(const std::vector<double>& xs) {
    std::size_t n = xs.size();
    if (n < 10) throw std::invalid_argument("spearman_lag1: need >= 10 samples");
    std::vector<double> rank(n);
    {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
        for (std::size_t i = 0; i < n; ++i) rank[idx[i]] = double(i);
    }
    std::vector<double> a(rank.begin(), rank.end() - 1), b(rank.begin() + 1, rank.end());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / b.size();
    double num = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    AutocorrResult r;
    r.rho = (va > 0 && vb > 0) ? num / std::sqrt(va * vb) : 0.0;
    r.z = r.rho * std::sqrt(double(a.size()) - 1.0);
    return r;
}

// Pearson chi-square goodness-of-fit p-value against given expected counts.
inline double chi2_gof_p(const std::vector<double>& observed, const std::vector<double>& expected,
                         int df_reduction = 0) {
    if (observed.size() != expected.size()) throw std::invalid_argument("chi2_gof_p: size mismatch");
    double stat = 0;
    int df = -df_reduction;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) continue;
        stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
        ++df;
    }
    df -= 1;
    if (df < 1) throw std::invalid_argument("chi2_gof_p: no degrees of freedom");
    return chi2_sf(stat, double(df));
}

}  // namespace rwre
