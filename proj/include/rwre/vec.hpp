#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rwre {

// Maximum lattice dimension supported by the fixed-capacity vector types.
inline constexpr int kMaxDim = 8;

// Lattice point in Z^d. d is a runtime value, 2 <= d <= kMaxDim.
struct Site {
    std::array<std::int64_t, kMaxDim> c{};
    std::int32_t d = 0;

    Site() = default;
    explicit Site(int dim) : d(dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Site: bad dimension");
    }
    Site(std::initializer_list<std::int64_t> xs) {
        if (xs.size() < 1 || xs.size() > kMaxDim) throw std::invalid_argument("Site: bad dimension");
        d = static_cast<std::int32_t>(xs.size());
        int i = 0;
        for (auto v : xs) c[i++] = v;
    }

    std::int64_t operator[](int i) const { return c[i]; }
    std::int64_t& operator[](int i) { return c[i]; }

    friend Site operator+(const Site& a, const Site& b) {
        Site r(a.d);
        for (int i = 0; i < a.d; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Site operator-(const Site& a, const Site& b) {
        Site r(a.d);
        for (int i = 0; i < a.d; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    Site& operator+=(const Site& b) {
        for (int i = 0; i < d; ++i) c[i] += b.c[i];
        return *this;
    }
    friend Site operator*(std::int64_t t, const Site& a) {
        Site r(a.d);
        for (int i = 0; i < a.d; ++i) r.c[i] = t * a.c[i];
        return r;
    }
    friend bool operator==(const Site& a, const Site& b) {
        if (a.d != b.d) return false;
        for (int i = 0; i < a.d; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
    friend bool operator<(const Site& a, const Site& b) {  // lexicographic, for ordered containers
        if (a.d != b.d) return a.d < b.d;
        for (int i = 0; i < a.d; ++i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    }

    std::int64_t l1() const {
        std::int64_t s = 0;
        for (int i = 0; i < d; ++i) s += std::llabs(c[i]);
        return s;
    }
    double l2() const {
        double s = 0;
        for (int i = 0; i < d; ++i) s += double(c[i]) * double(c[i]);
        return std::sqrt(s);
    }
    std::int64_t linf() const {
        std::int64_t s = 0;
        for (int i = 0; i < d; ++i) s = std::max<std::int64_t>(s, std::llabs(c[i]));
        return s;
    }
    bool is_zero() const {
        for (int i = 0; i < d; ++i)
            if (c[i] != 0) return false;
        return true;
    }
    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < d; ++i) s += std::to_string(c[i]) + (i + 1 < d ? "," : ")");
        return s;
    }
};

inline std::int64_t dot(const Site& a, const Site& b) {
    std::int64_t s = 0;
    for (int i = 0; i < a.d; ++i) s += a.c[i] * b.c[i];
    return s;
}

inline std::int64_t l1_dist(const Site& a, const Site& b) { return (a - b).l1(); }

// Signed unit vector: code j in [0, 2d) maps to +e_{j/2+1} for even j, -e_{j/2+1} for odd j.
inline Site unit_step(int code, int d) {
    Site e(d);
    e.c[code / 2] = (code % 2 == 0) ? 1 : -1;
    return e;
}
inline int step_code(const Site& e) {
    for (int i = 0; i < e.d; ++i) {
        if (e.c[i] == 1) return 2 * i;
        if (e.c[i] == -1) return 2 * i + 1;
    }
    throw std::invalid_argument("step_code: not a unit step");
}

// Real d-vector with the same fixed capacity.
struct RVec {
    std::array<double, kMaxDim> c{};
    std::int32_t d = 0;

    RVec() = default;
    explicit RVec(int dim) : d(dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("RVec: bad dimension");
    }
    RVec(std::initializer_list<double> xs) {
        d = static_cast<std::int32_t>(xs.size());
        int i = 0;
        for (auto v : xs) c[i++] = v;
    }
    static RVec from(const Site& s) {
        RVec r(s.d);
        for (int i = 0; i < s.d; ++i) r.c[i] = double(s.c[i]);
        return r;
    }
    double operator[](int i) const { return c[i]; }
    double& operator[](int i) { return c[i]; }

    friend RVec operator+(const RVec& a, const RVec& b) {
        RVec r(a.d);
        for (int i = 0; i < a.d; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend RVec operator-(const RVec& a, const RVec& b) {
        RVec r(a.d);
        for (int i = 0; i < a.d; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend RVec operator*(double t, const RVec& a) {
        RVec r(a.d);
        for (int i = 0; i < a.d; ++i) r.c[i] = t * a.c[i];
        return r;
    }
    double l2() const {
        double s = 0;
        for (int i = 0; i < d; ++i) s += c[i] * c[i];
        return std::sqrt(s);
    }
};

inline double dot(const RVec& a, const RVec& b) {
    double s = 0;
    for (int i = 0; i < a.d; ++i) s += a.c[i] * b.c[i];
    return s;
}
inline double dot(const RVec& a, const Site& b) {
    double s = 0;
    for (int i = 0; i < a.d; ++i) s += a.c[i] * double(b.c[i]);
    return s;
}
inline double dot(const Site& a, const RVec& b) { return dot(b, a); }

struct SiteHash {
    std::size_t operator()(const Site& s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ std::uint64_t(s.d);
        for (int i = 0; i < s.d; ++i) {
            std::uint64_t x = std::uint64_t(s.c[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            x *= 0xbf58476d1ce4e5b9ull;
            h ^= x ^ (x >> 31);
        }
        return std::size_t(h);
    }
};

inline std::ostream& operator<<(std::ostream& os, const Site& s) { return os << s.str(); }

}  // namespace rwre
