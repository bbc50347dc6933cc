#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rwre/vec.hpp"

namespace rwre {

// Direction of transience: unit vector ell with an integer representative
// l = h * ell. All level comparisons use the integer vector to avoid
// floating-point ties.
struct Direction {
    RVec ell;    // |ell|_2 = 1
    Site l_int;  // h * ell, nonzero
    double h = 0;

    static Direction from_integer(const Site& l) {
        if (l.is_zero()) throw std::invalid_argument("Direction: zero integer vector");
        Direction dir;
        dir.l_int = l;
        dir.h = l.l2();
        dir.ell = (1.0 / dir.h) * RVec::from(l);
        return dir;
    }
};

// Orthogonal matrix, row-major d x d.
struct Rotation {
    int d = 0;
    std::vector<double> m;  // row-major

    double at(int i, int j) const { return m[std::size_t(i) * d + j]; }

    RVec apply(const RVec& x) const {
        RVec r(d);
        for (int i = 0; i < d; ++i) {
            double s = 0;
            for (int j = 0; j < d; ++j) s += at(i, j) * x.c[j];
            r.c[i] = s;
        }
        return r;
    }
    // transpose = inverse
    RVec apply_inv(const RVec& x) const {
        RVec r(d);
        for (int j = 0; j < d; ++j) {
            double s = 0;
            for (int i = 0; i < d; ++i) s += at(i, j) * x.c[i];
            r.c[j] = s;
        }
        return r;
    }
    RVec apply_inv(const Site& x) const { return apply_inv(RVec::from(x)); }

    static Rotation identity(int d) {
        Rotation r;
        r.d = d;
        r.m.assign(std::size_t(d) * d, 0.0);
        for (int i = 0; i < d; ++i) r.m[std::size_t(i) * d + i] = 1.0;
        return r;
    }
};

// Orthogonal R with R e_1 = ell, built as the Householder reflection through
// e_1 - ell (identity when ell == e_1).
inline Rotation rotation_to(const RVec& ell) {
    int d = ell.d;
    double n2 = ell.l2();
    if (std::fabs(n2 - 1.0) > 1e-9) throw std::invalid_argument("rotation_to: non-unit direction");
    RVec v(d);
    v.c[0] = 1.0 - ell.c[0];
    for (int i = 1; i < d; ++i) v.c[i] = -ell.c[i];
    double vv = dot(v, v);
    if (vv < 1e-24) return Rotation::identity(d);
    Rotation r = Rotation::identity(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r.m[std::size_t(i) * d + j] -= 2.0 * v.c[i] * v.c[j] / vv;
    return r;
}

// Box B_{L,L',l}(x) = x + R((-L,L) x (-L',L')^{d-1}), intersected with Z^d.
// Membership is strict; boundary-equal points count as outside.
struct BoxSpec {
    Site center;
    double depth = 0;  // L
    double width = 0;  // L'
    Direction direction;
    Rotation rotation;

    static BoxSpec make(const Site& center, double depth, double width, const Direction& dir) {
        BoxSpec b;
        b.center = center;
        b.depth = depth;
        b.width = width;
        b.direction = dir;
        b.rotation = rotation_to(dir.ell);
        return b;
    }

    bool contains(const Site& y) const {
        RVec u = rotation.apply_inv(y - center);
        if (!(u.c[0] > -depth && u.c[0] < depth)) return false;
        for (int i = 1; i < u.d; ++i)
            if (!(u.c[i] > -width && u.c[i] < width)) return false;
        return true;
    }
};

// True iff the exit site lies on the positive boundary part
// (exit - center) . ell >= L. Requires the site to actually be outside.
inline bool box_positive_boundary_hit(const BoxSpec& box, const Site& exit_site) {
    if (box.contains(exit_site))
        throw std::invalid_argument("box_positive_boundary_hit: site is interior");
    return dot(box.direction.ell, exit_site - box.center) >= box.depth;
}

// Cone C(x,l,zeta) = { y : (y-x).l >= zeta |l|_2 |y-x|_2 }.
struct ConeSpec {
    Site apex;
    Site l;
    double zeta = 0;

    bool contains(const Site& y) const {
        Site w = y - apex;
        std::int64_t num = dot(w, l);
        if (w.is_zero()) return true;
        if (num < 0) return false;
        // compare num^2 >= zeta^2 |l|^2 |w|^2 to keep one side integral
        double lhs = double(num) * double(num);
        double rhs = zeta * zeta * double(dot(l, l)) * double(dot(w, w));
        return lhs >= rhs;
    }
};

// Default cone opening for a (T)-aspect-ratio r, with a 0.9 safety factor to
// avoid boundary equality in the forced-block containment requirement.
inline double default_zeta(int d, double aspect_ratio) {
    double a = 1.0 / (9.0 * d);
    double b = 1.0 / (3.0 * d * aspect_ratio);
    double c = std::cos(M_PI / 2.0 - std::atan(3.0 * aspect_ratio));
    return 0.9 * std::min(a, std::min(b, c));
}

// Pi(z) = z - (z.v)v, projection onto the orthogonal complement of v_hat.
inline RVec project_orthogonal(const RVec& z, const RVec& v_hat) {
    if (std::fabs(v_hat.l2() - 1.0) > 1e-9)
        throw std::invalid_argument("project_orthogonal: non-unit v_hat");
    double t = dot(z, v_hat);
    return z - t * v_hat;
}

}  // namespace rwre
