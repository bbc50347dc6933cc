#include <doctest.h>

#include <cmath>

#include "rwre/lattice.hpp"
#include "rwre/rng.hpp"

using namespace rwre;

namespace {

void check_orthogonal(const Rotation& r, const RVec& ell) {
    for (int i = 0; i < r.d; ++i) {
        for (int j = 0; j < r.d; ++j) {
            double dot_ij = 0;
            for (int k = 0; k < r.d; ++k) dot_ij += r.at(k, i) * r.at(k, j);
            CHECK(std::fabs(dot_ij - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    }
    RVec e1(r.d);
    e1.c[0] = 1.0;
    RVec im = r.apply(e1);
    for (int i = 0; i < r.d; ++i) CHECK(std::fabs(im.c[i] - ell.c[i]) < 1e-12);
}

}  // namespace

TEST_CASE("rotation_to maps e1 to the requested direction") {
    SUBCASE("identity case") {
        Rotation r = rotation_to(RVec{1.0, 0.0});
        CHECK(r.at(0, 0) == 1.0);
        CHECK(r.at(1, 1) == 1.0);
        CHECK(r.at(0, 1) == 0.0);
    }
    SUBCASE("e2 in d=2") { check_orthogonal(rotation_to(RVec{0.0, 1.0}), RVec{0.0, 1.0}); }
    SUBCASE("diagonal direction") {
        double s = 1.0 / std::sqrt(2.0);
        check_orthogonal(rotation_to(RVec{s, s}), RVec{s, s});
    }
    SUBCASE("random unit vectors, d = 2..4") {
        Rng rng(11, 0);
        for (int trial = 0; trial < 50; ++trial) {
            int d = 2 + int(rng.uniform_below(3));
            RVec v(d);
            for (int i = 0; i < d; ++i) v.c[i] = rng.normal();
            double n = v.l2();
            if (n < 1e-6) continue;
            v = (1.0 / n) * v;
            check_orthogonal(rotation_to(v), v);
        }
    }
    SUBCASE("non-unit input rejected") { CHECK_THROWS(rotation_to(RVec{1.0, 1.0})); }
}

TEST_CASE("box membership and positive boundary") {
    Direction dir = Direction::from_integer(Site{1, 0});
    BoxSpec box = BoxSpec::make(Site{0, 0}, 5, 10, dir);
    CHECK(box.contains(Site{0, 0}));
    CHECK(box.contains(Site{4, 9}));
    CHECK(!box.contains(Site{5, 0}));  // boundary ties are outside
    CHECK(!box.contains(Site{0, 10}));

    CHECK(box_positive_boundary_hit(box, Site{5, 0}));
    CHECK(!box_positive_boundary_hit(box, Site{-5, 0}));
    CHECK(!box_positive_boundary_hit(box, Site{3, 10}));
    CHECK_THROWS(box_positive_boundary_hit(box, Site{0, 0}));

    SUBCASE("membership is shift invariant") {
        Site shift{7, -3};
        BoxSpec moved = BoxSpec::make(shift, 5, 10, dir);
        Rng rng(5, 0);
        for (int t = 0; t < 200; ++t) {
            Site y{std::int64_t(rng.uniform_below(13)) - 6, std::int64_t(rng.uniform_below(23)) - 11};
            CHECK(box.contains(y) == moved.contains(y + shift));
        }
    }
}

TEST_CASE("cone membership") {
    ConeSpec cone{Site{0, 0}, Site{1, 0}, 0.05};
    CHECK(cone.contains(Site{10, 1}));
    CHECK(!cone.contains(Site{0, 5}));
    CHECK(cone.contains(Site{0, 0}));  // apex

    SUBCASE("monotone along l") {
        Rng rng(17, 0);
        ConeSpec c{Site{2, -1}, Site{2, 1}, 0.2};
        for (int t = 0; t < 500; ++t) {
            Site y{std::int64_t(rng.uniform_below(21)) - 10 + c.apex.c[0],
                   std::int64_t(rng.uniform_below(21)) - 10 + c.apex.c[1]};
            if (!c.contains(y)) continue;
            for (std::int64_t k = 1; k <= 3; ++k) CHECK(c.contains(y + k * c.l));
        }
    }
}

TEST_CASE("orthogonal projection") {
    RVec p = project_orthogonal(RVec{3.0, 4.0}, RVec{1.0, 0.0});
    CHECK(p.c[0] == 0.0);
    CHECK(p.c[1] == 4.0);

    double s = 1.0 / std::sqrt(2.0);
    RVec q = project_orthogonal(RVec{1.0, 1.0}, RVec{s, s});
    CHECK(std::fabs(q.c[0]) < 1e-12);
    CHECK(std::fabs(q.c[1]) < 1e-12);

    SUBCASE("idempotent and orthogonal") {
        Rng rng(23, 0);
        for (int t = 0; t < 100; ++t) {
            RVec z{rng.normal(), rng.normal(), rng.normal()};
            RVec v{rng.normal(), rng.normal(), rng.normal()};
            double n = v.l2();
            if (n < 1e-6) continue;
            v = (1.0 / n) * v;
            RVec pz = project_orthogonal(z, v);
            CHECK(std::fabs(dot(pz, v)) < 1e-12);
            RVec ppz = project_orthogonal(pz, v);
            for (int i = 0; i < 3; ++i) CHECK(std::fabs(ppz.c[i] - pz.c[i]) < 1e-12);
            // reconstruction: pz + (z.v)v = z
            for (int i = 0; i < 3; ++i)
                CHECK(std::fabs(pz.c[i] + dot(z, v) * v.c[i] - z.c[i]) < 1e-12);
        }
    }
}

TEST_CASE("default cone opening") {
    for (int d = 2; d <= 4; ++d) {
        for (double r : {1.0, 3.0, 10.0}) {
            double z = default_zeta(d, r);
            CHECK(z > 0);
            CHECK(z < 1);
            CHECK(z <= 0.9 / (9.0 * d) + 1e-15);
        }
    }
}

TEST_CASE("direction from integer vector") {
    Direction dir = Direction::from_integer(Site{2, 1});
    CHECK(std::fabs(dir.h - std::sqrt(5.0)) < 1e-12);
    CHECK(std::fabs(dir.ell.l2() - 1.0) < 1e-12);
    for (int i = 0; i < 2; ++i) CHECK(std::fabs(dir.h * dir.ell.c[i] - double(dir.l_int.c[i])) < 1e-12);
    CHECK_THROWS(Direction::from_integer(Site{0, 0}));
}
