#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace obtoy;
using obtoy::test::max_abs;
using obtoy::test::max_abs_diff;
using obtoy::test::random_field;
using obtoy::test::sample;

TEST_CASE("make_grid populates the symmetric wavenumber lattice") {
    GridPtr g = make_grid(8, 8);
    std::vector<int> ks;
    for (int i = 0; i < 8; ++i) ks.push_back(g->kx(i));
    CHECK(ks == std::vector<int>{0, 1, 2, 3, -4, -3, -2, -1});
    CHECK(g->kdx(4) == 0.0);  // Nyquist derivative multiplier zeroed
    CHECK(g->kdx(3) == 3.0);

    GridPtr big = make_grid(128, 128);
    CHECK(big->size() == 128u * 128u);
}

TEST_CASE("make_grid rejects odd or out-of-range sizes") {
    CHECK_THROWS_AS(make_grid(7, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 9), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(6, 8), std::invalid_argument);  // below the minimum
    CHECK_THROWS_AS(make_grid(8, 4098), std::invalid_argument);
}

TEST_CASE("constant field transforms to the DC mode only") {
    GridPtr g = make_grid(16, 16);
    PhysicalField one = sample(g, [](double, double) { return 1.0; });
    SpectralField f = to_spectral(one);
    CHECK(std::abs(f.mode(0, 0) - cplx(256.0, 0.0)) < 1e-10);
    f.mode(0, 0) = cplx{};
    CHECK(max_abs(f) < 1e-10);
}

TEST_CASE("cos(3x) concentrates on the two modes (+-3, 0)") {
    GridPtr g = make_grid(32, 32);
    SpectralField f = to_spectral(sample(g, [](double x, double) { return std::cos(3 * x); }));
    const double expected = 32.0 * 32.0 / 2.0;
    CHECK(std::abs(f.mode(3, 0) - cplx(expected, 0.0)) < 1e-8);
    CHECK(std::abs(f.mode(-3, 0) - cplx(expected, 0.0)) < 1e-8);
    f.mode(3, 0) = cplx{};
    f.mode(-3, 0) = cplx{};
    CHECK(max_abs(f) < 1e-8);
}

TEST_CASE("white-noise round trip and Parseval hold to 1e-12 relative") {
    GridPtr g = make_grid(64, 32);
    std::mt19937_64 rng(7);
    PhysicalField noise = obtoy::test::random_samples(g, rng);
    SpectralField f = to_spectral(noise);
    PhysicalField back = to_physical(f);
    CHECK(max_abs_diff(noise, back) < 1e-12);

    double phys = 0.0;
    for (double v : noise.v) phys += v * v;
    double spec = 0.0;
    for (const cplx& z : f.c) spec += std::norm(z);
    spec /= double(g->size());
    CHECK(std::abs(phys - spec) < 1e-12 * phys);
}

TEST_CASE("to_spectral rejects size mismatch") {
    GridPtr g = make_grid(16, 16);
    PhysicalField f(g);
    f.v.resize(10);
    CHECK_THROWS_AS(to_spectral(f), std::invalid_argument);
}

TEST_CASE("derivative reproduces analytic derivatives") {
    GridPtr g = make_grid(32, 32);
    SpectralField sinx = to_spectral(sample(g, [](double x, double) { return std::sin(x); }));
    PhysicalField dx = to_physical(derivative(sinx, 1));
    PhysicalField cosx = sample(g, [](double x, double) { return std::cos(x); });
    CHECK(max_abs_diff(dx, cosx) < 1e-12);

    SpectralField constf = to_spectral(sample(g, [](double, double) { return 2.5; }));
    CHECK(max_abs(derivative(constf, 1)) < 1e-12);
    CHECK(max_abs(derivative(constf, 2)) < 1e-12);
}

TEST_CASE("derivative matches the symbolic oracle on cos(2x)sin(3y)") {
    GridPtr g = make_grid(48, 48);
    SpectralField f = to_spectral(
        sample(g, [](double x, double y) { return std::cos(2 * x) * std::sin(3 * y); }));
    PhysicalField dy = to_physical(derivative(f, 2));
    PhysicalField expected =
        sample(g, [](double x, double y) { return 3.0 * std::cos(2 * x) * std::cos(3 * y); });
    CHECK(max_abs_diff(dy, expected) < 1e-12);
}

TEST_CASE("derivative rejects a bad axis and preserves conjugate symmetry") {
    GridPtr g = make_grid(16, 16);
    std::mt19937_64 rng(3);
    SpectralField f = random_field(g, rng);
    CHECK_THROWS_AS(derivative(f, 3), std::invalid_argument);
    CHECK(conjugate_symmetry_defect(derivative(f, 1)) < 1e-12);
    CHECK(conjugate_symmetry_defect(derivative(f, 2)) < 1e-12);
}

TEST_CASE("truncate zeroes modes outside the box and is idempotent") {
    GridPtr g = make_grid(32, 32);
    SpectralField c5 = to_spectral(sample(g, [](double x, double) { return std::cos(5 * x); }));
    CHECK(max_abs(truncate(c5, 4)) < 1e-8);

    SpectralField c3(g);  // cos(3x), set exactly
    c3.mode(3, 0) = cplx(32.0 * 32.0 / 2.0, 0.0);
    c3.mode(-3, 0) = cplx(32.0 * 32.0 / 2.0, 0.0);
    CHECK(max_abs_diff(truncate(c3, 4), c3) == 0.0);

    std::mt19937_64 rng(11);
    SpectralField f = random_field(g, rng);
    SpectralField once = truncate(f, 4);
    CHECK(max_abs_diff(truncate(once, 4), once) == 0.0);

    CHECK_THROWS_AS(truncate(f, 17), std::invalid_argument);
    CHECK_THROWS_AS(truncate(f, -1), std::invalid_argument);
}

TEST_CASE("leray projection annihilates gradients and keeps solenoidal fields") {
    GridPtr g = make_grid(32, 32);
    // v = grad sin(x+y)
    SpectralField v1 =
        to_spectral(sample(g, [](double x, double y) { return std::cos(x + y); }));
    SpectralField v2 = v1;
    auto [p1, p2] = leray_project(v1, v2);
    CHECK(max_abs(p1) < 1e-10);
    CHECK(max_abs(p2) < 1e-10);

    SpectralField w1 = to_spectral(sample(g, [](double, double y) { return -std::sin(y); }));
    SpectralField w2(g);
    auto [q1, q2] = leray_project(w1, w2);
    CHECK(max_abs_diff(q1, w1) < 1e-12 * max_abs(w1));
    CHECK(max_abs(q2) < 1e-12 * max_abs(w1));
}

TEST_CASE("leray projection agrees with a direct Poisson solve") {
    GridPtr g = make_grid(32, 32);
    std::mt19937_64 rng(17);
    // content off the Nyquist rows, where the projection passes through
    SpectralField v1 = truncate(random_field(g, rng), 15);
    SpectralField v2 = truncate(random_field(g, rng), 15);

    // oracle: q solves Lap q = div v mode-by-mode, subtract grad q
    SpectralField o1 = v1, o2 = v2;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const double k1 = g->kx(i), k2 = g->ky(j);
            const double k2n = k1 * k1 + k2 * k2;
            if (k2n == 0.0) continue;
            const std::size_t idx = g->index(i, j);
            const cplx divv = cplx(0.0, k1) * v1.c[idx] + cplx(0.0, k2) * v2.c[idx];
            const cplx qhat = divv / cplx(-k2n, 0.0);
            o1.c[idx] = v1.c[idx] - cplx(0.0, k1) * qhat;
            o2.c[idx] = v2.c[idx] - cplx(0.0, k2) * qhat;
        }

    auto [p1, p2] = leray_project(v1, v2);
    const double scale = std::max(max_abs(v1), max_abs(v2));
    CHECK(max_abs_diff(p1, o1) < 1e-12 * scale);
    CHECK(max_abs_diff(p2, o2) < 1e-12 * scale);

    // (sin x, sin x): the solenoidal part of the second component is sin x
    SpectralField s1 = to_spectral(sample(g, [](double x, double) { return std::sin(x); }));
    auto [ps1, ps2] = leray_project(s1, s1);
    PhysicalField sinx = sample(g, [](double x, double) { return std::sin(x); });
    CHECK(max_abs_diff(to_physical(ps2), sinx) < 1e-12);
    CHECK(max_abs(ps1) < 1e-10);
}

TEST_CASE("leray projection is idempotent, orthogonal, divergence-killing, real") {
    GridPtr g = make_grid(24, 40);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        SpectralField v1 = random_field(g, rng);
        SpectralField v2 = random_field(g, rng);
        auto [p1, p2] = leray_project(v1, v2);
        auto [pp1, pp2] = leray_project(p1, p2);
        const double scale = spectral_l2_pair(v1, v2);
        CHECK(max_abs_diff(pp1, p1) < 1e-12 * scale);
        CHECK(max_abs_diff(pp2, p2) < 1e-12 * scale);

        // <Pv, v - Pv> = 0
        double ip = 0.0;
        for (std::size_t m = 0; m < p1.c.size(); ++m) {
            const cplx r1 = v1.c[m] - p1.c[m], r2 = v2.c[m] - p2.c[m];
            ip += p1.c[m].real() * r1.real() + p1.c[m].imag() * r1.imag();
            ip += p2.c[m].real() * r2.real() + p2.c[m].imag() * r2.imag();
        }
        CHECK(std::abs(ip) < 1e-12 * scale * scale);

        CHECK(max_mode_divergence(p1, p2) < 1e-12 * scale);
        CHECK(conjugate_symmetry_defect(p1) < 1e-11);
        CHECK(conjugate_symmetry_defect(p2) < 1e-11);

        // mean velocity passes through
        CHECK(p1.mode(0, 0) == v1.mode(0, 0));
        CHECK(p2.mode(0, 0) == v2.mode(0, 0));
    }
}

TEST_CASE("grid mismatch is rejected") {
    SpectralField a(make_grid(16, 16)), b(make_grid(32, 32));
    CHECK_THROWS_AS(leray_project(a, b), std::invalid_argument);
}

TEST_CASE("operations preserve conjugate symmetry on fields of real origin") {
    GridPtr g = make_grid(16, 24);
    std::mt19937_64 rng(29);
    SpectralField f = random_field(g, rng);
    CHECK(conjugate_symmetry_defect(f) < 1e-12);
    CHECK(conjugate_symmetry_defect(truncate(f, 6)) < 1e-12);
    CHECK(conjugate_symmetry_defect(derivative(f, 1)) < 1e-12);
    PhysicalField p = to_physical(f);
    CHECK(conjugate_symmetry_defect(to_spectral(p)) < 1e-12);
}

TEST_CASE("packed pair transforms match the single-field transforms") {
    GridPtr g = make_grid(32, 16);
    std::mt19937_64 rng(31);
    SpectralField f = random_field(g, rng);
    SpectralField h = random_field(g, rng);
    std::vector<double> fp(g->size()), hp(g->size());
    std::vector<cplx> sa(g->size()), sb(g->size());
    to_physical_pair(*g, f.c.data(), h.c.data(), fp.data(), hp.data(), sa.data(), sb.data());
    PhysicalField f1 = to_physical(f), h1 = to_physical(h);
    for (std::size_t m = 0; m < g->size(); ++m) {
        CHECK(std::abs(fp[m] - f1.v[m]) < 1e-12);
        CHECK(std::abs(hp[m] - h1.v[m]) < 1e-12);
    }
    SpectralField fs(g), hs(g);
    to_spectral_pair(*g, fp.data(), hp.data(), fs.c.data(), hs.c.data(), sa.data(), sb.data());
    CHECK(max_abs_diff(fs, f) < 1e-9);
    CHECK(max_abs_diff(hs, h) < 1e-9);
}
