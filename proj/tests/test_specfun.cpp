#include "accelrad/errors.hpp"
#include "accelrad/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace accelrad;
using namespace accelrad::specfun;
using oracle::rel_err;

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

TEST_CASE("gamma: known values and poles")
{
    CHECK(std::abs(specfun::gamma(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(specfun::gamma(0.5) - std::sqrt(pi)) < 1e-14);
    CHECK_THROWS_AS(specfun::gamma(0.0), DomainError);
    CHECK_THROWS_AS(specfun::gamma(-3.0), DomainError);

    const Complex z(1.0, 3.0);
    const Complex product = specfun::gamma(z) * specfun::gamma(std::conj(z));
    CHECK(rel_err(product, 3.0 * pi / std::sinh(3.0 * pi)) < 1e-12);
}

TEST_CASE("gamma: Euler integral oracle at 1 + 0.5i")
{
    const Complex z(1.0, 0.5);
    // t = e^s turns the integral into int exp(z s - e^s) ds, smooth and fast decaying.
    const Complex want = oracle::composite_gl(
        [&](double s) { return std::exp(z * s - std::exp(s)); }, -45.0, 5.0, 200);
    CHECK(rel_err(specfun::gamma(z), want) < 1e-12);
}

TEST_CASE("gamma: modulus identities on the test band")
{
    for (double y : {0.1, 1.0, 3.0, 10.0}) {
        const double g2 = std::norm(specfun::gamma(Complex(1.0, y)));
        CHECK(std::abs(g2 * std::sinh(pi * y) / (pi * y) - 1.0) < 1e-10);
    }
    for (double y = -50.0; y <= 50.0; y += 2.5) {
        const double half = std::norm(specfun::gamma(Complex(0.5, y)));
        CHECK(std::abs(half * std::cosh(pi * y) / pi - 1.0) < 1e-12);
    }
}

TEST_CASE("gamma: recurrence and real axis across the band")
{
    for (double x = 0.25; x <= 5.0; x += 0.25) {
        CHECK(std::abs(specfun::gamma(x).real() / std::tgamma(x) - 1.0) < 1e-13);
        for (double y : {-50.0, -17.0, -1.0, 0.3, 8.0, 33.0, 50.0}) {
            const Complex z(x, y);
            CHECK(rel_err(specfun::gamma(z + 1.0), z * specfun::gamma(z)) < 1e-12);
        }
    }
}

TEST_CASE("upper incomplete gamma: trivial cases")
{
    CHECK(std::abs(upper_incomplete_gamma(1.0, 2.0) - std::exp(-2.0)) < 1e-15);
    CHECK(rel_err(upper_incomplete_gamma(Complex(1.0, 1.0), 0.0), specfun::gamma(Complex(1.0, 1.0))) <
          1e-15);
    CHECK(rel_err(upper_incomplete_gamma(1.0, Complex(0.0, -20.0)), std::exp(Complex(0, 20))) <
          1e-13);
    CHECK_THROWS_AS(upper_incomplete_gamma(Complex(2.5, 0.0), 1.0), PreconditionError);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, Complex(-1.0, 0.1)), PreconditionError);
}

namespace {

// Gamma(xi, u) along the horizontal ray x = u + s, s >= 0, where e^{-x} decays.
Complex incomplete_gamma_oracle(Complex xi, Complex u)
{
    return oracle::composite_gl(
        [&](double s) {
            const Complex x = u + s;
            return std::exp(-x + (xi - 1.0) * std::log(x));
        },
        0.0, 80.0, 400);
}

} // namespace

TEST_CASE("upper incomplete gamma: contour-rotated quadrature oracle")
{
    const Complex xi(1.0, -2.0);
    CHECK(rel_err(upper_incomplete_gamma(xi, Complex(0.0, -5.0)),
                  incomplete_gamma_oracle(xi, Complex(0.0, -5.0))) < 1e-10);

    for (Complex a : {Complex(1.0, 3.0), Complex(1.0, -3.0), Complex(1.0, 0.3), Complex(0.7, 1.0),
                      Complex(2.0, -5.0)})
        for (double b : {0.5, 3.0, 7.9, 8.1, 20.0, 50.0})
            for (double sign : {-1.0, 1.0}) {
                const Complex u(0.0, sign * b);
                CAPTURE(a);
                CAPTURE(u);
                CHECK(rel_err(upper_incomplete_gamma(a, u), incomplete_gamma_oracle(a, u)) < 1e-10);
            }
}

TEST_CASE("incomplete gamma: upper plus lower equals complete")
{
    for (Complex a : {Complex(1.0, 2.0), Complex(1.0, -1.0), Complex(0.5, 0.0)})
        for (double b : {8.5, 9.5, 11.0}) {
            const Complex u(0.0, -b);
            CHECK(rel_err(upper_incomplete_gamma(a, u) + lower_incomplete_gamma(a, u), specfun::gamma(a)) <
                  1e-10);
        }
}

namespace {

std::complex<long double> erf_series_long(std::complex<long double> z)
{
    std::complex<long double> power = z;
    std::complex<long double> sum = z;
    for (int n = 1; n < 200; ++n) {
        power *= -z * z / static_cast<long double>(n);
        sum += power / static_cast<long double>(2 * n + 1);
    }
    return sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
}

} // namespace

TEST_CASE("erf: trivial values and symmetry")
{
    CHECK(specfun::erf(0.0) == Complex{});
    const Complex z0 = 1.3 * std::exp(Complex(0.0, -pi / 4));
    CHECK(std::abs(specfun::erf(-z0) + specfun::erf(z0)) < 1e-15);
    CHECK(std::abs(specfun::erf(1.0).real() - std::erf(1.0)) < 1e-15);
    CHECK(std::abs(specfun::erf(4.5).real() - std::erf(4.5)) < 1e-15);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.0, 5.0);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const Complex z = std::polar(radius(rng), angle(rng));
        CHECK(std::abs(specfun::erf(-z) + specfun::erf(z)) <= 1e-14 * std::abs(specfun::erf(z)));
        CHECK(std::abs(specfun::erf(std::conj(z)) - std::conj(specfun::erf(z))) <= 1e-14 * std::abs(specfun::erf(z)));
    }
}

TEST_CASE("erf: extended-precision Maclaurin oracle")
{
    const auto want = erf_series_long(std::polar(2.0L, -std::numbers::pi_v<long double> / 4));
    const Complex got = specfun::erf(std::polar(2.0, -pi / 4));
    CHECK(rel_err(got, Complex(static_cast<double>(want.real()), static_cast<double>(want.imag()))) <
          1e-13);
}

TEST_CASE("erf: matches the defining integral across |z| <= 20")
{
    // specfun::erf(z) = 2/sqrt(pi) z int_0^1 exp(-z^2 t^2) dt, straight-line path from 0 to z.
    for (double r : {0.5, 2.5, 4.0, 8.0, 15.0, 20.0})
        for (double deg : {-45.0, -30.0, 0.0, 20.0, 45.0, 60.0}) {
            const Complex z = std::polar(r, deg * pi / 180.0);
            if (std::norm(z) * std::cos(2 * deg * pi / 180.0) < -20.0)
                continue; // integrand grows like exp(|z|^2); oracle itself loses precision
            const Complex want =
                2.0 / std::sqrt(pi) * z *
                oracle::composite_gl([&](double t) { return std::exp(-z * z * t * t); }, 0.0, 1.0,
                                     400);
            CAPTURE(z);
            CHECK(rel_err(specfun::erf(z), want) < 1e-10);
        }
}

TEST_CASE("bessel_j: trivial values, parity, range")
{
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
    CHECK(bessel_j(-1, 1.7) == doctest::Approx(-bessel_j(1, 1.7)).epsilon(1e-15));
    CHECK(bessel_j(2, -1.7) == doctest::Approx(bessel_j(2, 1.7)).epsilon(1e-15));
    CHECK_THROWS_AS(bessel_j(201, 1.0), PreconditionError);
    CHECK_THROWS_AS(bessel_j(1, 501.0), PreconditionError);
}

TEST_CASE("bessel_j: Bessel integral oracle")
{
    for (double x : {1.0, 7.5, 40.0}) {
        for (int p : {0, 1, 4, 13}) {
            const double want =
                oracle::composite_gl(
                    [&](double t) { return Complex(std::cos(p * t - x * std::sin(t))); }, 0.0, pi,
                    100)
                    .real() /
                pi;
            CAPTURE(x);
            CAPTURE(p);
            CHECK(std::abs(bessel_j(p, x) - want) < 1e-12);
        }
    }
}

TEST_CASE("bessel_j: agrees with std::cyl_bessel_j over the supported range")
{
    for (int p : {0, 1, 2, 5, 20, 60, 150, 200})
        for (double x : {1e-6, 0.3, 1.0, 5.0, 30.0, 99.0, 250.0, 500.0}) {
            CAPTURE(p);
            CAPTURE(x);
            CHECK(std::abs(bessel_j(p, x) - std::cyl_bessel_j(static_cast<double>(p), x)) < 1e-12);
        }
}

TEST_CASE("bessel_k: closed form, conjugation, quadrature oracle")
{
    CHECK(rel_err(bessel_k(0.5, 2.0), std::sqrt(pi / 4.0) * std::exp(-2.0)) < 1e-12);

    const Complex a = bessel_k(Complex(1.0, 5.0), 3.0);
    const Complex b = bessel_k(Complex(1.0, -5.0), 3.0);
    CHECK(rel_err(b, std::conj(a)) < 1e-12);

    // 100 panels x 20 points = 2000 nodes on [0, 40].
    const Complex want = oracle::composite_gl(
        [](double t) { return Complex(std::exp(-std::cosh(t)) * std::cosh(t)); }, 0.0, 40.0, 100);
    CHECK(rel_err(bessel_k(1.0, 1.0), want) < 1e-12);

    for (double nu : {0.0, 1.0, 2.5, 10.0})
        for (double x : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(rel_err(bessel_k(nu, x), std::cyl_bessel_k(nu, x)) < 1e-9);
        }
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
}

TEST_CASE("bessel_k: complex order against the cosh integral")
{
    // K_xi(x) = int_0^inf exp(-x cosh t) cosh(xi t) dt; usable as an oracle while
    // the cancellation exp(pi |Im xi| / 2) stays moderate.
    for (Complex xi : {Complex(1.0, 1.0), Complex(1.0, -2.0), Complex(1.0, 4.0)})
        for (double x : {0.5, 2.0, 10.0}) {
            const Complex want = oracle::composite_gl(
                [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(xi * t); }, 0.0,
                12.0, 400);
            CAPTURE(xi);
            CAPTURE(x);
            CHECK(rel_err(bessel_k(xi, x), want) < 1e-9);
        }
}

TEST_CASE("bessel_k: conjugation symmetry for random orders")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(-40.0, 40.0);
    std::uniform_real_distribution<double> lx(-3.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const Complex xi(re(rng), im(rng));
        const double x = std::pow(10.0, lx(rng));
        CAPTURE(xi);
        CAPTURE(x);
        const Complex k = bessel_k(xi, x);
        CHECK(std::abs(bessel_k(std::conj(xi), x) - std::conj(k)) <= 1e-12 * std::abs(k));
    }
}

TEST_CASE("oscillatory_quadrature: trivial integrals")
{
    const auto zero = oscillatory_quadrature([](double) { return Complex{}; }, 0.0, 1.0);
    CHECK(zero.value == Complex{});
    CHECK(zero.converged());

    const double A = 37.0;
    QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    const auto period = oscillatory_quadrature(
        [&](double t) { return std::exp(I * (A * t)); }, 0.0, 2 * pi / A, spec,
        [&](double) { return A; });
    CHECK(std::abs(period.value) < 1e-13);

    CHECK_THROWS_AS(oscillatory_quadrature([](double) { return Complex{}; }, 1.0, 1.0),
                    PreconditionError);
    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("oscillatory_quadrature: budget exhaustion is flagged")
{
    QuadratureSpec spec;
    spec.max_subdivisions = 4;
    const auto r = oscillatory_quadrature(
        [](double t) { return std::exp(I * (500.0 * t * t)); }, 0.0, 10.0, spec);
    CHECK(r.status == QuadratureStatus::budget_exhausted);
    CHECK(r.panels <= 4);
}

TEST_CASE("oscillatory_quadrature: error estimate bounds the Simpson oracle error")
{
    struct Case {
        double A;
        double W;
        double damping;
        double b;
    };
    std::vector<Case> corpus;
    for (double A : {5.0, 20.0, 50.0, 120.0})
        for (double W : {-3.0, 0.5, 3.0, 10.0, 30.0})
            corpus.push_back({A, W, A > 60.0 ? -1.0 : 1.0, 10.0});
    REQUIRE(corpus.size() == 20);

    for (const auto& c : corpus) {
        // The accelerated-atom kernel exp[i A (e^{-d t} - 1) + i W t - d t].
        auto f = [&](double t) {
            const double e = std::exp(-c.damping * t);
            return std::exp(I * (c.A * (e - 1.0) / c.damping + c.W * t) - c.damping * t);
        };
        auto rate = [&](double t) { return -c.A * std::exp(-c.damping * t) + c.W; };
        const double b = c.damping > 0 ? c.b : 4.0;
        const auto got = oscillatory_quadrature(f, 0.0, b, {}, rate);
        // Evaluating a phase of size |phi| in double precision perturbs f by about
        // eps |phi| |f|; neither integrator can resolve the integral below that.
        const double noise =
            std::numeric_limits<double>::epsilon() *
            oracle::composite_gl(
                [&](double t) {
                    const double phase = c.A * (std::exp(-c.damping * t) - 1.0) / c.damping + c.W * t;
                    return Complex(std::abs(phase) * std::abs(f(t)));
                },
                0.0, b, 200)
                .real();
        // The oracle cannot agree with itself below the same noise level.
        const Complex want = oracle::simpson_doubling(
            f, 0.0, b, std::max(1e-12, 0.1 * noise / std::abs(got.value)));
        CAPTURE(c.A);
        CAPTURE(c.W);
        CHECK(got.status != QuadratureStatus::budget_exhausted);
        CHECK(std::abs(got.value - want) <= got.error + noise + 1e-11 * std::abs(want));
        CHECK(std::abs(got.value - want) <= 1e-9 * std::abs(want));
    }
}
