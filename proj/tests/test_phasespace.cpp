#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/phasespace.hpp"
#include "moyal/serial_ref.hpp"
#include "moyal/states.hpp"

#include <cmath>

using namespace moyal;
namespace ps = moyal::phasespace;

namespace {

constexpr double PI = 3.14159265358979323846;

// Closed-form Wigner distribution of a Gaussian packet.
double gaussian_wigner(double x, double p, double x0, double p0, double sigma,
                       double hbar) {
    double a = (x - x0) * (x - x0) / (2.0 * sigma * sigma);
    double b = 2.0 * sigma * sigma * (p - p0) * (p - p0) / (hbar * hbar);
    return std::exp(-a - b) / (PI * hbar);
}

double max_abs_diff(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

PhaseSpaceField coordinate_field(const GridSpec& g, bool momentum) {
    PhaseSpaceField f(g);
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) f.at(j, k) = momentum ? g.p(k) : g.x(j);
    return f;
}

cplx overlap(const WaveFunction& a, const WaveFunction& b) {
    cplx s = 0.0;
    for (int j = 0; j < a.grid.n; ++j)
        s += std::conj(a.values[j]) * b.values[j];
    return s * a.grid.dx();
}

}  // namespace

TEST_CASE("gaussian wigner matches the closed form") {
    GridSpec g(128, 20.0);
    double x0 = 1.0, p0 = -2.0, sigma = 0.8;
    PhaseSpaceField F = ps::wigner(states::gaussian(g, x0, p0, sigma));
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
            worst = std::max(worst, std::abs(F.at(j, k).real() -
                                             gaussian_wigner(g.x(j), g.p(k), x0,
                                                             p0, sigma, g.hbar)));
    CHECK(worst < 1e-12);

    // hbar != 1 variant
    GridSpec g2(128, 20.0, 0.5);
    PhaseSpaceField F2 = ps::wigner(states::gaussian(g2, 0.0, 1.0, 0.6));
    double worst2 = 0.0;
    for (int j = 0; j < g2.n; ++j)
        for (int k = 0; k < g2.n; ++k)
            worst2 = std::max(worst2, std::abs(F2.at(j, k).real() -
                                               gaussian_wigner(g2.x(j), g2.p(k),
                                                               0.0, 1.0, 0.6,
                                                               g2.hbar)));
    CHECK(worst2 < 1e-12);
}

TEST_CASE("first excited oscillator state: Laguerre form and -1/pi minimum") {
    GridSpec g(128, 20.0);
    PhaseSpaceField F = ps::wigner(states::ho_eigenstate(g, 1));
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
            double u = g.x(j) * g.x(j) + g.p(k) * g.p(k);
            double exact = (2.0 * u - 1.0) * std::exp(-u) / PI;
            worst = std::max(worst, std::abs(F.at(j, k).real() - exact));
        }
    CHECK(worst < 1e-12);

    ps::Negativity neg = ps::negativity(F);
    CHECK(neg.min_value == doctest::Approx(-1.0 / PI).epsilon(1e-10));
    CHECK(neg.x == doctest::Approx(0.0));
    CHECK(neg.p == doctest::Approx(0.0));
    CHECK(neg.negative_mass < -0.1);
}

TEST_CASE("fast wigner agrees with the direct-sum reference") {
    GridSpec g(32, 16.0);
    WaveFunction psi = states::state_factory(
        "gaussian(x0=0.5,p0=1,sigma=0.8) + (0.3+0.4i)*ho(n=2)", g);
    PhaseSpaceField fast = ps::wigner(psi);
    PhaseSpaceField ref = serial_ref::wigner(psi);
    CHECK(max_abs_diff(fast, ref) < 1e-12);
}

TEST_CASE("marginals and moments of a gaussian packet") {
    GridSpec g(128, 20.0);
    double x0 = -0.5, p0 = 1.5, sigma = 0.7;
    PhaseSpaceField F = ps::wigner(states::gaussian(g, x0, p0, sigma));
    ps::Marginals m = ps::marginals(F);

    double worst_x = 0.0;
    for (int j = 0; j < g.n; ++j) {
        double x = g.x(j);
        double exact = std::exp(-(x - x0) * (x - x0) / (2 * sigma * sigma)) /
                       std::sqrt(2 * PI * sigma * sigma);
        worst_x = std::max(worst_x, std::abs(m.position[j] - exact));
    }
    CHECK(worst_x < 1e-10);

    double sp = g.hbar / (2 * sigma);  // momentum-space standard deviation
    double worst_p = 0.0;
    for (int k = 0; k < g.n; ++k) {
        double p = g.p(k);
        double exact = std::exp(-(p - p0) * (p - p0) / (2 * sp * sp)) /
                       std::sqrt(2 * PI * sp * sp);
        worst_p = std::max(worst_p, std::abs(m.momentum[k] - exact));
    }
    CHECK(worst_p < 1e-10);

    PhaseSpaceField one(g);
    for (cplx& v : one.values) v = 1.0;
    CHECK(ps::expectation(F, one).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ps::expectation(F, coordinate_field(g, false)).real() ==
          doctest::Approx(x0).epsilon(1e-10));
    CHECK(ps::expectation(F, coordinate_field(g, true)).real() ==
          doctest::Approx(p0).epsilon(1e-10));
}

TEST_CASE("cross-wigner: diagonal case and overlap pairing") {
    GridSpec g(64, 16.0);
    WaveFunction psi = states::gaussian(g, 0.3, 0.5, 0.9);
    WaveFunction phi = states::ho_eigenstate(g, 2);

    PhaseSpaceField diag = ps::cross_wigner(psi, psi);
    PhaseSpaceField F = ps::wigner(psi);
    CHECK(max_abs_diff(diag, F) < 1e-12);

    // integral of W[psi, phi] is the overlap <psi|phi>
    PhaseSpaceField cross = ps::cross_wigner(psi, phi);
    cplx mass = 0.0;
    for (const cplx& v : cross.values) mass += v;
    mass *= g.dx() * g.dp();
    cplx expect = overlap(psi, phi);
    CHECK(std::abs(mass - expect) < 1e-12);
}

TEST_CASE("characteristic function of the oscillator ground state") {
    GridSpec g(64, 16.0);
    WaveFunction psi = states::gaussian(g, 0.0, 0.0, 1.0 / std::sqrt(2.0));
    CharacteristicField M = ps::characteristic_function(psi);
    double worst = 0.0;
    for (int m = 0; m <= 4; ++m)
        for (int l = g.n / 2 - 4; l <= g.n / 2 + 4; ++l) {
            double tau = g.tau(m), theta = g.theta(l);
            double exact = std::exp(-(tau * tau + theta * theta) / 4.0);
            worst = std::max(worst, std::abs(M.at(m, l) - exact));
        }
    CHECK(worst < 1e-12);
    CHECK(std::abs(M.at(0, g.n / 2) - cplx(1.0)) < 1e-13);  // normalization
}

TEST_CASE("characteristic function inverts back to the distribution") {
    GridSpec g(64, 16.0);
    WaveFunction psi = states::state_factory(
        "gaussian(x0=1,p0=-1,sigma=0.8) - 0.5*ho(n=1)", g);
    PhaseSpaceField direct = ps::wigner(psi);
    PhaseSpaceField via = ps::char_to_distribution(ps::characteristic_function(psi));
    CHECK(max_abs_diff(direct, via) < 1e-11);
}

TEST_CASE("negativity: gaussians are non-negative, cat states are not") {
    GridSpec g(128, 24.0);
    PhaseSpaceField Fg = ps::wigner(states::gaussian(g, 1.0, 0.5, 0.8));
    CHECK(ps::negativity(Fg).min_value > -1e-12);

    WaveFunction cat = states::state_factory(
        "gaussian(x0=3,sigma=0.7) + gaussian(x0=-3,sigma=0.7)", g);
    ps::Negativity neg = ps::negativity(ps::wigner(cat));
    CHECK(neg.min_value < -0.05);
    CHECK(std::abs(neg.x) < 0.5);  // interference fringes live at the midpoint
    CHECK(neg.negative_mass < -0.01);
}

TEST_CASE("purity and star idempotency split pure from mixed") {
    GridSpec g(64, 16.0);
    PhaseSpaceField F1 = ps::wigner(states::gaussian(g, 1.5, 0.0, 0.7));
    PhaseSpaceField F2 = ps::wigner(states::gaussian(g, -1.5, 0.0, 0.7));

    CHECK(ps::purity(F1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ps::purity_check(F1) < 1e-10);

    PhaseSpaceField mixed(g);
    for (size_t i = 0; i < mixed.values.size(); ++i)
        mixed.values[i] = 0.5 * (F1.values[i] + F2.values[i]);
    // equal mixture: purity (1 + |<u|v>|^2) / 2
    double cross = std::norm(overlap(states::gaussian(g, 1.5, 0.0, 0.7),
                                     states::gaussian(g, -1.5, 0.0, 0.7)));
    CHECK(ps::purity(mixed) ==
          doctest::Approx(0.5 * (1.0 + cross)).epsilon(1e-10));
    CHECK(ps::purity_check(mixed) > 0.1);

    PhaseSpaceField unnorm = F1;
    for (cplx& v : unnorm.values) v *= 2.0;
    CHECK_THROWS_AS(ps::purity_check(unnorm), Error);
}

TEST_CASE("density matrix from the distribution matches the direct outer product") {
    GridSpec g(64, 16.0);
    WaveFunction psi = states::state_factory(
        "gaussian(x0=0.5,p0=2,sigma=0.8) + (0-0.5i)*ho(n=1)", g);
    DensityMatrixField direct = ps::density_matrix(psi);
    DensityMatrixField via = ps::density_from_wigner(ps::wigner(psi));
    double worst = 0.0;
    for (size_t i = 0; i < direct.values.size(); ++i)
        worst = std::max(worst, std::abs(direct.values[i] - via.values[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("wavefunction recovery round trip") {
    GridSpec g(64, 16.0);

    // complex phase profile from nonzero momentum
    WaveFunction psi = states::gaussian(g, 0.5, 2.0, 0.8);
    WaveFunction rec = ps::recover_wavefunction(ps::wigner(psi));
    CHECK(std::abs(overlap(rec, psi)) == doctest::Approx(1.0).epsilon(1e-8));

    // nodal state: amplitude vanishes at the origin
    WaveFunction phi = states::ho_eigenstate(g, 1);
    WaveFunction rec2 = ps::recover_wavefunction(ps::wigner(phi));
    CHECK(std::abs(overlap(rec2, phi)) == doctest::Approx(1.0).epsilon(1e-8));

    // mixtures are rejected
    PhaseSpaceField F1 = ps::wigner(states::gaussian(g, 1.5, 0.0, 0.7));
    PhaseSpaceField F2 = ps::wigner(states::gaussian(g, -1.5, 0.0, 0.7));
    PhaseSpaceField mixed(g);
    for (size_t i = 0; i < mixed.values.size(); ++i)
        mixed.values[i] = 0.5 * (F1.values[i] + F2.values[i]);
    CHECK_THROWS_AS(ps::recover_wavefunction(mixed), Error);
}

TEST_CASE("state factory diagnostics") {
    GridSpec g(64, 16.0);
    CHECK_THROWS_AS(states::state_factory("", g), Error);
    CHECK_THROWS_AS(states::state_factory("gaussian(bogus=1)", g), Error);
    CHECK_THROWS_AS(states::state_factory("wibble(x0=1)", g), Error);
    CHECK_THROWS_AS(states::state_factory("gaussian(x0=1", g), Error);
    CHECK_THROWS_AS(states::state_factory("ho(n=1.5)", g), Error);

    // wider box so the n = 3 state has room to decay at the edges
    GridSpec gw(64, 20.0);
    WaveFunction psi = states::state_factory("ho(n=3,omega=1,m=1)", gw);
    WaveFunction direct = states::ho_eigenstate(gw, 3);
    CHECK(std::abs(overlap(psi, direct)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(states::boundary_decay_ok(psi));
}
