// End-to-end acceptance run: sixteen criteria, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include "moyal/dynamics.hpp"
#include "moyal/fft.hpp"
#include "moyal/parser.hpp"
#include "moyal/phasespace.hpp"
#include "moyal/states.hpp"
#include "moyal/symcalc.hpp"
#include "moyal/verify.hpp"
#include "moyal/weyl.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

using namespace moyal;
using dynamics::EvolutionConfig;
using dynamics::HamiltonianSpec;
using symcalc::CRational;
using symcalc::PolySymbol;
using symcalc::Rational;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, double measured) {
    std::printf("%s  criterion %2d: %s  (measured %.3g)\n",
                ok ? "PASS" : "FAIL", id, what, measured);
    if (!ok) ++failures;
}

PolySymbol random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> expo(0, 2);
    PolySymbol out;
    for (int t = 0; t < 4; ++t) {
        int c = coef(rng);
        if (c == 0) continue;
        out.add_term({unsigned(expo(rng)), unsigned(expo(rng)), 0},
                     CRational(Rational(c)));
    }
    return out;
}

double rel_l2(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return std::sqrt(num / den);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

const std::vector<std::string>& corpus() {
    static const std::vector<std::string> c = {
        "gaussian(x0=0,p0=0,sigma=0.9)",
        "gaussian(x0=1,p0=0,sigma=0.7071067811865476)",
        "gaussian(x0=-2,p0=1,sigma=0.7)",
        "gaussian(x0=0,p0=3,sigma=0.6)",
        "ho(n=0)",
        "ho(n=1)",
        "ho(n=2)",
        "ho(n=5)",
        "ho(n=0)+ho(n=1)",
        "0.8*gaussian(x0=1,p0=1.5,sigma=0.8)+(0.3+0.4i)*ho(n=2)",
        "gaussian(x0=2,p0=0,sigma=0.6)+gaussian(x0=-2,p0=0,sigma=0.6)",
        "gaussian(x0=1.5,p0=-1,sigma=0.75)-0.5*gaussian(x0=-1.5,p0=1,sigma=0.75)",
    };
    return c;
}

}  // namespace

int main() {
    const double pi = GridSpec::pi();
    GridSpec g(256, 20.0);
    std::mt19937 rng(20250901);

    {  // 1: canonical commutation, exact
        bool ok = symcalc::star(PolySymbol::x(), PolySymbol::p()) -
                      symcalc::star(PolySymbol::p(), PolySymbol::x()) ==
                  PolySymbol::i() * PolySymbol::hbar();
        report(1, "star(x,p)-star(p,x) = i*hbar exactly", ok, ok ? 0 : 1);
    }

    {  // 2: classical-limit laws on random pairs, exact
        bool ok = true;
        for (int t = 0; t < 100; ++t) {
            PolySymbol a = random_poly(rng), b = random_poly(rng);
            ok &= symcalc::truncate_order(symcalc::moyal_bracket(a, b), 0) ==
                  symcalc::poisson_bracket(a, b);
            ok &= symcalc::truncate_order(symcalc::baker_bracket(a, b), 0) ==
                  a * b;
        }
        report(2, "bracket classical limits on 100 random pairs", ok,
               ok ? 0 : 1);
    }

    {  // 3: symbolic associativity, exact
        bool ok = true;
        for (int t = 0; t < 50; ++t) {
            PolySymbol a = random_poly(rng), b = random_poly(rng),
                       c = random_poly(rng);
            ok &= symcalc::star(symcalc::star(a, b), c) ==
                  symcalc::star(a, symcalc::star(b, c));
        }
        report(3, "star associativity on 50 random triples", ok, ok ? 0 : 1);
    }

    {  // 4: Wigner closed forms at the origin
        double e0 = std::abs(phasespace::wigner(states::ho_eigenstate(g, 0))
                                 .at(g.n / 2, g.n / 2)
                                 .real() -
                             1.0 / pi);
        double e1 = std::abs(phasespace::wigner(states::ho_eigenstate(g, 1))
                                 .at(g.n / 2, g.n / 2)
                                 .real() +
                             1.0 / pi);
        double m = std::max(e0, e1);
        report(4, "ground/first-excited origin values +-1/pi", m <= 1e-6, m);
    }

    double marg_worst = 0.0, mass_worst = 0.0, expect_worst = 0.0,
           kernel_worst = 0.0, idem_worst = 0.0, recover_worst = 0.0;
    HamiltonianSpec harm = HamiltonianSpec::harmonic();
    PhaseSpaceField Hs = dynamics::hamiltonian_symbol(harm, g);
    for (const std::string& desc : corpus()) {
        WaveFunction psi = states::state_factory(desc, g);
        PhaseSpaceField F = phasespace::wigner(psi);
        auto mg = phasespace::marginals(F);
        double mass = 0.0;
        for (int j = 0; j < g.n; ++j) {
            marg_worst = std::max(
                marg_worst,
                std::abs(mg.position[j] - std::norm(psi.values[j])));
            mass += mg.position[j] * g.dx();
        }
        mass_worst = std::max(mass_worst, std::abs(mass - 1.0));

        {  // expectation equivalence against wavefunction-side values
            double ox = 0.0, ox2 = 0.0;
            for (int j = 0; j < g.n; ++j) {
                double w = std::norm(psi.values[j]) * g.dx();
                ox += w * g.x(j);
                ox2 += w * g.x(j) * g.x(j);
            }
            std::vector<cplx> hat = psi.values;
            fft::forward(hat);
            double op = 0.0, op2 = 0.0;
            for (int l = 0; l < g.n; ++l) {
                int ls = l < g.n / 2 ? l : l - g.n;
                double pl = g.hbar * 2.0 * pi * ls / g.length;
                op += std::norm(hat[l]) * pl;
                op2 += std::norm(hat[l]) * pl * pl;
            }
            op *= g.dx() / g.n;
            op2 *= g.dx() / g.n;
            double oh = dynamics::energy_expectation(psi, harm);

            PhaseSpaceField xf(g), pf(g), x2f(g), p2f(g);
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k) {
                    xf.at(j, k) = g.x(j);
                    pf.at(j, k) = g.p(k);
                    x2f.at(j, k) = g.x(j) * g.x(j);
                    p2f.at(j, k) = g.p(k) * g.p(k);
                }
            auto relerr = [](double a, double b) {
                return std::abs(a - b) / std::max(1.0, std::abs(b));
            };
            expect_worst = std::max(
                {expect_worst,
                 relerr(phasespace::expectation(F, xf).real(), ox),
                 relerr(phasespace::expectation(F, pf).real(), op),
                 relerr(phasespace::expectation(F, x2f).real(), ox2),
                 relerr(phasespace::expectation(F, p2f).real(), op2),
                 relerr(phasespace::expectation(F, Hs).real(), oh)});
        }

        {  // density-operator kernel via quantization
            DensityMatrixField rho = phasespace::density_from_wigner(F);
            for (int a = 0; a < g.n; ++a)
                for (int b = 0; b < g.n; ++b)
                    kernel_worst = std::max(
                        kernel_worst,
                        std::abs(rho.at(a, b) - psi.values[a] *
                                                    std::conj(psi.values[b])));
        }

        idem_worst = std::max(idem_worst, phasespace::purity_check(F));

        {  // recovery fidelity
            WaveFunction r = phasespace::recover_wavefunction(F);
            cplx ov = 0.0;
            for (int j = 0; j < g.n; ++j)
                ov += std::conj(psi.values[j]) * r.values[j];
            recover_worst =
                std::max(recover_worst, 1.0 - std::abs(ov) * g.dx());
        }
    }
    report(5, "marginal law and unit mass over the 12-state corpus",
           marg_worst <= 1e-8 && mass_worst <= 1e-8,
           std::max(marg_worst, mass_worst));
    report(6, "phase-space expectations of x, p, x^2, p^2, H match the oracle",
           expect_worst <= 1e-6, expect_worst);
    report(7, "quantized 2*pi*hbar*F reproduces the psi psi* kernel",
           kernel_worst <= 1e-8, kernel_worst);
    {
        PhaseSpaceField F0 = phasespace::wigner(states::ho_eigenstate(g, 0));
        PhaseSpaceField F1 = phasespace::wigner(states::ho_eigenstate(g, 1));
        PhaseSpaceField Fm(g);
        for (size_t i = 0; i < Fm.values.size(); ++i)
            Fm.values[i] = 0.5 * (F0.values[i] + F1.values[i]);
        double mixed = std::abs(phasespace::purity(Fm) - 0.5);
        report(8, "idempotency (2*pi*hbar)F*F = F and mixed purity 1/2",
               idem_worst <= 1e-6 && mixed <= 1e-6,
               std::max(idem_worst, mixed));
    }
    report(9, "wavefunction recovery fidelity >= 1 - 1e-5 on the corpus",
           recover_worst <= 1e-5, recover_worst);

    {  // 10: intertwining at T=2 across potentials and states
        EvolutionConfig cfg;
        cfg.dt = 1e-3;
        cfg.steps = 2000;
        cfg.record_every = 2000;
        std::vector<HamiltonianSpec> hams = {
            harm,
            HamiltonianSpec::from_coefficients({0, 0, 0, 0, 0.25}),
            HamiltonianSpec::from_coefficients({0, 0, -1.0, 0, 0.25}),
        };
        std::vector<std::string> states_ = {
            "gaussian(x0=1,p0=0,sigma=0.7071067811865476)",
            "gaussian(x0=2,p0=0,sigma=0.6)+gaussian(x0=-2,p0=0,sigma=0.6)",
        };
        double worst = 0.0;
        for (const HamiltonianSpec& H : hams)
            for (const std::string& desc : states_) {
                WaveFunction psi = states::state_factory(desc, g);
                auto o = dynamics::schrodinger_evolve(psi, H, cfg);
                auto f = dynamics::moyal_evolve(phasespace::wigner(psi), H,
                                                cfg);
                worst = std::max(
                    worst, rel_l2(f.back(), phasespace::wigner(o.back())));
            }
        report(10, "Weyl intertwining at T=2 for 3 potentials x 2 states",
               worst <= 1e-6, worst);
    }

    {  // 11: harmonic periodicity and the classical centroid
        GridSpec gs(64, 16.0);
        const int steps = 12800;
        EvolutionConfig cfg;
        cfg.dt = 2.0 * pi / steps;
        cfg.steps = steps;
        cfg.record_every = steps / 8;
        PhaseSpaceField F0 = phasespace::wigner(
            states::gaussian(gs, 1.0, 0.0, 1.0 / std::sqrt(2.0)));
        auto fs = dynamics::moyal_evolve(F0, harm, cfg);
        double period_err = rel_l2(fs.back(), F0);
        PhaseSpaceField xf(gs), pf(gs);
        for (int j = 0; j < gs.n; ++j)
            for (int k = 0; k < gs.n; ++k) {
                xf.at(j, k) = gs.x(j);
                pf.at(j, k) = gs.p(k);
            }
        double orbit_err = 0.0;
        for (const auto& F : fs) {
            orbit_err = std::max(
                orbit_err, std::abs(phasespace::expectation(F, xf).real() -
                                    std::cos(F.time)));
            orbit_err = std::max(
                orbit_err, std::abs(phasespace::expectation(F, pf).real() +
                                    std::sin(F.time)));
        }
        report(11, "harmonic period closure and classical centroid orbit",
               period_err <= 1e-6 && orbit_err <= 1e-6,
               std::max(period_err, orbit_err));
    }

    {  // 12: hbar structure of the quartic dynamics
        HamiltonianSpec quart =
            HamiltonianSpec::from_coefficients({0, 0, 0, 0, 0.25});
        EvolutionConfig cfg;
        cfg.dt = 1e-3;
        cfg.steps = 2000;
        cfg.record_every = 2000;
        auto gap_for = [&](const GridSpec& gg, const WaveFunction& psi0) {
            PhaseSpaceField F0 = phasespace::wigner(psi0);
            auto q = dynamics::moyal_evolve(F0, quart, cfg);
            auto c = dynamics::classical_liouville_evolve(F0, quart, cfg);
            double num = 0.0, den = 0.0;
            for (size_t i = 0; i < F0.values.size(); ++i) {
                num += std::norm(q.back().values[i] - c.back().values[i]);
                den += std::norm(F0.values[i]);
            }
            return std::sqrt(num / den);
        };
        GridSpec g1(128, 20.0);
        double cat_gap = gap_for(
            g1, states::state_factory(
                    "gaussian(x0=2,p0=0,sigma=0.6)+gaussian(x0=-2,p0=0,sigma=0.6)",
                    g1));
        std::vector<double> gaps;
        for (double hbar : {1.0, 0.5, 0.25}) {
            GridSpec gh(128, 20.0, hbar);
            gaps.push_back(gap_for(
                gh, states::gaussian(gh, 1.0, 0.0, std::sqrt(hbar / 2.0))));
        }
        bool ok = cat_gap > 0.05 && gaps[1] < gaps[0] && gaps[2] < gaps[1];
        report(12, "quartic quantum-classical gap > 0.05, shrinking with hbar",
               ok, cat_gap);
    }

    {  // 13: eigen-energy laws of the Baker bracket
        double worst = 0.0;
        for (int n = 0; n <= 5; ++n) {
            PhaseSpaceField F =
                phasespace::wigner(states::ho_eigenstate(g, n));
            PhaseSpaceField bb = dynamics::baker_with_hamiltonian(harm, F);
            double E = states::ho_energy(g, n);
            double num = 0.0, den = 0.0;
            for (size_t i = 0; i < F.values.size(); ++i) {
                num += std::norm(bb.values[i] - E * F.values[i]);
                den += std::norm(F.values[i]);
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        worst = std::max(worst, dynamics::cross_energy_check(
                                    states::ho_eigenstate(g, 0),
                                    states::ho_energy(g, 0),
                                    states::ho_eigenstate(g, 1),
                                    states::ho_energy(g, 1), harm));
        worst = std::max(worst, dynamics::cross_energy_check(
                                    states::ho_eigenstate(g, 0),
                                    states::ho_energy(g, 0),
                                    states::ho_eigenstate(g, 2),
                                    states::ho_energy(g, 2), harm));
        report(13, "Baker bracket energy laws for eigen and cross fields",
               worst <= 1e-6, worst);
    }

    {  // 14: quantum Hamilton-Jacobi residuals and the sign tripwire
        EvolutionConfig cfg;
        cfg.dt = 2.5e-4;
        cfg.steps = 1;
        cfg.record_every = 1;
        WaveFunction e0 = states::ho_eigenstate(g, 0);
        auto p0 = dynamics::schrodinger_evolve(e0, harm, cfg);
        double stat = max_abs(dynamics::qhj_residual(e0, p0.back(), harm));
        double trip =
            max_abs(dynamics::qhj_residual(e0, p0.back(), harm, -1.0));

        double coh_worst = 0.0;
        WaveFunction cur = states::gaussian(g, 1.0, 0.0, 1.0 / std::sqrt(2.0));
        EvolutionConfig skip;
        skip.dt = cfg.dt;
        skip.steps = 3142;
        skip.record_every = 3142;
        for (int block = 0; block < 8; ++block) {
            auto pr = dynamics::schrodinger_evolve(cur, harm, cfg);
            coh_worst = std::max(
                coh_worst,
                max_abs(dynamics::qhj_residual(cur, pr.back(), harm)));
            cur = dynamics::schrodinger_evolve(cur, harm, skip).back();
        }
        bool ok = stat <= 1e-6 && coh_worst <= 1e-4 && trip > 0.1;
        report(14, "QHJ residuals (stationary, coherent period) + tripwire",
               ok, std::max(stat, coh_worst));
    }

    {  // 15: displacement algebra
        weyl::DisplacementLabel s1{1.0, 0.0}, s2{0.0, 1.0};
        weyl::Composition c = weyl::compose_displacements(s1, s2, 1.0);
        double phase_err =
            std::abs(c.phase - std::exp(cplx(0.0, -0.5))) +
            std::abs(weyl::exchange_phase(s1, s2, 1.0) -
                     std::exp(cplx(0.0, -1.0)));
        GridSpec gd(64, 16.0);
        weyl::DisplacementLabel t1{3.0 * gd.dx() / gd.hbar,
                                   2.0 * 2.0 * pi / gd.length};
        weyl::DisplacementLabel t2{-2.0 * gd.dx() / gd.hbar,
                                   3.0 * 2.0 * pi / gd.length};
        weyl::OperatorKernel prod =
            weyl::kernel_product(weyl::displacement_kernel(gd, t2),
                                 weyl::displacement_kernel(gd, t1));
        weyl::Composition cc = weyl::compose_displacements(t1, t2, gd.hbar);
        weyl::OperatorKernel ref = weyl::displacement_kernel(gd, cc.label);
        double grid_err = 0.0;
        for (size_t i = 0; i < prod.values.size(); ++i)
            grid_err = std::max(
                grid_err, std::abs(prod.values[i] - cc.phase * ref.values[i]));
        report(15, "displacement composition/exchange phases and grid match",
               phase_err <= 1e-12 && grid_err <= 1e-8,
               std::max(phase_err, grid_err));
    }

    {  // 16: full verification front door
        auto t0 = std::chrono::steady_clock::now();
#ifdef MOYAL_CLI_PATH
        std::string cmd = std::string(MOYAL_CLI_PATH) +
                          " verify --suite all --report acceptance_verify.json"
                          " > acceptance_verify.log 2>&1";
        int rc = std::system(cmd.c_str());
#else
        int rc = -1;
#endif
        double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        report(16, "CLI verify --suite all exits 0 in under 5 minutes",
               rc == 0 && elapsed < 300.0, elapsed);
    }

    std::printf("%d of 16 criteria passed\n", 16 - failures);
    return failures == 0 ? 0 : 1;
}
