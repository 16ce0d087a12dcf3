// Acceptance gate: every criterion at its stated tolerance and time budget,
// one PASS/FAIL line each. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "edm_emu/edm_emu.hpp"
#include "edm_emu/harness/config.hpp"
#include "edm_emu/harness/scenarios.hpp"

using namespace edm_emu;

namespace {

struct Verdict {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail << " [violated: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s, const std::function<void(Verdict&)>& body)
{
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > budget_s) {
        v.ok = false;
        v.detail << " [runtime " << elapsed << " s exceeds " << budget_s << " s]";
    }
    std::printf("%s %s: %s |%s | %.3f s\n", v.ok ? "PASS" : "FAIL", id, title, v.detail.str().c_str(), elapsed);
    std::fflush(stdout);
    failures += v.ok ? 0 : 1;
}

harness::json scenario(const std::string& name)
{
    return harness::resolve_config(
        harness::load_config_file(std::string(EDM_EMU_SCENARIO_DIR) + "/" + name + ".json"), {});
}

bool within_decade(double x, double ref) { return x >= ref / 10.0 && x <= ref * 10.0; }

} // namespace

int main()
{
    criterion("AC1", "analytic vs numeric spectrum, 1000 log-uniform sets, rel < 1e-10", 5.0, [](Verdict& v) {
        std::mt19937_64 rng(20240601);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const DiracParams p = oracle::random_params(rng);
            const auto numeric = diagonalize(build_h1d(p)).values;
            const auto analytic = edm_spectrum(p).sorted();
            for (int k = 0; k < 4; ++k) {
                worst = std::max(worst, std::abs(numeric(k) - analytic[k]) / std::abs(analytic[k]));
            }
        }
        v.detail << " max rel dev " << worst;
        v.require(worst < 1e-10, "max rel dev < 1e-10");
    });

    criterion("AC2", "degeneracy laws, |splitting| < 1e-14", 1.0, [](Verdict& v) {
        DiracParams base;
        base.mass_energy = 1.0;
        base.c_sim = 1.0;
        base.edm = 0.3;
        base.mdm = 0.2;
        base.e_field = {0.8, 0.0, 0.0};
        base.momentum = {0.6, 0.0, 0.0};
        DiracParams massless = base;
        massless.mass_energy = 0.0;
        DiracParams no_edm = base;
        no_edm.edm = 0.0;
        DiracParams no_field = base;
        no_field.e_field = {0.0, 0.0, 0.0};
        const std::pair<const char*, DiracParams> cases[] = {{"m=0", massless}, {"d_a=0", no_edm}, {"E_x=0", no_field}};
        for (const auto& [name, p] : cases) {
            const double analytic = splitting_exact(p);
            const auto ev = diagonalize(build_h1d(p)).values;
            const double numeric = ev(3) - ev(2);
            v.detail << " " << name << ": " << analytic << " / numeric " << numeric;
            v.require(std::abs(analytic) < 1e-14, std::string(name) + " analytic");
            v.require(std::abs(numeric) < 1e-14, std::string(name) + " numeric");
        }
    });

    criterion("AC3", "Taylor regime, ratios <= 1e-3 on a 100-point grid, rel < 1e-5", 1.0, [](Verdict& v) {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                DiracParams p;
                p.mass_energy = 1.0;
                p.c_sim = 1.0;
                p.e_field = {1.0, 0.0, 0.0};
                p.edm = std::pow(10.0, -6.0 + 3.0 * i / 9.0);
                p.mdm = std::pow(10.0, -6.0 + 3.0 * j / 9.0);
                const double exact = splitting_exact(p);
                worst = std::max(worst, std::abs(exact - splitting_taylor(p)) / exact);
            }
        }
        v.detail << " max rel dev " << worst;
        v.require(worst < 1e-5, "max rel dev < 1e-5");
    });

    criterion("AC4", "eigenspinors, residual < 1e-10 and spin (+-1/2,0,0) within 1e-12", 1.0, [](Verdict& v) {
        std::mt19937_64 rng(777);
        double worst_res = 0.0;
        double worst_spin = 0.0;
        for (int i = 0; i < 100; ++i) {
            const DiracParams p = oracle::random_params(rng, 1e-3, 1e1, false);
            const Matrix4c h = build_h1d(p);
            for (const auto& pair : eigenspinors(p)) {
                worst_res = std::max(worst_res, (h * pair.spinor.vec() - pair.energy * pair.spinor.vec()).norm());
                const Vec3 s = spin_expectation(pair.spinor);
                const bool up = pair.branch == Branch::plus_up || pair.branch == Branch::minus_up;
                worst_spin = std::max({worst_spin, std::abs(s[0] - (up ? 0.5 : -0.5)), std::abs(s[1]), std::abs(s[2])});
            }
        }
        v.detail << " max residual " << worst_res << ", max spin dev " << worst_spin;
        v.require(worst_res < 1e-10, "residual < 1e-10");
        v.require(worst_spin < 1e-12, "spin dev < 1e-12");
    });

    criterion("AC5", "operator identity at n_max = 64 and 3D term mapping, < 1e-13", 1.0, [](Verdict& v) {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(0.05, 3.0);
        std::normal_distribution<double> g;
        double worst_1d = 0.0;
        double worst_3d = 0.0;
        bool all = true;
        for (int i = 0; i < 3; ++i) {
            IonParams ion;
            ion.eta = u(rng) / 10.0;
            ion.omega_tilde = u(rng);
            ion.detuning = u(rng);
            ion.omega1 = u(rng);
            ion.omega2 = u(rng);
            const FockConfig cfg{64, ion.delta_spread};
            worst_1d = std::max(worst_1d, max_abs(assemble_h1d_ion(ion, cfg) - lift_h1d(map_params(ion), cfg)));
            const MappingReport r = verify_mapping_3d(ion, {g(rng), g(rng), g(rng)}, {g(rng), g(rng), g(rng)});
            all = all && r.passed();
            for (const auto& row : r.rows) {
                worst_3d = std::max(worst_3d, row.deviation);
            }
        }
        v.detail << " 1D max dev " << worst_1d << ", 3D max dev " << worst_3d;
        v.require(worst_1d < 1e-13, "1D identity < 1e-13");
        v.require(all && worst_3d < 1e-13, "all term families < 1e-13");
    });

    criterion("AC6", "ion-layer precession within 2% of both formulas, n_max doubling within uncertainty", 60.0,
              [](Verdict& v) {
                  const auto out = harness::run_scenario(scenario("precession-ion"));
                  const auto& s = out.table.metadata()["summary"];
                  v.require(s["n_max"] == 64, "n_max = 64");
                  v.require(s["omega_extracted"].is_number(), "frequency extracted");
                  const double ion_err = s["relative_error_vs_ion_formula"].get<double>();
                  const double dirac_err = s["relative_error_vs_dirac"].get<double>();
                  const double delta = s["convergence_delta"].get<double>();
                  const double unc = s["omega_uncertainty"].get<double>();
                  v.detail << " omega " << s["omega_extracted"].get<double>() << ", vs ion formula " << ion_err
                           << ", vs Dirac " << dirac_err << ", doubling shift " << delta << " (uncertainty " << unc
                           << ")";
                  v.require(ion_err < 0.02, "within 2% of ion formula");
                  v.require(dirac_err < 0.02, "within 2% of Dirac omega");
                  v.require(delta < unc, "doubling n_max shift < uncertainty");
              });

    criterion("AC7", "closed-form vs 4x4 propagation, pointwise < 1e-8 over 10 periods", 5.0, [](Verdict& v) {
        std::mt19937_64 rng(4242);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            DiracParams p = i == 0 ? oracle::example_params() : oracle::random_params(rng, 1e-2, 1e1, false);
            const cplx b_up = std::polar(std::sqrt(0.3), 0.4);
            const cplx b_down = std::polar(std::sqrt(0.7), -1.1);
            const PositiveEnergySuperposition st(b_up, b_down, p);
            const SpinPrecession prec(st);
            const auto times = linear_grid(0.0, 10.0 * 2.0 * kPi / prec.omega(), 641);
            const auto numeric = spin_series(st.initial_spinor(), build_h1d(p), times);
            for (std::size_t k = 0; k < times.size(); ++k) {
                const Vec3 a = prec.spin(times[k]);
                for (int j = 0; j < 3; ++j) {
                    worst = std::max(worst, std::abs(a[j] - numeric.spin[k][j]));
                }
            }
        }
        v.detail << " max pointwise dev " << worst;
        v.require(worst < 1e-8, "pointwise < 1e-8");
    });

    criterion("AC8", "neutron estimates within a factor of 10, ion omega in [10, 1e7]", 1.0, [](Verdict& v) {
        const auto out = harness::run_scenario(scenario("estimates"));
        const auto split = out.table.numbers("splitting_ev");
        const auto omega = out.table.numbers("omega_rad_s");
        v.detail << " upper: dE " << split[0] << " eV, omega " << omega[0] << "; SM: omega " << omega[1]
                 << "; ion: omega " << omega[2];
        v.require(within_decade(split[0], 1e-19), "upper-limit dE ~ 1e-19 eV");
        v.require(within_decade(omega[0], 1e-4), "upper-limit omega ~ 1e-4");
        v.require(within_decade(omega[1], 1e-10), "SM omega ~ 1e-10");
        v.require(omega[2] >= 10.0 && omega[2] <= 1e7, "ion omega in [10, 1e7]");
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
