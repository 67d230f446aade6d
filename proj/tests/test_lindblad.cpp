#include <doctest.h>

#include <random>

#include "phonsim/analytic.hpp"
#include "phonsim/lindblad.hpp"

using namespace phonsim;

namespace {
SystemParams make(double xi, double u, double dl, double df) {
    SystemParams p;
    p.drive_amp = xi;
    p.nonlinearity_u = u;
    p.drive_detuning = dl;
    p.rotation_omega = std::abs(df) / p.chirality_mag;
    p.direction =
        df >= 0.0 ? DriveDirection::LeftPort : DriveDirection::RightPort;
    return p;
}

double mean_n(const Matrix& rho) {
    double m = 0.0;
    for (int k = 0; k < rho.rows(); ++k) m += k * rho(k, k).real();
    return m;
}
}  // namespace

TEST_CASE("Liouvillian assembly") {
    SUBCASE("pure decay relaxes to vacuum") {
        const Liouvillian liou =
            assemble_liouvillian(Matrix::Zero(2, 2), 1.0);
        const Matrix rho = steady_state(liou);
        CHECK(rho(0, 0).real() == doctest::Approx(1.0));
        CHECK(std::abs(rho(1, 1)) == doctest::Approx(0.0));
    }

    SUBCASE("vacuum projector is annihilated without drive") {
        const SystemParams p = make(0.0, 20.0, 5.0, 0.0);
        const Liouvillian liou =
            assemble_liouvillian(build_hamiltonian(p, 6), 1.0);
        Matrix vac = Matrix::Zero(6, 6);
        vac(0, 0) = 1.0;
        const Vector v = Eigen::Map<const Vector>(vac.data(), 36);
        CHECK((liou.matrix * v).norm() == doctest::Approx(0.0));
    }

    SUBCASE("trace functional annihilates L on random vectors") {
        const SystemParams p = make(0.4, 7.0, -3.0, 2.0);
        const int n = 8;
        const Liouvillian liou =
            assemble_liouvillian(build_hamiltonian(p, n), 1.0);
        std::mt19937 rng(5);
        std::normal_distribution<double> dist;
        for (int trial = 0; trial < 20; ++trial) {
            Vector v(n * n);
            for (int i = 0; i < n * n; ++i)
                v(i) = std::complex<double>(dist(rng), dist(rng));
            const Vector lv = liou.matrix * v;
            std::complex<double> tr = 0.0;
            for (int k = 0; k < n; ++k) tr += lv(k * n + k);
            CHECK(std::abs(tr) < 1e-10 * lv.norm());
        }
    }

    SUBCASE("spectrum in the closed left half-plane (small N)") {
        const SystemParams p = make(0.5, 3.0, 1.0, 0.0);
        const Liouvillian liou =
            assemble_liouvillian(build_hamiltonian(p, 4), 1.0);
        const Eigen::ComplexEigenSolver<Matrix> es(Matrix(liou.matrix));
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            CHECK(es.eigenvalues()(i).real() < 1e-10);
    }

    SUBCASE("non-Hermitian Hamiltonian is rejected") {
        Matrix h = Matrix::Zero(3, 3);
        h(0, 1) = std::complex<double>(0.0, 1.0);
        CHECK_THROWS_AS(assemble_liouvillian(h, 1.0), std::domain_error);
    }
}

TEST_CASE("steady state") {
    SUBCASE("weak-drive linear cavity occupation") {
        // exact coherent-state result <n> = (2 xi / gamma)^2
        const SystemParams p = make(0.1, 0.0, 0.0, 0.0);
        const Matrix rho3 = steady_state(
            assemble_liouvillian(build_hamiltonian(p, 3), 1.0));
        CHECK(mean_n(rho3) == doctest::Approx(0.04).epsilon(0.01));
        const Matrix rho10 = steady_state(
            assemble_liouvillian(build_hamiltonian(p, 10), 1.0));
        CHECK(mean_n(rho10) == doctest::Approx(0.04).epsilon(1e-6));
        // cross-check against the amplitude model
        CHECK(mean_n(rho10) ==
              doctest::Approx(std::norm(steady_amplitudes(p).c1))
                  .epsilon(0.01));
    }

    SUBCASE("density-matrix invariants and symmetrization stability") {
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const SystemParams p =
                make(0.05 + std::abs(dist(rng)) * 2.0,
                     std::abs(dist(rng)) * 40.0, dist(rng) * 40.0,
                     dist(rng) * 15.0);
            const int n = 15;
            const Liouvillian liou =
                assemble_liouvillian(build_hamiltonian(p, n), 1.0);
            const Matrix rho = steady_state(liou);
            CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);
            CHECK((rho - rho.adjoint()).norm() < 1e-10 * rho.norm());
            const Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
            CHECK(es.eigenvalues().minCoeff() > -1e-8);
        }
    }

    SUBCASE("weak-drive g2 matches the closed form") {
        const SystemParams p = make(0.01, 20.0, 0.0, 0.0);
        const Matrix rho = steady_state(
            assemble_liouvillian(build_hamiltonian(p, 8), 1.0));
        double p1 = rho(1, 1).real(), p2 = rho(2, 2).real();
        const double g2 = 2.0 * p2 / ((p1 + 2.0 * p2) * (p1 + 2.0 * p2));
        CHECK(g2 == doctest::Approx(1.0 / 1601.0).epsilon(0.05));
    }

    SUBCASE("detuning-shift covariance") {
        // H depends only on Delta_F - Delta_L, so a common shift is exact
        const SystemParams a = make(0.33, 20.0, 4.0, 10.0);
        const SystemParams b = make(0.33, 20.0, 4.0 + 7.5, 10.0 + 7.5);
        const Matrix ra = steady_state(
            assemble_liouvillian(build_hamiltonian(a, 12), 1.0));
        const Matrix rb = steady_state(
            assemble_liouvillian(build_hamiltonian(b, 12), 1.0));
        CHECK((ra - rb).norm() < 1e-12);
    }
}

TEST_CASE("oracle equivalence in the weak-drive regime") {
    // numerical vs closed-form g2/g3 across the detuning axis
    const double xi = 0.02;
    for (double dl = -40.0; dl <= 60.0; dl += 5.0) {
        const SystemParams p = make(xi, 20.0, dl, 0.0);
        const Matrix rho = steady_state(
            assemble_liouvillian(build_hamiltonian(p, 8), 1.0));
        std::vector<double> pop(8);
        double m = 0.0;
        for (int k = 0; k < 8; ++k) {
            pop[k] = rho(k, k).real();
            m += k * pop[k];
        }
        double g2 = (2.0 * pop[2] + 6.0 * pop[3]) / (m * m);
        double g3 = 6.0 * pop[3] / (m * m * m);
        CHECK(g2 == doctest::Approx(g2_analytic(p)).epsilon(0.05));
        CHECK(g3 == doctest::Approx(g3_analytic(p)).epsilon(0.05));
    }
}

TEST_CASE("time propagation") {
    // step size limited by the top anharmonic level, |E_max| ~ 2 U N^2
    const SystemParams p = make(0.2, 20.0, 0.0, 0.0);
    const Liouvillian liou =
        assemble_liouvillian(build_hamiltonian(p, 8), 1.0);
    const Matrix ss = steady_state(liou);

    SUBCASE("steady state is a fixed point") {
        const auto traj = evolve_state(liou, ss, 5.0, 5e-4);
        CHECK((traj.back() - ss).norm() < 1e-8);
    }

    SUBCASE("vacuum relaxes to the steady state with unit trace throughout") {
        Matrix vac = Matrix::Zero(8, 8);
        vac(0, 0) = 1.0;
        const auto traj = evolve_state(liou, vac, 50.0, 5e-4);
        for (const Matrix& rho : traj)
            CHECK(std::abs(rho.trace().real() - 1.0) < 1e-8);
        CHECK((traj.back() - ss).norm() < 1e-4);
    }

    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(evolve_state(liou, Matrix::Zero(5, 5), 1.0, 0.01),
                        std::invalid_argument);
    }
}

TEST_CASE("truncation convergence") {
    SUBCASE("moderate drive converges at the starting dimension") {
        const SystemParams p = make(0.33, 20.0, 0.0, 0.0);
        CHECK(converged_dimension(p) == 10);
    }

    SUBCASE("no drive converges immediately") {
        const SystemParams p = make(0.0, 20.0, 5.0, 0.0);
        CHECK(converged_dimension(p) == 10);
    }

    SUBCASE("strong drive at weak nonlinearity needs a larger space") {
        const SystemParams weak = make(0.33, 20.0, 20.0, 0.0);
        const SystemParams strong = make(5.0, 1.0, 5.0, 0.0);
        CHECK(converged_dimension(strong) > converged_dimension(weak));
    }

    SUBCASE("cap violation raises a truncation error") {
        // linear resonant cavity at strong drive: <n> far beyond the cap
        const SystemParams p = make(5.0, 0.0, 0.0, 0.0);
        CHECK_THROWS_AS(solve_converged(p, 10, 1e-8, 40), std::runtime_error);
    }

    SUBCASE("start dimension below 5 is rejected") {
        CHECK_THROWS_AS(solve_converged(make(0.1, 20.0, 0.0, 0.0), 4),
                        std::invalid_argument);
    }
}
