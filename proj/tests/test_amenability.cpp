#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "fusionwalk/amenability.hpp"
#include "fusionwalk/families.hpp"
#include "fusionwalk/gamma.hpp"
#include "testutil.hpp"

using namespace fusionwalk;

TEST_CASE("norm certificates on exact cases") {
    SUBCASE("unit object has norm one") {
        const FusionRing v4 = build(FamilySpec::verlinde(4));
        const auto cert = gamma_norm_lower(v4, FormalSum::basis(v4.unit()),
                                           complete_window(v4, FormalSum::basis(v4.unit())));
        CHECK(cert.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("level-3 fundamental reaches the Perron root of the path") {
        const FusionRing v3 = build(FamilySpec::verlinde(3));
        const FormalSum fund = FormalSum::basis(1);
        const auto cert =
            gamma_norm_lower(v3, fund, complete_window(v3, fund), 1e-14, 200000);
        CHECK(cert.lower_bound == doctest::Approx(2.0 * std::cos(M_PI / 5.0)).epsilon(1e-9));

        // independent route: dense eigenvalue of Gamma^T Gamma
        const Eigen::MatrixXd gamma(gamma_matrix(v3, fund).matrix);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.transpose() * gamma);
        CHECK(cert.lower_bound ==
              doctest::Approx(std::sqrt(es.eigenvalues().maxCoeff())).epsilon(1e-10));
    }
    SUBCASE("empty windows are rejected") {
        const FusionRing v2 = build(FamilySpec::verlinde(2));
        CHECK_THROWS_AS(gamma_norm_lower(v2, FormalSum::basis(1), {}), EmptyWindow);
    }
    SUBCASE("incomplete columns are rejected") {
        const FusionRing su2 = build(FamilySpec::su2(6));
        std::vector<Index> window{6};  // products with the fundamental leave the window
        CHECK_THROWS_AS(gamma_norm_lower(su2, FormalSum::basis(1), window), TruncationOverflow);
    }
}

TEST_CASE("window bounds grow monotonically and stay sound") {
    const FusionRing su2 = build(FamilySpec::su2(512));
    const FormalSum fund = FormalSum::basis(1);
    const DimensionFunction d = su2_classical_dims(su2);
    const std::vector<Index> full = complete_window(su2, fund);

    double prev = 0.0;
    for (int size : {16, 32, 64, 128, 256}) {
        const std::vector<Index> window(full.begin(), full.begin() + size);
        const auto cert = gamma_norm_lower(su2, fund, window, 1e-12, 100000);
        CHECK(cert.lower_bound >= prev - 1e-12);
        CHECK(cert.lower_bound <= d.of(fund) + 1e-9);
        prev = cert.lower_bound;
    }
    CHECK(prev > 1.99);
}

TEST_CASE("lower bounds never exceed a valid dimension value") {
    auto g = testutil::rng(61);

    SUBCASE("random objects on finite built-ins under Perron dimensions") {
        for (const auto& [name, ring] : builtin_finite_rings()) {
            CAPTURE(name);
            const DimensionFunction d = fp_dimensions(ring);
            for (int trial = 0; trial < 5; ++trial) {
                FormalSum object;
                for (Index s = 0; s < ring.size(); ++s) object.add(s, static_cast<Count>(g() % 3));
                if (object.empty()) object.add(0, 1);
                const auto cert = gamma_norm_lower(ring, object, complete_window(ring, object),
                                                   1e-12, 100000);
                CHECK(cert.lower_bound <= d.of(object) + 1e-8);
            }
        }
    }
    SUBCASE("random objects and windows on a truncated ring") {
        const FusionRing su2 = build(FamilySpec::su2(64));
        for (const DimensionFunction& d :
             {su2_classical_dims(su2), su2_quantum_dims(su2, 1.3)}) {
            for (int trial = 0; trial < 5; ++trial) {
                FormalSum object;
                for (int terms = 0; terms < 3; ++terms)
                    object.add(static_cast<Index>(g() % 9), static_cast<Count>(1 + g() % 2));
                const std::vector<Index> full = complete_window(su2, object);
                const std::size_t size = 4 + g() % (full.size() - 4);
                const std::vector<Index> window(full.begin(),
                                                full.begin() + static_cast<long>(size));
                const auto cert = gamma_norm_lower(su2, object, window, 1e-10, 50000);
                CHECK(cert.lower_bound <= d.of(object) + 1e-8);
            }
        }
    }
}

TEST_CASE("witnesses re-verify independently") {
    const FusionRing v5 = build(FamilySpec::verlinde(5));
    const FormalSum obj = FormalSum::basis(2);
    const auto cert = gamma_norm_lower(v5, obj, complete_window(v5, obj), 1e-12, 100000);
    const double rayleigh = certificate_rayleigh(v5, cert);
    CHECK(std::sqrt(rayleigh) ==
          doctest::Approx(cert.lower_bound).epsilon(std::max(1e-12, cert.residual)));
}

TEST_CASE("amenability verdicts") {
    SUBCASE("Perron dimensions are amenable on every finite built-in") {
        for (const auto& [name, ring] : builtin_finite_rings()) {
            CAPTURE(name);
            const DimensionFunction d = fp_dimensions(ring);
            for (Index s = 0; s < ring.size(); ++s) {
                const Verdict v = amenability_verdict(ring, d, FormalSum::basis(s));
                CHECK(v.kind == VerdictKind::AmenableEvidence);
            }
        }
    }
    SUBCASE("classical dimensions on the representation ring") {
        const FusionRing su2 = build(FamilySpec::su2(1024));
        const Verdict v =
            amenability_verdict(su2, su2_classical_dims(su2), FormalSum::basis(1));
        CHECK(v.kind == VerdictKind::AmenableEvidence);
    }
    SUBCASE("deformed dimensions leave a genuine gap") {
        const double q = 1.5;
        const FusionRing su2 = build(FamilySpec::su2(1600));
        const Verdict v =
            amenability_verdict(su2, su2_quantum_dims(su2, q), FormalSum::basis(1));
        CHECK(v.kind == VerdictKind::NonamenableCertificate);
        CHECK(v.gap == doctest::Approx(q + 1.0 / q - 2.0).epsilon(2e-3));
        CHECK(v.movement < 1e-4);
    }
}

TEST_CASE("free group benchmark") {
    SUBCASE("radial reduction agrees with the explicit ball") {
        // explicit rank-2 ball of radius 5, columns on the radius-4 ball
        const FusionRing fg = build(FamilySpec::free_group(2, 5));
        FormalSum gens;
        for (const char* l : {"a", "A", "b", "B"}) gens.add(*fg.find(l), 1);
        const auto explicit_cert =
            gamma_norm_lower(fg, gens, complete_window(fg, gens), 1e-13, 200000);

        // independent oracle: dense eigenvalue of the spherical reduction at L = 4
        const int L = 4;
        const double c0 = 4.0, c = 3.0;
        Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(L + 1, L + 1);
        for (int k = 0; k <= L; ++k) {
            chain(k, k) = c0 + (k == 0 ? 0.0 : (k == 1 ? c0 - 1.0 : c - 1.0));
            if (k + 2 <= L) {
                const double coupling = (k == 0) ? std::sqrt(c0 * c) : c;
                chain(k, k + 2) = chain(k + 2, k) = coupling;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chain);
        CHECK(explicit_cert.lower_bound ==
              doctest::Approx(std::sqrt(es.eigenvalues().maxCoeff())).epsilon(1e-9));
    }
    SUBCASE("rank 2 reproduces the classical spectral radius") {
        const auto cert = free_group_benchmark(2, 12);
        CHECK(cert.lower_bound >= 3.45);
        CHECK(cert.lower_bound <= 2.0 * std::sqrt(3.0) + 1e-9);
        CHECK(cert.radial);
        // gap against the dimension of the generator sum
        CHECK(4.0 - cert.lower_bound == doctest::Approx(4.0 - 2.0 * std::sqrt(3.0)).epsilon(5e-4));
        // the radial witness re-verifies
        const double rayleigh = radial_certificate_rayleigh(2, cert);
        CHECK(std::sqrt(rayleigh) ==
              doctest::Approx(cert.lower_bound).epsilon(std::max(1e-12, cert.residual)));
    }
    SUBCASE("rank 1 closes on the lattice norm") {
        const auto cert = free_group_benchmark(1, 16);
        CHECK(cert.lower_bound == doctest::Approx(2.0).epsilon(1e-3));
        CHECK(cert.lower_bound <= 2.0 + 1e-9);
    }
    SUBCASE("radius below four is rejected") {
        CHECK_THROWS_AS(free_group_benchmark(2, 3), InvalidSpec);
    }
}

TEST_CASE("weak amenability probe") {
    SUBCASE("finite rings average out") {
        const FusionRing v2 = build(FamilySpec::verlinde(2));
        const Measure mu = Measure::uniform({0, 1});
        const auto report =
            weak_amenability_probe(v2, fp_dimensions(v2), mu, {8, 64, 256});
        REQUIRE(report.rows.size() >= 3);
        double first = -1.0, last = -1.0;
        for (const auto& row : report.rows) {
            if (row.generator != 1) continue;
            if (row.horizon == 8) first = row.difference;
            if (row.horizon == 256) last = row.difference;
        }
        CHECK(last < first);
        CHECK(last < 1e-2);
    }
    SUBCASE("lattice averages decay toward invariance") {
        const FusionRing line = build(FamilySpec::lattice(1, 20));
        const Measure mu = Measure::uniform({*line.find("1"), *line.find("-1")});
        const auto report = weak_amenability_probe(
            line, DimensionFunction::constant(line.size()), mu, {4, 8, 16}, {line.unit()},
            {*line.find("1")});
        REQUIRE(report.rows.size() == 3);
        CHECK(report.rows[0].difference > report.rows[1].difference);
        CHECK(report.rows[1].difference > report.rows[2].difference);
        CHECK(report.rows[2].difference < 0.06);
    }
    SUBCASE("free group differences stay off the floor at desk horizons") {
        const FusionRing fg = build(FamilySpec::free_group(2, 10));
        std::vector<Index> gens;
        for (const char* l : {"a", "A", "b", "B"}) gens.push_back(*fg.find(l));
        const auto report =
            weak_amenability_probe(fg, DimensionFunction::constant(fg.size()),
                                   Measure::uniform(gens), {4, 8}, {fg.unit()}, {gens[0]});
        REQUIRE(report.rows.size() == 2);
        CHECK(report.rows[0].difference > 0.15);  // ~0.22 by direct evaluation
        CHECK(report.rows[1].difference > 0.08);  // ~0.12 by direct evaluation
    }
    SUBCASE("horizons past the window overflow") {
        const FusionRing fg = build(FamilySpec::free_group(2, 4));
        std::vector<Index> gens;
        for (const char* l : {"a", "A", "b", "B"}) gens.push_back(*fg.find(l));
        CHECK_THROWS_AS(weak_amenability_probe(fg, DimensionFunction::constant(fg.size()),
                                               Measure::uniform(gens), {12}),
                        TruncationOverflow);
    }
}
