#include <doctest.h>

#include <cmath>

#include "mcboost/potential.hpp"
#include "mcboost/rng.hpp"

using namespace mcboost;

namespace {

// Independent oracle: full enumeration over all k^i draw sequences.
double brute_force_potential(int r, int i, const Eigen::VectorXi& s, double gamma) {
    const int k = static_cast<int>(s.size());
    if (i == 0) return zero_one_loss(r, s);
    const double pf = (1.0 - gamma) / k + gamma;
    const double po = (1.0 - gamma) / k;
    std::vector<int> seq(i, 0);
    double total = 0.0;
    while (true) {
        Eigen::VectorXi v = s;
        double p = 1.0;
        for (int d = 0; d < i; ++d) {
            v[seq[d]] += 1;
            p *= seq[d] == r ? pf : po;
        }
        total += p * zero_one_loss(r, v);
        int pos = 0;
        while (pos < i && ++seq[pos] == k) {
            seq[pos] = 0;
            ++pos;
        }
        if (pos == i) break;
    }
    return total;
}

PotentialQuery make_query(int r, int i, const Eigen::VectorXi& s, double gamma) {
    PotentialQuery q;
    q.true_label = r;
    q.remaining = i;
    q.votes = s;
    q.gamma = gamma;
    return q;
}

}  // namespace

TEST_CASE("zero-one loss counts ties as losses") {
    Eigen::VectorXi s(3);
    s << 0, 0, 0;
    CHECK(zero_one_loss(0, s) == 1);
    s << 2, 1, 0;
    CHECK(zero_one_loss(0, s) == 0);
    s << 1, 1, 0;
    CHECK(zero_one_loss(1, s) == 1);
}

TEST_CASE("potential base cases and hand-derived values") {
    for (int k = 2; k <= 5; ++k) {
        PotentialTable table(k, 0.2);
        CHECK(potential_exact(make_query(0, 0, Eigen::VectorXi::Zero(k), 0.2), table) == 1.0);
    }
    {
        PotentialTable table(3, 0.1);
        CHECK(potential_exact(make_query(0, 1, Eigen::VectorXi::Zero(3), 0.1), table) ==
              doctest::Approx(0.6).epsilon(1e-12));
    }
    {
        PotentialTable table(2, 0.2);
        CHECK(potential_exact(make_query(0, 3, Eigen::VectorXi::Zero(2), 0.2), table) ==
              doctest::Approx(0.352).epsilon(1e-12));
    }
}

TEST_CASE("exact potentials agree with brute-force enumeration") {
    Rng rng(2024);
    for (int rep = 0; rep < 150; ++rep) {
        const int k = 2 + rng.uniform_int(3);
        const double gamma = 0.49 * rng.uniform01();
        const int i = rng.uniform_int(6);
        Eigen::VectorXi s(k);
        for (int j = 0; j < k; ++j) s[j] = rng.uniform_int(4);
        const int r = rng.uniform_int(k);

        PotentialTable table(k, gamma);
        DensePotentialTable dense(k, gamma, i);
        const auto q = make_query(r, i, s, gamma);
        const double want = brute_force_potential(r, i, s, gamma);
        CHECK(std::abs(potential_exact(q, table) - want) <= 1e-12);
        CHECK(std::abs(dense.value(q) - want) <= 1e-12);
        CHECK(std::abs(potential_multinomial_sum(q) - want) <= 1e-12);
    }
}

TEST_CASE("recurrence holds on randomized queries") {
    Rng rng(555);
    for (int rep = 0; rep < 250; ++rep) {
        const int k = 2 + rng.uniform_int(4);
        const double gamma = 0.49 * rng.uniform01();
        PotentialTable table(k, gamma);
        const int i = rng.uniform_int(7);
        Eigen::VectorXi s(k);
        for (int j = 0; j < k; ++j) s[j] = rng.uniform_int(4);
        const int r = rng.uniform_int(k);

        EdgeDistribution d(k, gamma, r);
        double expect = 0.0;
        for (int l = 0; l < k; ++l) {
            Eigen::VectorXi child = s;
            child[l] += 1;
            expect += d.mass(l) * potential_exact(make_query(r, i, child, gamma), table);
        }
        const double got = potential_exact(make_query(r, i + 1, s, gamma), table);
        CHECK(std::abs(got - expect) <= 1e-12);
    }
}

TEST_CASE("potentials are proper and bounded") {
    Rng rng(77);
    for (int rep = 0; rep < 150; ++rep) {
        const int k = 2 + rng.uniform_int(3);
        const double gamma = 0.49 * rng.uniform01();
        PotentialTable table(k, gamma);
        const int i = rng.uniform_int(8);
        Eigen::VectorXi s(k);
        for (int j = 0; j < k; ++j) s[j] = rng.uniform_int(5);
        const int r = rng.uniform_int(k);
        const double base = potential_exact(make_query(r, i, s, gamma), table);
        CHECK(base >= 0.0);
        CHECK(base <= 1.0);

        Eigen::VectorXi up = s;
        up[r] += 1;
        CHECK(potential_exact(make_query(r, i, up, gamma), table) <= base + 1e-15);
        for (int l = 0; l < k; ++l) {
            if (l == r) continue;
            Eigen::VectorXi wrong = s;
            wrong[l] += 1;
            CHECK(potential_exact(make_query(r, i, wrong, gamma), table) >= base - 1e-15);
        }
    }
}

TEST_CASE("permuting non-favored coordinates leaves potentials unchanged exactly") {
    Rng rng(31);
    PotentialTable table(4, 0.25);
    for (int rep = 0; rep < 100; ++rep) {
        Eigen::VectorXi s(4);
        for (int j = 0; j < 4; ++j) s[j] = rng.uniform_int(6);
        const int i = rng.uniform_int(8);
        const double a = potential_exact(make_query(0, i, s, 0.25), table);
        Eigen::VectorXi p = s;
        std::swap(p[1], p[3]);
        const double b = potential_exact(make_query(0, i, p, 0.25), table);
        CHECK(a == b);
    }
}

TEST_CASE("dense and lazy tables agree on deep queries") {
    DensePotentialTable dense(3, 0.2, 40);
    PotentialTable lazy(3, 0.2);
    Rng rng(88);
    for (int rep = 0; rep < 60; ++rep) {
        Eigen::VectorXi s(3);
        for (int j = 0; j < 3; ++j) s[j] = rng.uniform_int(12);
        const auto q = make_query(rng.uniform_int(3), 20 + rng.uniform_int(21), s, 0.2);
        CHECK(dense.value(q) == doctest::Approx(lazy.value(q)).epsilon(1e-13));
    }
}

TEST_CASE("monte carlo estimation") {
    SUBCASE("no remaining draws gives the exact loss with zero stderr") {
        Eigen::VectorXi s(2);
        s << 1, 0;
        const auto est = potential_mc(make_query(0, 0, s, 0.2), 100, 7);
        CHECK(est.estimate == 0.0);
        CHECK(est.stderr_ == 0.0);
    }
    SUBCASE("converges to the exact value") {
        const auto q = make_query(0, 3, Eigen::VectorXi::Zero(2), 0.2);
        const auto est = potential_mc(q, 1'000'000, 42);
        CHECK(std::abs(est.estimate - 0.352) <= 3 * est.stderr_);
    }
    SUBCASE("matches the DP oracle at a deeper query") {
        const auto q = make_query(0, 20, Eigen::VectorXi::Zero(3), 0.3);
        PotentialTable table(3, 0.3);
        const double exact = potential_exact(q, table);
        const auto est = potential_mc(q, 1'000'000, 43);
        CHECK(std::abs(est.estimate - exact) <= 3 * est.stderr_);
    }
    SUBCASE("deterministic under a fixed seed") {
        const auto q = make_query(1, 9, Eigen::VectorXi::Zero(4), 0.1);
        const auto a = potential_mc(q, 5000, 11);
        const auto b = potential_mc(q, 5000, 11);
        CHECK(a.estimate == b.estimate);
        CHECK(a.stderr_ == b.stderr_);
    }
}

TEST_CASE("mc row differences are consistent with exact potentials") {
    const int k = 3;
    DensePotentialTable dense(k, 0.2, 8);
    Eigen::VectorXi s(k);
    s << 2, 1, 0;
    const int r = 0, m = 5;
    const auto diffs = mc_row_differences(r, m, s, 0.2, k, 200'000, 99);
    for (int l = 0; l < k; ++l) {
        Eigen::VectorXi vl = s, vr = s;
        vl[l] += 1;
        vr[r] += 1;
        const double want = dense.value(make_query(r, m, vl, 0.2)) - dense.value(make_query(r, m, vr, 0.2));
        CHECK(diffs[l] == doctest::Approx(want).epsilon(0.05).scale(1.0));
    }
    CHECK(diffs[r] == 0.0);
}

TEST_CASE("closed-form bounds") {
    CHECK(asymptotic_error_bound(2, 0.0, 10) == 1.0);
    CHECK(asymptotic_error_bound(3, 0.3, 100) == doctest::Approx(2.0 * std::exp(-4.5)).epsilon(1e-12));

    CHECK(weight_norm_bound(4, 0.2, 10, 10) == 4.0);
    CHECK(weight_norm_bound(2, 0.2, 101, 1, 1.0) == doctest::Approx(std::pow(2.0, 2.5) / 10.0).epsilon(1e-12));

    // the DP value respects the closed-form bound on a small grid
    for (int k : {2, 3}) {
        for (double g : {0.1, 0.3}) {
            PotentialTable table(k, g);
            for (int n : {5, 15, 25}) {
                const double phi = potential_exact(make_query(0, n, Eigen::VectorXi::Zero(k), g), table);
                CHECK(phi <= asymptotic_error_bound(k, g, n));
            }
        }
    }
    CHECK_THROWS_AS(weight_norm_bound(3, 0.6, 10, 5), std::invalid_argument);
    CHECK_THROWS_AS(weight_norm_bound(3, 0.2, 10, 0), std::invalid_argument);
}

TEST_CASE("query validation and table mismatches") {
    PotentialTable table(3, 0.2);
    auto q = make_query(0, 2, Eigen::VectorXi::Zero(3), 0.2);
    q.gamma = 0.5;
    CHECK_THROWS_AS(potential_exact(q, table), std::invalid_argument);
    q.gamma = 0.3;
    CHECK_THROWS_AS(potential_exact(q, table), std::invalid_argument);  // gamma mismatch
    q = make_query(0, 2, Eigen::VectorXi::Zero(4), 0.2);
    CHECK_THROWS_AS(potential_exact(q, table), std::invalid_argument);  // k mismatch
    q = make_query(0, -1, Eigen::VectorXi::Zero(3), 0.2);
    CHECK_THROWS_AS(potential_exact(q, table), std::invalid_argument);
}

TEST_CASE("cell cap raises a resource limit error") {
    PotentialTable tiny(4, 0.1, 16);
    const auto q = make_query(0, 30, Eigen::VectorXi::Zero(4), 0.1);
    CHECK_THROWS_AS(potential_exact(q, tiny), ResourceLimitError);
}

TEST_CASE("dense table cell counts") {
    // level m holds C(2m+3 + k-2, k-1) states
    CHECK(DensePotentialTable::cell_count(2, 0) == 3);
    CHECK(DensePotentialTable::cell_count(2, 1) == 3 + 5);
    CHECK(DensePotentialTable::cell_count(3, 0) == 6);  // multisets of size 2 over 3 values
    CHECK(DensePotentialTable::cell_count(10, 5) == std::numeric_limits<std::int64_t>::max());
}
