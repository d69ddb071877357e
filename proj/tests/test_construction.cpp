#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "fracperc/config.hpp"
#include "fracperc/serialize.hpp"
#include "oracles.hpp"

using namespace fracperc;

TEST_SUITE_BEGIN("construction");

TEST_CASE("retain_decision trivial probabilities") {
    CellIndex cell{3, {5, 2}};
    CHECK(retain_decision({2, 2, 1.0, 42}, cell));
    CHECK_FALSE(retain_decision({2, 2, 0.0, 42}, cell));
}

TEST_CASE("retain_decision monotone coupling in p") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CellIndex cell{3, {5, 2}};
        bool at_07 = retain_decision({8, 2, 0.7, seed}, cell);
        bool at_09 = retain_decision({8, 2, 0.9, seed}, cell);
        if (at_07) CHECK(at_09);
    }
}

TEST_CASE("cell_box geometry") {
    ProcessParams params{2, 2, 0.5, 0};
    Box b1 = cell_box(params, {1, {1, 1}});
    CHECK(b1.lo == std::vector<double>{0.0, 0.0});
    CHECK(b1.hi == std::vector<double>{0.5, 0.5});
    Box b2 = cell_box(params, {2, {4, 1}});
    CHECK(b2.lo == std::vector<double>{0.75, 0.0});
    CHECK(b2.hi == std::vector<double>{1.0, 0.25});
    for (int n = 1; n <= 4; ++n) {
        Box b = cell_box(params, {n, {1, 1}});
        CHECK(b.hi[0] - b.lo[0] == doctest::Approx(std::pow(2.0, -n)).epsilon(1e-12));
    }
}

TEST_CASE("generate_level full and empty retention") {
    auto full = generate_level({2, 2, 1.0, 7}, 3);
    CHECK(full.z() == 64);
    auto empty = generate_level({2, 2, 0.0, 7}, 3);
    CHECK(empty.z() == 0);
}

TEST_CASE("generate_level equals ancestor-chain enumeration") {
    // draw all level-1 and level-2 decisions directly and intersect
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ProcessParams params{2, 2, 0.7, seed};
        auto config = generate_level(params, 2);
        for (Coord x = 1; x <= 4; ++x) {
            for (Coord y = 1; y <= 4; ++y) {
                CellIndex parent{1, {static_cast<Coord>((x - 1) / 2 + 1),
                                     static_cast<Coord>((y - 1) / 2 + 1)}};
                CellIndex cell{2, {x, y}};
                bool expected = retain_decision(params, parent) && retain_decision(params, cell);
                std::vector<Coord> k{x, y};
                CHECK(config.retained(k) == expected);
            }
        }
    }
}

TEST_CASE("nesting: every retained cell has a retained ancestor chain") {
    ProcessParams params{3, 2, 0.6, 99};
    auto levels = generate_levels(params, 4);
    for (int n = 1; n < 4; ++n) {
        const auto& fine = levels[static_cast<std::size_t>(n)];
        const auto& coarse = levels[static_cast<std::size_t>(n - 1)];
        bool ok = true;
        fine.for_each_packed([&](std::uint64_t idx) {
            if (!coarse.retained_packed(fine.ancestor_packed(idx, n))) ok = false;
        });
        CHECK(ok);
    }
}

TEST_CASE("reproducibility is bit for bit") {
    ProcessParams params{2, 3, 0.55, 1234};
    auto a = generate_level(params, 4);
    auto b = generate_level(params, 4);
    CHECK(a == b);
    CHECK(a.z() == b.z());
}

TEST_CASE("monotone coupling of whole configurations") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto low = generate_level({2, 2, 0.4, seed}, 4);
        auto high = generate_level({2, 2, 0.8, seed}, 4);
        bool contained = true;
        low.for_each_packed([&](std::uint64_t idx) {
            if (!high.retained_packed(idx)) contained = false;
        });
        CHECK(contained);
    }
}

TEST_CASE("z1 law: chi-square against Binomial(N^d, p)") {
    ProcessParams base{2, 2, 0.7, 2024};
    const int trials = 20000;
    std::vector<int> observed(5, 0);
    for (int t = 0; t < trials; ++t) {
        ProcessParams params = base;
        params.seed = derive_trial_seed(base.seed, static_cast<std::uint64_t>(t));
        ++observed[static_cast<std::size_t>(generate_level(params, 1).z())];
    }
    double chi2 = 0;
    for (int k = 0; k <= 4; ++k) {
        double binom = 1;
        for (int i = 0; i < k; ++i) binom *= (4.0 - i) / (i + 1);
        double pk = binom * std::pow(0.7, k) * std::pow(0.3, 4 - k);
        double expected = pk * trials;
        chi2 += (observed[static_cast<std::size_t>(k)] - expected) *
                (observed[static_cast<std::size_t>(k)] - expected) / expected;
    }
    // 4 degrees of freedom, alpha = 0.01 -> 13.28
    CHECK(chi2 < 13.28);
}

TEST_CASE("mean Z_n within 4 standard errors of (p N^d)^n") {
    ProcessParams base{2, 2, 0.7, 555};
    const int trials = 4000, n = 3;
    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
        ProcessParams params = base;
        params.seed = derive_trial_seed(base.seed, static_cast<std::uint64_t>(t));
        double z = static_cast<double>(generate_level(params, n).z());
        sum += z;
        sumsq += z * z;
    }
    double mean = sum / trials;
    double var = (sumsq - sum * sum / trials) / (trials - 1);
    double se = std::sqrt(var / trials);
    double expected = std::pow(0.7 * 4, n);  // 21.952
    CHECK(std::abs(mean - expected) < 4 * se);
}

TEST_CASE("uniforms look uniform and neighbours decorrelated") {
    RetentionOracle oracle(77);
    const int n = 20000;
    std::vector<int> buckets(10, 0);
    double corr_sum = 0, sum = 0, sumsq = 0;
    double prev = 0;
    for (int i = 0; i < n; ++i) {
        Coord k[2] = {static_cast<Coord>(i % 1000 + 1), static_cast<Coord>(i / 1000 + 1)};
        double u = oracle.uniform(10, std::span<const Coord>(k, 2));
        ++buckets[static_cast<std::size_t>(u * 10)];
        sum += u;
        sumsq += u * u;
        if (i > 0) corr_sum += (u - 0.5) * (prev - 0.5);
        prev = u;
    }
    double chi2 = 0;
    for (int b = 0; b < 10; ++b) {
        double e = n / 10.0;
        chi2 += (buckets[static_cast<std::size_t>(b)] - e) * (buckets[static_cast<std::size_t>(b)] - e) / e;
    }
    CHECK(chi2 < 21.67);  // chi2(9) at alpha=0.01
    double mean = sum / n;
    CHECK(std::abs(mean - 0.5) < 0.01);
    double corr = corr_sum / n / (1.0 / 12.0);
    CHECK(std::abs(corr) < 0.03);
}

TEST_CASE("subprocess view equals rescaled parent decisions") {
    ProcessParams params{3, 2, 0.5, 31};
    CellIndex root{2, {4, 7}};
    SubprocessView view(params, root);
    for (Coord x = 1; x <= 3; ++x)
        for (Coord y = 1; y <= 3; ++y) {
            CellIndex vc{1, {x, y}};
            CellIndex mapped{3, {static_cast<Coord>((root.k[0] - 1) * 3 + x),
                                 static_cast<Coord>((root.k[1] - 1) * 3 + y)}};
            CHECK(view.retain_decision(vc) == retain_decision(params, mapped));
        }
    auto config = view.generate(1);
    CHECK(config.level() == 1);
    std::uint64_t direct = 0;
    for (Coord x = 1; x <= 3; ++x)
        for (Coord y = 1; y <= 3; ++y)
            if (view.retain_decision({1, {x, y}})) ++direct;
    CHECK(config.z() == direct);
}

TEST_CASE("subprocess view at p=1 is full retention") {
    SubprocessView view({2, 2, 1.0, 5}, CellIndex{3, {2, 6}});
    CHECK(view.generate(2).z() == 16);
}

TEST_CASE("scale invariance: z1 and z2 laws match under the view") {
    // chi-square GOF for z1 ~ Bin(4,p) and z2 against its exact law, for the
    // root process and a level-2 subprocess view; Bonferroni at 0.01 over 4
    // tests -> per-test alpha 0.0025
    ProcessParams base{2, 2, 0.6, 313};
    const int trials = 20000;
    const double p = 0.6;

    auto binom4 = [&](int k) {
        double c[5] = {1, 4, 6, 4, 1};
        return c[k] * std::pow(p, k) * std::pow(1 - p, 4 - k);
    };
    // exact pmf of Z2 = sum over Z1 of Bin(4*Z1, p)
    std::vector<double> z2_pmf(17, 0.0);
    for (int z1 = 0; z1 <= 4; ++z1) {
        for (int z2 = 0; z2 <= 4 * z1; ++z2) {
            double binom = 1;
            for (int i = 0; i < z2; ++i) binom *= (4.0 * z1 - i) / (i + 1);
            z2_pmf[static_cast<std::size_t>(z2)] +=
                binom4(z1) * binom * std::pow(p, z2) * std::pow(1 - p, 4 * z1 - z2);
        }
    }

    auto run = [&](bool use_view) {
        std::vector<int> z1_obs(5, 0);
        std::vector<int> z2_obs(17, 0);
        for (int t = 0; t < trials; ++t) {
            ProcessParams params = base;
            params.seed = derive_trial_seed(base.seed, static_cast<std::uint64_t>(t));
            if (use_view) {
                SubprocessView view(params, CellIndex{2, {2, 3}});
                ++z1_obs[static_cast<std::size_t>(view.generate(1).z())];
                ++z2_obs[static_cast<std::size_t>(view.generate(2).z())];
            } else {
                auto levels = generate_levels(params, 2);
                ++z1_obs[static_cast<std::size_t>(levels[0].z())];
                ++z2_obs[static_cast<std::size_t>(levels[1].z())];
            }
        }
        double chi1 = 0;
        for (int k = 0; k <= 4; ++k) {
            double e = binom4(k) * trials;
            chi1 += (z1_obs[static_cast<std::size_t>(k)] - e) * (z1_obs[static_cast<std::size_t>(k)] - e) / e;
        }
        // pool z2 cells with small expectation
        double chi2 = 0;
        int dof2 = -1;
        double pooled_obs = 0, pooled_exp = 0;
        for (int k = 0; k <= 16; ++k) {
            double e = z2_pmf[static_cast<std::size_t>(k)] * trials;
            double o = z2_obs[static_cast<std::size_t>(k)];
            if (e < 8) {
                pooled_obs += o;
                pooled_exp += e;
                continue;
            }
            chi2 += (o - e) * (o - e) / e;
            ++dof2;
        }
        if (pooled_exp > 0) {
            chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
            ++dof2;
        }
        return std::tuple{chi1, chi2, dof2};
    };

    auto [root_chi1, root_chi2, root_dof2] = run(false);
    auto [view_chi1, view_chi2, view_dof2] = run(true);
    // chi2(4) at alpha=0.0025 is 16.42
    CHECK(root_chi1 < 16.42);
    CHECK(view_chi1 < 16.42);
    // dof is around 12-14; use a conservative quantile for chi2(dof) at 0.0025
    double crit2 = root_dof2 * 1.0 + 3.1 * std::sqrt(2.0 * root_dof2) + 8.0;
    CHECK(root_chi2 < crit2);
    double crit2v = view_dof2 * 1.0 + 3.1 * std::sqrt(2.0 * view_dof2) + 8.0;
    CHECK(view_chi2 < crit2v);
}

TEST_CASE("budget refusal names the problem") {
    GenerateOptions tiny;
    tiny.budget_bytes = 1024;
    CHECK_THROWS_AS(generate_level({2, 2, 1.0, 1}, 12, tiny), ResourceError);
}

TEST_CASE("serialization round trip, dense and sparse") {
    auto tmp = std::filesystem::temp_directory_path();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ProcessParams params{3, 2, 0.55, seed};
        auto config = generate_level(params, 3);
        auto path = (tmp / ("frpc_dense_" + std::to_string(seed) + ".frpc")).string();
        save_configuration(config, path);
        CHECK(load_configuration(path) == config);
        std::filesystem::remove(path);

        ProcessParams sparse_params{2, 3, 0.4, seed};
        auto sparse = generate_level(sparse_params, 3);
        auto spath = (tmp / ("frpc_sparse_" + std::to_string(seed) + ".frpc")).string();
        save_configuration(sparse, spath);
        CHECK(load_configuration(spath) == sparse);
        std::filesystem::remove(spath);
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(generate_level({1, 2, 0.5, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_level({2, 1, 0.5, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_level({2, 2, 1.5, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_level({2, 2, 0.5, 0}, 0), std::invalid_argument);
    ProcessParams params{2, 2, 0.5, 0};
    CHECK_THROWS_AS(cell_box(params, {1, {3, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(cell_box(params, {1, {1}}), std::invalid_argument);
}

TEST_SUITE_END();
