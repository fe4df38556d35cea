#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bayescv/models.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bayescv;

namespace {

Dataset binary_101() { return make_dataset({1.0, 0.0, 1.0}); }

Hypothesis uniform_beta() { return {"uniform_beta", BetaBernoulli{1.0, 1.0}}; }

}  // namespace

TEST_CASE("beta-bernoulli full-set marginal matches the quadrature oracle") {
    const Dataset data = binary_101();
    // integral of p^2 (1-p) over [0,1] under the flat prior
    const double quad = oracle::quadrature_log_marginal_beta_bernoulli(1.0, 1.0, data.values);
    CHECK(quad == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-10));
    CHECK(log_marginal(uniform_beta(), data.full(), data) ==
          doctest::Approx(-2.4849066497880004).epsilon(1e-14));
}

TEST_CASE("empty subset has log marginal zero for every kind") {
    std::mt19937 rng(101);
    for (gen::Kind kind : gen::kAllKinds) {
        const Hypothesis h = gen::random_hypothesis(kind, rng);
        const Dataset data = make_dataset(gen::random_values(h.params, 5, rng));
        CHECK(log_marginal(h, 0, data) == 0.0);
    }
}

TEST_CASE("simple categorical marginal is the i.i.d. product") {
    const Hypothesis h{"cat", SimpleCategorical{{0.25, 0.75}}};
    const Dataset data = make_dataset({1.0, 1.0});
    CHECK(log_marginal(h, data.full(), data) ==
          doctest::Approx(std::log(0.5625)).epsilon(1e-14));
}

TEST_CASE("log_predictive matches the posterior-predictive rule") {
    const Dataset data = binary_101();
    const Hypothesis h = uniform_beta();
    // datum 3 (=1) given {1,2}: one success and one failure observed
    CHECK(log_predictive(h, 2, 0b011, data) ==
          doctest::Approx(oracle::beta_bernoulli_log_predictive(1, 1, 1, 1, 1.0))
              .epsilon(1e-14));
    CHECK(log_predictive(h, 2, 0b011, data) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    // datum 1 (=1) given {2}: one failure observed
    CHECK(log_predictive(h, 0, 0b010, data) ==
          doctest::Approx(oracle::beta_bernoulli_log_predictive(1, 1, 0, 1, 1.0))
              .epsilon(1e-14));
    CHECK(log_predictive(h, 0, 0b010, data) ==
          doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("log_predictive rejects a datum inside the conditioning subset") {
    const Dataset data = binary_101();
    CHECK_THROWS_AS(log_predictive(uniform_beta(), 1, 0b011, data), std::invalid_argument);
    CHECK_THROWS_AS(log_predictive(uniform_beta(), 7, 0, data), std::invalid_argument);
}

TEST_CASE("predictive from a zero-probability conditioning subset is an error") {
    const Hypothesis h{"degenerate", SimpleCategorical{{1.0, 0.0}}};
    const Dataset data = make_dataset({1.0, 0.0});
    CHECK_THROWS_AS(log_predictive(h, 1, 0b01, data), DataModelError);
}

TEST_CASE("simple-hypothesis predictives ignore the conditioning subset") {
    std::mt19937 rng(7);
    for (gen::Kind kind : {gen::Kind::SimpleCategorical, gen::Kind::SimpleGaussian}) {
        const Hypothesis h = gen::random_hypothesis(kind, rng);
        const Dataset data = make_dataset(gen::random_values(h.params, 6, rng));
        const double alone = log_predictive(h, 2, 0, data);
        CHECK(log_predictive(h, 2, 0b101000, data) == doctest::Approx(alone).epsilon(1e-13));
        CHECK(log_predictive(h, 2, 0b000011, data) == doctest::Approx(alone).epsilon(1e-13));
    }
}

TEST_CASE("marginal chain: successive predictives sum to the subset marginal") {
    std::mt19937 rng(23);
    for (gen::Kind kind : gen::kAllKinds) {
        for (int trial = 0; trial < 20; ++trial) {
            const Hypothesis h = gen::random_hypothesis(kind, rng);
            const int d = 6;
            const Dataset data = make_dataset(gen::random_values(h.params, d, rng));
            std::vector<int> order(d);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            const int take = std::uniform_int_distribution<int>(1, d)(rng);

            SubsetMask seen = 0;
            double chained = 0.0;
            for (int step = 0; step < take; ++step) {
                chained += log_predictive(h, order[step], seen, data);
                seen |= SubsetMask{1} << order[step];
            }
            CHECK(std::abs(chained - log_marginal(h, seen, data)) <= 1e-10);
        }
    }
}

TEST_CASE("permuting the dataset permutes subset marginals") {
    std::mt19937 rng(41);
    for (gen::Kind kind : gen::kAllKinds) {
        const Hypothesis h = gen::random_hypothesis(kind, rng);
        const int d = 7;
        const Dataset data = make_dataset(gen::random_values(h.params, d, rng));

        std::vector<int> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> shuffled(d);
        for (int i = 0; i < d; ++i) {
            shuffled[perm[i]] = data.values[i];
        }
        const Dataset moved = make_dataset(shuffled);

        // count-statistic kinds are exactly order-free; Gaussian kinds
        // accumulate real sums, which reorder under permutation
        const bool count_stats = kind != gen::Kind::SimpleGaussian &&
                                 kind != gen::Kind::NormalKnownVariance;
        for (int trial = 0; trial < 30; ++trial) {
            const SubsetMask mask =
                std::uniform_int_distribution<SubsetMask>(0, full_mask(d))(rng);
            SubsetMask mapped = 0;
            for (int i = 0; i < d; ++i) {
                if (contains(mask, i)) {
                    mapped |= SubsetMask{1} << perm[i];
                }
            }
            const double original = log_marginal(h, mask, data);
            const double permuted = log_marginal(h, mapped, moved);
            if (count_stats) {
                CHECK(original == permuted);
            } else {
                CHECK(permuted ==
                      doctest::Approx(original).epsilon(1e-12));  // float sums reorder
            }
        }
    }
}

TEST_CASE("conjugate closed forms match brute-force oracles") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> size(1, 6);

    SUBCASE("beta-bernoulli vs rising-factorial products") {
        for (int trial = 0; trial < 50; ++trial) {
            const Hypothesis h = gen::random_hypothesis(gen::Kind::BetaBernoulli, rng);
            const Dataset data = make_dataset(gen::random_values(h.params, size(rng), rng));
            const double expected = oracle::log_marginal(h.params, data.values);
            CHECK(log_marginal(h, data.full(), data) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("beta-bernoulli vs quadrature at integer hyperparameters") {
        std::uniform_int_distribution<int> small(1, 4);
        for (int trial = 0; trial < 20; ++trial) {
            const double alpha = small(rng);
            const double beta = small(rng);
            const Hypothesis h{"bb", BetaBernoulli{alpha, beta}};
            const Dataset data = make_dataset(gen::random_values(h.params, size(rng), rng));
            const double expected =
                oracle::quadrature_log_marginal_beta_bernoulli(alpha, beta, data.values);
            CHECK(log_marginal(h, data.full(), data) ==
                  doctest::Approx(expected).epsilon(1e-8));
        }
    }
    SUBCASE("dirichlet-categorical vs rising-factorial products") {
        for (int trial = 0; trial < 50; ++trial) {
            const Hypothesis h = gen::random_hypothesis(gen::Kind::DirichletCategorical, rng);
            const Dataset data = make_dataset(gen::random_values(h.params, size(rng), rng));
            const double expected = oracle::log_marginal(h.params, data.values);
            CHECK(log_marginal(h, data.full(), data) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("normal-known-variance vs predictive chain and quadrature") {
        for (int trial = 0; trial < 50; ++trial) {
            const Hypothesis h = gen::random_hypothesis(gen::Kind::NormalKnownVariance, rng);
            const Dataset data = make_dataset(gen::random_values(h.params, size(rng), rng));
            const double chain = oracle::log_marginal(h.params, data.values);
            const double got = log_marginal(h, data.full(), data);
            CHECK(got == doctest::Approx(chain).epsilon(1e-11));
            const auto& params = std::get<NormalKnownVariance>(h.params);
            const double quad = oracle::quadrature_log_marginal_normal(
                params.data_variance, params.prior_mean, params.prior_variance, data.values);
            CHECK(got == doctest::Approx(quad).epsilon(1e-8));
        }
    }
    SUBCASE("fixed worked values") {
        const Dataset data = make_dataset({0.5, -0.3});
        const Hypothesis nkv{"nkv", NormalKnownVariance{1.0, 0.0, 1.0}};
        CHECK(log_marginal(nkv, data.full(), data) ==
              doctest::Approx(-2.5505165440767334).epsilon(1e-13));
        const Hypothesis sg{"sg", SimpleGaussian{0.0, 1.0}};
        CHECK(log_marginal(sg, data.full(), data) ==
              doctest::Approx(-2.0078770664093453).epsilon(1e-13));
    }
}

TEST_CASE("sufficient statistics update then downdate restores the original") {
    std::mt19937 rng(83);
    for (gen::Kind kind : gen::kAllKinds) {
        const Hypothesis h = gen::random_hypothesis(kind, rng);
        const int d = 6;
        const Dataset data = make_dataset(gen::random_values(h.params, d, rng));
        // exercised via predictives: conditioning on, then dropping a datum
        const double before = log_marginal(h, 0b0110, data);
        const double with_extra = log_marginal(h, 0b1110, data);
        const double back = with_extra - log_predictive(h, 3, 0b0110, data);
        CHECK(back == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("parameter validation rejects bad hypotheses") {
    CHECK_THROWS_AS(validate_params(SimpleCategorical{{0.5, 0.4}}), ConfigError);
    CHECK_THROWS_AS(validate_params(SimpleCategorical{{}}), ConfigError);
    CHECK_THROWS_AS(validate_params(SimpleGaussian{0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate_params(BetaBernoulli{0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate_params(BetaBernoulli{1.0, -2.0}), ConfigError);
    CHECK_THROWS_AS(validate_params(DirichletCategorical{{1.0, 0.0}}), ConfigError);
    CHECK_THROWS_AS(validate_params(NormalKnownVariance{0.0, 0.0, 1.0}), ConfigError);
    CHECK_NOTHROW(validate_params(SimpleCategorical{{0.5, 0.5}}));
}

TEST_CASE("kind and data compatibility") {
    const Dataset reals = make_dataset({0.5, 1.5});
    const Dataset binary = binary_101();
    const Dataset labels = make_dataset({0.0, 2.0});

    CHECK_THROWS_AS(check_compatible(uniform_beta(), reals), DataModelError);
    CHECK_NOTHROW(check_compatible(uniform_beta(), binary));

    const Hypothesis cat{"cat", SimpleCategorical{{0.5, 0.5}}};
    CHECK_THROWS_AS(check_compatible(cat, labels), DataModelError);  // label 2 needs K >= 3

    const Hypothesis gauss{"g", SimpleGaussian{0.0, 1.0}};
    CHECK_NOTHROW(check_compatible(gauss, reals));

    CHECK_THROWS_AS(log_marginal(uniform_beta(), 0b1000, binary), std::invalid_argument);
}

TEST_CASE("kind names are stable") {
    CHECK(std::string(kind_name(SimpleCategorical{{1.0}})) == "simple_categorical");
    CHECK(std::string(kind_name(BetaBernoulli{})) == "beta_bernoulli");
    CHECK(std::string(kind_name(NormalKnownVariance{})) == "normal_known_variance");
}
