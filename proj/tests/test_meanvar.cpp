#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "folio/meanvar.hpp"
#include "folio/synthetic.hpp"
#include "oracles.hpp"

using namespace folio;

namespace {

Eigen::MatrixXd random_pd_matrix(Rng& rng, int n, double diag_boost = 0.2) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    return a * a.transpose() / n + diag_boost * Eigen::MatrixXd::Identity(n, n);
}

} // namespace

TEST_CASE("frontier coefficients under the identity covariance") {
    Eigen::VectorXd means(2);
    means << 0.01, 0.02;
    const FrontierCoefficients fc = frontier_coefficients(means, Eigen::MatrixXd::Identity(2, 2));
    CHECK(fc.a == doctest::Approx(0.0005).epsilon(1e-12));
    CHECK(fc.b == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fc.c == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(fc.delta == doctest::Approx(0.0001).epsilon(1e-12));
    CHECK_FALSE(fc.degenerate);
    CHECK(fc.w1.sum() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fc.w2.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("equal means set the degenerate flag") {
    Eigen::VectorXd means = Eigen::VectorXd::Constant(3, 0.007);
    const FrontierCoefficients fc = frontier_coefficients(means, Eigen::MatrixXd::Identity(3, 3));
    CHECK(fc.degenerate);
    CHECK_THROWS_AS(frontier_weights(fc, 0.007), DegeneracyError);
    CHECK_THROWS_AS(trace_frontier(fc, 5, {0.0, 0.01}), DegeneracyError);
    // The MVP is still well-defined.
    const Portfolio mvp = min_variance_portfolio(fc);
    CHECK(mvp.weights.sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("frontier coefficients match a dense-inverse oracle") {
    Eigen::VectorXd means(2);
    means << 0.01, 0.02;
    Eigen::MatrixXd sigma = Eigen::Vector2d(1, 4).asDiagonal();
    const FrontierCoefficients fc = frontier_coefficients(means, sigma);

    const Eigen::MatrixXd inv = sigma.inverse();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
    CHECK(fc.a == doctest::Approx(means.dot(inv * means)).epsilon(1e-12));
    CHECK(fc.b == doctest::Approx(ones.dot(inv * ones)).epsilon(1e-12));
    CHECK(fc.c == doctest::Approx(means.dot(inv * ones)).epsilon(1e-12));
    CHECK(fc.delta == doctest::Approx(fc.a * fc.b - fc.c * fc.c).epsilon(1e-12));

    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 5);
        Eigen::VectorXd mu(n);
        for (int i = 0; i < n; ++i) mu[i] = 0.01 * rng.normal();
        const Eigen::MatrixXd cov = random_pd_matrix(rng, n);
        const FrontierCoefficients f = frontier_coefficients(mu, cov);
        const Eigen::MatrixXd ci = cov.inverse();
        const Eigen::VectorXd e = Eigen::VectorXd::Ones(n);
        CHECK(f.a == doctest::Approx(mu.dot(ci * mu)).epsilon(1e-10));
        CHECK(f.b == doctest::Approx(e.dot(ci * e)).epsilon(1e-10));
        CHECK(f.c == doctest::Approx(mu.dot(ci * e)).epsilon(1e-10));
        CHECK(f.w1.sum() == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(f.w2.sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("frontier weights hit their target and collapse to the MVP") {
    Eigen::VectorXd means(2);
    means << 0.01, 0.02;
    const FrontierCoefficients fc = frontier_coefficients(means, Eigen::MatrixXd::Identity(2, 2));

    SUBCASE("target at C/B reproduces the MVP") {
        const Eigen::VectorXd w = frontier_weights(fc, fc.mvp_return());
        const Portfolio mvp = min_variance_portfolio(fc);
        CHECK((w - mvp.weights).cwiseAbs().maxCoeff() <= 1e-12);
        // Against the closed form Σ⁻¹e / b directly:
        const Eigen::VectorXd direct = Eigen::VectorXd::Constant(2, 0.5);
        CHECK((w - direct).cwiseAbs().maxCoeff() <= 1e-10);
    }
    SUBCASE("midpoint target splits symmetric assets") {
        const Eigen::VectorXd w = frontier_weights(fc, 0.015);
        CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("mean constraint binds") {
        const Eigen::VectorXd w = frontier_weights(fc, 0.01);
        CHECK(means.dot(w) == doctest::Approx(0.01).epsilon(1e-10));
        CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("minimum-variance portfolio closed forms") {
    SUBCASE("identity") {
        Eigen::VectorXd means(2);
        means << 0.01, 0.02;
        const FrontierCoefficients fc =
            frontier_coefficients(means, Eigen::MatrixXd::Identity(2, 2));
        const Portfolio p = min_variance_portfolio(fc);
        CHECK(p.weights[0] == doctest::Approx(0.5).epsilon(1e-10));
        const double var = p.weights.dot(fc.covariance * p.weights);
        CHECK(var == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(var == doctest::Approx(1.0 / fc.b).epsilon(1e-10));
    }
    SUBCASE("inverse-variance weighting") {
        Eigen::VectorXd means(2);
        means << 0.01, 0.02;
        Eigen::MatrixXd sigma = Eigen::Vector2d(1, 4).asDiagonal();
        const FrontierCoefficients fc = frontier_coefficients(means, sigma);
        const Portfolio p = min_variance_portfolio(fc);
        CHECK(p.weights[0] == doctest::Approx(0.8).epsilon(1e-10));
        CHECK(p.weights[1] == doctest::Approx(0.2).epsilon(1e-10));
        CHECK(p.weights.dot(sigma * p.weights) == doctest::Approx(0.8).epsilon(1e-10));
    }
    SUBCASE("first-order optimality along budget-preserving directions") {
        Rng rng(31);
        const Eigen::MatrixXd sigma = random_pd_matrix(rng, 4);
        Eigen::VectorXd means(4);
        for (int i = 0; i < 4; ++i) means[i] = 0.01 * rng.normal();
        const Portfolio p = min_variance_portfolio(frontier_coefficients(means, sigma));
        for (int trial = 0; trial < 8; ++trial) {
            Eigen::VectorXd d(4);
            for (int i = 0; i < 4; ++i) d[i] = rng.normal();
            d.array() -= d.mean(); // sum(d) = 0 keeps the budget
            CHECK(std::abs(d.dot(sigma * p.weights)) <= 1e-10);
        }
    }
}

TEST_CASE("tangent portfolio") {
    Eigen::VectorXd means(2);
    means << 0.01, 0.02;
    const FrontierCoefficients fc = frontier_coefficients(means, Eigen::MatrixXd::Identity(2, 2));

    SUBCASE("zero risk-free normalizes the means") {
        const Portfolio p = tangent_portfolio(fc, 0.0);
        CHECK(p.weights[0] == doctest::Approx(1.0 / 3).epsilon(1e-10));
        CHECK(p.weights[1] == doctest::Approx(2.0 / 3).epsilon(1e-10));
    }
    SUBCASE("positive risk-free normalizes the excess means") {
        const Portfolio p = tangent_portfolio(fc, 0.005);
        CHECK(p.weights[0] == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(p.weights[1] == doctest::Approx(0.75).epsilon(1e-10));
    }
    SUBCASE("undefined tangency") {
        // r_f = c/b makes the excess frontier pass through the origin.
        CHECK_THROWS_AS(tangent_portfolio(fc, fc.c / fc.b), DegeneracyError);
    }
    SUBCASE("dominates random frontier points") {
        Rng rng(55);
        const Eigen::MatrixXd sigma = random_pd_matrix(rng, 4);
        Eigen::VectorXd mu(4);
        for (int i = 0; i < 4; ++i) mu[i] = 0.005 + 0.01 * rng.uniform();
        const FrontierCoefficients f = frontier_coefficients(mu, sigma);
        const double rf = 0.001;
        const Portfolio tangent = tangent_portfolio(f, rf);
        const double t_sharpe = (mu.dot(tangent.weights) - rf) /
                                std::sqrt(tangent.weights.dot(sigma * tangent.weights));
        for (int trial = 0; trial < 50; ++trial) {
            const double target = f.mvp_return() + 0.02 * rng.uniform();
            const Eigen::VectorXd w = frontier_weights(f, target);
            const double sharpe = (mu.dot(w) - rf) / std::sqrt(w.dot(sigma * w));
            CHECK(t_sharpe >= sharpe - 1e-10);
        }
    }
}

TEST_CASE("trace_frontier") {
    Eigen::VectorXd means(3);
    means << 0.005, 0.012, 0.02;
    Rng rng(17);
    const Eigen::MatrixXd sigma = random_pd_matrix(rng, 3);
    const FrontierCoefficients fc = frontier_coefficients(means, sigma);

    SUBCASE("sigma matches the closed-form quadratic at every point") {
        const auto points = trace_frontier(fc, 33, {0.004, 0.02});
        for (const auto& pt : points) {
            const double lhs = pt.risk * pt.risk * fc.delta;
            const double rhs =
                fc.b * pt.target_return * pt.target_return - 2 * fc.c * pt.target_return + fc.a;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
            CHECK(pt.weights.sum() == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    SUBCASE("minimum risk lands at the grid point nearest C/B") {
        const double apex = fc.mvp_return();
        const auto points = trace_frontier(fc, 41, {apex - 0.005, apex + 0.005});
        std::size_t min_idx = 0;
        std::size_t nearest = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].risk < points[min_idx].risk) min_idx = i;
            if (std::abs(points[i].target_return - apex) <
                std::abs(points[nearest].target_return - apex))
                nearest = i;
        }
        CHECK(min_idx == nearest);
    }
    SUBCASE("two points sit at the range ends") {
        const auto points = trace_frontier(fc, 2, {0.004, 0.02});
        REQUIRE(points.size() == 2);
        CHECK(points.front().target_return == doctest::Approx(0.004));
        CHECK(points.back().target_return == doctest::Approx(0.02));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(trace_frontier(fc, 1, {0.0, 0.01}), ParameterError);
        CHECK_THROWS_AS(trace_frontier(fc, 5, {0.01, 0.01}), ParameterError);
    }
}

TEST_CASE("constrained portfolios") {
    SUBCASE("long-only symmetric case gives equal weights") {
        Eigen::VectorXd means = Eigen::VectorXd::Constant(4, 0.01);
        const ConstraintSet cs = build_constraints(StrategySpec::long_only(), 4);
        const Portfolio p = constrained_mv_portfolio(means, Eigen::MatrixXd::Identity(4, 4),
                                                     std::nullopt, cs);
        for (int i = 0; i < 4; ++i) CHECK(p.weights[i] == doctest::Approx(0.25).epsilon(1e-8));
    }
    SUBCASE("unconstrained bounds match the closed form") {
        Rng rng(61);
        Eigen::VectorXd means(4);
        for (int i = 0; i < 4; ++i) means[i] = 0.01 * rng.normal();
        const Eigen::MatrixXd sigma = random_pd_matrix(rng, 4);
        const FrontierCoefficients fc = frontier_coefficients(means, sigma);

        ConstraintSet cs;
        cs.lo = Eigen::VectorXd::Constant(4, -kInf);
        cs.hi = Eigen::VectorXd::Constant(4, kInf);
        const double target = fc.mvp_return() + 0.004;
        const Portfolio p =
            constrained_mv_portfolio(means, sigma, target, cs, MvObjective::min_variance());
        const Eigen::VectorXd closed = frontier_weights(fc, target);
        CHECK((p.weights - closed).cwiseAbs().maxCoeff() <= 1e-8);
    }
    SUBCASE("long-only clamps the shorted asset and re-optimizes") {
        // Asset 2 is so risky that the unconstrained MVP shorts it.
        Eigen::VectorXd means(3);
        means << 0.01, 0.011, 0.012;
        Eigen::MatrixXd sigma(3, 3);
        sigma << 0.0001, 0.00012, 0.0, 0.00012, 0.00016, 0.0, 0.0, 0.0, 0.0004;
        const FrontierCoefficients fc = frontier_coefficients(means, sigma);
        const Eigen::VectorXd unconstrained = min_variance_portfolio(fc).weights;
        REQUIRE(unconstrained.minCoeff() < -1e-3);
        const int shorted = unconstrained[0] < unconstrained[1] ? 0 : 1;

        const ConstraintSet cs = build_constraints(StrategySpec::long_only(), 3);
        const Portfolio p = constrained_mv_portfolio(means, sigma, std::nullopt, cs);
        CHECK(p.weights[shorted] <= 1e-8);

        const auto [gw, gv] = oracle::simplex_grid_search(3, 1e-3, [&](const Eigen::VectorXd& w) {
            return w.dot(sigma * w);
        });
        CHECK((p.weights - gw).cwiseAbs().maxCoeff() <= 1e-3 + 1e-8);
    }
    SUBCASE("max sharpe scan beats every grid target") {
        Rng rng(62);
        Eigen::VectorXd means(3);
        means << 0.004, 0.009, 0.014;
        const Eigen::MatrixXd sigma = 1e-4 * random_pd_matrix(rng, 3);
        const ConstraintSet cs = build_constraints(StrategySpec::long_only(), 3);
        const double rf = 0.001;
        const Portfolio best =
            constrained_mv_portfolio(means, sigma, std::nullopt, cs,
                                     MvObjective::max_sharpe(rf, 60));
        const double best_ratio = (means.dot(best.weights) - rf) /
                                  std::sqrt(best.weights.dot(sigma * best.weights));
        for (int i = 0; i < 60; ++i) {
            const double target =
                means.minCoeff() + (means.maxCoeff() - means.minCoeff()) * i / 59.0;
            const Portfolio p =
                constrained_mv_portfolio(means, sigma, target, cs, MvObjective::min_variance());
            const double ratio =
                (means.dot(p.weights) - rf) / std::sqrt(p.weights.dot(sigma * p.weights));
            CHECK(best_ratio >= ratio - 1e-9);
        }
    }
    SUBCASE("infeasible constraints throw") {
        Eigen::VectorXd means(2);
        means << 0.01, 0.02;
        ConstraintSet cs;
        cs.lo = Eigen::VectorXd::Constant(2, 0.0);
        cs.hi = Eigen::VectorXd::Constant(2, 0.3);
        CHECK_THROWS_AS(constrained_mv_portfolio(means, Eigen::MatrixXd::Identity(2, 2),
                                                 std::nullopt, cs),
                        InfeasibleError);
    }
}

TEST_CASE("closed-form/QP equivalence on random PD instances") {
    Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 5);
        Eigen::VectorXd means(n);
        for (int i = 0; i < n; ++i) means[i] = 0.01 * rng.normal();
        const Eigen::MatrixXd sigma = random_pd_matrix(rng, n);

        ConstraintSet cs;
        cs.lo = Eigen::VectorXd::Constant(n, -kInf);
        cs.hi = Eigen::VectorXd::Constant(n, kInf);
        const Portfolio qp = constrained_mv_portfolio(means, sigma, std::nullopt, cs);
        const Portfolio closed = min_variance_portfolio(frontier_coefficients(means, sigma));
        CHECK((qp.weights - closed.weights).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("long/arithmetic return inputs give nearly identical MVP weights") {
    // Synthetic daily arithmetic returns bounded by 1%.
    Rng rng(4099);
    const int n = 4, t = 900;
    Eigen::MatrixXd arith(t, n);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < n; ++j) {
            double r = 0.0002 * (j + 1) + 0.004 * rng.normal();
            r = std::clamp(r, -0.01, 0.01);
            arith(i, j) = r;
        }
    const Eigen::MatrixXd logr = (arith.array() + 1.0).log();

    const auto mvp = [](const Eigen::MatrixXd& obs) {
        const Eigen::VectorXd mu = obs.colwise().mean();
        const Eigen::MatrixXd centered = obs.rowwise() - obs.colwise().mean();
        const Eigen::MatrixXd cov = centered.transpose() * centered / (obs.rows() - 1.0);
        return min_variance_portfolio(frontier_coefficients(mu, cov)).weights;
    };
    CHECK((mvp(arith) - mvp(logr)).cwiseAbs().maxCoeff() <= 1e-3);
}
