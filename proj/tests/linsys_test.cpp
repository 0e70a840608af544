#include <gtest/gtest.h>

#include "severi/linsys.hpp"
#include "severi/parse.hpp"

using namespace severi;

namespace {

ExactPoint pt(long x, long y, long z = 1) { return ExactPoint(QComplex(x), QComplex(y), QComplex(z)); }

// f, f_u, f_v of the dehomogenized form in the point's chart.
std::vector<QComplex> residuals(const ExactForm& f, const ExactPoint& p) {
    const Chart ch = p.chart();
    auto a = f.dehomogenize(ch);
    auto uv = p.affine(ch);
    return {a.eval(uv[0], uv[1]), a.derivative(0).eval(uv[0], uv[1]), a.derivative(1).eval(uv[0], uv[1])};
}

bool all_zero(const std::vector<QComplex>& v) {
    return std::all_of(v.begin(), v.end(), [](const QComplex& x) { return x.is_zero(); });
}

}  // namespace

TEST(NodeConditionMatrix, OriginOnCubic) {
    auto m = node_condition_matrix<QComplex>({pt(0, 0)}, 3);
    EXPECT_EQ(m.rows(), 3u);
    EXPECT_EQ(m.cols(), 10u);
    EXPECT_EQ(exact_rank(m), 3u);
    auto ker = kernel_basis(m);
    EXPECT_EQ(ker.size(), 7u);
    // The conditions kill exactly the Z^3, XZ^2, YZ^2 coefficients.
    for (const auto& v : ker)
        for (Exponent e : {Exponent{0, 0, 3}, Exponent{1, 0, 2}, Exponent{0, 1, 2}})
            EXPECT_TRUE(v[monomial_index(3, e)].is_zero());
}

TEST(NodeConditionMatrix, EmptyPointList) {
    auto m = node_condition_matrix<QComplex>({}, 3);
    EXPECT_EQ(m.rows(), 0u);
    EXPECT_EQ(kernel_basis(m).size(), 10u);
}

TEST(NodeConditionMatrix, TwoRationalPoints) {
    auto m = node_condition_matrix<QComplex>({pt(1, 2), ExactPoint(QComplex(Rational(1, 3)), QComplex(-1), QComplex(0))}, 3);
    EXPECT_EQ(exact_rank(m), 6u);
}

TEST(NodeConditionMatrix, CoincidentPointsRejected) {
    try {
        node_condition_matrix<QComplex>({pt(1, 2), pt(2, 4, 2)}, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("coincident points"), std::string::npos);
    }
}

TEST(NodeConditionMatrix, ReproducesResiduals) {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const int d = 2 + t % 5;
        auto pts = random_points(3, rng);
        std::vector<QComplex> c(monomial_count(d));
        for (auto& v : c) v = QComplex(rng.uniform_int(-5, 5));
        c[0] = QComplex(7);
        ExactForm f(d, c);
        auto lhs = node_condition_matrix(pts, d).apply(c);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            auto r = residuals(f, pts[k]);
            for (int q = 0; q < 3; ++q) EXPECT_EQ(lhs[3 * k + q], r[q]);
        }
    }
}

TEST(NodeConditionMatrix, GenericKernelDimension) {
    Rng rng(8);
    for (int d = 1; d <= 6; ++d)
        for (int n = 0; 3 * n <= monomial_count(d) && n <= arithmetic_genus(d); ++n) {
            auto pts = random_points(n, rng, 20);
            auto m = node_condition_matrix(pts, d);
            EXPECT_EQ(static_cast<long>(kernel_basis(m).size()), monomial_count(d) - 3 * n) << d << " " << n;
        }
}

TEST(NodeConditionMatrix, FloatModeAgreesOnRank) {
    std::vector<FloatPoint> pts{pt(1, 2).to_float(), pt(-3, 1, 2).to_float()};
    auto sv = singular_values(node_condition_matrix(pts, 3));
    ASSERT_EQ(sv.size(), 6u);
    EXPECT_GT(sv[5] / sv[0], 1e-6);
}

TEST(ConstructNodalCurve, NodeAtOriginOfCubic) {
    auto cfg = construct_nodal_curve({pt(0, 0)}, 3, 42);
    EXPECT_EQ(cfg.degree(), 3);
    ASSERT_EQ(cfg.node_count(), 1);
    EXPECT_TRUE(all_zero(residuals(cfg.curve.form(), cfg.nodes[0])));
    EXPECT_TRUE(cfg.witnesses[0].is_node());
    EXPECT_NE(cfg.witnesses[0].hessian_determinant, Complex(0.0));
    EXPECT_TRUE(cfg.complete);
}

TEST(ConstructNodalCurve, TextbookNodalCubicPassesVerification) {
    ExactCurve c(parse_form("Y^2*Z - X^3 - X^2*Z"));
    EXPECT_TRUE(all_zero(residuals(c.form(), pt(0, 0))));
    ExactConfiguration cfg{c, {pt(0, 0)}};
    EXPECT_FALSE(detail::verify_sample(c, {pt(0, 0)}, ConstructionOptions{}, cfg).has_value());
}

TEST(ConstructNodalCurve, SmoothConic) {
    auto cfg = construct_nodal_curve({}, 2, 1);
    EXPECT_TRUE(cfg.complete);
    EXPECT_TRUE(singular_points(cfg.curve).empty());
}

TEST(ConstructNodalCurve, ThreeNodalQuartic) {
    ConstructionOptions opt;
    opt.require_irreducible = true;
    auto cfg = construct_nodal_curve({pt(0, 0), pt(1, 0), pt(0, 1)}, 4, 3, opt);
    auto m = membership(cfg.curve);
    EXPECT_TRUE(m.in_nodal_locus(3));
    EXPECT_EQ(geometric_genus(4, m.node_count), 0);
    for (const auto& p : cfg.nodes) EXPECT_TRUE(all_zero(residuals(cfg.curve.form(), p)));
}

TEST(ConstructNodalCurve, Reproducible) {
    Rng rng(5);
    auto pts = random_points(2, rng);
    auto a = construct_nodal_curve(pts, 4, 99);
    auto b = construct_nodal_curve(pts, 4, 99);
    EXPECT_EQ(a.curve, b.curve);
    auto c = construct_nodal_curve(pts, 4, 100);
    EXPECT_NE(a.curve, c.curve);
}

TEST(ConstructNodalCurve, KernelTooSmall) {
    Rng rng(12);
    auto pts = random_points(13, rng, 30);
    try {
        construct_nodal_curve(pts, 7, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("kernel too small"), std::string::npos);
    }
}

TEST(ConstructNodalCurve, NineGeneralPointsOnlyCarryDoubledCubic) {
    Rng rng(4);
    auto pts = random_points(9, rng, 10);
    EXPECT_EQ(kernel_basis(node_condition_matrix(pts, 6)).size(), 1u);
    try {
        construct_nodal_curve(pts, 6, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("genericity failure after 20 retries"), std::string::npos);
    }
}

TEST(ConstructNodalCurve, HalphenNineNodalSextic) {
    auto pts = halphen_points();
    EXPECT_EQ(kernel_basis(node_condition_matrix(pts, 6)).size(), 2u);
    ConstructionOptions opt;
    opt.require_irreducible = true;
    auto cfg = construct_nodal_curve(pts, 6, 11, opt);
    EXPECT_TRUE(cfg.complete);
    EXPECT_EQ(cfg.irreducible, std::optional<bool>(true));
    EXPECT_EQ(adjoint_condition_rank(cfg).rank, 9);
}

TEST(ConstructNodalCurve, GenusBoundEnforced) {
    EXPECT_THROW(construct_nodal_curve({pt(0, 0)}, 2, 1), Error);
}

TEST(AdjointConditionRank, SmallCases) {
    auto cubic = construct_nodal_curve({pt(0, 0)}, 3, 42);
    auto r = adjoint_condition_rank(cubic);
    EXPECT_EQ(r.rank, 1);
    EXPECT_TRUE(r.pass());
    auto conic = construct_nodal_curve({}, 2, 1);
    EXPECT_EQ(adjoint_condition_rank(conic).rank, 0);
    EXPECT_TRUE(adjoint_condition_rank(conic).pass());
}

TEST(AdjointConditionRank, ThreeNodalQuarticNodesNotCollinear) {
    auto cfg = construct_nodal_curve({pt(2, -1), pt(1, 3), pt(-2, 5)}, 4, 6);
    auto m = adjoint_condition_matrix(cfg.nodes, 4);
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_FALSE(determinant(m).is_zero());
    EXPECT_EQ(adjoint_condition_rank(cfg).rank, 3);
}

TEST(NodeConditionMatrix, SuperabundantDoubledCurves) {
    // Beyond the genus bound the expected count can fail: the doubled line
    // through 2 points and the doubled conic through 5 points.
    Rng rng(3);
    EXPECT_EQ(kernel_basis(node_condition_matrix(random_points(2, rng, 20), 2)).size(), 1u);
    EXPECT_EQ(kernel_basis(node_condition_matrix(random_points(5, rng, 20), 4)).size(), 1u);
}

TEST(AdjointConditionRank, CollinearNodesForceReducibleQuartic) {
    // A line through three nodes meets a quartic with multiplicity 6 > 4, so
    // the line is a component.
    std::vector<ExactPoint> pts{pt(0, 0), pt(1, 1), pt(2, 2)};
    auto cfg = construct_nodal_curve(pts, 4, 1);
    EXPECT_EQ(absolute_factor_count(cfg.curve), std::optional<int>(2));
    EXPECT_EQ(adjoint_condition_rank(cfg).rank, 2);
    ConstructionOptions opt;
    opt.require_irreducible = true;
    EXPECT_THROW(construct_nodal_curve(pts, 4, 1, opt), Error);
}
