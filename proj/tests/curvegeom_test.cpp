#include <gtest/gtest.h>

#include "severi/curve.hpp"
#include "severi/numerical_polynomial.hpp"
#include "severi/parse.hpp"

using namespace severi;

namespace {

ExactCurve curve(const char* s) { return ExactCurve(parse_form(s)); }
ExactPoint pt(long x, long y, long z) { return ExactPoint(QComplex(x), QComplex(y), QComplex(z)); }

}  // namespace

TEST(SingularPoints, NodalCubic) {
    // symbolic oracle on Z = 1: f = y^2 - x^3 - x^2, f_xx = -6x - 2, f_yy = 2, f_xy = 0
    auto sp = singular_points(curve("Y^2*Z - X^3 - X^2*Z"));
    ASSERT_EQ(sp.size(), 1u);
    ASSERT_TRUE(sp[0].exact_location.has_value());
    EXPECT_TRUE(sp[0].exact_location->same_as(pt(0, 0, 1)));
    EXPECT_TRUE(sp[0].is_node());
    EXPECT_EQ(sp[0].chart, Chart{Variable::Z});
    EXPECT_EQ(sp[0].hessian_determinant, Complex(-4.0, 0.0));
}

TEST(SingularPoints, CuspidalCubic) {
    auto sp = singular_points(curve("Y^2*Z - X^3"));
    ASSERT_EQ(sp.size(), 1u);
    ASSERT_TRUE(sp[0].exact_location.has_value());
    EXPECT_TRUE(sp[0].exact_location->same_as(pt(0, 0, 1)));
    EXPECT_FALSE(sp[0].is_node());
    EXPECT_EQ(sp[0].hessian_determinant, Complex(0.0, 0.0));
}

TEST(SingularPoints, SmoothConicAndLine) {
    EXPECT_TRUE(singular_points(curve("X^2 + Y^2 - Z^2")).empty());
    EXPECT_TRUE(singular_points(curve("X + 2*Y - Z")).empty());
}

TEST(SingularPoints, IrrationalNodesOfConicTimesLine) {
    // X + Y = 0 meets X^2 + Y^2 = Z^2 at [1 : -1 : ±sqrt 2].
    auto sp = singular_points(curve("(X^2 + Y^2 - Z^2)*(X + Y)"));
    ASSERT_EQ(sp.size(), 2u);
    for (const auto& s : sp) {
        EXPECT_TRUE(s.is_node());
        EXPECT_FALSE(s.exact_location.has_value());
        FloatPoint expect_plus(Complex(1), Complex(-1), Complex(std::sqrt(2.0)));
        FloatPoint expect_minus(Complex(1), Complex(-1), Complex(-std::sqrt(2.0)));
        EXPECT_TRUE(s.location.same_as(expect_plus) || s.location.same_as(expect_minus));
    }
    EXPECT_FALSE(sp[0].location.same_as(sp[1].location));
}

TEST(SingularPoints, TriangleOfLines) {
    auto sp = singular_points(curve("(X + Y)*(X - Y)*Z"));
    ASSERT_EQ(sp.size(), 3u);
    std::vector<ExactPoint> expected{pt(0, 0, 1), pt(1, -1, 0), pt(1, 1, 0)};
    for (const auto& e : expected) {
        bool hit = false;
        for (const auto& s : sp) hit = hit || (s.exact_location && s.exact_location->same_as(e));
        EXPECT_TRUE(hit) << to_string(e);
    }
    for (const auto& s : sp) EXPECT_TRUE(s.is_node());
}

TEST(SingularPoints, ConcurrentLinesGiveATriplePoint) {
    auto sp = singular_points(curve("X*Y*(X - Y)"));
    ASSERT_EQ(sp.size(), 1u);
    EXPECT_TRUE(sp[0].exact_location->same_as(pt(0, 0, 1)));
    EXPECT_FALSE(sp[0].is_node());
}

TEST(SingularPoints, PointsAtInfinityAndComplexCoordinates) {
    // x^2 + y^2 = 0 over C is two lines through [0:0:1]; a node.
    auto sp = singular_points(curve("X^2 + Y^2"));
    ASSERT_EQ(sp.size(), 1u);
    EXPECT_TRUE(sp[0].is_node());
    // Nodal cubic moved so its node sits at infinity [0:1:0].
    auto far = singular_points(curve("X^2*Y - Z^3 - Z^2*Y"));
    ASSERT_EQ(far.size(), 1u);
    EXPECT_TRUE(far[0].exact_location->same_as(pt(0, 1, 0)));
    EXPECT_TRUE(far[0].is_node());
    EXPECT_EQ(far[0].chart, Chart{Variable::Y});
}

TEST(SingularPoints, NonReducedInputIsRejected) {
    EXPECT_THROW(singular_points(curve("X^2*Z")), NonIsolatedSingularities);
    EXPECT_THROW(singular_points(curve("(X^2 + Y^2 - Z^2)^2")), NonIsolatedSingularities);
}

TEST(SingularPoints, DegreeCap) {
    Tolerances tol;
    tol.degree_cap = 3;
    EXPECT_THROW(singular_points(curve("X^4 + Y^4 - Z^4"), tol), Error);
}

TEST(SingularPoints, FloatModeNodalCubic) {
    auto sp = singular_points(curve("Y^2*Z - X^3 - X^2*Z").to_float());
    ASSERT_EQ(sp.size(), 1u);
    EXPECT_TRUE(sp[0].location.same_as(FloatPoint(Complex(0), Complex(0), Complex(1))));
    EXPECT_TRUE(sp[0].is_node());
    EXPECT_NEAR(sp[0].hessian_determinant.real(), -4.0, 1e-9);
}

TEST(ClassifySingularity, HessianCriterion) {
    auto nodal = classify_singularity(curve("Y^2*Z - X^3 - X^2*Z"), pt(0, 0, 1));
    EXPECT_TRUE(nodal.is_node());
    EXPECT_EQ(nodal.hessian_determinant, Complex(-4.0, 0.0));
    EXPECT_FALSE(classify_singularity(curve("Y^2*Z - X^3"), pt(0, 0, 1)).is_node());
    EXPECT_THROW(classify_singularity(curve("Y^2*Z - X^3"), pt(1, 1, 1)), Error);
    EXPECT_THROW(classify_singularity(curve("Y^2*Z - X^3 - X^2*Z"), pt(0, 1, 0)), Error);
}

TEST(ClassifySingularity, TransversalCrossingOfSmoothBranches) {
    auto c = ExactCurve(parse_form("(X^2 + Y^2 - Z^2)*(X + Y)")).to_float();
    const double r = std::sqrt(2.0);
    auto s = classify_singularity(c, FloatPoint(Complex(1), Complex(-1), Complex(r)));
    EXPECT_TRUE(s.is_node());
}

TEST(ClassifySingularity, VerdictIsChartIndependent) {
    struct Case {
        const char* form;
        ExactPoint p;
    };
    std::vector<Case> cases{{"(X + Y)*(X - Y)*Z", pt(1, 1, 0)},
                            {"(X - Z)*(Y - Z)*(X + Y - 3*Z)", pt(1, 1, 1)},
                            {"Y^2*Z - X^3 - X^2*Z", pt(0, 0, 1)},
                            {"(Y - Z)^2*Z - (X - Z)^3", pt(1, 1, 1)},
                            {"X*Y*(X - Y) + Z^3 - Z^3", pt(0, 0, 1)}};
    for (const auto& cs : cases) {
        ExactCurve c(parse_form(cs.form));
        std::optional<bool> verdict;
        for (Variable v : {Variable::X, Variable::Y, Variable::Z}) {
            if (!cs.p.lies_in({v})) continue;
            bool node = classify_singularity(c, cs.p, Chart{v}).is_node();
            if (verdict)
                EXPECT_EQ(*verdict, node) << cs.form;
            verdict = node;
        }
    }
}

TEST(Membership, NodalCubicIsInD31) {
    auto m = membership(curve("Y^2*Z - X^3 - X^2*Z"));
    EXPECT_EQ(m.irreducible, std::optional<bool>(true));
    EXPECT_TRUE(m.squarefree);
    EXPECT_EQ(m.node_count, 1);
    EXPECT_TRUE(m.all_singularities_nodal);
    EXPECT_TRUE(m.in_nodal_locus(1));
    EXPECT_FALSE(m.in_nodal_locus(0));
}

TEST(Membership, TriangleIsReducible) {
    auto m = membership(curve("(X + Y)*(X - Y)*Z"));
    EXPECT_EQ(m.irreducible, std::optional<bool>(false));
    EXPECT_EQ(m.factor_count, std::optional<int>(3));
    EXPECT_EQ(m.node_count, 3);
    EXPECT_TRUE(m.all_singularities_nodal);
    EXPECT_FALSE(m.in_nodal_locus(3));
}

TEST(Membership, CuspidalCubicIsNotNodal) {
    auto m = membership(curve("Y^2*Z - X^3"));
    EXPECT_EQ(m.irreducible, std::optional<bool>(true));
    EXPECT_EQ(m.singular_count, 1);
    EXPECT_EQ(m.node_count, 0);
    EXPECT_FALSE(m.all_singularities_nodal);
    EXPECT_FALSE(m.in_nodal_locus(1));
}

TEST(Membership, NonReducedIsDescribedNotRejected) {
    auto m = membership(curve("X^2*Z"));
    EXPECT_FALSE(m.squarefree);
    EXPECT_TRUE(m.singularities.empty());
}

TEST(AbsoluteFactorCount, KnownFactorizations) {
    EXPECT_EQ(absolute_factor_count(curve("X^2 + Y^2 - Z^2")), std::optional<int>(1));
    // irreducible over Q, two lines over C
    EXPECT_EQ(absolute_factor_count(curve("X^2 + Y^2")), std::optional<int>(2));
    EXPECT_EQ(absolute_factor_count(curve("(X^2 + Y^2 - Z^2)*(X + Y)")), std::optional<int>(2));
    EXPECT_EQ(absolute_factor_count(curve("(X^2 + Y^2 - Z^2)*(X^2 + Y^2 - 4*Z^2)")), std::optional<int>(2));
    EXPECT_EQ(absolute_factor_count(curve("X^4 + Y^4 - Z^4")), std::optional<int>(1));
    EXPECT_EQ(absolute_factor_count(curve("X^3 - Y^3")), std::optional<int>(3));
}

TEST(Genus, Formulas) {
    EXPECT_EQ(geometric_genus(3, 1), 0);
    EXPECT_EQ(geometric_genus(4, 2), 1);
    EXPECT_EQ(geometric_genus(1, 0), 0);
    EXPECT_EQ(geometric_genus(4, 3), 0);
    EXPECT_THROW(geometric_genus(3, 2), Error);
    EXPECT_THROW(arithmetic_genus(0), Error);
    for (int d = 1; d <= 30; ++d)
        EXPECT_EQ(Rational(arithmetic_genus(d)), Rational(1) - hilbert_polynomial_plane_curve(d).eval(QComplex(0)).re);
}
