#include <gtest/gtest.h>

#include <set>

#include "severi/incidence.hpp"
#include "severi/parse.hpp"

using namespace severi;

namespace {

ExactPoint pt(long x, long y, long z = 1) { return ExactPoint(QComplex(x), QComplex(y), QComplex(z)); }

ExactConfiguration nodal_cubic() {
    ExactCurve c(parse_form("Y^2*Z - X^3 - X^2*Z"));
    return {c, {pt(0, 0)}, {classify_singularity(c, pt(0, 0))}, true};
}

ExactConfiguration quartic(std::vector<ExactPoint> pts, std::uint64_t seed) {
    ConstructionOptions opt;
    opt.require_irreducible = true;
    return construct_nodal_curve(pts, 4, seed, opt);
}

}  // namespace

TEST(AssembleJacobian, NodalCubicPointBlock) {
    auto j = assemble_jacobian(nodal_cubic());
    ASSERT_EQ(j.matrix.rows(), 3u);
    ASSERT_EQ(j.matrix.cols(), 12u);
    const QComplex expected[3][2] = {{QComplex(0), QComplex(0)}, {QComplex(-2), QComplex(0)}, {QComplex(0), QComplex(2)}};
    for (int r = 0; r < 3; ++r)
        for (int w = 0; w < 2; ++w) EXPECT_EQ(j.matrix(r, j.point_column(0, w)), expected[r][w]);
    EXPECT_TRUE(block_structure_holds(j));
}

TEST(AssembleJacobian, EmptyForSmoothCurve) {
    ExactCurve c(parse_form("X^5 + Y^5 + Z^5"));
    ExactConfiguration cfg{c, {}, {}, true};
    auto j = assemble_jacobian(cfg);
    EXPECT_EQ(j.matrix.rows(), 0u);
    EXPECT_EQ(certified_rank(j).rank, 0);
    auto t = tangent_dimension(cfg);
    EXPECT_EQ(t.dimension, 20);
    EXPECT_TRUE(t.pass());
}

TEST(AssembleJacobian, TwoNodalQuarticSparsity) {
    auto cfg = quartic({pt(1, 2), pt(-1, 3)}, 5);
    auto j = assemble_jacobian(cfg);
    for (std::size_t r = 3; r < 6; ++r)
        for (int w = 0; w < 2; ++w) EXPECT_TRUE(j.matrix(r, j.point_column(0, w)).is_zero());
    EXPECT_EQ(certified_rank(j).rank, 6);
    EXPECT_EQ(tangent_dimension(cfg).dimension, 12);
}

TEST(AssembleJacobian, RejectsUnverifiedConfigurations) {
    ExactCurve c(parse_form("Y^2*Z - X^3 - X^2*Z"));
    for (auto p : {pt(1, 0), pt(2, 5)}) {
        ExactConfiguration cfg{c, {p}};
        try {
            assemble_jacobian(cfg);
            FAIL();
        } catch (const Error& e) {
            EXPECT_NE(std::string(e.what()).find("unverified configuration"), std::string::npos);
        }
    }
    ExactConfiguration cusp{ExactCurve(parse_form("Y^2*Z - X^3")), {pt(0, 0)}};
    EXPECT_THROW(assemble_jacobian(cusp), Error);
}

TEST(TangentDimension, NodalCubic) {
    auto t = tangent_dimension(nodal_cubic());
    EXPECT_EQ(t.rank, 3);
    EXPECT_EQ(t.dimension, 8);
    EXPECT_EQ(t.expected, 8);
    EXPECT_TRUE(t.pass());
}

TEST(TangentDimension, ThreeNodalQuartic) {
    auto t = tangent_dimension(quartic({pt(0, 0), pt(1, 0), pt(0, 1)}, 3));
    EXPECT_EQ(t.rank, 9);
    EXPECT_EQ(t.dimension, 11);
    EXPECT_TRUE(t.pass());
}

TEST(TangentDimension, FloatModeMatchesExact) {
    auto cfg = quartic({pt(2, 1), pt(-1, 3), pt(1, -2, 0)}, 8);
    auto te = tangent_dimension(cfg);
    auto tf = tangent_dimension(cfg.to_float());
    EXPECT_EQ(tf.rank, te.rank);
    EXPECT_EQ(tf.dimension, te.dimension);
    EXPECT_EQ(tf.certificate.mode, Mode::floating);
    EXPECT_GE(tf.certificate.sv_gap, 1e3);
}

TEST(CertifiedRank, AmbiguousGapIsRejected) {
    Matrix<Complex> m(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-9;
    m(2, 2) = 1e-11;
    try {
        certified_rank(m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("rank uncertified"), std::string::npos);
    }
    m(2, 2) = 1e-14;
    EXPECT_EQ(certified_rank(m).rank, 2);
}

TEST(CrossChecks, BlockEliminationAndAffineChart) {
    Rng rng(17);
    for (int d = 3; d <= 5; ++d)
        for (int n = 1; n <= arithmetic_genus(d) && 3 * n <= monomial_count(d); ++n) {
            auto cfg = construct_nodal_curve(random_points(n, rng), d, 100 + d * 10 + n);
            auto j = assemble_jacobian(cfg);
            const int r = certified_rank(j).rank;
            EXPECT_EQ(r, 3 * n);
            EXPECT_EQ(block_elimination_rank(j), r);
            EXPECT_EQ(affine_chart_rank(j, cfg.curve), r);
            auto e = block_eliminate(j);
            for (int k = 0; k < n; ++k)
                for (std::size_t c = 0; c < j.coefficient_columns(); ++c) {
                    EXPECT_TRUE(e(3 * k + 1, c).is_zero());
                    EXPECT_TRUE(e(3 * k + 2, c).is_zero());
                }
            auto jf = assemble_jacobian(cfg.to_float());
            EXPECT_EQ(block_elimination_rank(jf), r);
            EXPECT_EQ(affine_chart_rank(jf, cfg.curve.to_float()), r);
        }
}

TEST(CrossChecks, RankInvariantUnderScalingAndPermutation) {
    auto cfg = quartic({pt(2, 1), pt(-1, 3), pt(3, 3)}, 2);
    const int r = certified_rank(assemble_jacobian(cfg)).rank;
    ExactConfiguration scaled = cfg;
    scaled.curve = ExactCurve(cfg.curve.form().scaled(QComplex(Rational(3, 7), Rational(1))));
    EXPECT_EQ(certified_rank(assemble_jacobian(scaled)).rank, r);
    for (const auto& o : fiber_orderings(cfg)) EXPECT_EQ(certified_rank(assemble_jacobian(o)).rank, r);
}

TEST(FiberOrderings, Counts) {
    EXPECT_EQ(fiber_orderings(nodal_cubic()).size(), 1u);
    ExactConfiguration smooth{ExactCurve(parse_form("X^2 + Y^2 + Z^2")), {}, {}, true};
    EXPECT_EQ(fiber_orderings(smooth).size(), 1u);
    auto cfg = quartic({pt(0, 0), pt(1, 0), pt(0, 1)}, 3);
    auto all = fiber_orderings(cfg);
    ASSERT_EQ(all.size(), 6u);
    std::set<std::string> distinct;
    for (const auto& o : all) {
        std::string key;
        for (const auto& p : o.nodes) key += to_string(p);
        distinct.insert(key);
        EXPECT_EQ(o.curve, cfg.curve);
    }
    EXPECT_EQ(distinct.size(), 6u);
    EXPECT_EQ(fiber_cardinality(cfg), 6);
}

TEST(FiberOrderings, IncompleteNodeListRejected) {
    ExactConfiguration partial = nodal_cubic();
    partial.complete = false;
    EXPECT_THROW(fiber_orderings(partial), Error);
}

TEST(DimensionEquality, Examples) {
    auto a = dimension_equality_check(nodal_cubic());
    EXPECT_EQ(a.source_dimension, 8);
    EXPECT_EQ(a.target_dimension, 8);
    EXPECT_EQ(a.fiber_dimension, 0);
    EXPECT_EQ(a.fiber_cardinality, 1);
    EXPECT_TRUE(a.pass());

    ExactConfiguration smooth{ExactCurve(parse_form("X^3 + Y^3 + Z^3")), {}, {}, true};
    auto b = dimension_equality_check(smooth);
    EXPECT_EQ(b.source_dimension, 9);
    EXPECT_TRUE(b.pass());

    auto c = dimension_equality_check(quartic({pt(1, 2), pt(-1, 3)}, 5));
    EXPECT_EQ(c.source_dimension, 12);
    EXPECT_EQ(c.target_dimension, 12);
    EXPECT_EQ(c.fiber_cardinality, 2);
    EXPECT_TRUE(c.pass());
}
