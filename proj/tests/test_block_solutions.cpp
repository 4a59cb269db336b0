#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "gybe/block_solutions.hpp"
#include "gybe/registry.hpp"
#include "oracles.hpp"

using namespace gybe;

namespace {

const Complex kI{0.0, 1.0};

std::vector<double> theta_grid() {
    std::vector<double> g;
    for (int k = 0; k < 25; ++k) g.push_back(std::numbers::pi * k / 24.0);
    return g;
}

DiagBlock scaled_block(const ComplexMatrix& m, std::size_t r, std::size_t c) {
    return DiagBlock::from_matrix(m.block(r, c, 2, 2) * Complex(std::numbers::sqrt2), 1e-15);
}

}  // namespace

TEST(Rowell, MatchesDisplay) {
    const auto r = rowell_solution();
    EXPECT_LE(max_abs_diff(r.matrix(), oracle::rowell()), 1e-15);
    EXPECT_LE(std::abs(r.matrix()(0, 0) - oracle::expi(-std::numbers::pi / 4) / std::numbers::sqrt2), 1e-16);
    EXPECT_LE(is_unitary(r.matrix()).residual, 1e-14);
    EXPECT_EQ(r.signature(), (GybeSignature{2, 3, 1}));
}

TEST(XShape, MatchesDisplay) {
    const auto r = xshape_solution();
    EXPECT_EQ(r.matrix(), oracle::xshape());
    EXPECT_DOUBLE_EQ(r.matrix()(0, 0).real(), 1.0 / std::numbers::sqrt2);
    EXPECT_DOUBLE_EQ(r.matrix()(0, 7).real(), 1.0 / std::numbers::sqrt2);
    int nonzero = 0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if (r.matrix()(i, j) != Complex{}) {
                ++nonzero;
                EXPECT_TRUE(i == j || i + j == 7);
            }
    EXPECT_EQ(nonzero, 16);
    EXPECT_TRUE(check_gybe(r, Tolerance{1e-12}).passed);
    EXPECT_TRUE(is_unitary(r.matrix()).unitary);
}

class FamilyGrid : public ::testing::TestWithParam<int> {};

TEST_P(FamilyGrid, MatchesDisplayOnGrid) {
    const int f = GetParam();
    for (double t : theta_grid()) {
        EXPECT_LE(max_abs_diff(family_solution({f, t}).matrix(), oracle::family(f, t)), 1e-15) << "theta=" << t;
    }
}

TEST_P(FamilyGrid, SolvesAndIsUnitaryOnGrid) {
    const int f = GetParam();
    for (double t : theta_grid()) {
        const auto r = family_solution({f, t});
        EXPECT_TRUE(check_gybe(r, Tolerance{1e-12}).passed);
        EXPECT_LE(oracle::gybe_residual(r.matrix(), 2, 1), 1e-12);
        EXPECT_TRUE(is_unitary(r.matrix(), Tolerance{1e-12}).unitary);
        EXPECT_TRUE(check_far_commutativity(r, Tolerance{1e-12}).passed);
    }
}

TEST_P(FamilyGrid, IsGeneralSolutionWithUnitAlpha) {
    const int f = GetParam();
    for (double t : theta_grid()) {
        EXPECT_EQ(family_solution({f, t}).matrix(), general_solution({f, 1.0, std::polar(1.0, t)}).matrix());
    }
}

TEST_P(FamilyGrid, YbeOfXIffXEqualsY) {
    const int f = GetParam();
    for (double t : theta_grid()) {
        const auto s = general_block_solution({f, 1.0, std::polar(1.0, t)});
        const bool equal = max_abs_diff(s.x_matrix(), s.y_matrix()) <= 1e-12;
        EXPECT_EQ(check_ybe(s.x_matrix(), Tolerance{1e-12}).passed, equal) << "family " << f << " theta " << t;
        EXPECT_EQ(equal, f == 3 && t == std::numbers::pi);
    }
}

TEST_P(FamilyGrid, BaseSolutionMatchesDisplay) {
    const int k = GetParam();
    EXPECT_LE(max_abs_diff(base_solution(k).matrix(), oracle::base(k)), 1e-15);
    EXPECT_LE(max_abs_diff(general_solution({k, 1.0, 1.0}).matrix(), oracle::base(k)), 1e-15);
    const auto s = base_solution(k);
    EXPECT_LE(check_block_equations(s.x_matrix(), s.y_matrix(), Tolerance{1e-12}).residual, 1e-12);
}

TEST_P(FamilyGrid, BaseBlocksConjugateByListedPermutation) {
    const int k = GetParam();
    const auto p = oracle::xy_conjugator(k);
    const auto y = oracle::matmul(oracle::matmul(oracle::adjoint(p), oracle::base_x(k)), p);
    EXPECT_LE(oracle::max_diff(y, base_solution(k).y_matrix()), 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Families, FamilyGrid, ::testing::Values(1, 2, 3));

TEST(Family, ThirdAtPiHasEqualHalves) {
    const auto s = BlockSolution::from_matrix(family_solution({3, std::numbers::pi}).matrix());
    const ComplexMatrix expected =
        ComplexMatrix{{1, 0, 1, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0}, {0, 1, 0, 1}} * Complex(oracle::kInvSqrt2);
    EXPECT_LE(max_abs_diff(s.x_matrix(), expected), 1e-15);
    EXPECT_LE(max_abs_diff(s.y_matrix(), expected), 1e-15);
}

TEST(Family, SecondAtPiOverThreePasses) {
    const auto r = family_solution({2, std::numbers::pi / 3});
    EXPECT_LE(oracle::gybe_residual(r.matrix(), 2, 1), 1e-12);
}

TEST(Family, RejectsBadParameters) {
    EXPECT_THROW(family_solution({4, 0.0}), DomainError);
    EXPECT_THROW(family_solution({1, -0.1}), DomainError);
    EXPECT_THROW(family_solution({1, 3.2}), DomainError);
    EXPECT_THROW(general_solution({1, 2.0, 1.0}), DomainError);
    EXPECT_THROW(general_solution({1, 1.0, Complex(0.6, 0.6)}), DomainError);
}

TEST(Family, ClampsTinyOvershoot) {
    EXPECT_NO_THROW(family_solution({1, std::numbers::pi + 1e-12}));
    EXPECT_NO_THROW(family_solution({1, -1e-12}));
}

TEST(General, SecondFamilyAtIIPasses) {
    const auto r = general_solution({2, kI, kI});
    EXPECT_TRUE(check_gybe(r, Tolerance{1e-12}).passed);
    EXPECT_TRUE(is_unitary(r.matrix(), Tolerance{1e-12}).unitary);
}

TEST(General, RandomParametersSolve) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const int f = trial % 3 + 1;
        const auto r = general_solution({f, oracle::random_phase(rng), oracle::random_phase(rng)});
        EXPECT_LE(oracle::gybe_residual(r.matrix(), 2, 1), 1e-12);
        EXPECT_LE(oracle::unitarity_residual(r.matrix()), 1e-12);
    }
}

TEST(DeriveC, IdentityInputs) {
    const auto c = derive_c(DiagBlock::identity(), DiagBlock::identity(), DiagBlock::identity());
    EXPECT_EQ(c.p, Complex(-1.0));
    EXPECT_EQ(c.q, Complex(-1.0));
}

TEST(DeriveC, FirstBaseSolution) {
    const auto c = derive_c({1.0, kI}, {1.0, 1.0}, {kI, 1.0});
    EXPECT_LE(max_abs_diff(c, scaled_block(oracle::base_x(1), 2, 0)), 1e-15);
    EXPECT_LE(max_abs_diff(c, DiagBlock{-kI, -kI}), 1e-15);
}

TEST(DeriveC, SecondBaseSolution) {
    const auto c = derive_c({1.0, kI}, {1.0, 1.0}, {1.0, kI});
    EXPECT_LE(max_abs_diff(c, DiagBlock{-1.0, 1.0}), 1e-15);
}

TEST(DeriveC, RejectsNonUnitary) { EXPECT_THROW(derive_c({2.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}), DomainError); }

TEST(DeriveC, MakesXUnitary) {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        const DiagBlock a{1.0, oracle::random_phase(rng)};
        const DiagBlock b{oracle::random_phase(rng), oracle::random_phase(rng)};
        const DiagBlock d{oracle::random_phase(rng), oracle::random_phase(rng)};
        BlockSolution s;
        s.a = a;
        s.b = b;
        s.c = derive_c(a, b, d);
        s.d = d;
        EXPECT_LE(oracle::unitarity_residual(s.x_matrix()), 1e-12);
    }
}

TEST(DeriveY, MatchesBaseDisplays) {
    const FamilyConstants constants[] = {{kI, kI, 1.0}, {kI, 1.0, kI}, {1.0, 1.0, 1.0}};
    for (int k = 1; k <= 3; ++k) {
        const auto& fc = constants[k - 1];
        const auto y = derive_y(fc.omega, fc.gamma, fc.delta, 1.0, 1.0);
        const auto yd = oracle::base_y(k);
        EXPECT_LE(max_abs_diff(y[0], scaled_block(yd, 0, 0)), 1e-15) << k;
        EXPECT_LE(max_abs_diff(y[1], scaled_block(yd, 0, 2)), 1e-15) << k;
        EXPECT_LE(max_abs_diff(y[2], scaled_block(yd, 2, 0)), 1e-15) << k;
        EXPECT_LE(max_abs_diff(y[3], scaled_block(yd, 2, 2)), 1e-15) << k;
    }
}

TEST(DeriveY, ThirdFamilyValues) {
    const auto y = derive_y(1.0, 1.0, 1.0, 1.0, 1.0);
    EXPECT_LE(max_abs_diff(y[0], DiagBlock{1.0, 1.0}), 1e-15);
    EXPECT_LE(max_abs_diff(y[1], DiagBlock{-1.0, -1.0}), 1e-15);
    EXPECT_LE(max_abs_diff(y[2], DiagBlock{1.0, 1.0}), 1e-15);
    EXPECT_LE(max_abs_diff(y[3], DiagBlock{1.0, 1.0}), 1e-15);
}

TEST(DeriveY, MatchesThetaDisplays) {
    for (int f = 1; f <= 3; ++f) {
        const auto fc = family_constants(f);
        for (double t : {0.3, 1.9}) {
            const auto y = derive_y(fc.omega, fc.gamma, fc.delta, 1.0, std::polar(1.0, t));
            const auto yd = oracle::family_y(f, t);
            EXPECT_LE(max_abs_diff(y[1], scaled_block(yd, 0, 2)), 1e-15);
            EXPECT_LE(max_abs_diff(y[2], scaled_block(yd, 2, 0)), 1e-15);
        }
    }
}

TEST(DeriveY, RejectsOffCircle) { EXPECT_THROW(derive_y(1.0, 1.0, 1.0, 0.5, 1.0), DomainError); }

TEST(BlockEquations, RowellResidualsTiny) {
    const auto r = oracle::rowell();
    const auto rep = check_block_equations(r.block(0, 0, 4, 4), r.block(4, 4, 4, 4));
    ASSERT_EQ(rep.detail.size(), 8u);
    for (double v : rep.detail) EXPECT_LE(v, 1e-14);
}

TEST(BlockEquations, ThirdFamilyAtPiZero) {
    const auto x = oracle::family_x(3, std::numbers::pi);
    EXPECT_LE(check_block_equations(x, x).residual, 1e-15);
}

TEST(BlockEquations, MismatchedFamiliesFail) {
    const auto rep = check_block_equations(oracle::family_x(1, 0.5), oracle::family_y(2, 0.5));
    EXPECT_GT(rep.residual, 0.1);
    EXPECT_FALSE(rep.passed);
}

TEST(BlockEquations, ResidualEqualsLiftedResidual) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        auto r = general_solution({trial % 3 + 1, oracle::random_phase(rng), oracle::random_phase(rng)}).matrix();
        if (trial % 2 == 1) r(trial % 4, trial % 4) += 1e-3 * oracle::random_phase(rng);
        const auto rep = check_block_equations(r.block(0, 0, 4, 4), r.block(4, 4, 4, 4));
        EXPECT_NEAR(rep.residual, oracle::gybe_residual(r, 2, 1), 1e-14);
    }
}

TEST(BlockEquations, RejectsWrongSizes) { EXPECT_THROW(check_block_equations(ComplexMatrix::identity(2), ComplexMatrix::identity(4)), DimensionError); }

TEST(ParamConstraints, AdmissibleTuplesVanish) {
    for (auto [w, g, d] : {std::tuple<Complex, Complex, Complex>{kI, kI, 1.0}, {1.0, 1.0, 1.0}, {kI, 1.0, kI}, {-kI, -kI, 1.0}}) {
        const auto rep = check_param_constraints(w, g, d);
        ASSERT_EQ(rep.detail.size(), 10u);
        EXPECT_LE(rep.residual, 1e-15);
    }
}

TEST(ParamConstraints, IIIFailsThirdConsistencyEquation) {
    const auto rep = check_param_constraints(kI, kI, kI);
    EXPECT_FALSE(rep.passed);
    // (i - 1) i = -1 - i against -1 + i.
    EXPECT_NEAR(rep.detail[2], 2.0, 1e-15);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify_unitary_params(-kI, -kI, 1.0), ParamCategory::A);
    EXPECT_EQ(classify_unitary_params(kI, 1.0, kI), ParamCategory::B);
    EXPECT_EQ(classify_unitary_params(1.0, 1.0, 1.0), ParamCategory::C);
    EXPECT_EQ(classify_unitary_params(std::polar(1.0, std::numbers::pi / 3), 1.0, 1.0), ParamCategory::None);
    EXPECT_FALSE(check_param_constraints(std::polar(1.0, std::numbers::pi / 3), 1.0, 1.0).passed);
}

TEST(Classify, BruteForceOverFourthRoots) {
    const Complex roots[] = {1.0, -1.0, kI, -kI};
    std::vector<std::tuple<Complex, Complex, Complex>> admissible;
    for (Complex w : roots)
        for (Complex g : roots)
            for (Complex d : roots) {
                const bool by_constraints = check_param_constraints(w, g, d, Tolerance{kClassifyTolerance}).passed;
                const bool by_category = classify_unitary_params(w, g, d) != ParamCategory::None;
                EXPECT_EQ(by_constraints, by_category);
                if (by_category) admissible.emplace_back(w, g, d);
            }
    const std::vector<std::tuple<Complex, Complex, Complex>> expected{
        {kI, kI, 1.0}, {-kI, -kI, 1.0}, {kI, 1.0, kI}, {-kI, 1.0, -kI}, {1.0, 1.0, 1.0}};
    ASSERT_EQ(admissible.size(), expected.size());
    for (const auto& e : expected) EXPECT_NE(std::find(admissible.begin(), admissible.end(), e), admissible.end());
}

TEST(Classify, AgreesWithConstraintsOnRandomTriples) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 1000; ++trial) {
        const Complex w = oracle::random_phase(rng), g = oracle::random_phase(rng), d = oracle::random_phase(rng);
        EXPECT_EQ(check_param_constraints(w, g, d, Tolerance{kClassifyTolerance}).passed,
                  classify_unitary_params(w, g, d) != ParamCategory::None);
    }
}

TEST(Classify, Names) {
    EXPECT_EQ(to_string(ParamCategory::A), "A");
    EXPECT_EQ(to_string(ParamCategory::None), "none");
}

TEST(Reduction, IdentityBIsFixedPoint) {
    const auto s = base_solution(2);
    const auto red = reduce_to_b_identity(s);
    EXPECT_EQ(red.alpha, Complex(1.0));
    EXPECT_EQ(red.beta, Complex(1.0));
    EXPECT_LE(max_abs_diff(red.reduced, s), 1e-15);
}

TEST(Reduction, GeneralSolutionReducesToBase) {
    const auto red = reduce_to_b_identity(general_block_solution({1, kI, 1.0}));
    EXPECT_LE(max_abs_diff(red.reduced, base_solution(1)), 1e-15);
    std::mt19937_64 rng(79);
    for (int f = 1; f <= 3; ++f) {
        const auto r = reduce_to_b_identity(general_block_solution({f, oracle::random_phase(rng), oracle::random_phase(rng)}));
        EXPECT_LE(max_abs_diff(r.reduced, base_solution(f)), 1e-14);
    }
}

TEST(Reduction, ReducedCIsMinusDA) {
    std::mt19937_64 rng(83);
    const auto s = general_block_solution({2, oracle::random_phase(rng), oracle::random_phase(rng)});
    const auto red = reduce_to_b_identity(s);
    EXPECT_LE(max_abs_diff(red.reduced.c, -(s.d * s.a)), 1e-15);
    EXPECT_LE(max_abs_diff(red.reduced.b, DiagBlock::identity()), 1e-12);
}

TEST(Reduction, IsConjugationOfBothHalves) {
    std::mt19937_64 rng(89);
    const Complex alpha = oracle::random_phase(rng), beta = oracle::random_phase(rng);
    const auto s = general_block_solution({3, alpha, beta});
    const auto red = reduce_to_b_identity(s).reduced;
    const ComplexMatrix px = oracle::block_diag(oracle::eye(2), ComplexMatrix::diagonal({alpha, beta}));
    const Complex k = std::conj(alpha) * beta;
    const ComplexMatrix py = oracle::block_diag(oracle::eye(2), ComplexMatrix::diagonal({k * alpha, k * beta}));
    EXPECT_LE(oracle::max_diff(red.x_matrix(), oracle::matmul(oracle::matmul(px, s.x_matrix()), oracle::adjoint(px))), 1e-15);
    EXPECT_LE(oracle::max_diff(red.y_matrix(), oracle::matmul(oracle::matmul(py, s.y_matrix()), oracle::adjoint(py))), 1e-15);
}

TEST(Reduction, RoundTrip) {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = general_block_solution({trial % 3 + 1, oracle::random_phase(rng), oracle::random_phase(rng)});
        const auto red = reduce_to_b_identity(s);
        EXPECT_LE(max_abs_diff(restore(red.reduced, s.b), s), 1e-14);
    }
}

TEST(Reduction, RejectsNonUnitaryX) {
    auto s = base_solution(1);
    s.a = {2.0, 1.0};
    EXPECT_THROW(reduce_to_b_identity(s), DomainError);
}

TEST(BlockSolution, SplitRejectsOffBlockEntries) {
    ComplexMatrix r = oracle::rowell();
    r(0, 5) = 0.5;
    EXPECT_THROW(BlockSolution::from_matrix(r), DomainError);
    r = oracle::rowell();
    r(0, 1) = 0.5;
    EXPECT_THROW(BlockSolution::from_matrix(r), DomainError);
    EXPECT_THROW(BlockSolution::from_matrix(ComplexMatrix::identity(4)), DimensionError);
}

TEST(BlockSolution, SplitRoundTrip) {
    const auto s = BlockSolution::from_matrix(oracle::rowell());
    EXPECT_LE(max_abs_diff(s.matrix(), oracle::rowell()), 1e-15);
    EXPECT_TRUE(s.x_diagonally_unitary());
}

TEST(Conjugates, FirstBaseConjugateIsMinusISolution) {
    const auto r = conjugate_solution(base_solution(1).to_rmatrix("base1"));
    EXPECT_EQ(r.label(), "conj:base1");
    EXPECT_TRUE(check_gybe(r).passed);
    const auto s = BlockSolution::from_matrix(r.matrix());
    EXPECT_EQ(classify_unitary_params(s.a.q, s.d.p, s.d.q), ParamCategory::A);
    EXPECT_LE(std::abs(s.a.q + kI), 1e-15);
}

TEST(Registry, ResolvesEveryListedId) {
    for (const auto& e : registry_entries()) {
        const RMatrix r = resolve_solution(e.id);
        EXPECT_TRUE(check_gybe(r).passed) << e.id;
    }
}

TEST(Registry, ParameterizedIds) {
    EXPECT_EQ(resolve_solution("family1:theta=0.5").matrix(), family_solution({1, 0.5}).matrix());
    EXPECT_EQ(resolve_solution("family2:alpha=0,1:beta=-1,0").matrix(), general_solution({2, kI, -1.0}).matrix());
    EXPECT_EQ(resolve_solution("conj:family3:theta=1").matrix(), conjugate(family_solution({3, 1.0}).matrix()));
    EXPECT_EQ(resolve_solution("base2").label(), "base2");
}

TEST(Registry, MalformedIds) {
    EXPECT_THROW(resolve_solution("nope"), ParseError);
    EXPECT_THROW(resolve_solution("family4:theta=1"), ParseError);
    EXPECT_THROW(resolve_solution("family1:theta=abc"), ParseError);
    EXPECT_THROW(resolve_solution("family1:alpha=1,0"), ParseError);
    EXPECT_THROW(resolve_solution("family1:theta=4"), DomainError);
    EXPECT_THROW(resolve_solution("family1:alpha=2,0:beta=1,0"), DomainError);
}
