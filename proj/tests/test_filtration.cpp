/* Copyright 2026 The Loday Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
 // Tests for the primitive filtration, its spectral sequence and the
 // five-term comparison sequence.

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "loday/filtration.hpp"

namespace loday {
namespace {

    using testing::data_algebra;

    struct Case {
        std::string name;
        LeibnizAlgebra g;
        Caps caps;
    };

    std::vector<Case> cases() {
        return {
            {"free(2,4)", free_leibniz(2, 4), {4, 4}},
            {"ef_square", data_algebra("ef_square"), {5, 5}},
            {"lie2", data_algebra("lie2"), {5, 1}},
            {"right_action2", data_algebra("right_action2"), {5, 1}},
            {"abelian3", data_algebra("abelian3"), {4, 3}},
        };
    }

    std::size_t total_dim(const SpectralPage& page, int p, int q) {
        std::size_t s = 0;
        for (const auto& [i, n] : page.dims)
            if (i.p == p && i.q == q) s += n;
        return s;
    }

    TEST(Filtration, LowLevels) {
        PrimitiveFiltration f = primitive_filtration(free_leibniz(2, 4), {4, 4});
        EXPECT_FALSE(check_filtration_shape(f));
        EXPECT_EQ(f.level(0, {0, 0}).dim(), 1u);
        for (auto b : f.basis().blocks()) {
            if (b.degree == 0) continue;
            EXPECT_EQ(f.level(0, b).dim(), 0u);
            EXPECT_EQ(f.level(1, b), f.primitives().at(b));
            // every word is a product of at most length-many letters, and letters are primitive
            EXPECT_EQ(f.level(b.degree, b).dim(), f.basis().dim(b));
        }
        // weight-2 tensors in the two generators: sx sx, sy sy and sx sy + sy sx are primitive
        Block t2{2, 2};
        EXPECT_EQ(f.basis().dim(t2), 4u);
        EXPECT_EQ(f.level(1, t2).dim(), 3u);
        EXPECT_EQ(f.level(2, t2).dim(), 4u);
        TensorElement sym;
        sym.add(Word{0, 1}, 1);
        sym.add(Word{1, 0}, 1);
        EXPECT_TRUE(f.level(1, t2).contains(f.basis().vector(sym, t2)));
        EXPECT_FALSE(f.level(1, t2).contains(f.basis().vector(TensorElement(Word{0, 1}), t2)));
    }

    TEST(Filtration, StableForValidAlgebras) {
        for (const auto& c : cases()) {
            PrimitiveFiltration f = primitive_filtration(c.g, c.caps);
            EXPECT_FALSE(check_filtration_shape(f)) << c.name;
            EXPECT_FALSE(check_filtration_stability(f)) << c.name;
        }
    }

    TEST(Filtration, AbelianIsTrivial) {
        PrimitiveFiltration f = primitive_filtration(data_algebra("abelian3"), {4, 3});
        for (auto b : f.basis().blocks())
            if (b.degree > 0) EXPECT_TRUE(f.complex().chain().differential(b).is_zero());
        EXPECT_FALSE(check_filtration_stability(f));
    }

    TEST(Filtration, CorruptedProductBreaksTheComplex) {
        auto g = data_algebra("non_leibniz");
        ASSERT_TRUE(check_leibniz(g));
        PrimitiveFiltration f = primitive_filtration(g, {4, 1});
        EXPECT_TRUE(check_square_zero(f.complex().chain()));
        EXPECT_THROW(spectral_pages(f), ConsistencyError);
    }

    TEST(AssociatedGraded, MatchesSymmetricPowers) {
        for (const auto& c : cases()) {
            PrimitiveFiltration f = primitive_filtration(c.g, c.caps);
            AssociatedGraded gr = associated_graded(f);
            EXPECT_TRUE(gr.ok()) << c.name;
            for (const auto& [b, n] : gr.totals()) EXPECT_EQ(n, f.basis().dim(b)) << c.name;
            for (const auto& p : gr.pieces)
                if (p.level == 1) EXPECT_EQ(p.dim, f.primitives().at(p.block).dim()) << c.name;
        }
    }

    TEST(AssociatedGraded, TwoOddGenerators) {
        PrimitiveFiltration f = primitive_filtration(free_leibniz(2, 4), {4, 4});
        AssociatedGraded gr = associated_graded(f);
        for (const auto& p : gr.pieces)
            if (p.block == Block{2, 2} && p.level == 2) {
                EXPECT_EQ(p.dim, 1u);
                EXPECT_EQ(p.sym_dim, 1u);
            }
    }

    TEST(SpectralSequence, FirstPage) {
        for (const auto& c : cases()) {
            ComparisonData d(c.g, c.caps);
            SpectralSequence ss(d.filtration);
            const auto& e1 = ss.page(1);
            for (const auto& [i, n] : e1.dims) {
                EXPECT_GE(i.p, 0);
                EXPECT_GE(i.q, 0);
                if (i.p == 0) EXPECT_EQ(n, (i.q == 0 && i.weight == 0) ? 1u : 0u) << c.name;
                if (i.p == 1) EXPECT_EQ(n, d.hlie.betti({i.q + 1, i.weight})) << c.name;
            }
            E1Check check = check_e1(ss, d.hlie);
            EXPECT_TRUE(check.ok()) << c.name;
            EXPECT_FALSE(check_vanishing_zone(ss, d.hlie)) << c.name;
        }
    }

    TEST(SpectralSequence, DifferentialsAndSecondPage) {
        for (const auto& c : cases()) {
            PrimitiveFiltration f = primitive_filtration(c.g, c.caps);
            SpectralSequence ss(f, 17);
            EXPECT_TRUE(ss.d1_well_defined()) << c.name;
            EXPECT_FALSE(check_d1_square_zero(ss)) << c.name;
            EXPECT_FALSE(check_e2_routes(ss)) << c.name;
            EXPECT_FALSE(check_d1_column2_vanishing(ss)) << c.name;
            // d0 lowers q, d1 lowers p
            for (const auto& [i, m] : ss.page(0).differentials) {
                EXPECT_EQ(m.cols(), ss.page(0).dim(i));
                EXPECT_EQ(m.rows(), ss.page(0).dim({i.p, i.q - 1, i.weight}));
            }
            for (const auto& [i, m] : ss.page(1).differentials) {
                EXPECT_EQ(m.cols(), ss.page(1).dim(i));
                EXPECT_EQ(m.rows(), ss.page(1).dim({i.p - 1, i.q, i.weight}));
            }
        }
    }

    TEST(SpectralSequence, BottomRowIsChevalleyEilenberg) {
        for (const auto& c : cases()) {
            ComparisonData d(c.g, c.caps);
            SpectralSequence ss(d.filtration);
            BottomRow row = identify_bottom_row(ss, d.lie, d.ce);
            EXPECT_TRUE(row.ok()) << c.name;
            EXPECT_TRUE(check_edge_compatibility(ss, row, d.comparison).empty()) << c.name;
        }
    }

    TEST(SpectralSequence, FreeBottomRow) {
        PrimitiveFiltration f = primitive_filtration(free_leibniz(2, 4), {4, 4});
        SpectralSequence ss(f);
        const auto& e2 = ss.page(2);
        EXPECT_EQ(e2.dim({0, 0, 0}), 1u);
        EXPECT_EQ(e2.dim({1, 0, 1}), 2u);
        EXPECT_EQ(total_dim(e2, 1, 0), 2u);
        EXPECT_EQ(total_dim(e2, 2, 0), 0u);
        // the free case collapses: nothing off the bottom row
        for (const auto& [i, n] : e2.dims)
            if (i.q > 0) EXPECT_EQ(n, 0u);
    }

    TEST(SpectralSequence, AbelianBottomRowHasNoDifferential) {
        PrimitiveFiltration f = primitive_filtration(data_algebra("abelian3"), {4, 3});
        SpectralSequence ss(f);
        for (const auto& [i, m] : ss.page(1).differentials) EXPECT_TRUE(m.is_zero());
    }

    TEST(SpectralSequence, EfSquareBottomRow) {
        PrimitiveFiltration f = primitive_filtration(data_algebra("ef_square"), {5, 5});
        SpectralSequence ss(f);
        // CE of the one-dimensional abelian Lie algebra spanned by the class of f
        EXPECT_EQ(total_dim(ss.page(1), 0, 0), 1u);
        EXPECT_EQ(ss.page(1).dim({1, 0, 1}), 1u);
        EXPECT_EQ(total_dim(ss.page(1), 1, 0), 1u);
        for (int p = 2; p <= 4; ++p) EXPECT_EQ(total_dim(ss.page(1), p, 0), 0u);
    }

    TEST(FiveTerm, FreeAlgebraHasNoObstruction) {
        FiveTermReport r = five_term_check(free_leibniz(2, 4), {4, 4});
        EXPECT_FALSE(r.n);
        EXPECT_TRUE(r.item1_consistent);
        EXPECT_EQ(r.iso_degrees, (std::vector<int>{0, 1, 2, 3}));
        EXPECT_TRUE(r.ok());
    }

    TEST(FiveTerm, EfSquare) {
        auto g = data_algebra("ef_square");
        ComparisonData d(g, {5, 5});
        // by hand: in weight 3, d(sf sf sf) = sf se and sf se, se sf are cycles
        EXPECT_EQ(d.hl.betti({2, 3}), 1u);
        EXPECT_EQ(d.hl.betti_in_degree(2), 1u);
        EXPECT_EQ(d.hce.betti_in_degree(2), 0u);
        FiveTermReport r = five_term_check(d);
        ASSERT_TRUE(r.n);
        EXPECT_EQ(*r.n, 2);
        EXPECT_EQ(d.hlie.betti({2, 3}), 1u);
        EXPECT_TRUE(r.iso_below_n);
        EXPECT_TRUE(r.sequence_checked);
        EXPECT_TRUE(r.exact());
        EXPECT_FALSE(r.kappa_iso);
        EXPECT_TRUE(r.ok());
    }

    TEST(FiveTerm, OtherAlgebras) {
        for (const auto& c : cases()) {
            FiveTermReport r = five_term_check(c.g, c.caps);
            EXPECT_TRUE(r.ok()) << c.name;
            // comparison iso everywhere in range exactly when no higher Lie(sg) homology shows up
            const bool iso_everywhere = static_cast<int>(r.iso_degrees.size()) == r.known_degree + 1;
            if (!r.n) EXPECT_TRUE(iso_everywhere) << c.name;
            if (r.n && r.sequence_checked) EXPECT_FALSE(iso_everywhere) << c.name;
        }
    }

}  // namespace
}  // namespace loday
