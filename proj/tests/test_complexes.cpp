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
 // Tests for the Leibniz, Pirashvili and Chevalley-Eilenberg complexes and
 // the homology engine.

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "loday/complexes.hpp"
#include "properties.hpp"

namespace loday {
namespace {

    using testing::data_algebra;

    TensorElement letter(int i) { return TensorElement(Word{i}); }

    TEST(LeibnizDifferential, Examples) {
        auto g = data_algebra("lie2");  // x y = y, y x = -y
        EXPECT_TRUE(leibniz_differential(g, Word{0}).empty());
        EXPECT_EQ(leibniz_differential(g, Word{0, 1}), Rational(-1) * letter(1));
        // d(sx sy sz) = -s(xy) sz + s(xz) sy + sx s(yz)
        for (const Word& w : std::vector<Word>{{0, 1, 0}, {1, 0, 1}, {0, 0, 1}}) {
            TensorElement expected;
            auto term = [&](std::size_t i, std::size_t j, int other_first, int sign) {
                for (const auto& [k, c] : g.product(static_cast<std::size_t>(w[i]), static_cast<std::size_t>(w[j]))) {
                    Word t = other_first < 0 ? Word{static_cast<int>(k), w[static_cast<std::size_t>(-other_first - 1)]}
                                             : Word{w[static_cast<std::size_t>(other_first)], static_cast<int>(k)};
                    expected.add(t, sign * c);
                }
            };
            term(0, 1, -3, -1);
            term(0, 2, -2, 1);
            term(1, 2, 0, 1);
            EXPECT_EQ(leibniz_differential(g, w), expected);
            EXPECT_TRUE(leibniz_differential(g, leibniz_differential(g, w)).empty());
        }
    }

    TEST(Dlie, Examples) {
        auto g = data_algebra("lie2");
        EXPECT_TRUE(dlie_n1(g, Word{1}).empty());
        EXPECT_EQ(dlie_n1(g, Word{0, 1}), Rational(-1) * letter(1));
        // (sa sb) sy -> s(ay) sb + sa s(by)
        TensorElement expected;
        expected.add(Word{1, 1}, 1);  // s(xy) sy with a = x, b = y, y = y: xy = y, yy = 0
        EXPECT_EQ(dlie_n1(g, Word{0, 1, 1}), expected);
        EXPECT_TRUE(dlie_nt(g, Word{0, 1}, 0).empty());
        EXPECT_EQ(dlie_nt(g, Word{1, 0, 1}, 1), dlie_n1(g, Word{1, 0, 1}));
        // vanishes on X (x) Y for Y primitive of length 2
        TensorElement y = concat(letter(0), letter(1)) + concat(letter(1), letter(0));
        for (const auto& [w, c] : concat(letter(1), y)) (void)w;
        TensorElement total;
        for (const auto& [w, c] : concat(letter(1), y)) total.add(dlie_nt(g, w, 2), c);
        EXPECT_TRUE(total.empty());
    }

    TEST(Primitives, LowWeights) {
        auto g = data_algebra("abelian3");
        LeibnizComplex lc(g, Caps{3, 3});
        auto prim = lie_primitives(lc.basis(), lc.alphabet());
        EXPECT_EQ(prim.at(Block{1, 1}), Subspace::full(3));
        EXPECT_EQ(prim.at(Block{2, 2}).dim(), 6u);
        EXPECT_EQ(prim.at(Block{0, 0}).dim(), 0u);
    }

    TEST(Primitives, MatchBracketSpan) {
        for (const auto& [name, g] : testing::valid_algebras()) {
            const int w = g.weighted() ? 4 : 0;
            LeibnizComplex lc(g, Caps{4, std::max(w, 1)});
            EXPECT_EQ(lie_primitives(lc.basis(), lc.alphabet()), bracket_span(lc.basis())) << name;
        }
    }

    TEST(Homology, Examples) {
        ChainComplex zero{"zero", Caps{3, 1}, {{{0, 0}, 2}, {{1, 0}, 3}, {{2, 0}, 1}, {{3, 0}, 0}}, {}};
        auto h = homology(zero);
        EXPECT_EQ(h.betti_in_degree(1), 3u);
        ChainComplex empty{"empty", Caps{3, 1}, {{{0, 0}, 0}, {{1, 0}, 0}}, {}};
        EXPECT_EQ(homology(empty).betti_in_degree(0), 0u);

        auto ab = data_algebra("abelian3");
        auto hl = homology(LeibnizComplex(ab, Caps{4, 3}).chain());
        EXPECT_EQ(hl.betti({2, 2}), 9u);
        EXPECT_EQ(hl.betti({3, 3}), 27u);
    }

    TEST(Homology, FreeLeibnizAlgebra) {
        LeibnizComplex lc(free_leibniz(2, 4), Caps{4, 4});
        auto h = homology(lc.chain());
        std::vector<std::size_t> betti;
        for (int t = 0; t <= 3; ++t) betti.push_back(h.betti_in_degree(t));
        EXPECT_EQ(betti, (std::vector<std::size_t>{1, 2, 0, 0}));
        EXPECT_EQ(h.betti({1, 1}), 2u);
        for (const auto& [b, hb] : h.blocks)
            for (const auto& rep : hb.representatives()) EXPECT_TRUE(lc.apply(rep, b).empty());
    }

    TEST(Homology, RefusesNonComplexes) {
        ChainComplex bad{"bad", Caps{3, 1}, {{{0, 0}, 1}, {{1, 0}, 1}, {{2, 0}, 1}}, {}};
        bad.differentials[{2, 0}] = SparseMatrix::identity(1);
        bad.differentials[{1, 0}] = SparseMatrix::identity(1);
        EXPECT_THROW(homology(bad), ConsistencyError);
    }

    TEST(Pirashvili, LowDegreesAndFreeCase) {
        for (const auto& [name, g] : testing::valid_algebras()) {
            LeibnizComplex lc(g, Caps{4, g.weighted() ? 4 : 1});
            auto p = pirashvili_complex(lc);
            auto h = homology(p.chain);
            EXPECT_EQ(h.betti_in_degree(0), 0u) << name;
            auto q = lie_quotient(g);
            std::size_t expected = 0;
            for (std::size_t a = 0; a < q.dim(); ++a) expected += q.weight(a) <= 4;
            EXPECT_EQ(h.betti_in_degree(1), expected) << name;
        }
        LeibnizComplex lc(free_leibniz(2, 4), Caps{4, 4});
        auto h = homology(pirashvili_complex(lc).chain);
        for (const auto& [b, hb] : h.blocks)
            if (b.degree != 1) EXPECT_EQ(hb.betti, 0u);
        std::vector<std::size_t> dims;
        for (int w = 1; w <= 4; ++w) dims.push_back(h.betti({1, w}));
        EXPECT_EQ(dims, (std::vector<std::size_t>{2, 1, 2, 3}));
    }

    TEST(Ce, Examples) {
        auto ab = lie_quotient(data_algebra("abelian3"));
        auto ce_ab = ce_complex(ab, Caps{3, 3});
        for (const auto& [b, m] : ce_ab.chain().differentials) EXPECT_TRUE(m.is_zero());

        auto q = lie_quotient(data_algebra("lie2"));
        auto ce = ce_complex(q, Caps{3, 1});
        EXPECT_TRUE(ce.chain().differential({1, 0}).is_zero());
        // (sx)(sy) -> -s[x, y] = -sy
        SymElement expected(SymWord{1}, -1);
        EXPECT_EQ(ce.transported_differential(SymWord{0, 1}), expected);

        auto ef = lie_quotient(data_algebra("ef_square"));
        auto h = homology(ce_complex(ef, Caps{3, 3}).chain());
        EXPECT_EQ(h.betti_in_degree(0), 1u);
        EXPECT_EQ(h.betti_in_degree(1), 1u);
        EXPECT_EQ(h.betti_in_degree(2), 0u);
    }

    TEST(Ce, MatchesClassicalFormula) {
        for (const auto& [name, g] : testing::valid_algebras()) {
            auto q = lie_quotient(g);
            auto ce = ce_complex(q, Caps{5, g.weighted() ? 4 : 1});
            for (auto b : ce.chain().blocks())
                for (const auto& w : ce.words(b))
                    EXPECT_EQ(ce.transported_differential(w), ce.classical_differential(w)) << name;
            EXPECT_FALSE(check_square_zero(ce.chain()).has_value()) << name;
        }
    }

    TEST(Comparison, Examples) {
        for (const auto& [name, g] : testing::valid_algebras()) {
            const Caps caps{4, g.weighted() ? 4 : 1};
            LeibnizComplex lc(g, caps);
            auto q = lie_quotient(g);
            auto ce = ce_complex(q, caps);
            auto f = comparison_chain_map(lc, q, ce);
            EXPECT_TRUE(comparison_defects(lc, ce, f).empty()) << name;
            for (std::size_t i = 0; i < g.dim(); ++i) {
                Block b{1, g.weight(i)};
                SymElement img = compare_word(q, ce, Word{static_cast<int>(i)});
                SymElement expected;
                for (const auto& [a, c] : q.project(SparseVector::unit(i))) expected.add(SymWord{static_cast<int>(a)}, c);
                EXPECT_EQ(img, expected) << name;
                (void)b;
            }
            for (std::size_t i = 0; i < g.dim(); ++i)
                for (std::size_t j = 0; j < g.dim(); ++j) {
                    SymElement s = compare_word(q, ce, Word{static_cast<int>(i), static_cast<int>(j)});
                    s += compare_word(q, ce, Word{static_cast<int>(j), static_cast<int>(i)});
                    EXPECT_TRUE(s.empty()) << name;
                }
        }
    }

    TEST(Comparison, IsoInLowDegreesForFreeAlgebra) {
        auto g = free_leibniz(2, 4);
        const Caps caps{4, 4};
        LeibnizComplex lc(g, caps);
        auto q = lie_quotient(g);
        auto ce = ce_complex(q, caps);
        auto f = comparison_chain_map(lc, q, ce);
        auto hl = homology(lc.chain());
        auto hce = homology(ce.chain());
        for (const auto& [b, h] : hl.blocks) {
            if (b.degree > 1) continue;
            auto m = induced_on_homology(f.at(b), h, hce.blocks.at(b));
            EXPECT_EQ(rank(m), h.betti);
            EXPECT_EQ(h.betti, hce.blocks.at(b).betti);
        }
    }

    TEST(Properties, IdentitiesOnAllTestAlgebras) {
        for (const auto& [name, g] : testing::valid_algebras()) {
            LeibnizComplex lc(g, Caps{4, g.weighted() ? 4 : 1});
            auto p = pirashvili_complex(lc);
            for (auto check : {testing::leibniz_recursion(lc), testing::differential_splitting(lc),
                               testing::action_linearity(lc), testing::action_from_brackets(lc, p),
                               testing::one_delta_on_primitives(lc, p), testing::action_preserves_primitives(lc, p)}) {
                EXPECT_TRUE(check.ok) << name << ": " << check.failure;
                EXPECT_GT(check.cases, 0u) << name;
            }
            EXPECT_FALSE(check_square_zero(lc.chain()).has_value()) << name;
            EXPECT_FALSE(check_square_zero(p.chain).has_value()) << name;
        }
    }

}  // namespace
}  // namespace loday
