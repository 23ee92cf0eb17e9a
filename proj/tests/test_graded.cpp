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
 // Tests for degrees, Koszul signs, the shuffle coproduct and symmetric powers.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "loday/graded.hpp"

namespace loday {
namespace {

    Alphabet odd_letters(int n) { return Alphabet(std::vector<Degree>(static_cast<std::size_t>(n), Degree{1, 1})); }

    TEST(KoszulSign, Examples) {
        std::vector<std::size_t> swap{1, 0}, id{0, 1};
        EXPECT_EQ(koszul_sign(swap, std::vector<int>{1, 1}), -1);
        EXPECT_EQ(koszul_sign(swap, std::vector<int>{1, 2}), 1);
        EXPECT_EQ(koszul_sign(id, std::vector<int>{1, 1}), 1);
        EXPECT_THROW(koszul_sign(id, std::vector<int>{1}), ArgumentError);
    }

    TEST(KoszulSign, IsMultiplicative) {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> deg(0, 3);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + trial % 6;
            std::vector<int> d(n);
            for (auto& x : d) x = deg(rng);
            std::vector<std::size_t> p(n), q(n), pq(n);
            std::iota(p.begin(), p.end(), std::size_t{0});
            std::iota(q.begin(), q.end(), std::size_t{0});
            std::shuffle(p.begin(), p.end(), rng);
            std::shuffle(q.begin(), q.end(), rng);
            std::vector<int> dp(n);
            for (std::size_t k = 0; k < n; ++k) {
                pq[k] = p[q[k]];
                dp[k] = d[p[k]];
            }
            EXPECT_EQ(koszul_sign(pq, d), koszul_sign(p, d) * koszul_sign(q, dp));
        }
    }

    TEST(Shuffle, Examples) {
        auto a = odd_letters(2);
        TensorPair unit;
        unit.add({Word{}, Word{}}, 1);
        EXPECT_EQ(shuffle_coproduct(TensorElement(Word{}), a), unit);

        TensorPair one;
        one.add({Word{0}, Word{}}, 1);
        one.add({Word{}, Word{0}}, 1);
        EXPECT_EQ(shuffle_coproduct(TensorElement(Word{0}), a), one);

        TensorPair two;
        two.add({Word{0, 1}, Word{}}, 1);
        two.add({Word{0}, Word{1}}, 1);
        two.add({Word{1}, Word{0}}, -1);
        two.add({Word{}, Word{0, 1}}, 1);
        EXPECT_EQ(shuffle_coproduct(TensorElement(Word{0, 1}), a), two);
    }

    // (Delta x Id) Delta = (Id x Delta) Delta, and tau Delta = Delta with Koszul twist.
    TEST(Shuffle, CoassociativeAndCocommutative) {
        Alphabet a({{1, 1}, {2, 1}, {1, 2}});
        std::vector<Word> words{{0}, {0, 1}, {1, 0, 2}, {0, 0, 1}, {2, 1, 0, 1}, {0, 1, 2, 0}};
        for (const auto& w : words) {
            auto d = shuffle_coproduct(TensorElement(w), a);
            Combination<std::vector<Word>> left, right;
            for (const auto& [lr, c] : d) {
                for (const auto& [l2, c2] : shuffle_coproduct(TensorElement(lr.first), a))
                    left.add({l2.first, l2.second, lr.second}, c * c2);
                for (const auto& [r2, c2] : shuffle_coproduct(TensorElement(lr.second), a))
                    right.add({lr.first, r2.first, r2.second}, c * c2);
            }
            EXPECT_EQ(left, right);
            TensorPair twisted;
            for (const auto& [lr, c] : d) {
                const int s = is_odd(a.degree(lr.first).hom * a.degree(lr.second).hom) ? -1 : 1;
                twisted.add({lr.second, lr.first}, s * c);
            }
            EXPECT_EQ(twisted, d);
        }
    }

    TEST(OneDelta, Examples) {
        auto a = odd_letters(2);
        TensorPair single;
        single.add({Word{0}, Word{}}, 1);
        EXPECT_EQ(one_delta(TensorElement(Word{0}), a), single);

        TensorPair two;
        two.add({Word{0}, Word{1}}, 1);
        two.add({Word{1}, Word{0}}, -1);
        EXPECT_EQ(one_delta(TensorElement(Word{0, 1}), a), two);

        TensorElement sym(Word{0, 1});
        sym.add(Word{1, 0}, 1);
        EXPECT_TRUE(one_delta(sym, a).empty());
    }

    TEST(OneDelta, IsTheLinearPartOfTheCoproduct) {
        Alphabet a({{1, 1}, {2, 1}, {3, 2}});
        for (const Word& w : std::vector<Word>{{0, 1}, {1, 2, 0}, {2, 2, 1, 0}}) {
            TensorPair expected;
            for (const auto& [lr, c] : shuffle_coproduct(TensorElement(w), a))
                if (lr.first.size() == 1) expected.add(lr, c);
            EXPECT_EQ(one_delta(TensorElement(w), a), expected);
        }
    }

    TEST(SymBasis, Examples) {
        Alphabet one({{1, 1}});
        EXPECT_EQ(sym_basis(one, 0, Caps{5, 5}), std::vector<SymWord>{SymWord{}});
        EXPECT_TRUE(sym_basis(one, 2, Caps{5, 5}).empty());
        Alphabet two({{1, 1}, {1, 1}});
        EXPECT_EQ(sym_basis(two, 2, Caps{5, 5}), (std::vector<SymWord>{{0, 1}}));
        Alphabet even({{2, 1}});
        EXPECT_EQ(sym_basis(even, 3, Caps{6, 3}), (std::vector<SymWord>{{0, 0, 0}}));
        EXPECT_TRUE(sym_basis(even, 3, Caps{5, 3}).empty());
    }

    TEST(SymProduct, Examples) {
        Alphabet two({{1, 1}, {1, 1}});
        SymElement unit(SymWord{});
        SymElement a(SymWord{0}), b(SymWord{1});
        EXPECT_EQ(sym_product(unit, a, two), a);
        EXPECT_TRUE(sym_product(a, a, two).empty());
        EXPECT_EQ(sym_product(b, a, two), Rational(-1) * SymElement(SymWord{0, 1}));
        EXPECT_THROW(sym_product(a, b, two, Caps{1, 5}), TruncationError);
    }

    TEST(SymCoproduct, TwoOddGenerators) {
        Alphabet two({{1, 1}, {1, 1}});
        SymPair expected;
        expected.add({SymWord{0, 1}, SymWord{}}, 1);
        expected.add({SymWord{0}, SymWord{1}}, 1);
        expected.add({SymWord{1}, SymWord{0}}, -1);
        expected.add({SymWord{}, SymWord{0, 1}}, 1);
        EXPECT_EQ(sym_coproduct(SymElement(SymWord{0, 1}), two), expected);
    }

    TEST(SymProduct, AssociativeAndGradedCommutative) {
        Alphabet a({{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}});
        std::vector<SymWord> words;
        for (int n = 0; n <= 3; ++n)
            for (auto& w : sym_basis(a, n, Caps{7, 7})) words.push_back(w);
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        for (int trial = 0; trial < 300; ++trial) {
            SymElement x(words[pick(rng)]), y(words[pick(rng)]), z(words[pick(rng)]);
            EXPECT_EQ(sym_product(sym_product(x, y, a), z, a), sym_product(x, sym_product(y, z, a), a));
            const int dx = a.degree(x.begin()->first).hom, dy = a.degree(y.begin()->first).hom;
            EXPECT_EQ(sym_product(x, y, a), Rational(is_odd(dx * dy) ? -1 : 1) * sym_product(y, x, a));
        }
    }

}  // namespace
}  // namespace loday
