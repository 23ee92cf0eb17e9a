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
 // Graded bookkeeping: degrees, tensor words, Koszul signs, the shuffle
 // coproduct on tensor algebras, and graded symmetric powers with their
 // product and coproduct.

#ifndef LODAY_GRADED_HPP
#define LODAY_GRADED_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace loday {

    struct Degree {
        int hom = 0;
        int weight = 0;

        friend auto operator<=>(const Degree&, const Degree&) = default;
        friend Degree operator+(Degree a, Degree b) { return {a.hom + b.hom, a.weight + b.weight}; }
    };

    // A (homological degree, weight) block of a bigraded space.
    struct Block {
        int degree = 0;
        int weight = 0;

        friend auto operator<=>(const Block&, const Block&) = default;
    };

    // Truncation: only blocks with degree <= max_degree and weight <= max_weight exist.
    struct Caps {
        int max_degree = 0;
        int max_weight = 0;

        bool admits(int degree, int weight) const { return degree <= max_degree && weight <= max_weight; }
    };

    inline bool is_odd(int n) { return (n & 1) != 0; }

    using Word = std::vector<int>;

    /* Finite linear combination of basis keys. Zero coefficients are never
     * stored, so equality of combinations is structural. */
    template <class Key, class Compare = std::less<Key>>
    class Combination {
    public:
        using Map = std::map<Key, Rational, Compare>;

        Combination() = default;
        Combination(const Key& k, Rational c = 1) { add(k, c); }

        void add(const Key& k, const Rational& c) {
            if (c == 0) return;
            auto [it, inserted] = terms_.try_emplace(k, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }

        void add(const Combination& other, const Rational& c = 1) {
            if (c == 0) return;
            for (const auto& [k, v] : other.terms_) add(k, c * v);
        }

        void scale(const Rational& c) {
            if (c == 0) {
                terms_.clear();
                return;
            }
            for (auto& [k, v] : terms_) v *= c;
        }

        Rational coefficient(const Key& k) const {
            auto it = terms_.find(k);
            return it == terms_.end() ? Rational(0) : it->second;
        }

        bool empty() const { return terms_.empty(); }
        std::size_t size() const { return terms_.size(); }
        auto begin() const { return terms_.begin(); }
        auto end() const { return terms_.end(); }
        const Map& terms() const { return terms_; }

        Combination& operator+=(const Combination& o) { add(o, 1); return *this; }
        Combination& operator-=(const Combination& o) { add(o, -1); return *this; }
        friend Combination operator+(Combination a, const Combination& b) { return a += b; }
        friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
        friend Combination operator*(const Rational& c, Combination a) { a.scale(c); return a; }
        friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

    private:
        Map terms_;
    };

    using TensorElement = Combination<Word>;
    using TensorPair = Combination<std::pair<Word, Word>>;

    /* Sign picked up when homogeneous elements of the given degrees are
     * rearranged so that position k of the result holds element perm[k]. */
    inline int koszul_sign(std::span<const std::size_t> perm, std::span<const int> degrees) {
        if (perm.size() != degrees.size()) throw ArgumentError("koszul_sign: length mismatch");
        int odd_inversions = 0;
        for (std::size_t a = 0; a < perm.size(); ++a)
            for (std::size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b] && is_odd(degrees[perm[a]]) && is_odd(degrees[perm[b]])) ++odd_inversions;
        return is_odd(odd_inversions) ? -1 : 1;
    }

    // Degrees of the letters of an alphabet; letter i has degree degrees[i].
    class Alphabet {
    public:
        Alphabet() = default;
        explicit Alphabet(std::vector<Degree> degrees) : degrees_(std::move(degrees)) {}

        std::size_t size() const { return degrees_.size(); }
        const Degree& degree(int letter) const { return degrees_.at(static_cast<std::size_t>(letter)); }
        const std::vector<Degree>& degrees() const { return degrees_; }

        Degree degree(std::span<const int> word) const {
            Degree d;
            for (int l : word) d = d + degree(l);
            return d;
        }

        std::vector<int> hom_degrees(std::span<const int> word) const {
            std::vector<int> out;
            out.reserve(word.size());
            for (int l : word) out.push_back(degree(l).hom);
            return out;
        }

    private:
        std::vector<Degree> degrees_;
    };

    /* Calls visit(left, right, sign) for every ordered split of the word into
     * a subsequence and its complement, with the Koszul sign of the shuffle. */
    template <class Visit>
    void for_each_split(const Word& word, std::span<const int> hom, Visit&& visit) {
        const std::size_t n = word.size();
        if (n >= 8 * sizeof(unsigned long) - 1) throw ArgumentError("word too long to split");
        std::vector<std::size_t> perm(n);
        for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
            Word left, right;
            std::size_t k = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1UL << i)) {
                    left.push_back(word[i]);
                    perm[k++] = i;
                }
            for (std::size_t i = 0; i < n; ++i)
                if (!(mask & (1UL << i))) {
                    right.push_back(word[i]);
                    perm[k++] = i;
                }
            visit(left, right, koszul_sign(perm, hom));
        }
    }

    inline TensorPair shuffle_coproduct(const TensorElement& x, const Alphabet& alphabet) {
        TensorPair out;
        for (const auto& [w, c] : x) {
            auto hom = alphabet.hom_degrees(w);
            for_each_split(w, hom, [&](const Word& l, const Word& r, int sign) {
                out.add({l, r}, sign * c);
            });
        }
        return out;
    }

    // The part of the coproduct that is linear in the first tensor factor.
    inline TensorPair one_delta(const TensorElement& x, const Alphabet& alphabet) {
        TensorPair out;
        for (const auto& [w, c] : x) {
            if (w.empty()) throw ArgumentError("one_delta: empty word");
            int before = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const int d = alphabet.degree(w[i]).hom;
                Word rest = w;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                const int sign = is_odd(d * before) ? -1 : 1;
                out.add({Word{w[i]}, rest}, sign * c);
                before += d;
            }
        }
        return out;
    }

    inline TensorElement concat(const TensorElement& a, const TensorElement& b) {
        TensorElement out;
        for (const auto& [u, x] : a)
            for (const auto& [v, y] : b) {
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out.add(w, x * y);
            }
        return out;
    }

    // Graded commutator u v - (-1)^{|u||v|} v u of homogeneous elements.
    inline TensorElement graded_bracket(const TensorElement& u, int deg_u, const TensorElement& v, int deg_v) {
        TensorElement out = concat(u, v);
        out.add(concat(v, u), is_odd(deg_u * deg_v) ? 1 : -1);
        return out;
    }

    // ---------------------------------------------------------------------
    // Graded symmetric powers.
    // ---------------------------------------------------------------------

    // Sorted list of generator indices; odd generators occur at most once.
    using SymWord = std::vector<int>;
    using SymElement = Combination<SymWord>;

    /* Sorts a product of generators into canonical order. Returns the sign of
     * the reordering, or nullopt if an odd generator repeats (the product is 0). */
    inline std::optional<std::pair<SymWord, int>> normalize(const Word& letters, const Alphabet& alphabet) {
        std::vector<std::size_t> perm(letters.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t a, std::size_t b) { return letters[a] < letters[b]; });
        SymWord sorted;
        sorted.reserve(letters.size());
        for (auto p : perm) sorted.push_back(letters[p]);
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] == sorted[i - 1] && is_odd(alphabet.degree(sorted[i]).hom)) return std::nullopt;
        return std::make_pair(std::move(sorted), koszul_sign(perm, alphabet.hom_degrees(letters)));
    }

    // Product in S(V); throws TruncationError when the result leaves the caps.
    inline SymElement sym_product(const SymElement& a, const SymElement& b, const Alphabet& alphabet,
                                  std::optional<Caps> caps = std::nullopt) {
        SymElement out;
        for (const auto& [u, x] : a)
            for (const auto& [v, y] : b) {
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                if (caps) {
                    Degree d = alphabet.degree(w);
                    if (!caps->admits(d.hom, d.weight)) throw TruncationError("symmetric product exceeds caps");
                }
                if (auto n = normalize(w, alphabet)) out.add(n->first, n->second * x * y);
            }
        return out;
    }

    using SymPair = Combination<std::pair<SymWord, SymWord>>;

    inline SymPair sym_coproduct(const SymElement& x, const Alphabet& alphabet) {
        SymPair out;
        for (const auto& [w, c] : x) {
            auto hom = alphabet.hom_degrees(w);
            for_each_split(w, hom, [&](const Word& l, const Word& r, int sign) { out.add({l, r}, sign * c); });
        }
        return out;
    }

    /* Canonical words of arity n whose total degree lies in the caps, in
     * lexicographic order of generator indices. */
    inline std::vector<SymWord> sym_basis(const Alphabet& alphabet, int arity, const Caps& caps) {
        std::vector<SymWord> out;
        SymWord cur;
        const int g = static_cast<int>(alphabet.size());
        std::function<void(int, Degree)> rec = [&](int start, Degree d) {
            if (static_cast<int>(cur.size()) == arity) {
                out.push_back(cur);
                return;
            }
            for (int i = start; i < g; ++i) {
                if (!cur.empty() && cur.back() == i && is_odd(alphabet.degree(i).hom)) continue;
                Degree nd = d + alphabet.degree(i);
                if (!caps.admits(nd.hom, nd.weight)) continue;
                cur.push_back(i);
                rec(i, nd);
                cur.pop_back();
            }
        };
        if (arity >= 0) rec(0, Degree{});
        return out;
    }

    inline std::vector<SymWord> sym_basis(const Alphabet& alphabet, int arity, Block block) {
        std::vector<SymWord> out;
        for (auto& w : sym_basis(alphabet, arity, Caps{block.degree, block.weight}))
            if (alphabet.degree(w) == Degree{block.degree, block.weight}) out.push_back(std::move(w));
        return out;
    }

    /* Generators of a free graded commutative algebra on a bigraded space,
     * one per basis vector of each block, in block order. */
    struct GeneratorSet {
        std::vector<std::pair<Block, std::size_t>> list;
        std::map<std::pair<Block, std::size_t>, int> index;
        Alphabet alphabet;
    };

    inline GeneratorSet generator_set(const std::map<Block, std::size_t>& dims) {
        GeneratorSet out;
        std::vector<Degree> degrees;
        for (const auto& [b, n] : dims)
            for (std::size_t i = 0; i < n; ++i) {
                out.index.emplace(std::make_pair(b, i), static_cast<int>(out.list.size()));
                out.list.emplace_back(b, i);
                degrees.push_back({b.degree, b.weight});
            }
        out.alphabet = Alphabet(std::move(degrees));
        return out;
    }

}  // namespace loday

#endif  // LODAY_GRADED_HPP
