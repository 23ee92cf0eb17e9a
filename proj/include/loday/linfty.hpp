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
 // L-infinity structures on a bigraded complex sW, stored through the
 // components d_{n,1} : S^n(sW) -> sW, with the Pirashvili 3-stub, the
 // obstruction-theoretic extension, transport and alignment.

#ifndef LODAY_LINFTY_HPP
#define LODAY_LINFTY_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "complexes.hpp"
#include "graded.hpp"
#include "leibniz.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace loday {

    // Block S^arity(sW) in homological degree `degree` and weight `weight`.
    struct SymKey {
        int arity = 1;
        int degree = 0;
        int weight = 0;

        friend auto operator<=>(const SymKey&, const SymKey&) = default;
    };

    inline std::string to_string(SymKey k) {
        return "(arity " + std::to_string(k.arity) + ", degree " + std::to_string(k.degree) + ", weight " +
               std::to_string(k.weight) + ")";
    }

    struct LinftyCaps {
        int max_arity = 2;
        int max_degree = 1;
        int max_weight = 1;

        Caps complex_caps() const { return {max_degree, max_weight}; }
    };

    /* Canonical monomial bases of S^n(sW) for n <= A and degree <= T, where
     * sW has one generator per basis vector of each of its blocks. */
    class SymSpace {
    public:
        SymSpace(const std::map<Block, std::size_t>& dims, LinftyCaps caps) : caps_(caps) {
            if (caps.max_arity < 1 || caps.max_degree < 1 || caps.max_weight < 1)
                throw ArgumentError("caps must be positive");
            std::map<Block, std::size_t> nonzero;
            for (const auto& [b, n] : dims) {
                if (n == 0 || b.degree < 1) continue;
                nonzero.emplace(b, n);
            }
            gens_ = generator_set(nonzero);
            const auto& deg = gens_.alphabet.degrees();
            weighted_ = std::any_of(deg.begin(), deg.end(), [](Degree d) { return d.weight != 0; });
            const int wmax = weighted_ ? caps.max_weight : 0;
            for (int n = 1; n <= caps.max_arity; ++n)
                for (int t = n; t <= caps.max_degree; ++t)
                    for (int w = 0; w <= wmax; ++w) {
                        auto words = sym_basis(gens_.alphabet, n, Block{t, w});
                        if (words.empty()) continue;
                        for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i], i);
                        words_.emplace(SymKey{n, t, w}, std::move(words));
                    }
        }

        LinftyCaps caps() const { return caps_; }
        bool weighted() const { return weighted_; }
        const Alphabet& alphabet() const { return gens_.alphabet; }
        std::size_t generators() const { return gens_.list.size(); }
        int generator(Block b, std::size_t i) const { return gens_.index.at({b, i}); }
        const std::pair<Block, std::size_t>& generator_block(int g) const {
            return gens_.list.at(static_cast<std::size_t>(g));
        }

        std::vector<SymKey> keys() const {
            std::vector<SymKey> out;
            for (const auto& [k, w] : words_) out.push_back(k);
            return out;
        }

        const std::vector<SymWord>& words(SymKey k) const {
            static const std::vector<SymWord> none;
            auto it = words_.find(k);
            return it == words_.end() ? none : it->second;
        }

        std::size_t dim(SymKey k) const { return words(k).size(); }
        std::size_t linear_dim(int degree, int weight) const { return dim({1, degree, weight}); }

        SymKey key_of(const SymWord& w) const {
            Degree d = gens_.alphabet.degree(w);
            return {static_cast<int>(w.size()), d.hom, d.weight};
        }

        std::optional<std::size_t> index(const SymWord& w) const {
            auto it = index_.find(w);
            if (it == index_.end()) return std::nullopt;
            return it->second;
        }

        SparseVector vector(const SymElement& x, SymKey k) const {
            std::vector<SparseVector::Entry> e;
            for (const auto& [w, c] : x) {
                if (!(key_of(w) == k)) throw ArgumentError("symmetric element outside the block " + to_string(k));
                auto i = index(w);
                if (!i) throw TruncationError("symmetric word outside the caps");
                e.emplace_back(*i, c);
            }
            return SparseVector(std::move(e));
        }

        SymElement element(const SparseVector& v, SymKey k) const {
            SymElement out;
            const auto& list = words(k);
            for (const auto& [i, c] : v) out.add(list.at(i), c);
            return out;
        }

    private:
        LinftyCaps caps_;
        GeneratorSet gens_;
        bool weighted_ = false;
        std::map<SymKey, std::vector<SymWord>> words_;
        std::map<SymWord, std::size_t> index_;
    };

    using SpacePtr = std::shared_ptr<const SymSpace>;

    /* Block maps out of S^n(sW), one matrix per SymKey; columns are the
     * monomials of the block and rows the generators of the target block of
     * sW. Zero blocks are not stored. */
    class BlockMaps {
    public:
        BlockMaps() = default;
        BlockMaps(SpacePtr space, int shift) : space_(std::move(space)), shift_(shift) {}

        const SymSpace& space() const { return *space_; }
        const SpacePtr& space_ptr() const { return space_; }
        const std::map<SymKey, SparseMatrix>& components() const { return comps_; }

        SparseMatrix component(SymKey k) const {
            auto it = comps_.find(k);
            if (it != comps_.end()) return it->second;
            return SparseMatrix(space_->linear_dim(k.degree - shift_, k.weight), space_->dim(k));
        }

        void set(SymKey k, SparseMatrix m) {
            if (m.rows() != space_->linear_dim(k.degree - shift_, k.weight) || m.cols() != space_->dim(k))
                throw ArgumentError("component shape does not match the block " + to_string(k));
            if (m.is_zero()) comps_.erase(k);
            else comps_.insert_or_assign(k, std::move(m));
        }

        // The component on one monomial, as a combination of generators.
        SymElement on_word(const SymWord& w) const {
            SymElement out;
            SymKey k = space_->key_of(w);
            auto it = comps_.find(k);
            if (it == comps_.end()) return out;
            auto i = space_->index(w);
            if (!i) throw TruncationError("symmetric word outside the caps");
            Block target{k.degree - shift_, k.weight};
            for (const auto& [r, c] : it->second.column(*i)) out.add(SymWord{space_->generator(target, r)}, c);
            return out;
        }

        SymElement on_element(const SymElement& x) const {
            SymElement out;
            for (const auto& [w, c] : x) out.add(on_word(w), c);
            return out;
        }

        friend bool operator==(const BlockMaps& a, const BlockMaps& b) { return a.comps_ == b.comps_; }

    protected:
        SpacePtr space_;
        int shift_ = 0;
        std::map<SymKey, SparseMatrix> comps_;
    };

    /* A degree -1 coderivation of S(sW) given by its corestriction d-bar.
     * The full map is the composite of the coproduct, d-bar on the left
     * factor and the product. */
    class Coderivation : public BlockMaps {
    public:
        Coderivation() = default;
        explicit Coderivation(SpacePtr space) : BlockMaps(std::move(space), 1) {}

        SymElement bar(const SymWord& w) const { return on_word(w); }
        SymElement bar(const SymElement& x) const { return on_element(x); }

        SymElement apply(const SymWord& w) const {
            SymElement out;
            const auto& alphabet = space_->alphabet();
            auto hom = alphabet.hom_degrees(w);
            for_each_split(w, hom, [&](const Word& l, const Word& r, int sign) {
                if (l.empty()) return;
                for (const auto& [g, c] : bar(l)) {
                    Word full = g;
                    full.insert(full.end(), r.begin(), r.end());
                    if (auto n = normalize(full, alphabet)) out.add(n->first, sign * n->second * c);
                }
            });
            return out;
        }

        SymElement apply(const SymElement& x) const {
            SymElement out;
            for (const auto& [w, c] : x) out.add(apply(w), c);
            return out;
        }

        // The component d_{n,k}: the part of d landing in S^k.
        SymElement apply_to_arity(const SymWord& w, int k) const {
            SymElement out;
            for (const auto& [u, c] : apply(w))
                if (static_cast<int>(u.size()) == k) out.add(u, c);
            return out;
        }
    };

    struct SquareZeroFailure {
        SymKey key;
        std::size_t column = 0;
        SymElement value;
    };

    namespace detail {

        template <class Eval>
        std::optional<SquareZeroFailure> first_nonzero(const SymSpace& space, Eval&& eval) {
            auto keys = space.keys();
            std::vector<std::optional<SquareZeroFailure>> found(keys.size());
            parallel_for(keys.size(), [&](std::size_t ki) {
                const auto& words = space.words(keys[ki]);
                for (std::size_t i = 0; i < words.size(); ++i) {
                    SymElement v = eval(words[i]);
                    if (!v.empty()) {
                        found[ki] = SquareZeroFailure{keys[ki], i, std::move(v)};
                        return;
                    }
                }
            });
            for (auto& f : found)
                if (f) return f;
            return std::nullopt;
        }

    }  // namespace detail

    // d-bar o d = 0 on every in-cap block, which is equivalent to d o d = 0.
    inline std::optional<SquareZeroFailure> square_zero_check(const Coderivation& d) {
        return detail::first_nonzero(d.space(), [&](const SymWord& w) { return d.bar(d.apply(w)); });
    }

    // d o d computed by applying the full coderivation twice.
    inline std::optional<SquareZeroFailure> full_square_zero_check(const Coderivation& d) {
        return detail::first_nonzero(d.space(), [&](const SymWord& w) { return d.apply(d.apply(w)); });
    }

    // ---------------------------------------------------------------------
    // Coalgebra automorphisms with identity linear part.
    // ---------------------------------------------------------------------

    // Calls visit(blocks) for every set partition of {0..n-1}; blocks are
    // increasing and ordered by their least element.
    template <class Visit>
    void for_each_set_partition(std::size_t n, Visit&& visit) {
        std::vector<std::size_t> label(n, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
            if (i == n) {
                std::vector<std::vector<std::size_t>> blocks(used);
                for (std::size_t k = 0; k < n; ++k) blocks[label[k]].push_back(k);
                visit(blocks);
                return;
            }
            for (std::size_t b = 0; b <= used; ++b) {
                label[i] = b;
                rec(i + 1, std::max(used, b + 1));
            }
        };
        if (n == 0) {
            visit(std::vector<std::vector<std::size_t>>{});
            return;
        }
        rec(0, 0);
    }

    /* Morphism of coalgebras S(sW) -> S(sW) given by components
     * F_{n,1} : S^n(sW) -> sW of degree 0 with F_{1,1} the identity; only
     * the components with n >= 2 are stored. */
    class CoalgebraMorphism : public BlockMaps {
    public:
        CoalgebraMorphism() = default;
        explicit CoalgebraMorphism(SpacePtr space) : BlockMaps(std::move(space), 0) {}

        void set(SymKey k, SparseMatrix m) {
            if (k.arity < 2) throw ArgumentError("the linear part of a coalgebra morphism is fixed to the identity");
            BlockMaps::set(k, std::move(m));
        }

        bool is_identity() const { return comps_.empty(); }

        SymElement linear(const SymWord& w) const {
            if (w.size() == 1) return SymElement(w);
            return on_word(w);
        }

        SymElement linear(const SymElement& x) const {
            SymElement out;
            for (const auto& [w, c] : x) out.add(linear(w), c);
            return out;
        }

        // The full coalgebra map: a sum over set partitions of the factors.
        SymElement apply(const SymWord& w) const {
            SymElement out;
            const auto& alphabet = space_->alphabet();
            auto hom = alphabet.hom_degrees(w);
            for_each_set_partition(w.size(), [&](const std::vector<std::vector<std::size_t>>& blocks) {
                std::vector<std::size_t> perm;
                for (const auto& b : blocks) perm.insert(perm.end(), b.begin(), b.end());
                SymElement acc(SymWord{}, Rational(koszul_sign(perm, hom)));
                for (const auto& b : blocks) {
                    SymWord part;
                    for (auto p : b) part.push_back(w[p]);
                    acc = sym_product(acc, linear(part), alphabet);
                    if (acc.empty()) return;
                }
                out += acc;
            });
            return out;
        }

        SymElement apply(const SymElement& x) const {
            SymElement out;
            for (const auto& [w, c] : x) out.add(apply(w), c);
            return out;
        }
    };

    // f o g.
    inline CoalgebraMorphism compose(const CoalgebraMorphism& f, const CoalgebraMorphism& g) {
        CoalgebraMorphism out(f.space_ptr());
        const auto& space = f.space();
        for (auto k : space.keys()) {
            if (k.arity < 2) continue;
            std::vector<SparseVector> cols;
            for (const auto& w : space.words(k))
                cols.push_back(space.vector(f.linear(g.apply(w)), {1, k.degree, k.weight}));
            out.set(k, SparseMatrix::from_columns(space.linear_dim(k.degree, k.weight), cols));
        }
        return out;
    }

    // Arity by arity: G_{n,1} = -(sum over partitions with >= 2 blocks of F o G).
    inline CoalgebraMorphism inverse(const CoalgebraMorphism& f) {
        CoalgebraMorphism g(f.space_ptr());
        const auto& space = f.space();
        for (auto k : space.keys()) {
            if (k.arity < 2) continue;
            std::vector<SparseVector> cols;
            for (const auto& w : space.words(k))
                cols.push_back(-space.vector(f.linear(g.apply(w)), {1, k.degree, k.weight}));
            g.set(k, SparseMatrix::from_columns(space.linear_dim(k.degree, k.weight), cols));
        }
        return g;
    }

    // The structure F d F^{-1}.
    inline Coderivation transport(const Coderivation& d, const CoalgebraMorphism& f) {
        if (d.space_ptr() != f.space_ptr()) throw ArgumentError("transport: different underlying spaces");
        CoalgebraMorphism finv = inverse(f);
        Coderivation out(d.space_ptr());
        const auto& space = d.space();
        auto keys = space.keys();
        std::vector<SparseMatrix> mats(keys.size());
        parallel_for(keys.size(), [&](std::size_t ki) {
            SymKey k = keys[ki];
            std::vector<SparseVector> cols;
            for (const auto& w : space.words(k)) {
                SymElement img = f.linear(d.apply(finv.apply(w)));
                cols.push_back(k.degree > 1 ? space.vector(img, {1, k.degree - 1, k.weight}) : SparseVector{});
            }
            mats[ki] = SparseMatrix::from_columns(space.linear_dim(k.degree - 1, k.weight), cols);
        });
        for (std::size_t i = 0; i < keys.size(); ++i) out.set(keys[i], std::move(mats[i]));
        return out;
    }

    // First block where Delta o F != (F (x) F) o Delta.
    inline std::optional<SymKey> check_coalgebra_map(const CoalgebraMorphism& f) {
        const auto& space = f.space();
        const auto& alphabet = space.alphabet();
        for (auto k : space.keys())
            for (const auto& w : space.words(k)) {
                SymPair lhs = sym_coproduct(f.apply(w), alphabet);
                SymPair rhs;
                for_each_split(w, alphabet.hom_degrees(w), [&](const Word& l, const Word& r, int sign) {
                    SymElement fl = f.apply(l), fr = f.apply(r);
                    for (const auto& [a, x] : fl)
                        for (const auto& [b, y] : fr) rhs.add({a, b}, sign * x * y);
                });
                if (!(lhs == rhs)) return k;
            }
        return std::nullopt;
    }

    // First block where F o d_src != d_tgt o F as maps of S(sW).
    inline std::optional<SymKey> check_intertwines(const CoalgebraMorphism& f, const Coderivation& src,
                                                   const Coderivation& tgt) {
        const auto& space = f.space();
        for (auto k : space.keys())
            for (const auto& w : space.words(k))
                if (!(f.apply(src.apply(w)) == tgt.apply(f.apply(w)))) return k;
        return std::nullopt;
    }

    // ---------------------------------------------------------------------
    // The Pirashvili complex as sW, its 3-stub and the extension.
    // ---------------------------------------------------------------------

    /* sW = Lie(sg) with Lie_k(sg) in degree k, built from the Pirashvili
     * complex of g at degree T and weight W. */
    class PirashviliSetting {
    public:
        PirashviliSetting(const LeibnizAlgebra& g, LinftyCaps caps)
            : lc_(g, caps.complex_caps()), pc_(pirashvili_complex(lc_)), hom_(loday::homology(pc_.chain)) {
            space_ = std::make_shared<const SymSpace>(pc_.chain.dims, caps);
            letter_of_.assign(space_->generators(), -1);
            for (auto b : lc_.basis().blocks()) {
                if (b.degree != 1) continue;
                const auto& words = lc_.basis().words(b);
                for (std::size_t i = 0; i < pc_.chain.dim(b); ++i) {
                    const auto& v = pc_.primitive(b, i);
                    if (v.nnz() != 1 || v.begin()->second != 1)
                        throw ConsistencyError("degree one primitives are not the letters");
                    const int letter = words.at(v.begin()->first).front();
                    const int gen = space_->generator(b, i);
                    letter_of_[static_cast<std::size_t>(gen)] = letter;
                    generator_of_.emplace(letter, gen);
                }
            }
        }

        const LeibnizAlgebra& algebra() const { return lc_.algebra(); }
        const LeibnizComplex& leibniz() const { return lc_; }
        const PirashviliComplex& pirashvili() const { return pc_; }
        const Homology& homology() const { return hom_; }
        const SpacePtr& space() const { return space_; }
        LinftyCaps caps() const { return space_->caps(); }

        // Generator of sW for a basis letter of g, and back.
        int generator_of(std::size_t letter) const { return generator_of_.at(static_cast<int>(letter)); }
        std::size_t letter_of(int generator) const {
            int l = letter_of_.at(static_cast<std::size_t>(generator));
            if (l < 0) throw ArgumentError("generator is not a letter");
            return static_cast<std::size_t>(l);
        }

        // s x as a combination of degree-1 generators.
        SymElement suspend(const SparseVector& x) const {
            SymElement out;
            for (const auto& [l, c] : x) out.add(SymWord{generator_of(l)}, c);
            return out;
        }

        TensorElement tensor(int generator) const {
            const auto& [b, i] = space_->generator_block(generator);
            return lc_.basis().element(pc_.primitive(b, i), b);
        }

        // A primitive tensor of block b as a combination of generators.
        SymElement generators_of(const TensorElement& x, Block b) const {
            auto c = pc_.primitives.at(b).coordinates(lc_.basis().vector(x, b));
            if (!c) throw ConsistencyError("tensor is not primitive");
            SymElement out;
            for (const auto& [i, v] : *c) out.add(SymWord{space_->generator(b, i)}, v);
            return out;
        }

        // The differential of the complex as an arity-one coderivation.
        Coderivation differential() const {
            Coderivation d(space_);
            for (auto k : space_->keys()) {
                if (k.arity != 1 || k.degree < 2) continue;
                d.set(k, pc_.chain.differential({k.degree, k.weight}));
            }
            return d;
        }

    private:
        LeibnizComplex lc_;
        PirashviliComplex pc_;
        Homology hom_;
        SpacePtr space_;
        std::vector<int> letter_of_;
        std::map<int, int> generator_of_;
    };

    /* The explicit arity-two column on a monomial a b of S^2(Lie(sg)):
     * (sx)(sy) -> -s(x*y) with x*y = xy - yx, X.sy -> (-1)^m X.y for X in
     * Lie_m with m > 1, and zero on everything else. */
    inline SymElement column2_value(const PirashviliSetting& s, const SymWord& w) {
        const auto& g = s.algebra();
        const auto& space = *s.space();
        SymElement out;
        if (w.size() != 2) throw ArgumentError("column2_value expects a quadratic monomial");
        const int da = space.alphabet().degree(w[0]).hom;
        const int db = space.alphabet().degree(w[1]).hom;
        if (da == 1 && db == 1) {
            const auto x = s.letter_of(w[0]), y = s.letter_of(w[1]);
            SparseVector star = g.product(x, y) - g.product(y, x);
            out = s.suspend(-star);
            return out;
        }
        if (da == 1 || db == 1) {
            const int lie = da == 1 ? w[1] : w[0];
            const int lin = da == 1 ? w[0] : w[1];
            // w equals sign * (X sy)
            auto n = normalize(Word{lie, lin}, space.alphabet());
            const std::size_t y = s.letter_of(lin);
            TensorElement image;
            for (const auto& [u, c] : s.tensor(lie)) {
                Word full = u;
                full.push_back(static_cast<int>(y));
                image.add(dlie_n1(g, full), c);
            }
            const auto& [b, i] = space.generator_block(lie);
            Block target{b.degree, b.weight + g.weight(y)};
            const int sign = n->second;
            out = Rational(sign) * s.generators_of(image, target);
        }
        return out;
    }

    // -(1/3) sum over cyclic shifts of [s(x*y), sz] in Lie_2(sg).
    inline SymElement stub_cubic_value(const PirashviliSetting& s, const SymWord& w) {
        const auto& g = s.algebra();
        std::array<std::size_t, 3> l{s.letter_of(w[0]), s.letter_of(w[1]), s.letter_of(w[2])};
        TensorElement sum;
        int weight = 0;
        for (auto x : l) weight += g.weight(x);
        for (int r = 0; r < 3; ++r) {
            auto x = l[static_cast<std::size_t>(r)], y = l[static_cast<std::size_t>((r + 1) % 3)],
                 z = l[static_cast<std::size_t>((r + 2) % 3)];
            SparseVector star = g.product(x, y) - g.product(y, x);
            TensorElement su;
            for (const auto& [k, c] : star) su.add(Word{static_cast<int>(k)}, c);
            sum += graded_bracket(su, 1, TensorElement(Word{static_cast<int>(z)}), 1);
        }
        sum.scale(Rational(-1, 3));
        return s.generators_of(sum, {2, weight});
    }

    /* A 3-stub: the components of degree at most three, namely the
     * differential up to sW_2 -> sW_1 and beta, gamma, delta. */
    struct Stub3 {
        Coderivation d;

        SparseMatrix alpha(int w) const { return d.component({1, 2, w}); }
        SparseMatrix top(int w) const { return d.component({1, 3, w}); }      // sW_2 -> sW_1
        SparseMatrix beta(int w) const { return d.component({2, 2, w}); }
        SparseMatrix delta(int w) const { return d.component({2, 3, w}); }
        SparseMatrix gamma(int w) const { return d.component({3, 3, w}); }
    };

    namespace detail {

        template <class Value>
        SparseMatrix block_matrix(const SymSpace& space, SymKey k, Value&& value) {
            std::vector<SparseVector> cols;
            for (const auto& w : space.words(k)) cols.push_back(space.vector(value(w), {1, k.degree - 1, k.weight}));
            return SparseMatrix::from_columns(space.linear_dim(k.degree - 1, k.weight), cols);
        }

    }  // namespace detail

    inline Stub3 pirashvili_stub(const PirashviliSetting& s) {
        const auto& space = *s.space();
        Stub3 stub{Coderivation(s.space())};
        Coderivation d = s.differential();
        for (auto k : space.keys()) {
            if (k.degree > 3) continue;
            if (k.arity == 1) stub.d.set(k, d.component(k));
            else if (k.arity == 2) stub.d.set(k, detail::block_matrix(space, k, [&](const SymWord& w) { return column2_value(s, w); }));
            else stub.d.set(k, detail::block_matrix(space, k, [&](const SymWord& w) { return stub_cubic_value(s, w); }));
        }
        return stub;
    }

    // The arity-two column in every degree.
    inline Coderivation seed_n2_column(const PirashviliSetting& s) {
        const auto& space = *s.space();
        Coderivation out(s.space());
        for (auto k : space.keys())
            if (k.arity == 2)
                out.set(k, detail::block_matrix(space, k, [&](const SymWord& w) { return column2_value(s, w); }));
        return out;
    }

    struct StubValidity {
        bool sequence = true;  // sW_2 -> sW_1 -> sW_0 composes to zero
        bool mixed = true;     // the two composites sW_1 (x) sW_0 -> sW_0 cancel
        bool cubic = true;     // the two composites S^3(sW_0) -> sW_0 cancel
        std::vector<SymKey> failures;

        bool ok() const { return sequence && mixed && cubic; }
    };

    /* The three conditions, each evaluated as an explicit sum of two
     * composites on every basis monomial. */
    inline StubValidity check_stub(const Stub3& stub) {
        StubValidity out;
        const auto& space = stub.d.space();
        const auto& alphabet = space.alphabet();
        auto alpha_of = [&](const SymElement& x) { return stub.d.bar(x); };  // on linear elements of degree 2
        auto beta_of = [&](const SymElement& x) { return stub.d.bar(x); };   // on S^2(sW_0)
        for (auto k : space.keys()) {
            if (k.arity == 1 && k.degree == 3) {
                for (const auto& w : space.words(k))
                    if (!alpha_of(stub.d.bar(w)).empty()) {
                        out.sequence = false;
                        out.failures.push_back(k);
                        break;
                    }
            }
            if (k.arity == 2 && k.degree == 3) {
                for (const auto& w : space.words(k)) {
                    // w = z X with z in sW_0 and X in sW_1; X z = sign * w
                    auto n = normalize(Word{w[1], w[0]}, alphabet);
                    SymElement via_alpha;
                    for (const auto& [u, c] : stub.d.bar(SymWord{w[1]})) {
                        auto m = normalize(Word{u.front(), w[0]}, alphabet);
                        if (m) via_alpha.add(m->first, n->second * m->second * c);
                    }
                    SymElement total = beta_of(via_alpha) + alpha_of(stub.d.bar(w));
                    if (!total.empty()) {
                        out.mixed = false;
                        out.failures.push_back(k);
                        break;
                    }
                }
            }
            if (k.arity == 3 && k.degree == 3) {
                for (const auto& w : space.words(k)) {
                    SymElement via_beta;
                    for_each_split(w, alphabet.hom_degrees(w), [&](const Word& l, const Word& r, int sign) {
                        if (l.size() != 2) return;
                        for (const auto& [u, c] : stub.d.bar(l)) {
                            auto m = normalize(Word{u.front(), r.front()}, alphabet);
                            if (m) via_beta.add(m->first, sign * m->second * c);
                        }
                    });
                    SymElement total = beta_of(via_beta) + alpha_of(stub.d.bar(w));
                    if (!total.empty()) {
                        out.cubic = false;
                        out.failures.push_back(k);
                        break;
                    }
                }
            }
        }
        return out;
    }

    struct Obstruction {
        SymKey key;
        std::size_t column = 0;            // the monomial where solving failed
        SparseVector composite;            // the cycle that is not a boundary
        SparseVector homology_class;       // its class in H_{degree-2}(sW)
    };

    struct ExtendOptions {
        bool seed_column2 = true;                 // use the explicit arity-two column
        std::optional<std::uint64_t> perturbation;  // add seeded cycles to every solution
    };

    struct ExtendResult {
        Coderivation d;
        std::optional<Obstruction> obstruction;
        std::vector<SymKey> solved;
        std::vector<SymKey> seeded;
        std::optional<SymKey> seed_mismatch;  // seeded block violating d-bar o d = 0
        std::optional<SymKey> not_cycle;      // composite with nonzero boundary

        bool ok() const { return !obstruction && !seed_mismatch && !not_cycle; }
    };

    /* Induction over arity n >= 2 and then degree t > 3: the composite of
     * d with the known components d_{k,1}, k > 1, is a cycle; it must be a
     * boundary d f and f is the next component, with the sign making
     * d-bar o d vanish. */
    inline ExtendResult extend_stub(const PirashviliSetting& s, const Stub3& stub, ExtendOptions opts = {}) {
        const auto& space = *s.space();
        ExtendResult res{s.differential(), std::nullopt, {}, {}, std::nullopt, std::nullopt};
        Coderivation& d = res.d;
        for (const auto& [k, m] : stub.d.components())
            if (k.degree <= 3) d.set(k, m);
        Coderivation seed;
        if (opts.seed_column2) seed = seed_n2_column(s);
        std::optional<std::mt19937_64> rng;
        if (opts.perturbation) rng.emplace(*opts.perturbation);
        std::uniform_int_distribution<int> coeff(-2, 2);

        const LinftyCaps caps = space.caps();
        for (int n = 2; n <= caps.max_arity; ++n)
            for (int t = std::max(n, 4); t <= caps.max_degree; ++t)
                for (auto k : space.keys()) {
                    if (k.arity != n || k.degree != t) continue;
                    const auto& words = space.words(k);
                    d.set(k, SparseMatrix(space.linear_dim(t - 1, k.weight), words.size()));
                    SymKey low{1, t - 2, k.weight};
                    std::vector<SparseVector> composite(words.size());
                    parallel_for(words.size(), [&](std::size_t i) {
                        composite[i] = space.vector(d.bar(d.apply(words[i])), low);
                    });
                    SparseMatrix d_low = d.component({1, t - 2, k.weight});
                    SparseMatrix d_mid = d.component({1, t - 1, k.weight});
                    for (const auto& c : composite)
                        if (!d_low.apply(c).empty() && !res.not_cycle) res.not_cycle = k;
                    if (opts.seed_column2 && n == 2) {
                        SparseMatrix m = seed.component(k);
                        for (std::size_t i = 0; i < words.size(); ++i)
                            if (!(d_mid.apply(m.column(i)) == -composite[i]) && !res.seed_mismatch) res.seed_mismatch = k;
                        d.set(k, std::move(m));
                        res.seeded.push_back(k);
                        continue;
                    }
                    LinearSolver solver(d_mid);
                    Subspace cycles = kernel_basis(d_mid);
                    std::vector<SparseVector> cols;
                    for (std::size_t i = 0; i < words.size(); ++i) {
                        auto f = solver.solve(-composite[i]);
                        if (!f) {
                            Obstruction o{k, i, composite[i], {}};
                            if (const auto* h = s.homology().find({t - 2, k.weight}))
                                if (auto c = h->classes.coordinates(composite[i])) o.homology_class = *c;
                            res.obstruction = std::move(o);
                            return res;
                        }
                        if (rng)
                            for (const auto& z : cycles.basis()) f->axpy(Rational(coeff(*rng)), z);
                        cols.push_back(std::move(*f));
                    }
                    d.set(k, SparseMatrix::from_columns(space.linear_dim(t - 1, k.weight), cols));
                    res.solved.push_back(k);
                }
        return res;
    }

    // ---------------------------------------------------------------------
    // Alignment of two structures with the same differential.
    // ---------------------------------------------------------------------

    struct AlignFailure {
        SymKey key;
        std::size_t column = 0;
        SparseVector difference;  // not a boundary
    };

    struct AlignResult {
        std::optional<CoalgebraMorphism> morphism;  // from the second structure to the first
        std::optional<AlignFailure> failure;
        std::vector<SymKey> steps;
    };

    /* Builds F with F d' F^{-1} = d: repeatedly take the lowest arity and
     * then degree where d and the current transport of d' differ, solve
     * d_{1,1} f = difference, and transport by the morphism with that single
     * component. */
    inline AlignResult align(const Coderivation& d, const Coderivation& other) {
        if (d.space_ptr() != other.space_ptr()) throw ArgumentError("align: different underlying spaces");
        const auto& space = d.space();
        for (auto k : space.keys()) {
            if (k.arity == 1 && !(d.component(k) == other.component(k)))
                throw ArgumentError("align: the linear differentials differ");
            if (k.arity == 2 && k.degree == 2 && !(d.component(k) == other.component(k)))
                throw ArgumentError("align: the quadratic parts on S^2(sW_0) differ");
        }
        AlignResult res;
        Coderivation current = other;
        CoalgebraMorphism total(d.space_ptr());
        std::pair<int, int> last{0, 0};
        for (;;) {
            std::optional<std::pair<int, int>> at;
            for (auto k : space.keys())
                if (!(d.component(k) == current.component(k))) {
                    at = std::make_pair(k.arity, k.degree);
                    break;
                }
            if (!at) break;
            if (*at <= last) throw ConsistencyError("align made no progress");
            last = *at;
            CoalgebraMorphism step(d.space_ptr());
            for (auto k : space.keys()) {
                if (k.arity != at->first || k.degree != at->second) continue;
                SparseMatrix diff = current.component(k) - d.component(k);
                if (diff.is_zero()) continue;
                LinearSolver solver(d.component({1, k.degree, k.weight}));
                std::vector<SparseVector> cols;
                for (std::size_t i = 0; i < diff.cols(); ++i) {
                    SparseVector col = diff.column(i);
                    auto f = solver.solve(col);
                    if (!f) {
                        res.failure = AlignFailure{k, i, col};
                        return res;
                    }
                    cols.push_back(std::move(*f));
                }
                step.set(k, SparseMatrix::from_columns(space.linear_dim(k.degree, k.weight), cols));
                res.steps.push_back(k);
            }
            current = transport(current, step);
            total = compose(step, total);
        }
        res.morphism = std::move(total);
        return res;
    }

    // ---------------------------------------------------------------------
    // The bracket induced on H_1 = g_Lie.
    // ---------------------------------------------------------------------

    struct BracketPair {
        std::size_t a = 0, b = 0;  // basis indices of g_Lie
        SparseVector induced;      // class of d_{2,1}((sx)(sy)) in g_Lie
        SparseVector expected;     // -(xbar * ybar)
        bool ok = false;
    };

    struct BracketCheck {
        bool h1_matches = true;  // H_1(sW) has the dimensions of g_Lie weightwise
        std::vector<BracketPair> pairs;

        bool ok() const {
            return h1_matches && std::all_of(pairs.begin(), pairs.end(), [](const BracketPair& p) { return p.ok; });
        }
    };

    /* Evaluates d_{2,1} on products of lifted generators of g_Lie and
     * compares the class in H_1 = sg / im d = g_Lie with -(x * y). */
    inline BracketCheck induced_bracket_on_homology(const PirashviliSetting& s, const Coderivation& d) {
        BracketCheck out;
        const auto& g = s.algebra();
        LieQuotient q(g);
        const auto& space = *s.space();
        std::map<int, std::size_t> lie_dims;
        for (std::size_t a = 0; a < q.dim(); ++a) ++lie_dims[q.weight(a)];
        for (const auto& [b, h] : s.homology().blocks)
            if (b.degree == 1 && h.betti != lie_dims[b.weight]) out.h1_matches = false;
        for (std::size_t a = 0; a < q.dim(); ++a)
            for (std::size_t b = 0; b < q.dim(); ++b) {
                const int w = q.weight(a) + q.weight(b);
                if (!g.in_cap(w) || (space.weighted() && w > space.caps().max_weight) || space.caps().max_degree < 2)
                    continue;
                SparseVector x = q.section(SparseVector::unit(a)), y = q.section(SparseVector::unit(b));
                SymElement xy = sym_product(s.suspend(x), s.suspend(y), space.alphabet());
                SymElement image = d.bar(xy);
                SparseVector in_g;
                for (const auto& [u, c] : image) in_g.axpy(c, SparseVector::unit(s.letter_of(u.front())));
                BracketPair p;
                p.a = a;
                p.b = b;
                p.induced = q.project(in_g);
                p.expected = -q.project(g.multiply(x, y) - g.multiply(y, x));
                p.ok = p.induced == p.expected;
                out.pairs.push_back(std::move(p));
            }
        return out;
    }

}  // namespace loday

#endif  // LODAY_LINFTY_HPP
