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
 // Chain complexes built from a Leibniz algebra g: the Leibniz complex on
 // T(sg), its subcomplex of primitives Lie(sg), the Chevalley-Eilenberg
 // complex of g_Lie, the comparison map between them, and a blockwise
 // homology engine.

#ifndef LODAY_COMPLEXES_HPP
#define LODAY_COMPLEXES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graded.hpp"
#include "leibniz.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace loday {

    /* A complex split into (degree, weight) blocks. The differential of block
     * (t, w) maps into block (t - 1, w); a missing matrix means zero. */
    struct ChainComplex {
        std::string name;
        Caps caps;
        std::map<Block, std::size_t> dims;
        std::map<Block, SparseMatrix> differentials;

        std::size_t dim(Block b) const {
            auto it = dims.find(b);
            return it == dims.end() ? 0 : it->second;
        }

        SparseMatrix differential(Block b) const {
            auto it = differentials.find(b);
            if (it != differentials.end()) return it->second;
            return SparseMatrix(dim({b.degree - 1, b.weight}), dim(b));
        }

        std::vector<Block> blocks() const {
            std::vector<Block> out;
            for (const auto& [b, n] : dims) out.push_back(b);
            return out;
        }

        std::vector<int> weights() const {
            std::vector<int> out;
            for (const auto& [b, n] : dims)
                if (std::find(out.begin(), out.end(), b.weight) == out.end()) out.push_back(b.weight);
            std::sort(out.begin(), out.end());
            return out;
        }
    };

    // First block where d o d is nonzero, if any.
    inline std::optional<Block> check_square_zero(const ChainComplex& c) {
        for (const auto& [b, n] : c.dims) {
            if (b.degree < 2) continue;
            Block below{b.degree - 1, b.weight};
            if (!c.dims.count(below)) continue;
            if (!(c.differential(below) * c.differential(b)).is_zero()) return b;
        }
        return std::nullopt;
    }

    struct HomologyBlock {
        Block block;
        std::size_t dim = 0;
        std::size_t betti = 0;
        std::size_t rank_in = 0;   // rank of the differential arriving in this block
        std::size_t rank_out = 0;  // rank of the differential leaving this block
        Subspace cycles;
        Subspace boundaries;
        Quotient classes;  // cycles / boundaries

        const std::vector<SparseVector>& representatives() const { return classes.representatives(); }
    };

    struct Homology {
        std::string complex;
        Caps caps;
        std::map<Block, HomologyBlock> blocks;

        const HomologyBlock* find(Block b) const {
            auto it = blocks.find(b);
            return it == blocks.end() ? nullptr : &it->second;
        }

        std::size_t betti(Block b) const {
            auto p = find(b);
            return p ? p->betti : 0;
        }

        std::size_t betti_in_degree(int t) const {
            std::size_t s = 0;
            for (const auto& [b, h] : blocks)
                if (b.degree == t) s += h.betti;
            return s;
        }

        int max_degree() const {
            int m = -1;
            for (const auto& [b, h] : blocks) m = std::max(m, b.degree);
            return m;
        }
    };

    /* Homology of every block (t, w) with t + 1 <= T, so that both adjacent
     * differentials exist. Refuses complexes with d o d != 0. */
    inline Homology homology(const ChainComplex& c) {
        if (auto bad = check_square_zero(c))
            throw ConsistencyError("d o d != 0 on block (degree " + std::to_string(bad->degree) + ", weight " +
                                   std::to_string(bad->weight) + ") of the " + c.name + " complex");
        std::vector<Block> todo;
        for (const auto& [b, n] : c.dims)
            if (b.degree + 1 <= c.caps.max_degree) todo.push_back(b);
        std::vector<HomologyBlock> out(todo.size());
        parallel_for(todo.size(), [&](std::size_t i) {
            Block b = todo[i];
            HomologyBlock h;
            h.block = b;
            h.dim = c.dim(b);
            SparseMatrix d_out = c.differential(b);
            SparseMatrix d_in = c.differential({b.degree + 1, b.weight});
            h.cycles = kernel_basis(d_out);
            h.boundaries = image_basis(d_in);
            h.rank_out = h.dim - h.cycles.dim();
            h.rank_in = h.boundaries.dim();
            h.classes = Quotient(h.cycles, h.boundaries);
            h.betti = h.classes.dim();
            out[i] = std::move(h);
        });
        Homology result{c.name, c.caps, {}};
        for (auto& h : out) result.blocks.emplace(h.block, std::move(h));
        return result;
    }

    /* Matrix of the map induced on homology by a chain map block f: columns
     * index the classes of src, rows the classes of tgt. */
    inline SparseMatrix induced_on_homology(const SparseMatrix& f, const HomologyBlock& src, const HomologyBlock& tgt) {
        std::vector<SparseVector> cols;
        for (const auto& rep : src.representatives()) {
            SparseVector image = f.apply(rep);
            auto coords = tgt.classes.coordinates(image);
            if (!coords) throw ConsistencyError("chain map does not send cycles to cycles");
            cols.push_back(std::move(*coords));
        }
        return SparseMatrix::from_columns(tgt.betti, cols);
    }

    /* Words over an alphabet of weighted letters, grouped in (length, weight)
     * blocks, lexicographically ordered inside each block. Unweighted
     * alphabets (all weights 0) have a single weight block. */
    class WordBasis {
    public:
        WordBasis() = default;

        WordBasis(std::vector<int> letter_weights, int max_length, int max_weight)
            : weights_(std::move(letter_weights)), max_length_(max_length), max_weight_(max_weight) {
            const bool weighted = std::any_of(weights_.begin(), weights_.end(), [](int w) { return w != 0; });
            if (!weighted) max_weight_ = 0;
            for (int t = 0; t <= max_length_; ++t)
                for (int w = 0; w <= max_weight_; ++w) words_[{t, w}];
            Word cur;
            std::function<void(int)> rec = [&](int weight) {
                Block b{static_cast<int>(cur.size()), weight};
                auto& list = words_[b];
                index_.emplace(cur, list.size());
                list.push_back(cur);
                if (static_cast<int>(cur.size()) == max_length_) return;
                for (std::size_t l = 0; l < weights_.size(); ++l) {
                    const int nw = weight + weights_[l];
                    if (nw > max_weight_) continue;
                    cur.push_back(static_cast<int>(l));
                    rec(nw);
                    cur.pop_back();
                }
            };
            rec(0);
        }

        int max_length() const { return max_length_; }
        int max_weight() const { return max_weight_; }
        std::size_t letters() const { return weights_.size(); }
        int letter_weight(int l) const { return weights_.at(static_cast<std::size_t>(l)); }

        std::vector<Block> blocks() const {
            std::vector<Block> out;
            for (const auto& [b, w] : words_) out.push_back(b);
            return out;
        }

        bool has_block(Block b) const { return words_.count(b) > 0; }

        const std::vector<Word>& words(Block b) const {
            static const std::vector<Word> none;
            auto it = words_.find(b);
            return it == words_.end() ? none : it->second;
        }

        std::size_t dim(Block b) const { return words(b).size(); }

        Block block_of(const Word& w) const {
            int weight = 0;
            for (int l : w) weight += letter_weight(l);
            return {static_cast<int>(w.size()), weight};
        }

        std::optional<std::size_t> index(const Word& w) const {
            auto it = index_.find(w);
            if (it == index_.end()) return std::nullopt;
            return it->second;
        }

        SparseVector vector(const TensorElement& x, Block b) const {
            std::vector<SparseVector::Entry> e;
            for (const auto& [w, c] : x) {
                if (!(block_of(w) == b)) throw ArgumentError("tensor element does not lie in the requested block");
                auto i = index(w);
                if (!i) throw TruncationError("tensor word outside the caps");
                e.emplace_back(*i, c);
            }
            return SparseVector(std::move(e));
        }

        TensorElement element(const SparseVector& v, Block b) const {
            TensorElement out;
            const auto& list = words(b);
            for (const auto& [i, c] : v) out.add(list.at(i), c);
            return out;
        }

    private:
        std::vector<int> weights_;
        int max_length_ = 0;
        int max_weight_ = 0;
        std::map<Block, std::vector<Word>> words_;
        std::map<Word, std::size_t> index_;
    };

    // d(sx_1 ... sx_n) = sum_{i<j} (-1)^{j+1} sx_1 .. s(x_i x_j) .. (sx_j omitted) .. sx_n, 1-based.
    inline TensorElement leibniz_differential(const LeibnizAlgebra& g, const Word& word) {
        TensorElement out;
        const std::size_t n = word.size();
        for (std::size_t j = 1; j < n; ++j) {
            const int sign = is_odd(static_cast<int>(j)) ? -1 : 1;
            for (std::size_t i = 0; i < j; ++i) {
                const auto& prod = g.product(static_cast<std::size_t>(word[i]), static_cast<std::size_t>(word[j]));
                for (const auto& [k, c] : prod) {
                    Word w;
                    w.reserve(n - 1);
                    for (std::size_t p = 0; p < n; ++p) {
                        if (p == j) continue;
                        w.push_back(p == i ? static_cast<int>(k) : word[p]);
                    }
                    out.add(w, sign * c);
                }
            }
        }
        return out;
    }

    inline TensorElement leibniz_differential(const LeibnizAlgebra& g, const TensorElement& x) {
        TensorElement out;
        for (const auto& [w, c] : x) out.add(leibniz_differential(g, w), c);
        return out;
    }

    // Diagonal right action X.y of a basis element y of g on a word of T(sg).
    inline TensorElement act(const LeibnizAlgebra& g, const Word& word, std::size_t y) {
        TensorElement out;
        for (std::size_t i = 0; i < word.size(); ++i)
            for (const auto& [k, c] : g.product(static_cast<std::size_t>(word[i]), y)) {
                Word w = word;
                w[i] = static_cast<int>(k);
                out.add(w, c);
            }
        return out;
    }

    inline TensorElement act(const LeibnizAlgebra& g, const TensorElement& x, std::size_t y) {
        TensorElement out;
        for (const auto& [w, c] : x) out.add(act(g, w, y), c);
        return out;
    }

    // (X (x) sy) -> (-1)^n X.y for X of length n.
    inline TensorElement dlie_n1(const LeibnizAlgebra& g, const Word& word) {
        if (word.empty()) throw ArgumentError("dlie_n1 needs a non-empty word");
        Word head(word.begin(), word.end() - 1);
        TensorElement out = act(g, head, static_cast<std::size_t>(word.back()));
        if (is_odd(static_cast<int>(head.size()))) out.scale(-1);
        return out;
    }

    /* The composite (dlie_{n,1} (x) Id) o (Id (x) one_delta) on a word of
     * length n + t, split after its first n letters. Zero when t = 0. */
    inline TensorElement dlie_nt(const LeibnizAlgebra& g, const Word& word, std::size_t t) {
        TensorElement out;
        if (t == 0) return out;
        if (t > word.size()) throw ArgumentError("dlie_nt: split exceeds word length");
        const std::size_t n = word.size() - t;
        Word head(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(n));
        Word tail(word.begin() + static_cast<std::ptrdiff_t>(n), word.end());
        for (const auto& [lr, c] : one_delta(TensorElement(tail), g.suspended_alphabet())) {
            Word hy = head;
            hy.push_back(lr.first.front());
            for (const auto& [u, a] : dlie_n1(g, hy)) {
                Word w = u;
                w.insert(w.end(), lr.second.begin(), lr.second.end());
                out.add(w, c * a);
            }
        }
        return out;
    }

    // Iterated left-normed graded bracket [[..[sx_1, sx_2], ..], sx_n].
    inline TensorElement left_normed_bracket(const Word& word) {
        if (word.empty()) throw ArgumentError("bracket of an empty word");
        TensorElement acc(Word{word.front()});
        for (std::size_t i = 1; i < word.size(); ++i)
            acc = graded_bracket(acc, static_cast<int>(i), TensorElement(Word{word[i]}), 1);
        return acc;
    }

    /* The Leibniz complex (T(sg), d) truncated at tensor length T and
     * weight W. */
    class LeibnizComplex {
    public:
        LeibnizComplex() = default;

        LeibnizComplex(LeibnizAlgebra g, Caps caps) : g_(std::move(g)), caps_(caps) {
            if (caps.max_degree < 1 || caps.max_weight < 1) throw ArgumentError("caps must satisfy T >= 1 and W >= 1");
            if (g_.weight_cap() && caps.max_weight > *g_.weight_cap())
                throw TruncationError("weight cap " + std::to_string(caps.max_weight) +
                                      " exceeds the algebra's truncation " + std::to_string(*g_.weight_cap()));
            basis_ = WordBasis(g_.weights(), caps.max_degree, caps.max_weight);
            chain_.name = "leibniz";
            chain_.caps = caps;
            auto blocks = basis_.blocks();
            for (auto b : blocks) chain_.dims[b] = basis_.dim(b);
            std::vector<SparseMatrix> mats(blocks.size());
            parallel_for(blocks.size(), [&](std::size_t i) {
                Block b = blocks[i];
                Block below{b.degree - 1, b.weight};
                std::vector<SparseVector> cols;
                for (const auto& w : basis_.words(b)) cols.push_back(basis_.vector(differential(w), below));
                mats[i] = SparseMatrix::from_columns(basis_.dim(below), cols);
            });
            for (std::size_t i = 0; i < blocks.size(); ++i)
                if (blocks[i].degree >= 1) chain_.differentials.emplace(blocks[i], std::move(mats[i]));
        }

        const LeibnizAlgebra& algebra() const { return g_; }
        Caps caps() const { return caps_; }
        const WordBasis& basis() const { return basis_; }
        const ChainComplex& chain() const { return chain_; }
        Alphabet alphabet() const { return g_.suspended_alphabet(); }

        TensorElement differential(const Word& w) const { return leibniz_differential(g_, w); }
        TensorElement differential(const TensorElement& x) const { return leibniz_differential(g_, x); }

        // d applied to a block vector; the result lies in (degree - 1, weight).
        SparseVector apply(const SparseVector& v, Block b) const {
            if (b.degree == 0) return {};
            return chain_.differentials.at(b).apply(v);
        }

    private:
        LeibnizAlgebra g_;
        Caps caps_;
        WordBasis basis_;
        ChainComplex chain_;
    };

    inline LeibnizComplex leibniz_complex(const LeibnizAlgebra& g, Caps caps) { return LeibnizComplex(g, caps); }

    /* Primitive elements of T(sg) per block: the kernel of the reduced
     * coproduct x -> Delta(x) - x (x) 1 - 1 (x) x, in canonical form. */
    inline std::map<Block, Subspace> lie_primitives(const WordBasis& basis, const Alphabet& alphabet) {
        auto blocks = basis.blocks();
        std::vector<Subspace> out(blocks.size());
        parallel_for(blocks.size(), [&](std::size_t bi) {
            Block b = blocks[bi];
            const auto& words = basis.words(b);
            if (b.degree == 0) {
                out[bi] = Subspace::zero(words.size());
                return;
            }
            std::map<std::pair<Word, Word>, std::size_t> rows;
            std::vector<std::vector<SparseVector::Entry>> cols(words.size());
            for (std::size_t c = 0; c < words.size(); ++c) {
                auto hom = alphabet.hom_degrees(words[c]);
                for_each_split(words[c], hom, [&](const Word& l, const Word& r, int sign) {
                    if (l.empty() || r.empty()) return;
                    auto [it, ins] = rows.try_emplace({l, r}, rows.size());
                    cols[c].emplace_back(it->second, Rational(sign));
                });
            }
            std::vector<SparseVector> columns;
            for (auto& c : cols) columns.emplace_back(std::move(c));
            out[bi] = kernel_basis(SparseMatrix::from_columns(rows.size(), columns));
        });
        std::map<Block, Subspace> result;
        for (std::size_t i = 0; i < blocks.size(); ++i) result.emplace(blocks[i], std::move(out[i]));
        return result;
    }

    // Independent construction: the span of all left-normed brackets of letters.
    inline std::map<Block, Subspace> bracket_span(const WordBasis& basis) {
        std::map<Block, Subspace> result;
        for (auto b : basis.blocks()) {
            std::vector<SparseVector> gens;
            if (b.degree > 0)
                for (const auto& w : basis.words(b)) gens.push_back(basis.vector(left_normed_bracket(w), b));
            result.emplace(b, Subspace::span(basis.dim(b), gens));
        }
        return result;
    }

    /* The subcomplex Lie(sg) of primitives, written in the canonical basis of
     * each primitive block. Closure under d is verified while building. */
    struct PirashviliComplex {
        ChainComplex chain;
        std::map<Block, Subspace> primitives;  // ambient: the T(sg) block

        // The i-th basis primitive of block b as a T(sg) block vector.
        const SparseVector& primitive(Block b, std::size_t i) const { return primitives.at(b).basis().at(i); }
    };

    inline PirashviliComplex pirashvili_complex(const LeibnizComplex& lc) {
        PirashviliComplex p;
        p.primitives = lie_primitives(lc.basis(), lc.alphabet());
        p.chain.name = "pirashvili";
        p.chain.caps = lc.caps();
        for (const auto& [b, s] : p.primitives) p.chain.dims[b] = s.dim();
        auto blocks = lc.basis().blocks();
        std::vector<std::optional<SparseMatrix>> mats(blocks.size());
        parallel_for(blocks.size(), [&](std::size_t i) {
            Block b = blocks[i];
            if (b.degree < 1) return;
            Block below{b.degree - 1, b.weight};
            const auto& target = p.primitives.at(below);
            std::vector<SparseVector> cols;
            for (const auto& v : p.primitives.at(b).basis()) {
                auto c = target.coordinates(lc.apply(v, b));
                if (!c) throw ConsistencyError("d of a primitive is not primitive");
                cols.push_back(std::move(*c));
            }
            mats[i] = SparseMatrix::from_columns(target.dim(), cols);
        });
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (mats[i]) p.chain.differentials.emplace(blocks[i], std::move(*mats[i]));
        return p;
    }

    /* Chevalley-Eilenberg complex S(s g_Lie) with differential transported
     * from the Leibniz complex of g_Lie along T(s g_Lie) -> S(s g_Lie). */
    class CeComplex {
    public:
        CeComplex() = default;

        CeComplex(const LieQuotient& q, Caps caps) : lie_(q.as_algebra()), caps_(caps) {
            std::vector<Degree> letters;
            for (std::size_t a = 0; a < lie_.dim(); ++a) letters.push_back({1, lie_.weight(a)});
            alphabet_ = Alphabet(letters);
            const bool weighted = std::any_of(letters.begin(), letters.end(), [](Degree d) { return d.weight != 0; });
            const int wmax = weighted ? caps.max_weight : 0;
            for (int t = 0; t <= caps.max_degree; ++t)
                for (int w = 0; w <= wmax; ++w) {
                    auto words = sym_basis(alphabet_, t, Block{t, w});
                    for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i], i);
                    basis_[{t, w}] = std::move(words);
                }
            chain_.name = "ce";
            chain_.caps = caps;
            for (const auto& [b, w] : basis_) chain_.dims[b] = w.size();
            for (const auto& [b, words] : basis_) {
                if (b.degree < 1) continue;
                Block below{b.degree - 1, b.weight};
                std::vector<SparseVector> cols;
                for (const auto& w : words) cols.push_back(vector(transported_differential(w), below));
                chain_.differentials.emplace(b, SparseMatrix::from_columns(dim(below), cols));
            }
        }

        const LeibnizAlgebra& lie_algebra() const { return lie_; }
        const Alphabet& alphabet() const { return alphabet_; }
        const ChainComplex& chain() const { return chain_; }
        std::size_t dim(Block b) const { return chain_.dim(b); }

        const std::vector<SymWord>& words(Block b) const {
            static const std::vector<SymWord> none;
            auto it = basis_.find(b);
            return it == basis_.end() ? none : it->second;
        }

        SparseVector vector(const SymElement& x, Block b) const {
            std::vector<SparseVector::Entry> e;
            for (const auto& [w, c] : x) {
                auto it = index_.find(w);
                Degree d = alphabet_.degree(w);
                if (it == index_.end() || d.hom != b.degree || d.weight != b.weight)
                    throw ArgumentError("symmetric element outside the requested block");
                e.emplace_back(it->second, c);
            }
            return SparseVector(std::move(e));
        }

        // The projection T(s g_Lie) -> S(s g_Lie).
        SymElement project(const TensorElement& x) const {
            SymElement out;
            for (const auto& [w, c] : x)
                if (auto n = normalize(w, alphabet_)) out.add(n->first, n->second * c);
            return out;
        }

        /* d of a canonical word, computed on its ordered representative and
         * checked against every reordering (all of them up to arity 5,
         * adjacent transpositions beyond). */
        SymElement transported_differential(const SymWord& w) const {
            SymElement d = project(leibniz_differential(lie_, w));
            auto check = [&](const Word& perm) {
                auto n = normalize(perm, alphabet_);
                SymElement alt = project(leibniz_differential(lie_, perm));
                alt.scale(n->second);
                if (!(alt == d)) throw ConsistencyError("transported differential depends on the representative");
            };
            if (w.size() <= 5) {
                Word perm = w;
                while (std::next_permutation(perm.begin(), perm.end())) check(perm);
            } else {
                for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                    Word perm = w;
                    std::swap(perm[i], perm[i + 1]);
                    check(perm);
                }
            }
            return d;
        }

        // (sx)(sy) -> -s[x, y] extended as a coderivation.
        SymElement classical_differential(const SymWord& w) const {
            SymElement out;
            const std::size_t n = w.size();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const int sign = is_odd(static_cast<int>(i + j - 1)) ? -1 : 1;
                    Word rest;
                    for (std::size_t k = 0; k < n; ++k)
                        if (k != i && k != j) rest.push_back(w[k]);
                    for (const auto& [a, c] : lie_.product(static_cast<std::size_t>(w[i]), static_cast<std::size_t>(w[j]))) {
                        Word full{static_cast<int>(a)};
                        full.insert(full.end(), rest.begin(), rest.end());
                        if (auto nm = normalize(full, alphabet_)) out.add(nm->first, -sign * nm->second * c);
                    }
                }
            return out;
        }

    private:
        LeibnizAlgebra lie_;
        Caps caps_;
        Alphabet alphabet_;
        std::map<Block, std::vector<SymWord>> basis_;
        std::map<SymWord, std::size_t> index_;
        ChainComplex chain_;
    };

    inline CeComplex ce_complex(const LieQuotient& q, Caps caps) { return CeComplex(q, caps); }

    /* The composite T(sg) -> T(s g_Lie) -> S(s g_Lie), blockwise. */
    struct ComparisonMap {
        std::map<Block, SparseMatrix> blocks;

        SparseMatrix at(Block b) const { return blocks.at(b); }
    };

    inline SymElement compare_word(const LieQuotient& q, const CeComplex& ce, const Word& word) {
        std::vector<SparseVector> letters;
        for (int l : word) letters.push_back(q.project(SparseVector::unit(static_cast<std::size_t>(l))));
        SymElement out;
        Word choice(word.size());
        std::function<void(std::size_t, Rational)> rec = [&](std::size_t k, Rational c) {
            if (k == word.size()) {
                if (auto n = normalize(choice, ce.alphabet())) out.add(n->first, n->second * c);
                return;
            }
            for (const auto& [a, v] : letters[k]) {
                choice[k] = static_cast<int>(a);
                rec(k + 1, c * v);
            }
        };
        rec(0, Rational(1));
        return out;
    }

    inline ComparisonMap comparison_chain_map(const LeibnizComplex& lc, const LieQuotient& q, const CeComplex& ce) {
        ComparisonMap f;
        for (auto b : lc.basis().blocks()) {
            std::vector<SparseVector> cols;
            for (const auto& w : lc.basis().words(b)) {
                SymElement img = compare_word(q, ce, w);
                cols.push_back(ce.dim(b) == 0 && img.empty() ? SparseVector{} : ce.vector(img, b));
            }
            f.blocks.emplace(b, SparseMatrix::from_columns(ce.dim(b), cols));
        }
        return f;
    }

    // Blocks where the comparison map fails to commute with the differentials.
    inline std::vector<Block> comparison_defects(const LeibnizComplex& lc, const CeComplex& ce, const ComparisonMap& f) {
        std::vector<Block> bad;
        for (auto b : lc.basis().blocks()) {
            if (b.degree < 1) continue;
            Block below{b.degree - 1, b.weight};
            SparseMatrix lhs = f.at(below) * lc.chain().differential(b);
            SparseMatrix rhs = ce.chain().differential(b) * f.at(b);
            if (!(lhs == rhs)) bad.push_back(b);
        }
        return bad;
    }

}  // namespace loday

#endif  // LODAY_COMPLEXES_HPP
