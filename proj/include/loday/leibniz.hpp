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
 // Finite-dimensional (right) Leibniz algebras given by structure constants,
 // their Lie quotient, and weight-truncated free Leibniz algebras.

#ifndef LODAY_LEIBNIZ_HPP
#define LODAY_LEIBNIZ_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graded.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace loday {

    // Coefficient vector over the algebra basis.
    using Element = std::vector<Rational>;

    /* Algebra with basis e_0..e_{dim-1} and products e_i e_j given sparsely.
     * Weights, when present, grade the algebra: e_i e_j has weight
     * w_i + w_j. A weight cap marks a truncated algebra: asking for a product
     * whose weight exceeds the cap is an error rather than a silent zero. */
    class LeibnizAlgebra {
    public:
        using Products = std::map<std::pair<std::size_t, std::size_t>, SparseVector>;

        LeibnizAlgebra() = default;

        LeibnizAlgebra(std::size_t dim, std::vector<std::string> labels, Products products,
                       std::optional<std::vector<int>> weights = std::nullopt,
                       std::optional<int> weight_cap = std::nullopt)
            : dim_(dim), labels_(std::move(labels)), weights_(std::move(weights)), cap_(weight_cap) {
            if (labels_.empty())
                for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
            if (labels_.size() != dim_) throw ArgumentError("label count does not match dimension");
            if (weights_) {
                if (weights_->size() != dim_) throw ArgumentError("weight count does not match dimension");
                for (int w : *weights_)
                    if (w < 0) throw ArgumentError("weights must be non-negative");
            }
            if (cap_ && !weights_) throw ArgumentError("a weight cap needs weights");
            for (auto& [ij, v] : products) {
                auto [i, j] = ij;
                if (i >= dim_ || j >= dim_) throw ArgumentError("product index out of range");
                if (v.extent() > dim_) throw ArgumentError("product value has wrong length");
                if (v.empty()) continue;
                if (weights_) {
                    const int w = weight(i) + weight(j);
                    if (cap_ && w > *cap_) throw ArgumentError("product stored beyond the weight cap");
                    for (const auto& [k, c] : v)
                        if (weight(k) != w) throw ArgumentError("product does not respect weights");
                }
                products_.emplace(ij, std::move(v));
            }
        }

        std::size_t dim() const { return dim_; }
        const std::vector<std::string>& labels() const { return labels_; }
        const std::string& label(std::size_t i) const { return labels_.at(i); }
        bool weighted() const { return weights_.has_value(); }
        int weight(std::size_t i) const { return weights_ ? weights_->at(i) : 0; }
        std::vector<int> weights() const { return weights_ ? *weights_ : std::vector<int>(dim_, 0); }
        std::optional<int> weight_cap() const { return cap_; }
        const Products& products() const { return products_; }

        bool in_cap(int total_weight) const { return !cap_ || total_weight <= *cap_; }

        const SparseVector& product(std::size_t i, std::size_t j) const {
            if (i >= dim_ || j >= dim_) throw ArgumentError("product index out of range");
            if (!in_cap(weight(i) + weight(j))) throw TruncationError("product exceeds the weight cap");
            static const SparseVector zero;
            auto it = products_.find({i, j});
            return it == products_.end() ? zero : it->second;
        }

        SparseVector multiply(const SparseVector& x, const SparseVector& y) const {
            if (x.extent() > dim_ || y.extent() > dim_) throw ArgumentError("element has wrong length");
            SparseVector out;
            for (const auto& [i, a] : x)
                for (const auto& [j, b] : y) out.axpy(a * b, product(i, j));
            return out;
        }

        Element multiply(const Element& x, const Element& y) const {
            check(x);
            check(y);
            return multiply(SparseVector::from_dense(x), SparseVector::from_dense(y)).dense(dim_);
        }

        Element star(const Element& x, const Element& y) const {
            Element a = multiply(x, y), b = multiply(y, x);
            for (std::size_t k = 0; k < dim_; ++k) a[k] -= b[k];
            return a;
        }

        Element basis_element(std::size_t i) const {
            Element e(dim_, Rational(0));
            e.at(i) = 1;
            return e;
        }

        // Letters of sg as an alphabet: every letter sits in degree 1.
        Alphabet suspended_alphabet() const {
            std::vector<Degree> d;
            for (std::size_t i = 0; i < dim_; ++i) d.push_back({1, weight(i)});
            return Alphabet(std::move(d));
        }

    private:
        void check(const Element& x) const {
            if (x.size() != dim_) throw ArgumentError("element length does not match algebra dimension");
        }

        std::size_t dim_ = 0;
        std::vector<std::string> labels_;
        Products products_;
        std::optional<std::vector<int>> weights_;
        std::optional<int> cap_;
    };

    struct LeibnizViolation {
        std::size_t i, j, k;
        SparseVector lhs;  // e_i (e_j e_k)
        SparseVector rhs;  // (e_i e_j) e_k - (e_i e_k) e_j
    };

    // First basis triple (lexicographic) violating x(yz) = (xy)z - (xz)y, if any.
    inline std::optional<LeibnizViolation> check_leibniz(const LeibnizAlgebra& g) {
        const std::size_t n = g.dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    if (!g.in_cap(g.weight(i) + g.weight(j) + g.weight(k))) continue;
                    auto ei = SparseVector::unit(i), ej = SparseVector::unit(j), ek = SparseVector::unit(k);
                    SparseVector lhs = g.multiply(ei, g.product(j, k));
                    SparseVector rhs = g.multiply(g.product(i, j), ek) - g.multiply(g.product(i, k), ej);
                    if (!(lhs == rhs)) return LeibnizViolation{i, j, k, std::move(lhs), std::move(rhs)};
                }
        return std::nullopt;
    }

    /* g_Lie = g / span{e_i e_j + e_j e_i}. The quotient basis consists of the
     * classes of e_i for the non-pivot indices i of the canonical kernel
     * basis, so section() is a fixed choice of lifts. */
    class LieQuotient {
    public:
        LieQuotient() = default;

        explicit LieQuotient(const LeibnizAlgebra& g) : parent_(g) {
            std::vector<SparseVector> sym;
            for (std::size_t i = 0; i < g.dim(); ++i)
                for (std::size_t j = i; j < g.dim(); ++j) {
                    if (!g.in_cap(g.weight(i) + g.weight(j))) continue;
                    sym.push_back(g.product(i, j) + g.product(j, i));
                }
            kernel_ = Subspace::span(g.dim(), sym);
            std::vector<bool> pivot(g.dim(), false);
            for (auto p : kernel_.pivots()) pivot[p] = true;
            std::vector<std::size_t> coord_of(g.dim(), 0);
            for (std::size_t i = 0; i < g.dim(); ++i)
                if (!pivot[i]) {
                    coord_of[i] = lifts_.size();
                    lifts_.push_back(i);
                }
            std::vector<SparseVector> cols;
            for (std::size_t i = 0; i < g.dim(); ++i) {
                SparseVector r = kernel_.reduce(SparseVector::unit(i));
                std::vector<SparseVector::Entry> c;
                for (const auto& [k, v] : r) c.emplace_back(coord_of[k], v);
                cols.emplace_back(std::move(c));
            }
            projection_ = SparseMatrix::from_columns(lifts_.size(), cols);

            const std::size_t q = lifts_.size();
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b) {
                    if (!g.in_cap(g.weight(lifts_[a]) + g.weight(lifts_[b]))) continue;
                    SparseVector v = project(g.product(lifts_[a], lifts_[b]));
                    if (!v.empty()) bracket_.emplace(std::make_pair(a, b), std::move(v));
                }
            validate();
        }

        const LeibnizAlgebra& parent() const { return parent_; }
        std::size_t dim() const { return lifts_.size(); }
        const Subspace& kernel() const { return kernel_; }
        const std::vector<std::size_t>& lift_indices() const { return lifts_; }
        const SparseMatrix& projection() const { return projection_; }
        int weight(std::size_t a) const { return parent_.weight(lifts_.at(a)); }

        SparseVector project(const SparseVector& x) const { return projection_.apply(x); }

        SparseVector section(const SparseVector& zbar) const {
            std::vector<SparseVector::Entry> out;
            for (const auto& [a, c] : zbar) out.emplace_back(lifts_.at(a), c);
            return SparseVector(std::move(out));
        }

        SparseVector bracket(const SparseVector& x, const SparseVector& y) const {
            SparseVector out;
            for (const auto& [a, u] : x)
                for (const auto& [b, v] : y) {
                    if (!parent_.in_cap(weight(a) + weight(b))) throw TruncationError("bracket exceeds the weight cap");
                    auto it = bracket_.find({a, b});
                    if (it != bracket_.end()) out.axpy(u * v, it->second);
                }
            return out;
        }

        // g_Lie as a Leibniz algebra whose product is the bracket.
        LeibnizAlgebra as_algebra() const {
            std::vector<std::string> labels;
            std::vector<int> w;
            for (auto i : lifts_) {
                labels.push_back(parent_.label(i));
                w.push_back(parent_.weight(i));
            }
            LeibnizAlgebra::Products products(bracket_.begin(), bracket_.end());
            if (parent_.weighted())
                return LeibnizAlgebra(dim(), labels, std::move(products), std::move(w), parent_.weight_cap());
            return LeibnizAlgebra(dim(), labels, std::move(products));
        }

    private:
        void validate() const {
            const std::size_t q = dim();
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b) {
                    if (!parent_.in_cap(weight(a) + weight(b))) continue;
                    auto ea = SparseVector::unit(a), eb = SparseVector::unit(b);
                    if (!(bracket(ea, eb) + bracket(eb, ea)).empty())
                        throw ConsistencyError("quotient bracket is not antisymmetric");
                    for (std::size_t c = 0; c < q; ++c) {
                        if (!parent_.in_cap(weight(a) + weight(b) + weight(c))) continue;
                        auto ec = SparseVector::unit(c);
                        SparseVector j = bracket(bracket(ea, eb), ec) + bracket(bracket(eb, ec), ea) +
                                         bracket(bracket(ec, ea), eb);
                        if (!j.empty()) throw ConsistencyError("quotient bracket violates the Jacobi identity");
                    }
                }
        }

        LeibnizAlgebra parent_;
        Subspace kernel_;
        std::vector<std::size_t> lifts_;
        SparseMatrix projection_;
        std::map<std::pair<std::size_t, std::size_t>, SparseVector> bracket_;
    };

    inline LieQuotient lie_quotient(const LeibnizAlgebra& g) { return LieQuotient(g); }

    // x . zbar = x z for the canonical lift z of zbar.
    inline Element right_action(const LieQuotient& q, const Element& x, const SparseVector& zbar) {
        const auto& g = q.parent();
        if (x.size() != g.dim()) throw ArgumentError("element length does not match algebra dimension");
        return g.multiply(SparseVector::from_dense(x), q.section(zbar)).dense(g.dim());
    }

    /* Free Leibniz algebra on d generators truncated at weight W. The basis
     * is the set of words of length 1..W ordered by (length, lexicographic);
     * the word v1...vn stands for the left-normed product (..(v1 v2)..)vn. */
    inline LeibnizAlgebra free_leibniz(int generators, int max_weight) {
        if (generators < 1 || max_weight < 1) throw ArgumentError("free_leibniz needs d >= 1 and W >= 1");
        if (generators > 26) throw ArgumentError("free_leibniz supports at most 26 generators");
        std::vector<Word> words;
        std::map<Word, std::size_t> index;
        Word cur;
        for (int len = 1; len <= max_weight; ++len) {
            cur.assign(static_cast<std::size_t>(len), 0);
            while (true) {
                index.emplace(cur, words.size());
                words.push_back(cur);
                int p = len - 1;
                while (p >= 0 && cur[static_cast<std::size_t>(p)] == generators - 1) cur[static_cast<std::size_t>(p--)] = 0;
                if (p < 0) break;
                ++cur[static_cast<std::size_t>(p)];
            }
        }

        // x (y v) = (x y) v - (x v) y, with x y v = concatenation when v is a letter.
        std::map<std::pair<Word, Word>, TensorElement> memo;
        std::function<TensorElement(const Word&, const Word&)> mul = [&](const Word& x, const Word& y) {
            auto key = std::make_pair(x, y);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            TensorElement out;
            Word head(y.begin(), y.end() - 1);
            Word v{y.back()};
            if (head.empty()) {
                Word w = x;
                w.push_back(y.back());
                out.add(w, 1);
            } else {
                for (const auto& [u, c] : mul(x, head)) {
                    Word w = u;
                    w.push_back(y.back());
                    out.add(w, c);
                }
                Word xv = x;
                xv.push_back(y.back());
                out.add(mul(xv, head), -1);
            }
            memo.emplace(key, out);
            return out;
        };

        LeibnizAlgebra::Products products;
        std::vector<std::string> labels;
        std::vector<int> weights;
        for (const auto& w : words) {
            std::string s;
            for (int l : w) s.push_back(static_cast<char>('a' + l));
            labels.push_back(s);
            weights.push_back(static_cast<int>(w.size()));
        }
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (static_cast<int>(words[i].size() + words[j].size()) > max_weight) continue;
                std::vector<SparseVector::Entry> e;
                for (const auto& [w, c] : mul(words[i], words[j])) e.emplace_back(index.at(w), c);
                products.emplace(std::make_pair(i, j), SparseVector(std::move(e)));
            }
        return LeibnizAlgebra(words.size(), std::move(labels), std::move(products), std::move(weights), max_weight);
    }

}  // namespace loday

#endif  // LODAY_LEIBNIZ_HPP
