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
 // Exact sparse linear algebra over the rationals: reduced row-echelon forms,
 // kernels, images, solving with a deterministic section, and subspaces kept in
 // canonical (RREF) form so that equal subspaces compare bit-identically.

#ifndef LODAY_LINALG_HPP
#define LODAY_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace loday {

    /* A vector stored as (index, value) pairs with strictly increasing indices
     * and no zero values. It carries no length; the owner knows the ambient
     * dimension. */
    class SparseVector {
    public:
        using Entry = std::pair<std::size_t, Rational>;

        SparseVector() = default;

        explicit SparseVector(std::vector<Entry> entries) {
            std::sort(entries.begin(), entries.end(),
                      [](const Entry& a, const Entry& b) { return a.first < b.first; });
            for (auto& [i, v] : entries) {
                if (!entries_.empty() && entries_.back().first == i)
                    entries_.back().second += v;
                else
                    entries_.emplace_back(i, std::move(v));
            }
            drop_zeros();
        }

        static SparseVector unit(std::size_t i, Rational value = 1) {
            SparseVector v;
            if (value != 0) v.entries_.emplace_back(i, std::move(value));
            return v;
        }

        bool empty() const { return entries_.empty(); }
        std::size_t nnz() const { return entries_.size(); }
        const std::vector<Entry>& entries() const { return entries_; }
        auto begin() const { return entries_.begin(); }
        auto end() const { return entries_.end(); }

        std::optional<std::size_t> leading() const {
            if (entries_.empty()) return std::nullopt;
            return entries_.front().first;
        }

        // One past the largest stored index.
        std::size_t extent() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

        Rational at(std::size_t i) const {
            auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                       [](const Entry& e, std::size_t k) { return e.first < k; });
            if (it != entries_.end() && it->first == i) return it->second;
            return Rational(0);
        }

        void set(std::size_t i, const Rational& value) {
            auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                       [](const Entry& e, std::size_t k) { return e.first < k; });
            if (it != entries_.end() && it->first == i) {
                if (value == 0) entries_.erase(it);
                else it->second = value;
            } else if (value != 0) {
                entries_.insert(it, Entry(i, value));
            }
        }

        // this += a * x
        void axpy(const Rational& a, const SparseVector& x) {
            if (a == 0 || x.empty()) return;
            std::vector<Entry> out;
            out.reserve(entries_.size() + x.entries_.size());
            auto p = entries_.begin();
            auto q = x.entries_.begin();
            while (p != entries_.end() || q != x.entries_.end()) {
                if (q == x.entries_.end() || (p != entries_.end() && p->first < q->first)) {
                    out.push_back(std::move(*p));
                    ++p;
                } else if (p == entries_.end() || q->first < p->first) {
                    out.emplace_back(q->first, a * q->second);
                    ++q;
                } else {
                    Rational s = p->second + a * q->second;
                    if (s != 0) out.emplace_back(p->first, std::move(s));
                    ++p;
                    ++q;
                }
            }
            entries_ = std::move(out);
        }

        void scale(const Rational& a) {
            if (a == 0) {
                entries_.clear();
                return;
            }
            for (auto& e : entries_) e.second *= a;
        }

        Rational dot(const SparseVector& other) const {
            Rational s = 0;
            auto p = entries_.begin();
            auto q = other.entries_.begin();
            while (p != entries_.end() && q != other.entries_.end()) {
                if (p->first < q->first) ++p;
                else if (q->first < p->first) ++q;
                else {
                    s += p->second * q->second;
                    ++p;
                    ++q;
                }
            }
            return s;
        }

        SparseVector& operator+=(const SparseVector& o) { axpy(1, o); return *this; }
        SparseVector& operator-=(const SparseVector& o) { axpy(-1, o); return *this; }

        friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
        friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
        friend SparseVector operator*(const Rational& c, SparseVector a) { a.scale(c); return a; }
        friend SparseVector operator-(SparseVector a) { a.scale(-1); return a; }

        friend bool operator==(const SparseVector& a, const SparseVector& b) {
            return a.entries_ == b.entries_;
        }

        std::vector<Rational> dense(std::size_t n) const {
            std::vector<Rational> out(n, Rational(0));
            for (const auto& [i, v] : entries_)
                if (i < n) out[i] = v;
            return out;
        }

        static SparseVector from_dense(std::span<const Rational> values) {
            SparseVector v;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (values[i] != 0) v.entries_.emplace_back(i, values[i]);
            return v;
        }

    private:
        void drop_zeros() {
            std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
        }

        std::vector<Entry> entries_;
    };

    /* Row-major sparse matrix. A linear map V -> U is stored with
     * rows = dim U and cols = dim V, acting on column vectors. */
    class SparseMatrix {
    public:
        SparseMatrix() = default;
        SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

        static SparseMatrix from_rows(std::size_t cols, std::vector<SparseVector> rows) {
            SparseMatrix m(rows.size(), cols);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].extent() > cols) throw ArgumentError("row entry out of bounds");
                m.data_[r] = std::move(rows[r]);
            }
            return m;
        }

        static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
            SparseMatrix m(rows, columns.size());
            std::vector<std::vector<SparseVector::Entry>> buf(rows);
            for (std::size_t c = 0; c < columns.size(); ++c)
                for (const auto& [r, v] : columns[c]) {
                    if (r >= rows) throw ArgumentError("column entry out of bounds");
                    buf[r].emplace_back(c, v);
                }
            for (std::size_t r = 0; r < rows; ++r) m.data_[r] = SparseVector(std::move(buf[r]));
            return m;
        }

        static SparseMatrix identity(std::size_t n) {
            SparseMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i) m.data_[i] = SparseVector::unit(i);
            return m;
        }

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }

        const SparseVector& row(std::size_t r) const { return data_.at(r); }
        const std::vector<SparseVector>& row_data() const { return data_; }

        Rational at(std::size_t r, std::size_t c) const { return data_.at(r).at(c); }

        void set(std::size_t r, std::size_t c, const Rational& v) {
            if (r >= rows_ || c >= cols_) throw ArgumentError("matrix index out of bounds");
            data_[r].set(c, v);
        }

        std::size_t nnz() const {
            std::size_t n = 0;
            for (const auto& r : data_) n += r.nnz();
            return n;
        }

        bool is_zero() const {
            return std::all_of(data_.begin(), data_.end(), [](const SparseVector& r) { return r.empty(); });
        }

        SparseVector apply(const SparseVector& v) const {
            if (v.extent() > cols_) throw ArgumentError("vector does not fit matrix columns");
            std::vector<SparseVector::Entry> out;
            for (std::size_t r = 0; r < rows_; ++r) {
                Rational s = data_[r].dot(v);
                if (s != 0) out.emplace_back(r, std::move(s));
            }
            return SparseVector(std::move(out));
        }

        SparseVector column(std::size_t c) const {
            std::vector<SparseVector::Entry> out;
            for (std::size_t r = 0; r < rows_; ++r) {
                Rational v = data_[r].at(c);
                if (v != 0) out.emplace_back(r, std::move(v));
            }
            return SparseVector(std::move(out));
        }

        SparseMatrix transpose() const {
            std::vector<std::vector<SparseVector::Entry>> buf(cols_);
            for (std::size_t r = 0; r < rows_; ++r)
                for (const auto& [c, v] : data_[r]) buf[c].emplace_back(r, v);
            SparseMatrix t(cols_, rows_);
            for (std::size_t c = 0; c < cols_; ++c) t.data_[c] = SparseVector(std::move(buf[c]));
            return t;
        }

        friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
            if (a.cols_ != b.rows_) throw ArgumentError("matrix product dimension mismatch");
            SparseMatrix out(a.rows_, b.cols_);
            for (std::size_t r = 0; r < a.rows_; ++r) {
                SparseVector acc;
                for (const auto& [k, v] : a.data_[r]) acc.axpy(v, b.data_[k]);
                out.data_[r] = std::move(acc);
            }
            return out;
        }

        friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ArgumentError("matrix difference dimension mismatch");
            SparseMatrix out = a;
            for (std::size_t r = 0; r < a.rows_; ++r) out.data_[r] -= b.data_[r];
            return out;
        }

        friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
        }

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<SparseVector> data_;
    };

    namespace detail {
        /* Incremental Gaussian elimination. Rows are kept keyed by their pivot
         * (leading) column, normalised to a leading 1. finalize() performs the
         * back substitution that turns the echelon form into the unique RREF. */
        class Echelon {
        public:
            // Returns false if v was already in the span.
            bool insert(SparseVector v) {
                reduce_leading(v);
                if (v.empty()) return false;
                auto lead = *v.leading();
                v.scale(1 / v.at(lead));
                rows_.emplace(lead, std::move(v));
                return true;
            }

            void finalize() {
                for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
                    const std::size_t p = it->first;
                    for (auto jt = rows_.begin(); jt != rows_.end() && jt->first < p; ++jt) {
                        Rational c = jt->second.at(p);
                        if (c != 0) jt->second.axpy(-c, it->second);
                    }
                }
            }

            std::size_t rank() const { return rows_.size(); }
            const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

        private:
            void reduce_leading(SparseVector& v) const {
                while (!v.empty()) {
                    auto it = rows_.find(*v.leading());
                    if (it == rows_.end()) return;
                    Rational c = v.at(it->first);
                    v.axpy(-c, it->second);
                }
            }

            std::map<std::size_t, SparseVector> rows_;
        };
    }  // namespace detail

    struct RowEchelon {
        SparseMatrix matrix;              // same shape as the input
        std::vector<std::size_t> pivots;  // strictly increasing
    };

    // Unique reduced row-echelon form; zero rows are placed last.
    inline RowEchelon rref(const SparseMatrix& m) {
        detail::Echelon e;
        for (const auto& r : m.row_data()) e.insert(r);
        e.finalize();
        RowEchelon out{SparseMatrix(m.rows(), m.cols()), {}};
        std::vector<SparseVector> rows;
        for (const auto& [p, r] : e.rows()) {
            out.pivots.push_back(p);
            rows.push_back(r);
        }
        rows.resize(m.rows());
        out.matrix = SparseMatrix::from_rows(m.cols(), std::move(rows));
        return out;
    }

    inline std::size_t rank(const SparseMatrix& m) {
        detail::Echelon e;
        for (const auto& r : m.row_data()) e.insert(r);
        return e.rank();
    }

    /* A subspace of k^n held by its RREF basis (rows). Two equal subspaces
     * always have identical bases. */
    class Subspace {
    public:
        Subspace() = default;
        explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

        static Subspace zero(std::size_t n) { return Subspace(n); }

        static Subspace full(std::size_t n) {
            Subspace s(n);
            for (std::size_t i = 0; i < n; ++i) {
                s.pivots_.push_back(i);
                s.basis_.push_back(SparseVector::unit(i));
            }
            return s;
        }

        static Subspace span(std::size_t n, const std::vector<SparseVector>& vectors) {
            detail::Echelon e;
            for (const auto& v : vectors) {
                if (v.extent() > n) throw ArgumentError("spanning vector exceeds ambient dimension");
                e.insert(v);
            }
            e.finalize();
            Subspace s(n);
            for (const auto& [p, r] : e.rows()) {
                s.pivots_.push_back(p);
                s.basis_.push_back(r);
            }
            return s;
        }

        std::size_t ambient_dim() const { return ambient_; }
        std::size_t dim() const { return basis_.size(); }
        const std::vector<SparseVector>& basis() const { return basis_; }
        const std::vector<std::size_t>& pivots() const { return pivots_; }

        SparseMatrix basis_matrix() const { return SparseMatrix::from_rows(ambient_, basis_); }

        // v minus its projection along the pivot columns; zero iff v is a member.
        SparseVector reduce(SparseVector v) const {
            check(v);
            for (std::size_t k = 0; k < basis_.size(); ++k) {
                Rational c = v.at(pivots_[k]);
                if (c != 0) v.axpy(-c, basis_[k]);
            }
            return v;
        }

        bool contains(const SparseVector& v) const { return reduce(v).empty(); }

        // Coefficients of v in the basis, or nullopt if v is not a member.
        std::optional<SparseVector> coordinates(const SparseVector& v) const {
            check(v);
            std::vector<SparseVector::Entry> c;
            SparseVector rest = v;
            for (std::size_t k = 0; k < basis_.size(); ++k) {
                Rational a = v.at(pivots_[k]);
                if (a != 0) {
                    rest.axpy(-a, basis_[k]);
                    c.emplace_back(k, std::move(a));
                }
            }
            if (!rest.empty()) return std::nullopt;
            return SparseVector(std::move(c));
        }

        SparseVector combine(const SparseVector& coords) const {
            SparseVector out;
            for (const auto& [k, a] : coords) out.axpy(a, basis_.at(k));
            return out;
        }

        bool is_subspace_of(const Subspace& other) const {
            return std::all_of(basis_.begin(), basis_.end(),
                               [&](const SparseVector& b) { return other.contains(b); });
        }

        friend bool operator==(const Subspace& a, const Subspace& b) {
            return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
        }

    private:
        void check(const SparseVector& v) const {
            if (v.extent() > ambient_) throw ArgumentError("vector exceeds ambient dimension");
        }

        std::size_t ambient_ = 0;
        std::vector<std::size_t> pivots_;
        std::vector<SparseVector> basis_;
    };

    inline Subspace kernel_basis(const SparseMatrix& m) {
        auto e = rref(m);
        std::vector<bool> is_pivot(m.cols(), false);
        for (auto p : e.pivots) is_pivot[p] = true;
        std::vector<SparseVector> vectors;
        for (std::size_t f = 0; f < m.cols(); ++f) {
            if (is_pivot[f]) continue;
            std::vector<SparseVector::Entry> entries{{f, Rational(1)}};
            for (std::size_t k = 0; k < e.pivots.size(); ++k) {
                Rational c = e.matrix.row(k).at(f);
                if (c != 0) entries.emplace_back(e.pivots[k], -c);
            }
            vectors.emplace_back(std::move(entries));
        }
        return Subspace::span(m.cols(), vectors);
    }

    inline Subspace image_basis(const SparseMatrix& m) {
        return Subspace::span(m.rows(), m.transpose().row_data());
    }

    inline Subspace sum(const Subspace& a, const Subspace& b) {
        if (a.ambient_dim() != b.ambient_dim()) throw ArgumentError("subspace sum: ambient mismatch");
        std::vector<SparseVector> all = a.basis();
        all.insert(all.end(), b.basis().begin(), b.basis().end());
        return Subspace::span(a.ambient_dim(), all);
    }

    inline Subspace intersect(const Subspace& a, const Subspace& b) {
        if (a.ambient_dim() != b.ambient_dim()) throw ArgumentError("subspace intersection: ambient mismatch");
        // Relations sum_i x_i a_i - sum_j y_j b_j = 0; the x parts span the intersection.
        std::vector<SparseVector> cols = a.basis();
        for (const auto& v : b.basis()) cols.push_back(-v);
        auto rel = kernel_basis(SparseMatrix::from_columns(a.ambient_dim(), cols));
        std::vector<SparseVector> out;
        for (const auto& k : rel.basis()) {
            SparseVector x;
            for (const auto& [i, c] : k)
                if (i < a.dim()) x.axpy(c, a.basis()[i]);
            out.push_back(std::move(x));
        }
        return Subspace::span(a.ambient_dim(), out);
    }

    /* The quotient ambient / sub. Representatives are canonical: the ambient
     * basis reduced modulo sub, then put in RREF. coordinates() expresses a
     * member of ambient modulo sub in terms of the representatives. */
    class Quotient {
    public:
        Quotient() = default;

        Quotient(const Subspace& ambient, const Subspace& sub) : sub_(sub) {
            if (ambient.ambient_dim() != sub.ambient_dim()) throw ArgumentError("quotient: ambient mismatch");
            if (!sub.is_subspace_of(ambient)) throw ArgumentError("quotient: sub is not contained in ambient");
            std::vector<SparseVector> reduced;
            for (const auto& v : ambient.basis()) reduced.push_back(sub.reduce(v));
            reps_ = Subspace::span(ambient.ambient_dim(), reduced);
        }

        std::size_t dim() const { return reps_.dim(); }
        const std::vector<SparseVector>& representatives() const { return reps_.basis(); }
        const Subspace& sub() const { return sub_; }

        std::optional<SparseVector> coordinates(const SparseVector& v) const {
            return reps_.coordinates(sub_.reduce(v));
        }

        SparseVector lift(const SparseVector& coords) const { return reps_.combine(coords); }

    private:
        Subspace sub_;
        Subspace reps_;
    };

    inline std::vector<SparseVector> quotient_reps(const Subspace& ambient, const Subspace& sub) {
        return Quotient(ambient, sub).representatives();
    }

    /* Solves m x = b for many right-hand sides. The solution returned sets
     * every free variable (non-pivot column of rref(m)) to zero, which makes
     * it a fixed linear section of m over its image. */
    class LinearSolver {
    public:
        explicit LinearSolver(const SparseMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
            // Row-reduce [m | I]; the identity part records the row operations.
            detail::Echelon e;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                std::vector<SparseVector::Entry> entries(m.row(r).begin(), m.row(r).end());
                entries.emplace_back(cols_ + r, Rational(1));
                e.insert(SparseVector(std::move(entries)));
            }
            e.finalize();
            for (const auto& [p, row] : e.rows()) {
                SparseVector left, right;
                std::vector<SparseVector::Entry> l, rgt;
                for (const auto& [c, v] : row) {
                    if (c < cols_) l.emplace_back(c, v);
                    else rgt.emplace_back(c - cols_, v);
                }
                if (p < cols_) {
                    pivots_.push_back(p);
                    transform_.emplace_back(std::move(rgt));
                } else {
                    left_kernel_.emplace_back(std::move(rgt));
                }
            }
        }

        std::size_t rank() const { return pivots_.size(); }

        bool in_image(const SparseVector& b) const {
            if (b.extent() > rows_) throw ArgumentError("right-hand side exceeds row count");
            return std::all_of(left_kernel_.begin(), left_kernel_.end(),
                               [&](const SparseVector& l) { return l.dot(b) == 0; });
        }

        std::optional<SparseVector> solve(const SparseVector& b) const {
            if (!in_image(b)) return std::nullopt;
            std::vector<SparseVector::Entry> x;
            for (std::size_t k = 0; k < pivots_.size(); ++k) {
                Rational v = transform_[k].dot(b);
                if (v != 0) x.emplace_back(pivots_[k], std::move(v));
            }
            return SparseVector(std::move(x));
        }

    private:
        std::size_t rows_;
        std::size_t cols_;
        std::vector<std::size_t> pivots_;
        std::vector<SparseVector> transform_;
        std::vector<SparseVector> left_kernel_;
    };

    inline std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
        return LinearSolver(m).solve(b);
    }

}  // namespace loday

#endif  // LODAY_LINALG_HPP
