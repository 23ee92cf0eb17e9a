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
 // The primitive filtration of the Leibniz complex and its spectral sequence
 // up to the E2 page, with the comparison five-term sequence.

#ifndef LODAY_FILTRATION_HPP
#define LODAY_FILTRATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
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

    // Concatenation of two block vectors of T(sg).
    inline SparseVector tensor_product(const WordBasis& basis, const SparseVector& a, Block ba, const SparseVector& b,
                                       Block bb) {
        Block target{ba.degree + bb.degree, ba.weight + bb.weight};
        return basis.vector(concat(basis.element(a, ba), basis.element(b, bb)), target);
    }

    /* f_n T(sg): per block, the span of all products of at most n
     * primitives. levels(b)[n] holds f_n for n = 0..degree(b); beyond that
     * the level is the whole block. */
    class PrimitiveFiltration {
    public:
        explicit PrimitiveFiltration(LeibnizComplex lc) : lc_(std::move(lc)) {
            const auto& basis = lc_.basis();
            primitives_ = lie_primitives(basis, lc_.alphabet());
            auto blocks = basis.blocks();
            for (auto b : blocks)
                levels_[b].push_back(b.degree == 0 ? Subspace::full(basis.dim(b)) : Subspace::zero(basis.dim(b)));

            // exactly k primitive factors
            std::map<Block, Subspace> exact = primitives_;
            const int top = lc_.caps().max_degree;
            for (int k = 1; k <= top; ++k) {
                for (auto b : blocks)
                    if (b.degree >= k) levels_[b].push_back(sum(levels_[b].back(), exact.at(b)));
                if (k == top) break;
                std::vector<Subspace> next(blocks.size());
                parallel_for(blocks.size(), [&](std::size_t bi) {
                    Block b = blocks[bi];
                    std::vector<SparseVector> gens;
                    if (b.degree >= k + 1) {
                        for (const auto& [pb, prims] : primitives_) {
                            if (pb.degree < 1 || pb.degree > b.degree - k || pb.weight > b.weight) continue;
                            Block rest{b.degree - pb.degree, b.weight - pb.weight};
                            const auto& tail = exact.at(rest);
                            for (const auto& p : prims.basis())
                                for (const auto& x : tail.basis()) gens.push_back(tensor_product(basis, p, pb, x, rest));
                        }
                    }
                    next[bi] = Subspace::span(basis.dim(b), gens);
                });
                exact.clear();
                for (std::size_t i = 0; i < blocks.size(); ++i) exact.emplace(blocks[i], std::move(next[i]));
            }
        }

        const LeibnizComplex& complex() const { return lc_; }
        const WordBasis& basis() const { return lc_.basis(); }
        Caps caps() const { return lc_.caps(); }
        const std::map<Block, Subspace>& primitives() const { return primitives_; }
        const std::vector<Subspace>& levels(Block b) const { return levels_.at(b); }

        Subspace level(int n, Block b) const {
            const auto& l = levels_.at(b);
            if (n < 0) return Subspace::zero(basis().dim(b));
            if (static_cast<std::size_t>(n) >= l.size()) return l.back();
            return l[static_cast<std::size_t>(n)];
        }

    private:
        LeibnizComplex lc_;
        std::map<Block, Subspace> primitives_;
        std::map<Block, std::vector<Subspace>> levels_;
    };

    inline PrimitiveFiltration primitive_filtration(const LeibnizAlgebra& g, Caps caps) {
        return PrimitiveFiltration(LeibnizComplex(g, caps));
    }

    // f_0 = k, f_n inside f_{n+1}, and the top level is the whole block.
    inline std::optional<std::string> check_filtration_shape(const PrimitiveFiltration& f) {
        for (auto b : f.basis().blocks()) {
            const auto& l = f.levels(b);
            const std::size_t expect0 = b.degree == 0 ? f.basis().dim(b) : 0;
            auto where = " in block (" + std::to_string(b.degree) + ", " + std::to_string(b.weight) + ")";
            if (l.front().dim() != expect0) return "f_0 is not the ground field" + where;
            for (std::size_t n = 1; n < l.size(); ++n)
                if (!l[n - 1].is_subspace_of(l[n])) return "f_" + std::to_string(n - 1) + " not inside f_" + std::to_string(n) + where;
            if (l.back().dim() != f.basis().dim(b)) return "filtration not exhaustive" + where;
        }
        return std::nullopt;
    }

    struct StabilityViolation {
        int level = 0;
        Block block;
        SparseVector vector;  // basis vector of f_n whose boundary leaves f_n
    };

    // Checks d(f_n) inside f_n for every level, block and basis vector.
    inline std::optional<StabilityViolation> check_filtration_stability(const PrimitiveFiltration& f) {
        auto blocks = f.basis().blocks();
        std::vector<std::optional<StabilityViolation>> found(blocks.size());
        parallel_for(blocks.size(), [&](std::size_t bi) {
            Block b = blocks[bi];
            if (b.degree < 1) return;
            Block below{b.degree - 1, b.weight};
            const auto& l = f.levels(b);
            for (std::size_t n = 0; n < l.size(); ++n) {
                Subspace target = f.level(static_cast<int>(n), below);
                for (const auto& v : l[n].basis())
                    if (!target.contains(f.complex().apply(v, b))) {
                        found[bi] = StabilityViolation{static_cast<int>(n), b, v};
                        return;
                    }
            }
        });
        for (auto& v : found)
            if (v) return v;
        return std::nullopt;
    }

    struct GradedPiece {
        int level = 0;
        Block block;
        std::size_t dim = 0;      // dim f_n / f_{n-1}
        std::size_t sym_dim = 0;  // dim S^n(Lie(sg)) in the block
        bool pbw_iso = false;     // products of primitives give a basis of the quotient
        bool differential_matches = false;
    };

    struct AssociatedGraded {
        std::vector<GradedPiece> pieces;

        std::optional<GradedPiece> first_failure() const {
            for (const auto& p : pieces)
                if (p.dim != p.sym_dim || !p.pbw_iso || !p.differential_matches) return p;
            return std::nullopt;
        }
        bool ok() const { return !first_failure(); }

        // Sum of dim gr_n over n, per block.
        std::map<Block, std::size_t> totals() const {
            std::map<Block, std::size_t> out;
            for (const auto& p : pieces) out[p.block] += p.dim;
            return out;
        }
    };

    /* Compares f_n / f_{n-1} with S^n(Lie(sg)) through the map sending a
     * monomial of primitive basis elements to their product, and checks that
     * this map intertwines d with the derivation extending d on Lie(sg). */
    inline AssociatedGraded associated_graded(const PrimitiveFiltration& f) {
        const auto& basis = f.basis();
        const auto& lc = f.complex();
        std::map<Block, std::size_t> prim_dims;
        for (const auto& [b, s] : f.primitives())
            if (s.dim() > 0) prim_dims[b] = s.dim();
        GeneratorSet gens = generator_set(prim_dims);

        auto generator_vector = [&](int g) -> const SparseVector& {
            const auto& [b, i] = gens.list.at(static_cast<std::size_t>(g));
            return f.primitives().at(b).basis().at(i);
        };
        auto phi = [&](const SymWord& w) {
            SparseVector acc = SparseVector::unit(0);
            Block at{0, 0};
            for (int g : w) {
                Block gb = gens.list[static_cast<std::size_t>(g)].first;
                acc = tensor_product(basis, acc, at, generator_vector(g), gb);
                at = {at.degree + gb.degree, at.weight + gb.weight};
            }
            return acc;
        };

        // d on each generator, in generator coordinates.
        std::vector<std::vector<std::pair<int, Rational>>> dgen(gens.list.size());
        for (std::size_t g = 0; g < gens.list.size(); ++g) {
            const auto& [b, i] = gens.list[g];
            if (b.degree < 2) continue;
            Block below{b.degree - 1, b.weight};
            auto c = f.primitives().at(below).coordinates(lc.apply(generator_vector(static_cast<int>(g)), b));
            if (!c) throw ConsistencyError("d of a primitive is not primitive");
            for (const auto& [k, v] : *c) dgen[g].emplace_back(gens.index.at({below, k}), v);
        }
        auto d_sym = [&](const SymWord& w) {
            SymElement out;
            int before = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const int sign = is_odd(before) ? -1 : 1;
                for (const auto& [h, c] : dgen[static_cast<std::size_t>(w[i])]) {
                    Word v = w;
                    v[i] = h;
                    if (auto n = normalize(v, gens.alphabet)) out.add(n->first, sign * n->second * c);
                }
                before += gens.alphabet.degree(w[i]).hom;
            }
            return out;
        };

        auto blocks = basis.blocks();
        std::vector<std::vector<GradedPiece>> per_block(blocks.size());
        parallel_for(blocks.size(), [&](std::size_t bi) {
            Block b = blocks[bi];
            Block below{b.degree - 1, b.weight};
            for (int n = 0; n <= b.degree; ++n) {
                GradedPiece piece;
                piece.level = n;
                piece.block = b;
                Subspace upper = f.level(n, b);
                Subspace lower = f.level(n - 1, b);
                Quotient gr(upper, lower);
                piece.dim = gr.dim();
                auto words = sym_basis(gens.alphabet, n, b);
                piece.sym_dim = words.size();
                std::vector<SparseVector> cols;
                bool inside = true;
                for (const auto& w : words) {
                    auto c = gr.coordinates(phi(w));
                    if (!c) {
                        inside = false;
                        break;
                    }
                    cols.push_back(std::move(*c));
                }
                piece.pbw_iso = inside && words.size() == gr.dim() &&
                                rank(SparseMatrix::from_columns(gr.dim(), cols)) == gr.dim();
                piece.differential_matches = true;
                if (b.degree >= 1 && n >= 1) {
                    Subspace lower_below = f.level(n - 1, below);
                    for (const auto& w : words) {
                        SparseVector diff = lc.apply(phi(w), b);
                        for (const auto& [v, c] : d_sym(w)) diff.axpy(-c, phi(v));
                        if (!lower_below.contains(diff)) {
                            piece.differential_matches = false;
                            break;
                        }
                    }
                }
                per_block[bi].push_back(std::move(piece));
            }
        });
        AssociatedGraded out;
        for (auto& v : per_block)
            for (auto& p : v) out.pieces.push_back(std::move(p));
        return out;
    }

    // ---------------------------------------------------------------------
    // The spectral sequence.
    // ---------------------------------------------------------------------

    struct SpectralIndex {
        int p = 0;
        int q = 0;
        int weight = 0;

        friend auto operator<=>(const SpectralIndex&, const SpectralIndex&) = default;
    };

    /* One page: dimensions per (p, q, weight) and, for r <= 1, the matrices
     * of d^r leaving each position (d^0 lowers q, d^1 lowers p). */
    struct SpectralPage {
        int r = 0;
        std::map<SpectralIndex, std::size_t> dims;
        std::map<SpectralIndex, SparseMatrix> differentials;

        std::size_t dim(SpectralIndex i) const {
            auto it = dims.find(i);
            return it == dims.end() ? 0 : it->second;
        }
    };

    /* E0, E1 and E2 of the primitive filtration. E0 is known in every
     * block, E1 for total degree t <= T - 1 and E2 for t <= T - 2. The
     * filtration must outlive this object. */
    class SpectralSequence {
    public:
        explicit SpectralSequence(const PrimitiveFiltration& f, std::uint64_t seed = 1) : f_(&f) {
            const auto& lc = f.complex();
            const int T = f.caps().max_degree;
            auto blocks = f.basis().blocks();
            pages_.resize(3);
            for (int r = 0; r < 3; ++r) pages_[static_cast<std::size_t>(r)].r = r;

            // E0: the quotients f_p / f_{p-1} with the induced differential.
            graded_.resize(static_cast<std::size_t>(T) + 1);
            for (int p = 0; p <= T; ++p) {
                auto& qs = graded_[static_cast<std::size_t>(p)];
                std::vector<Quotient> tmp(blocks.size());
                parallel_for(blocks.size(), [&](std::size_t bi) {
                    tmp[bi] = Quotient(f.level(p, blocks[bi]), f.level(p - 1, blocks[bi]));
                });
                for (std::size_t i = 0; i < blocks.size(); ++i) qs.emplace(blocks[i], std::move(tmp[i]));
            }
            columns_.resize(static_cast<std::size_t>(T) + 1);
            for (int p = 0; p <= T; ++p) {
                ChainComplex& c = columns_[static_cast<std::size_t>(p)];
                c.name = "E0 column " + std::to_string(p);
                c.caps = f.caps();
                for (auto b : blocks) c.dims[b] = graded(p, b).dim();
                std::vector<SparseMatrix> mats(blocks.size());
                parallel_for(blocks.size(), [&](std::size_t bi) {
                    Block b = blocks[bi];
                    if (b.degree < 1) return;
                    Block below{b.degree - 1, b.weight};
                    const auto& src = graded(p, b);
                    const auto& tgt = graded(p, below);
                    std::vector<SparseVector> cols;
                    for (const auto& rep : src.representatives()) {
                        auto coords = tgt.coordinates(lc.apply(rep, b));
                        if (!coords) throw ConsistencyError("the filtration is not stable under d");
                        cols.push_back(std::move(*coords));
                    }
                    mats[bi] = SparseMatrix::from_columns(tgt.dim(), cols);
                });
                for (std::size_t i = 0; i < blocks.size(); ++i) {
                    Block b = blocks[i];
                    if (b.degree < 1) continue;
                    c.differentials.emplace(b, mats[i]);
                    if (b.degree >= p) pages_[0].differentials.emplace(SpectralIndex{p, b.degree - p, b.weight}, std::move(mats[i]));
                }
                for (auto b : blocks)
                    if (b.degree >= p) pages_[0].dims[{p, b.degree - p, b.weight}] = c.dim(b);
                e1_.push_back(homology(c));
                for (const auto& [b, h] : e1_.back().blocks)
                    if (b.degree >= p) pages_[1].dims[{p, b.degree - p, b.weight}] = h.betti;
            }

            // d1 by lift, differentiate, project; repeated on a perturbed lift.
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<int> coeff(-3, 3);
            d1_well_defined_ = true;
            for (int p = 1; p <= T; ++p)
                for (auto b : blocks) {
                    if (b.degree < p || b.degree + 1 > T) continue;
                    Block below{b.degree - 1, b.weight};
                    Block above{b.degree + 1, b.weight};
                    const auto* src = e1(p, b);
                    const auto* tgt = e1(p - 1, below);
                    Subspace lower = f.level(p - 1, b);
                    std::vector<SparseVector> cols;
                    for (const auto& z : src->representatives()) {
                        SparseVector x = graded(p, b).lift(z);
                        auto image = d1_class(p, b, x);
                        if (!image) throw ConsistencyError("d1 of an E1 representative is not an E1 cycle");
                        SparseVector y = x;
                        for (const auto& v : lower.basis()) y.axpy(Rational(coeff(rng)), v);
                        const auto& up = graded(p, above);
                        if (up.dim() > 0) {
                            std::vector<Rational> u(up.dim());
                            for (auto& c : u) c = coeff(rng);
                            y += lc.apply(up.lift(SparseVector::from_dense(u)), above);
                        }
                        auto again = d1_class(p, b, y);
                        if (!again || !(*again == *image)) d1_well_defined_ = false;
                        cols.push_back(std::move(*image));
                    }
                    pages_[1].differentials.emplace(SpectralIndex{p, b.degree - p, b.weight},
                                                    SparseMatrix::from_columns(tgt->betti, cols));
                }

            // E2 = H(E1, d1) where both adjacent d1 are known.
            for (int p = 0; p <= T; ++p)
                for (auto b : blocks) {
                    if (b.degree < p || b.degree + 2 > T) continue;
                    SpectralIndex at{p, b.degree - p, b.weight};
                    const std::size_t n = pages_[1].dim(at);
                    SparseMatrix out = d1(at);
                    SparseMatrix in = d1({p + 1, at.q, at.weight});
                    Subspace cycles = kernel_basis(out);
                    Subspace bounds = in.cols() == 0 ? Subspace::zero(n) : image_basis(in);
                    Quotient h(cycles, bounds);
                    pages_[2].dims[at] = h.dim();
                    e2_.emplace(at, std::move(h));
                }
        }

        const PrimitiveFiltration& filtration() const { return *f_; }
        const SpectralPage& page(int r) const { return pages_.at(static_cast<std::size_t>(r)); }
        bool d1_well_defined() const { return d1_well_defined_; }

        const Quotient& graded(int p, Block b) const { return graded_.at(static_cast<std::size_t>(p)).at(b); }
        const ChainComplex& column(int p) const { return columns_.at(static_cast<std::size_t>(p)); }

        const HomologyBlock* e1(int p, Block b) const {
            if (p < 0 || static_cast<std::size_t>(p) >= e1_.size()) return nullptr;
            return e1_[static_cast<std::size_t>(p)].find(b);
        }

        const Quotient* e2(SpectralIndex i) const {
            auto it = e2_.find(i);
            return it == e2_.end() ? nullptr : &it->second;
        }

        // d1 leaving position i; an empty matrix of the right shape when unknown or zero.
        SparseMatrix d1(SpectralIndex i) const {
            auto it = pages_[1].differentials.find(i);
            if (it != pages_[1].differentials.end()) return it->second;
            return SparseMatrix(pages_[1].dim({i.p - 1, i.q, i.weight}), pages_[1].dim(i));
        }

        /* Class in E1_{p-1} of d x, for x in f_p of block b whose image in
         * E0 is a cycle; nullopt when d x does not land where it should. */
        std::optional<SparseVector> d1_class(int p, Block b, const SparseVector& x) const {
            Block below{b.degree - 1, b.weight};
            SparseVector dx = f_->complex().apply(x, b);
            if (!f_->level(p - 1, below).contains(dx)) return std::nullopt;
            auto e0 = graded(p - 1, below).coordinates(dx);
            if (!e0) return std::nullopt;
            const auto* tgt = e1(p - 1, below);
            if (!tgt) return std::nullopt;
            return tgt->classes.coordinates(*e0);
        }

        /* {x in f_p : d x in f_{p-r}} in block b. */
        Subspace z_space(int r, int p, Block b) const {
            Subspace src = f_->level(p, b);
            if (b.degree < 1) return src;
            Block below{b.degree - 1, b.weight};
            Subspace tgt = f_->level(p - r, below);
            std::vector<SparseVector> cols;
            for (const auto& v : src.basis()) cols.push_back(tgt.reduce(f_->complex().apply(v, b)));
            Subspace rel = kernel_basis(SparseMatrix::from_columns(f_->basis().dim(below), cols));
            std::vector<SparseVector> out;
            for (const auto& k : rel.basis()) out.push_back(src.combine(k));
            return Subspace::span(src.ambient_dim(), out);
        }

        // E2 straight from the filtration: Z^2_p / (Z^1_{p-1} + d Z^1_{p+1}).
        std::size_t e2_direct(int p, Block b) const {
            Subspace num = z_space(2, p, b);
            Subspace den = z_space(1, p - 1, b);
            Block above{b.degree + 1, b.weight};
            std::vector<SparseVector> bounds;
            Subspace upper = z_space(1, p + 1, above);
            for (const auto& v : upper.basis()) bounds.push_back(f_->complex().apply(v, above));
            den = sum(den, Subspace::span(den.ambient_dim(), bounds));
            return num.dim() - den.dim();
        }

    private:
        const PrimitiveFiltration* f_;
        std::vector<SpectralPage> pages_;
        std::vector<std::map<Block, Quotient>> graded_;
        std::vector<ChainComplex> columns_;
        std::vector<Homology> e1_;
        std::map<SpectralIndex, Quotient> e2_;
        bool d1_well_defined_ = true;
    };

    inline SpectralSequence spectral_pages(const PrimitiveFiltration& f, std::uint64_t seed = 1) {
        return SpectralSequence(f, seed);
    }

    // Positions where d1 o d1 is nonzero.
    inline std::optional<SpectralIndex> check_d1_square_zero(const SpectralSequence& ss) {
        for (const auto& [i, m] : ss.page(1).differentials) {
            SparseMatrix next = ss.d1({i.p - 1, i.q, i.weight});
            if (next.cols() != m.rows()) continue;
            if (!(next * m).is_zero()) return i;
        }
        return std::nullopt;
    }

    // Positions where the two E2 computations disagree in dimension.
    inline std::optional<SpectralIndex> check_e2_routes(const SpectralSequence& ss) {
        for (const auto& [i, n] : ss.page(2).dims)
            if (ss.e2_direct(i.p, {i.p + i.q, i.weight}) != n) return i;
        return std::nullopt;
    }

    // d1 : E1_{2,q} -> E1_{1,q} for q > 0; returns the first nonzero one.
    inline std::optional<SpectralIndex> check_d1_column2_vanishing(const SpectralSequence& ss) {
        for (const auto& [i, m] : ss.page(1).differentials)
            if (i.p == 2 && i.q > 0 && !m.is_zero()) return i;
        return std::nullopt;
    }

    struct E1Check {
        bool column0 = true;   // E1_{0,q} is k at q = 0 and 0 otherwise
        bool column1 = true;   // E1_{1,q} matches H_{q+1}(Lie(sg))
        bool symmetric = true; // E1_{p,*} matches S^p(H_*(Lie(sg)))
        std::vector<SpectralIndex> mismatches;

        bool ok() const { return column0 && column1 && symmetric; }
    };

    inline E1Check check_e1(const SpectralSequence& ss, const Homology& lie_homology) {
        E1Check out;
        std::map<Block, std::size_t> hdims;
        for (const auto& [b, h] : lie_homology.blocks)
            if (h.betti > 0) hdims[b] = h.betti;
        GeneratorSet gens = generator_set(hdims);
        for (const auto& [i, n] : ss.page(1).dims) {
            Block b{i.p + i.q, i.weight};
            if (i.p == 0) {
                const std::size_t expect = (i.q == 0 && i.weight == 0) ? 1 : 0;
                if (n != expect) {
                    out.column0 = false;
                    out.mismatches.push_back(i);
                }
            }
            if (i.p == 1 && lie_homology.find(b) && n != lie_homology.betti(b)) {
                out.column1 = false;
                out.mismatches.push_back(i);
            }
            if (sym_basis(gens.alphabet, i.p, b).size() != n) {
                out.symmetric = false;
                out.mismatches.push_back(i);
            }
        }
        return out;
    }

    /* Minimal N > 1 with H_N(Lie(sg)) != 0 among the degrees where the
     * homology is known. */
    inline std::optional<int> first_higher_degree(const Homology& lie_homology) {
        for (int t = 2; t <= lie_homology.max_degree(); ++t)
            if (lie_homology.betti_in_degree(t) > 0) return t;
        return std::nullopt;
    }

    /* If H_*(Lie(sg)) vanishes for 1 < * < N then E1_{p,q} = 0 for
     * 0 < q < N - 1. N is taken as the first nonzero degree, or one past the
     * known range. Returns the first offending position. */
    inline std::optional<SpectralIndex> check_vanishing_zone(const SpectralSequence& ss, const Homology& lie_homology) {
        const int n = first_higher_degree(lie_homology).value_or(lie_homology.max_degree() + 1);
        for (const auto& [i, d] : ss.page(1).dims)
            if (i.q > 0 && i.q < n - 1 && d != 0) return i;
        return std::nullopt;
    }

    /* The lift S^p(s g_Lie) -> f_p T(sg) multiplying canonical lifts of the
     * generators of g_Lie, as a vector of the T(sg) block. */
    inline SparseVector lift_ce_word(const WordBasis& basis, const LieQuotient& q, const SymWord& w) {
        SparseVector acc = SparseVector::unit(0);
        Block at{0, 0};
        for (int a : w) {
            SparseVector x = q.section(SparseVector::unit(static_cast<std::size_t>(a)));
            Block b{1, q.weight(static_cast<std::size_t>(a))};
            std::vector<SparseVector::Entry> e;
            for (const auto& [l, c] : x) e.emplace_back(*basis.index(Word{static_cast<int>(l)}), c);
            acc = tensor_product(basis, acc, at, SparseVector(std::move(e)), b);
            at = {at.degree + 1, at.weight + b.weight};
        }
        return acc;
    }

    inline SparseVector lift_ce_vector(const WordBasis& basis, const LieQuotient& q, const CeComplex& ce,
                                       const SparseVector& v, Block b) {
        SparseVector out;
        const auto& words = ce.words(b);
        for (const auto& [i, c] : v) out.axpy(c, lift_ce_word(basis, q, words.at(i)));
        return out;
    }

    struct BottomRow {
        std::map<Block, SparseMatrix> psi;  // CE_p block -> E1_{p,0}
        std::vector<Block> not_iso;          // psi fails to be invertible
        std::vector<Block> not_chain;        // d1 psi != psi d_CE
        bool ok() const { return not_iso.empty() && not_chain.empty(); }
    };

    /* Identifies (E1_{p,0}, d1) with the Chevalley-Eilenberg complex via
     * products of lifted generators, blockwise for p <= T - 1. */
    inline BottomRow identify_bottom_row(const SpectralSequence& ss, const LieQuotient& q, const CeComplex& ce) {
        const auto& f = ss.filtration();
        BottomRow out;
        for (auto b : f.basis().blocks()) {
            const auto* h = ss.e1(b.degree, b);
            if (!h) continue;
            std::vector<SparseVector> cols;
            for (const auto& w : ce.words(b)) {
                auto e0 = ss.graded(b.degree, b).coordinates(lift_ce_word(f.basis(), q, w));
                auto cls = e0 ? h->classes.coordinates(*e0) : std::nullopt;
                if (!cls) throw ConsistencyError("lifted Chevalley-Eilenberg word is not an E1 class");
                cols.push_back(std::move(*cls));
            }
            SparseMatrix psi = SparseMatrix::from_columns(h->betti, cols);
            if (psi.rows() != psi.cols() || rank(psi) != psi.rows()) out.not_iso.push_back(b);
            out.psi.emplace(b, std::move(psi));
        }
        for (const auto& [b, psi] : out.psi) {
            if (b.degree < 1) continue;
            Block below{b.degree - 1, b.weight};
            auto it = out.psi.find(below);
            if (it == out.psi.end()) continue;
            SparseMatrix lhs = ss.d1({b.degree, 0, b.weight}) * psi;
            SparseMatrix rhs = it->second * ce.chain().differential(b);
            if (!(lhs == rhs)) out.not_chain.push_back(b);
        }
        return out;
    }

    /* The q = 0 edge map T_t(sg) = f_t -> E1_{t,0}, followed by the inverse
     * of the bottom-row identification, against the comparison chain map.
     * Returns the blocks where they differ. */
    inline std::vector<Block> check_edge_compatibility(const SpectralSequence& ss, const BottomRow& row,
                                                       const ComparisonMap& cmp) {
        const auto& f = ss.filtration();
        std::vector<Block> bad;
        for (const auto& [b, psi] : row.psi) {
            const auto* h = ss.e1(b.degree, b);
            std::vector<SparseVector> cols;
            for (std::size_t i = 0; i < f.basis().dim(b); ++i) {
                auto e0 = ss.graded(b.degree, b).coordinates(SparseVector::unit(i));
                auto cls = e0 ? h->classes.coordinates(*e0) : std::nullopt;
                if (!cls) throw ConsistencyError("edge map: word is not an E1 class");
                cols.push_back(std::move(*cls));
            }
            SparseMatrix edge = SparseMatrix::from_columns(h->betti, cols);
            if (!(edge == psi * cmp.at(b))) bad.push_back(b);
        }
        return bad;
    }

    // ---------------------------------------------------------------------
    // The comparison map and its five-term exact sequence.
    // ---------------------------------------------------------------------

    struct ExactnessSpot {
        std::string where;  // the space at which exactness is tested
        int weight = 0;
        std::size_t dim = 0;
        std::size_t rank_in = 0;
        std::size_t rank_out = 0;
        bool composite_zero = true;
        bool exact = false;
    };

    struct FiveTermReport {
        int known_degree = 0;               // homology known for t <= known_degree
        std::optional<int> n;               // minimal N > 1 with H_N(Lie(sg)) != 0
        std::vector<int> iso_degrees;       // degrees where the comparison is an isomorphism
        bool iso_below_n = true;
        bool sequence_checked = false;      // N + 1 lies in the known range
        std::vector<ExactnessSpot> spots;
        bool kappa_iso = true;              // HL_N(g) -> H_N(g_Lie) is an isomorphism
        bool alpha_surjective = true;       // HL_{N+1}(g) -> H_{N+1}(g_Lie) is onto
        bool item1_consistent = true;       // no N in range <=> comparison iso in range

        bool exact() const {
            return std::all_of(spots.begin(), spots.end(), [](const ExactnessSpot& s) { return s.exact; });
        }
        bool ok() const {
            if (!n) return item1_consistent;
            return iso_below_n && (!sequence_checked || (exact() && (!kappa_iso || !alpha_surjective)));
        }
    };

    struct ComparisonData {
        PrimitiveFiltration filtration;
        PirashviliComplex pirashvili;
        LieQuotient lie;
        CeComplex ce;
        ComparisonMap comparison;
        Homology hl, hlie, hce;

        ComparisonData(const LeibnizAlgebra& g, Caps caps)
            : filtration(LeibnizComplex(g, caps)),
              pirashvili(pirashvili_complex(filtration.complex())),
              lie(g),
              ce(lie, caps),
              comparison(comparison_chain_map(filtration.complex(), lie, ce)),
              hl(homology(filtration.complex().chain())),
              hlie(homology(pirashvili.chain)),
              hce(homology(ce.chain())) {}
    };

    namespace detail {

        inline std::vector<int> weights_of(const Homology& h) {
            std::vector<int> out;
            for (const auto& [b, blk] : h.blocks)
                if (std::find(out.begin(), out.end(), b.weight) == out.end()) out.push_back(b.weight);
            std::sort(out.begin(), out.end());
            return out;
        }

        inline SparseMatrix comparison_on_homology(const ComparisonData& d, Block b) {
            return induced_on_homology(d.comparison.at(b), *d.hl.find(b), *d.hce.find(b));
        }

        // Transgression H_{N+1}(g_Lie) -> H_N(Lie(sg)) in weight w.
        inline SparseMatrix transgression(const ComparisonData& d, int n, int w) {
            const auto& f = d.filtration;
            const auto& lc = f.complex();
            Block src{n + 1, w}, tgt{n, w};
            const auto& prims = f.primitives().at(tgt);
            Subspace corr = f.level(n, src);
            std::vector<SparseVector> cols;
            for (const auto& v : corr.basis()) cols.push_back(prims.reduce(lc.apply(v, src)));
            LinearSolver solver(SparseMatrix::from_columns(f.basis().dim(tgt), cols));
            const auto& hsrc = *d.hce.find(src);
            const auto& htgt = *d.hlie.find(tgt);
            std::vector<SparseVector> out;
            for (const auto& c : hsrc.representatives()) {
                SparseVector x = lift_ce_vector(f.basis(), d.lie, d.ce, c, src);
                auto y = solver.solve(-prims.reduce(lc.apply(x, src)));
                if (!y) throw ConsistencyError("transgression: no correction lands in Lie(sg)");
                x += corr.combine(*y);
                auto coords = prims.coordinates(lc.apply(x, src));
                auto cls = coords ? htgt.classes.coordinates(*coords) : std::nullopt;
                if (!cls) throw ConsistencyError("transgression: image is not a Lie(sg) cycle");
                out.push_back(std::move(*cls));
            }
            return SparseMatrix::from_columns(htgt.betti, out);
        }

        // H_N(Lie(sg)) -> HL_N(g) induced by the inclusion.
        inline SparseMatrix inclusion(const ComparisonData& d, Block b) {
            const auto& hsrc = *d.hlie.find(b);
            const auto& htgt = *d.hl.find(b);
            std::vector<SparseVector> out;
            for (const auto& c : hsrc.representatives()) {
                auto cls = htgt.classes.coordinates(d.filtration.primitives().at(b).combine(c));
                if (!cls) throw ConsistencyError("inclusion: primitive cycle is not a cycle");
                out.push_back(std::move(*cls));
            }
            return SparseMatrix::from_columns(htgt.betti, out);
        }

        inline ExactnessSpot spot(std::string where, int w, std::size_t dim, const SparseMatrix& in,
                                  const SparseMatrix& out) {
            ExactnessSpot s;
            s.where = std::move(where);
            s.weight = w;
            s.dim = dim;
            s.rank_in = rank(in);
            s.rank_out = rank(out);
            s.composite_zero = out.rows() == 0 || in.cols() == 0 || (out * in).is_zero();
            s.exact = s.composite_zero && s.rank_in + s.rank_out == dim;
            return s;
        }

    }  // namespace detail

    /* Locates the first N > 1 with H_N(Lie(sg)) != 0, checks the comparison
     * map is an isomorphism below N and, when N + 1 is in range, that
     * HL_{N+1}(g) -> H_{N+1}(g_Lie) -> H_N(Lie(sg)) -> HL_N(g) -> H_N(g_Lie) -> 0
     * is exact in every weight. */
    inline FiveTermReport five_term_check(const ComparisonData& d) {
        FiveTermReport r;
        r.known_degree = std::min({d.hl.max_degree(), d.hlie.max_degree(), d.hce.max_degree()});
        r.n = first_higher_degree(d.hlie);
        auto weights = detail::weights_of(d.hl);
        for (int t = 0; t <= r.known_degree; ++t) {
            bool iso = true;
            for (int w : weights) {
                Block b{t, w};
                if (!d.hl.find(b) || !d.hce.find(b)) continue;
                SparseMatrix c = detail::comparison_on_homology(d, b);
                if (c.rows() != c.cols() || rank(c) != c.rows()) iso = false;
            }
            if (iso) r.iso_degrees.push_back(t);
        }
        auto is_iso = [&](int t) { return std::find(r.iso_degrees.begin(), r.iso_degrees.end(), t) != r.iso_degrees.end(); };
        if (!r.n) {
            r.item1_consistent = true;
            for (int t = 0; t <= r.known_degree; ++t)
                if (!is_iso(t)) r.item1_consistent = false;
            return r;
        }
        const int n = *r.n;
        for (int t = 0; t < n; ++t)
            if (!is_iso(t)) r.iso_below_n = false;
        r.sequence_checked = n + 1 <= r.known_degree;
        if (!r.sequence_checked) return r;
        r.kappa_iso = is_iso(n);
        for (int w : weights) {
            Block top{n + 1, w}, mid{n, w};
            SparseMatrix alpha = detail::comparison_on_homology(d, top);
            SparseMatrix tau = detail::transgression(d, n, w);
            SparseMatrix iota = detail::inclusion(d, mid);
            SparseMatrix kappa = detail::comparison_on_homology(d, mid);
            SparseMatrix zero_out(0, kappa.rows());
            r.spots.push_back(detail::spot("H_{N+1}(g_Lie)", w, d.hce.betti(top), alpha, tau));
            r.spots.push_back(detail::spot("H_N(Lie(sg))", w, d.hlie.betti(mid), tau, iota));
            r.spots.push_back(detail::spot("HL_N(g)", w, d.hl.betti(mid), iota, kappa));
            r.spots.push_back(detail::spot("H_N(g_Lie)", w, d.hce.betti(mid), kappa, zero_out));
            if (rank(alpha) != alpha.rows()) r.alpha_surjective = false;
        }
        return r;
    }

    inline FiveTermReport five_term_check(const LeibnizAlgebra& g, Caps caps) {
        return five_term_check(ComparisonData(g, caps));
    }

}  // namespace loday

#endif  // LODAY_FILTRATION_HPP
