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
 // Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
 // criterion fails.

#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "loday/complexes.hpp"
#include "loday/filtration.hpp"
#include "loday/linfty.hpp"
#include "properties.hpp"

namespace loday {
namespace {

    using testing::data_algebra;

    struct Outcome {
        bool pass = true;
        std::ostringstream detail;

        void require(bool condition, const std::string& what) {
            if (!condition) {
                if (!detail.str().empty()) detail << "; ";
                pass = false;
                detail << what;
            }
        }
    };

    /* Free Lie algebra dimensions by weight: rank of the ungraded left-normed
     * commutators of all words, computed in the tensor algebra. */
    std::vector<std::size_t> free_lie_dims(int letters, int max_weight) {
        std::vector<std::size_t> out(static_cast<std::size_t>(max_weight) + 1, 0);
        for (int n = 1; n <= max_weight; ++n) {
            std::vector<Word> words{{}};
            for (int i = 0; i < n; ++i) {
                std::vector<Word> next;
                for (const auto& w : words)
                    for (int l = 0; l < letters; ++l) {
                        Word v = w;
                        v.push_back(l);
                        next.push_back(v);
                    }
                words = next;
            }
            std::map<Word, std::size_t> index;
            for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
            std::vector<SparseVector> rows;
            for (const auto& w : words) {
                std::map<Word, Rational> acc{{Word{w[0]}, Rational(1)}};
                for (std::size_t i = 1; i < w.size(); ++i) {
                    std::map<Word, Rational> next;
                    for (const auto& [u, c] : acc) {
                        Word right = u, left{w[i]};
                        right.push_back(w[i]);
                        left.insert(left.end(), u.begin(), u.end());
                        next[right] += c;
                        next[left] -= c;
                    }
                    acc = next;
                }
                std::vector<SparseVector::Entry> e;
                for (const auto& [u, c] : acc)
                    if (c != 0) e.emplace_back(index.at(u), c);
                rows.emplace_back(std::move(e));
            }
            out[static_cast<std::size_t>(n)] = Subspace::span(words.size(), rows).dim();
        }
        return out;
    }

    Outcome ac1() {
        Outcome o;
        auto h = homology(LeibnizComplex(free_leibniz(2, 4), Caps{4, 4}).chain());
        std::vector<std::size_t> betti;
        for (int t = 0; t < 4; ++t) betti.push_back(h.betti_in_degree(t));
        o.require(betti == std::vector<std::size_t>{1, 2, 0, 0}, "betti by degree differs from (1,2,0,0)");
        o.require(h.betti({1, 1}) == 2, "weight-one part of degree one is not 2");
        return o;
    }

    Outcome ac2() {
        Outcome o;
        LeibnizComplex lc(free_leibniz(2, 4), Caps{4, 4});
        auto h = homology(pirashvili_complex(lc).chain);
        for (const auto& [b, hb] : h.blocks)
            if (b.degree != 1) o.require(hb.betti == 0, "nonzero homology in degree " + std::to_string(b.degree));
        auto lie = free_lie_dims(2, 4);
        o.require(lie == std::vector<std::size_t>{0, 2, 1, 2, 3}, "free Lie oracle differs from 2,1,2,3");
        for (int w = 1; w <= 4; ++w)
            o.require(h.betti({1, w}) == lie[static_cast<std::size_t>(w)],
                      "degree-one dimension differs at weight " + std::to_string(w));
        return o;
    }

    Outcome ac3() {
        Outcome o;
        for (auto [name, g, caps] : {std::tuple{"free", free_leibniz(2, 4), Caps{4, 4}},
                                     std::tuple{"ef_square", data_algebra("ef_square"), Caps{5, 5}}}) {
            PrimitiveFiltration f = primitive_filtration(g, caps);
            o.require(!check_filtration_shape(f), std::string(name) + ": filtration not increasing and exhaustive");
            o.require(!check_filtration_stability(f), std::string(name) + ": d leaves a filtration level");
            o.require(associated_graded(f).ok(), std::string(name) + ": graded pieces differ from symmetric powers");
        }
        return o;
    }

    Outcome ac4() {
        Outcome o;
        for (auto [name, g, caps] : {std::tuple{"free", free_leibniz(2, 4), Caps{4, 4}},
                                     std::tuple{"ef_square", data_algebra("ef_square"), Caps{5, 5}}}) {
            ComparisonData d(g, caps);
            SpectralSequence ss(d.filtration);
            E1Check e1 = check_e1(ss, d.hlie);
            BottomRow row = identify_bottom_row(ss, d.lie, d.ce);
            const std::string n = name;
            o.require(ss.d1_well_defined(), n + ": d1 depends on the lift");
            o.require(e1.column0, n + ": column zero of E1");
            o.require(e1.column1, n + ": column one of E1");
            o.require(row.ok(), n + ": bottom row is not the CE complex");
            o.require(check_edge_compatibility(ss, row, d.comparison).empty(), n + ": edge map differs from comparison");
            o.require(!check_d1_column2_vanishing(ss), n + ": d1 out of column two is nonzero for q > 0");
            o.require(!check_d1_square_zero(ss), n + ": d1 o d1 != 0");
        }
        return o;
    }

    struct LinftyCase {
        std::string name;
        LeibnizAlgebra g;
        LinftyCaps caps;
    };

    std::vector<LinftyCase> linfty_cases() {
        return {{"free", free_leibniz(2, 4), {3, 4, 4}},
                {"ef_square", data_algebra("ef_square"), {3, 4, 5}},
                {"lie2", data_algebra("lie2"), {3, 4, 1}},
                {"right_action2", data_algebra("right_action2"), {3, 4, 1}},
                {"abelian3", data_algebra("abelian3"), {3, 4, 3}}};
    }

    Outcome ac5() {
        Outcome o;
        for (const auto& c : linfty_cases()) {
            PirashviliSetting s(c.g, c.caps);
            StubValidity v = check_stub(pirashvili_stub(s));
            o.require(v.sequence, c.name + ": d o d on degree two");
            o.require(v.mixed, c.name + ": mixed condition");
            o.require(v.cubic, c.name + ": cubic condition");
        }
        return o;
    }

    Outcome ac6() {
        Outcome o;
        PirashviliSetting s(free_leibniz(2, 4), {4, 6, 4});
        Stub3 stub = pirashvili_stub(s);
        ExtendResult r = extend_stub(s, stub);
        o.require(!r.obstruction, "obstruction at " + (r.obstruction ? to_string(r.obstruction->key) : ""));
        o.require(r.ok(), "extension inconsistent");
        o.require(!square_zero_check(r.d), "d-bar o d != 0");
        o.require(!full_square_zero_check(r.d), "d o d != 0");
        for (auto k : s.space()->keys()) {
            if (k.arity == 1 && k.degree >= 2)
                o.require(r.d.component(k) == s.pirashvili().chain.differential({k.degree, k.weight}),
                          "arity one differs from the complex at " + to_string(k));
            if (k.degree <= 3) o.require(r.d.component(k) == stub.d.component(k), "stub changed at " + to_string(k));
        }
        return o;
    }

    Outcome ac7() {
        Outcome o;
        PirashviliSetting s(free_leibniz(2, 4), {4, 6, 4});
        Stub3 stub = pirashvili_stub(s);
        ExtendResult a = extend_stub(s, stub, {true, 101}), b = extend_stub(s, stub, {true, 202});
        o.require(a.ok() && b.ok(), "an extension failed");
        if (!o.pass) return o;
        o.require(!(a.d == b.d), "the two seeds gave the same structure");
        AlignResult al = align(a.d, b.d);
        o.require(al.morphism.has_value(), "align failed");
        if (!al.morphism) return o;
        const CoalgebraMorphism& f = *al.morphism;
        o.require(!check_coalgebra_map(f), "not a coalgebra map");
        o.require(!check_intertwines(f, b.d, a.d), "does not intertwine the differentials");
        o.require(transport(b.d, f) == a.d, "transport does not reproduce the first structure");
        o.require(compose(f, inverse(f)).is_identity(), "not invertible");
        for (auto k : s.space()->keys()) {
            if (k.arity == 1)
                for (const auto& w : s.space()->words(k)) o.require(f.apply(w) == SymElement(w), "moves sW");
            if (k.arity == 2 && k.degree == 2) o.require(f.component(k).is_zero(), "moves S^2 of the degree-one part");
        }
        return o;
    }

    Outcome ac8() {
        Outcome o;
        for (const auto& c : linfty_cases()) {
            PirashviliSetting s(c.g, c.caps);
            ExtendResult r = extend_stub(s, pirashvili_stub(s));
            o.require(r.ok(), c.name + ": extension failed");
            if (!r.ok()) continue;
            BracketCheck b = induced_bracket_on_homology(s, r.d);
            o.require(b.h1_matches, c.name + ": H_1 is not g_Lie");
            o.require(!b.pairs.empty(), c.name + ": no pairs evaluated");
            o.require(b.ok(), c.name + ": induced bracket differs from -*");
        }
        return o;
    }

    Outcome ac9() {
        Outcome o;
        for (const auto& [name, g] : testing::valid_algebras()) {
            auto record = [&](const testing::Check& c, const std::string& what) {
                o.require(c.ok && c.cases > 0, name + ": " + what + (c.failure.empty() ? "" : " (" + c.failure + ")"));
            };
            record(testing::leibniz_identity(g), "Leibniz identity");
            testing::Check triples = testing::random_triple_identities(g, 2026, 100);
            o.require(triples.cases >= 500, name + ": fewer than 100 random triples");
            record(triples, "random triple identities");
            LeibnizComplex lc(g, Caps{4, g.weighted() ? 4 : 1});
            PirashviliComplex p = pirashvili_complex(lc);
            record(testing::leibniz_recursion(lc), "differential recursion");
            record(testing::differential_splitting(lc), "differential splitting");
            record(testing::action_linearity(lc), "linearity over the Lie quotient");
            testing::Check brackets = testing::action_from_brackets(lc, p);
            o.require(brackets.ok, name + ": action from brackets (" + brackets.failure + ")");
            testing::Check delta = testing::one_delta_on_primitives(lc, p);
            o.require(delta.ok, name + ": linear coproduct on primitives (" + delta.failure + ")");
        }
        return o;
    }

    Outcome ac10() {
        Outcome o;
        ComparisonData d(data_algebra("ef_square"), {5, 5});
        FiveTermReport r = five_term_check(d);
        o.require(r.n.has_value(), "no N with nonzero higher homology in cap");
        if (r.n) o.detail << "N = " << *r.n;
        o.require(r.iso_below_n, "comparison not an isomorphism below N");
        o.require(r.sequence_checked, "sequence beyond the computed range");
        o.require(r.exact(), "sequence not exact");
        o.require(r.ok(), "report inconsistent");
        return o;
    }

}  // namespace
}  // namespace loday

int main() {
    using namespace loday;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"free Leibniz homology", ac1},         {"Lie(sg) homology of a free algebra", ac2},
        {"primitive filtration", ac3},          {"spectral identifications", ac4},
        {"3-stub validity", ac5},               {"L-infinity existence", ac6},
        {"L-infinity uniqueness", ac7},         {"induced bracket", ac8},
        {"property suites", ac9},               {"five-term sequence", ac10}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " AC" << i + 1 << " " << criteria[i].first;
        const std::string detail = o.detail.str();
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
