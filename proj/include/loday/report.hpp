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
 // JSON reports for homology, the spectral sequence and L-infinity runs.
 // Every report echoes the caps it was computed at.

#ifndef LODAY_REPORT_HPP
#define LODAY_REPORT_HPP

#include <string>

#include "complexes.hpp"
#include "filtration.hpp"
#include "io.hpp"
#include "linfty.hpp"

namespace loday {

    inline Json caps_json(Caps caps) { return Json{{"T", caps.max_degree}, {"W", caps.max_weight}}; }

    inline Json caps_json(LinftyCaps caps) {
        return Json{{"T", caps.max_degree}, {"W", caps.max_weight}, {"A", caps.max_arity}};
    }

    inline Json homology_report(const Homology& h) {
        Json blocks = Json::array();
        for (const auto& [b, hb] : h.blocks)
            blocks.push_back(Json{{"degree", b.degree},
                                  {"weight", b.weight},
                                  {"betti", hb.betti},
                                  {"dim", hb.dim},
                                  {"rank_d_in", hb.rank_in},
                                  {"rank_d_out", hb.rank_out}});
        Json by_degree = Json::array();
        for (int t = 0; t <= h.max_degree(); ++t) by_degree.push_back(h.betti_in_degree(t));
        return Json{{"complex", h.complex},
                    {"caps", caps_json(h.caps)},
                    {"betti_by_degree", std::move(by_degree)},
                    {"blocks", std::move(blocks)}};
    }

    inline Json spectral_index_json(SpectralIndex i) { return Json{{"p", i.p}, {"q", i.q}, {"weight", i.weight}}; }

    inline Json page_json(const SpectralPage& page) {
        Json blocks = Json::array();
        for (const auto& [i, n] : page.dims) {
            Json b = spectral_index_json(i);
            b["dim"] = n;
            auto d = page.differentials.find(i);
            if (d != page.differentials.end()) b["rank_d_out"] = rank(d->second);
            blocks.push_back(std::move(b));
        }
        return Json{{"r", page.r}, {"blocks", std::move(blocks)}};
    }

    inline Json five_term_json(const FiveTermReport& r) {
        Json spots = Json::array();
        for (const auto& s : r.spots)
            spots.push_back(Json{{"at", s.where},
                                 {"weight", s.weight},
                                 {"dim", s.dim},
                                 {"rank_in", s.rank_in},
                                 {"rank_out", s.rank_out},
                                 {"composite_zero", s.composite_zero},
                                 {"exact", s.exact}});
        Json out{{"known_degree", r.known_degree},
                 {"N", r.n ? Json(*r.n) : Json(nullptr)},
                 {"iso_degrees", r.iso_degrees},
                 {"iso_below_N", r.iso_below_n},
                 {"sequence_checked", r.sequence_checked},
                 {"spots", std::move(spots)},
                 {"comparison_iso_at_N", r.kappa_iso},
                 {"onto_at_N_plus_1", r.alpha_surjective},
                 {"exact", r.exact()},
                 {"ok", r.ok()}};
        if (!r.n) out["note"] = "no nonzero N in cap; comparison map checked for isomorphism in range only";
        return out;
    }

    /* Filtration, pages E0 to E2 and every identification check. Throws
     * ConsistencyError when the input does not give a complex. */
    inline Json spectral_report(const LeibnizAlgebra& g, Caps caps, std::uint64_t seed = 1) {
        ComparisonData d(g, caps);
        const PrimitiveFiltration& f = d.filtration;
        SpectralSequence ss(f, seed);
        auto stable = check_filtration_stability(f);
        AssociatedGraded gr = associated_graded(f);
        E1Check e1 = check_e1(ss, d.hlie);
        BottomRow row = identify_bottom_row(ss, d.lie, d.ce);
        auto edge = check_edge_compatibility(ss, row, d.comparison);
        Json pages = Json::array();
        for (int r = 0; r <= 2; ++r) pages.push_back(page_json(ss.page(r)));
        Json checks{{"filtration_stable", !stable},
                    {"pbw_dimensions", gr.ok()},
                    {"d1_well_defined", ss.d1_well_defined()},
                    {"d1_square_zero", !check_d1_square_zero(ss)},
                    {"e2_two_routes_agree", !check_e2_routes(ss)},
                    {"e1_column0_is_ground_field", e1.column0},
                    {"e1_column1_is_lie_homology", e1.column1},
                    {"e1_is_symmetric_algebra", e1.symmetric},
                    {"bottom_row_is_ce", row.ok()},
                    {"edge_is_comparison_map", edge.empty()},
                    {"d1_column2_vanishes_for_q_positive", !check_d1_column2_vanishing(ss)},
                    {"vanishing_zone", !check_vanishing_zone(ss, d.hlie)}};
        bool all = true;
        for (const auto& [k, v] : checks.items()) all = all && v.get<bool>();
        return Json{{"caps", caps_json(caps)},
                    {"seed", seed},
                    {"pages", std::move(pages)},
                    {"checks", std::move(checks)},
                    {"five_term", five_term_json(five_term_check(d))},
                    {"ok", all}};
    }

    inline Json key_json(SymKey k) { return Json{{"arity", k.arity}, {"degree", k.degree}, {"weight", k.weight}}; }

    inline Json components_json(const BlockMaps& m) {
        Json out = Json::array();
        for (const auto& [k, mat] : m.components()) {
            Json c = key_json(k);
            c["matrix"] = to_json(mat);
            out.push_back(std::move(c));
        }
        return out;
    }

    inline Json stub_json(const StubValidity& v) {
        Json failures = Json::array();
        for (auto k : v.failures) failures.push_back(key_json(k));
        return Json{{"sequence", v.sequence}, {"mixed", v.mixed}, {"cubic", v.cubic}, {"valid", v.ok()},
                    {"failures", std::move(failures)}};
    }

    inline Json bracket_json(const BracketCheck& b) {
        Json pairs = Json::array();
        for (const auto& p : b.pairs)
            pairs.push_back(Json{{"a", p.a}, {"b", p.b}, {"induced", to_json(p.induced)},
                                 {"expected", to_json(p.expected)}, {"ok", p.ok}});
        return Json{{"h1_is_lie_quotient", b.h1_matches}, {"pairs", std::move(pairs)}, {"ok", b.ok()}};
    }

    inline Json extend_json(const ExtendResult& r, bool with_components) {
        Json out;
        out["ok"] = r.ok();
        if (r.obstruction) {
            const auto& o = *r.obstruction;
            out["obstruction"] = Json{{"block", key_json(o.key)},
                                      {"column", o.column},
                                      {"composite", to_json(o.composite)},
                                      {"homology_class", to_json(o.homology_class)}};
        } else {
            out["obstruction"] = nullptr;
        }
        if (r.seed_mismatch) out["seeded_column_mismatch"] = key_json(*r.seed_mismatch);
        if (r.not_cycle) out["composite_not_a_cycle"] = key_json(*r.not_cycle);
        Json solved = Json::array(), seeded = Json::array();
        for (auto k : r.solved) solved.push_back(key_json(k));
        for (auto k : r.seeded) seeded.push_back(key_json(k));
        out["solved"] = std::move(solved);
        out["seeded"] = std::move(seeded);
        if (r.ok()) out["square_zero"] = !square_zero_check(r.d);
        if (with_components) out["components"] = components_json(r.d);
        return out;
    }

}  // namespace loday

#endif  // LODAY_REPORT_HPP
