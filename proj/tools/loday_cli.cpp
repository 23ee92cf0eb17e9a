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
 // Command-line front end: validate algebras, generate free ones, and run
 // the homology, spectral sequence and L-infinity computations.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loday/complexes.hpp"
#include "loday/filtration.hpp"
#include "loday/io.hpp"
#include "loday/leibniz.hpp"
#include "loday/linfty.hpp"
#include "loday/report.hpp"

namespace loday {
namespace {

    enum Exit { ok = 0, violation = 2, io = 3, overflow = 4 };

    struct RunConfig {
        std::string input;
        std::string caps_text;
        std::string out;
        std::string format = "json";
        std::optional<std::uint64_t> seed;
        std::string complex = "leibniz";
        int generators = 0;
        int weight = 0;
    };

    LinftyCaps parse_caps(const std::string& text, bool need_arity) {
        std::vector<int> parts;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                std::size_t used = 0;
                int v = std::stoi(item, &used);
                if (used != item.size()) throw ParseError("");
                parts.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("--caps expects T,W[,A] with integers, got '" + text + "'");
            }
        }
        if (parts.size() < 2 || parts.size() > 3) throw ParseError("--caps expects T,W[,A]");
        LinftyCaps caps{parts.size() == 3 ? parts[2] : 2, parts[0], parts[1]};
        if (caps.max_degree < 1 || caps.max_weight < 1) throw ParseError("--caps needs T >= 1 and W >= 1");
        if (need_arity && parts.size() != 3) throw ParseError("this command needs --caps T,W,A");
        if (caps.max_arity < 2) throw ParseError("--caps needs A >= 2");
        return caps;
    }

    // Scalar leaves as "path: value" lines, skipping matrices and pages.
    void print_table(const Json& j, const std::string& path, std::ostream& os) {
        if (j.is_object()) {
            for (const auto& [k, v] : j.items()) {
                if (k == "components" || k == "matrix" || k == "pages" || k == "blocks" || k == "pairs") {
                    if (v.is_array()) os << (path.empty() ? k : path + "." + k) << ": [" << v.size() << " entries]\n";
                    continue;
                }
                print_table(v, path.empty() ? k : path + "." + k, os);
            }
        } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); })) {
            os << path << ": " << j.dump() << "\n";
        } else if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) print_table(j[i], path + "[" + std::to_string(i) + "]", os);
        } else {
            os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
        }
    }

    void homology_table(const Json& j, std::ostream& os) {
        os << "complex " << j["complex"].get<std::string>() << ", caps T=" << j["caps"]["T"] << " W=" << j["caps"]["W"]
           << "\n";
        os << "degree weight    dim  betti\n";
        for (const auto& b : j["blocks"]) {
            char line[64];
            std::snprintf(line, sizeof line, "%6d %6d %6zu %6zu\n", b["degree"].get<int>(), b["weight"].get<int>(),
                          b["dim"].get<std::size_t>(), b["betti"].get<std::size_t>());
            os << line;
        }
        os << "betti by degree: " << j["betti_by_degree"].dump() << "\n";
    }

    void emit(const Json& j, const RunConfig& cfg) {
        std::ostringstream os;
        if (cfg.format == "table") {
            if (j.contains("betti_by_degree")) homology_table(j, os);
            else print_table(j, "", os);
        } else {
            os << j.dump(2) << "\n";
        }
        if (cfg.out.empty()) {
            std::cout << os.str();
            return;
        }
        std::ofstream f(cfg.out);
        if (!f) throw ParseError("cannot write '" + cfg.out + "'");
        f << os.str();
    }

    Json violation_json(const LeibnizViolation& v) {
        return Json{{"valid", false},
                    {"triple", {v.i, v.j, v.k}},
                    {"x(yz)", to_json(v.lhs)},
                    {"(xy)z-(xz)y", to_json(v.rhs)}};
    }

    // Loads the input and refuses algebras that are not Leibniz.
    std::optional<LeibnizAlgebra> load_valid(const RunConfig& cfg, int& code) {
        LeibnizAlgebra g = load_algebra(cfg.input);
        if (auto v = check_leibniz(g)) {
            emit(violation_json(*v), cfg);
            code = violation;
            return std::nullopt;
        }
        return g;
    }

    int cmd_check(const RunConfig& cfg) {
        LeibnizAlgebra g = load_algebra(cfg.input);
        if (auto v = check_leibniz(g)) {
            emit(violation_json(*v), cfg);
            return violation;
        }
        emit(Json{{"valid", true}, {"dim", g.dim()}}, cfg);
        return ok;
    }

    int cmd_free(const RunConfig& cfg) {
        LeibnizAlgebra g = free_leibniz(cfg.generators, cfg.weight);
        RunConfig json_cfg = cfg;
        json_cfg.format = "json";
        emit(to_json(g), json_cfg);
        return ok;
    }

    int cmd_homology(const RunConfig& cfg) {
        LinftyCaps caps = parse_caps(cfg.caps_text, false);
        int code = ok;
        auto g = load_valid(cfg, code);
        if (!g) return code;
        if (cfg.complex == "ce") {
            LieQuotient q(*g);
            emit(homology_report(homology(CeComplex(q, caps.complex_caps()).chain())), cfg);
            return ok;
        }
        LeibnizComplex lc(*g, caps.complex_caps());
        if (cfg.complex == "leibniz") emit(homology_report(homology(lc.chain())), cfg);
        else emit(homology_report(homology(pirashvili_complex(lc).chain)), cfg);
        return ok;
    }

    int cmd_ss(const RunConfig& cfg) {
        LinftyCaps caps = parse_caps(cfg.caps_text, false);
        int code = ok;
        auto g = load_valid(cfg, code);
        if (!g) return code;
        Json report = spectral_report(*g, caps.complex_caps(), cfg.seed.value_or(1));
        emit(report, cfg);
        return report["ok"].get<bool>() && report["five_term"]["ok"].get<bool>() ? ok : violation;
    }

    int cmd_linfty(const std::string& sub, const RunConfig& cfg) {
        LinftyCaps caps = parse_caps(cfg.caps_text, true);
        int code = ok;
        auto g = load_valid(cfg, code);
        if (!g) return code;
        PirashviliSetting s(*g, caps);
        Stub3 stub = pirashvili_stub(s);
        StubValidity valid = check_stub(stub);
        Json report{{"caps", caps_json(caps)}, {"generators", s.space()->generators()}, {"stub", stub_json(valid)}};
        if (cfg.seed) report["seed"] = *cfg.seed;
        if (sub == "stub") {
            report["components"] = components_json(stub.d);
            emit(report, cfg);
            return valid.ok() ? ok : violation;
        }
        ExtendResult r = extend_stub(s, stub, {true, cfg.seed});
        if (sub == "extend") {
            report["extension"] = extend_json(r, true);
            emit(report, cfg);
            return valid.ok() && r.ok() ? ok : violation;
        }
        if (sub == "verify") {
            report["extension"] = extend_json(r, false);
            bool good = valid.ok() && r.ok();
            if (r.ok()) {
                bool full = !full_square_zero_check(r.d);
                bool linear = true, low = true;
                for (auto k : s.space()->keys()) {
                    if (k.arity == 1 && !(r.d.component(k) == s.differential().component(k))) linear = false;
                    if (k.degree <= 3 && !(r.d.component(k) == stub.d.component(k))) low = false;
                }
                BracketCheck b = induced_bracket_on_homology(s, r.d);
                report["verify"] = Json{{"square_zero_full", full},
                                        {"arity_one_is_the_complex", linear},
                                        {"low_degrees_are_the_stub", low},
                                        {"bracket", bracket_json(b)}};
                good = good && full && linear && low && b.ok() && report["extension"]["square_zero"].get<bool>();
            }
            report["ok"] = good;
            emit(report, cfg);
            return good ? ok : violation;
        }
        // align: a second extension with another perturbation seed
        const std::uint64_t other_seed = cfg.seed.value_or(1) + 1;
        ExtendResult r2 = extend_stub(s, stub, {true, other_seed});
        report["extensions"] = Json::array({extend_json(r, false), extend_json(r2, false)});
        if (!r.ok() || !r2.ok()) {
            report["ok"] = false;
            emit(report, cfg);
            return violation;
        }
        AlignResult a = align(r.d, r2.d);
        Json al;
        if (a.failure) {
            al["failure"] = Json{{"block", key_json(a.failure->key)}, {"column", a.failure->column},
                                 {"difference", to_json(a.failure->difference)}};
        }
        Json steps = Json::array();
        for (auto k : a.steps) steps.push_back(key_json(k));
        al["steps"] = std::move(steps);
        bool good = a.morphism.has_value();
        if (a.morphism) {
            bool coalgebra = !check_coalgebra_map(*a.morphism);
            bool intertwines = !check_intertwines(*a.morphism, r2.d, r.d);
            bool transported = transport(r2.d, *a.morphism) == r.d;
            al["coalgebra_map"] = coalgebra;
            al["intertwines"] = intertwines;
            al["transport_matches"] = transported;
            al["components"] = components_json(*a.morphism);
            good = coalgebra && intertwines && transported;
        }
        report["align"] = std::move(al);
        report["ok"] = good;
        emit(report, cfg);
        return good ? ok : violation;
    }

}  // namespace
}  // namespace loday

int main(int argc, char** argv) {
    using namespace loday;
    CLI::App app{"Leibniz homology, the primitive filtration and L-infinity structures"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::function<int()> run;

    auto add_common = [&](CLI::App* sub, bool caps) {
        sub->add_option("file", cfg.input, "algebra JSON file")->required();
        if (caps) sub->add_option("--caps", cfg.caps_text, "caps T,W[,A]")->required();
        sub->add_option("--out", cfg.out, "write the report here instead of stdout");
        sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    };

    auto* check = app.add_subcommand("check", "verify the Leibniz identity");
    add_common(check, false);
    check->callback([&] { run = [&] { return cmd_check(cfg); }; });

    auto* free = app.add_subcommand("free", "write the free Leibniz algebra truncated at a weight");
    free->add_option("--generators", cfg.generators, "number of generators")->required();
    free->add_option("--weight", cfg.weight, "maximal weight")->required();
    free->add_option("--out", cfg.out, "output file");
    free->callback([&] { run = [&] { return cmd_free(cfg); }; });

    auto* hom = app.add_subcommand("homology", "homology of a complex");
    add_common(hom, true);
    hom->add_option("--complex", cfg.complex, "leibniz, pirashvili or ce")
        ->check(CLI::IsMember({"leibniz", "pirashvili", "ce"}));
    hom->callback([&] { run = [&] { return cmd_homology(cfg); }; });

    auto* ss = app.add_subcommand("ss", "primitive filtration spectral sequence");
    add_common(ss, true);
    ss->add_option("--seed", cfg.seed, "seed for the perturbed d1 check");
    ss->callback([&] { run = [&] { return cmd_ss(cfg); }; });

    auto* linfty = app.add_subcommand("linfty", "L-infinity structure on the Pirashvili complex");
    linfty->require_subcommand(1);
    for (const char* name : {"stub", "extend", "verify", "align"}) {
        auto* sub = linfty->add_subcommand(name);
        add_common(sub, true);
        sub->add_option("--seed", cfg.seed, "perturb every solved component by seeded cycles");
        std::string n = name;
        sub->callback([&, n] { run = [&, n] { return cmd_linfty(n, cfg); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::io;
    }
    try {
        return run ? run() : Exit::io;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::io;
    } catch (const TruncationError& e) {
        std::cerr << "cap overflow: " << e.what() << "\n";
        return Exit::overflow;
    } catch (const ConsistencyError& e) {
        std::cerr << "mathematical failure: " << e.what() << "\n";
        return Exit::violation;
    } catch (const ArgumentError& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return Exit::io;
    }
}
