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
 // JSON reading and writing of algebras and sparse data.
 //
 // Algebra files look like
 //   { "dim": 2, "labels": ["e", "f"],
 //     "products": [ { "i": 1, "j": 1, "value": ["1/1", "0/1"] } ],
 //     "weights": [2, 1], "weight_cap": 5 }
 // where "weights" and "weight_cap" are optional.

#ifndef LODAY_IO_HPP
#define LODAY_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "leibniz.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace loday {

    using Json = nlohmann::ordered_json;

    inline Json to_json(const SparseVector& v) {
        Json out = Json::array();
        for (const auto& [i, c] : v) out.push_back(Json::array({i, to_string(c)}));
        return out;
    }

    inline Json dense_json(const SparseVector& v, std::size_t n) {
        Json out = Json::array();
        for (const auto& c : v.dense(n)) out.push_back(to_string(c));
        return out;
    }

    // Sparse matrix as {"rows", "cols", "entries": [[r, c, "p/q"], ...]}.
    inline Json to_json(const SparseMatrix& m) {
        Json entries = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (const auto& [c, v] : m.row(r)) entries.push_back(Json::array({r, c, to_string(v)}));
        return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
    }

    inline Json to_json(const LeibnizAlgebra& g) {
        Json out;
        out["dim"] = g.dim();
        out["labels"] = g.labels();
        Json products = Json::array();
        for (const auto& [ij, v] : g.products())
            products.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"value", dense_json(v, g.dim())}});
        out["products"] = std::move(products);
        if (g.weighted()) out["weights"] = g.weights();
        if (g.weight_cap()) out["weight_cap"] = *g.weight_cap();
        return out;
    }

    inline LeibnizAlgebra algebra_from_json(const Json& j) {
        try {
            if (!j.is_object()) throw ParseError("algebra must be a JSON object");
            if (!j.contains("dim") || !j["dim"].is_number_unsigned()) throw ParseError("missing or invalid 'dim'");
            const std::size_t dim = j["dim"].get<std::size_t>();
            std::vector<std::string> labels;
            if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
            LeibnizAlgebra::Products products;
            if (j.contains("products")) {
                if (!j["products"].is_array()) throw ParseError("'products' must be an array");
                for (const auto& p : j["products"]) {
                    const std::size_t i = p.at("i").get<std::size_t>();
                    const std::size_t k = p.at("j").get<std::size_t>();
                    const auto& value = p.at("value");
                    if (!value.is_array() || value.size() != dim)
                        throw ParseError("product value must list exactly 'dim' rationals");
                    std::vector<Rational> coeffs;
                    for (const auto& c : value) coeffs.push_back(parse_rational(c.get<std::string>()));
                    if (products.count({i, k})) throw ParseError("duplicate product entry");
                    products.emplace(std::make_pair(i, k), SparseVector::from_dense(coeffs));
                }
            }
            std::optional<std::vector<int>> weights;
            if (j.contains("weights")) weights = j["weights"].get<std::vector<int>>();
            std::optional<int> cap;
            if (j.contains("weight_cap")) cap = j["weight_cap"].get<int>();
            return LeibnizAlgebra(dim, std::move(labels), std::move(products), std::move(weights), cap);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid algebra JSON: ") + e.what());
        } catch (const ArgumentError& e) {
            throw ParseError(std::string("invalid algebra: ") + e.what());
        }
    }

    inline LeibnizAlgebra parse_algebra(const std::string& text) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        return algebra_from_json(j);
    }

    inline LeibnizAlgebra load_algebra(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_algebra(ss.str());
    }

}  // namespace loday

#endif  // LODAY_IO_HPP
