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
 // Shared fixtures for the test programs.

#ifndef LODAY_TESTS_FIXTURES_HPP
#define LODAY_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "loday/io.hpp"
#include "loday/leibniz.hpp"

namespace loday::testing {

    inline LeibnizAlgebra data_algebra(const std::string& name) {
        return load_algebra(std::string(LODAY_DATA_DIR) + "/" + name + ".json");
    }

    // Named valid algebras exercised by the property suites.
    inline std::vector<std::pair<std::string, LeibnizAlgebra>> valid_algebras() {
        return {
            {"free(2,4)", free_leibniz(2, 4)},
            {"ef_square", data_algebra("ef_square")},
            {"lie2", data_algebra("lie2")},
            {"right_action2", data_algebra("right_action2")},
            {"abelian3", data_algebra("abelian3")},
        };
    }

    // Random element with small integer coefficients, restricted to basis
    // vectors of weight <= max_weight (ignored for unweighted algebras).
    inline Element random_element(const LeibnizAlgebra& g, std::mt19937_64& rng, int max_weight) {
        std::uniform_int_distribution<int> coeff(-3, 3);
        Element x(g.dim(), Rational(0));
        for (std::size_t i = 0; i < g.dim(); ++i)
            if (!g.weighted() || g.weight(i) <= max_weight) x[i] = coeff(rng);
        return x;
    }

}  // namespace loday::testing

#endif  // LODAY_TESTS_FIXTURES_HPP
