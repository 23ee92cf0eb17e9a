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
 // Exact rational scalars and the error types shared by every module.

#ifndef LODAY_RATIONAL_HPP
#define LODAY_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace loday {

    // Always canonical (lowest terms, positive denominator) after every
    // arithmetic operation; mpq_class maintains this for us.
    using Rational = mpq_class;

    // Argument mismatches (dimensions, indices, malformed requests).
    class ArgumentError : public std::invalid_argument {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A computation needed data beyond the declared truncation caps.
    class TruncationError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // An identity that holds for every valid input failed; indicates a bug
    // upstream or corrupted input that slipped past validation.
    class ConsistencyError : public std::logic_error {
    public:
        using std::logic_error::logic_error;
    };

    class ParseError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // "p/q" with q > 0, also for integers ("3/1").
    inline std::string to_string(const Rational& r) {
        return r.get_num().get_str() + "/" + r.get_den().get_str();
    }

    // Accepts "p/q" or "p". Throws ParseError on anything else.
    inline Rational parse_rational(std::string_view text) {
        std::string s(text);
        auto valid_int = [](std::string_view t) {
            if (t.empty()) return false;
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        auto slash = s.find('/');
        std::string num = slash == std::string::npos ? s : s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            throw ParseError("malformed rational '" + s + "'");
        if (num[0] == '+') num.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational r(n, d);
        r.canonicalize();
        return r;
    }

}  // namespace loday

#endif  // LODAY_RATIONAL_HPP
