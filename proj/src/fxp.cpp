/*
 * Copyright 2026 the cordic-dct authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cdct/fxp.hpp"

#include <cmath>
#include <stdexcept>

namespace cdct {

void check_format(const FxpFormat& fmt) {
    // Width is capped at 62 so that the sum of two in-range raws plus a
    // carry still fits an int64 without intermediate overflow.
    if (fmt.width < 2 || fmt.width > 62)
        throw std::invalid_argument("fxp: width must be in [2, 62], got " +
                                    std::to_string(fmt.width));
    if (fmt.frac < 0 || fmt.frac > fmt.width - 1)
        throw std::invalid_argument("fxp: frac must be in [0, width-1], got " +
                                    std::to_string(fmt.frac));
}

double FxpValue::to_real() const {
    return std::ldexp(static_cast<double>(raw), -format.frac);
}

FxpValue make_fxp(int64_t raw, const FxpFormat& fmt) {
    check_format(fmt);
    if (raw < fmt.min_raw() || raw > fmt.max_raw())
        throw std::out_of_range("fxp: raw " + std::to_string(raw) +
                                " outside " + to_string(fmt));
    return FxpValue{raw, fmt};
}

namespace {

int64_t apply_overflow(int64_t wide, const FxpFormat& fmt) {
    if (wide >= fmt.min_raw() && wide <= fmt.max_raw())
        return wide;
    switch (fmt.overflow) {
    case Overflow::wrap: {
        // Reduce modulo 2^width in unsigned arithmetic, then sign-extend.
        const uint64_t mask = (uint64_t(1) << fmt.width) - 1;
        uint64_t u = static_cast<uint64_t>(wide) & mask;
        if (u & (uint64_t(1) << (fmt.width - 1)))
            u |= ~mask;
        return static_cast<int64_t>(u);
    }
    case Overflow::saturate:
        return wide < 0 ? fmt.min_raw() : fmt.max_raw();
    case Overflow::trap:
        throw std::overflow_error("fxp: result " + std::to_string(wide) +
                                  " overflows " + to_string(fmt));
    }
    return wide; // unreachable
}

void require_same_format(const FxpValue& a, const FxpValue& b) {
    if (a.format != b.format)
        throw std::invalid_argument("fxp: format mismatch: " +
                                    to_string(a.format) + " vs " +
                                    to_string(b.format));
}

} // namespace

FxpValue fxp_add(const FxpValue& a, const FxpValue& b, bool carry_in) {
    require_same_format(a, b);
    const int64_t sum = a.raw + b.raw + (carry_in ? 1 : 0);
    return FxpValue{apply_overflow(sum, a.format), a.format};
}

FxpValue fxp_sub(const FxpValue& a, const FxpValue& b) {
    require_same_format(a, b);
    return FxpValue{apply_overflow(a.raw - b.raw, a.format), a.format};
}

FxpValue fxp_asr(const FxpValue& a, int k) {
    if (k < 0 || k >= a.format.width)
        throw std::invalid_argument("fxp: shift count " + std::to_string(k) +
                                    " not in [0, width) for " +
                                    to_string(a.format));
    // >> on a signed operand is an arithmetic shift in C++20, i.e. floor.
    return FxpValue{a.raw >> k, a.format};
}

FxpValue fxp_bitnot(const FxpValue& a) {
    return FxpValue{-a.raw - 1, a.format};
}

FxpValue fxp_negate(const FxpValue& a) {
    if (a.raw == a.format.min_raw() && a.format.overflow != Overflow::wrap)
        throw std::overflow_error("fxp: negating most negative value of " +
                                  to_string(a.format));
    const FxpValue zero{0, a.format};
    return fxp_add(fxp_bitnot(a), zero, true);
}

std::string to_string(const FxpFormat& fmt) {
    const char* pol = fmt.overflow == Overflow::wrap       ? "wrap"
                      : fmt.overflow == Overflow::saturate ? "saturate"
                                                           : "trap";
    return "q" + std::to_string(fmt.width) + "." + std::to_string(fmt.frac) +
           "/" + pol;
}

} // namespace cdct
