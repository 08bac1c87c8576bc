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

#pragma once

#include <cstdint>
#include <string>

namespace cdct {

/// Behaviour when a result falls outside the representable raw range.
enum class Overflow { wrap, saturate, trap };

/// Two's-complement fixed-point format: `width` total bits of which `frac`
/// are fractional. Real value of a sample is raw * 2^-frac.
struct FxpFormat {
    int width = 16;
    int frac = 0;
    Overflow overflow = Overflow::wrap;

    int64_t min_raw() const { return -(int64_t(1) << (width - 1)); }
    int64_t max_raw() const { return (int64_t(1) << (width - 1)) - 1; }

    bool operator==(const FxpFormat& o) const {
        return width == o.width && frac == o.frac && overflow == o.overflow;
    }
    bool operator!=(const FxpFormat& o) const { return !(*this == o); }
};

/// Throws std::invalid_argument unless 2 <= width <= 62 and 0 <= frac < width.
void check_format(const FxpFormat& fmt);

struct FxpValue {
    int64_t raw = 0;
    FxpFormat format;

    double to_real() const;
};

/// Validating constructor: raw must lie in the format's representable range.
FxpValue make_fxp(int64_t raw, const FxpFormat& fmt);

/// a + b + carry_in under the common format's overflow policy. The carry
/// input adds exactly one unit in the last place, mirroring the carry port
/// of a hardware adder.
FxpValue fxp_add(const FxpValue& a, const FxpValue& b, bool carry_in = false);

/// a - b under the common format's overflow policy.
FxpValue fxp_sub(const FxpValue& a, const FxpValue& b);

/// Arithmetic (sign-propagating) right shift by k: floor(a / 2^k).
/// Requires 0 <= k < width.
FxpValue fxp_asr(const FxpValue& a, int k);

/// Bitwise complement over the format width: result raw = -a.raw - 1.
/// Total on the representable range, never overflows.
FxpValue fxp_bitnot(const FxpValue& a);

/// Exact negation, computed as bitnot followed by an add with carry_in = 1.
/// The most negative value only negates under wrap; saturate and trap raise
/// an overflow error.
FxpValue fxp_negate(const FxpValue& a);

std::string to_string(const FxpFormat& fmt);

} // namespace cdct
