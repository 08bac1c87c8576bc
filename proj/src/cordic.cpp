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

#include "cdct/cordic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdct {

double achieved_angle(const RotationPlan& plan) {
    double a = 0.0;
    for (const Microrotation& s : plan.steps)
        a += s.sign * std::atan(std::ldexp(1.0, -s.shift));
    return a;
}

double scale_factor(const RotationPlan& plan) {
    double k = 1.0;
    for (const Microrotation& s : plan.steps)
        k *= std::sqrt(1.0 + std::ldexp(1.0, -2 * s.shift));
    return k;
}

Matrix rotation_matrix_approx(const RotationPlan& plan) {
    Matrix m(2, 2);
    m.at(0, 0) = m.at(1, 1) = 1.0;
    for (const Microrotation& s : plan.steps) {
        const double t = s.sign * std::ldexp(1.0, -s.shift);
        // [[1, -t], [t, 1]] * m
        const double r00 = m.at(0, 0) - t * m.at(1, 0);
        const double r01 = m.at(0, 1) - t * m.at(1, 1);
        const double r10 = t * m.at(0, 0) + m.at(1, 0);
        const double r11 = t * m.at(0, 1) + m.at(1, 1);
        m.at(0, 0) = r00;
        m.at(0, 1) = r01;
        m.at(1, 0) = r10;
        m.at(1, 1) = r11;
    }
    const double k = scale_factor(plan);
    for (double& x : m.m)
        x /= k;
    return m;
}

std::pair<int, int> expand_to_graph(const RotationPlan& plan, GraphBuilder& b,
                                    int x_in, int y_in) {
    int x = x_in, y = y_in;
    for (const Microrotation& s : plan.steps) {
        if (s.sign != 1 && s.sign != -1)
            throw std::invalid_argument("cordic: sigma must be +-1");
        const int ys = b.shr(y, s.shift);
        const int xs = b.shr(x, s.shift);
        const int x_next = s.sign > 0 ? b.sub(x, ys) : b.add(x, ys);
        const int y_next = s.sign > 0 ? b.add(y, xs) : b.sub(y, xs);
        x = x_next;
        y = y_next;
    }
    return {x, y};
}

namespace {

struct Candidate {
    double err = 0.0;
    int steps = 0;
    double k = 1.0;
    RotationPlan plan;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.err != b.err)
        return a.err < b.err;
    if (a.steps != b.steps)
        return a.steps < b.steps;
    return a.k < b.k;
}

/// Best sign assignment for one target over a fixed index set.
Candidate best_signs(double target, const std::vector<int>& indices) {
    const int n = static_cast<int>(indices.size());
    std::vector<double> atans(n);
    for (int i = 0; i < n; ++i)
        atans[i] = std::atan(std::ldexp(1.0, -indices[i]));

    Candidate best;
    bool first = true;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        double angle = 0.0;
        for (int i = 0; i < n; ++i)
            angle += (mask & (1u << i)) ? -atans[i] : atans[i];
        const double err = std::abs(angle - target);
        if (first || err < best.err) {
            first = false;
            best.err = err;
            best.plan.target_angle = target;
            best.plan.steps.clear();
            for (int i = 0; i < n; ++i)
                best.plan.steps.push_back(
                    {indices[i], (mask & (1u << i)) ? -1 : 1});
        }
    }
    best.steps = n;
    best.k = scale_factor(best.plan);
    return best;
}

/// Enumerates index subsets of `pool` in canonical order (size ascending,
/// then lexicographic) and calls fn(subset).
template <typename Fn>
void for_each_subset(const std::vector<int>& pool, int max_size, Fn fn) {
    const int n = static_cast<int>(pool.size());
    for (int size = 0; size <= std::min(max_size, n); ++size) {
        std::vector<int> pick(size);
        // iterative combinations
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        while (true) {
            for (int i = 0; i < size; ++i)
                pick[i] = pool[idx[i]];
            fn(pick);
            if (size == 0)
                break;
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (int i : v)
        if (i < 0)
            throw std::invalid_argument("cordic: negative shift index");
    return v;
}

} // namespace

RotationPlan search_atr(double target, const std::vector<int>& allowed_indices,
                        int max_steps, bool use_all) {
    if (max_steps < 0)
        throw std::invalid_argument("search_atr: max_steps must be >= 0");
    const std::vector<int> pool = sorted_unique(allowed_indices);
    if (pool.empty())
        throw std::invalid_argument("search_atr: empty search space");
    if (pool.size() > 24)
        throw std::invalid_argument("search_atr: index set too large");

    Candidate best;
    bool found = false;
    auto try_set = [&](const std::vector<int>& set) {
        Candidate c = best_signs(target, set);
        if (!found || better(c, best)) {
            found = true;
            best = c;
        }
    };
    if (use_all) {
        if (static_cast<int>(pool.size()) > max_steps)
            throw std::invalid_argument(
                "search_atr: use_all needs max_steps >= index count");
        try_set(pool);
    } else {
        for_each_subset(pool, max_steps, try_set);
    }
    if (!found)
        throw std::invalid_argument("search_atr: empty search space");
    return best.plan;
}

std::pair<RotationPlan, RotationPlan> paired_search(double target_a,
                                                    double target_b,
                                                    int max_shift_index,
                                                    int max_steps) {
    if (max_steps < 1)
        throw std::invalid_argument("paired_search: max_steps must be >= 1");
    if (max_shift_index < 0 || max_shift_index > 24)
        throw std::invalid_argument("paired_search: bad shift index budget");
    std::vector<int> pool(max_shift_index + 1);
    for (int i = 0; i <= max_shift_index; ++i)
        pool[i] = i;

    struct Pair {
        Candidate a, b;
        double err() const { return std::max(a.err, b.err); }
    };
    Pair best;
    bool found = false;
    for_each_subset(pool, max_steps, [&](const std::vector<int>& set) {
        Pair p{best_signs(target_a, set), best_signs(target_b, set)};
        if (!found)
            found = true;
        else {
            const double pe = p.err(), be = best.err();
            if (pe > be)
                return;
            if (pe == be &&
                !(p.a.steps < best.a.steps ||
                  (p.a.steps == best.a.steps && p.a.k < best.a.k)))
                return;
        }
        best = p;
    });
    if (!found)
        throw std::invalid_argument("paired_search: empty search space");
    return {best.a.plan, best.b.plan};
}

} // namespace cdct
