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

#include "cdct/flowgraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace cdct {

// ---------------------------------------------------------------------------
// FlowGraph

std::vector<int> FlowGraph::consumers(int id) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        const Node& n = nodes_[i];
        if (n.a == id || (n.kind == NodeKind::add && n.b == id) ||
            (n.kind == NodeKind::sub && n.b == id))
            out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// GraphBuilder

int GraphBuilder::push(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

void GraphBuilder::check_operand(int id) const {
    if (id < 0 || id >= static_cast<int>(nodes_.size()))
        throw std::invalid_argument("flowgraph: operand id " +
                                    std::to_string(id) +
                                    " does not refer to an existing node");
    if (nodes_[id].kind == NodeKind::output)
        throw std::invalid_argument("flowgraph: output nodes have no value");
}

int GraphBuilder::input() {
    Node n;
    n.kind = NodeKind::input;
    n.port = input_count_++;
    return push(n);
}

int GraphBuilder::add(int a, int b, bool carry) {
    check_operand(a);
    check_operand(b);
    Node n;
    n.kind = NodeKind::add;
    n.a = a;
    n.b = b;
    n.carry = carry;
    return push(n);
}

int GraphBuilder::sub(int a, int b) {
    check_operand(a);
    check_operand(b);
    Node n;
    n.kind = NodeKind::sub;
    n.a = a;
    n.b = b;
    return push(n);
}

int GraphBuilder::shr(int a, int k) {
    check_operand(a);
    if (k < 0)
        throw std::invalid_argument("flowgraph: negative shift count");
    Node n;
    n.kind = NodeKind::shr;
    n.a = a;
    n.k = k;
    return push(n);
}

int GraphBuilder::bnot(int a) {
    check_operand(a);
    Node n;
    n.kind = NodeKind::bnot;
    n.a = a;
    return push(n);
}

int GraphBuilder::neg(int a) {
    check_operand(a);
    Node n;
    n.kind = NodeKind::neg;
    n.a = a;
    return push(n);
}

int GraphBuilder::cmul(int a, double c) {
    check_operand(a);
    Node n;
    n.kind = NodeKind::cmul;
    n.a = a;
    n.c = c;
    return push(n);
}

void GraphBuilder::output(int port, int a) {
    check_operand(a);
    if (port < 0)
        throw std::invalid_argument("flowgraph: negative output port");
    Node n;
    n.kind = NodeKind::output;
    n.port = port;
    n.a = a;
    push(n);
    outputs_.emplace_back(port, static_cast<int>(nodes_.size()) - 1);
}

FlowGraph GraphBuilder::finish() {
    std::vector<int> port_to_node(outputs_.size(), -1);
    for (const auto& [port, id] : outputs_) {
        if (port >= static_cast<int>(outputs_.size()) || port_to_node[port] != -1)
            throw std::invalid_argument(
                "flowgraph: output ports must be dense and unique");
        port_to_node[port] = id;
    }
    FlowGraph g;
    g.nodes_ = nodes_;
    g.output_node_ = port_to_node;
    g.input_count_ = input_count_;
    return g;
}

// ---------------------------------------------------------------------------
// Real evaluation

std::vector<double> eval_real(const FlowGraph& g,
                              const std::vector<double>& inputs) {
    if (static_cast<int>(inputs.size()) != g.input_count())
        throw std::invalid_argument("eval_real: expected " +
                                    std::to_string(g.input_count()) +
                                    " inputs, got " +
                                    std::to_string(inputs.size()));
    const auto& nodes = g.nodes();
    std::vector<double> v(nodes.size(), 0.0);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.kind) {
        case NodeKind::input: v[i] = inputs[n.port]; break;
        case NodeKind::add: v[i] = v[n.a] + v[n.b]; break; // carry is 0 here
        case NodeKind::sub: v[i] = v[n.a] - v[n.b]; break;
        case NodeKind::shr: v[i] = std::ldexp(v[n.a], -n.k); break;
        case NodeKind::bnot: v[i] = -v[n.a]; break;
        case NodeKind::neg: v[i] = -v[n.a]; break;
        case NodeKind::cmul: v[i] = n.c * v[n.a]; break;
        case NodeKind::output: v[i] = v[n.a]; break;
        }
    }
    std::vector<double> out(g.output_count());
    for (int p = 0; p < g.output_count(); ++p)
        out[p] = v[g.output_node(p)];
    return out;
}

Matrix implied_matrix(const FlowGraph& g) {
    Matrix m(g.output_count(), g.input_count());
    std::vector<double> impulse(g.input_count(), 0.0);
    for (int j = 0; j < g.input_count(); ++j) {
        impulse[j] = 1.0;
        const std::vector<double> col = eval_real(g, impulse);
        impulse[j] = 0.0;
        for (int r = 0; r < g.output_count(); ++r)
            m.at(r, j) = col[r];
    }
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: dimension mismatch");
    Matrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix r(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            r.at(j, i) = a.at(i, j);
    return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.m.size(); ++i)
        m = std::max(m, std::abs(a.m[i] - b.m[i]));
    return m;
}

double frobenius_diff(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("frobenius_diff: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.m.size(); ++i) {
        const double d = a.m[i] - b.m[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Fixed-point evaluation

std::vector<Interval> node_intervals(const FlowGraph& g, Interval input_range) {
    if (input_range.lo > input_range.hi)
        throw std::invalid_argument("node_intervals: empty input range");
    const auto& nodes = g.nodes();
    std::vector<Interval> iv(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        switch (n.kind) {
        case NodeKind::input:
            iv[i] = input_range;
            break;
        case NodeKind::add: {
            const int64_t c = n.carry ? 1 : 0;
            iv[i] = {iv[n.a].lo + iv[n.b].lo + c, iv[n.a].hi + iv[n.b].hi + c};
            break;
        }
        case NodeKind::sub:
            iv[i] = {iv[n.a].lo - iv[n.b].hi, iv[n.a].hi - iv[n.b].lo};
            break;
        case NodeKind::shr:
            // >> floors, so it is monotone and endpoint propagation is exact.
            iv[i] = {iv[n.a].lo >> n.k, iv[n.a].hi >> n.k};
            break;
        case NodeKind::bnot:
            iv[i] = {-iv[n.a].hi - 1, -iv[n.a].lo - 1};
            break;
        case NodeKind::neg:
            iv[i] = {-iv[n.a].hi, -iv[n.a].lo};
            break;
        case NodeKind::cmul:
            throw std::invalid_argument(
                "node_intervals: cmul has no fixed-point semantics");
        case NodeKind::output:
            iv[i] = iv[n.a];
            break;
        }
    }
    return iv;
}

namespace {

int bits_needed(Interval iv) {
    int w = 2;
    while (iv.lo < -(int64_t(1) << (w - 1)) ||
           iv.hi > (int64_t(1) << (w - 1)) - 1)
        ++w;
    return w;
}

} // namespace

FormatAssignment assign_formats(const FlowGraph& g, FxpFormat input_format,
                                int internal_width, int output_width) {
    check_format(input_format);
    const auto iv =
        node_intervals(g, {input_format.min_raw(), input_format.max_raw()});

    FxpFormat internal = input_format;
    internal.width = internal_width;
    check_format(internal);

    Interval out_iv{0, 0};
    bool have_out = false;
    for (size_t i = 0; i < g.nodes().size(); ++i) {
        const Node& n = g.nodes()[i];
        if (n.kind == NodeKind::output) {
            out_iv.lo = have_out ? std::min(out_iv.lo, iv[i].lo) : iv[i].lo;
            out_iv.hi = have_out ? std::max(out_iv.hi, iv[i].hi) : iv[i].hi;
            have_out = true;
        } else if (iv[i].lo < internal.min_raw() ||
                   iv[i].hi > internal.max_raw()) {
            throw std::overflow_error(
                "assign_formats: node " + std::to_string(i) + " spans [" +
                std::to_string(iv[i].lo) + ", " + std::to_string(iv[i].hi) +
                "], beyond internal " + to_string(internal));
        }
    }

    FxpFormat out = input_format;
    out.width = output_width == 0 && have_out ? bits_needed(out_iv)
                                              : output_width;
    check_format(out);
    if (have_out &&
        (out_iv.lo < out.min_raw() || out_iv.hi > out.max_raw()))
        throw std::overflow_error("assign_formats: outputs span [" +
                                  std::to_string(out_iv.lo) + ", " +
                                  std::to_string(out_iv.hi) +
                                  "], beyond output " + to_string(out));

    FormatAssignment fa;
    fa.input_format = input_format;
    fa.output_format = out;
    fa.node_format.assign(g.nodes().size(), internal);
    for (size_t i = 0; i < g.nodes().size(); ++i)
        if (g.nodes()[i].kind == NodeKind::output)
            fa.node_format[i] = out;
    return fa;
}

std::vector<FxpValue> eval_fxp(const FlowGraph& g,
                               const std::vector<FxpValue>& inputs,
                               const FormatAssignment& fmts) {
    if (static_cast<int>(inputs.size()) != g.input_count())
        throw std::invalid_argument("eval_fxp: expected " +
                                    std::to_string(g.input_count()) +
                                    " inputs, got " +
                                    std::to_string(inputs.size()));
    const auto& nodes = g.nodes();
    if (fmts.node_format.size() != nodes.size())
        throw std::invalid_argument("eval_fxp: assignment size mismatch");

    std::vector<FxpValue> v(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        const FxpFormat& fmt = fmts.node_format[i];
        switch (n.kind) {
        case NodeKind::input: {
            const FxpValue& in = inputs[n.port];
            if (in.format != fmts.input_format)
                throw std::invalid_argument(
                    "eval_fxp: input " + std::to_string(n.port) + " is " +
                    to_string(in.format) + ", assignment expects " +
                    to_string(fmts.input_format));
            v[i] = make_fxp(in.raw, fmt); // exact widening
            break;
        }
        case NodeKind::add: v[i] = fxp_add(v[n.a], v[n.b], n.carry); break;
        case NodeKind::sub: v[i] = fxp_sub(v[n.a], v[n.b]); break;
        case NodeKind::shr: v[i] = fxp_asr(v[n.a], n.k); break;
        case NodeKind::bnot: v[i] = fxp_bitnot(v[n.a]); break;
        case NodeKind::neg: v[i] = fxp_negate(v[n.a]); break;
        case NodeKind::cmul:
            throw std::invalid_argument(
                "eval_fxp: cmul has no fixed-point semantics");
        case NodeKind::output:
            // Narrow to the terminal width; the interval analysis behind the
            // assignment guarantees this is value-preserving.
            v[i] = make_fxp(v[n.a].raw, fmt);
            break;
        }
    }
    std::vector<FxpValue> out(g.output_count());
    for (int p = 0; p < g.output_count(); ++p)
        out[p] = v[g.output_node(p)];
    return out;
}

// ---------------------------------------------------------------------------
// Cost and critical path

std::string PathDelay::to_string() const {
    std::string s;
    if (adds > 0)
        s = std::to_string(adds) + "*T_ADD";
    if (nots > 0) {
        if (!s.empty())
            s += " + ";
        s += nots == 1 ? "T_NOT" : std::to_string(nots) + "*T_NOT";
    }
    return s.empty() ? "0" : s;
}

CostReport cost_report(const FlowGraph& g, const DelayModel& delays) {
    CostReport r;
    const auto& nodes = g.nodes();
    std::vector<PathDelay> arrive(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        PathDelay own{};
        switch (n.kind) {
        case NodeKind::add:
        case NodeKind::sub:
            ++r.additions;
            own.adds = 1;
            break;
        case NodeKind::neg:
            ++r.additions; // a negation is realized as an adder (0 - x)
            own.adds = 1;
            break;
        case NodeKind::shr:
            ++r.shifts; // wiring only, zero delay
            break;
        case NodeKind::bnot:
            ++r.bit_inversions;
            own.nots = 1;
            break;
        case NodeKind::cmul:
            ++r.multiplications;
            own.adds = 1; // priced as at least an adder on the path
            break;
        case NodeKind::input:
        case NodeKind::output:
            break;
        }
        PathDelay best{};
        auto consider = [&](int op) {
            if (op < 0)
                return;
            const PathDelay& c = arrive[op];
            const double bv = best.value(delays), cv = c.value(delays);
            if (cv > bv || (cv == bv && (c.adds > best.adds ||
                                         (c.adds == best.adds &&
                                          c.nots > best.nots))))
                best = c;
        };
        consider(n.a);
        if (n.kind == NodeKind::add || n.kind == NodeKind::sub)
            consider(n.b);
        arrive[i] = {best.adds + own.adds, best.nots + own.nots};
    }
    PathDelay cp{};
    for (int p = 0; p < g.output_count(); ++p) {
        const PathDelay& c = arrive[g.output_node(p)];
        const double bv = cp.value(delays), cv = c.value(delays);
        if (cv > bv ||
            (cv == bv && (c.adds > cp.adds ||
                          (c.adds == cp.adds && c.nots > cp.nots))))
            cp = c;
    }
    r.critical_path = cp;
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::input: return "input";
    case NodeKind::add: return "add";
    case NodeKind::sub: return "sub";
    case NodeKind::shr: return "shr";
    case NodeKind::bnot: return "not";
    case NodeKind::neg: return "neg";
    case NodeKind::cmul: return "cmul";
    case NodeKind::output: return "output";
    }
    return "?";
}

NodeKind kind_from_name(const std::string& s) {
    if (s == "input") return NodeKind::input;
    if (s == "add") return NodeKind::add;
    if (s == "sub") return NodeKind::sub;
    if (s == "shr") return NodeKind::shr;
    if (s == "not") return NodeKind::bnot;
    if (s == "neg") return NodeKind::neg;
    if (s == "cmul") return NodeKind::cmul;
    if (s == "output") return NodeKind::output;
    throw std::invalid_argument("flowgraph json: unknown node kind '" + s + "'");
}

} // namespace

std::string graph_to_json(const FlowGraph& g) {
    nlohmann::json doc;
    doc["inputs"] = g.input_count();
    doc["outputs"] = g.output_count();
    nlohmann::json nodes = nlohmann::json::array();
    for (size_t i = 0; i < g.nodes().size(); ++i) {
        const Node& n = g.nodes()[i];
        nlohmann::json j;
        j["id"] = i;
        j["kind"] = kind_name(n.kind);
        switch (n.kind) {
        case NodeKind::input: j["port"] = n.port; break;
        case NodeKind::add:
            j["a"] = n.a;
            j["b"] = n.b;
            j["carry"] = n.carry ? 1 : 0;
            break;
        case NodeKind::sub:
            j["a"] = n.a;
            j["b"] = n.b;
            break;
        case NodeKind::shr:
            j["a"] = n.a;
            j["k"] = n.k;
            break;
        case NodeKind::bnot:
        case NodeKind::neg:
            j["a"] = n.a;
            break;
        case NodeKind::cmul:
            j["a"] = n.a;
            j["c"] = n.c;
            break;
        case NodeKind::output:
            j["port"] = n.port;
            j["a"] = n.a;
            break;
        }
        nodes.push_back(j);
    }
    doc["nodes"] = nodes;
    return doc.dump(2) + "\n";
}

FlowGraph graph_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    GraphBuilder b;
    for (const auto& j : doc.at("nodes")) {
        const NodeKind k = kind_from_name(j.at("kind").get<std::string>());
        switch (k) {
        case NodeKind::input: b.input(); break;
        case NodeKind::add:
            b.add(j.at("a").get<int>(), j.at("b").get<int>(),
                  j.value("carry", 0) != 0);
            break;
        case NodeKind::sub:
            b.sub(j.at("a").get<int>(), j.at("b").get<int>());
            break;
        case NodeKind::shr:
            b.shr(j.at("a").get<int>(), j.at("k").get<int>());
            break;
        case NodeKind::bnot: b.bnot(j.at("a").get<int>()); break;
        case NodeKind::neg: b.neg(j.at("a").get<int>()); break;
        case NodeKind::cmul:
            b.cmul(j.at("a").get<int>(), j.at("c").get<double>());
            break;
        case NodeKind::output:
            b.output(j.at("port").get<int>(), j.at("a").get<int>());
            break;
        }
    }
    FlowGraph g = b.finish();
    if (g.input_count() != doc.at("inputs").get<int>() ||
        g.output_count() != doc.at("outputs").get<int>())
        throw std::invalid_argument("flowgraph json: arity mismatch");
    return g;
}

} // namespace cdct
