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
#include <vector>

#include "cdct/fxp.hpp"

namespace cdct {

// Shift-add dataflow DAG. Nodes are stored in topological (construction)
// order; operands always refer to earlier nodes. The same graph is used for
// real-valued evaluation, fixed-point evaluation, cost/critical-path
// analysis and the structural rewrites.
//
// `cmul` (multiply by a real constant) exists only so that an exact-rotation
// reference datapath can be expressed in real semantics; it has no
// fixed-point meaning and eval_fxp rejects it.

enum class NodeKind { input, add, sub, shr, bnot, neg, cmul, output };

struct Node {
    NodeKind kind = NodeKind::input;
    int a = -1;         // first operand
    int b = -1;         // second operand (add/sub)
    int k = 0;          // shift count (shr)
    int port = -1;      // port index (input/output)
    bool carry = false; // carry-in bit (add)
    double c = 0.0;     // constant (cmul)
};

class FlowGraph {
public:
    const std::vector<Node>& nodes() const { return nodes_; }
    int input_count() const { return input_count_; }
    int output_count() const { return static_cast<int>(output_node_.size()); }
    /// Node id producing the Output node for `port`.
    int output_node(int port) const { return output_node_.at(port); }
    /// Node ids that use `id` as an operand.
    std::vector<int> consumers(int id) const;

private:
    friend class GraphBuilder;
    friend FlowGraph graph_from_json(const std::string& text);

    std::vector<Node> nodes_;
    std::vector<int> output_node_; // port -> id of the Output node
    int input_count_ = 0;
};

/// Incremental builder; node methods return the new node's id and validate
/// operands against already-built nodes.
class GraphBuilder {
public:
    int input();
    int add(int a, int b, bool carry = false);
    int sub(int a, int b);
    int shr(int a, int k);
    int bnot(int a);
    int neg(int a);
    int cmul(int a, double c);
    void output(int port, int a);

    /// Validates port density (inputs 0..n-1, outputs 0..m-1, each once)
    /// and returns the finished immutable graph.
    FlowGraph finish();

private:
    int push(Node n);
    void check_operand(int id) const;

    std::vector<Node> nodes_;
    std::vector<std::pair<int, int>> outputs_; // (port, node id)
    int input_count_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

/// Real-valued semantics: add ignores the carry bit, bnot and neg are both
/// exact negation, shr is multiplication by 2^-k. The map is linear in the
/// inputs. cmul multiplies by its constant.
std::vector<double> eval_real(const FlowGraph& g,
                              const std::vector<double>& inputs);

/// Matrix M with M[out][in] such that eval_real(g, x) == M * x; computed by
/// impulse responses.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> m;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), m(size_t(r) * c, 0.0) {}
    double& at(int r, int c) { return m[size_t(r) * cols + c]; }
    double at(int r, int c) const { return m[size_t(r) * cols + c]; }
};

Matrix implied_matrix(const FlowGraph& g);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_diff(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------------------
// Fixed-point evaluation

/// Closed signed interval of raw values a node can take.
struct Interval {
    int64_t lo = 0, hi = 0;
};

/// Exact interval propagation under fixed-point semantics (floor shifts,
/// carry bits, bitwise complement) from a common input range.
std::vector<Interval> node_intervals(const FlowGraph& g, Interval input_range);

/// Per-node format assignment: inputs arrive in `input_format`, interior
/// nodes carry `node_format[id]`, Output nodes narrow to `output_format`.
struct FormatAssignment {
    FxpFormat input_format;
    FxpFormat output_format;
    std::vector<FxpFormat> node_format;
};

/// Builds the assignment for a graph whose inputs span the full range of
/// `input_format`: interior nodes get `internal_width` bits and outputs
/// `output_width` bits (0 derives the minimal output width). Interval
/// analysis verifies that no node can wrap; throws std::overflow_error when
/// a width is too small. Fractional bit counts are inherited from the input
/// format (the datapath never rescales).
FormatAssignment assign_formats(const FlowGraph& g, FxpFormat input_format,
                                int internal_width, int output_width);

/// Fixed-point semantics: add uses the carry port, bnot is the bitwise
/// complement (one LSB below exact negation), neg is exact negation, shr is
/// a floor shift. cmul is rejected. Inputs must carry the assignment's
/// input format; results carry its output format.
std::vector<FxpValue> eval_fxp(const FlowGraph& g,
                               const std::vector<FxpValue>& inputs,
                               const FormatAssignment& fmts);

// ---------------------------------------------------------------------------
// Cost and critical path

/// Delay weights. Shifts are hardwired routing and cost nothing; an
/// inverter is assumed cheaper than an adder (t_not < t_add), which is what
/// makes the NOT-for-adder substitution a win.
struct DelayModel {
    double t_add = 1.0;
    double t_not = 0.1;
    static constexpr double t_shift = 0.0;
};

/// Symbolic path delay a*T_ADD + b*T_NOT.
struct PathDelay {
    int adds = 0;
    int nots = 0;

    double value(const DelayModel& d) const {
        return adds * d.t_add + nots * d.t_not;
    }
    bool operator==(const PathDelay& o) const {
        return adds == o.adds && nots == o.nots;
    }
    std::string to_string() const;
};

struct CostReport {
    int additions = 0;       // add + sub + neg (a negation is an adder)
    int shifts = 0;
    int bit_inversions = 0;  // bnot
    int multiplications = 0; // cmul (reference datapath only)
    PathDelay critical_path;
};

/// Counts nodes by kind and computes the input-to-output path of maximum
/// delay under `delays`. neg and cmul are priced as adders on the path.
CostReport cost_report(const FlowGraph& g, const DelayModel& delays = {});

// ---------------------------------------------------------------------------
// Serialization (node list in topological order)

std::string graph_to_json(const FlowGraph& g);
FlowGraph graph_from_json(const std::string& text);

} // namespace cdct
