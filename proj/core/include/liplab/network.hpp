#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "liplab/linalg.hpp"

namespace liplab {

/// One 0/1 sign configuration per hidden neuron, layer by layer.
/// Bit 1 means the pre-activation is strictly positive.
struct ActivationPattern {
    std::vector<std::vector<std::uint8_t>> bits;  // bits[l].size() == hidden_widths[l]

    bool operator==(const ActivationPattern& other) const { return bits == other.bits; }
};

/// Weights and biases of one scalar-output ReLU network:
///   x -> W[L] relu(W[L-1] relu(... relu(W[0] x + b[0]) ...) + b[L-1]) + b[L].
/// W[0] is hidden_widths[0] x input_dim, W[l] chains the hidden widths and
/// W[L] is 1 x hidden_widths[L-1]; b[L] has a single entry. Constant width is
/// the usual setting but per-layer widths are allowed by the data model.
/// Immutable after construction; every operation below is pure.
struct NetworkParams {
    int input_dim = 0;
    std::vector<int> hidden_widths;  // L entries, L >= 1
    std::vector<Matrix> weights;     // L + 1 matrices
    std::vector<Vector> biases;      // L + 1 vectors, last of length 1

    int depth() const { return static_cast<int>(hidden_widths.size()); }

    bool constant_width() const {
        for (int w : hidden_widths)
            if (w != hidden_widths.front()) return false;
        return true;
    }

    /// Throws InvalidArgument unless shapes chain, all dims >= 1 and all
    /// entries are finite.
    void validate() const;
};

/// Everything the forward pass saw: pre-activations z[l] = W[l] x[l] + b[l]
/// for the hidden layers, post-activations x[0..L], the induced pattern, and
/// boundary_margin = min over hidden neurons of |z[l]_i| (pre-activation
/// units, unnormalized). A positive margin certifies that the input sits in
/// the interior of its activation region.
struct LayerTrace {
    std::vector<Vector> pre;   // z[0..L-1]
    std::vector<Vector> post;  // x[0..L], post[0] is the input
    ActivationPattern pattern;
    double boundary_margin = 0.0;
};

struct ForwardResult {
    double value = 0.0;
    LayerTrace trace;
};

ForwardResult forward(const NetworkParams& net, const Vector& x);

struct GradientResult {
    Vector gradient;                // length input_dim
    double boundary_margin = 0.0;   // > 0 certifies differentiability at x
};

/// Gradient of the network at x via the masked weight product, evaluated
/// right to left as row-vector x matrix products. When boundary_margin > 0
/// this is the true gradient; on a boundary it is the one-sided selection
/// induced by the "bit 0 at zero" convention.
GradientResult gradient_at(const NetworkParams& net, const Vector& x);

/// Row of the affine piece selected by an arbitrary pattern:
/// (W[L] diag(s[L-1]) W[L-1] ... diag(s[0]) W[0]) as a length-d vector.
Vector pattern_gradient(const NetworkParams& net, const ActivationPattern& p);

struct LinearCollapse {
    Vector product;     // W[L] W[L-1] ... W[0], a 1 x d row
    double lip_linear;  // its Euclidean norm (spectral norm of a 1-row matrix)
};

/// The network with every ReLU replaced by the identity collapses to one
/// affine map; returns its weight row and Lipschitz constant.
LinearCollapse linear_collapse(const NetworkParams& net);

/// Pattern induced by the trace at x (bit 1 iff pre-activation > 0).
ActivationPattern trace_pattern(const NetworkParams& net, const Vector& x);

void check_pattern_shape(const NetworkParams& net, const ActivationPattern& p);

}  // namespace liplab
