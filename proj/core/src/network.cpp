#include "liplab/network.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "liplab/errors.hpp"

namespace liplab {

void NetworkParams::validate() const {
    const int L = depth();
    if (L < 1) throw InvalidArgument("network needs at least one hidden layer");
    if (input_dim < 1) throw InvalidArgument("input dimension must be >= 1");
    for (int w : hidden_widths)
        if (w < 1) throw InvalidArgument("hidden widths must be >= 1");
    if (static_cast<int>(weights.size()) != L + 1 || static_cast<int>(biases.size()) != L + 1)
        throw InvalidArgument("expected L+1 weight matrices and bias vectors");

    auto expect = [](bool ok, const std::string& what) {
        if (!ok) throw InvalidArgument("shape mismatch: " + what);
    };
    expect(weights[0].rows == hidden_widths[0] && weights[0].cols == input_dim,
           "first layer must be hidden_widths[0] x input_dim");
    for (int l = 1; l < L; ++l)
        expect(weights[l].rows == hidden_widths[l] && weights[l].cols == hidden_widths[l - 1],
               "hidden layer " + std::to_string(l));
    expect(weights[L].rows == 1 && weights[L].cols == hidden_widths[L - 1],
           "output layer must be 1 x hidden_widths[L-1]");
    for (int l = 0; l <= L; ++l) {
        expect(static_cast<int>(biases[l].size()) == weights[l].rows,
               "bias length at layer " + std::to_string(l));
        if (!all_finite(weights[l]) || !all_finite(biases[l]))
            throw InvalidArgument("non-finite entry at layer " + std::to_string(l));
    }
}

ForwardResult forward(const NetworkParams& net, const Vector& x) {
    if (static_cast<int>(x.size()) != net.input_dim)
        throw InvalidArgument("input length does not match network input dimension");
    if (!all_finite(x)) throw InvalidArgument("input has non-finite entries");

    const int L = net.depth();
    ForwardResult out;
    out.trace.post.reserve(static_cast<std::size_t>(L) + 1);
    out.trace.pre.reserve(static_cast<std::size_t>(L));
    out.trace.pattern.bits.resize(static_cast<std::size_t>(L));
    out.trace.post.push_back(x);

    double margin = std::numeric_limits<double>::infinity();
    for (int l = 0; l < L; ++l) {
        Vector z = matvec(net.weights[static_cast<std::size_t>(l)], out.trace.post.back());
        const Vector& b = net.biases[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += b[i];

        auto& bits = out.trace.pattern.bits[static_cast<std::size_t>(l)];
        bits.resize(z.size());
        Vector post(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            bits[i] = z[i] > 0.0 ? 1 : 0;  // bit 0 at exact zero
            post[i] = bits[i] ? z[i] : 0.0;
            margin = std::min(margin, std::abs(z[i]));
        }
        out.trace.pre.push_back(std::move(z));
        out.trace.post.push_back(std::move(post));
    }
    out.trace.boundary_margin = margin;

    const Matrix& wl = net.weights.back();
    double v = net.biases.back()[0];
    const Vector& last = out.trace.post.back();
    for (int j = 0; j < wl.cols; ++j) v += wl(0, j) * last[static_cast<std::size_t>(j)];
    out.value = v;
    return out;
}

ActivationPattern trace_pattern(const NetworkParams& net, const Vector& x) {
    return forward(net, x).trace.pattern;
}

void check_pattern_shape(const NetworkParams& net, const ActivationPattern& p) {
    if (static_cast<int>(p.bits.size()) != net.depth())
        throw InvalidArgument("pattern layer count does not match network depth");
    for (int l = 0; l < net.depth(); ++l) {
        if (static_cast<int>(p.bits[static_cast<std::size_t>(l)].size()) !=
            net.hidden_widths[static_cast<std::size_t>(l)])
            throw InvalidArgument("pattern width mismatch at layer " + std::to_string(l));
        for (std::uint8_t b : p.bits[static_cast<std::size_t>(l)])
            if (b > 1) throw InvalidArgument("pattern bits must be 0 or 1");
    }
}

Vector pattern_gradient(const NetworkParams& net, const ActivationPattern& p) {
    check_pattern_shape(net, p);
    const int L = net.depth();
    // r starts as the output row W[L]; each step masks by the layer's bits
    // and multiplies by that layer's weights.
    Vector r(net.weights.back().data);
    for (int l = L - 1; l >= 0; --l) {
        const auto& bits = p.bits[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!bits[i]) r[i] = 0.0;
        r = vecmat(r, net.weights[static_cast<std::size_t>(l)]);
    }
    return r;
}

GradientResult gradient_at(const NetworkParams& net, const Vector& x) {
    ForwardResult fwd = forward(net, x);
    return GradientResult{pattern_gradient(net, fwd.trace.pattern), fwd.trace.boundary_margin};
}

LinearCollapse linear_collapse(const NetworkParams& net) {
    net.validate();
    Vector r(net.weights.back().data);
    for (int l = net.depth() - 1; l >= 0; --l)
        r = vecmat(r, net.weights[static_cast<std::size_t>(l)]);
    const double n = norm2(r);
    return LinearCollapse{std::move(r), n};
}

}  // namespace liplab
