#include "icnopt/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace icnopt {

Grid3::Grid3(std::size_t ch, std::size_t h, std::size_t w, double fill)
    : channels(ch), height(h), width(w), data(ch * h * w, fill) {
    if (ch == 0 || h == 0 || w == 0)
        throw std::invalid_argument("Grid3: all dimensions must be positive");
}

Kernel3::Kernel3(std::size_t d, std::size_t h, std::size_t w, double fill)
    : depth(d), kh(h), kw(w), weights(d * h * w, fill) {
    if (d == 0 || h == 0 || w == 0)
        throw std::invalid_argument("Kernel3: all dimensions must be positive");
    if (h % 2 == 0 || w % 2 == 0)
        throw std::invalid_argument("Kernel3: kernel sides must be odd");
}

static void check_conv_args(const Grid3& input, const Kernel3& kernel) {
    if (kernel.depth != input.channels)
        throw std::invalid_argument("conv2d_same: kernel depth must equal input channels");
    if (kernel.kh % 2 == 0 || kernel.kw % 2 == 0)
        throw std::invalid_argument("conv2d_same: kernel sides must be odd");
}

void conv2d_same_into(const Grid3& input, const Kernel3& kernel, Grid3& out) {
    check_conv_args(input, kernel);
    const std::size_t H = input.height, W = input.width;
    if (out.channels != 1 || out.height != H || out.width != W)
        throw std::invalid_argument("conv2d_same_into: bad output shape");

    const long hr = static_cast<long>(kernel.kh) / 2;
    const long hc = static_cast<long>(kernel.kw) / 2;

    // single-pixel images degenerate to a dot product with the center taps
    if (H == 1 && W == 1) {
        double acc = 0.0;
        const std::size_t center = (static_cast<std::size_t>(hr) * kernel.kw) +
                                   static_cast<std::size_t>(hc);
        for (std::size_t ch = 0; ch < input.channels; ++ch)
            acc += kernel.weights[ch * kernel.kh * kernel.kw + center] * input.data[ch];
        out.data[0] = acc;
        return;
    }

    for (std::size_t r = 0; r < H; ++r) {
        // valid kernel-row range for this output row, hoisted out of the taps
        const std::size_t dr_lo = static_cast<std::size_t>(std::max(0L, hr - static_cast<long>(r)));
        const std::size_t dr_hi = static_cast<std::size_t>(
            std::min<long>(kernel.kh, static_cast<long>(H) + hr - static_cast<long>(r)));
        for (std::size_t c = 0; c < W; ++c) {
            const std::size_t dc_lo =
                static_cast<std::size_t>(std::max(0L, hc - static_cast<long>(c)));
            const std::size_t dc_hi = static_cast<std::size_t>(
                std::min<long>(kernel.kw, static_cast<long>(W) + hc - static_cast<long>(c)));
            const long col0 = static_cast<long>(c) - hc;
            double acc = 0.0;
            for (std::size_t ch = 0; ch < input.channels; ++ch) {
                for (std::size_t dr = dr_lo; dr < dr_hi; ++dr) {
                    const std::size_t rr =
                        static_cast<std::size_t>(static_cast<long>(r + dr) - hr);
                    const double* in_row = input.data.data() + (ch * H + rr) * W;
                    const double* k_row =
                        kernel.weights.data() + (ch * kernel.kh + dr) * kernel.kw;
                    for (std::size_t dc = dc_lo; dc < dc_hi; ++dc)
                        acc += k_row[dc] *
                               in_row[static_cast<std::size_t>(col0 + static_cast<long>(dc))];
                }
            }
            out.data[r * W + c] = acc;
        }
    }
}

Grid3 conv2d_same(const Grid3& input, const Kernel3& kernel) {
    Grid3 out(1, input.height, input.width);
    conv2d_same_into(input, kernel, out);
    return out;
}

Grid3 hadamard(const Grid3& a, const Grid3& b) {
    if (a.channels != b.channels || a.height != b.height || a.width != b.width)
        throw std::invalid_argument("hadamard: shape mismatch");
    Grid3 out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= b.data[i];
    return out;
}

void hadamard_inplace(Grid3& acc, const Grid3& b) {
    if (acc.channels != b.channels || acc.height != b.height || acc.width != b.width)
        throw std::invalid_argument("hadamard: shape mismatch");
    for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] *= b.data[i];
}

Grid3 weighted_channel_sum(const std::vector<Grid3>& maps,
                           const std::vector<double>& coeffs) {
    if (maps.empty())
        throw std::invalid_argument("weighted_channel_sum: no maps");
    if (maps.size() != coeffs.size())
        throw std::invalid_argument("weighted_channel_sum: maps/coeffs length mismatch");
    const Grid3& first = maps.front();
    Grid3 out(1, first.height, first.width);
    for (std::size_t m = 0; m < maps.size(); ++m) {
        const Grid3& g = maps[m];
        if (g.channels != 1 || g.height != first.height || g.width != first.width)
            throw std::invalid_argument("weighted_channel_sum: map shape mismatch");
        for (std::size_t i = 0; i < out.data.size(); ++i)
            out.data[i] += coeffs[m] * g.data[i];
    }
    return out;
}

void conv2d_weight_grad(const Grid3& input, const Grid3& upstream, Kernel3& grad) {
    if (upstream.channels != 1 || upstream.height != input.height ||
        upstream.width != input.width)
        throw std::invalid_argument("conv2d_weight_grad: upstream shape mismatch");
    if (grad.depth != input.channels)
        throw std::invalid_argument("conv2d_weight_grad: grad depth mismatch");

    const std::size_t H = input.height, W = input.width;
    const long hr = static_cast<long>(grad.kh) / 2;
    const long hc = static_cast<long>(grad.kw) / 2;

    // single-pixel images: only the center tap sees the input
    if (H == 1 && W == 1) {
        const double up = upstream.data[0];
        const std::size_t center =
            (static_cast<std::size_t>(hr) * grad.kw) + static_cast<std::size_t>(hc);
        for (std::size_t ch = 0; ch < input.channels; ++ch)
            grad.weights[ch * grad.kh * grad.kw + center] += up * input.data[ch];
        return;
    }

    for (std::size_t ch = 0; ch < input.channels; ++ch) {
        for (std::size_t dr = 0; dr < grad.kh; ++dr) {
            // output rows whose shifted input row stays in bounds
            const long r_lo = std::max(0L, hr - static_cast<long>(dr));
            const long r_hi = std::min<long>(static_cast<long>(H),
                                             static_cast<long>(H) + hr - static_cast<long>(dr));
            for (std::size_t dc = 0; dc < grad.kw; ++dc) {
                const long c_lo = std::max(0L, hc - static_cast<long>(dc));
                const long c_hi = std::min<long>(
                    static_cast<long>(W), static_cast<long>(W) + hc - static_cast<long>(dc));
                double acc = 0.0;
                for (long r = r_lo; r < r_hi; ++r) {
                    const std::size_t rr =
                        static_cast<std::size_t>(r + static_cast<long>(dr) - hr);
                    const double* in_row = input.data.data() + (ch * H + rr) * W;
                    const double* up_row =
                        upstream.data.data() + static_cast<std::size_t>(r) * W;
                    const long shift = static_cast<long>(dc) - hc;
                    for (long c = c_lo; c < c_hi; ++c)
                        acc += up_row[c] * in_row[static_cast<std::size_t>(c + shift)];
                }
                grad.at(ch, dr, dc) += acc;
            }
        }
    }
}

} // namespace icnopt
