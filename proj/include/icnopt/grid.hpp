#ifndef ICNOPT_GRID_HPP
#define ICNOPT_GRID_HPP

#include <cstddef>
#include <vector>

namespace icnopt {

/// Dense 3-d block of doubles indexed (channel, row, col), channel-major.
/// Serialized kernels and grids rely on this exact layout.
struct Grid3 {
    std::size_t channels = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> data;

    Grid3() = default;
    Grid3(std::size_t ch, std::size_t h, std::size_t w, double fill = 0.0);

    double& at(std::size_t c, std::size_t r, std::size_t col) {
        return data[(c * height + r) * width + col];
    }
    double at(std::size_t c, std::size_t r, std::size_t col) const {
        return data[(c * height + r) * width + col];
    }

    std::size_t pixels() const { return height * width; }
    std::size_t size() const { return channels * height * width; }
};

/// Convolution filter spanning all input channels. Odd sides only, so that
/// zero-padded "same" convolution is well defined.
struct Kernel3 {
    std::size_t depth = 0;
    std::size_t kh = 0;
    std::size_t kw = 0;
    std::vector<double> weights;

    Kernel3() = default;
    Kernel3(std::size_t d, std::size_t h, std::size_t w, double fill = 0.0);

    double& at(std::size_t c, std::size_t dr, std::size_t dc) {
        return weights[(c * kh + dr) * kw + dc];
    }
    double at(std::size_t c, std::size_t dr, std::size_t dc) const {
        return weights[(c * kh + dr) * kw + dc];
    }

    std::size_t size() const { return depth * kh * kw; }
};

/// Zero-padded stride-1 convolution; output is single-channel with the same
/// spatial shape as the input.
Grid3 conv2d_same(const Grid3& input, const Kernel3& kernel);

/// conv2d_same accumulated into an existing buffer (out must be 1 x H x W);
/// avoids reallocating feature maps in the training loop.
void conv2d_same_into(const Grid3& input, const Kernel3& kernel, Grid3& out);

/// Elementwise product; shapes must match exactly.
Grid3 hadamard(const Grid3& a, const Grid3& b);
void hadamard_inplace(Grid3& acc, const Grid3& b);

/// Sum of single-channel maps weighted per map (the 1x1 reduction).
Grid3 weighted_channel_sum(const std::vector<Grid3>& maps,
                           const std::vector<double>& coeffs);

/// Correlation of a single-channel upstream map with the input: accumulates
/// sum_p up[p] * input[ch, p.r + dr - kh/2, p.c + dc - kw/2] into grad for
/// every kernel tap. This is the weight-gradient half of conv2d_same.
void conv2d_weight_grad(const Grid3& input, const Grid3& upstream, Kernel3& grad);

} // namespace icnopt

#endif
