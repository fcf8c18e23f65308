#pragma once

// Forward kernels and their hand-derived backward passes. Each backward
// takes the upstream gradient of the forward output and returns gradients
// for the forward inputs. All kernels are pure.

#include <cstddef>
#include <span>
#include <vector>

#include "hcms/tensor.hpp"

namespace hcms::ops {

// a[m x k] * b[k x n]
Tensor matmul(const Tensor& a, const Tensor& b);

struct MatmulGrads {
  Tensor a;  // dOut * b^T
  Tensor b;  // a^T * dOut
};
MatmulGrads matmul_backward(const Tensor& a, const Tensor& b, const Tensor& d_out);

// input[u x d], filters[f x k x d], bias[f] -> [v x f] with
// v = (u - k) / stride + 1 valid windows.
Tensor conv1d(const Tensor& input, const Tensor& filters, const Tensor& bias, std::size_t stride);

struct Conv1dGrads {
  Tensor input;
  Tensor filters;
  Tensor bias;
};
Conv1dGrads conv1d_backward(const Tensor& input, const Tensor& filters, std::size_t stride,
                            const Tensor& d_out);

Tensor relu(const Tensor& x);
// Gradient is passed only where x > 0; the subgradient at 0 is 0.
Tensor relu_backward(const Tensor& x, const Tensor& d_out);

struct PoolResult {
  Tensor output;
  // Flat input index selected for each output element (first max on ties).
  std::vector<std::size_t> argmax;
};

// Per-channel max over windows of `pool` rows: input[v x f] -> [v' x f].
PoolResult maxpool1d(const Tensor& input, std::size_t pool, std::size_t stride);
Tensor maxpool1d_backward(const Shape& input_shape, std::span<const std::size_t> argmax,
                          const Tensor& d_out);

// Softmax over every element of x, computed with max subtraction.
Tensor softmax(const Tensor& x);
// Jacobian-vector product: dx_i = y_i * (dy_i - sum_j y_j dy_j).
Tensor softmax_backward(const Tensor& y, const Tensor& d_y);

Tensor add(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& x, double factor);
Tensor tanh(const Tensor& x);
Tensor tanh_backward(const Tensor& y, const Tensor& d_out);
Tensor sigmoid(const Tensor& x);
Tensor sigmoid_backward(const Tensor& y, const Tensor& d_out);

// Flattens and joins the parts into one rank-1 tensor.
Tensor concat(std::span<const Tensor> parts);
// Splits a gradient of concat's output back into tensors shaped like the parts.
std::vector<Tensor> concat_backward(std::span<const Shape> part_shapes, const Tensor& d_out);

// Scalar helpers shared by the vector kernels.
double sigmoid(double x);

}  // namespace hcms::ops
